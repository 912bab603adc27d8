"""An auditor for the arithmetic behind ``tw <= 105 sn``.

The argument runs against a tangle of order 70a+1, which no desk-scale graph
has.  So nothing here re-proves the bound.  ``audit_constants`` checks the
constant arithmetic once and for all in exact rationals, and the two instance
audits evaluate each inequality of the argument as an implication on the
numbers of a supplied instance.  A failed step is recorded with its values;
only malformed input raises.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction

from .clouds import STRONG, CloudParams, WCloud, check_cloud
from .errors import ContractError
from .graph import Graph, Separation, check_separation, induced_subgraph
from .rational import format_rational
from .width import min_balanced_separation

FRAMING = (
    "Certifies the numeric skeleton of the argument only: constants are "
    "checked universally, instance steps are checked as implications on the "
    "given numbers. It is not a proof of the bound."
)

SKEW_EPS = Fraction(1, 7)
CLOUD_EPS = SKEW_EPS / 5


@dataclass(frozen=True)
class AuditStep:
    name: str
    claim: str
    values: dict
    passed: bool


@dataclass
class AuditReport:
    title: str
    steps: list = field(default_factory=list)
    seconds: float = 0.0
    note: str = FRAMING

    @property
    def overall(self) -> bool:
        return all(s.passed for s in self.steps)

    def step(self, name: str) -> AuditStep:
        for s in self.steps:
            if s.name == name:
                return s
        raise KeyError(name)

    def add(self, name, claim, passed, **values):
        self.steps.append(AuditStep(name, claim, values, bool(passed)))

    def to_dict(self) -> dict:
        """JSON-ready form; rationals as "p/q", sets as sorted lists.
        Timing is left out so equal audits serialize to equal bytes."""
        return {
            "title": self.title,
            "note": self.note,
            "overall": self.overall,
            "steps": [
                {"name": s.name, "claim": s.claim, "pass": s.passed,
                 "values": {k: _plain(v) for k, v in s.values.items()}}
                for s in self.steps
            ],
        }


def _plain(v):
    if isinstance(v, bool) or v is None:
        return v
    if isinstance(v, Fraction):
        return format_rational(v)
    if isinstance(v, (set, frozenset)):
        return sorted(v)
    if isinstance(v, (list, tuple)):
        return [_plain(x) for x in v]
    if isinstance(v, dict):
        return {str(k): _plain(x) for k, x in v.items()}
    return v


AUDIT_SCHEMA = {
    "type": "object",
    "required": ["title", "note", "overall", "steps"],
    "properties": {
        "title": {"type": "string"},
        "note": {"type": "string"},
        "overall": {"type": "boolean"},
        "steps": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["name", "claim", "pass", "values"],
                "properties": {
                    "name": {"type": "string"},
                    "claim": {"type": "string"},
                    "pass": {"type": "boolean"},
                    "values": {"type": "object"},
                },
            },
        },
    },
}


# -- constants -------------------------------------------------------------

def audit_constants() -> AuditReport:
    t0 = time.perf_counter()
    rep = AuditReport("constant arithmetic")
    two3 = Fraction(2, 3)

    lhs = 19 * two3 ** 8
    rep.add(
        "contraction", "19 (2/3)^8 <= 3/4, i.e. 19*256*4 <= 3*6561",
        lhs <= Fraction(3, 4) and 19 * 256 * 4 <= 3 * 3 ** 8,
        lhs=lhs, rhs=Fraction(3, 4), cross_lhs=19 * 2 ** 8 * 4, cross_rhs=3 * 3 ** 8,
    )

    # partial sums approach 3 from below; the series itself sums to 3
    partial = [sum((two3 ** i for i in range(j + 1)), Fraction(0)) for j in range(8)]
    limit = 1 / (1 - two3)
    rep.add(
        "geometric tail", "sum_{i<8} (2/3)^i a < 3a, and the full series equals 3a",
        all(p < 3 for p in partial) and limit == 3,
        partial_sums=partial, series=limit,
    )

    # (3/4)y + 3a < y  <=>  y > 12a, which every y >= 70a satisfies
    samples = [(a, y) for a in range(1, 11) for y in (70 * a, 70 * a + 1, 100 * a)]
    ok = 70 > 12 and all(Fraction(3, 4) * y + 3 * a < y for a, y in samples)
    rep.add(
        "shrinking Y", "(3/4)|Y| + 3a < |Y| whenever |Y| >= 70a and a >= 1",
        ok,
        threshold_coefficient=12, used_coefficient=70,
        at_a1_y70=Fraction(3, 4) * 70 + 3, y=70,
    )

    grid = [Fraction(x, 2) for x in range(0, 13)]
    worst = None
    for s in grid:
        for h in grid:
            if s == 0 and h == 0:
                continue
            r = (s + 3 * h) / ((s / 3 + h) + (s + 3 * h))
            worst = r if worst is None else min(worst, r)
    boundary = Fraction(3) / (Fraction(3) / 3 + 3)
    rep.add(
        "terminal clash",
        "|A| <= s/3 + h and |B\\A| >= s + 3h give |B\\A|/(|A|+|B\\A|) >= 3/4 > 2/3",
        worst >= Fraction(3, 4) and boundary == Fraction(3, 4) and Fraction(3, 4) > two3,
        min_ratio_on_grid=worst, ratio_at_s3_h0=boundary, balance_cap=two3,
    )

    a_range = range(1, 51)
    rep.add(
        "tangle order", "tw >= 105a gives a tangle of order >= (2/3)(105a+1) > 70a",
        all(2 * (105 * a + 1) > 3 * 70 * a for a in a_range),
        checked_a=f"1..{a_range[-1]}", at_a1=Fraction(2, 3) * 106,
    )
    rep.add(
        "skew order", "6 eps |W| = 60a for eps = 1/7 and |W| = 70a",
        6 * SKEW_EPS * 70 == 60,
        coefficient=6 * SKEW_EPS * 70,
    )
    rep.add(
        "refinement order", "|X_i & Y_i| + a <= (60+7)a + a = 68a <= 70a for i <= 7",
        60 + 7 + 1 == 68 <= 70,
        coefficient=60 + 7 + 1,
    )
    rep.add(
        "skewed side", "|A ∪ Y| <= |Y| + 6s = 19|Y| for s = 3|Y|",
        1 + 6 * 3 == 19,
        coefficient=1 + 6 * 3,
    )
    rep.add(
        "cloud slack", "|W| - 2a = (1 - 1/35)|W| when |W| = 70a, and eps/5 = 1/35",
        Fraction(70 - 2, 70) == 1 - CLOUD_EPS and CLOUD_EPS == Fraction(1, 35),
        fraction_kept=Fraction(68, 70), eps_over_5=CLOUD_EPS,
    )
    rep.seconds = time.perf_counter() - t0
    return rep


CONSTANT_STEPS = ("contraction", "geometric tail", "shrinking Y", "terminal clash")


# -- refinement loop ---------------------------------------------------------

def _as_sets(G: Graph, X, Y) -> tuple[frozenset, frozenset]:
    X, Y = frozenset(X), frozenset(Y)
    if not check_separation(G, Separation(X, Y)).valid:
        raise ValueError("(X, Y) is not a separation of G")
    return X, Y


def audit_refinement(G: Graph, X, Y, a: int, rounds: int = 8) -> AuditReport:
    """Split Y_i with a minimum balanced separation (U1, U2) of G[Y_i] and
    move to a successor, ``rounds`` times.

    Both successors ``(X_i | U1, U2)`` and ``(X_i | U2, U1)`` are recorded.
    With no tangle to choose between them the loop follows the one with the
    larger new Y, the harder case for the bound.  Each step checks the order
    of the split against a, both successor orders against |X_i & Y_i| + a,
    and 3|Y_{i+1}| <= 3a + 2|Y_i|.
    """
    if a < 0 or rounds < 0:
        raise ValueError("a and rounds must be natural numbers")
    t0 = time.perf_counter()
    Xi, Yi = _as_sets(G, X, Y)
    rep = AuditReport(f"refinement loop, a={a}, rounds={rounds}")
    trace = [len(Yi)]
    for i in range(rounds):
        sub, ids = induced_subgraph(G, sorted(Yi))
        k, sep = min_balanced_separation(sub)
        U1 = frozenset(ids[v] for v in sep.A)
        U2 = frozenset(ids[v] for v in sep.B)
        base = len(Xi & Yi)
        cands = []
        for keep, new_y in ((U1, U2), (U2, U1)):
            nx_, ny = Xi | keep, new_y
            ok_sep = check_separation(G, Separation(nx_, ny)).valid
            cands.append((nx_, ny, len(nx_ & ny), ok_sep))
        nx_, ny, order, _ = max(cands, key=lambda c: len(c[1]))
        passed = (
            k <= a
            and all(c[3] and c[2] <= base + a for c in cands)
            and 3 * len(ny) <= 3 * a + 2 * len(Yi)
        )
        rep.add(
            f"round {i}",
            "order(U1,U2) <= a; successor orders <= |X_i & Y_i| + a; "
            "3|Y_{i+1}| <= 3a + 2|Y_i|",
            passed,
            split_order=k, a=a, Y_i=len(Yi), Y_next=len(ny),
            lhs=3 * len(ny), rhs=3 * a + 2 * len(Yi),
            order_bound=base + a,
            candidate_orders=[c[2] for c in cands],
            candidate_Y_sizes=[len(c[1]) for c in cands],
            U1=U1, U2=U2,
        )
        Xi, Yi = nx_, ny
        trace.append(len(Yi))
    rep.add("trace", "|Y_i| for each round", True, Y_sizes=trace)
    rep.seconds = time.perf_counter() - t0
    return rep


# -- final step ---------------------------------------------------------------

def _combined_graph(G: Graph, Y, cloud: WCloud):
    """F = G[Y] plus the cloud, relabelled to 0..|V(F)|-1."""
    verts = sorted(set(Y) | cloud.vertices)
    pos = {v: i for i, v in enumerate(verts)}
    edges = {(u, v) for u, v in G.edges if u in Y and v in Y} | set(cloud.edges)
    F = Graph.from_edges(len(verts), [(pos[u], pos[v]) for u, v in edges])
    return F, verts


def audit_final_step(G: Graph, X, Y, cloud: WCloud, a: int | None = None) -> AuditReport:
    """Evaluate the closing chain of the argument on one instance.

    ``cloud`` lives in G[X] with terminals W = X & Y and must be strongly
    (3|Y|, 1/35)-tame.  A minimum-order balanced separation (A, B) of
    F = G[Y] + cloud is computed, oriented so that A meets W least.  ``a``
    defaults to its order.  Each link is checked as "premise implies
    conclusion" with the instance's numbers.  Because (A, B) really is
    balanced, the chain cannot close on any instance: the last step passes
    exactly when some premise fails.
    """
    t0 = time.perf_counter()
    X, Y = _as_sets(G, X, Y)
    W = X & Y
    if cloud.W != W:
        raise ValueError("cloud terminals must be X & Y")
    if not cloud.valid:
        raise ValueError("not a valid W-cloud: " + "; ".join(cloud.problems))
    if cloud.host != G or not cloud.vertices <= X:
        raise ValueError("cloud must be a subgraph of G[X]")
    if not W:
        raise ValueError("X & Y must be nonempty")

    s = Fraction(3 * len(Y))
    params = CloudParams(s, CLOUD_EPS, len(W))
    pre = check_cloud(cloud, params, STRONG)
    if not pre.holds:
        raise ContractError(
            f"cloud is not strongly (3|Y|, 1/35)-tame; fails at U={sorted(pre.worst_U)} "
            f"(margin {pre.margin})",
            witness=pre.worst_U,
        )

    rep = AuditReport("final step")
    rep.add("precondition", "cloud strongly (3|Y|, 1/35)-tame", True,
            s=s, margin=pre.margin, worst_U=pre.worst_U)

    F, verts = _combined_graph(G, Y, cloud)
    order, sep = min_balanced_separation(F)
    A = frozenset(verts[v] for v in sep.A)
    B = frozenset(verts[v] for v in sep.B)
    if len(B & W) < len(A & W) or (len(B & W) == len(A & W) and len(B) < len(A)):
        A, B = B, A
    if a is None:
        a = order
    nF = len(verts)
    rep.add("balanced separation of F", "order(A, B) <= a", order <= a,
            order=order, a=a, V_F=nF, A=A, B=B)

    small_side = len(A & W)
    comps0 = [w for w in sorted(W) if cloud.comp[w] & A]
    h = sum(len(cloud.comp[w]) for w in comps0)
    p1 = order <= a and small_side <= a
    rep.add(
        "H0 components", "|A & B| <= a and |A & X & Y| <= a imply H0 has <= 2a components",
        not p1 or len(comps0) <= 2 * a,
        premise=p1, A_cap_W=small_side, H0_components=len(comps0), bound=2 * a,
    )

    U = W - set(comps0)
    p2 = len(comps0) <= 2 * a and len(W) >= 70 * a
    u_ok = 35 * len(U) >= 34 * len(W)
    rep.add(
        "U qualifies", "|H0| <= 2a and |W| >= 70a imply |U| >= (1 - 1/35)|W|",
        not p2 or u_ok,
        premise=p2, U=len(U), W=len(W), needed=Fraction(34, 35) * len(W),
    )

    nHU = cloud.n_of(U)
    strong = nHU >= s + 3 * h
    rep.add(
        "strong tameness on U", "|U| >= (1 - 1/35)|W| implies n(H,U) >= s + 3|V(H0)|",
        not u_ok or strong,
        premise=u_ok, n_H_U=nHU, s=s, h=h, rhs=s + 3 * h,
    )

    b_only = len(B - A)
    sides = b_only >= nHU and len(A) <= len(Y) + h
    rep.add(
        "side sizes", "|B\\A| >= n(H,U) and |A| <= |Y| + |V(H0)| = s/3 + h",
        sides,
        B_minus_A=b_only, n_H_U=nHU, A=len(A), A_bound=len(Y) + h,
    )

    ratio = Fraction(b_only, nF) if nF else Fraction(0)
    bound = (s + 3 * h) / ((s / 3 + h) + (s + 3 * h))
    rep.add(
        "ratio", "n(H,U) >= s + 3h implies |B\\A|/|V(F)| >= 3/4",
        not strong or not sides or ratio >= Fraction(3, 4),
        premise=strong and sides, ratio=ratio, algebraic_bound=bound,
    )

    chain = p1 and p2 and u_ok and strong and sides
    rep.add(
        "clash", "balance caps |B\\A|/|V(F)| at 2/3 < 3/4, so the premises cannot all hold",
        3 * b_only <= 2 * nF and Fraction(3, 4) > Fraction(2, 3) and not chain,
        premises_hold=chain, ratio=ratio, balance_cap=Fraction(2, 3), bound=Fraction(3, 4),
    )
    rep.seconds = time.perf_counter() - t0
    return rep
