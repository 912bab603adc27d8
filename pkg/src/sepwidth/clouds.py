"""W-clouds: forests with one terminal per component, and their tameness."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .errors import ContractError
from .graph import Graph, Separation, check_separation

TAME = "tame"
STRONG = "strongly_tame"


@dataclass(frozen=True)
class CloudParams:
    s: Fraction
    eps: Fraction
    k: int

    def __post_init__(self):
        s, eps = Fraction(self.s), Fraction(self.eps)
        object.__setattr__(self, "s", s)
        object.__setattr__(self, "eps", eps)
        if s <= 0:
            raise ValueError(f"s must be positive, got {s}")
        if not 0 < eps < 1:
            raise ValueError(f"eps must lie in (0, 1), got {eps}")
        if self.k < 1:
            raise ValueError("the terminal set must be nonempty")

    @property
    def removable(self) -> int:
        """How many terminals a qualifying U may leave out: floor(eps * k)."""
        return (self.eps.numerator * self.k) // self.eps.denominator


@dataclass(frozen=True)
class WCloud:
    """A forest ``H`` inside ``host`` given by its vertex and edge sets.

    ``comp`` maps each terminal to the vertex set of its component; it is
    filled in on construction and is only meaningful for valid clouds.
    """

    host: Graph
    W: frozenset
    vertices: frozenset
    edges: frozenset
    comp: dict = field(init=False, compare=False, repr=False)
    problems: tuple = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "W", frozenset(self.W))
        verts = frozenset(self.vertices) | self.W
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "edges", frozenset((min(e), max(e)) for e in self.edges))
        problems = []
        for v in verts:
            if not 0 <= v < self.host.n:
                problems.append(f"vertex {v} not in host")
        for u, v in self.edges:
            if (u, v) not in self.host.edges:
                problems.append(f"edge {u}-{v} not in host")
            if u not in verts or v not in verts:
                problems.append(f"edge {u}-{v} leaves the vertex set")
        # union-find doubles as the cycle check
        parent = {v: v for v in verts}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for u, v in self.edges:
            if u not in parent or v not in parent:
                continue
            ru, rv = find(u), find(v)
            if ru == rv:
                problems.append(f"cycle through edge {u}-{v}")
            else:
                parent[ru] = rv
        groups: dict[int, set] = {}
        for v in verts:
            groups.setdefault(find(v), set()).add(v)
        comp = {}
        for members in groups.values():
            terms = sorted(members & self.W)
            if len(terms) != 1:
                problems.append(f"component {sorted(members)} has {len(terms)} terminals")
            for w in terms:
                comp[w] = frozenset(members)
        object.__setattr__(self, "comp", comp)
        object.__setattr__(self, "problems", tuple(problems))

    @property
    def valid(self) -> bool:
        return not self.problems

    @classmethod
    def isolated(cls, host: Graph, W: Iterable[int]) -> "WCloud":
        return cls(host, frozenset(W), frozenset(W), frozenset())

    def sizes(self) -> dict:
        return {w: len(self.comp[w]) for w in self.W}

    def n_of(self, U: Iterable[int]) -> int:
        return sum(len(self.comp[w]) for w in U)

    def leaves(self, w: int) -> list[int]:
        """Non-terminal vertices of degree one in ``H_w``."""
        deg = {v: 0 for v in self.comp[w]}
        for u, v in self.edges:
            if u in deg:
                deg[u] += 1
                deg[v] += 1
        return sorted(v for v, d in deg.items() if d == 1 and v not in self.W)

    def without_vertex(self, v: int) -> "WCloud":
        return WCloud(
            self.host,
            self.W,
            self.vertices - {v},
            frozenset(e for e in self.edges if v not in e),
        )


@dataclass(frozen=True)
class CloudReport:
    valid_cloud: bool
    holds: bool | None
    worst_U: frozenset | None
    margin: Fraction | None


def _slack(sizes: dict, U, s: Fraction, mode: str) -> Fraction:
    inside = sum(sizes[w] for w in U)
    if mode == TAME:
        return inside - s
    outside = sum(sizes[w] for w in sizes if w not in U)
    return inside - s - 3 * outside


def worst_subset(sizes: dict, removable: int) -> frozenset:
    """The qualifying U minimizing both defining quantities: drop the
    ``removable`` largest components, ties by terminal id."""
    ranked = sorted(sizes, key=lambda w: (-sizes[w], w))
    return frozenset(ranked[removable:])


def check_cloud(c: WCloud, params: CloudParams, mode: str = TAME) -> CloudReport:
    """Whether ``c`` is (s, eps)-tame (``mode="tame"``) or strongly tame.

    Removing a component of size x lowers n(H,U) by x and lowers
    n(H,U) - 3 n(H, W-U) by 4x, so in both modes the minimum over qualifying
    U is reached by dropping the largest components allowed.
    """
    if mode not in (TAME, STRONG):
        raise ValueError(f"unknown mode {mode!r}")
    if not c.valid:
        return CloudReport(False, None, None, None)
    if params.k != len(c.W):
        raise ValueError(f"params.k={params.k} but the cloud has {len(c.W)} terminals")
    sizes = c.sizes()
    U = worst_subset(sizes, params.removable)
    margin = _slack(sizes, U, params.s, mode)
    return CloudReport(True, margin >= 0, U, margin)


def trim_to_strongly_tame(c: WCloud, s, eps) -> WCloud:
    """Shrink a (s, 5 eps)-tame cloud leaf by leaf until it is minimal.

    A leaf is taken from the largest component that can lose one without
    breaking (s, 5 eps)-tameness; the loop stops when no component can.  At
    that point the components outside the worst U all have equal size, which
    makes the result strongly (s, eps)-tame.
    """
    s, eps = Fraction(s), Fraction(eps)
    k = len(c.W)
    loose = CloudParams(s, 5 * eps, k) if 5 * eps < 1 else None
    if not c.valid:
        raise ContractError("not a valid W-cloud: " + "; ".join(c.problems))

    def tame(sizes):
        if loose is None:
            # 5*eps >= 1: every U qualifies, including the empty set
            return -s >= 0
        return _slack(sizes, worst_subset(sizes, loose.removable), s, TAME) >= 0

    sizes = c.sizes()
    if not tame(sizes):
        U = worst_subset(sizes, loose.removable) if loose else frozenset()
        raise ContractError(f"cloud is not (s, 5*eps)-tame; fails at U={sorted(U)}", witness=U)
    while True:
        for w in sorted(sizes, key=lambda w: (-sizes[w], w)):
            if sizes[w] < 2:
                continue
            trial = dict(sizes)
            trial[w] -= 1
            if tame(trial):
                c = c.without_vertex(c.leaves(w)[0])
                sizes = trial
                break
        else:
            return c


def check_skewed(G0: Graph, sep: Separation, W, s, eps) -> bool:
    """W in A, |A| <= 6s and |A & B| <= 6 eps |W|, compared exactly."""
    if not check_separation(G0, sep).valid:
        raise ValueError("not a separation of the given graph")
    W = frozenset(W)
    s, eps = Fraction(s), Fraction(eps)
    return W <= sep.A and len(sep.A) <= 6 * s and sep.order <= 6 * eps * len(W)
