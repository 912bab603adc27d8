"""g-separation enumeration, tangle axiom checks and exact tangle number.

Internally a subgraph is one integer: vertex ``v`` is bit ``v`` and the
``i``-th edge of ``sorted(G.edges)`` is bit ``n + i``.  A g-separation is a
pair of such masks; its canonical key is ``(min, max)`` of the pair.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .errors import CapabilityError
from .graph import Graph, GSeparation, Subgraph, component_masks, mask_to_list, popcount

ENUM_MAX_N = 7
ENUM_MAX_M = 9
TANGLE_MAX_N = 7


@dataclass(frozen=True)
class TangleCandidate:
    theta: int
    oriented: tuple  # of GSeparation, small side first


@dataclass
class TangleReport:
    axiom_i: bool
    axiom_ii: bool
    axiom_iii: bool
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.axiom_i and self.axiom_ii and self.axiom_iii


class _Encoding:
    def __init__(self, G: Graph):
        self.G = G
        self.n = G.n
        self.edges = G.sorted_edges()
        self.edge_bit = {e: 1 << (G.n + i) for i, e in enumerate(self.edges)}
        self.vfull = G.full_mask
        self.full = (1 << (G.n + len(self.edges))) - 1
        inc = [0] * G.n
        for (u, v), bit in self.edge_bit.items():
            inc[u] |= bit
            inc[v] |= bit
        self.incident = inc

    def encode(self, sub: Subgraph) -> int:
        m = 0
        for v in sub.vertices:
            m |= 1 << v
        for e in sub.edges:
            m |= self.edge_bit[e]
        return m

    def decode(self, mask: int) -> Subgraph:
        verts = frozenset(mask_to_list(mask & self.vfull))
        edges = frozenset(e for e, bit in self.edge_bit.items() if mask & bit)
        return Subgraph(verts, edges)

    def order(self, p: int, q: int) -> int:
        return popcount(p & q & self.vfull)


def _gsep_pairs(enc: _Encoding, max_order: int) -> list[tuple[int, int]]:
    """All g-separations of order <= max_order as canonical mask pairs.

    Fixing the shared vertex set X, every component of G - X lies wholly on
    one side together with its incident edges, and each edge inside X may go
    either way; that is the whole freedom.
    """
    G = enc.G
    out = set()
    for size in range(0, min(max_order, G.n) + 1):
        for X in combinations(range(G.n), size):
            xmask = 0
            for v in X:
                xmask |= 1 << v
            blocks = []
            for comp in component_masks(G.adj, enc.vfull & ~xmask):
                m = comp
                for v in mask_to_list(comp):
                    m |= enc.incident[v]
                blocks.append(m)
            inner = [bit for (u, v), bit in enc.edge_bit.items() if xmask >> u & 1 and xmask >> v & 1]
            free = blocks + inner
            total = xmask
            for b in free:
                total |= b
            for choice in range(1 << len(free)):
                p = xmask
                for i, b in enumerate(free):
                    if choice >> i & 1:
                        p |= b
                q = xmask | (total & ~p)
                out.add((p, q) if p <= q else (q, p))
    return sorted(out, key=lambda pq: (enc.order(*pq), pq))


def enumerate_g_separations(
    G: Graph, max_order: int, max_n: int = ENUM_MAX_N, max_m: int = ENUM_MAX_M
) -> list[GSeparation]:
    """Every g-separation of order <= max_order, one per unordered pair."""
    if G.n > max_n or G.m > max_m:
        raise CapabilityError(
            f"g-separation enumeration is capped at n<={max_n}, m<={max_m} (got n={G.n}, m={G.m})"
        )
    enc = _Encoding(G)
    return [GSeparation(enc.decode(p), enc.decode(q)) for p, q in _gsep_pairs(enc, max_order)]


# -- verification ----------------------------------------------------------

def _maximal(masks):
    out = []
    for x in sorted(set(masks), key=popcount, reverse=True):
        if not any(x & y == x for y in out):
            out.append(x)
    return out


def _union_violation(small, full):
    """A triple (with repetition) of masks whose union is ``full``, or None."""
    top = _maximal(small)
    for i, x in enumerate(top):
        for j in range(i, len(top)):
            u = x | top[j]
            for k in range(j, len(top)):
                if u | top[k] == full:
                    return (x, top[j], top[k])
    return None


def verify_tangle(G: Graph, t: TangleCandidate, distinct_triples: bool = False) -> TangleReport:
    """Check axioms (i)-(iii) for an oriented family of g-separations.

    Axiom (ii) is read with repetition by default.  With ``distinct_triples``
    only triples of distinct members count; the two readings can differ only
    when the family has at most two members, which is checked directly.
    """
    enc = _Encoding(G)
    expected = set(_gsep_pairs(enc, t.theta - 1)) if t.theta >= 1 else set()
    seen = {}
    violations = []
    small = []
    for gs in t.oriented:
        p, q = enc.encode(gs.A), enc.encode(gs.B)
        key = (p, q) if p <= q else (q, p)
        if key not in expected:
            violations.append(("i", "not a g-separation of order < theta", gs))
        elif key in seen:
            violations.append(("i", "listed twice", gs))
        seen[key] = p
        small.append(p)
    missing = expected - set(seen)
    for key in sorted(missing):
        violations.append(("i", "missing", GSeparation(enc.decode(key[0]), enc.decode(key[1]))))
    axiom_i = not violations

    axiom_iii = True
    for gs, p in zip(t.oriented, small):
        if p & enc.vfull == enc.vfull:
            axiom_iii = False
            violations.append(("iii", "V(A) = V(G)", gs))

    # with three or more members a violating triple with repetition extends
    # to one of distinct members, so only tiny families need the other reading
    hit = None
    if not (distinct_triples and len(small) < 3):
        hit = _union_violation(small, enc.full)
    axiom_ii = hit is None
    if not axiom_ii:
        violations.append(("ii", "A1 + A2 + A3 = G", tuple(enc.decode(x) for x in hit)))
    return TangleReport(axiom_i, axiom_ii, axiom_iii, violations)


# -- search ----------------------------------------------------------------

class _Conflict(Exception):
    pass


def _search(pairs, full, vfull):
    """Backtracking over orientations.  Returns a list of small sides
    (index-aligned with ``pairs``) or None.

    ``small`` is kept as the antichain of maximal chosen small sides; a side
    Z is forbidden once X1 | X2 | Z == full for chosen X1, X2.
    """
    N = len(pairs)

    def place(orient, small, queue):
        while queue:
            i, c = queue.pop()
            if orient[i] == c:
                continue
            if orient[i] == 1 - c:
                raise _Conflict
            orient[i] = c
            y = pairs[i][c]
            if y & vfull == vfull:
                raise _Conflict
            if any(y & x == y for x in small):
                continue
            cand = small + [y]
            unions = [y | x for x in cand]
            for u in unions:
                for x in cand:
                    if u | x == full:
                        raise _Conflict
            small[:] = [x for x in small if x & y != x] + [y]
            for j in range(N):
                if orient[j] != -1:
                    continue
                p, q = pairs[j]
                bad_p = any(u | p == full for u in unions)
                bad_q = any(u | q == full for u in unions)
                if bad_p and bad_q:
                    raise _Conflict
                if bad_p:
                    queue.append((j, 1))
                elif bad_q:
                    queue.append((j, 0))

    orient = [-1] * N
    small: list[int] = []
    queue = []
    for i, (p, q) in enumerate(pairs):
        p_big = p & vfull == vfull
        q_big = q & vfull == vfull
        if p_big and q_big:
            return None
        if p_big:
            queue.append((i, 1))
        elif q_big:
            queue.append((i, 0))
    try:
        place(orient, small, queue)
    except _Conflict:
        return None

    def dfs(orient, small):
        try:
            j = orient.index(-1)
        except ValueError:
            return orient
        p, q = pairs[j]
        first = 0 if popcount(p) <= popcount(q) else 1
        for c in (first, 1 - first):
            o2, s2 = orient[:], small[:]
            try:
                place(o2, s2, [(j, c)])
            except _Conflict:
                continue
            res = dfs(o2, s2)
            if res is not None:
                return res
        return None

    return dfs(orient, small)


def find_tangle(G: Graph, theta: int, distinct_triples: bool = False, max_n: int = TANGLE_MAX_N):
    """A tangle of order ``theta`` as a TangleCandidate, or None."""
    if G.n > max_n:
        raise CapabilityError(f"tangle search is capped at n<={max_n} (got n={G.n})")
    if theta < 1:
        raise ValueError("tangle order must be >= 1")
    enc = _Encoding(G)
    pairs = _gsep_pairs(enc, theta - 1)
    if distinct_triples and len(pairs) <= 2:
        return _tiny_distinct(G, enc, theta, pairs)
    orient = _search(pairs, enc.full, enc.vfull)
    if orient is None:
        return None
    oriented = tuple(
        GSeparation(enc.decode(pairs[i][c]), enc.decode(pairs[i][1 - c]))
        for i, c in enumerate(orient)
    )
    return TangleCandidate(theta, oriented)


def _tiny_distinct(G, enc, theta, pairs):
    for bits in range(1 << len(pairs)):
        oriented = tuple(
            GSeparation(enc.decode(p), enc.decode(q)) if not bits >> i & 1
            else GSeparation(enc.decode(q), enc.decode(p))
            for i, (p, q) in enumerate(pairs)
        )
        cand = TangleCandidate(theta, oriented)
        if verify_tangle(G, cand, distinct_triples=True).ok:
            return cand
    return None


def tangle_number_exact(G: Graph, distinct_triples: bool = False, max_n: int = TANGLE_MAX_N) -> int:
    """Largest theta admitting a tangle (0 for the empty graph).

    Restricting a tangle of order theta to separations of order < theta - 1
    gives a tangle of order theta - 1, so theta is scanned upwards until the
    first failure.  No order exceeds n: the pair (G, (V(G), {})) has order n
    and neither side may be small.
    """
    if G.n > max_n:
        raise CapabilityError(f"tangle_number_exact is capped at n<={max_n} (got n={G.n})")
    best = 0
    for theta in range(1, G.n + 1):
        if find_tangle(G, theta, distinct_triples, max_n) is None:
            break
        best = theta
    return best
