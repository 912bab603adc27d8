"""Rounding a splittable demand flow to a confluent one, and reading a
W-cloud off its support.

A confluent flow is an in-forest toward the sinks carrying, on the arc out of
v, the demand of v's subtree.  Congestion at v is the demand of its subtree,
which is largest at the root; so congestion <= c holds exactly when every
tree's total demand is at most c.  Choosing the forest is the hard part: the
value of a forest is ``sum over trees of min(c, tree demand)``.

The forest is built greedily (several deterministic orders), improved by
re-hanging subtrees onto other trees while that helps, and the best one is
kept.  The guarantee total(d') >= total(d)/3 is then checked exactly.
"""

from __future__ import annotations

from collections import deque
from fractions import Fraction

from .clouds import WCloud
from .errors import ContractError
from .flows import FlowAssignment, cancel_cycles
from .graph import Digraph, Graph

MAX_LOCAL_ROUNDS = 200


def is_confluent(flow: dict) -> bool:
    out: dict = {}
    for (u, v), x in flow.items():
        if x > 0:
            if u in out:
                return False
            out[u] = v
    for start in out:
        seen = set()
        x = start
        while x in out:
            if x in seen:
                return False
            seen.add(x)
            x = out[x]
    return True


def _check_input(G2: Digraph, f: FlowAssignment, d: dict, c: Fraction):
    for arc, x in f.flow.items():
        if x < 0:
            raise ContractError(f"negative flow on {arc}", witness=arc)
        if x > 0 and arc not in G2.arcs:
            raise ContractError(f"flow on {arc}, which is not an arc", witness=arc)
    for v, x in d.items():
        if x < 0:
            raise ContractError(f"negative demand at {v}", witness=v)
    bad = FlowAssignment(f.flow, d, f.sinks).conservation_violations(G2.n)
    if bad:
        raise ContractError(f"conservation fails at vertex {bad[0]}", witness=bad[0])
    cong = FlowAssignment(f.flow, d, f.sinks).congestions(G2.n)
    for v, x in enumerate(cong):
        if x > c:
            raise ContractError(f"congestion {x} at vertex {v} exceeds {c}", witness=v)


def _value(totals: dict, c: Fraction) -> Fraction:
    return sum((min(c, t) for t in totals.values()), Fraction(0))


class _Forest:
    """Parent pointers toward the sinks plus per-tree demand totals."""

    def __init__(self, n, sinks, d, c):
        self.n = n
        self.sinks = sinks
        self.d = d
        self.c = c
        self.parent: list = [None] * n
        self.root: list = [None] * n
        for w in sinks:
            self.root[w] = w
        self.totals = {w: Fraction(d.get(w, 0)) for w in sinks}

    def attach(self, v, u):
        self.parent[v] = u
        self.root[v] = self.root[u]
        self.totals[self.root[v]] += self.d.get(v, 0)

    def children(self):
        ch = [[] for _ in range(self.n)]
        for v, p in enumerate(self.parent):
            if p is not None:
                ch[p].append(v)
        return ch

    def subtree(self, v, ch):
        out = [v]
        i = 0
        while i < len(out):
            out.extend(ch[out[i]])
            i += 1
        return out

    def value(self):
        return _value(self.totals, self.c)


def _greedy(order, options, n, sinks, d, c) -> _Forest:
    """Attach vertices in ``order`` to the already-placed out-neighbour whose
    tree gains most (then has most slack, then smallest id)."""
    F = _Forest(n, sinks, d, c)
    for v in order:
        if v in sinks:
            continue
        placed = [u for u in options[v] if F.root[u] is not None]
        if not placed:
            continue
        dv = Fraction(d.get(v, 0))

        def key(u):
            t = F.totals[F.root[u]]
            gain = min(c, t + dv) - min(c, t)
            return (-gain, t, u)

        F.attach(v, min(placed, key=key))
    return F


def _improve(F: _Forest, options) -> _Forest:
    """Move whole subtrees to another tree while the capped total grows."""
    c = F.c
    for _ in range(MAX_LOCAL_ROUNDS):
        moved = False
        ch = F.children()
        for v in range(F.n):
            if F.parent[v] is None or v in F.sinks:
                continue
            sub = F.subtree(v, ch)
            x = sum((Fraction(F.d.get(y, 0)) for y in sub), Fraction(0))
            if x == 0:
                continue
            w1 = F.root[v]
            t1 = F.totals[w1]
            best = None
            for u in options[v]:
                w2 = F.root[u]
                if w2 is None or w2 == w1:
                    continue
                t2 = F.totals[w2]
                gain = min(c, t1 - x) + min(c, t2 + x) - min(c, t1) - min(c, t2)
                if gain > 0 and (best is None or (gain, -t2, -u) > best[0]):
                    best = ((gain, -t2, -u), u)
            if best is None:
                continue
            u = best[1]
            w2 = F.root[u]
            F.parent[v] = u
            for y in sub:
                F.root[y] = w2
            F.totals[w1] -= x
            F.totals[w2] += x
            moved = True
            ch = F.children()
        if not moved:
            break
    return F


def _reverse_bfs_order(G2: Digraph, sinks) -> list:
    inn = G2.in_neighbors()
    dist = {w: 0 for w in sinks}
    dq = deque(sorted(sinks))
    order = []
    while dq:
        x = dq.popleft()
        order.append(x)
        for y in inn[x]:
            if y not in dist:
                dist[y] = dist[x] + 1
                dq.append(y)
    return order


def _support_order(flow: dict, n: int, sinks) -> list:
    """Vertices so that every support out-neighbour comes first."""
    out = {v: [] for v in range(n)}
    indeg = {v: 0 for v in range(n)}
    for (u, v), x in flow.items():
        if x > 0:
            out[v].append(u)  # reversed arc: head before tail
            indeg[u] += 1
    dq = deque(sorted(v for v in range(n) if indeg[v] == 0))
    order = []
    while dq:
        x = dq.popleft()
        order.append(x)
        for y in sorted(out[x]):
            indeg[y] -= 1
            if indeg[y] == 0:
                dq.append(y)
    return order


def _cap_demands(F: _Forest, d: dict) -> dict:
    """Cut each over-full tree back to exactly c, deepest vertices first."""
    c = F.c
    depth = [0] * F.n
    for v in range(F.n):
        x, k = v, 0
        while F.parent[x] is not None:
            x = F.parent[x]
            k += 1
        depth[v] = k
    d2 = {v: Fraction(d.get(v, 0)) for v in range(F.n) if F.root[v] is not None and d.get(v, 0) > 0}
    for w, total in F.totals.items():
        excess = total - c
        if excess <= 0:
            continue
        members = sorted((v for v in d2 if F.root[v] == w), key=lambda v: (-depth[v], -v))
        for v in members:
            if excess <= 0:
                break
            cut = min(d2[v], excess)
            d2[v] -= cut
            excess -= cut
    return {v: x for v, x in d2.items() if x > 0}


def _realize(F: _Forest, d2: dict) -> dict:
    load = dict(d2)
    ch = F.children()
    flow = {}
    # accumulate subtree loads bottom-up
    order = []
    for w in sorted(F.sinks):
        order.extend(F.subtree(w, ch))
    for v in reversed(order):
        p = F.parent[v]
        x = load.get(v, 0)
        if p is not None and x > 0:
            flow[(v, p)] = x
            load[p] = load.get(p, 0) + x
    return flow


def confluent_round(G2: Digraph, f: FlowAssignment, d: dict, c):
    """Confluent flow with congestion <= c, demands d' <= d and
    total(d') >= total(d)/3, from a splittable flow of congestion <= c.

    Returns ``(f2, d2)``; ``f2.demand is d2``.
    """
    c = Fraction(c)
    sinks = frozenset(f.sinks)
    n = G2.n
    d = {v: Fraction(x) for v, x in d.items() if x != 0}
    _check_input(G2, f, d, c)
    total = sum(d.values(), Fraction(0))
    if is_confluent(f.flow):
        return FlowAssignment({a: x for a, x in f.flow.items() if x > 0}, d, sinks), d

    flow = cancel_cycles(f.flow)
    out_all = G2.out_neighbors()
    out_support: list = [[] for _ in range(n)]
    for (u, v) in sorted(flow):
        out_support[u].append(v)

    candidates = []
    for order, options in (
        (_support_order(flow, n, sinks), out_support),
        (_support_order(flow, n, sinks), out_all),
        (_reverse_bfs_order(G2, sinks), out_all),
    ):
        F = _greedy(order, options, n, sinks, d, c)
        candidates.append(_improve(F, out_all))
    best = max(candidates, key=lambda F: F.value())

    d2 = _cap_demands(best, d)
    f2 = FlowAssignment(_realize(best, d2), d2, sinks)
    _check_output(G2, f2, d, d2, c, total)
    return f2, d2


def _check_output(G2, f2: FlowAssignment, d, d2, c, total):
    if not is_confluent(f2.flow):
        raise ContractError("rounded flow is not confluent")
    if f2.conservation_violations(G2.n):
        raise ContractError("rounded flow violates conservation")
    for v, x in enumerate(f2.congestions(G2.n)):
        if x > c:
            raise ContractError(f"rounded congestion {x} at {v} exceeds {c}", witness=v)
    for v, x in d2.items():
        if x > d.get(v, 0):
            raise ContractError(f"rounded demand at {v} exceeds the original", witness=v)
    got = sum(d2.values(), Fraction(0))
    if 3 * got < total:
        raise ContractError(
            f"confluent flow routes {got}, less than a third of {total}", witness=got
        )


def support_to_cloud(G0: Graph, W, f2: FlowAssignment) -> WCloud:
    """The undirected support of a confluent flow toward W as a W-cloud.

    Vertices with positive demand or throughput are kept; terminals whose
    arborescence is empty become isolated components.
    """
    W = frozenset(W)
    verts = set(W)
    edges = set()
    for (u, v), x in f2.flow.items():
        if x > 0:
            verts.update((u, v))
            edges.add((min(u, v), max(u, v)))
    verts.update(v for v, x in f2.demand.items() if x > 0)
    cloud = WCloud(G0, W, frozenset(verts), frozenset(edges))
    if not cloud.valid:
        raise ContractError("flow support is not a W-cloud: " + "; ".join(cloud.problems))
    return cloud
