"""Exact flows: the node-split auxiliary network, max-flow/min-cut, and the
conversion of a source-to-sink flow into a demand flow toward the terminals.

Capacities are Fractions throughout.  The auxiliary network is scaled by
``p*k`` (eps = p/q, k = |W|) so that source arcs carry ``p*k`` and vertex
arcs carry ``s*q``; with integral s every capacity is an integer.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction

from .clouds import CloudParams
from .errors import ContractError
from .graph import Digraph, Graph, Separation, check_separation


@dataclass(frozen=True)
class FlowAssignment:
    """Arc flows plus vertex demands.

    Conservation: out(v) - in(v) == demand(v) at every vertex not in
    ``sinks``.  Arcs absent from ``flow`` carry zero.
    """

    flow: dict
    demand: dict
    sinks: frozenset = frozenset()

    def inflow(self) -> dict:
        acc: dict = {}
        for (u, v), x in self.flow.items():
            acc[v] = acc.get(v, 0) + x
        return acc

    def outflow(self) -> dict:
        acc: dict = {}
        for (u, v), x in self.flow.items():
            acc[u] = acc.get(u, 0) + x
        return acc

    def conservation_violations(self, n: int) -> list[int]:
        inn, out = self.inflow(), self.outflow()
        return [
            v for v in range(n)
            if v not in self.sinks
            and out.get(v, 0) - inn.get(v, 0) != self.demand.get(v, 0)
        ]

    def congestion(self, v: int) -> Fraction:
        return Fraction(self.inflow().get(v, 0) + self.demand.get(v, 0))

    def congestions(self, n: int) -> list[Fraction]:
        inn = self.inflow()
        return [Fraction(inn.get(v, 0) + self.demand.get(v, 0)) for v in range(n)]

    def total_demand(self) -> Fraction:
        return Fraction(sum(self.demand.values(), 0))

    def support(self) -> list[tuple[int, int]]:
        return sorted(a for a, x in self.flow.items() if x > 0)


@dataclass(frozen=True)
class FlowNetwork:
    """Capacitated digraph with source ``b`` and sink ``a``.

    For networks built by :func:`build_auxiliary_network`, ``split[v]`` is
    ``(v_in, v_out)`` and the remaining fields record the instance and the
    scaled constants.
    """

    digraph: Digraph
    capacity: dict
    source: int
    sink: int
    infinite: frozenset = frozenset()
    split: tuple = ()
    G0: Graph | None = None
    W: frozenset = frozenset()
    params: CloudParams | None = None
    scale: Fraction = Fraction(1)
    internal_cap: Fraction = Fraction(0)
    source_cap: Fraction = Fraction(0)
    threshold: Fraction = Fraction(0)
    infinity: Fraction = field(default=Fraction(0))

    def cut_capacity(self, cut) -> Fraction:
        return sum((self.capacity[a] for a in cut), Fraction(0))


def build_auxiliary_network(G0: Graph, W, params: CloudParams) -> FlowNetwork:
    """Node-split network: v_in -> v_out with capacity s/(eps k), both
    orientations u_out -> v_in for every edge, b -> v_in with capacity 1 and
    w_out -> a for terminals; everything multiplied by p*k."""
    W = frozenset(W)
    k = len(W)
    if k == 0:
        raise ValueError("terminal set W must be nonempty")
    if not W <= G0.vertices:
        raise ValueError("W must be a subset of V(G0)")
    if params.k != k:
        raise ValueError(f"params.k={params.k} but |W|={k}")
    p, q = params.eps.numerator, params.eps.denominator
    scale = Fraction(p * k)
    internal = params.s * q
    source_cap = scale
    n = G0.n
    b, a = 2 * n, 2 * n + 1
    cap: dict = {}
    for v in range(n):
        cap[(2 * v, 2 * v + 1)] = internal
        cap[(b, 2 * v)] = source_cap
    finite_total = sum(cap.values(), Fraction(0))
    infinity = finite_total + 1
    infinite = set()
    for u, v in G0.edges:
        for x, y in ((u, v), (v, u)):
            cap[(2 * x + 1, 2 * y)] = infinity
            infinite.add((2 * x + 1, 2 * y))
    for w in W:
        cap[(2 * w + 1, a)] = infinity
        infinite.add((2 * w + 1, a))
    return FlowNetwork(
        digraph=Digraph(2 * n + 2, frozenset(cap)),
        capacity=cap,
        source=b,
        sink=a,
        infinite=frozenset(infinite),
        split=tuple((2 * v, 2 * v + 1) for v in range(n)),
        G0=G0,
        W=W,
        params=params,
        scale=scale,
        internal_cap=internal,
        source_cap=source_cap,
        threshold=6 * params.s * scale,
        infinity=infinity,
    )


def max_flow_min_cut(N: FlowNetwork):
    """Edmonds-Karp in exact arithmetic.

    Returns ``(flow, cut, value)``: the flow as a FlowAssignment whose only
    nonzero demand is ``value`` at the source, the arcs leaving the final
    residual-reachable set, and the flow value (equal to the cut capacity).
    """
    nodes = N.digraph.n
    out_adj = [[] for _ in range(nodes)]
    in_adj = [[] for _ in range(nodes)]
    for u, v in sorted(N.capacity):
        out_adj[u].append(v)
        in_adj[v].append(u)
    f = {arc: Fraction(0) for arc in N.capacity}
    s, t = N.source, N.sink
    value = Fraction(0)

    def residual_bfs():
        prev = {s: None}
        dq = deque([s])
        while dq:
            x = dq.popleft()
            for y in out_adj[x]:
                if y not in prev and f[(x, y)] < N.capacity[(x, y)]:
                    prev[y] = (x, 1)
                    dq.append(y)
            for y in in_adj[x]:
                if y not in prev and f[(y, x)] > 0:
                    prev[y] = (x, -1)
                    dq.append(y)
        return prev

    while True:
        prev = residual_bfs()
        if t not in prev:
            break
        steps = []
        y = t
        while y != s:
            x, kind = prev[y]
            steps.append((x, y, kind))
            y = x
        delta = min(
            N.capacity[(x, y)] - f[(x, y)] if kind == 1 else f[(y, x)]
            for x, y, kind in steps
        )
        for x, y, kind in steps:
            if kind == 1:
                f[(x, y)] += delta
            else:
                f[(y, x)] -= delta
        value += delta

    reach = set(prev)
    cut = frozenset(arc for arc in N.capacity if arc[0] in reach and arc[1] not in reach)
    if N.cut_capacity(cut) != value:
        raise ContractError("max-flow value differs from the residual cut capacity", witness=cut)
    flow = FlowAssignment(
        {arc: x for arc, x in f.items() if x > 0},
        {s: value} if value else {},
        frozenset({t}),
    )
    return flow, cut, value


def _reachable(N: FlowNetwork, removed) -> set:
    adj = [[] for _ in range(N.digraph.n)]
    for u, v in N.capacity:
        if (u, v) not in removed:
            adj[u].append(v)
    seen = {N.source}
    dq = deque([N.source])
    while dq:
        x = dq.popleft()
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                dq.append(y)
    return seen


def cut_to_separation(N: FlowNetwork, cut) -> Separation:
    """B = {v : b reaches v_in}, A = {v : b does not reach v_out}, in N - cut."""
    cut = frozenset(cut)
    if cut & N.infinite:
        raise ContractError("cut contains an infinite-capacity arc", witness=cut & N.infinite)
    reach = _reachable(N, cut)
    if N.sink in reach:
        raise ContractError("arc set does not separate b from a", witness=cut)
    n = N.G0.n
    B = frozenset(v for v in range(n) if 2 * v in reach)
    A = frozenset(v for v in range(n) if 2 * v + 1 not in reach)
    sep = Separation(A, B)
    if not check_separation(N.G0, sep).valid or not N.W <= A:
        raise ContractError("cut did not induce a separation with W on the A side", witness=sep)
    return sep


def cancel_cycles(flow: dict) -> dict:
    """Remove every directed cycle from the support by subtracting its
    bottleneck.  Conservation and demands are unchanged."""
    flow = {a: Fraction(x) for a, x in flow.items() if x > 0}
    while True:
        cycle = _find_cycle(flow)
        if cycle is None:
            return flow
        delta = min(flow[a] for a in cycle)
        for a in cycle:
            flow[a] -= delta
            if flow[a] == 0:
                del flow[a]


def _find_cycle(flow: dict):
    out: dict = {}
    for u, v in sorted(flow):
        out.setdefault(u, []).append(v)
    state: dict = {}
    for root in sorted(out):
        if root in state:
            continue
        stack = [(root, iter(out.get(root, ())))]
        path = [root]
        state[root] = 1
        while stack:
            x, it = stack[-1]
            y = next(it, None)
            if y is None:
                state[x] = 2
                stack.pop()
                path.pop()
                continue
            if state.get(y) == 1:
                i = path.index(y)
                cyc = path[i:] + [y]
                return [(cyc[j], cyc[j + 1]) for j in range(len(cyc) - 1)]
            if y not in state:
                state[y] = 1
                stack.append((y, iter(out.get(y, ()))))
                path.append(y)
    return None


def decompose_paths(flow: dict, source: int, sink: int):
    """Split an acyclic source-to-sink flow into ``(path, amount)`` pairs."""
    flow = cancel_cycles(flow)
    out: dict = {}
    for u, v in sorted(flow):
        out.setdefault(u, []).append(v)
    paths = []
    while True:
        path = [source]
        x = source
        while x != sink:
            nxt = next((y for y in out.get(x, ()) if flow.get((x, y), 0) > 0), None)
            if nxt is None:
                break
            path.append(nxt)
            x = nxt
        if x != sink:
            if len(path) > 1:
                raise ContractError("flow is not conserved along a path", witness=path)
            return paths
        amount = min(flow[(path[i], path[i + 1])] for i in range(len(path) - 1))
        for i in range(len(path) - 1):
            flow[(path[i], path[i + 1])] -= amount
        paths.append((path, amount))


def flow_to_demand_flow(N: FlowNetwork, flow: FlowAssignment):
    """Turn a b-to-a flow on the auxiliary network into a demand flow on G0.

    Each flow path is cut at the first terminal it reaches, so afterwards no
    flow leaves a terminal.  The returned digraph has both orientations of
    every edge of G0 except arcs leaving W, which makes W the set of sinks.
    ``d(v)`` is the flow on ``b -> v_in``; the congestion at v equals the
    flow through the arc ``v_in -> v_out``.

    Returns ``(G2, f, d)`` with ``f.demand is d``.
    """
    G0, W = N.G0, N.W
    n = G0.n
    b, a = N.source, N.sink
    trimmed: dict = {}
    for path, amount in decompose_paths(dict(flow.flow), b, a):
        # path = b, v_in, v_out, ..., a
        cut_at = None
        for i in range(2, len(path) - 1, 2):
            if path[i] // 2 in W:
                cut_at = i
                break
        new = path[: cut_at + 1] + [a]
        for i in range(len(new) - 1):
            arc = (new[i], new[i + 1])
            trimmed[arc] = trimmed.get(arc, 0) + amount
    arcs = frozenset(
        (x, y) for u, v in G0.edges for x, y in ((u, v), (v, u)) if x not in W
    )
    G2 = Digraph(n, arcs)
    d = {}
    f2 = {}
    for (x, y), amount in trimmed.items():
        if x == b:
            d[y // 2] = d.get(y // 2, 0) + amount
        elif y != a and x % 2 == 1 and y % 2 == 0:
            f2[(x // 2, y // 2)] = amount
    f2 = cancel_cycles(f2)
    result = FlowAssignment(f2, d, W)
    if result.conservation_violations(n):
        raise ContractError(
            "demand flow violates conservation", witness=result.conservation_violations(n)
        )
    return G2, result, d
