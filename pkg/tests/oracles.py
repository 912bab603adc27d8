"""Brute-force oracles.  Each one works straight from a definition and shares
no code with the routine it checks beyond the Graph container."""

from __future__ import annotations

import itertools
import random
from fractions import Fraction
from math import lcm

import numpy as np

from sepwidth.flows import FlowAssignment
from sepwidth.graph import Digraph, Graph


# -- separations -------------------------------------------------------------

def _assignments(k: int) -> np.ndarray:
    """All 3^k side labels: 0 = A only, 1 = B only, 2 = both."""
    if k == 0:
        return np.zeros((1, 0), dtype=np.int8)
    return np.array(list(itertools.product((0, 1, 2), repeat=k)), dtype=np.int8)


def min_balanced_order(n: int, edges) -> int:
    """Smallest order of a balanced separation, over all 3^n labelings."""
    if n == 0:
        return 0
    lab = _assignments(n)
    ok = np.ones(len(lab), dtype=bool)
    for u, v in edges:
        ok &= ~(((lab[:, u] == 0) & (lab[:, v] == 1)) | ((lab[:, u] == 1) & (lab[:, v] == 0)))
    a_only = (lab == 0).sum(axis=1)
    b_only = (lab == 1).sum(axis=1)
    ok &= (3 * a_only <= 2 * n) & (3 * b_only <= 2 * n)
    return int((lab == 2).sum(axis=1)[ok].min())


def sn_all_subgraphs(G: Graph) -> int:
    """max over every vertex subset S and every edge subset of G[S] of the
    minimum balanced separation order.

    A labeling serves exactly the edge subsets inside the complement of the
    edges it cuts, so its order is scattered onto that complement and pushed
    down to every submask; the result is the per-subset minimum."""
    best = 0
    for size in range(1, G.n + 1):
        for S in itertools.combinations(range(G.n), size):
            pos = {v: i for i, v in enumerate(S)}
            es = [(pos[u], pos[v]) for u, v in G.sorted_edges() if u in pos and v in pos]
            lab = _assignments(size)
            cross = np.zeros(len(lab), dtype=np.int64)
            for i, (u, v) in enumerate(es):
                hit = ((lab[:, u] == 0) & (lab[:, v] == 1)) | ((lab[:, u] == 1) & (lab[:, v] == 0))
                cross |= hit.astype(np.int64) << i
            a_only = (lab == 0).sum(axis=1)
            b_only = (lab == 1).sum(axis=1)
            bal = (3 * a_only <= 2 * size) & (3 * b_only <= 2 * size)
            order = (lab == 2).sum(axis=1)
            full = (1 << len(es)) - 1
            least = np.full(1 << len(es), size + 1, dtype=np.int64)
            np.minimum.at(least, full ^ cross[bal], order[bal])
            for i in range(len(es)):
                view = least.reshape(-1, 2, 1 << i)
                np.minimum(view[:, 0, :], view[:, 1, :], out=view[:, 0, :])
            best = max(best, int(least.max()))
    return best


def treewidth_by_permutations(G: Graph) -> int:
    """min over all elimination orders of the largest later-neighbourhood."""
    if G.n == 0:
        return -1
    best = G.n
    for perm in itertools.permutations(range(G.n)):
        nb = {v: set() for v in range(G.n)}
        for u, v in G.edges:
            nb[u].add(v)
            nb[v].add(u)
        width = 0
        for v in perm:
            width = max(width, len(nb[v]))
            if width >= best:
                break
            for x in nb[v]:
                nb[x] |= nb[v] - {x}
                nb[x].discard(v)
            del nb[v]
        else:
            best = min(best, width)
    return best


# -- g-separations -------------------------------------------------------------

def g_separations_brute(G: Graph, max_order: int) -> set:
    """Unordered g-separations of order <= max_order as frozensets of two
    ``(vertices, edges)`` sides, from all 3^n x 2^m assignments."""
    edges = G.sorted_edges()
    out = set()
    for vl in itertools.product((0, 1, 2), repeat=G.n):
        order = sum(1 for x in vl if x == 2)
        if order > max_order:
            continue
        va = frozenset(v for v in range(G.n) if vl[v] != 1)
        vb = frozenset(v for v in range(G.n) if vl[v] != 0)
        for el in itertools.product((0, 1), repeat=len(edges)):
            ea = frozenset(e for e, side in zip(edges, el) if side == 0)
            eb = frozenset(e for e, side in zip(edges, el) if side == 1)
            if all(u in va and v in va for u, v in ea) and all(u in vb and v in vb for u, v in eb):
                out.add(frozenset({(va, ea), (vb, eb)}))
    return out


# -- flows -------------------------------------------------------------------

def min_cut_brute(N) -> Fraction:
    """Minimum capacity over all node sets containing the source but not the
    sink, by enumerating every such set in numpy chunks."""
    nodes = N.digraph.n
    others = [x for x in range(nodes) if x not in (N.source, N.sink)]
    idx = {x: i for i, x in enumerate(others)}
    den = lcm(*(Fraction(c).denominator for c in N.capacity.values()))
    arcs = [(u, v, int(Fraction(c) * den)) for (u, v), c in N.capacity.items()]
    total = 1 << len(others)
    best = None
    chunk = 1 << 16
    for start in range(0, total, chunk):
        S = np.arange(start, min(total, start + chunk), dtype=np.int64)
        cost = np.zeros(len(S), dtype=np.int64)
        for u, v, c in arcs:
            in_u = np.ones(len(S), bool) if u == N.source else (
                np.zeros(len(S), bool) if u == N.sink else (S >> idx[u]) & 1 == 1)
            in_v = np.ones(len(S), bool) if v == N.source else (
                np.zeros(len(S), bool) if v == N.sink else (S >> idx[v]) & 1 == 1)
            cost += np.where(in_u & ~in_v, c, 0)
        m = int(cost.min())
        best = m if best is None else min(best, m)
    return Fraction(best, den)


def random_dag_flow(rng: random.Random, n: int, k: int):
    """Random splittable flow on a DAG whose sinks are 0..k-1; every other
    vertex sends its demand plus inflow to lower ids in random proportions.
    Returns ``(G2, f, d, c)`` with c the exact congestion of f."""
    arcs = set()
    for v in range(k, n):
        for u in rng.sample(range(v), min(v, rng.randint(1, 3))):
            arcs.add((v, u))
    G2 = Digraph(n, frozenset(arcs))
    out = G2.out_neighbors()
    d = {v: Fraction(rng.randint(0, 4)) for v in range(k, n)}
    flow: dict = {}
    for v in range(n - 1, k - 1, -1):
        amount = d[v] + sum((x for (a, b), x in flow.items() if b == v), Fraction(0))
        if amount == 0:
            continue
        parts = [Fraction(rng.randint(1, 3)) for _ in out[v]]
        total = sum(parts)
        for u, share in zip(out[v], parts):
            flow[(v, u)] = flow.get((v, u), 0) + amount * share / total
    f = FlowAssignment(flow, d, frozenset(range(k)))
    c = max(f.congestions(n))
    return G2, f, d, c


def confluent_optimum(G2: Digraph, d: dict, c: Fraction, sinks) -> Fraction:
    """Best total demand any confluent flow with congestion <= c can route:
    every out-arc choice function, each tree capped at c."""
    n = G2.n
    out = G2.out_neighbors()
    choices = [[None] if v in sinks else [None] + list(out[v]) for v in range(n)]
    best = Fraction(0)
    for ch in itertools.product(*choices):
        tot: dict = {}
        ok = True
        for v in range(n):
            x, seen = v, set()
            while ch[x] is not None:
                if x in seen:
                    ok = False
                    break
                seen.add(x)
                x = ch[x]
            if not ok:
                break
            if x in sinks:
                tot[x] = tot.get(x, 0) + d.get(v, 0)
        if ok:
            best = max(best, sum((min(c, t) for t in tot.values()), Fraction(0)))
    return best


# -- clouds --------------------------------------------------------------------

def tameness_by_enumeration(sizes: dict, s, eps, strong: bool) -> bool:
    """Check the defining inequality for every qualifying U."""
    W = sorted(sizes)
    k = len(W)
    s, eps = Fraction(s), Fraction(eps)
    for r in range(k + 1):
        if r < (1 - eps) * k:
            continue
        for U in itertools.combinations(W, r):
            inside = sum(sizes[w] for w in U)
            outside = sum(sizes[w] for w in W if w not in U)
            need = s + 3 * outside if strong else s
            if inside < need:
                return False
    return True
