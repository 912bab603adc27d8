"""Balanced separators, separation number and treewidth at desk scale.

All routines work on vertex bitmasks.  The exact ones are exponential and
guarded by vertex caps (``SN_EXACT_LIMIT``, ``TW_EXACT_LIMIT``); the
``SEPWIDTH_EXACT_CAP`` environment variable overrides both.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from itertools import combinations
from typing import Any

from .errors import CapabilityError
from .graph import (
    Graph,
    Separation,
    component_masks,
    mask_to_list,
    popcount,
)

SN_EXACT_LIMIT = 14
TW_EXACT_LIMIT = 18
# separator candidates tried by one min_balanced_separation call before giving up
SEPARATOR_BUDGET = 5_000_000


def exact_cap(default: int) -> int:
    env = os.environ.get("SEPWIDTH_EXACT_CAP")
    return int(env) if env else default


@dataclass(frozen=True)
class WidthResult:
    value: int
    witness: Any
    exact: bool


# -- balanced separations --------------------------------------------------

def _split_components(sizes: list[int], n: int):
    """Choose components for the A side so both sides stay within 2n/3.

    Returns the chosen indices, or None if no split exists.  Subset-sum over
    a Python-int bitset; reconstruction walks the stored prefixes backwards.
    """
    rest = sum(sizes)
    cap = (2 * n) // 3
    lo = max(0, rest - cap)
    if lo > cap:
        return None
    prefixes = [1]
    for s in sizes:
        prefixes.append(prefixes[-1] | (prefixes[-1] << s))
    window = prefixes[-1] >> lo & ((1 << (cap - lo + 1)) - 1)
    if not window:
        return None
    x = lo + ((window & -window).bit_length() - 1)
    chosen = []
    for i in range(len(sizes) - 1, -1, -1):
        if not (prefixes[i] >> x & 1):
            chosen.append(i)
            x -= sizes[i]
    return chosen


def _try_separator(adj, mask: int, sep: int, n: int):
    comps = component_masks(adj, mask & ~sep)
    chosen = _split_components([popcount(c) for c in comps], n)
    if chosen is None:
        return None
    a = sep
    for i in chosen:
        a |= comps[i]
    b = mask & ~a | sep
    return a, b


def _search_separator(adj, mask: int, k_lo: int, k_hi: int, hints=None):
    """First balanced separation of ``G[mask]`` with separator size in
    ``[k_lo, k_hi]``, trying sizes in increasing order.  Returns
    ``(k, A_mask, B_mask)`` or None."""
    n = popcount(mask)
    verts = mask_to_list(mask)
    # high-degree vertices first: good separators are found sooner
    verts.sort(key=lambda v: (-popcount(adj[v] & mask), v))
    tried = 0
    for k in range(k_lo, k_hi + 1):
        if k > n:
            break
        if n - k <= (2 * n) // 3:
            sep = 0
            for v in verts[:k]:
                sep |= 1 << v
            return k, mask, sep
        if hints:
            for h in hints:
                if popcount(h) == k and h & mask == h:
                    found = _try_separator(adj, mask, h, n)
                    if found:
                        return (k,) + found
        for combo in combinations(verts, k):
            tried += 1
            if tried > SEPARATOR_BUDGET:
                raise CapabilityError(
                    f"balanced separator search exceeded {SEPARATOR_BUDGET} candidates "
                    f"(n={n}, order {k})"
                )
            sep = 0
            for v in combo:
                sep |= 1 << v
            found = _try_separator(adj, mask, sep, n)
            if found:
                return (k,) + found
    return None


def min_balanced_separation(G: Graph) -> tuple[int, Separation]:
    """Smallest order of a balanced separation of G, with a witness."""
    if G.n == 0:
        return 0, Separation(frozenset(), frozenset())
    k, a, b = _search_separator(G.adj, G.full_mask, 0, G.n)
    return k, Separation(frozenset(mask_to_list(a)), frozenset(mask_to_list(b)))


def separation_number_exact(G: Graph, limit: int | None = None) -> WidthResult:
    """Exact separation number: the worst minimum balanced separation over
    induced subgraphs.

    The witness is a dict with the maximizing vertex set ``S`` and a minimum
    balanced separation of ``G[S]`` in parent ids.
    """
    limit = exact_cap(SN_EXACT_LIMIT) if limit is None else limit
    if G.n > limit:
        raise CapabilityError(
            f"separation_number_exact is capped at n={limit} (got n={G.n}); "
            "use the min-fill upper bound tw+1 instead"
        )
    if G.n == 0:
        return WidthResult(0, {"S": frozenset(), "separation": Separation(frozenset(), frozenset())}, True)

    adj = G.adj
    best = 0
    best_mask = 0
    best_sep = (0, 0)
    hints: list[int] = []
    for size in range(G.n, 0, -1):
        # every graph on `size` vertices has a balanced separation of order ceil(size/3)
        if -(-size // 3) <= best:
            break
        for combo in combinations(range(G.n), size):
            mask = 0
            for v in combo:
                mask |= 1 << v
            found = _search_separator(adj, mask, 0, best, hints)
            if found is not None:
                sep = found[1] & found[2]
                if sep and sep not in hints:
                    hints.insert(0, sep)
                    del hints[32:]
                continue
            k, a, b = _search_separator(adj, mask, best + 1, size)
            best, best_mask, best_sep = k, mask, (a, b)
            hints.insert(0, a & b)
            del hints[32:]
    witness = {
        "S": frozenset(mask_to_list(best_mask)),
        "separation": Separation(
            frozenset(mask_to_list(best_sep[0])), frozenset(mask_to_list(best_sep[1]))
        ),
    }
    return WidthResult(best, witness, True)


# -- treewidth -------------------------------------------------------------

def elimination_width(G: Graph, order) -> int:
    """Width of the elimination ordering: max number of later neighbours
    in the filled graph."""
    order = list(order)
    if sorted(order) != list(range(G.n)):
        raise ValueError("elimination order must be a permutation of the vertices")
    if G.n == 0:
        return -1
    adj = list(G.adj)
    width = 0
    alive = G.full_mask
    for v in order:
        nb = adj[v] & alive & ~(1 << v)
        width = max(width, popcount(nb))
        for u in mask_to_list(nb):
            adj[u] |= nb & ~(1 << u)
        alive &= ~(1 << v)
    return width


def treewidth_upper_minfill(G: Graph) -> WidthResult:
    """Greedy min-fill elimination; ties go to the smallest vertex id."""
    adj = list(G.adj)
    alive = G.full_mask
    order = []
    width = 0
    while alive:
        best_v, best_fill = -1, None
        for v in mask_to_list(alive):
            nb = mask_to_list(adj[v] & alive)
            fill = 0
            for i, u in enumerate(nb):
                fill += len(nb) - 1 - i - popcount(adj[u] & alive & _mask_of(nb[i + 1:]))
            if best_fill is None or fill < best_fill:
                best_v, best_fill = v, fill
        v = best_v
        nb = adj[v] & alive
        width = max(width, popcount(nb))
        for u in mask_to_list(nb):
            adj[u] |= nb & ~(1 << u)
        alive &= ~(1 << v)
        order.append(v)
    return WidthResult(width if G.n else -1, tuple(order), False)


def _mask_of(vs) -> int:
    m = 0
    for v in vs:
        m |= 1 << v
    return m


def _q_value(adj, S: int, v: int) -> int:
    """Vertices outside S+v reachable from v through S."""
    inside = S | (1 << v)
    comp = 1 << v
    frontier = comp
    reach = 0
    while frontier:
        grow = 0
        f = frontier
        while f:
            b = f & -f
            grow |= adj[b.bit_length() - 1]
            f ^= b
        reach |= grow
        grow &= S & ~comp
        comp |= grow
        frontier = grow
    return popcount(reach & ~inside)


def treewidth_exact(G: Graph, limit: int | None = None) -> WidthResult:
    """Treewidth by dynamic programming over vertex subsets.

    ``best[S]`` is the smallest width of eliminating the set ``S`` first; a
    state is dropped once it reaches the min-fill upper bound.
    """
    limit = exact_cap(TW_EXACT_LIMIT) if limit is None else limit
    if G.n > limit:
        raise CapabilityError(
            f"treewidth_exact is capped at n={limit} (got n={G.n}); "
            "use treewidth_upper_minfill instead"
        )
    if G.n == 0:
        return WidthResult(-1, (), True)
    upper = treewidth_upper_minfill(G)
    ub = upper.value
    adj = G.adj
    full = G.full_mask
    layer = {0: (0, None, None)}
    history = [layer]
    for _ in range(G.n):
        nxt: dict[int, tuple] = {}
        for S in sorted(layer):
            val = layer[S][0]
            rest = full & ~S
            while rest:
                low = rest & -rest
                rest ^= low
                v = low.bit_length() - 1
                w = max(val, _q_value(adj, S, v))
                if w >= ub:
                    continue
                T = S | low
                cur = nxt.get(T)
                if cur is None or w < cur[0]:
                    nxt[T] = (w, S, v)
        if not nxt:
            return WidthResult(ub, upper.witness, True)
        layer = nxt
        history.append(layer)
    order = []
    S = full
    for lay in reversed(history[1:]):
        _, prev, v = lay[S]
        order.append(v)
        S = prev
    order.reverse()
    return WidthResult(layer[full][0], tuple(order), True)
