"""Simple graphs, digraphs, separations and g-separations.

Vertices are the dense integers ``0..n-1``.  Undirected edges are stored as
ordered pairs ``(u, v)`` with ``u < v``.  Everything here is immutable.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .errors import GraphValidationError, ParseError


def _norm_edge(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    n: int
    edges: frozenset = frozenset()
    adj: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.n < 0:
            raise GraphValidationError("negative vertex count")
        norm = set()
        for e in self.edges:
            u, v = e
            if u == v:
                raise GraphValidationError(f"loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise GraphValidationError(f"edge {u}-{v} out of range for n={self.n}")
            norm.add(_norm_edge(u, v))
        object.__setattr__(self, "edges", frozenset(norm))
        adj = [0] * self.n
        for u, v in norm:
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        object.__setattr__(self, "adj", tuple(adj))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable) -> "Graph":
        return cls(n, frozenset(tuple(e) for e in edges))

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def vertices(self) -> frozenset:
        return frozenset(range(self.n))

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def neighbors(self, v: int) -> list[int]:
        return mask_to_list(self.adj[v])

    def degree(self, v: int) -> int:
        return popcount(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)


@dataclass(frozen=True)
class Digraph:
    n: int
    arcs: frozenset = frozenset()

    def __post_init__(self):
        arcs = frozenset(tuple(a) for a in self.arcs)
        for u, v in arcs:
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise GraphValidationError(f"arc {u}->{v} out of range for n={self.n}")
        object.__setattr__(self, "arcs", arcs)

    def out_neighbors(self) -> list[list[int]]:
        out = [[] for _ in range(self.n)]
        for u, v in sorted(self.arcs):
            out[u].append(v)
        return out

    def in_neighbors(self) -> list[list[int]]:
        inn = [[] for _ in range(self.n)]
        for u, v in sorted(self.arcs):
            inn[v].append(u)
        return inn


@dataclass(frozen=True)
class Separation:
    A: frozenset
    B: frozenset

    def __post_init__(self):
        object.__setattr__(self, "A", frozenset(self.A))
        object.__setattr__(self, "B", frozenset(self.B))

    @property
    def order(self) -> int:
        return len(self.A & self.B)

    def reversed(self) -> "Separation":
        return Separation(self.B, self.A)


@dataclass(frozen=True)
class Subgraph:
    vertices: frozenset
    edges: frozenset

    def __post_init__(self):
        object.__setattr__(self, "vertices", frozenset(self.vertices))
        object.__setattr__(self, "edges", frozenset(_norm_edge(*e) for e in self.edges))


@dataclass(frozen=True)
class GSeparation:
    A: Subgraph
    B: Subgraph

    @property
    def order(self) -> int:
        return len(self.A.vertices & self.B.vertices)

    def reversed(self) -> "GSeparation":
        return GSeparation(self.B, self.A)


@dataclass(frozen=True)
class SeparationReport:
    valid: bool
    order: int
    balanced: bool


@dataclass(frozen=True)
class GSeparationReport:
    valid: bool
    order: int


# -- bit helpers -----------------------------------------------------------

def popcount(x: int) -> int:
    return x.bit_count()


def mask_to_list(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def set_to_mask(vs: Iterable[int]) -> int:
    m = 0
    for v in vs:
        m |= 1 << v
    return m


def component_masks(adj, mask: int) -> list[int]:
    """Connected components of the subgraph induced by ``mask``, as bitmasks,
    ordered by lowest vertex."""
    comps = []
    while mask:
        low = mask & -mask
        comp = low
        frontier = low
        while frontier:
            grow = 0
            f = frontier
            while f:
                b = f & -f
                grow |= adj[b.bit_length() - 1]
                f ^= b
            grow &= mask & ~comp
            comp |= grow
            frontier = grow
        comps.append(comp)
        mask &= ~comp
    return comps


# -- parsing ---------------------------------------------------------------

def parse_edge_list(text: str) -> Graph:
    """Parse the line-oriented edge-list format.

    ``#`` starts a comment line, an optional ``n <count>`` header fixes the
    vertex count (so trailing isolated vertices survive), every other line is
    ``u v``.  Duplicate edges collapse; loops are rejected.
    """
    n_header = None
    edges = set()
    max_id = -1
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if parts[0] == "n":
            if len(parts) != 2 or not parts[1].isdigit():
                raise ParseError(f"bad header {line!r}", lineno)
            if n_header is not None:
                raise ParseError("duplicate n header", lineno)
            n_header = int(parts[1])
            continue
        if len(parts) != 2 or not (parts[0].isdigit() and parts[1].isdigit()):
            raise ParseError(f"expected 'u v', got {line!r}", lineno)
        u, v = int(parts[0]), int(parts[1])
        if u == v:
            raise GraphValidationError(f"line {lineno}: loop at vertex {u}")
        edges.add(_norm_edge(u, v))
        max_id = max(max_id, u, v)
    n = n_header if n_header is not None else max_id + 1
    if max_id >= n:
        raise GraphValidationError(f"vertex {max_id} exceeds header n={n}")
    return Graph(n, frozenset(edges))


def format_edge_list(G: Graph) -> str:
    lines = [f"n {G.n}"]
    lines.extend(f"{u} {v}" for u, v in G.sorted_edges())
    return "\n".join(lines) + "\n"


# -- operations ------------------------------------------------------------

def _check_ids(G: Graph, vs: Iterable[int], what: str = "vertex set"):
    for v in vs:
        if not (isinstance(v, int) and 0 <= v < G.n):
            raise ValueError(f"{what} contains {v!r}, not a vertex of a graph with n={G.n}")


def induced_subgraph(G: Graph, S: Iterable[int]) -> tuple[Graph, tuple[int, ...]]:
    """Return ``(G[S], ids)`` where ``ids[i]`` is the parent id of new vertex ``i``."""
    ids = tuple(sorted(set(S)))
    _check_ids(G, ids)
    index = {v: i for i, v in enumerate(ids)}
    edges = frozenset(
        (index[u], index[v]) for u, v in G.edges if u in index and v in index
    )
    return Graph(len(ids), edges), ids


def components(G: Graph) -> list[frozenset]:
    return [frozenset(mask_to_list(c)) for c in component_masks(G.adj, G.full_mask)]


def check_separation(G: Graph, sep: Separation) -> SeparationReport:
    _check_ids(G, sep.A, "A")
    _check_ids(G, sep.B, "B")
    A, B = sep.A, sep.B
    order = len(A & B)
    valid = (A | B) == G.vertices
    if valid:
        a_only, b_only = A - B, B - A
        valid = not any(
            (u in a_only and v in b_only) or (u in b_only and v in a_only)
            for u, v in G.edges
        )
    # 3|A\B| <= 2n keeps the 2n/3 cap in integers
    balanced = valid and 3 * len(A - B) <= 2 * G.n and 3 * len(B - A) <= 2 * G.n
    return SeparationReport(valid, order, balanced)


def check_g_separation(G: Graph, gs: GSeparation) -> GSeparationReport:
    for side in (gs.A, gs.B):
        _check_ids(G, side.vertices, "subgraph")
        for u, v in side.edges:
            if (u, v) not in G.edges:
                raise ValueError(f"edge {u}-{v} is not an edge of the graph")
            if u not in side.vertices or v not in side.vertices:
                raise ValueError(f"edge {u}-{v} has an endpoint outside its subgraph")
    valid = (
        (gs.A.vertices | gs.B.vertices) == G.vertices
        and (gs.A.edges | gs.B.edges) == G.edges
        and not (gs.A.edges & gs.B.edges)
    )
    return GSeparationReport(valid, gs.order)


def separation_to_g_separation(G: Graph, sep: Separation) -> GSeparation:
    """``(G[A], G[B] - E(G[A & B]))``: the g-separation a vertex separation stands for."""
    A, B = sep.A, sep.B
    ea = frozenset((u, v) for u, v in G.edges if u in A and v in A)
    eb = frozenset((u, v) for u, v in G.edges if u in B and v in B) - ea
    return GSeparation(Subgraph(A, ea), Subgraph(B, eb))
