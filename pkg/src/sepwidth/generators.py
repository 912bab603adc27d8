"""Deterministic graph families.

Random families draw from SplitMix64 so that any implementation can
reproduce an instance bit for bit:

    state += 0x9E3779B97F4A7C15            (mod 2**64)
    z = state
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9  (mod 2**64)
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB  (mod 2**64)
    output z ^ (z >> 31)

``gnp(n, p)`` visits the pairs ``(u, v)``, ``u < v``, in lexicographic order
and keeps an edge when ``x * den(p) < num(p) * 2**64`` for the next output x.
``tree(n)`` gives vertex ``v >= 1`` the parent ``x mod v``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import CapabilityError, ParseError
from .graph import Graph
from .rational import format_rational, parse_rational

MASK64 = (1 << 64) - 1
MAX_GENERATED_N = 400
FAMILIES = ("path", "cycle", "grid", "complete", "tree", "gnp")


class SplitMix64:
    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def below(self, m: int) -> int:
        return self.next() % m

    def bernoulli(self, p: Fraction) -> bool:
        return self.next() * p.denominator < p.numerator << 64


@dataclass(frozen=True)
class FamilySpec:
    family: str
    params: tuple
    seed: int = 0

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}; expected one of {FAMILIES}")

    @property
    def label(self) -> str:
        f, p = self.family, self.params
        if f == "grid":
            return f"grid:{p[0]}x{p[1]}"
        if f == "gnp":
            return f"gnp:{p[0]}:{format_rational(p[1])}@{self.seed}"
        if f == "tree":
            return f"tree:{p[0]}@{self.seed}"
        return f"{f}:{p[0]}"


_SPEC = re.compile(r"^(\w+):([^@]+?)(?:@(\d+))?$")


def parse_family(text: str, seed: int = 0) -> FamilySpec:
    """``path:5``, ``cycle:6``, ``grid:3x3``, ``complete:5``, ``tree:10``,
    ``gnp:10:1/2``; an ``@seed`` suffix overrides ``seed``."""
    m = _SPEC.match(text.strip())
    if m is None:
        raise ParseError(f"bad family spec {text!r}")
    family, body, at = m.group(1), m.group(2), m.group(3)
    if at is not None:
        seed = int(at)
    try:
        if family == "grid":
            r, c = body.lower().split("x")
            params = (int(r), int(c))
        elif family == "gnp":
            n, p = body.split(":", 1)
            params = (int(n), parse_rational(p))
        else:
            params = (int(body),)
    except ValueError as exc:
        raise ParseError(f"bad family spec {text!r}: {exc}") from exc
    try:
        return FamilySpec(family, params, seed)
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def generate(spec: FamilySpec) -> Graph:
    f, p = spec.family, spec.params
    n = p[0] * p[1] if f == "grid" else p[0]
    if n < 0 or n > MAX_GENERATED_N:
        raise CapabilityError(f"{spec.label}: n={n} outside 0..{MAX_GENERATED_N}")
    if f == "path":
        edges = [(i, i + 1) for i in range(n - 1)]
    elif f == "cycle":
        if n < 3:
            raise ValueError("a cycle needs at least 3 vertices")
        edges = [(i, (i + 1) % n) for i in range(n)]
    elif f == "complete":
        edges = [(i, j) for i in range(n) for j in range(i + 1, n)]
    elif f == "grid":
        r, c = p
        edges = [(i * c + j, i * c + j + 1) for i in range(r) for j in range(c - 1)]
        edges += [(i * c + j, (i + 1) * c + j) for i in range(r - 1) for j in range(c)]
    elif f == "tree":
        rng = SplitMix64(spec.seed)
        edges = [(rng.below(v), v) for v in range(1, n)]
    else:
        prob = Fraction(p[1])
        if not 0 <= prob <= 1:
            raise ValueError(f"edge probability {prob} outside [0, 1]")
        rng = SplitMix64(spec.seed)
        edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.bernoulli(prob)]
    return Graph.from_edges(n, edges)


def atlas_graphs(max_n: int, connected: bool = True) -> list[tuple[str, Graph]]:
    """Every graph on 1..max_n vertices up to isomorphism (max_n <= 7), from
    the networkx graph atlas, labelled ``atlas:<index>``."""
    import networkx as nx
    from networkx.generators.atlas import graph_atlas_g

    if max_n > 7:
        raise CapabilityError("the graph atlas stops at 7 vertices")
    out = []
    for i, h in enumerate(graph_atlas_g()):
        n = h.number_of_nodes()
        if n == 0 or n > max_n:
            continue
        if connected and not nx.is_connected(h):
            continue
        out.append((f"atlas:{i}", Graph.from_edges(n, h.edges())))
    return out


def seeded_corpus(count: int, max_n: int, seed: int) -> list[FamilySpec]:
    """``count`` gnp specs with n in 2..max_n and p in {1/5, ..., 4/5}; all
    parameters are drawn from one SplitMix64 stream."""
    rng = SplitMix64(seed)
    out = []
    for _ in range(count):
        n = 2 + rng.below(max_n - 1)
        p = Fraction(1 + rng.below(4), 5)
        out.append(FamilySpec("gnp", (n, p), rng.next()))
    return out
