"""Tame cloud or skewed separation: the min-cut dichotomy, end to end.

Every returned object has been re-checked by its verifier before it leaves
this module.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .clouds import TAME, CloudParams, WCloud, check_cloud, check_skewed
from .confluent import confluent_round, support_to_cloud
from .errors import ContractError, ParseError
from .flows import (
    FlowAssignment,
    FlowNetwork,
    build_auxiliary_network,
    cut_to_separation,
    flow_to_demand_flow,
    max_flow_min_cut,
)
from .graph import Graph, Separation
from .rational import format_rational, parse_rational

CLOUD = "cloud"
SEPARATION = "separation"


@dataclass(frozen=True)
class DichotomyResult:
    """Outcome of :func:`tame_cloud_or_skewed`.

    ``route`` says how it was reached: ``"isolated"`` (s <= (1-eps)k, the
    bare terminals already form a tame cloud), ``"cut"`` (the min cut gave a
    skewed separation) or ``"flow"`` (confluent rounding produced the cloud).
    """

    kind: str
    route: str
    W: frozenset
    s: Fraction
    eps: Fraction
    cloud: WCloud | None = None
    separation: Separation | None = None
    network: FlowNetwork | None = None
    flow_value: Fraction | None = None
    demand_flow: FlowAssignment | None = None
    confluent_flow: FlowAssignment | None = None

    @property
    def is_cloud(self) -> bool:
        return self.kind == CLOUD


def tame_cloud_or_skewed(G0: Graph, W, s, eps) -> DichotomyResult:
    W = frozenset(W)
    s, eps = Fraction(s), Fraction(eps)
    if not W:
        raise ValueError("W must be nonempty")
    if not 0 < eps < Fraction(1, 2):
        raise ValueError(f"eps must lie in (0, 1/2), got {eps}")
    k = len(W)
    params = CloudParams(s, eps, k)

    if s <= (1 - eps) * k:
        cloud = WCloud.isolated(G0, W)
        _require(check_cloud(cloud, params, TAME).holds, "isolated terminals not tame")
        return DichotomyResult(CLOUD, "isolated", W, s, eps, cloud=cloud)

    N = build_auxiliary_network(G0, W, params)
    flow, cut, value = max_flow_min_cut(N)
    sep = cut_to_separation(N, cut)
    if check_skewed(G0, sep, W, s, eps):
        return DichotomyResult(
            SEPARATION, "cut", W, s, eps, separation=sep, network=N, flow_value=value
        )

    # not skewed and s >= eps*k, so the cut costs at least 6s (scaled)
    _require(value >= N.threshold, f"unskewed min cut {value} below threshold {N.threshold}")
    G2, f, d = flow_to_demand_flow(N, flow)
    f2, d2 = confluent_round(G2, f, d, N.internal_cap)
    # confluent total >= 2s (scaled), which makes the support tame
    _require(
        3 * sum(d2.values(), Fraction(0)) >= N.threshold,
        "confluent demand below 2s",
    )
    cloud = support_to_cloud(G0, W, f2)
    report = check_cloud(cloud, params, TAME)
    _require(report.holds, f"extracted cloud is not tame (margin {report.margin})")
    return DichotomyResult(
        CLOUD, "flow", W, s, eps,
        cloud=cloud, network=N, flow_value=value, demand_flow=f, confluent_flow=f2,
    )


def _require(ok, message):
    if not ok:
        raise ContractError(message)


# -- JSON witnesses --------------------------------------------------------

def witness_to_dict(result: DichotomyResult) -> dict:
    doc = {
        "kind": result.kind,
        "W": sorted(result.W),
        "params": {"s": format_rational(result.s), "eps": format_rational(result.eps)},
    }
    if result.kind == CLOUD:
        c = result.cloud
        doc["components"] = {str(w): sorted(c.comp[w]) for w in sorted(c.W)}
        doc["edges"] = [list(e) for e in sorted(c.edges)]
    else:
        doc["A"] = sorted(result.separation.A)
        doc["B"] = sorted(result.separation.B)
    return doc


def witness_to_json(result: DichotomyResult) -> str:
    return json.dumps(witness_to_dict(result), sort_keys=True) + "\n"


def witness_from_json(text: str, host: Graph):
    """Rebuild ``(kind, object, s, eps)`` from a JSON witness; the object is a
    WCloud or a Separation."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"bad witness JSON: {exc}") from exc
    s = parse_rational(doc["params"]["s"])
    eps = parse_rational(doc["params"]["eps"])
    W = frozenset(doc["W"])
    if doc["kind"] == CLOUD:
        verts = set(W)
        for members in doc["components"].values():
            verts.update(members)
        obj = WCloud(host, W, frozenset(verts), frozenset(tuple(e) for e in doc["edges"]))
    elif doc["kind"] == SEPARATION:
        obj = Separation(frozenset(doc["A"]), frozenset(doc["B"]))
    else:
        raise ParseError(f"unknown witness kind {doc['kind']!r}")
    return doc["kind"], obj, s, eps


WITNESS_SCHEMA = {
    "type": "object",
    "required": ["kind", "W", "params"],
    "properties": {
        "kind": {"enum": [CLOUD, SEPARATION]},
        "W": {"type": "array", "items": {"type": "integer", "minimum": 0}},
        "params": {
            "type": "object",
            "required": ["s", "eps"],
            "properties": {
                "s": {"type": "string", "pattern": r"^-?\d+/\d+$"},
                "eps": {"type": "string", "pattern": r"^\d+/\d+$"},
            },
        },
        "components": {
            "type": "object",
            "additionalProperties": {"type": "array", "items": {"type": "integer"}},
        },
        "edges": {"type": "array", "items": {"type": "array", "minItems": 2, "maxItems": 2}},
        "A": {"type": "array", "items": {"type": "integer"}},
        "B": {"type": "array", "items": {"type": "integer"}},
    },
}
