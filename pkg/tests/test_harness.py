import json
from fractions import Fraction
from xml.etree import ElementTree

import jsonschema
import pytest

from sepwidth.audit import (
    AUDIT_SCHEMA,
    CONSTANT_STEPS,
    audit_constants,
    audit_final_step,
    audit_refinement,
)
from sepwidth.clouds import WCloud
from sepwidth.errors import CapabilityError, ContractError, ParseError
from sepwidth.experiment import (
    CSV_HEADER,
    REPORT_SCHEMA,
    ratio_experiment,
    report_to_csv,
    report_to_svg,
    row_violations,
)
from sepwidth.generators import (
    FamilySpec,
    SplitMix64,
    atlas_graphs,
    generate,
    parse_family,
    seeded_corpus,
)
from sepwidth.graph import Graph
from sepwidth.width import separation_number_exact


# -- generators ------------------------------------------------------------------

def test_splitmix_reference_vectors():
    r = SplitMix64(0)
    assert [r.next() for _ in range(3)] == [0xE220A8397B1DCDAF, 0x6E789E6AA1B965F4, 0x06C45D188009454F]
    assert SplitMix64(1234567).next() == 6457827717110365317


def test_family_examples():
    g = generate(FamilySpec("grid", (3, 3)))
    assert (g.n, g.m) == (9, 12)
    assert generate(FamilySpec("complete", (5,))).m == 10
    a = generate(FamilySpec("gnp", (10, Fraction(1, 2)), 7))
    b = generate(FamilySpec("gnp", (10, Fraction(1, 2)), 7))
    assert a == b
    assert generate(FamilySpec("gnp", (10, Fraction(1, 2)), 8)) != a
    assert generate(FamilySpec("gnp", (8, Fraction(0)), 1)).m == 0
    assert generate(FamilySpec("gnp", (8, Fraction(1)), 1)).m == 28
    t = generate(FamilySpec("tree", (10,), 3))
    assert t.m == 9 and t == generate(FamilySpec("tree", (10,), 3))
    assert generate(FamilySpec("cycle", (5,))).m == 5
    assert generate(FamilySpec("path", (1,))).m == 0


def test_gnp_follows_documented_rule():
    p = Fraction(1, 3)
    rng = SplitMix64(42)
    expect = [(u, v) for u in range(7) for v in range(u + 1, 7) if rng.next() * 3 < 1 << 64]
    assert generate(FamilySpec("gnp", (7, p), 42)).sorted_edges() == expect


def test_family_errors():
    with pytest.raises(CapabilityError):
        generate(FamilySpec("path", (10_000,)))
    with pytest.raises(ValueError):
        FamilySpec("wheel", (5,))
    with pytest.raises(ValueError):
        generate(FamilySpec("cycle", (2,)))
    for bad in ("grid:3", "gnp:10:0.5", "path", "wheel:4"):
        with pytest.raises(ParseError):
            parse_family(bad)


def test_parse_family():
    assert parse_family("grid:3x4") == FamilySpec("grid", (3, 4))
    assert parse_family("gnp:10:1/2", seed=7) == FamilySpec("gnp", (10, Fraction(1, 2)), 7)
    assert parse_family("gnp:10:1/2@9", seed=7).seed == 9
    spec = parse_family("tree:6@3")
    assert parse_family(spec.label) == spec


def test_atlas_counts():
    conn = atlas_graphs(7)
    assert len(conn) == 996
    assert sum(1 for _, g in conn if g.n == 7) == 853
    assert len(atlas_graphs(6, connected=False)) == 208
    with pytest.raises(CapabilityError):
        atlas_graphs(8)


def test_seeded_corpus_is_deterministic():
    a, b = seeded_corpus(20, 12, 5), seeded_corpus(20, 12, 5)
    assert a == b and all(2 <= s.params[0] <= 12 for s in a)


# -- experiment ------------------------------------------------------------------

def test_experiment_rows():
    rep = ratio_experiment([parse_family("complete:6"), parse_family("tree:10@1"), parse_family("grid:4x4")])
    k6, tree, grid = rep["rows"]
    assert (k6["sn"], k6["tw"], k6["ratio"], k6["tn"]) == (2, 5, "5/2", 4)
    assert (tree["sn"], tree["tw"], tree["ratio"], tree["tn"]) == (1, 1, "1/1", None)
    assert grid["error"].startswith("capability") and grid["sn"] is None
    assert rep["max_ratio"] == "5/2" and rep["violations"] == [] and rep["completed"] == 2
    jsonschema.validate(rep, REPORT_SCHEMA)


def test_experiment_is_deterministic_and_ordered():
    specs = seeded_corpus(12, 9, 3)
    one = ratio_experiment(specs)
    two = ratio_experiment(specs, workers=2)
    assert json.dumps(one, sort_keys=True) == json.dumps(two, sort_keys=True)
    assert [r["spec"] for r in one["rows"]] == [s.label for s in specs]


def test_row_violations_flags_breaches():
    assert row_violations({"sn": 4, "tw": 2, "tn": None}) == ["sn=4 > tw+1=3"]
    assert row_violations({"sn": 1, "tw": 106, "tn": None})
    assert row_violations({"sn": 1, "tw": 3, "tn": 2}) == ["2(tw+1)=8 > 3tn=6"]
    assert row_violations({"sn": None, "tw": None, "tn": None}) == []


def test_csv_and_svg():
    rep = ratio_experiment([parse_family("complete:4"), parse_family("cycle:5")])
    csv = report_to_csv(rep)
    lines = csv.splitlines()
    assert lines[0] == CSV_HEADER and lines[1] == "complete:4,4,6,2,3,3,3/2"
    root = ElementTree.fromstring(report_to_svg(rep).encode())
    assert root.tag.endswith("svg")
    assert len([e for e in root.iter() if e.tag.endswith("rect")]) == 2


# -- audit ------------------------------------------------------------------------

def test_audit_constants():
    rep = audit_constants()
    assert rep.overall
    assert all(rep.step(name).passed for name in CONSTANT_STEPS)
    c = rep.step("contraction").values
    assert (c["cross_lhs"], c["cross_rhs"]) == (19456, 19683)
    assert rep.step("terminal clash").values["ratio_at_s3_h0"] == Fraction(3, 4)
    assert rep.step("shrinking Y").values["at_a1_y70"] == Fraction(111, 2)
    jsonschema.validate(rep.to_dict(), AUDIT_SCHEMA)


def _no_floats(x):
    if isinstance(x, float):
        return False
    if isinstance(x, dict):
        return all(_no_floats(v) for v in x.values())
    if isinstance(x, (list, tuple)):
        return all(_no_floats(v) for v in x)
    return True


def test_audit_constants_is_exact():
    assert _no_floats(audit_constants().to_dict())


def test_refinement_grid():
    G = generate(parse_family("grid:4x4"))
    a = separation_number_exact(G, limit=16).value
    rep = audit_refinement(G, G.vertices, G.vertices, a, 8)
    assert rep.overall
    trace = rep.step("trace").values["Y_sizes"]
    for x, y in zip(trace, trace[1:]):
        assert 3 * y <= 3 * a + 2 * x
        assert y < x or x <= 3 * a


def test_refinement_small_y():
    G = generate(parse_family("path:6"))
    rep = audit_refinement(G, G.vertices, {0, 1}, 1, 4)
    assert rep.overall


def test_refinement_failure_is_data():
    G = generate(parse_family("cycle:8"))
    rep = audit_refinement(G, G.vertices, G.vertices, 0, 3)
    assert not rep.overall
    assert not rep.step("round 0").passed
    assert rep.step("round 0").values["split_order"] == 2


def test_refinement_rejects_non_separation():
    G = generate(parse_family("path:4"))
    with pytest.raises(ValueError):
        audit_refinement(G, {0, 1}, {2, 3}, 1)


def _pendant_instance(t, chain=True):
    """W = Y = 0..34, each terminal carrying a pendant path of t-1 vertices."""
    k = 35
    edges = [(i, i + 1) for i in range(k - 1)] if chain else []
    cloud_edges = []
    nxt = k
    for w in range(k):
        prev = w
        for _ in range(t - 1):
            cloud_edges.append((prev, nxt))
            prev = nxt
            nxt += 1
    G = Graph.from_edges(nxt, edges + cloud_edges)
    cloud = WCloud(G, frozenset(range(k)), frozenset(range(nxt)), frozenset(cloud_edges))
    return G, set(range(nxt)), set(range(k)), cloud


def test_final_step_synthetic():
    G, X, Y, cloud = _pendant_instance(4)
    rep = audit_final_step(G, X, Y, cloud)
    assert rep.overall
    clash = rep.step("clash").values
    assert clash["premises_hold"] is False
    assert clash["bound"] == Fraction(3, 4) and clash["balance_cap"] == Fraction(2, 3)
    assert rep.step("ratio").values["algebraic_bound"] == Fraction(3, 4)
    jsonschema.validate(rep.to_dict(), AUDIT_SCHEMA)


def test_final_step_giant_component():
    k = 35
    edges = [(0, k + i) for i in range(200)]
    G = Graph.from_edges(k + 200, edges)
    cloud = WCloud(G, frozenset(range(k)), frozenset(G.vertices), frozenset(edges))
    with pytest.raises(ContractError) as exc:
        audit_final_step(G, G.vertices, set(range(k)), cloud)
    assert exc.value.witness is not None


def test_final_step_input_checks():
    G, X, Y, cloud = _pendant_instance(4)
    with pytest.raises(ValueError):
        audit_final_step(G, X, Y | {40}, cloud)
