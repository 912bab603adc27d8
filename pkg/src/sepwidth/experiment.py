"""The tw-versus-sn experiment: exact widths on a list of instances.

Every row is computed exactly or not at all.  A row that hits a capability
cap records the error instead of a value; it never aborts the run.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from xml.sax.saxutils import escape

from .errors import CapabilityError
from .generators import FamilySpec, generate
from .graph import Graph
from .rational import format_rational
from .tangles import tangle_number_exact
from .width import separation_number_exact, treewidth_exact

TANGLE_ROW_MAX_N = 6
TW_OVER_SN_BOUND = 105
CSV_HEADER = "spec,n,m,sn,tw,tn,ratio"

NOTE = (
    "Desk-scale sanity check. Every row is exact. The bound tw <= 105 sn is "
    "far from tight and instances this small cannot probe it; a clean run "
    "only means no small counterexample exists."
)


def _instance(item) -> tuple[str, Graph]:
    if isinstance(item, FamilySpec):
        return item.label, generate(item)
    label, G = item
    return str(label), G


def _row(item) -> dict:
    try:
        label, G = _instance(item)
    except CapabilityError as exc:
        label = item.label if isinstance(item, FamilySpec) else str(item[0])
        return _error_row(label, None, None, exc)
    try:
        sn = separation_number_exact(G).value
        tw = treewidth_exact(G).value
    except CapabilityError as exc:
        return _error_row(label, G.n, G.m, exc)
    tn = tangle_number_exact(G) if 0 < G.n <= TANGLE_ROW_MAX_N else None
    ratio = format_rational(Fraction(tw, sn)) if sn > 0 else None
    return {
        "spec": label, "n": G.n, "m": G.m,
        "sn": sn, "tw": tw, "tn": tn, "ratio": ratio, "error": None,
    }


def _error_row(label, n, m, exc) -> dict:
    return {
        "spec": label, "n": n, "m": m,
        "sn": None, "tw": None, "tn": None, "ratio": None,
        "error": f"capability: {exc}",
    }


def row_violations(row: dict) -> list[str]:
    """Breaches of sn <= tw+1, tw <= 105 sn and, when tn >= 2, of
    tn <= tw+1 <= 3tn/2.  Integer comparisons only."""
    sn, tw, tn = row["sn"], row["tw"], row["tn"]
    if sn is None or tw is None:
        return []
    out = []
    if sn > tw + 1:
        out.append(f"sn={sn} > tw+1={tw + 1}")
    if tw > TW_OVER_SN_BOUND * sn:
        out.append(f"tw={tw} > {TW_OVER_SN_BOUND}*sn={TW_OVER_SN_BOUND * sn}")
    if tn is not None and tn >= 2:
        if tn > tw + 1:
            out.append(f"tn={tn} > tw+1={tw + 1}")
        if 2 * (tw + 1) > 3 * tn:
            out.append(f"2(tw+1)={2 * (tw + 1)} > 3tn={3 * tn}")
    return out


def ratio_experiment(specs, workers: int = 1) -> dict:
    """Rows of (n, m, sn, tw, tn, tw/sn) for each item, in input order.

    Items are FamilySpecs or ``(label, Graph)`` pairs.  ``tn`` is filled in
    for n <= 6.  ``violations`` lists every breached inequality with its row
    label; the experiment itself never raises on a breach.
    """
    specs = list(specs)
    if workers > 1 and len(specs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_row, specs, chunksize=8))
    else:
        rows = [_row(x) for x in specs]
    violations = []
    ratios = []
    for row in rows:
        for v in row_violations(row):
            violations.append({"spec": row["spec"], "violation": v})
        if row["ratio"] is not None:
            ratios.append(Fraction(row["tw"], row["sn"]))
    max_ratio = format_rational(max(ratios)) if ratios else None
    return {
        "rows": rows,
        "max_ratio": max_ratio,
        "violations": violations,
        "completed": sum(1 for r in rows if r["error"] is None),
        "note": NOTE,
    }


REPORT_SCHEMA = {
    "type": "object",
    "required": ["rows", "max_ratio", "violations"],
    "properties": {
        "rows": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["spec", "sn", "tw", "tn", "ratio"],
                "properties": {
                    "spec": {"type": "string"},
                    "n": {"type": ["integer", "null"]},
                    "m": {"type": ["integer", "null"]},
                    "sn": {"type": ["integer", "null"]},
                    "tw": {"type": ["integer", "null"]},
                    "tn": {"type": ["integer", "null"]},
                    "ratio": {"type": ["string", "null"], "pattern": r"^-?\d+/\d+$"},
                    "error": {"type": ["string", "null"]},
                },
            },
        },
        "max_ratio": {"type": ["string", "null"], "pattern": r"^-?\d+/\d+$"},
        "violations": {"type": "array"},
        "completed": {"type": "integer"},
        "note": {"type": "string"},
    },
}


def _cell(x) -> str:
    if x is None:
        return ""
    s = str(x)
    if any(ch in s for ch in ',"\n'):
        return '"' + s.replace('"', '""') + '"'
    return s


def report_to_csv(report: dict) -> str:
    lines = [CSV_HEADER]
    for r in report["rows"]:
        lines.append(",".join(_cell(r[k]) for k in CSV_HEADER.split(",")))
    return "\n".join(lines) + "\n"


def report_to_svg(report: dict, bar_width: int = 14, height: int = 200) -> str:
    """Bar chart of tw/sn per completed row, scaled to the largest ratio."""
    rows = [r for r in report["rows"] if r["ratio"] is not None]
    top = max((Fraction(r["tw"], r["sn"]) for r in rows), default=Fraction(1))
    top = max(top, Fraction(1))
    pad = 30
    width = pad * 2 + bar_width * max(len(rows), 1)
    total_h = height + pad * 2
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{total_h}" '
        f'viewBox="0 0 {width} {total_h}">',
        f'<title>tw/sn per instance (max {escape(str(report["max_ratio"]))})</title>',
        f'<line x1="{pad}" y1="{pad + height}" x2="{width - pad}" y2="{pad + height}" stroke="black"/>',
        f'<text x="{pad}" y="{pad - 8}" font-size="10">max ratio {escape(str(report["max_ratio"]))}</text>',
    ]
    for i, r in enumerate(rows):
        value = Fraction(r["tw"], r["sn"])
        h = int(value * height / top)
        x = pad + i * bar_width
        out.append(
            f'<rect x="{x + 1}" y="{pad + height - h}" width="{bar_width - 2}" height="{h}" '
            f'fill="steelblue"><title>{escape(r["spec"])}: {r["ratio"]}</title></rect>'
        )
    out.append("</svg>")
    return "\n".join(out) + "\n"
