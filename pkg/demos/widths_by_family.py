"""Separation number against treewidth on a few graph families."""

from sepwidth import generate, parse_family, ratio_experiment

specs = [parse_family(t) for t in (
    "path:10", "cycle:10", "grid:3x3", "grid:3x4", "complete:6", "tree:12@3", "gnp:11:1/2@5",
)]

# one row per family: exact sn, exact tw, and the tangle number when n <= 6
report = ratio_experiment(specs)
for row in report["rows"]:
    print(f"{row['spec']:>14}  n={row['n']:<3} sn={row['sn']}  tw={row['tw']}  ratio={row['ratio']}")

print("largest tw/sn seen:", report["max_ratio"])
print("violations:", report["violations"] or "none")

# prebuilt graphs go in as (label, graph) pairs
for side in (2, 3):
    G = generate(parse_family(f"grid:{side}x{side + 1}"))
    row = ratio_experiment([(f"grid {side}x{side + 1}", G)])["rows"][0]
    print(row["spec"], "->", row["sn"], row["tw"])
