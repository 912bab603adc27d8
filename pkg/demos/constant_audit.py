"""Exact arithmetic behind the 105 bound, then a refinement run on a grid."""

from sepwidth import audit_constants, audit_refinement, generate, parse_family
from sepwidth.width import separation_number_exact

rep = audit_constants()
for step in rep.steps:
    print("pass" if step.passed else "FAIL", "|", step.name, "|", step.claim)
print(rep.note)

G = generate(parse_family("grid:4x4"))
a = separation_number_exact(G, limit=16).value
run = audit_refinement(G, G.vertices, G.vertices, a, rounds=8)
print("a =", a, "| Y sizes:", run.step("trace").values["Y_sizes"], "| overall:", run.overall)

# with a too small every round is flagged, nothing raises
print("a = 0:", audit_refinement(G, G.vertices, G.vertices, 0, rounds=2).overall)
