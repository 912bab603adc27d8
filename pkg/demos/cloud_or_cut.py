"""Terminals on a graph either carry a tame cloud or sit behind a small cut."""

from fractions import Fraction

from sepwidth import generate, parse_family, tame_cloud_or_skewed, witness_to_json
from sepwidth.clouds import CloudParams, check_cloud

eps = Fraction(1, 7)

# a 6x6 grid with two opposite corners as terminals: no cheap cut exists
grid = generate(parse_family("grid:6x6"))
res = tame_cloud_or_skewed(grid, {0, 35}, Fraction(5, 2), eps)
print("grid route:", res.route, "| flow", res.flow_value, ">= threshold", res.network.threshold)
print("component sizes:", res.cloud.sizes())
print("tame:", check_cloud(res.cloud, CloudParams(Fraction(5, 2), eps, 2)).holds)

# the same request on a long path hits the cut route instead
path = generate(parse_family("path:30"))
res = tame_cloud_or_skewed(path, {0, 1, 2}, 4, eps)
print("path route:", res.route, "| A =", sorted(res.separation.A), "order", res.separation.order)

# and s below (1 - eps)k needs nothing at all
res = tame_cloud_or_skewed(path, {3, 9, 20}, 2, eps)
print("small s:", res.route)
print(witness_to_json(res))
