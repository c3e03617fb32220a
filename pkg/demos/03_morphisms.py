"""
Maps between approximation spaces
=================================

Relation preservation decided six ways, and where the stricter
natural-transformation condition parts company with it.
"""

from roughcat import ApproximationSpace, TotalMap, is_aprs_isomorphism, is_relation_preserving
from roughcat import is_upper_natural_transformation, continuity_suite, upper_natural_witness

S = ApproximationSpace.from_blocks(["a", "b", "c", "d"], [["a", "b"], ["c", "d"]])
T = ApproximationSpace.from_blocks(["p", "q"], [["p"], ["q"]])

collapse = TotalMap.from_dict(S.universe, T.universe, {"a": "p", "b": "p", "c": "q", "d": "q"})
for line in continuity_suite(collapse, S, T).lines():
    print(line)
print("isomorphism:", bool(is_aprs_isomorphism(collapse, S, T)))

# splitting a block breaks all six conditions at once
one = ApproximationSpace.from_blocks(["a", "b"], [["a", "b"]])
split = TotalMap.from_dict(one.universe, T.universe, {"a": "p", "b": "q"})
print("\nsplitting map:", continuity_suite(split, one, T).counterexample)

f, S2, T2 = upper_natural_witness()
print("\ncollapse into one block:")
print("  relation-preserving:", bool(is_relation_preserving(f, S2, T2)))
nat = is_upper_natural_transformation(f, S2, T2)
print("  upper-natural:      ", bool(nat), "fails at", nat.witness)
