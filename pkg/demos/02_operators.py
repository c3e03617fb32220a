"""
Which closure operators are rough?
==================================

Classify a few operators given by their tables, then count the rough
closure operators among all tables on small universes.
"""

from roughcat import Partition, SetOperator, Universe, classify_closure, operator_topology
from roughcat import point_closure_basis, rough_census

U = Universe(("a", "b"))

# the Sierpinski closure: a Kuratowski closure, but not a rough one
sierpinski = SetOperator.from_table(U, {(): [], ("a",): ["a"], ("b",): ["a", "b"], ("a", "b"): ["a", "b"]})
for line in classify_closure(sierpinski).lines():
    print(line)
print("opens:", [str(O) for O in operator_topology(sierpinski).open_sets()])

# upper approximation of a partition always passes
P = Partition.from_blocks(Universe(("a", "b", "c", "d")), [["a", "b"], ["c", "d"]])
up = SetOperator.from_partition(P, "upper")
print("\nupper operator rough:", classify_closure(up).is_rough)
print("point closures:", [str(B) for B in point_closure_basis(up)])

# brute force over every table; the counts line up with the partitions
for n in range(4):
    print(f"n={n}:", rough_census(n).line())
