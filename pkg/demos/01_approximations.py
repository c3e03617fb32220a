"""
Lower and upper approximations
==============================

A partition of a small universe, a set that cuts across its blocks, and
what the two approximations make of it.
"""

from roughcat import ApproximationSpace, associated_clopen_topology, analyze_topology
from roughcat import boundary, lower_approximation, upper_approximation

# four objects, indistinguishable in pairs
S = ApproximationSpace.from_blocks(["a", "b", "c", "d"], [["a", "b"], ["c", "d"]])
U = S.universe

X = U.subset(["a", "b", "c"])
print("X        ", X)
print("lower    ", lower_approximation(S, X))
print("upper    ", upper_approximation(S, X))
print("boundary ", boundary(S, X))

# lower is the dual of upper, on every subset
assert all(lower_approximation(S, Y) == ~upper_approximation(S, ~Y) for Y in U.all_subsets())

# the definable sets are the unions of blocks; they form a clopen topology
T = associated_clopen_topology(S)
print("\nopen sets:", ", ".join(str(O) for O in T.open_sets()))
for line in analyze_topology(T).lines():
    print(line)
