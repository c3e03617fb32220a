"""
Information systems and reducts
===============================

Indiscernibility from a small table, its reducts, and why going from a
table to a space and back loses information.
"""

from roughcat import InfoSystem, find_reducts, finest_space, hprime_h_counterexample, indiscernibility

T = InfoSystem.from_columns(
    ["x1", "x2", "x3", "x4", "x5"],
    {
        "color": ["R", "R", "G", "G", "R"],
        "size": ["S", "M", "S", "M", "S"],
        "shape": ["o", "o", "x", "x", "o"],
    },
)

for B in ([], ["color"], ["shape"], ["color", "size"]):
    print(f"ind({', '.join(B) or '-'}):", indiscernibility(T, B))
print("finest:", finest_space(T).partition)
print("reducts:", find_reducts(T))

# the table -> space -> table round trip keeps the partition, not the attributes
T0, back = hprime_h_counterexample()
print("\nattributes before:", T0.attributes, " after:", back.attributes)
