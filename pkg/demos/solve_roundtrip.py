"""
Solving one instance end to end
===============================

Builds a three variable instance by hand, prints the interchange JSON,
runs the polynomial solver, and confirms the answer against the
exhaustive oracle.
"""

from zfree import (Instance, brute_force_min, dump_instance, minimize_zfree,
                   parse_instance)

# Two binary variables and one ternary one.  Costs follow a two level
# hierarchy: pairs involving variable 1 sit at the cheap outer level, the
# pair (2,3) at the expensive inner one.  Hierarchical costs of this kind
# always pass both input checks.
inst = Instance(
    domains=(2, 2, 3),
    unary=[[0, 1], [2, 0], [1, 0, 3]],
    binary={
        (0, 1): [[2, 2], [2, 2]],
        (0, 2): [[2, 2, 2], [2, 2, 2]],
        (1, 2): [[5, 5, 5], [5, 6, 6]],
    },
)

text = dump_instance(inst, indent=2)
print("instance document:")
print(text)

# The document round-trips byte for byte.
assert dump_instance(parse_instance(text), indent=2) == text

report = minimize_zfree(inst)
print("status:    ", report.status.value)
print("assignment:", [a + 1 for a in report.assignment])
print("value:     ", report.value)
print("iterations:", len(report.iterations))

best_x, best_v = brute_force_min(inst)
print("oracle:    ", [a + 1 for a in best_x], "value", best_v)
assert report.value == best_v
print("solver and oracle agree.")
