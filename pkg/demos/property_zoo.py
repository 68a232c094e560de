"""
What the input checks accept and reject
=======================================

The solver only runs on instances whose pair tables avoid the unique
minimum "Z" pattern in every 2x2 subtable and whose triples of picks
never have one pairwise cost strictly below the other two.  The gallery
below walks one instance of each kind past the checks, then confirms on
random draws that passing both checks is the same thing as the induced
partial matrix being completable.
"""

import random

from zfree import (GenConfig, Instance, check_jwp, check_zfree,
                   completable_oracle, generate_instance,
                   induced_partial_matrix)


def verdicts(name, inst):
    jwp = check_jwp(inst)
    zfree = check_zfree(inst)
    print(f"{name}:")
    print("  triple check:", "ok" if jwp is None else jwp)
    print("  Z check:     ", "ok" if zfree is None else zfree)


# Anything generated from a laminar hierarchy passes both checks.
verdicts("generated", generate_instance(GenConfig(r=3, dmax=3, seed=5)))

# A table whose 2x2 corner has a unique minimum trips the Z check.
z_pattern = Instance((2, 2), [[0, 0], [0, 0]], {(0, 1): [[1, 2], [2, 2]]})
verdicts("unique-minimum corner", z_pattern)

# Constant tables where one pair is strictly cheapest on every triple trip
# the triple check even though each table alone looks harmless.
lopsided = Instance((2, 2, 2), [[0, 0]] * 3, {
    (0, 1): [[1, 1], [1, 1]],
    (0, 2): [[2, 2], [2, 2]],
    (1, 2): [[2, 2], [2, 2]],
})
verdicts("one cheap pair", lopsided)

# Equivalence with completability, checked on random instances.
rng = random.Random(8)
agree = 0
for _ in range(200):
    r = rng.randint(2, 4)
    domains = [rng.randint(1, 3) for _ in range(r)]
    binary = {}
    for i in range(r):
        for j in range(i + 1, r):
            binary[(i, j)] = [[rng.choice((0, 1, 2)) for _ in range(domains[j])]
                              for _ in range(domains[i])]
    inst = Instance(domains, [[0] * d for d in domains], binary)
    valid = check_jwp(inst) is None and check_zfree(inst) is None
    completable = completable_oracle(induced_partial_matrix(inst)) is None
    assert valid == completable
    agree += 1
print(f"checks matched completability on {agree} random instances.")
