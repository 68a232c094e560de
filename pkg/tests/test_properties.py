import random

import pytest

from zfree import (ZERO, CompletedMatrix, GenConfig, Instance, QuadFn,
                   ViolationKind, check_anti_ultrametric, check_jwp,
                   check_mnatural_quadratic, check_zfree, generate_instance)


def constant_tables_instance(v12, v13, v23):
    tables = {
        (0, 1): [[v12] * 2 for _ in range(2)],
        (0, 2): [[v13] * 2 for _ in range(2)],
        (1, 2): [[v23] * 2 for _ in range(2)],
    }
    return Instance((2, 2, 2), [[0, 0]] * 3, tables)


class TestJwp:
    def test_vacuous_below_three_variables(self):
        inst = Instance((2, 3), [[0, 0], [0, 0, 0]], {(0, 1): [[9, 0, 0], [0, 9, 9]]})
        assert check_jwp(inst) is None

    def test_constant_counterexample(self):
        v = check_jwp(constant_tables_instance(1, 2, 2))
        assert v is not None
        assert v.kind is ViolationKind.JWP
        (i, _), (j, _), (k, _) = v.indices
        assert (i, j, k) == (0, 1, 2)
        assert [x.raw for x in v.values] == [1, 2, 2]

    def test_all_equal_ok(self):
        assert check_jwp(constant_tables_instance(7, 7, 7)) is None

    def test_missing_tables_count_zero(self):
        # the absent table c_23 is an implicit zero, which sits below both
        # defined tables and therefore breaks the inequality
        inst = Instance((2, 2, 2), [[0, 0]] * 3,
                        {(0, 1): [[2] * 2] * 2, (0, 2): [[2] * 2] * 2})
        v = check_jwp(inst)
        assert v is not None
        vars_hit = {i for i, _ in v.indices[:2]}
        assert vars_hit == {1, 2}
        assert v.values[0] == ZERO


class TestZfree:
    def test_unique_minimum_pattern(self):
        inst = Instance((2, 2), [[0, 0], [0, 0]], {(0, 1): [[1, 2], [2, 2]]})
        v = check_zfree(inst)
        assert v is not None
        assert v.kind is ViolationKind.ZFREE

    def test_min_attained_thrice(self):
        inst = Instance((2, 2), [[0, 0], [0, 0]], {(0, 1): [[5, 0], [0, 0]]})
        assert check_zfree(inst) is None

    def test_constant_tables(self):
        assert check_zfree(constant_tables_instance(4, 4, 4)) is None

    def test_all_infinite_subtable_ok(self):
        inst = Instance((2, 2), [[0, 0], [0, 0]],
                        {(0, 1): [["inf", "inf"], ["inf", "inf"]]})
        assert check_zfree(inst) is None

    def test_single_value_domains_vacuous(self):
        inst = Instance((1, 2), [[0], [0, 0]], {(0, 1): [[3, 1]]})
        assert check_zfree(inst) is None


def matrix(n, entries):
    return CompletedMatrix(n, entries)


class TestAntiUltrametric:
    def test_violating_triangle(self):
        m = matrix(3, {(0, 1): 1, (0, 2): 2, (1, 2): 2})
        v = check_anti_ultrametric(m)
        assert v is not None
        assert v.indices == (0, 1, 2)

    def test_min_attained_twice(self):
        m = matrix(3, {(0, 1): 2, (0, 2): 1, (1, 2): 1})
        assert check_anti_ultrametric(m) is None

    def test_all_equal_including_infinite(self):
        m = matrix(3, {(0, 1): "inf", (0, 2): "inf", (1, 2): "inf"})
        assert check_anti_ultrametric(m) is None


class TestMnaturalQuadratic:
    def test_negative_coefficient(self):
        f = QuadFn.from_coeffs([0, 0], {(0, 1): -1})
        v = check_mnatural_quadratic(f)
        assert v is not None
        assert v.kind is ViolationKind.NEGATIVE

    def test_infinite_coefficients_ok(self):
        f = QuadFn.from_coeffs([1, 2, 3], {(0, 1): "inf", (0, 2): "inf", (1, 2): "inf"})
        assert check_mnatural_quadratic(f) is None

    def test_triangle_violation(self):
        f = QuadFn.from_coeffs([0, 0, 0], {(0, 1): 1, (0, 2): 2, (1, 2): 2})
        v = check_mnatural_quadratic(f)
        assert v.kind is ViolationKind.ANTI_ULTRAMETRIC

    def test_infinite_linear_rejected(self):
        f = QuadFn.from_coeffs([0, "inf"], {})
        with pytest.raises(ValueError):
            check_mnatural_quadratic(f)


def naive_jwp(inst):
    """Independent re-scan used to pin the first-hit order of check_jwp."""
    for i in range(inst.r):
        for j in range(i + 1, inst.r):
            for k in range(inst.r):
                if k in (i, j):
                    continue
                for a in range(inst.domains[i]):
                    for b in range(inst.domains[j]):
                        for c in range(inst.domains[k]):
                            vij = inst.binary_value(i, a, j, b)
                            vik = inst.binary_value(i, a, k, c)
                            vjk = inst.binary_value(j, b, k, c)
                            if vij < vik and vij < vjk:
                                return ((i, a), (j, b), (k, c))
    return None


def test_generated_instances_pass_both_checks():
    for seed in range(120):
        inst = generate_instance(GenConfig(r=4, dmax=3, seed=seed, inf_share=0.3))
        assert check_jwp(inst) is None, seed
        assert check_zfree(inst) is None, seed


def test_jwp_agrees_with_naive_scan_on_random_tables():
    rng = random.Random(11)
    hits = 0
    for _ in range(300):
        r = rng.randint(3, 4)
        domains = tuple(rng.randint(1, 3) for _ in range(r))
        tables = {}
        for i in range(r):
            for j in range(i + 1, r):
                if rng.random() < 0.2:
                    continue
                tables[(i, j)] = [[rng.choice([0, 1, 2, "inf"])
                                   for _ in range(domains[j])]
                                  for _ in range(domains[i])]
        inst = Instance(domains, [[0] * d for d in domains], tables)
        got = check_jwp(inst)
        want = naive_jwp(inst)
        if want is None:
            assert got is None
        else:
            hits += 1
            assert got is not None
            assert got.indices == want
    assert hits > 30  # the sweep must actually exercise violations
