"""Inequality certification: values, oracles, sampling reports."""

import itertools
import math
import random
from math import comb

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bookram.lemmas import (
    degprod_certify,
    degprod_floor,
    dichotomy_certify,
    dichotomy_value,
    elementary_symmetric,
    gen_binomial,
)


class TestGenBinomial:
    def test_integer_cases(self):
        assert gen_binomial(3, 2) == 3.0
        assert gen_binomial(0, 0) == 1.0
        assert gen_binomial(5, 0) == 1.0

    def test_fractional(self):
        assert gen_binomial(2.5, 2) == pytest.approx(1.875)

    def test_falling_factorial_hits_zero(self):
        assert gen_binomial(1.0, 2) == 0.0

    def test_matches_comb_on_integers(self):
        for n in range(10):
            for k in range(n + 1):
                assert gen_binomial(float(n), k) == pytest.approx(comb(n, k))


class TestDichotomyValue:
    def test_equality_point(self):
        # the one-variable reduction is minimised at 2 (t/2)^k
        assert dichotomy_value((1, 1), 2) == pytest.approx(2.0)

    def test_origin(self):
        assert dichotomy_value((0, 0), 2) == pytest.approx(4.0)

    def test_reevaluation_oracle(self):
        x = (0.2, 0.5, 0.9)
        t = 1.0
        direct = dichotomy_value(x, t)
        # independent evaluation order: fsum over reversed terms
        k = len(x)
        other = math.fsum((t - v) ** k for v in reversed(x)) / k
        prod = 1.0
        for v in reversed(x):
            prod *= v
        assert direct == pytest.approx(other + prod, rel=1e-12)

    def test_domain_error(self):
        with pytest.raises(ValueError):
            dichotomy_value((0.5, 1.5), 1.0)

    @given(
        st.lists(st.floats(0, 1), min_size=1, max_size=5),
        st.integers(0, 10_000),
    )
    @settings(max_examples=60, deadline=None)
    def test_permutation_invariance(self, xs, seed):
        rng = random.Random(seed)
        perm = xs[:]
        rng.shuffle(perm)
        assert dichotomy_value(xs, 1.0) == pytest.approx(
            dichotomy_value(perm, 1.0), rel=1e-9, abs=1e-12
        )


class TestElementarySymmetric:
    def test_small_values(self):
        assert elementary_symmetric((1, 1, 1), 2) == 3.0
        assert elementary_symmetric((1, 1, 0.5), 2) == 2.0
        assert elementary_symmetric((1, 2, 3), 5) == 0.0

    def test_matches_brute_force(self):
        rng = random.Random(2)
        for _ in range(100):
            xs = [rng.random() for _ in range(8)]
            for k in range(9):
                brute = sum(
                    math.prod(c) for c in itertools.combinations(xs, k)
                ) if k else 1.0
                assert elementary_symmetric(xs, k) == pytest.approx(brute, rel=1e-9)

    @given(st.lists(st.floats(0, 1), min_size=1, max_size=8), st.integers(0, 10_000))
    @settings(max_examples=60, deadline=None)
    def test_permutation_invariance(self, xs, seed):
        rng = random.Random(seed)
        perm = xs[:]
        rng.shuffle(perm)
        for k in (1, 2, 3):
            assert elementary_symmetric(xs, k) == pytest.approx(
                elementary_symmetric(perm, k), rel=1e-9, abs=1e-12
            )


class TestDichotomyCertify:
    def test_zero_violations_small_grid(self):
        for k in (1, 2, 3, 4):
            for t in (1.0, 2.0):
                report = dichotomy_certify(k, t, 20_000, seed=5, tol=1e-9)
                assert report.violations == 0
                assert report.samples == 20_000 + 3**k

    def test_minimum_and_argmin(self):
        for k in (2, 3, 5):
            for t in (1.0, 2.0, 5.0):
                report = dichotomy_certify(k, t, 1000, seed=1, tol=1e-9)
                bound = 2 * (t / 2) ** k
                assert bound - 1e-6 <= report.min_value <= bound + 1e-3
                assert all(abs(a - t / 2) < 1e-3 for a in report.argmin)

    def test_perturbed_bound_detects_violations(self):
        # strengthening the bound by 1e-3 must flag the equality point
        report = dichotomy_certify(2, 1.0, 1000, seed=1, tol=1e-9, bound_offset=1e-3)
        assert report.violations > 0
        assert report.worst_margin < 0
        # the worst witness re-evaluates to its margin
        value = dichotomy_value(report.worst_witness, 1.0)
        assert value - (2 * 0.25 + 1e-3) == pytest.approx(report.worst_margin, abs=1e-12)

    def test_report_determinism(self):
        a = dichotomy_certify(3, 1.0, 5000, seed=9, tol=1e-9)
        b = dichotomy_certify(3, 1.0, 5000, seed=9, tol=1e-9)
        assert a == b


class TestDegprodCertify:
    def test_zero_violations_small_grid(self):
        for l in (3, 5, 8):
            for k in (1, 2, min(4, l)):
                report = degprod_certify(l, k, 20_000, seed=7, tol=1e-9)
                assert report.violations == 0, (l, k, report.worst_witness)

    def test_extremal_formula_exact(self):
        # floor(c) ones plus one fractional coordinate: e_k equals
        # C(floor, k) + frac * C(floor, k-1) exactly
        for ones, frac, k in ((3, 0.25, 2), (4, 0.5, 3), (2, 0.125, 2)):
            xs = [1.0] * ones + [frac] + [0.0] * 2
            got = elementary_symmetric(xs, k)
            want = comb(ones, k) + frac * comb(ones, k - 1)
            assert got == pytest.approx(want, rel=1e-12)

    def test_all_ones_equality(self):
        for l, k in ((5, 2), (7, 3)):
            xs = [1.0] * l
            assert elementary_symmetric(xs, k) == pytest.approx(comb(l, k))
            assert gen_binomial(float(l), k) == pytest.approx(comb(l, k))

    def test_floor_respects_proof_regions(self):
        # above c = k-1 the floor is the generalized binomial, below it the
        # extremal value; the raw binomial would overshoot there
        assert degprod_floor(np.array([0.42359898]), 3)[0] == pytest.approx(
            0.42359898 * comb(0, 2), abs=1e-12
        )
        c = 4.3
        assert degprod_floor(np.array([c]), 3)[0] == pytest.approx(gen_binomial(c, 3))
        # the documented counterexample to the raw comparison
        xs = (0.0148166, 0.00124099, 0.40754141)
        assert elementary_symmetric(xs, 3) < gen_binomial(sum(xs), 3)
        assert elementary_symmetric(xs, 3) >= degprod_floor(np.array([sum(xs)]), 3)[0]

    def test_parameter_validation(self):
        with pytest.raises(ValueError):
            degprod_certify(3, 4, 100, seed=0, tol=1e-9)
