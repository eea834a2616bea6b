import math
from fractions import Fraction

import numpy as np
import pytest

from rinar.identifiability import (
    IdentifiabilityReport,
    RationalInterval,
    RationalParams,
    analyze,
    classify_case,
    compute_I0,
    compute_nu0,
    gcd,
    lambda_equivalent,
    predicted_i0_length,
    reduce_fraction,
)

WORKED_ALPHAS = (Fraction(3, 25), Fraction(3, 8), Fraction(1, 5), Fraction(-1, 4))


def round_ties_up(q: Fraction) -> int:
    return math.floor(q + Fraction(1, 2))


def equivalent_by_window(nu0: Fraction, lam: Fraction, lam_star: Fraction) -> bool:
    """Independent oracle: test the defining condition over the full window
    x in [-X, X] with X = b * (ceil(|lam_star|) + 2), instead of one offset
    cycle."""
    if math.floor(lam) != math.floor(lam_star):
        return False
    b = nu0.denominator
    X = b * (math.ceil(abs(lam_star)) + 2)
    return all(
        round_ties_up(nu0 * x + lam) == round_ties_up(nu0 * x + lam_star)
        for x in range(-X, X + 1)
    )


def lattice_step_by_lcm(alphas) -> Fraction:
    """Independent oracle for nu0: put the coefficients over their lcm
    denominator and take the gcd of the numerators."""
    L = math.lcm(*(a.denominator for a in alphas))
    g = 0
    for a in alphas:
        g = math.gcd(g, int(a * L))
    return Fraction(g, L)


def random_rational_cases(seed, count, max_den=16, lam_den_max=64):
    rng = np.random.default_rng(seed)
    cases = []
    while len(cases) < count:
        p = int(rng.integers(1, 5))
        alphas = []
        for _ in range(p):
            den = int(rng.integers(1, max_den + 1))
            num = int(rng.integers(-den + 1, den))
            alphas.append(Fraction(num, den))
        if not any(alphas) or sum(abs(a) for a in alphas) >= 1:
            continue
        lam_den = int(rng.integers(1, lam_den_max + 1))
        lam_num = int(rng.integers(-3 * lam_den, 3 * lam_den + 1))
        cases.append((tuple(alphas), Fraction(lam_num, lam_den)))
    return cases


class TestGcdReduce:
    def test_folds_to_twenty(self):
        d = 0
        for v in (480, 1500, 800, -1000):
            d = gcd(d, abs(v))
        assert d == 20

    def test_zero_and_seven(self):
        assert gcd(0, 7) == 7

    def test_gcd_zero_zero_rejected(self):
        with pytest.raises(ValueError):
            gcd(0, 0)

    def test_reduce(self):
        assert reduce_fraction(20, 800) == Fraction(1, 40)
        assert reduce_fraction(3, -6) == Fraction(-1, 2)

    def test_reduce_zero_denominator_rejected(self):
        with pytest.raises(ValueError):
            reduce_fraction(1, 0)


class TestComputeNu0:
    def test_single_coefficient(self):
        A, d, nu0 = compute_nu0([Fraction(1, 2)])
        assert A == (1,)
        assert d == 1
        assert nu0 == Fraction(1, 2)

    def test_two_coefficients(self):
        A, d, nu0 = compute_nu0([Fraction(1, 2), Fraction(1, 3)])
        assert A == (3, 2)
        assert d == 1
        assert nu0 == Fraction(1, 6)

    def test_worked_four_coefficient_set(self):
        A, d, nu0 = compute_nu0(WORKED_ALPHAS)
        assert A == (480, 1500, 800, -1000)
        assert d == 20
        # the denominators multiply to 25*8*5*4 = 4000, so d/prod = 20/4000
        assert nu0 == Fraction(1, 200)
        assert nu0 == lattice_step_by_lcm(WORKED_ALPHAS)

    def test_matches_lcm_oracle_on_random_sets(self):
        for alphas, _ in random_rational_cases(seed=5, count=50):
            _, _, nu0 = compute_nu0(alphas)
            assert nu0 == lattice_step_by_lcm(alphas)

    def test_achievable_sums_are_multiples_of_nu0(self):
        _, _, nu0 = compute_nu0(WORKED_ALPHAS)
        rng = np.random.default_rng(2)
        for _ in range(200):
            x = rng.integers(-9, 10, size=len(WORKED_ALPHAS))
            total = sum(a * int(v) for a, v in zip(WORKED_ALPHAS, x))
            assert (total / nu0).denominator == 1

    def test_permutation_covariant(self):
        A, d, nu0 = compute_nu0(WORKED_ALPHAS)
        perm = (WORKED_ALPHAS[2], WORKED_ALPHAS[0], WORKED_ALPHAS[3], WORKED_ALPHAS[1])
        A2, d2, nu02 = compute_nu0(perm)
        assert sorted(A2) == sorted(A)
        assert (d2, nu02) == (d, nu0)

    def test_all_zero_rejected(self):
        with pytest.raises(ValueError):
            compute_nu0([Fraction(0), Fraction(0)])

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            compute_nu0([])

    def test_floats_rejected(self):
        with pytest.raises(TypeError):
            compute_nu0([0.5])


class TestClassifyCase:
    def test_even_forty(self):
        assert classify_case(Fraction(1, 40), Fraction(5, 2)) == ("even", 20)

    def test_odd_short_at_zero(self):
        case, k0 = classify_case(Fraction(1, 3), Fraction(0))
        assert case == "odd-short"
        assert k0 == 0

    def test_odd_long_at_half(self):
        case, _ = classify_case(Fraction(1, 3), Fraction(1, 2))
        assert case == "odd-long"

    def test_odd_short_near_one(self):
        case, _ = classify_case(Fraction(1, 3), Fraction(19, 20))
        assert case == "odd-short"

    def test_negative_intercept_short_zone(self):
        # -1/10 is within 1/(2b) = 1/6 of the integer 0
        case, _ = classify_case(Fraction(1, 3), Fraction(-1, 10))
        assert case == "odd-short"

    def test_negative_boundary_case_is_long(self):
        # -17/6 has floor-based fractional part 1/6, exactly on the
        # short/long boundary, which belongs to the long zone; the
        # enumerated interval [-17/6, -5/2) indeed has length 1/3
        case, _ = classify_case(Fraction(1, 3), Fraction(-17, 6))
        assert case == "odd-long"
        assert compute_I0(Fraction(1, 3), Fraction(-17, 6)).length == Fraction(1, 3)

    def test_b_one_is_always_short(self):
        for lam in (Fraction(3, 10), Fraction(1, 2), Fraction(9, 10)):
            case, _ = classify_case(Fraction(0, 1), lam)
            assert case == "odd-short"

    def test_predicted_lengths(self):
        assert predicted_i0_length("even", 40) == Fraction(1, 40)
        assert predicted_i0_length("odd-long", 3) == Fraction(1, 3)
        assert predicted_i0_length("odd-short", 3) == Fraction(1, 6)
        with pytest.raises(ValueError):
            predicted_i0_length("bogus", 3)


class TestComputeI0:
    def test_worked_interval_exact(self):
        interval = compute_I0(Fraction(1, 40), Fraction(5, 2))
        assert interval.lo == Fraction(5, 2)
        assert interval.hi == Fraction(101, 40)
        assert interval.length == Fraction(1, 40)

    def test_even_b_two_at_zero(self):
        interval = compute_I0(Fraction(1, 2), Fraction(0))
        assert Fraction(0) in interval
        assert interval.length == Fraction(1, 2)

    def test_b_one_integer_lattice(self):
        interval = compute_I0(Fraction(0, 1), Fraction(3, 10))
        assert Fraction(3, 10) in interval
        assert interval.length == Fraction(1, 2)

    def test_odd_short_and_long(self):
        short = compute_I0(Fraction(1, 3), Fraction(1, 10))
        assert short == RationalInterval(Fraction(0), Fraction(1, 6))
        long = compute_I0(Fraction(1, 3), Fraction(2, 5))
        assert long == RationalInterval(Fraction(1, 6), Fraction(1, 2))

    def test_negative_intercepts_mirror(self):
        interval = compute_I0(Fraction(1, 3), Fraction(-1, 10))
        assert interval == RationalInterval(Fraction(-1, 6), Fraction(0))
        interval = compute_I0(Fraction(1, 40), Fraction(-5, 2))
        assert Fraction(-5, 2) in interval
        assert interval.length == Fraction(1, 40)

    def test_interior_is_equivalent_and_just_outside_is_not(self):
        for alphas, lam_star in random_rational_cases(seed=11, count=40, max_den=8):
            _, _, nu0 = compute_nu0(alphas)
            interval = compute_I0(nu0, lam_star)
            b = nu0.denominator
            eps = Fraction(1, 4 * b)
            probes = [interval.lo, lam_star, interval.lo + (interval.hi - interval.lo) / 3]
            for lam in probes:
                assert lambda_equivalent(nu0, lam, lam_star)
            assert not lambda_equivalent(nu0, interval.lo - eps, lam_star)
            assert not lambda_equivalent(nu0, interval.hi, lam_star)
            assert not lambda_equivalent(nu0, interval.hi + eps, lam_star)

    def test_residue_predicate_matches_window_oracle(self):
        rng = np.random.default_rng(3)
        for alphas, lam_star in random_rational_cases(seed=13, count=25, max_den=6):
            _, _, nu0 = compute_nu0(alphas)
            b = nu0.denominator
            for _ in range(8):
                offset = Fraction(int(rng.integers(-4 * b, 4 * b + 1)), 4 * b)
                lam = lam_star + offset
                assert lambda_equivalent(nu0, lam, lam_star) == equivalent_by_window(
                    nu0, lam, lam_star
                )

    def test_length_law_on_random_cases(self):
        # the enumerated interval always contains lambda_star and its length
        # matches the classify_case prediction (b up to 64 via denominators)
        for alphas, lam_star in random_rational_cases(seed=17, count=200, max_den=8):
            _, _, nu0 = compute_nu0(alphas)
            case, _ = classify_case(nu0, lam_star)
            interval = compute_I0(nu0, lam_star)
            assert lam_star in interval
            assert interval.length == predicted_i0_length(case, nu0.denominator)


class TestRationalParams:
    def test_valid(self):
        params = RationalParams(WORKED_ALPHAS, Fraction(5, 2))
        assert params.p == 4

    def test_float_rejected(self):
        with pytest.raises(TypeError):
            RationalParams((0.5,), Fraction(1))
        with pytest.raises(TypeError):
            RationalParams((Fraction(1, 2),), 2.5)

    def test_magnitude_checked(self):
        with pytest.raises(ValueError):
            RationalParams((Fraction(3, 2),), Fraction(0))
        with pytest.raises(ValueError):
            RationalParams((Fraction(1, 2), Fraction(2, 3)), Fraction(0))


class TestAnalyze:
    def test_worked_example_report(self):
        report = analyze(RationalParams(WORKED_ALPHAS, Fraction(5, 2)))
        assert isinstance(report, IdentifiabilityReport)
        assert report.A == (480, 1500, 800, -1000)
        assert report.d == 20
        assert report.nu0 == Fraction(1, 200)
        assert report.b_parity == "even"
        assert report.case_label == "even"
        # with the true lattice step 1/200 the interval is [5/2, 5/2 + 1/200)
        assert report.I0.lo == Fraction(5, 2)
        assert report.I0_length == Fraction(1, 200)
        assert report.lambda_star in report.I0
