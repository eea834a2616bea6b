"""Exact identifiability analysis for rational coefficient vectors.

With rational coefficients alpha_j = a_j / b_j (reduced), the achievable
values of sum_j alpha_j x_j over integer lag vectors form a lattice
nu0 * Z, where nu0 = d / prod_j b_j and d is the gcd of the cross products
A_l = a_l * prod_{j != l} b_j.  Two intercepts lam and lam_star are then
indistinguishable through the rounded regression exactly when the rounded
values of nu0 * x + lam and nu0 * x + lam_star agree for every integer x.

compute_I0 returns the maximal half-open interval [lo, hi) of such lam
around lam_star.  Its length follows the law encoded in classify_case:
1/b for even b and for odd b away from the integers, 1/(2b) for odd b
with the fractional part of lam_star within 1/(2b) of an integer (b is
the reduced denominator of nu0).

Conventions: the equivalence test resolves rounding ties toward +infinity,
which makes the comparison invariant under integer shifts of the offset
(away from the half-integer lattice both tie conventions agree), and
candidates are restricted to intercepts sharing the integer part of
lam_star.  Under the sign-dependent tie rule of the process kernel the
interval would instead collapse to a single point whenever lam_star itself
sits on the tie lattice, so that rule is not usable here.

All arithmetic is exact over fractions.Fraction; no floating point enters
any decision.
"""

import math
from dataclasses import dataclass
from fractions import Fraction

__all__ = [
    "RationalParams",
    "RationalInterval",
    "IdentifiabilityReport",
    "gcd",
    "reduce_fraction",
    "compute_nu0",
    "classify_case",
    "predicted_i0_length",
    "lambda_equivalent",
    "compute_I0",
    "analyze",
]


def _as_fraction(value) -> Fraction:
    """Coerce to Fraction, rejecting floats: this module is exact-only."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rational parameters")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(
        f"exact rational required (int, Fraction or string), got {type(value).__name__}; "
        "floats are not accepted here"
    )


def _floor(q: Fraction) -> int:
    return q.numerator // q.denominator


def gcd(a: int, b: int) -> int:
    """Euclidean gcd, non-negative.  gcd(0, 0) is rejected."""
    if a == 0 and b == 0:
        raise ValueError("gcd(0, 0) is undefined")
    return math.gcd(int(a), int(b))


def reduce_fraction(num: int, den: int) -> Fraction:
    """num/den in lowest terms, sign normalised into the numerator."""
    if den == 0:
        raise ValueError("zero denominator")
    return Fraction(int(num), int(den))


@dataclass(frozen=True)
class RationalParams:
    """Exact-rational coefficients (alpha_1..alpha_p) and intercept lambda_star."""

    alphas: tuple[Fraction, ...]
    lambda_star: Fraction

    def __post_init__(self):
        alphas = tuple(_as_fraction(a) for a in self.alphas)
        if not alphas:
            raise ValueError("need at least one coefficient (p >= 1)")
        if any(abs(a) >= 1 for a in alphas):
            raise ValueError("each |alpha_j| must be < 1")
        if sum(abs(a) for a in alphas) >= 1:
            raise ValueError("sum of |alpha_j| must be < 1")
        object.__setattr__(self, "alphas", alphas)
        object.__setattr__(self, "lambda_star", _as_fraction(self.lambda_star))

    @property
    def p(self) -> int:
        return len(self.alphas)


@dataclass(frozen=True)
class RationalInterval:
    """Half-open interval [lo, hi) with exact rational endpoints."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        if self.lo >= self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi})")

    @property
    def length(self) -> Fraction:
        return self.hi - self.lo

    def __contains__(self, value) -> bool:
        return self.lo <= value < self.hi

    def __str__(self) -> str:
        return f"[{self.lo}, {self.hi})"


@dataclass(frozen=True)
class IdentifiabilityReport:
    """Full analysis of one rational parameter vector."""

    A: tuple[int, ...]
    d: int
    nu0: Fraction
    b_parity: str
    case_label: str
    k0: int
    I0: RationalInterval
    I0_length: Fraction
    lambda_star: Fraction


def compute_nu0(alphas) -> tuple[tuple[int, ...], int, Fraction]:
    """Lattice step of the achievable coefficient combinations.

    Returns (A, d, nu0) with A_l = a_l * prod_{j != l} b_j, d = gcd(A)
    taken positive, and nu0 = d / prod_j b_j in lowest terms.  The sums
    sum_j alpha_j x_j over integer x are exactly the multiples of nu0.
    """
    if isinstance(alphas, RationalParams):
        alphas = alphas.alphas
    fr = [_as_fraction(a) for a in alphas]
    if not fr:
        raise ValueError("need at least one coefficient (p >= 1)")
    prod = math.prod(f.denominator for f in fr)
    A = tuple(f.numerator * (prod // f.denominator) for f in fr)
    if all(v == 0 for v in A):
        raise ValueError("all coefficients are zero; the combination lattice is trivial")
    d = 0
    for v in A:
        d = math.gcd(d, abs(v))
    return A, d, Fraction(d, prod)


def classify_case(nu0, lambda_star) -> tuple[str, int]:
    """Length-law case for the non-identifiable intercept interval.

    Returns (case_label, k0) where case_label is "even", "odd-short" or
    "odd-long" and k0 indexes the cell [k0/b, (k0+1)/b) containing the
    fractional part of lambda_star.  The predicted interval lengths are
    1/b for "even" and "odd-long" and 1/(2b) for "odd-short"; "odd-short"
    is the zone where the fractional part lies within 1/(2b) of an integer,
    which is exactly when the rounding-equivalence interval straddles an
    integer and gets halved by the shared-integer-part constraint.  The
    fractional part here is the floor-based one, lambda_star -
    floor(lambda_star): its half-open zone boundaries line up exactly with
    the enumerated intervals for negative intercepts too, where the
    absolute-value convention mislabels boundary cases.  For b = 1 every
    intercept classifies as "odd-short".
    """
    nu0 = _as_fraction(nu0)
    lam = _as_fraction(lambda_star)
    b = nu0.denominator
    lam_frac = lam - _floor(lam)
    k0 = _floor(lam_frac * b)
    if b % 2 == 0:
        return "even", k0
    half = Fraction(1, 2 * b)
    if lam_frac < half or lam_frac >= 1 - half:
        return "odd-short", k0
    return "odd-long", k0


def predicted_i0_length(case_label: str, b: int) -> Fraction:
    """Interval length implied by a classify_case label."""
    if case_label in ("even", "odd-long"):
        return Fraction(1, b)
    if case_label == "odd-short":
        return Fraction(1, 2 * b)
    raise ValueError(f"unknown case label {case_label!r}")


def _rounded_offsets(nu0: Fraction, lam: Fraction) -> list[int]:
    """floor(k/b + lam + 1/2) for k = 0..b-1 (pure integer arithmetic).

    Because nu0 is reduced, the offsets nu0 * x mod 1 over any b consecutive
    integers x are exactly {0/b, ..., (b-1)/b}, and integer shifts of the
    offset shift the rounded value by the same integer; so these b values
    characterise the rounded regression at every integer x.
    """
    b = nu0.denominator
    t = lam + Fraction(1, 2)
    tn, td = t.numerator, t.denominator
    btd = b * td
    btn = b * tn
    return [(k * td + btn) // btd for k in range(b)]


def lambda_equivalent(nu0, lam, lambda_star) -> bool:
    """True when lam is indistinguishable from lambda_star.

    Requires matching integer parts and identical rounded values of
    nu0 * x + lam across one full cycle of offsets (ties toward +infinity;
    see the module docstring).
    """
    nu0 = _as_fraction(nu0)
    lam = _as_fraction(lam)
    lambda_star = _as_fraction(lambda_star)
    if _floor(lam) != _floor(lambda_star):
        return False
    return _rounded_offsets(nu0, lam) == _rounded_offsets(nu0, lambda_star)


def compute_I0(nu0, lambda_star) -> RationalInterval:
    """Maximal half-open interval of intercepts indistinguishable from lambda_star.

    Every change point of the membership predicate lies on the grid of
    multiples of 1/(2b), so the interval is found by exact enumeration:
    test one rational midpoint per grid cell plus the grid points
    themselves, walking outward from lambda_star until membership fails on
    each side.  The result always contains lambda_star; any other outcome
    raises (it would indicate a bug, since lambda_star trivially satisfies
    its own membership condition).
    """
    nu0 = _as_fraction(nu0)
    lam_star = _as_fraction(lambda_star)
    b = nu0.denominator
    step = Fraction(1, 2 * b)

    ref = _rounded_offsets(nu0, lam_star)
    ref_floor = _floor(lam_star)

    def member(lam: Fraction) -> bool:
        if _floor(lam) != ref_floor:
            return False
        t = lam + Fraction(1, 2)
        tn, td = t.numerator, t.denominator
        btd = b * td
        btn = b * tn
        for k in range(b):
            if (k * td + btn) // btd != ref[k]:
                return False
        return True

    def point(i: int) -> Fraction:
        return step * i

    def cell_mid(i: int) -> Fraction:
        return step * Fraction(2 * i + 1, 2)

    if not member(lam_star):
        raise RuntimeError("internal consistency failure: lambda_star fails its own condition")
    i0 = _floor(lam_star / step)
    if not member(cell_mid(i0)) or not member(point(i0)):
        raise RuntimeError("internal consistency failure: the cell of lambda_star is not interior")

    # The interval is at most one rounding cell (width 1/b = two grid steps)
    # wide, so both walks terminate after a handful of probes.
    j = i0
    guard = 0
    while member(point(j + 1)):
        if not member(cell_mid(j + 1)):
            raise RuntimeError("internal consistency failure: interval is not right-open")
        j += 1
        guard += 1
        if guard > 4:
            raise RuntimeError("internal consistency failure: right walk did not terminate")
    hi = point(j + 1)

    i = i0
    guard = 0
    while True:
        point_ok = member(point(i - 1))
        cell_ok = member(cell_mid(i - 1))
        if point_ok != cell_ok:
            raise RuntimeError("internal consistency failure: interval is not left-closed")
        if not point_ok:
            break
        i -= 1
        guard += 1
        if guard > 4:
            raise RuntimeError("internal consistency failure: left walk did not terminate")
    lo = point(i)

    interval = RationalInterval(lo, hi)
    if lam_star not in interval:
        raise RuntimeError("internal consistency failure: lambda_star not inside the result")
    return interval


def analyze(params: RationalParams) -> IdentifiabilityReport:
    """End-to-end analysis: lattice step, case classification and interval."""
    A, d, nu0 = compute_nu0(params.alphas)
    case_label, k0 = classify_case(nu0, params.lambda_star)
    interval = compute_I0(nu0, params.lambda_star)
    return IdentifiabilityReport(
        A=A,
        d=d,
        nu0=nu0,
        b_parity="even" if nu0.denominator % 2 == 0 else "odd",
        case_label=case_label,
        k0=k0,
        I0=interval,
        I0_length=interval.length,
        lambda_star=params.lambda_star,
    )
