"""Two-fusion knots ``K(m1, m2)``: the lattice function ``Q``, the case
dispatch for ``delta_K(n)``, the closed-form ``d_+`` model, the linear
coefficient ``b_K(n)``, and an exhaustive lattice oracle.

Region labels I1..I6 attached to the linear-coefficient branches are not
defined where the branches are stated; they are mapped here to the proof's
cases as I1 u I2 -> A, I3 -> B-1, I4 -> B-2, I5 -> C-1, I6 -> C-2 (an inferred
correspondence, checked against the lattice oracle and the fitted models).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .quasipoly import QuasiPoly

F = Fraction
HALF = F(1, 2)

REGION_OF_CASE = {"A": "I1|I2", "B-1": "I3", "B-2": "I4", "C-1": "I5", "C-2": "I6"}


class FusionError(ValueError):
    pass


@dataclass(frozen=True)
class FusionParams:
    m1: int
    m2: int

    def __post_init__(self):
        if self.m2 in (-1, 0):
            raise FusionError(f"m2={self.m2}: K(m1, m2) is a torus knot for m2 in {{-1, 0}}")


@dataclass(frozen=True)
class LatticePoint:
    k1: int
    k2: int


def is_admissible(n: int, k1: int, k2: int) -> bool:
    return 0 <= k1 <= n and abs(n - 2 * k1) <= n + 2 * k2 <= n + 2 * k1


def q_value(fp: FusionParams, n: int, k1: int, k2: int) -> Fraction:
    if not is_admissible(n, k1, k2):
        raise FusionError(f"({k1}, {k2}) is not admissible for n={n}")
    m1, m2 = fp.m1, fp.m2
    ell = min(2 * k1 + n, 2 * k1 + k2 + n, k2 + 2 * n)
    return (
        F(k1, 2) - F(3 * k1 * k1, 2) - 3 * k1 * k2 - k2 * k2 - k1 * m1 - k1 * k1 * m1
        - k2 * m2 - k2 * k2 * m2 - 6 * k1 * n - 3 * k2 * n + 2 * m1 * n + 4 * m2 * n
        - k2 * m2 * n - 2 * n * n + m1 * n * n + 2 * m2 * n * n
        + F((1 + 8 * k1 + 4 * k2 + 8 * n) * ell - 3 * ell * ell, 2)
    )


def case_of(fp: FusionParams) -> str:
    m1, m2 = fp.m1, fp.m2
    if m2 >= 1:
        if m1 >= 1:
            return "A"
        s1, s2 = 1 + m1 + m2, 1 + 2 * m1 + m2
        if s1 <= 0 or (s1 > 0 and s2 < 0):
            return "B-1"
        return "B-2"
    if 2 * m1 <= -3 * m2:
        return "C-1"
    return "C-2"


def _center(fp: FusionParams, case: str, n: int) -> Fraction:
    m1, m2 = fp.m1, fp.m2
    if case == "A":
        return F(1 - m1 + m2 + m2 * n, 2 * (-1 + m1 + m2))
    if case == "B-2":
        return F(1 - m1 - m2 + (1 + m2) * n, 2 * (1 + m1 + m2))
    if case == "C-2":
        return (F(-3, 2) + m1 + m2 + (1 + m2) * n) / (1 - 2 * m1 - 2 * m2)
    raise ValueError(case)


def _nearest(c: Fraction) -> list[int]:
    """Integers closest to ``c`` (two when ``c`` is a half-integer)."""
    lo = math.floor(c)
    if c - lo == HALF:
        return [lo, lo + 1]
    return [lo if c - lo < HALF else lo + 1]


def _k2_for(case: str, n: int, k1: int) -> int:
    return {"A": -k1, "B-2": k1 - n, "C-2": k1}[case]


def _choose_k1(fp: FusionParams, case: str, n: int) -> tuple[int, Fraction]:
    c = _center(fp, case, n)
    # admissible k1 range for the case's line of lattice points; only the
    # Case A cap k1 <= n/2 matters for large n
    lo, hi = {"A": (0, n // 2), "B-2": ((n + 1) // 2, n), "C-2": (0, n)}[case]
    cands = sorted({min(max(k, lo), hi) for k in _nearest(c)})
    values = {k: q_value(fp, n, k, _k2_for(case, n, k)) for k in cands}
    if len(set(values.values())) != 1:
        raise AssertionError(f"closest integers to c={c} give different Q values: {values}")
    return min(cands), c


def delta_point(fp: FusionParams, n: int) -> tuple[Fraction, LatticePoint, str]:
    """``delta_K(n)``, the lattice point used and the case label."""
    case = case_of(fp)
    if case == "B-1":
        return q_value(fp, n, n, 0), LatticePoint(n, 0), case
    if case == "C-1":
        return q_value(fp, n, n, n), LatticePoint(n, n), case
    k1, c = _choose_k1(fp, case, n)
    k2 = _k2_for(case, n, k1)
    value = q_value(fp, n, k1, k2)
    if case == "C-2" and is_half_integer(c):
        value -= c + HALF
    return value, LatticePoint(k1, k2), case


def delta(fp: FusionParams, n: int) -> Fraction:
    return delta_point(fp, n)[0]


def is_half_integer(c: Fraction) -> bool:
    return (c - HALF).denominator == 1


def c2_correction(fp: FusionParams, n: int) -> Fraction:
    """The amount subtracted from the lattice value (nonzero only in the
    half-integer C-2 subcase)."""
    if case_of(fp) != "C-2":
        return F(0)
    c = _center(fp, "C-2", n)
    return c + HALF if is_half_integer(c) else F(0)


def delta_bruteforce(fp: FusionParams, n: int, max_n: int = 400) -> tuple[Fraction, LatticePoint]:
    """Maximum of ``Q`` over all admissible lattice points (first maximizer in
    lexicographic order)."""
    if n > max_n:
        raise OverflowError(f"n={n} exceeds the lattice budget {max_n}")
    best = None
    for k1 in range(n + 1):
        lo = -((n - abs(n - 2 * k1)) // 2)
        for k2 in range(lo, k1 + 1):
            if not is_admissible(n, k1, k2):
                continue
            val = q_value(fp, n, k1, k2)
            if best is None or val > best[0]:
                best = (val, LatticePoint(k1, k2))
    return best


# ---------------------------------------------------------------------------
# Closed forms
# ---------------------------------------------------------------------------


def _c2_integral(fp: FusionParams, n: int) -> bool:
    m1, m2 = fp.m1, fp.m2
    return F(-1 + (1 + m2) * (n - 1), -1 + 2 * m1 + 2 * m2).denominator == 1


def b_coefficient(fp: FusionParams, n: int = 0) -> Fraction:
    """Linear coefficient of ``d_+[J_K(n)]``; only the C-2 branch depends on ``n``."""
    m1, m2 = fp.m1, fp.m2
    case = case_of(fp)
    if case == "A":
        return F(m2 * (1 - m1), 2 * (-1 + m1 + m2))
    if case == "B-1":
        return F(1 + m1)
    if case == "B-2":
        return F(m1 * (m2 - 1), 2 * (1 + m1 + m2))
    if case == "C-1":
        return F(5, 2) + m1 + 3 * m2
    if _c2_integral(fp, n):
        return F((-3 + 2 * m1) * (1 + m2), 2 * (-1 + 2 * m1 + 2 * m2))
    return F((-5 + 2 * m1) * (1 + m2), 2 * (-1 + 2 * m1 + 2 * m2))


def b_zero_predicted(fp: FusionParams) -> bool:
    return (fp.m1 in (0, 1) and fp.m2 >= 1) or (fp.m1, fp.m2) == (-1, 1)


def _period(fp: FusionParams, case: str) -> int:
    if case in ("B-1", "C-1"):
        return 1
    slope = _center(fp, case, 1) - _center(fp, case, 0)
    pi = slope.denominator
    if case == "C-2":
        pi = math.lcm(pi, abs(-1 + 2 * fp.m1 + 2 * fp.m2))
    return pi


def _residual_sq(fp: FusionParams, case: str, j: int) -> Fraction:
    """``r_j^2`` with ``k1 = c + r_j`` at index ``j`` (a representative large ``j``)."""
    k1, c = _choose_k1(fp, case, j)
    return (k1 - c) ** 2


def dplus_model(fp: FusionParams) -> QuasiPoly:
    """Closed-form model of ``d_+[J_K(n)]`` per case, with the periodic
    ``r^2`` constant evaluated at index ``n - 1``."""
    m1, m2 = fp.m1, fp.m2
    case = case_of(fp)
    if case == "B-1":
        return QuasiPoly(1, ((F(1, 2) + 2 * m2, F(1 + m1), -(F(3, 2) + m1 + 2 * m2)),))
    if case == "C-1":
        b = F(5, 2) + m1 + 3 * m2
        return QuasiPoly(1, ((F(0), b, -b),))
    pi = _period(fp, case)
    triples = []
    rsqs = []
    for r in range(pi):
        n = r + pi * (20 + abs(m1) + abs(m2))  # a representative of the residue
        rsq = _residual_sq(fp, case, n - 1)
        rsqs.append(rsq)
        if case == "A":
            s = -1 + m1 + m2
            a = m1 + 2 * m2 + HALF + F(m2 * m2, 4 * s)
            b = F(m2 * (1 - m1), 2 * s)
            d = -(m1 + 2 * m2 + HALF - F((1 - m1) ** 2, 4 * s)) + (1 - m1 - m2) * rsq
        elif case == "B-2":
            s = 1 + m1 + m2
            a = F(3, 4) + F(3 * m1, 4) + F(9 * m2, 4) + F(m1 * m1, 4 * s)
            b = F(m1 * (m2 - 1), 2 * s)
            d = -(F(3, 4) + F(3 * m1, 4) + F(9 * m2, 4) - F((m2 - 1) ** 2, 4 * s)) - s * rsq
        else:  # C-2
            s = 2 * m1 + 2 * m2 - 1
            a = F((2 * m1 + 3 * m2) ** 2, 2 * s)
            b = b_coefficient(fp, n)
            d = -(HALF + m1 + 2 * m2 - F((2 * m1 - 5) ** 2, 8 * s)) + (HALF - m1 - m2) * rsq
        triples.append((a, b, d))
    return QuasiPoly(pi, tuple(triples), _valid_from(fp, case, pi, rsqs))


def _valid_from(fp: FusionParams, case: str, pi: int, rsqs: list[Fraction]) -> int:
    """First ``n`` from which the residual ``r_{n-1}`` is the periodic one
    (below it the choice of ``k1`` is pinned by the admissible range)."""
    horizon = pi * (20 + abs(fp.m1) + abs(fp.m2))
    start = 1
    for n in range(1, horizon):
        if _residual_sq(fp, case, n - 1) != rsqs[n % pi]:
            start = n + 1
    return start
