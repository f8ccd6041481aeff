"""(p, q)-cabling: the exact cabling sum, the degree predictor, closed forms
for period <= 2 bases, the M1/M2 thresholds for constant-a bases, and the
boundary slope / surface transforms.

Half-integer summation indices are carried as ``twok = 2k`` throughout.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

from .laurent import QLaurent
from .quasipoly import INF, DomainError, QuasiPoly, fit, jones_slopes

JonesFn = Callable[[int], QLaurent]
DegreeLookup = Mapping[int, Fraction]


class ParameterError(ValueError):
    pass


class HypothesisError(ValueError):
    """A hypothesis of the degree predictor does not hold."""


class CancellationRisk(HypothesisError):
    def __init__(self, message: str, tied: Sequence[Fraction] = ()):
        super().__init__(message)
        self.tied = tuple(tied)


class SlopeCollision(HypothesisError):
    pass


@dataclass(frozen=True)
class CableParams:
    p: int
    q: int

    def __post_init__(self):
        if abs(self.q) <= 1:
            raise ParameterError(f"cable needs |q| > 1, got q={self.q}")
        if math.gcd(self.p, self.q) != 1:
            raise ParameterError(f"p={self.p} and q={self.q} are not coprime")

    def normalized(self) -> "CableParams":
        """Reverse orientation so that ``q > 1``; the invariant is unchanged."""
        return self if self.q > 0 else CableParams(-self.p, -self.q)

    @property
    def ratio(self) -> Fraction:
        return Fraction(self.p, self.q)


def half_indices(n: int) -> range:
    """``2k`` for ``k`` in ``S_n``."""
    return range(-(n - 1), n, 2)


# ---------------------------------------------------------------------------
# Exact cabling sum
# ---------------------------------------------------------------------------


def cable_jones(jk: JonesFn, params: CableParams, n: int, top_window: int | None = None) -> QLaurent:
    """Colored Jones polynomial of the cable from that of the companion.

    With ``top_window = W`` only the terms within ``W`` quarter-degrees of the
    top are computed. That slice is exact: a summand whose own top lies more
    than ``W`` below the largest summand top cannot reach the window.
    """
    if n < 1:
        raise ValueError("color n must be positive")
    cp = params.normalized()
    p, q = cp.p, cp.q
    terms = []
    for twok in half_indices(n):
        color = q * twok + 1
        poly = jk(color) if color > 0 else -jk(-color)
        if top_window is not None:
            poly = poly.top_slice(top_window)
        terms.append(poly.shift(-p * twok * (q * twok + 2)))
    base = p * q * (n * n - 1)
    if top_window is None:
        total = QLaurent()
        for t in terms:
            total = total + t
        return total.shift(base)
    tops = [t.max_quarter() for t in terms if t]
    floor = max(tops) - top_window
    total = QLaurent()
    for t in terms:
        if t and t.max_quarter() >= floor:
            total = total + t
    total = QLaurent({e: c for e, c in total.items() if e >= floor})
    if total.is_zero():
        raise CancellationRisk(f"top {top_window} quarter-degrees cancel at n={n}; widen the window")
    return total.shift(base)


# ---------------------------------------------------------------------------
# Degree predictor
# ---------------------------------------------------------------------------


def _color_degree(dplus: QuasiPoly, color: int, lookup: DegreeLookup | None) -> Fraction:
    if color == 1:
        return Fraction(0)
    if color >= dplus.valid_from:
        return dplus.value(color)
    if lookup is not None and color in lookup:
        return Fraction(lookup[color])
    raise DomainError(
        f"degree at color {color} is below valid_from={dplus.valid_from} and not in the lookup"
    )


def term_degree_f(
    dplus: QuasiPoly, params: CableParams, twok: int, lookup: DegreeLookup | None = None
) -> Fraction:
    """``-p k (q k + 1) + d_+[J_K(|2qk + 1|)]`` with ``k = twok / 2``."""
    cp = params.normalized()
    p, q = cp.p, cp.q
    color = abs(q * twok + 1)
    return Fraction(-p * twok * (q * twok + 2), 4) + _color_degree(dplus, color, lookup)


@dataclass(frozen=True)
class TraceEntry:
    n: int
    twok: int
    margin: Fraction | None  # None when S_n has a single element

    def to_dict(self) -> dict:
        return {"n": self.n, "k": str(Fraction(self.twok, 2)),
                "margin": None if self.margin is None else str(self.margin)}


@dataclass(frozen=True)
class CablePrediction:
    model: QuasiPoly
    case_tag: str
    trace: tuple[TraceEntry, ...] = ()
    residue_cases: tuple[str, ...] = ()

    @property
    def A(self) -> tuple[Fraction, ...]:
        return self.model.a_values

    @property
    def B(self) -> tuple[Fraction, ...]:
        return self.model.b_values

    @property
    def D(self) -> tuple[Fraction, ...]:
        return self.model.d_values

    def to_dict(self) -> dict:
        return {
            "model": self.model.to_dict(),
            "case_tag": self.case_tag,
            "residue_cases": list(self.residue_cases),
            "trace": [t.to_dict() for t in self.trace],
        }


def _check_b(dplus: QuasiPoly) -> None:
    if any(b > 0 for b in dplus.b_values):
        raise HypothesisError("hypothesis b(n) <= 0 violated")


def _branch_tag(model: QuasiPoly, dplus: QuasiPoly, cp: CableParams) -> tuple[str, tuple[str, ...]]:
    annulus = Fraction(cp.p * cp.q, 4)
    inherited = {cp.q * cp.q * a for a in dplus.a_values}
    tags = []
    for a in model.a_values:
        if a == annulus:
            tags.append("annulus")
        elif a in inherited:
            tags.append("inherited")
        else:
            tags.append("unexpected")
    if "unexpected" in tags:
        raise HypothesisError(f"cable slope outside q^2*js U {{pq}}: {model}")
    overall = tags[0] if len(set(tags)) == 1 else "mixed"
    return overall, tuple(tags)


def predict_cable_degree(
    dplus: QuasiPoly,
    params: CableParams,
    n_range: Iterable[int] | None = None,
    lookup: DegreeLookup | None = None,
    pi_max: int | None = None,
    on_tie: str = "raise",
) -> CablePrediction:
    """Brute-force cable degree: maximize ``f`` over ``S_n`` for each ``n`` and
    fit the resulting sequence.

    A tie at the top raises :class:`CancellationRisk`. With
    ``on_tie="truncate"`` the fit uses only colors above the last tie (the
    uniqueness statement is asymptotic), and the ties stay in the trace with
    margin 0.
    """
    if on_tie not in ("raise", "truncate"):
        raise ValueError("on_tie must be 'raise' or 'truncate'")
    _check_b(dplus)
    cp = params.normalized()
    if n_range is None:
        n_range = range(1, 26)
    ns = sorted(set(n_range))
    samples: dict[int, Fraction] = {}
    trace = []
    for n in ns:
        values = sorted(
            ((term_degree_f(dplus, cp, twok, lookup), twok) for twok in half_indices(n)),
            reverse=True,
        )
        best, twok = values[0]
        margin = None
        if len(values) > 1:
            margin = best - values[1][0]
            if margin == 0:
                tied = [Fraction(t, 2) for v, t in values if v == best]
                if on_tie == "raise":
                    raise CancellationRisk(f"cancellation risk at n={n}: tied k values {tied}", tied)
                samples.clear()
                trace.append(TraceEntry(n, twok, margin))
                continue
        trace.append(TraceEntry(n, twok, margin))
        samples[n] = Fraction(cp.p * cp.q * (n * n - 1), 4) + best
    if pi_max is None:
        pi_max = 2 * dplus.period if dplus.period % 2 else dplus.period
    if not samples:
        raise CancellationRisk("no colors left above the last tie")
    model = fit(samples, pi_max=pi_max)
    if any(b > 0 for b in model.b_values):
        raise HypothesisError(f"predicted B(n) > 0 contradicts the cabling result: {model}")
    tag, residues = _branch_tag(model, dplus, cp)
    return CablePrediction(model, tag, tuple(trace), residues)


# ---------------------------------------------------------------------------
# Closed forms for period <= 2 bases
# ---------------------------------------------------------------------------


def closed_form_period2(
    dplus: QuasiPoly, params: CableParams, lookup: DegreeLookup | None = None
) -> CablePrediction:
    """Explicit ``A(n), B(n), D(n)`` for a period <= 2 base with ``b <= 0``.

    For each parity of ``n`` the relevant base residue is the parity of the
    colors that occur: always odd when ``q`` is even, that of ``n`` when ``q``
    is odd. If ``p/q < 4a`` the winning index is ``k = (n-1)/2``; if
    ``p/q > 4a`` it is ``k = -1/2`` (``n`` even) or ``k = 0`` (``n`` odd).
    """
    if dplus.period > 2:
        raise ValueError("closed form needs a base of period <= 2")
    _check_b(dplus)
    cp = params.normalized()
    p, q = cp.p, cp.q
    if cp.ratio in jones_slopes(dplus):
        raise SlopeCollision(f"Jones slope collision: p/q = {cp.ratio} is a Jones slope")
    triples = []
    cases = []
    for r in (0, 1):
        parity = 1 if q % 2 == 0 else r
        a, b, d = dplus.triple(parity)
        if p - 4 * q * a < 0:
            # k = (n-1)/2, branch g^+ with x = (n-1)/2 expanded in n
            lead = -p * q + 4 * q * q * a
            lin = -p + 4 * q * a + 2 * q * b
            A = q * q * a
            B = q * b + Fraction(q - 1, 2) * (p - 4 * q * a)
            D = Fraction(-p * q, 4) + lead / 4 - lin / 2 + a + b + d
            cases.append("inherited:k=(n-1)/2")
        else:
            A = Fraction(p * q, 4)
            B = Fraction(0)
            twok = -1 if r == 0 else 0
            D = Fraction(-p * q, 4) + term_degree_f(dplus, cp, twok, lookup)
            cases.append("annulus:k=" + ("-1/2" if r == 0 else "0"))
        triples.append((A, B, D))
    model = QuasiPoly(2, tuple(triples), dplus.valid_from)
    tag, _ = _branch_tag(model, dplus, cp)
    return CablePrediction(model, tag, (), tuple(cases))


# ---------------------------------------------------------------------------
# Constant-a bases
# ---------------------------------------------------------------------------


def m1_m2(dplus: QuasiPoly) -> tuple[Fraction, Fraction]:
    if not dplus.has_constant_a():
        raise DomainError("M1/M2 need a constant quadratic coefficient")
    period = dplus.period * (1 if dplus.period % 2 == 0 else 2)
    bs = [dplus.triple(i)[1] for i in range(period)]
    ds = [dplus.triple(i)[2] for i in range(period)]
    m1 = m2 = None
    for i in range(period):
        for j in range(i % 2, period, 2):
            db = abs(bs[i] - bs[j])
            cand2 = 2 * bs[i] + db + abs(ds[i] - ds[j])
            m1 = db if m1 is None else max(m1, db)
            m2 = cand2 if m2 is None else max(m2, cand2)
    return m1, m2


def admissible_constant_a(dplus: QuasiPoly, params: CableParams) -> bool:
    cp = params.normalized()
    a = dplus.a_values[0]
    m1, m2 = m1_m2(dplus)
    p, q = cp.p, cp.q
    return p - (4 * a - m1) * q < 0 or p - (4 * a + m1) * q > max(0, m2)


# ---------------------------------------------------------------------------
# Boundary slopes and surfaces
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SurfaceData:
    slope: object  # Fraction, or math.inf
    euler: int
    boundary_count: int

    def __post_init__(self):
        if self.boundary_count < 1:
            raise ValueError("a surface needs at least one boundary component")
        if self.slope != INF:
            object.__setattr__(self, "slope", Fraction(self.slope))

    def to_dict(self) -> dict:
        slope = "inf" if self.slope == INF else str(self.slope)
        return {"slope": slope, "euler": self.euler, "boundary_count": self.boundary_count}


def cable_boundary_slopes(bs: Iterable, params: CableParams) -> frozenset:
    cp = params.normalized()
    out = {INF if s == INF else cp.q * cp.q * Fraction(s) for s in bs}
    out.add(Fraction(cp.p * cp.q))
    return frozenset(out)


def cable_surface(s: SurfaceData, params: CableParams) -> SurfaceData:
    """Surface in the cable built from an integral-slope surface of the companion."""
    if s.slope == INF or Fraction(s.slope).denominator != 1:
        raise DomainError(f"cable surface transform needs an integral slope, got {s.slope}")
    a = int(s.slope)
    p, q = params.p, params.q
    aq = abs(q)
    euler = aq * s.euler + s.boundary_count * (1 - aq) * abs(p - a * q)
    return SurfaceData(Fraction(q * q * a), euler, s.boundary_count)


def cabling_annulus(params: CableParams) -> SurfaceData:
    """The cabling annulus: slope ``pq``, Euler characteristic 0."""
    return SurfaceData(Fraction(params.p * params.q), 0, 2)
