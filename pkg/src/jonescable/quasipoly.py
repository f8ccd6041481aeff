"""Quadratic quasi-polynomial degree models.

A :class:`QuasiPoly` stores one ``(a, b, d)`` triple per residue of ``n``
modulo the period, indexed by ``n % period``, and is valid for
``n >= valid_from``.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

Triple = tuple[Fraction, Fraction, Fraction]

INF = math.inf


class DomainError(ValueError):
    pass


class FitError(ValueError):
    def __init__(self, message: str, first_inconsistent_n: int | None = None):
        super().__init__(message)
        self.first_inconsistent_n = first_inconsistent_n


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def _minimal_period(coeffs: Sequence[Triple]) -> int:
    pi = len(coeffs)
    for cand in range(1, pi + 1):
        if pi % cand == 0 and all(coeffs[i] == coeffs[i % cand] for i in range(pi)):
            return cand
    return pi


@dataclass(frozen=True)
class QuasiPoly:
    period: int
    coeffs: tuple[Triple, ...]
    valid_from: int = 1

    def __post_init__(self):
        coeffs = tuple(tuple(_frac(x) for x in t) for t in self.coeffs)
        if self.period < 1 or len(coeffs) != self.period:
            raise ValueError("need exactly one (a, b, d) triple per residue")
        if any(len(t) != 3 for t in coeffs):
            raise ValueError("coefficients must be (a, b, d) triples")
        if self.valid_from < 1:
            raise ValueError("valid_from must be at least 1")
        pi = _minimal_period(coeffs)
        object.__setattr__(self, "coeffs", coeffs[:pi])
        object.__setattr__(self, "period", pi)

    @classmethod
    def constant_coeffs(cls, a, b, d, valid_from: int = 1) -> "QuasiPoly":
        return cls(1, ((a, b, d),), valid_from)

    @classmethod
    def from_residues(cls, period: int, triples: Mapping[int, Sequence], valid_from: int = 1):
        return cls(period, tuple(tuple(triples[i]) for i in range(period)), valid_from)

    def triple(self, n: int) -> Triple:
        return self.coeffs[n % self.period]

    def eval(self, n: int) -> Fraction:
        if n < self.valid_from:
            raise DomainError(f"n={n} is below valid_from={self.valid_from}")
        return self.value(n)

    __call__ = eval

    def value(self, n: int) -> Fraction:
        """Evaluate the formula without the ``valid_from`` guard."""
        a, b, d = self.triple(n)
        return a * n * n + b * n + d

    @property
    def a_values(self) -> tuple[Fraction, ...]:
        return tuple(t[0] for t in self.coeffs)

    @property
    def b_values(self) -> tuple[Fraction, ...]:
        return tuple(t[1] for t in self.coeffs)

    @property
    def d_values(self) -> tuple[Fraction, ...]:
        return tuple(t[2] for t in self.coeffs)

    def has_constant_a(self) -> bool:
        return len(set(self.a_values)) == 1

    def with_valid_from(self, valid_from: int) -> "QuasiPoly":
        return QuasiPoly(self.period, self.coeffs, valid_from)

    def to_dict(self) -> dict:
        return {
            "period": self.period,
            "valid_from": self.valid_from,
            "coeffs": [[str(x) for x in t] for t in self.coeffs],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, data: Mapping) -> "QuasiPoly":
        coeffs = tuple(tuple(Fraction(x) for x in t) for t in data["coeffs"])
        return cls(int(data["period"]), coeffs, int(data.get("valid_from", 1)))

    @classmethod
    def from_json(cls, text: str) -> "QuasiPoly":
        return cls.from_dict(json.loads(text))

    def __str__(self) -> str:
        rows = [f"n%{self.period}=={i}: {a}n^2 + {b}n + {d}" for i, (a, b, d) in enumerate(self.coeffs)]
        return f"QuasiPoly(period={self.period}, n>={self.valid_from}; " + "; ".join(rows) + ")"


def eval(q: QuasiPoly, n: int) -> Fraction:  # noqa: A001 - mirrors the operation name
    return q.eval(n)


def _solve_quadratic(points: Sequence[tuple[int, Fraction]]) -> Triple:
    """Exact quadratic through three points (Lagrange form expanded)."""
    (x0, y0), (x1, y1), (x2, y2) = points
    a = b = c = Fraction(0)
    for xi, yi, xj, xk in ((x0, y0, x1, x2), (x1, y1, x0, x2), (x2, y2, x0, x1)):
        w = Fraction(yi) / ((xi - xj) * (xi - xk))
        a += w
        b -= w * (xj + xk)
        c += w * xj * xk
    return a, b, c


def _try_period(samples: Mapping[int, Fraction], pi: int, min_per_class: int):
    """Return (coeffs, valid_from) or (None, first failing n)."""
    coeffs = []
    valid_from = min(samples)
    worst_fail = None
    for r in range(pi):
        ns = sorted((n for n in samples if n % pi == r), reverse=True)
        if len(ns) < 3:
            return None, None
        top = _solve_quadratic([(n, samples[n]) for n in ns[:3]])
        a, b, d = top
        fail = None
        for n in ns[3:]:
            if a * n * n + b * n + d != samples[n]:
                fail = n
                break
        if fail is not None:
            valid_from = max(valid_from, fail + 1)
            worst_fail = fail if worst_fail is None else max(worst_fail, fail)
        coeffs.append(top)
    for r in range(pi):
        count = sum(1 for n in samples if n % pi == r and n >= valid_from)
        if count < min_per_class:
            return None, worst_fail
    return tuple(coeffs), valid_from


def fit(samples: Mapping[int, object], pi_max: int = 4, min_per_class: int = 4) -> QuasiPoly:
    """Minimal-period quasi-polynomial reproducing the samples from some ``N0`` on.

    Each residue class is interpolated through its three largest samples and
    verified downward; ``valid_from`` is one past the highest sample that
    disagrees. A period is accepted only if every residue class keeps at least
    ``min_per_class`` samples (three to interpolate plus one check). Among
    accepted periods the one valid from the smallest ``n`` wins, ties going to
    the smaller period.
    """
    if not samples:
        raise FitError("no samples")
    data = {int(n): _frac(v) for n, v in samples.items()}
    first_bad = None
    best = None
    for pi in range(1, pi_max + 1):
        coeffs, info = _try_period(data, pi, min_per_class)
        if coeffs is not None:
            # a short tail fits almost anything; prefer the longest validity
            if best is None or info < best[1]:
                best = (coeffs, info, pi)
        elif info is not None:
            first_bad = info
    if best is not None:
        coeffs, valid_from, pi = best
        return QuasiPoly(pi, coeffs, valid_from)
    raise FitError(
        f"no quasi-polynomial of period <= {pi_max} fits"
        + (f" (first inconsistent n = {first_bad})" if first_bad is not None else ""),
        first_bad,
    )


def jones_slopes(q: QuasiPoly) -> frozenset[Fraction]:
    return frozenset(4 * a for a in q.a_values)


def jx_set(q: QuasiPoly) -> frozenset[Fraction]:
    return frozenset(2 * b for b in q.b_values)


def mirror_model(q: QuasiPoly) -> QuasiPoly:
    """Model of ``-d`` (d_+ of K turned into d_- of the mirror, and back)."""
    return QuasiPoly(q.period, tuple(tuple(-x for x in t) for t in q.coeffs), q.valid_from)


def format_slope(s) -> str:
    if s == INF:
        return "inf"
    return str(Fraction(s))


def slope_sort_key(s):
    return (1, 0) if s == INF else (0, Fraction(s))
