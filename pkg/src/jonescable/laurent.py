"""Exact Laurent polynomials in ``v`` with exponents in quarter-integer units.

A :class:`QLaurent` stores a sparse map ``e -> c`` meaning ``c * v**(e/4)``.
Rationals throughout the package are :class:`fractions.Fraction` (aliased
``Rat`` here), which already gives arbitrary-precision numerators and
denominators in lowest terms.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Iterable, Mapping

Rat = Fraction

__all__ = ["Rat", "QLaurent", "NoDegreeError", "add", "mul", "degrees", "mirror"]


class NoDegreeError(ValueError):
    """Raised when asking for the degree of the zero polynomial."""


def _clean(terms: Mapping[int, int]) -> dict[int, int]:
    return {int(e): int(c) for e, c in terms.items() if c}


class QLaurent:
    """Immutable Laurent polynomial ``sum c_e v^(e/4)`` with integer ``c_e``."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, int] | None = None):
        self._terms = _clean(terms or {})
        self._hash = None

    # -- constructors -----------------------------------------------------
    @classmethod
    def _raw(cls, terms: dict[int, int]) -> "QLaurent":
        # caller guarantees no zero coefficients
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def monomial(cls, quarters: int, coeff: int = 1) -> "QLaurent":
        return cls({quarters: coeff})

    @classmethod
    def v_power(cls, exponent) -> "QLaurent":
        """``v**exponent`` for an exponent that is a multiple of 1/4."""
        q = Fraction(exponent) * 4
        if q.denominator != 1:
            raise ValueError(f"exponent {exponent} is not a multiple of 1/4")
        return cls({int(q): 1})

    @classmethod
    def constant(cls, c: int) -> "QLaurent":
        return cls({0: c})

    # -- accessors ----------------------------------------------------------
    @property
    def terms(self) -> dict[int, int]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def coefficient(self, quarters: int) -> int:
        return self._terms.get(quarters, 0)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    # -- ring operations ------------------------------------------------------
    def __add__(self, other) -> "QLaurent":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if len(other._terms) > len(self._terms):
            big, small = other._terms, self._terms
        else:
            big, small = self._terms, other._terms
        out = dict(big)
        for e, c in small.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return QLaurent._raw(out)

    __radd__ = __add__

    def __neg__(self) -> "QLaurent":
        return QLaurent._raw({e: -c for e, c in self._terms.items()})

    def __sub__(self, other) -> "QLaurent":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "QLaurent":
        return (-self) + other

    def __mul__(self, other) -> "QLaurent":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self._terms, other._terms
        if not a or not b:
            return QLaurent._raw({})
        if len(b) == 1:
            ((eb, cb),) = b.items()
            return QLaurent._raw({e + eb: c * cb for e, c in a.items()})
        if len(a) == 1:
            return other * self
        out: dict[int, int] = {}
        for ea, ca in a.items():
            for eb, cb in b.items():
                e = ea + eb
                out[e] = out.get(e, 0) + ca * cb
        return QLaurent(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "QLaurent":
        if k < 0:
            raise ValueError("negative powers are not Laurent polynomials in general")
        result = QLaurent.constant(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def shift(self, quarters: int) -> "QLaurent":
        """Multiply by ``v**(quarters/4)``."""
        if not quarters:
            return self
        return QLaurent._raw({e + quarters: c for e, c in self._terms.items()})

    def top_slice(self, width: int) -> "QLaurent":
        """Terms whose exponent is within ``width`` quarters of the top degree."""
        if not self._terms:
            return self
        top = max(self._terms)
        return QLaurent._raw({e: c for e, c in self._terms.items() if e >= top - width})

    # -- degrees --------------------------------------------------------------
    def max_quarter(self) -> int:
        if not self._terms:
            raise NoDegreeError("no degree: zero polynomial")
        return max(self._terms)

    def min_quarter(self) -> int:
        if not self._terms:
            raise NoDegreeError("no degree: zero polynomial")
        return min(self._terms)

    def degrees(self) -> tuple[Fraction, Fraction]:
        return Fraction(self.max_quarter(), 4), Fraction(self.min_quarter(), 4)

    def mirror(self) -> "QLaurent":
        return QLaurent._raw({-e: c for e, c in self._terms.items()})

    # -- comparisons / hashing ----------------------------------------------
    def __eq__(self, other) -> bool:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # -- serialization --------------------------------------------------------
    def to_pairs(self) -> list[list]:
        return [[e, str(c)] for e, c in sorted(self._terms.items())]

    def to_json(self) -> str:
        return json.dumps(self.to_pairs())

    @classmethod
    def from_pairs(cls, pairs: Iterable) -> "QLaurent":
        terms: dict[int, int] = {}
        for e, c in pairs:
            terms[int(e)] = terms.get(int(e), 0) + int(c)
        return cls(terms)

    @classmethod
    def from_json(cls, text: str) -> "QLaurent":
        return cls.from_pairs(json.loads(text))

    def __repr__(self) -> str:
        return f"QLaurent({self})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for e, c in sorted(self._terms.items(), reverse=True):
            exp = Fraction(e, 4)
            if exp == 0:
                mono = ""
            elif exp == 1:
                mono = "v"
            else:
                mono = f"v^({exp})" if exp.denominator != 1 or exp < 0 else f"v^{exp}"
            if mono and abs(c) == 1:
                body = mono
            elif mono:
                body = f"{abs(c)}*{mono}"
            else:
                body = str(abs(c))
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        first_sign, first = parts[0]
        text = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text


def _coerce(x):
    if isinstance(x, QLaurent):
        return x
    if isinstance(x, int):
        return QLaurent({0: x})
    return NotImplemented


def add(f: QLaurent, g: QLaurent) -> QLaurent:
    return f + g


def mul(f: QLaurent, g: QLaurent) -> QLaurent:
    return f * g


def degrees(f: QLaurent) -> tuple[Fraction, Fraction]:
    """``(d_max, d_min)`` in units of ``v``; raises :class:`NoDegreeError` on 0."""
    return f.degrees()


def mirror(f: QLaurent) -> QLaurent:
    """Substitute ``v -> 1/v``."""
    return f.mirror()


# Frequently used constants.
ONE = QLaurent({0: 1})
# Loop value -(v^{1/2} + v^{-1/2}).
DELTA = QLaurent({2: -1, -2: -1})
