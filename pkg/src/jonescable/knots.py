"""Knot presentations for the command line.

Grammar (cables nest through the last ``;``)::

    torus:P,Q   braid:<word>   pd:<json>   fusion:M1,M2   catalog:<name>
    cable:<presentation>;P,Q

``catalog:`` also accepts ``pretzel:P``. A bare catalog name such as
``8_20`` is read as ``catalog:8_20``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .bracket import BraidWord, DiagramError, PDCode, colored_jones
from .cabling import CableParams, HypothesisError, cable_jones, closed_form_period2, predict_cable_degree
from .families import catalog, torus_degree, torus_jones
from .fusion import FusionParams, dplus_model
from .laurent import QLaurent
from .quasipoly import QuasiPoly, mirror_model


class PresentationError(ValueError):
    pass


@dataclass
class Knot:
    """A parsed presentation: an optional exact Jones evaluator plus the
    ``d_+`` / ``d_-`` degree models known for it."""

    text: str
    kind: str
    jones_fn: Callable[[int], QLaurent] | None = None
    dplus: QuasiPoly | None = None
    dminus: QuasiPoly | None = None
    lookup: dict | None = None
    note: str = ""

    def jones(self, n: int) -> QLaurent:
        if self.jones_fn is None:
            raise PresentationError(f"{self.kind} presentations carry no diagram; the colored Jones polynomial is unavailable")
        return self.jones_fn(n)


def _ints(text: str, count: int, what: str) -> list[int]:
    parts = [t for t in text.replace(" ", ",").split(",") if t]
    try:
        vals = [int(t) for t in parts]
    except ValueError:
        raise PresentationError(f"{what}: expected {count} integers, got {text!r}") from None
    if len(vals) != count:
        raise PresentationError(f"{what}: expected {count} integers, got {text!r}")
    return vals


def parse(text: str, **jones_opts) -> Knot:
    """Parse a presentation. ``jones_opts`` go to the bracket evaluator."""
    text = text.strip()
    head, sep, rest = text.partition(":")
    if not sep:
        head, rest = "catalog", text
    head = head.lower()
    if head == "pretzel":
        head, rest = "catalog", text
    try:
        if head == "torus":
            p, q = _ints(rest, 2, "torus")
            return Knot(text, "torus", lambda n: torus_jones(p, q, n), torus_degree(p, q), mirror_model(torus_degree(-p, q)))
        if head == "braid":
            braid = BraidWord.parse(rest)
            return Knot(text, "braid", lambda n: colored_jones(braid, n, **jones_opts))
        if head == "pd":
            pd = PDCode.from_json(rest)
            return Knot(text, "pd", lambda n: colored_jones(pd, n, **jones_opts))
        if head == "fusion":
            m1, m2 = _ints(rest, 2, "fusion")
            return Knot(text, "fusion", None, dplus_model(FusionParams(m1, m2)))
        if head == "catalog":
            entry = catalog(rest)
            fn = None
            if entry.braid is not None:
                braid = entry.braid
                fn = lambda n: colored_jones(braid, n, **jones_opts)  # noqa: E731
            return Knot(text, "catalog", fn, entry.dplus, entry.dminus, dict(entry.dplus_lookup) or None)
        if head == "cable":
            base_text, sep, pq = rest.rpartition(";")
            if not sep:
                raise PresentationError(f"cable needs '<base>;p,q', got {rest!r}")
            p, q = _ints(pq, 2, "cable")
            params = CableParams(p, q)
            base = parse(base_text, **jones_opts)
            return _cable(text, base, params)
    except (KeyError, DiagramError, ValueError) as exc:
        if isinstance(exc, PresentationError):
            raise
        raise PresentationError(f"cannot parse {text!r}: {exc}") from exc
    raise PresentationError(f"unknown presentation kind {head!r}")


def _cable(text: str, base: Knot, params: CableParams) -> Knot:
    fn = None
    if base.jones_fn is not None:
        base_fn = base.jones_fn
        fn = lambda n: cable_jones(base_fn, params, n)  # noqa: E731
    dplus = None
    note = ""
    if base.dplus is not None:
        try:
            if base.dplus.period <= 2:
                dplus = closed_form_period2(base.dplus, params, base.lookup).model
            else:
                dplus = predict_cable_degree(base.dplus, params, lookup=base.lookup).model
        except HypothesisError as exc:
            note = f"no degree model: {exc}"
    return Knot(text, "cable", fn, dplus, None, None, note)

