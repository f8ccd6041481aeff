"""Conjecture checks over slope data: slope containment, the strong slope
ratio test and non-positivity of the linear coefficient.

Statuses are ``pass``, ``fail`` and ``inapplicable``, plus two softer ones:
``not_confirmed`` (a slope is missing from a boundary slope set known to be
partial) and ``unresolved`` (``b = 0`` on a knot not flagged torus, cable or
composite). Only ``pass`` and ``inapplicable`` count as success.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .cabling import (
    CableParams,
    HypothesisError,
    SurfaceData,
    cable_surface,
    cabling_annulus,
    closed_form_period2,
)
from .quasipoly import INF, QuasiPoly, format_slope, slope_sort_key

OK_STATUSES = frozenset({"pass", "inapplicable"})
SPLIT_FLAGS = frozenset({"torus", "cable", "composite"})


@dataclass(frozen=True)
class CheckResult:
    conjecture: str
    status: str
    details: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.status in OK_STATUSES

    def to_dict(self) -> dict:
        return {"conjecture": self.conjecture, "status": self.status, "details": self.details}


@dataclass(frozen=True)
class ConjectureReport:
    knot: str
    checks: tuple[CheckResult, ...]

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def to_dict(self) -> dict:
        return {"knot": self.knot, "checks": [c.to_dict() for c in self.checks]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def _sorted(slopes: Iterable) -> list:
    return sorted(set(slopes), key=slope_sort_key)


def _fmt(x) -> str:
    return format_slope(x) if x == INF or isinstance(x, (int, Fraction)) else str(x)


def _norm(s):
    return INF if s == INF else Fraction(s)


def check_slope(js: Iterable, js_star: Iterable, bs: Iterable, bs_complete: bool = True) -> CheckResult:
    """Is every Jones slope a boundary slope?

    With ``bs_complete=False`` a missing slope is "not confirmed" rather than
    a violation.
    """
    bs = {_norm(s) for s in bs}
    verdicts = {}
    for s in _sorted(_norm(x) for x in (*js, *js_star)):
        if s in bs:
            verdicts[_fmt(s)] = "boundary slope"
        else:
            verdicts[_fmt(s)] = "violation" if bs_complete else "not confirmed"
    missing = [k for k, v in verdicts.items() if v != "boundary slope"]
    if not verdicts:
        status = "inapplicable"
    elif not missing:
        status = "pass"
    else:
        status = "fail" if bs_complete else "not_confirmed"
    details = {"slopes": verdicts, "bs": [_fmt(s) for s in _sorted(bs)], "bs_complete": bs_complete}
    if missing:
        details["witness"] = missing
    return CheckResult("slope", status, details)


def reduced(slope) -> tuple[int, int]:
    """``a/b`` with ``b > 0`` and ``gcd(a, b) = 1``."""
    s = Fraction(slope)
    return s.numerator, s.denominator


def strong_ratio(surface: SurfaceData) -> Fraction:
    """``chi(S) / (|dS| b)`` for the surface's reduced slope ``a/b``."""
    _, b = reduced(surface.slope)
    return Fraction(surface.euler, surface.boundary_count * b)


def check_strong_slope(js: Iterable, jx: Iterable, surfaces: Sequence[SurfaceData]) -> CheckResult:
    """For each Jones slope, look for a surface with that slope whose ratio
    ``chi / (|dS| b)`` lies in ``jx``."""
    jx = {Fraction(x) for x in jx}
    per_slope = {}
    for s in _sorted(_norm(x) for x in js):
        key = _fmt(s)
        if s == INF:
            per_slope[key] = {"outcome": "inapplicable", "reason": "infinite slope"}
            continue
        cands = [S for S in surfaces if S.slope == s]
        if not cands:
            per_slope[key] = {"outcome": "inapplicable", "reason": "no surface data"}
            continue
        tried = []
        hit = None
        for S in cands:
            r = strong_ratio(S)
            tried.append({"surface": S.to_dict(), "ratio": str(r)})
            if r in jx and hit is None:
                hit = S
        if hit is not None:
            per_slope[key] = {"outcome": "pass", "witness": hit.to_dict(), "ratio": str(strong_ratio(hit))}
        else:
            per_slope[key] = {"outcome": "fail", "tried": tried}
    outcomes = [v["outcome"] for v in per_slope.values()]
    if "fail" in outcomes:
        status = "fail"
    elif outcomes and all(o == "pass" for o in outcomes):
        status = "pass"
    else:
        status = "inapplicable"
    return CheckResult(
        "strong_slope", status, {"slopes": per_slope, "jx": [str(x) for x in sorted(jx)]}
    )


def check_b_nonpositive(model, flags: Iterable[str] = ()) -> CheckResult:
    """``b <= 0`` for every residue; ``b = 0`` needs a torus, cable or composite flag.

    ``model`` is a :class:`QuasiPoly` or a sequence of ``b`` values.
    """
    flags = frozenset(flags)
    bvals = model.b_values if isinstance(model, QuasiPoly) else tuple(Fraction(b) for b in model)
    details = {"b": [str(b) for b in bvals], "flags": sorted(flags)}
    if "unknot" in flags:
        details["reason"] = "trivial knot (b = 1/2) is excluded"
        return CheckResult("b_nonpositive", "inapplicable", details)
    if not bvals:
        details["reason"] = "no linear coefficient data"
        return CheckResult("b_nonpositive", "inapplicable", details)
    positive = [str(b) for b in bvals if b > 0]
    if positive:
        details["witness"] = positive
        return CheckResult("b_nonpositive", "fail", details)
    if any(b == 0 for b in bvals):
        if flags & SPLIT_FLAGS:
            details["zero_explained_by"] = sorted(flags & SPLIT_FLAGS)
            return CheckResult("b_nonpositive", "pass", details)
        details["reason"] = "b = 0 without a torus, cable or composite flag"
        return CheckResult("b_nonpositive", "unresolved", details)
    return CheckResult("b_nonpositive", "pass", details)


def _mirror_surface(s: SurfaceData) -> SurfaceData:
    return SurfaceData(INF if s.slope == INF else -s.slope, s.euler, s.boundary_count)


def catalog_report(entry) -> ConjectureReport:
    """All checks for a catalog entry and, where data exists, its mirror.

    The mirror side uses ``js(K*) = -js*(K)``, ``jx(K*) = -jx*(K)`` and
    negated surface slopes.
    """
    complete = entry.bs_source == "montesinos-enumeration"
    checks = [check_slope(entry.js, entry.js_star, entry.bs_known, bs_complete=complete)]
    checks.append(check_strong_slope(entry.js, entry.jx, entry.surfaces))
    if entry.js_star:
        checks.append(
            _tag(
                check_strong_slope(
                    [-s for s in entry.js_star],
                    [-x for x in entry.jx_star],
                    [_mirror_surface(s) for s in entry.surfaces_star],
                ),
                "mirror",
            )
        )
    bvals = entry.dplus.b_values if entry.dplus is not None else entry.b
    checks.append(check_b_nonpositive(bvals, entry.flags))
    if entry.b_star:
        checks.append(_tag(check_b_nonpositive([-b for b in entry.b_star], entry.flags), "mirror"))
    return ConjectureReport(entry.name, tuple(checks))


def _tag(result: CheckResult, side: str) -> CheckResult:
    return CheckResult(result.conjecture, result.status, {**result.details, "side": side})


def cable_strong_slope(dplus: QuasiPoly, surfaces: Sequence[SurfaceData], params: CableParams) -> CheckResult:
    """Strong slope check for the cable, built from the closed-form model and
    the transformed surfaces (the cabling annulus on the annulus branch)."""
    try:
        pred = closed_form_period2(dplus, params)
    except HypothesisError as exc:
        return CheckResult("strong_slope", "inapplicable", {"reason": str(exc)})
    js = {4 * a for a in pred.A}
    jx = {2 * b for b in pred.B}
    cable_surfaces = [cabling_annulus(params)]
    for s in surfaces:
        if s.slope != INF and Fraction(s.slope).denominator == 1:
            cable_surfaces.append(cable_surface(s, params))
    result = check_strong_slope(js, jx, cable_surfaces)
    return CheckResult(
        result.conjecture, result.status, {**result.details, "cable": [params.p, params.q]}
    )
