"""Command-line front end.

Results go to stdout as canonical JSON (sorted keys, rationals as strings) or
CSV; progress and diagnostics go to stderr. Exit codes: 0 success, 1 a check
or comparison failed, 2 bad input, 3 evaluator budget exceeded, 4 a hypothesis
of the requested computation does not hold.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import math
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from .bracket import DEFAULT_MAX_CROSSINGS, DEFAULT_MAX_STRANDS, BudgetExceeded, DiagramError
from .cabling import (
    CableParams,
    HypothesisError,
    ParameterError,
    admissible_constant_a,
    cable_jones,
    closed_form_period2,
    m1_m2,
    predict_cable_degree,
)
from .checker import ConjectureReport, catalog_report
from .families import CATALOG_NAMES, catalog
from .fusion import FusionError, FusionParams, b_coefficient, case_of, delta_bruteforce, delta_point, dplus_model, REGION_OF_CASE
from .knots import PresentationError, parse
from .laurent import QLaurent
from .quasipoly import DomainError, FitError, fit, format_slope, jones_slopes, jx_set, slope_sort_key

log = logging.getLogger("jonescable")

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_BUDGET, EXIT_HYPOTHESIS = 0, 1, 2, 3, 4


class CliError(Exception):
    def __init__(self, code: int, kind: str, message: str):
        super().__init__(message)
        self.code = code
        self.kind = kind


@dataclass
class RunConfig:
    n_max: int = 25
    pq_grid: list[CableParams] = field(default_factory=list)
    pi_max: int | None = None
    max_crossings: int = DEFAULT_MAX_CROSSINGS
    max_strands: int = DEFAULT_MAX_STRANDS
    fmt: str = "json"
    jobs: int = 1

    def __post_init__(self):
        if self.n_max < 1 or self.max_crossings < 1 or self.max_strands < 1 or self.jobs < 1:
            raise CliError(EXIT_INPUT, "config", "budgets, n_max and jobs must be positive")
        if self.pi_max is not None and self.pi_max < 1:
            raise CliError(EXIT_INPUT, "config", "pi_max must be positive")

    @property
    def jones_opts(self) -> dict:
        return {"max_crossings": self.max_crossings, "max_strands": self.max_strands}


# ---------------------------------------------------------------------------
# Parsing helpers and output
# ---------------------------------------------------------------------------


def parse_range(text: str) -> list[int]:
    """``"3"``, ``"1..4"`` or ``"1,3,5"``."""
    out = []
    for part in text.split(","):
        part = part.strip()
        if ".." in part:
            lo, hi = part.split("..", 1)
            out.extend(range(int(lo), int(hi) + 1))
        elif part:
            out.append(int(part))
    if not out:
        raise ValueError(f"empty range {text!r}")
    return sorted(set(out))


def _canon(obj):
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, float) and math.isinf(obj):
        return "inf"
    if isinstance(obj, dict):
        return {str(k): _canon(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_canon(v) for v in obj]
    return obj


def _cell(v) -> str:
    v = _canon(v)
    if isinstance(v, list):
        return " ".join(str(x) for x in v)
    return "" if v is None else str(v)


def dumps(obj) -> str:
    return json.dumps(_canon(obj), sort_keys=True, indent=2)


def emit(obj, cfg: RunConfig, rows: list[dict] | None = None, out=None) -> None:
    out = out or sys.stdout
    if cfg.fmt == "csv" and rows is not None:
        buf = io.StringIO()
        if rows:
            writer = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
            writer.writeheader()
            for r in rows:
                writer.writerow({k: _cell(v) for k, v in r.items()})
        out.write(buf.getvalue())
    else:
        out.write(dumps(obj) + "\n")


def _slopes(s) -> list[str]:
    return [format_slope(x) for x in sorted(s, key=slope_sort_key)]


def _knot(text: str, cfg: RunConfig):
    try:
        return parse(text, **cfg.jones_opts)
    except PresentationError as exc:
        raise CliError(EXIT_INPUT, "presentation", str(exc)) from exc
    except ParameterError as exc:
        raise CliError(EXIT_INPUT, "parameters", str(exc)) from exc


def _params(p: int, q: int) -> CableParams:
    try:
        return CableParams(p, q)
    except ParameterError as exc:
        raise CliError(EXIT_INPUT, "parameters", str(exc)) from exc


# ---------------------------------------------------------------------------
# jones
# ---------------------------------------------------------------------------


def _presentation_from_args(args) -> str:
    if args.torus:
        return f"torus:{args.torus[0]},{args.torus[1]}"
    if args.braid is not None:
        return f"braid:{args.braid}"
    if args.pd is not None:
        return f"pd:{args.pd}"
    if args.cable:
        base, p, q = args.cable
        return f"cable:{base};{p},{q}"
    if args.knot:
        return args.knot
    raise CliError(EXIT_INPUT, "usage", "give one of --torus, --braid, --pd, --cable, --knot")


def _jones_task(task):
    text, n, opts = task
    return parse(text, **opts).jones(n).to_pairs()


def cmd_jones(args, cfg: RunConfig) -> int:
    text = _presentation_from_args(args)
    knot = _knot(text, cfg)
    if knot.jones_fn is None:
        raise CliError(EXIT_INPUT, "presentation", f"{knot.kind} presentations carry no diagram")
    ns = parse_range(args.n)
    if cfg.jobs > 1 and len(ns) > 1:
        tasks = [(text, n, cfg.jones_opts) for n in ns]
        with ProcessPoolExecutor(cfg.jobs) as pool:
            pairs = list(pool.map(_jones_task, tasks))
        polys = [QLaurent.from_pairs(p) for p in pairs]
    else:
        polys = []
        for n in ns:
            log.info("jones %s n=%d", text, n)
            polys.append(knot.jones(n))
    results, rows = [], []
    for n, poly in zip(ns, polys):
        hi, lo = poly.degrees()
        results.append({"n": n, "terms": poly.to_pairs(), "text": str(poly), "degrees": [hi, lo]})
        rows.append({"n": n, "min_degree": lo, "max_degree": hi, "polynomial": str(poly)})
    emit({"knot": text, "results": results}, cfg, rows)
    return EXIT_OK


# ---------------------------------------------------------------------------
# fit / slopes
# ---------------------------------------------------------------------------


def _parse_samples(text: str) -> dict[int, Fraction]:
    out = {}
    for item in text.split(","):
        if not item.strip():
            continue
        n, sep, v = item.partition("=")
        if not sep:
            n, sep, v = item.partition(":")
        out[int(n)] = Fraction(v.strip())
    return out


def cmd_fit(args, cfg: RunConfig) -> int:
    if args.samples:
        samples = _parse_samples(args.samples)
    elif args.samples_file:
        with open(args.samples_file) as fh:
            samples = {int(k): Fraction(str(v)) for k, v in json.load(fh).items()}
    elif args.knot:
        knot = _knot(args.knot, cfg)
        samples = {}
        for n in parse_range(args.n):
            log.info("degree of %s at n=%d", args.knot, n)
            hi, lo = knot.jones(n).degrees()
            samples[n] = hi if args.side == "max" else lo
    else:
        raise CliError(EXIT_INPUT, "usage", "give --samples, --samples-file or --knot")
    try:
        model = fit(samples, pi_max=cfg.pi_max or 4)
    except FitError as exc:
        raise CliError(EXIT_FAIL, "fit", str(exc)) from exc
    emit({"model": model.to_dict(), "js": _slopes(jones_slopes(model)), "jx": _slopes(jx_set(model)),
          "samples": {str(n): v for n, v in sorted(samples.items())}}, cfg,
         [{"residue": i, "a": a, "b": b, "d": d, "valid_from": model.valid_from}
          for i, (a, b, d) in enumerate(model.coeffs)])
    return EXIT_OK


def cmd_slopes(args, cfg: RunConfig) -> int:
    knot = _knot(args.knot, cfg)
    if knot.kind == "catalog":
        e = catalog(knot.text.split(":", 1)[-1] if knot.text.startswith("catalog:") else knot.text)
        js, jx, jss, jxs = e.js, e.jx, e.js_star, e.jx_star
    else:
        if knot.dplus is None:
            raise CliError(EXIT_INPUT, "presentation", f"no degree model for {args.knot}" + (f" ({knot.note})" if knot.note else ""))
        js, jx = jones_slopes(knot.dplus), jx_set(knot.dplus)
        jss = jones_slopes(knot.dminus) if knot.dminus else frozenset()
        jxs = jx_set(knot.dminus) if knot.dminus else frozenset()
    out = {"knot": args.knot, "js": _slopes(js), "jx": _slopes(jx), "js_star": _slopes(jss), "jx_star": _slopes(jxs)}
    emit(out, cfg, [out])
    return EXIT_OK


# ---------------------------------------------------------------------------
# predict / verify-cable
# ---------------------------------------------------------------------------


def _base_model(knot, text):
    if knot.dplus is None:
        raise CliError(EXIT_INPUT, "presentation", f"no d_+ model for {text}" + (f" ({knot.note})" if knot.note else ""))
    return knot.dplus


def _predict_payload(knot, text, params: CableParams, cfg: RunConfig, on_tie: str) -> dict:
    model = _base_model(knot, text)
    out = {"knot": text, "cable": [params.p, params.q]}
    if model.period > 2 and model.has_constant_a():
        m1, m2 = m1_m2(model)
        out["constant_a"] = {"a": model.a_values[0], "M1": m1, "M2": m2,
                             "admissible": admissible_constant_a(model, params)}
    pred = predict_cable_degree(model, params, range(1, cfg.n_max + 1), knot.lookup, cfg.pi_max, on_tie=on_tie)
    out["prediction"] = pred.to_dict()
    out["js"] = _slopes(jones_slopes(pred.model))
    out["jx"] = _slopes(jx_set(pred.model))
    if model.period <= 2:
        out["closed_form"] = closed_form_period2(model, params, knot.lookup).to_dict()
    return out


def cmd_predict(args, cfg: RunConfig) -> int:
    knot = _knot(args.knot, cfg)
    params = _params(args.p, args.q)
    out = _predict_payload(knot, args.knot, params, cfg, args.on_tie)
    emit(out, cfg, [{"residue": i, "A": a, "B": b, "D": d, "valid_from": out["prediction"]["model"]["valid_from"]}
                    for i, (a, b, d) in enumerate(out["prediction"]["model"]["coeffs"])])
    return EXIT_OK


def _companion(knot, model, source: str):
    """Jones function for the companion: exact, or a monomial surrogate
    ``v^{d_+}`` that carries only the top degree."""
    if source == "auto":
        source = "exact" if knot.kind == "torus" else "surrogate"
    if source == "exact":
        if knot.jones_fn is None:
            raise CliError(EXIT_INPUT, "presentation", "no exact Jones evaluator for this knot")
        return knot.jones_fn, "exact"
    lookup = knot.lookup or {}

    def surrogate(m: int) -> QLaurent:
        if m == 1:
            return QLaurent.constant(1)
        deg = model.value(m) if m >= model.valid_from else Fraction(lookup[m])
        return QLaurent.v_power(deg)

    return surrogate, "surrogate"


def verify_cable(knot, text, params: CableParams, cfg: RunConfig, source: str = "auto",
                 window: int = 8, on_tie: str = "truncate") -> dict:
    model = _base_model(knot, text)
    jk, used = _companion(knot, model, source)
    pred = predict_cable_degree(model, params, range(1, cfg.n_max + 1), knot.lookup, cfg.pi_max, on_tie=on_tie)
    closed = closed_form_period2(model, params, knot.lookup).model if model.period <= 2 else None
    start = max(pred.model.valid_from, closed.valid_from if closed else 1)
    rows = []
    for n in range(start, cfg.n_max + 1):
        log.info("verify %s (%d,%d) n=%d", text, params.p, params.q, n)
        exact = cable_jones(jk, params, n, top_window=window).degrees()[0]
        row = {"n": n, "cable_jones": exact, "predict": pred.model.value(n),
               "closed_form": closed.value(n) if closed else None}
        row["agree"] = exact == row["predict"] and (closed is None or exact == row["closed_form"])
        rows.append(row)
    return {"knot": text, "cable": [params.p, params.q], "companion": used, "valid_from": start,
            "case_tag": pred.case_tag, "rows": rows, "agree": all(r["agree"] for r in rows)}


def _grid(args) -> list[CableParams]:
    ps, qs = parse_range(args.p), parse_range(args.q)
    grid = [CableParams(p, q) for q in qs for p in ps if abs(q) > 1 and math.gcd(p, q) == 1]
    if not grid:
        raise CliError(EXIT_INPUT, "parameters", "empty (p, q) grid")
    return grid


def cmd_verify_cable(args, cfg: RunConfig) -> int:
    knot = _knot(args.knot, cfg)
    cfg.pq_grid = _grid(args)
    results, rows, ok = [], [], True
    for params in cfg.pq_grid:
        try:
            res = verify_cable(knot, args.knot, params, cfg, args.source, args.window, args.on_tie)
        except HypothesisError as exc:
            res = {"knot": args.knot, "cable": [params.p, params.q], "skipped": f"{type(exc).__name__}: {exc}"}
            log.warning("(%d,%d) skipped: %s", params.p, params.q, exc)
        else:
            ok = ok and res["agree"]
            for r in res["rows"]:
                rows.append({"p": params.p, "q": params.q, **r})
        results.append(res)
    emit({"results": results, "agree": ok}, cfg, rows)
    return EXIT_OK if ok else EXIT_FAIL


# ---------------------------------------------------------------------------
# fusion / check
# ---------------------------------------------------------------------------


def cmd_fusion(args, cfg: RunConfig) -> int:
    try:
        fp = FusionParams(args.m1, args.m2)
    except FusionError as exc:
        raise CliError(EXIT_INPUT, "parameters", str(exc)) from exc
    case = case_of(fp)
    out = {"m1": fp.m1, "m2": fp.m2, "case": case, "region": REGION_OF_CASE[case]}
    ns = parse_range(args.n) if args.n else []
    report = args.report
    if report in ("b", "all"):
        if case == "C-2" and ns:
            out["b"] = {str(n): b_coefficient(fp, n) for n in ns}
        elif case == "C-2":
            out["b"] = sorted(set(dplus_model(fp).b_values))
        else:
            out["b"] = b_coefficient(fp)
    if report in ("model", "all"):
        out["model"] = dplus_model(fp).to_dict()
    if report in ("delta", "all"):
        if not ns:
            raise CliError(EXIT_INPUT, "usage", "--report delta needs --n")
        rows = []
        for n in ns:
            value, pt, _ = delta_point(fp, n)
            row = {"n": n, "delta": value, "k1": pt.k1, "k2": pt.k2}
            if args.bruteforce:
                bf, bpt = delta_bruteforce(fp, n)
                row["bruteforce"] = bf
            rows.append(row)
        out["delta"] = rows
    emit(out, cfg, [{k: v for k, v in out.items() if not isinstance(v, (dict, list))}])
    return EXIT_OK


def cmd_check(args, cfg: RunConfig) -> int:
    names: list[str] = []
    if args.catalog:
        names += list(CATALOG_NAMES) if args.catalog == "all" else [s.strip() for s in args.catalog.split(",")]
    if args.pretzel:
        names += [f"pretzel:{p}" for p in parse_range(args.pretzel)]
    if not names:
        raise CliError(EXIT_INPUT, "usage", "give --catalog and/or --pretzel")
    reports: list[ConjectureReport] = []
    for name in names:
        try:
            entry = catalog(name)
        except KeyError as exc:
            raise CliError(EXIT_INPUT, "presentation", str(exc)) from exc
        log.info("checking %s", name)
        reports.append(catalog_report(entry))
    rows = [{"knot": r.knot, "conjecture": c.conjecture, "side": c.details.get("side", "K"), "status": c.status}
            for r in reports for c in r.checks]
    ok = all(r.ok for r in reports)
    emit({"reports": [r.to_dict() for r in reports], "ok": ok}, cfg, rows)
    return EXIT_OK if ok else EXIT_FAIL


# ---------------------------------------------------------------------------
# main
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--jobs", type=int, default=1, help="worker processes")
    common.add_argument("--max-crossings", type=int, default=DEFAULT_MAX_CROSSINGS)
    common.add_argument("--max-strands", type=int, default=DEFAULT_MAX_STRANDS)
    common.add_argument("--n-max", type=int, default=25)
    common.add_argument("--pi-max", type=int, default=None)
    common.add_argument("-q", "--quiet", action="store_true", help="no progress on stderr")

    parser = argparse.ArgumentParser(prog="jonescable", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("jones", parents=[common], help="colored Jones polynomials")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--torus", nargs=2, type=int, metavar=("P", "Q"))
    g.add_argument("--braid")
    g.add_argument("--pd")
    g.add_argument("--cable", nargs=3, metavar=("BASE", "P", "Q"))
    g.add_argument("--knot", help="presentation, e.g. torus:2,3 or cable:torus:2,3;11,2")
    p.add_argument("--n", default="1..4")
    p.set_defaults(func=cmd_jones)

    p = sub.add_parser("fit", parents=[common], help="fit a degree quasi-polynomial")
    p.add_argument("--samples", help="n=value,... ")
    p.add_argument("--samples-file", help="JSON object {n: value}")
    p.add_argument("--knot")
    p.add_argument("--n", default="1..8")
    p.add_argument("--side", choices=("max", "min"), default="max")
    p.set_defaults(func=cmd_fit)

    p = sub.add_parser("slopes", parents=[common], help="Jones slopes and jx sets")
    p.add_argument("--knot", required=True)
    p.set_defaults(func=cmd_slopes)

    for name, func, help_ in (("predict", cmd_predict, "cable degree prediction"),
                              ("verify-cable", cmd_verify_cable, "three-way cable degree agreement")):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.add_argument("--knot", required=True)
        if name == "predict":
            p.add_argument("--p", type=int, required=True)
            p.add_argument("--q", type=int, required=True)
        else:
            p.add_argument("--p", required=True, help="integer or range, e.g. --p=-15..15")
            p.add_argument("--q", required=True, help="integer or list, e.g. 2,3,-2")
            p.add_argument("--source", choices=("auto", "exact", "surrogate"), default="auto")
            p.add_argument("--window", type=int, default=8, help="top quarter-degrees to compute")
        p.add_argument("--on-tie", choices=("raise", "truncate"), default="raise" if name == "predict" else "truncate")
        p.set_defaults(func=func)

    p = sub.add_parser("fusion", parents=[common], help="2-fusion knot degree data")
    p.add_argument("--m1", type=int, required=True)
    p.add_argument("--m2", type=int, required=True)
    p.add_argument("--report", choices=("b", "model", "delta", "all"), default="all")
    p.add_argument("--n")
    p.add_argument("--bruteforce", action="store_true")
    p.set_defaults(func=cmd_fusion)

    p = sub.add_parser("check", parents=[common], help="conjecture checks on catalog knots")
    p.add_argument("--catalog", help="'all' or comma-separated names")
    p.add_argument("--pretzel", help="odd p values for pretzel(-2,3,p)")
    p.set_defaults(func=cmd_check)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    _setup_logging(args.quiet)
    try:
        cfg = RunConfig(n_max=args.n_max, pi_max=args.pi_max, max_crossings=args.max_crossings,
                        max_strands=args.max_strands, fmt=args.format, jobs=args.jobs)
        return args.func(args, cfg)
    except CliError as exc:
        return _fail(exc.code, exc.kind, str(exc))
    except BudgetExceeded as exc:
        return _fail(EXIT_BUDGET, "budget", str(exc))
    except HypothesisError as exc:
        return _fail(EXIT_HYPOTHESIS, type(exc).__name__, str(exc))
    except (PresentationError, DiagramError, ParameterError, DomainError, FusionError, ValueError) as exc:
        return _fail(EXIT_INPUT, type(exc).__name__, str(exc))


def _setup_logging(quiet: bool) -> None:
    for h in list(log.handlers):
        log.removeHandler(h)
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter("%(name)s: %(message)s"))
    log.addHandler(handler)
    log.setLevel(logging.WARNING if quiet else logging.INFO)
    log.propagate = False


def _fail(code: int, kind: str, message: str) -> int:
    sys.stderr.write(json.dumps({"error": {"kind": kind, "message": message}}, sort_keys=True) + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
