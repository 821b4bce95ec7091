"""Command-line front-end.

Every command writes one record to ``--out`` (or stdout) and exits with the
``exit_code`` of whatever library error stopped it: 1 parameter pole,
2 domain, 3 convergence, 4 no bracket guarantee, 5 failed verification.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

from . import lommel as lm
from . import verify
from . import zeros as zr
from .errors import DomainError, LommelLabError, ParameterPole

COMMANDS = ("eval", "kernel", "zeros", "classify", "region-map", "verify")
MAPS = ("monotonicity", "zero-regions", "lp-plus")
DEFAULT_STEP = 0.02
DEFAULT_KMAX = 10
EXACT_ROUTES = (lm.EvalRoute.SERIES, lm.EvalRoute.SINE_INTEGRAL, lm.EvalRoute.COSINE_INTEGRAL)
KERNEL_T = tuple(round(0.05 * i, 2) for i in range(1, 20))
VERIFY_FAILED = 5


@dataclass(frozen=True)
class GridSpec:
    mu_min: float
    mu_max: float
    nu_min: float
    nu_max: float
    step: float = DEFAULT_STEP

    @classmethod
    def parse(cls, text: str) -> "GridSpec":
        parts = text.split(":")
        if len(parts) not in (4, 5):
            raise DomainError(f"grid {text!r} is not mu_min:mu_max:nu_min:nu_max[:step]")
        try:
            vals = [float(v) for v in parts]
        except ValueError:
            raise DomainError(f"grid {text!r} has a non-numeric field") from None
        spec = cls(*vals)
        spec.validate()
        return spec

    def validate(self) -> None:
        vals = (self.mu_min, self.mu_max, self.nu_min, self.nu_max, self.step)
        if not all(math.isfinite(v) for v in vals):
            raise DomainError("grid fields must be finite")
        if not self.step > 0:
            raise DomainError(f"grid step {self.step!r} must be positive")
        if self.mu_max < self.mu_min or self.nu_max < self.nu_min:
            raise DomainError("grid ranges must be non-empty")

    @staticmethod
    def _axis(lo: float, hi: float, step: float) -> List[float]:
        n = math.floor((hi - lo) / step + 1e-9)
        return [round(lo + i * step, 12) for i in range(n + 1)]

    def points(self) -> List[Tuple[float, float]]:
        """Row-major cells, first coordinate outer."""
        nus = self._axis(self.nu_min, self.nu_max, self.step)
        return [(m, n) for m in self._axis(self.mu_min, self.mu_max, self.step) for n in nus]


@dataclass
class RunConfig:
    command: str
    mu: Optional[float] = None
    nu: Optional[float] = None
    z: Optional[float] = None
    route: lm.EvalRoute = lm.EvalRoute.SERIES
    k_max: int = DEFAULT_KMAX
    grid: Optional[GridSpec] = None
    map_kind: str = "zero-regions"
    output_path: Optional[str] = None
    format: Optional[str] = None
    seed: int = 0
    tol: Optional[float] = None
    suites: List[str] = field(default_factory=list)

    def params(self) -> lm.LommelParams:
        if self.mu is None or self.nu is None:
            raise DomainError(f"{self.command} needs --mu and --nu")
        return lm.LommelParams(self.mu, self.nu)

    def out_format(self) -> str:
        if self.format:
            return self.format
        return {"region-map": "csv", "verify": "text"}.get(self.command, "json")


@dataclass
class Outcome:
    status: int
    record: Optional[dict] = None
    header: Optional[List[str]] = None
    rows: Optional[List[list]] = None
    text: Optional[str] = None


# --- commands ----------------------------------------------------------------

def run_eval(cfg: RunConfig) -> Outcome:
    p = cfg.params()
    if cfg.z is None:
        raise DomainError("eval needs --z")
    value = lm.evaluate(p, cfg.z, cfg.route)
    also = {}
    for route in lm.EvalRoute:
        try:
            also[route.value] = lm.evaluate(p, cfg.z, route)
        except LommelLabError:
            continue
    exact = [also[r.value] for r in EXACT_ROUTES if r.value in also]
    discrepancy = max(exact) - min(exact) if exact else 0.0
    return Outcome(0, {
        "mu": p.mu, "nu": p.nu, "z": cfg.z, "route": cfg.route.value,
        "value": value, "also": also, "max_route_discrepancy": discrepancy,
    })


def run_kernel(cfg: RunConfig) -> Outcome:
    p = cfg.params()
    profile = zr.kernel_monotonicity(p)
    rows = [[t, lm.kernel_f(p, t), lm.kernel_f_derivative(p, t)] for t in KERNEL_T]
    return Outcome(0, {
        "mu": p.mu, "nu": p.nu, "profile": profile.value,
        "samples": [{"t": t, "f": f, "df": d} for t, f, d in rows],
    }, ["t", "f", "df"], rows)


def run_classify(cfg: RunConfig) -> Outcome:
    p = cfg.params()
    region = zr.region_classify(p)
    profile = zr.kernel_monotonicity(p).value if p.mu > -0.5 else None
    b1, b2 = (p.mu + 3.0 - p.nu) / 2.0, (p.mu + 3.0 + p.nu) / 2.0
    record = {
        "mu": p.mu, "nu": p.nu, "zero_region": region.value,
        "kernel_profile": profile, "b1": b1, "b2": b2,
        "lp_plus": zr.lp_plus_region(b1, b2).value,
    }
    return Outcome(0, record, list(record), [list(record.values())])


ZERO_COLUMNS = ["k", "bracket_lo", "bracket_hi", "root", "residual",
                "asymptotic_estimate", "asymptotic_error"]


def run_zeros(cfg: RunConfig) -> Outcome:
    p = cfg.params()
    rows = []
    for rec in zr.find_zeros(p, cfg.k_max):
        est = zr.asymptotic_zero(p, zr.asymptotic_index(p, rec.k))
        rows.append([rec.k, rec.bracket_lo, rec.bracket_hi, rec.root, rec.residual,
                     est, abs(rec.root - est)])
    region = zr.region_classify(p).value
    return Outcome(0, {
        "mu": p.mu, "nu": p.nu, "region": region,
        "zeros": [dict(zip(ZERO_COLUMNS, r)) for r in rows],
    }, ZERO_COLUMNS, rows)


def _cell_class(kind: str, x: float, y: float) -> str:
    if kind == "lp-plus":
        return zr.lp_plus_region(x, y).value
    p = lm.LommelParams(x, y)
    if kind == "monotonicity":
        if not x > -0.5:
            return "outofdomain"
        return zr.kernel_monotonicity(p).value
    try:
        return zr.region_classify(p).value
    except ParameterPole:
        return "parameterpole"


def run_region_map(cfg: RunConfig) -> Outcome:
    if cfg.grid is None:
        raise DomainError("region-map needs --grid")
    if cfg.map_kind not in MAPS:
        raise DomainError(f"unknown map {cfg.map_kind!r}")
    header = ["b1", "b2", "class"] if cfg.map_kind == "lp-plus" else ["mu", "nu", "class"]
    rows = [[x, y, _cell_class(cfg.map_kind, x, y)] for x, y in cfg.grid.points()]
    return Outcome(0, {"map": cfg.map_kind, "columns": header, "cells": rows}, header, rows)


def run_verify(cfg: RunConfig) -> Outcome:
    try:
        reports = verify.run_suites(cfg.seed, cfg.tol, cfg.suites or None)
    except KeyError as exc:
        raise DomainError(str(exc.args[0])) from None
    ok = all(r.passed for r in reports)
    status = 0 if ok else VERIFY_FAILED
    summary = f"{sum(r.passed for r in reports)}/{len(reports)} suites passed (seed {cfg.seed})"
    rows = [[r.name, "pass" if r.passed else "fail", r.samples, r.worst, r.tol] for r in reports]
    record = {
        "seed": cfg.seed, "all_passed": ok,
        "suites": [{"name": r.name, "passed": r.passed, "samples": r.samples,
                    "worst": r.worst, "tol": r.tol} for r in reports],
    }
    text = "\n".join([r.line() for r in reports] + [summary]) + "\n"
    return Outcome(status, record, ["suite", "status", "samples", "worst", "tol"], rows, text)


HANDLERS = {
    "eval": run_eval, "kernel": run_kernel, "zeros": run_zeros,
    "classify": run_classify, "region-map": run_region_map, "verify": run_verify,
}


# --- serialization -------------------------------------------------------------

def _fmt(v) -> str:
    if isinstance(v, float):
        return repr(v)
    return str(v)


def render(outcome: Outcome, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(outcome.record, allow_nan=False) + "\n"
    if fmt == "text" and outcome.text is not None:
        return outcome.text
    if outcome.header is None:
        # single records without a table (eval) still get a two-line CSV
        header, rows = list(outcome.record), [list(outcome.record.values())]
        rows = [[json.dumps(v, allow_nan=False) if isinstance(v, dict) else v for v in rows[0]]]
    else:
        header, rows = outcome.header, outcome.rows
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_fmt(v) for v in row])
    return buf.getvalue()


def error_record(exc: Exception, status: int) -> dict:
    return {"error": type(exc).__name__, "message": str(exc), "exit_code": status}


def execute(cfg: RunConfig) -> Tuple[int, str]:
    """Run ``cfg``; returns the exit status and the text to emit."""
    fmt = cfg.out_format()
    try:
        outcome = HANDLERS[cfg.command](cfg)
        return outcome.status, render(outcome, fmt)
    except LommelLabError as exc:
        record = error_record(exc, exc.exit_code)
    except ValueError as exc:  # e.g. a non-finite value refused by the JSON writer
        record = error_record(exc, DomainError.exit_code)
    return record["exit_code"], json.dumps(record) + "\n"


# --- argument parsing ------------------------------------------------------------

def _route(text: str) -> lm.EvalRoute:
    try:
        return lm.EvalRoute(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"unknown route {text!r}") from None


def _default_seed() -> int:
    env = os.environ.get("LOMMEL_LAB_SEED")
    return int(env) if env else 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="lommel-lab", description=__doc__.splitlines()[0])
    ap.add_argument("--command", required=True, choices=COMMANDS)
    ap.add_argument("--mu", type=float)
    ap.add_argument("--nu", type=float)
    ap.add_argument("--z", type=float)
    ap.add_argument("--route", type=_route, default=lm.EvalRoute.SERIES,
                    metavar="{series,sine,cosine,asymptotic}")
    ap.add_argument("--kmax", type=int, default=DEFAULT_KMAX)
    ap.add_argument("--grid", metavar="MU_MIN:MU_MAX:NU_MIN:NU_MAX[:STEP]")
    ap.add_argument("--map", dest="map_kind", choices=MAPS, default="zero-regions")
    ap.add_argument("--format", choices=("json", "csv"))
    ap.add_argument("--out", metavar="PATH")
    ap.add_argument("--seed", type=int, default=None,
                    help="verification seed (default: $LOMMEL_LAB_SEED or 0)")
    ap.add_argument("--tol", type=float, help="override every numeric verification tolerance")
    ap.add_argument("--suite", action="append", default=[], help="run only this suite (repeatable)")
    return ap


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    grid = GridSpec.parse(ns.grid) if ns.grid is not None else None
    return RunConfig(
        command=ns.command, mu=ns.mu, nu=ns.nu, z=ns.z, route=ns.route, k_max=ns.kmax,
        grid=grid, map_kind=ns.map_kind, output_path=ns.out, format=ns.format,
        seed=_default_seed() if ns.seed is None else ns.seed, tol=ns.tol, suites=ns.suite,
    )


def main(argv: Optional[Sequence[str]] = None) -> int:
    ns = build_parser().parse_args(argv)
    try:
        cfg = config_from_args(ns)
    except DomainError as exc:
        sys.stdout.write(json.dumps(error_record(exc, exc.exit_code)) + "\n")
        return exc.exit_code
    status, text = execute(cfg)
    if cfg.output_path and status in (0, VERIFY_FAILED):
        with open(cfg.output_path, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
