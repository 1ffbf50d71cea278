"""SNR scan assembling every curve of the detection-performance comparison.

For each SNR on a dB grid: closed-form D and V, the third moment T by the
displaced-Fock double sum, the finite-size brackets, their per-copy error
exponents, and the classical heterodyne benchmark.  Rows are emitted as CSV
or JSON; two runs with the same configuration produce byte-identical output
at any worker count, since every row is computed in isolation and assembled
in grid order.
"""

from __future__ import annotations

import argparse
import functools
import json
import sys
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, fields
from typing import Optional

import numpy as np

from .bounds import BERRY_ESSEEN_C, DetectionParams, error_exponent, refined_bracket
from .displaced import ThirdMomentResult, TruncationPolicy, third_moment
from .errors import CapExceeded, MassDeficit, SteinRadarError
from .gaussian import ThermalScenario, thermal_closed_forms
from .marcum import heterodyne_log_pmd

PER_COPY = "per-copy"
TOTAL = "total"


@dataclass(frozen=True)
class ScanConfig:
    """Scan parameters; defaults reproduce the headline comparison."""

    p_fa: float = 1e-3
    m: int = 5000
    nb: float = 600.0
    snr_db_min: float = -15.0
    snr_db_max: float = 5.0
    points: int = 200
    tail_tol: float = 1e-10
    c: float = BERRY_ESSEEN_C
    benchmark_m_convention: str = PER_COPY
    output_format: str = "csv"
    output_path: Optional[str] = None
    keep_partial: bool = False
    workers: int = 1

    def __post_init__(self):
        if self.points < 2:
            raise ValueError("points must be >= 2")
        if not (self.snr_db_min < self.snr_db_max):
            raise ValueError("snr_db_min must be < snr_db_max")
        if self.benchmark_m_convention not in (PER_COPY, TOTAL):
            raise ValueError(f"benchmark_m_convention must be '{PER_COPY}' or '{TOTAL}'")
        if self.output_format not in ("csv", "json"):
            raise ValueError("output format must be 'csv' or 'json'")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")
        # Wrapped-type invariants fail fast here rather than mid-scan.
        DetectionParams(p_fa=self.p_fa, m=self.m, c=self.c)
        TruncationPolicy(tail_tol=self.tail_tol)
        if not (self.nb > 0):
            raise ValueError("nb must be > 0")


# Fields that define the numbers; execution/presentation knobs are excluded
# so that emitted metadata never varies with how the scan was run.
_CONFIG_META_FIELDS = (
    "p_fa", "m", "nb", "snr_db_min", "snr_db_max", "points", "tail_tol", "c",
    "benchmark_m_convention",
)

_ROW_FIELDS = (
    "snr_db", "gamma", "d", "v", "t", "captured_mass", "eps_first_order",
    "eps_refined_upper", "eps_refined_lower", "upper_valid", "lower_valid",
    "eps_lambda_upper", "eps_lambda_lower", "eps_marcum",
)


@dataclass(frozen=True)
class ScanRow:
    """One grid point: moments, exponents of every bound, benchmark."""

    snr_db: float
    gamma: float
    d: float
    v: float
    t: float
    captured_mass: float
    eps_first_order: float
    eps_refined_upper: Optional[float]
    eps_refined_lower: Optional[float]
    upper_valid: bool
    lower_valid: bool
    eps_lambda_upper: float
    eps_lambda_lower: float
    eps_marcum: float


@functools.lru_cache(maxsize=4096)
def _cached_third_moment(nb: float, x: float, tail_tol: float) -> ThirdMomentResult:
    scenario = ThermalScenario(nb=nb, eta=1.0, ns=x)
    return third_moment(scenario, TruncationPolicy(tail_tol=tail_tol))


def _compute_row(config: ScanConfig, snr_db: float) -> ScanRow:
    gamma = 10.0 ** (snr_db / 10.0)
    scenario = ThermalScenario(nb=config.nb, eta=1.0, ns=gamma * config.nb)
    params = DetectionParams(p_fa=config.p_fa, m=config.m, c=config.c)
    stats = thermal_closed_forms(scenario)
    tm = _cached_third_moment(config.nb, scenario.eta * scenario.ns, config.tail_tol)
    bounds = refined_bracket(stats.with_t(tm.t), params)
    if config.benchmark_m_convention == PER_COPY:
        eps_marcum = -heterodyne_log_pmd(gamma, config.p_fa)
    else:
        eps_marcum = error_exponent(
            heterodyne_log_pmd(config.m * gamma, config.p_fa), config.m
        )
    return ScanRow(
        snr_db=snr_db,
        gamma=gamma,
        d=stats.d,
        v=stats.v,
        t=tm.t,
        captured_mass=tm.captured_mass,
        eps_first_order=stats.d,
        eps_refined_upper=(
            error_exponent(bounds.log_refined_upper, config.m)
            if bounds.refined_upper_valid
            else None
        ),
        eps_refined_lower=(
            error_exponent(bounds.log_refined_lower, config.m)
            if bounds.refined_lower_valid
            else None
        ),
        upper_valid=bounds.refined_upper_valid,
        lower_valid=bounds.refined_lower_valid,
        eps_lambda_upper=error_exponent(bounds.log_lambda_upper, config.m),
        eps_lambda_lower=error_exponent(bounds.log_lambda_lower, config.m),
        eps_marcum=eps_marcum,
    )


def _row_or_failure(config: ScanConfig, snr_db: float):
    try:
        return _compute_row(config, snr_db)
    except (CapExceeded, MassDeficit) as err:
        return (snr_db, err)


def run_scan(config: ScanConfig) -> list[ScanRow]:
    """All scan rows, ordered by snr_db ascending.

    On a numerical failure (CapExceeded, MassDeficit) the scan aborts with
    the offending snr_db in the message, unless config.keep_partial is set,
    in which case the failed rows are skipped with a warning each.
    """
    grid = [float(s) for s in np.linspace(config.snr_db_min, config.snr_db_max, config.points)]
    if config.workers > 1:
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            results = list(pool.map(_row_or_failure, [config] * len(grid), grid))
    else:
        results = [_row_or_failure(config, s) for s in grid]
    rows: list[ScanRow] = []
    for res in results:
        if isinstance(res, ScanRow):
            rows.append(res)
        else:
            snr_db, err = res
            if config.keep_partial:
                warnings.warn(f"scan point snr_db={snr_db:g} failed: {err}")
            else:
                raise type(err)(f"scan point snr_db={snr_db:g} failed: {err}")
    return rows


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    return f"{value:.12g}"


def emit(rows: list[ScanRow], config: ScanConfig, meta: bool = False) -> bytes:
    """Serialize rows per config.output_format.

    CSV: exact header naming every row field in order, floats with 12
    significant digits, LF line endings, invalid bound sides as empty
    fields; `meta` prepends the defining config as '# ' comment lines.
    JSON: an object {"config": ..., "rows": [...]} with booleans for the
    validity flags and null for invalid sides.
    """
    if not rows:
        raise ValueError("rows must be nonempty")
    cfg = {name: getattr(config, name) for name in _CONFIG_META_FIELDS}
    if config.output_format == "json":
        payload = {
            "config": cfg,
            "rows": [
                {name: getattr(row, name) for name in _ROW_FIELDS} for row in rows
            ],
        }
        return (json.dumps(payload, indent=2) + "\n").encode()
    lines = []
    if meta:
        lines.extend(f"# {name} = {value!r}" for name, value in cfg.items())
    lines.append(",".join(_ROW_FIELDS))
    for row in rows:
        lines.append(",".join(_fmt(getattr(row, name)) for name in _ROW_FIELDS))
    return ("\n".join(lines) + "\n").encode()


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="steinradar-scan",
        description="Sweep SNR and tabulate finite-size detection-error "
        "exponents against the heterodyne benchmark.",
    )
    parser.add_argument("--pfa", type=float, default=1e-3, help="false-alarm probability")
    parser.add_argument("--copies", type=int, default=5000, help="number of copies M")
    parser.add_argument("--nb", type=float, default=600.0, help="background thermal photons")
    parser.add_argument("--snr-db-min", type=float, default=-15.0)
    parser.add_argument("--snr-db-max", type=float, default=5.0)
    parser.add_argument("--points", type=int, default=200)
    parser.add_argument("--tail-tol", type=float, default=1e-10,
                        help="neglected probability mass per scan point")
    parser.add_argument("--bek-c", type=float, default=BERRY_ESSEEN_C,
                        help="Berry-Esseen constant")
    parser.add_argument("--benchmark-m-convention", choices=[PER_COPY, TOTAL],
                        default=PER_COPY,
                        help="how M enters the heterodyne benchmark exponent")
    parser.add_argument("--format", choices=["csv", "json"], default="csv")
    parser.add_argument("--output", default=None, help="output path (default: stdout)")
    parser.add_argument("--meta", action="store_true",
                        help="embed the config as CSV comment lines")
    parser.add_argument("--keep-partial", action="store_true",
                        help="skip failed scan points instead of aborting")
    parser.add_argument("--workers", type=int, default=1,
                        help="parallel row evaluation (output is identical at any level)")
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        config = ScanConfig(
            p_fa=args.pfa,
            m=args.copies,
            nb=args.nb,
            snr_db_min=args.snr_db_min,
            snr_db_max=args.snr_db_max,
            points=args.points,
            tail_tol=args.tail_tol,
            c=args.bek_c,
            benchmark_m_convention=args.benchmark_m_convention,
            output_format=args.format,
            output_path=args.output,
            keep_partial=args.keep_partial,
            workers=args.workers,
        )
    except ValueError as err:
        print(f"steinradar-scan: config error: {err}", file=sys.stderr)
        return 2
    try:
        rows = run_scan(config)
        payload = emit(rows, config, meta=args.meta)
    except SteinRadarError as err:
        print(f"steinradar-scan: numerical failure: {err}", file=sys.stderr)
        return 3
    if config.output_path is None:
        sys.stdout.buffer.write(payload)
        sys.stdout.buffer.flush()
    else:
        try:
            with open(config.output_path, "wb") as fh:
                fh.write(payload)
        except OSError as err:
            print(f"steinradar-scan: cannot write {config.output_path}: {err}",
                  file=sys.stderr)
            return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
