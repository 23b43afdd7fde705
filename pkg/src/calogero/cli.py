"""Command-line front end.

Subcommands: spectrum | state | sweep | verify | wavefunction.
Complex values are written "re,im"; grids are "start:stop:count" per real
axis (append a second triple after a comma for a re x im product grid).
CSV output carries 17 significant digits; JSON is pretty-printed with
sorted keys, so identical configurations produce byte-identical files.
Exit codes: 0 success, 2 config error, 3 domain error, 4 verification
failure.  CALOGERO_THREADS caps sweep parallelism.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .coherent import BGLabel, KPLabel, bg_state, kp_state_closed
from .intelligent import ISLabel, is_state_fock, variance_report
from .model import ModelParams, energy, ladder_matrices, wavefunction
from .verify import VerificationSuite

SCHEMA_VERSION = 1

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_DOMAIN = 3
EXIT_VERIFY = 4


class ConfigError(Exception):
    """Invalid command-line configuration."""


@dataclass(frozen=True)
class RunConfig:
    """Validated common settings for one invocation."""

    eta: float
    beta: float
    trunc: int
    out_format: str
    out_path: str | None

    def __post_init__(self):
        if self.trunc < 4:
            raise ConfigError(f"truncation must be >= 4, got {self.trunc}")
        if self.out_format not in ("json", "csv"):
            raise ConfigError(f"format must be json or csv, got {self.out_format!r}")

    @property
    def params(self) -> ModelParams:
        return ModelParams(eta=self.eta, beta=self.beta)


def _fmt(value: float) -> str:
    return f"{value:.17g}"


def parse_complex(text: str) -> complex:
    """Parse "re" or "re,im" into a complex number."""
    parts = text.split(",")
    try:
        if len(parts) == 1:
            return complex(float(parts[0]), 0.0)
        if len(parts) == 2:
            return complex(float(parts[0]), float(parts[1]))
    except ValueError as exc:
        raise ConfigError(f"cannot parse complex value {text!r}: {exc}") from exc
    raise ConfigError(f"cannot parse complex value {text!r}")


def _parse_axis(text: str) -> np.ndarray:
    pieces = text.split(":")
    if len(pieces) != 3:
        raise ConfigError(f"grid axis must be start:stop:count, got {text!r}")
    try:
        start, stop = float(pieces[0]), float(pieces[1])
        count = int(pieces[2])
    except ValueError as exc:
        raise ConfigError(f"cannot parse grid axis {text!r}: {exc}") from exc
    if count < 1:
        raise ConfigError(f"grid count must be >= 1, got {count}")
    return np.linspace(start, stop, count)


def parse_grid(text: str) -> list[complex]:
    """Parse "a:b:n" (real axis) or "a:b:n,c:d:m" (re x im product)."""
    axes = text.split(",")
    if len(axes) == 1:
        return [complex(v, 0.0) for v in _parse_axis(axes[0])]
    if len(axes) == 2:
        re_axis = _parse_axis(axes[0])
        im_axis = _parse_axis(axes[1])
        return [complex(a, b) for a in re_axis for b in im_axis]
    raise ConfigError(f"grid must have one or two axes, got {text!r}")


def _write_output(config: RunConfig, text: str) -> None:
    if config.out_path:
        with open(config.out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _dump_json(payload: dict) -> str:
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def _csv(rows: list[list[str]], header: str) -> str:
    return "\n".join([header] + [",".join(row) for row in rows]) + "\n"


def _report_dict(report) -> dict:
    return {
        "mean_A": report.mean_A,
        "mean_B": report.mean_B,
        "var_A": report.var_A,
        "var_B": report.var_B,
        "mean_H": report.mean_H,
        "mean_F": report.mean_F,
        "covariance": report.covariance,
        "commutator_mean": {
            "re": report.commutator_mean.real,
            "im": report.commutator_mean.imag,
        },
        "rs_lhs": report.rs_lhs,
        "rs_rhs": report.rs_rhs,
        "saturation_residual": report.saturation_residual,
    }


def cmd_spectrum(config: RunConfig) -> int:
    params = config.params
    levels = [(n, energy(n, params)) for n in range(config.trunc)]
    if config.out_format == "csv":
        rows = [[str(n), _fmt(e)] for n, e in levels]
        _write_output(config, _csv(rows, "n,energy"))
    else:
        payload = {
            "schema_version": SCHEMA_VERSION,
            "params": {"eta": params.eta, "beta": params.beta, "e0": params.e0},
            "levels": [{"n": n, "energy": e} for n, e in levels],
        }
        _write_output(config, _dump_json(payload))
    return EXIT_OK


def _build_state(kind: str, z: complex, lam: complex | None, config: RunConfig):
    params = config.params
    if kind == "bg":
        return bg_state(BGLabel(z, params.beta), params, config.trunc)
    if kind == "kp":
        return kp_state_closed(KPLabel(z, params.beta), params, config.trunc)
    if kind == "intelligent":
        if lam is None:
            raise ConfigError("kind=intelligent requires --lambda")
        return is_state_fock(ISLabel(z, lam, params.beta), params, config.trunc)
    raise ConfigError(f"unknown state kind {kind!r}")


def cmd_state(config: RunConfig, kind: str, z: complex, lam: complex | None) -> int:
    params = config.params
    state = _build_state(kind, z, lam, config)
    mats = ladder_matrices(params, config.trunc)
    report = variance_report(state, mats)
    coeffs = [
        (n, c.real, c.imag, abs(c) ** 2)
        for n, c in enumerate(state.coeffs)
        if abs(c) > 0.0
    ]
    if config.out_format == "csv":
        rows = [[str(n), _fmt(re), _fmt(im), _fmt(p)] for n, re, im, p in coeffs]
        _write_output(config, _csv(rows, "n,re,im,abs2"))
    else:
        payload = {
            "schema_version": SCHEMA_VERSION,
            "params": {"eta": params.eta, "beta": params.beta, "e0": params.e0},
            "kind": kind,
            "label": {
                "z": {"re": z.real, "im": z.imag},
                "lambda": None
                if lam is None
                else {"re": lam.real, "im": lam.imag},
            },
            "coefficients": [
                {"n": n, "re": re, "im": im, "abs2": p} for n, re, im, p in coeffs
            ],
            "variance_report": _report_dict(report),
            "tail_mass": state.tail_mass(),
        }
        _write_output(config, _dump_json(payload))
    return EXIT_OK


def _sweep_row(task) -> list[str]:
    lam, z, params, trunc, mats = task
    base = [_fmt(lam.real), _fmt(lam.imag), _fmt(z.real), _fmt(z.imag)]
    try:
        state = is_state_fock(ISLabel(z, lam, params.beta), params, trunc)
        report = variance_report(state, mats)
        return base + [
            _fmt(report.var_A),
            _fmt(report.var_B),
            _fmt(report.covariance),
            _fmt(report.saturation_residual),
            "",
        ]
    except Exception as exc:  # per-row failure stays in the table
        return base + ["", "", "", "", f"error: {exc}"]


def cmd_sweep(config: RunConfig, lam_grid: list[complex], z_grid: list[complex]) -> int:
    if config.out_format != "csv":
        raise ConfigError("sweep emits CSV; use --format csv")
    if not lam_grid or not z_grid:
        raise ConfigError("sweep requires non-empty lambda and z grids")
    params = config.params
    mats = ladder_matrices(params, config.trunc)
    tasks = [
        (lam, z, params, config.trunc, mats) for lam in lam_grid for z in z_grid
    ]
    env_threads = os.environ.get("CALOGERO_THREADS", "")
    workers = int(env_threads) if env_threads else (os.cpu_count() or 1)
    workers = max(1, min(workers, len(tasks)))
    with ThreadPoolExecutor(max_workers=workers) as pool:
        rows = list(pool.map(_sweep_row, tasks))
    header = "re_lambda,im_lambda,re_z,im_z,var_A,var_B,covariance,saturation_residual,error"
    _write_output(config, _csv(rows, header))
    succeeded = sum(1 for row in rows if row[-1] == "")
    return EXIT_OK if succeeded >= 1 else EXIT_DOMAIN


def cmd_verify(config: RunConfig) -> int:
    params = config.params
    suite = VerificationSuite(params, trunc=config.trunc)
    summary = suite.run()
    payload = {
        "params": summary["params"],
        "checks": summary["checks"],
        "discrepancies": summary["discrepancies"],
        "config": {
            "schema_version": SCHEMA_VERSION,
            "eta": params.eta,
            "beta": params.beta,
            "trunc": config.trunc,
            "radial_nodes": suite.quad.radial_nodes,
            "angular_nodes": suite.quad.angular_nodes,
            "radial_cutoff": suite.quad.radial_cutoff,
        },
    }
    _write_output(config, _dump_json(payload))
    return EXIT_OK if suite.all_passed() else EXIT_VERIFY


def cmd_wavefunction(config: RunConfig, n: int, x_max: float, points: int) -> int:
    if n < 0:
        raise ConfigError(f"level index must be >= 0, got {n}")
    if x_max <= 0.0:
        raise ConfigError(f"x-max must be positive, got {x_max}")
    if points < 2:
        raise ConfigError(f"points must be >= 2, got {points}")
    params = config.params
    x = x_max * np.arange(1, points + 1) / points  # grid inside (0, x_max]
    psi = wavefunction(n, x, params)
    density = psi * psi
    cumulative = np.empty_like(density)
    cumulative[0] = 0.5 * x[0] * density[0]  # psi(0+) = 0 for e0 > 1
    for j in range(1, points):
        cumulative[j] = cumulative[j - 1] + 0.5 * (x[j] - x[j - 1]) * (
            density[j] + density[j - 1]
        )
    if config.out_format == "csv":
        rows = [
            [_fmt(x[j]), _fmt(psi[j]), _fmt(cumulative[j])] for j in range(points)
        ]
        _write_output(config, _csv(rows, "x,psi,cumulative_norm"))
    else:
        payload = {
            "schema_version": SCHEMA_VERSION,
            "params": {"eta": params.eta, "beta": params.beta, "e0": params.e0},
            "n": n,
            "samples": [
                {"x": float(x[j]), "psi": float(psi[j]), "cumulative_norm": float(cumulative[j])}
                for j in range(points)
            ],
        }
        _write_output(config, _dump_json(payload))
    return EXIT_OK


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="calogero",
        description="Coherent and intelligent states of the two-body "
        "Calogero model in a truncated Fock basis.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--eta", type=float, default=1.0, help="coupling, >= 0")
        p.add_argument("--beta", type=float, default=0.0, help="phase parameter")
        p.add_argument("--trunc", type=int, default=200, help="Fock truncation")
        p.add_argument("--format", dest="out_format", choices=("json", "csv"), default="json")
        p.add_argument("--out", dest="out_path", default=None, help="output path (default stdout)")

    p = sub.add_parser("spectrum", help="energy levels e_n = 2n + e0")
    common(p)

    p = sub.add_parser("state", help="one state: coefficients + variance report")
    common(p)
    p.add_argument("--kind", choices=("bg", "kp", "intelligent"), required=True)
    p.add_argument("--z", required=True, help='complex label "re,im"')
    p.add_argument("--lambda", dest="lam", default=None, help='squeezing "re,im"')

    p = sub.add_parser("sweep", help="variance table over a lambda x z grid")
    common(p)
    p.set_defaults(out_format="csv")
    p.add_argument("--lambda-grid", dest="lam_grid", required=True, help="start:stop:count[,start:stop:count]")
    p.add_argument("--z-grid", dest="z_grid", required=True, help="start:stop:count[,start:stop:count]")

    p = sub.add_parser("verify", help="run the verification suite, emit JSON report")
    common(p)

    p = sub.add_parser("wavefunction", help="sampled eigenfunction with running norm")
    common(p)
    p.add_argument("--n", type=int, default=0)
    p.add_argument("--x-max", dest="x_max", type=float, default=12.0)
    p.add_argument("--points", type=int, default=2000)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse reports config errors with code 2
        return EXIT_CONFIG if exc.code else EXIT_OK
    try:
        config = RunConfig(
            eta=args.eta,
            beta=args.beta,
            trunc=args.trunc,
            out_format=args.out_format,
            out_path=args.out_path,
        )
        if args.command == "spectrum":
            return cmd_spectrum(config)
        if args.command == "state":
            lam = parse_complex(args.lam) if args.lam is not None else None
            return cmd_state(config, args.kind, parse_complex(args.z), lam)
        if args.command == "sweep":
            return cmd_sweep(config, parse_grid(args.lam_grid), parse_grid(args.z_grid))
        if args.command == "verify":
            return cmd_verify(config)
        if args.command == "wavefunction":
            return cmd_wavefunction(config, args.n, args.x_max, args.points)
        raise ConfigError(f"unknown command {args.command!r}")
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (ValueError, OverflowError) as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
