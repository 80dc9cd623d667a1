"""Command-line interface: performance points, figure sweeps, verification.

Exit codes: 0 success, 2 invalid input, 3 I/O error, 4 verification failure.
CSV output starts with one '#' metadata line (tool version, command line and
the sweep geometry), uses 9 significant digits and LF line endings, and leaves
fields empty where the engine is non-operational unless --raw is given.
"""

from __future__ import annotations

import argparse
import json
import math
import shlex
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import __version__
from .bath_oracle import (
    _scalar_fixed_point,
    brute_force_performance,
    jc_time_scan,
    scan_lambda_max,
)
from .engine import (
    EngineParams,
    check_laws,
    optimal_performance,
    run_cycle,
)
from .ergotropy import WorkPermutation
from .populations import qubit_population
from .restrictions import (
    JC_BRANCH_POINT,
    RestrictionModel,
    engine_params_from,
    eta_finite_bath,
    lambda_max_finite_bath,
    lambda_max_jc,
    lambda_max_jc_raw,
)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_IO = 3
EXIT_VERIFY = 4

_AXIS_COLUMNS = {"ratio": "ratio", "bh": "beta_h_omega", "bc": "beta_c_omega"}


def _as_float(name: str, value) -> float:
    try:
        result = float(value)
    except (TypeError, ValueError):
        raise ValueError(f"{name} must be a number, got {value!r}") from None
    if not math.isfinite(result):
        raise ValueError(f"{name} must be finite, got {result!r}")
    return result


def _as_int(name: str, value) -> int:
    try:
        result = int(value)
    except (TypeError, ValueError):
        raise ValueError(f"{name} must be an integer, got {value!r}") from None
    return result


def _required(args, name: str, flag: str):
    value = getattr(args, name)
    if value is None:
        raise ValueError(f"{flag} is required (flag or config file)")
    return value


def _apply_config(args: argparse.Namespace) -> None:
    """Fill unset options from the JSON config file; flags take precedence."""
    path = getattr(args, "config", None)
    if not path:
        return
    with open(path) as handle:
        data = json.load(handle)
    if not isinstance(data, dict):
        raise ValueError("config file must hold a JSON object")
    for key, value in data.items():
        attr = key.replace("-", "_")
        if attr in ("config", "func", "command") or not hasattr(args, attr):
            raise ValueError(f"unknown config key {key!r}")
        if getattr(args, attr) is None:
            setattr(args, attr, value)


def _parse_model(name: str, text) -> RestrictionModel:
    if not isinstance(text, str):
        raise ValueError(f"{name} must be a restriction spec string, got {text!r}")
    return RestrictionModel.parse(text)


def _warn_clamped(side: str, model: RestrictionModel, beta_omega: float, seen: set) -> None:
    key = (side, model.label)
    if model.clamped(beta_omega) and key not in seen:
        seen.add(key)
        print(
            f"warning: {side} cap clamped to 1 at beta_omega={beta_omega:.6g} "
            f"(stated value {lambda_max_jc_raw(beta_omega):.6g})",
            file=sys.stderr,
        )


# ---------------------------------------------------------------------------
# sweep machinery shared by sweep, tradeoff and figures


@dataclass(frozen=True)
class SweepConfig:
    axis: str
    values: tuple[float, ...]
    beta_h_omega: float | None
    beta_c_omega: float | None
    models: tuple[tuple[str, RestrictionModel, RestrictionModel], ...]
    include_carnot: bool
    raw: bool


@dataclass(frozen=True)
class SweepPoint:
    x: float
    beta_h_omega: float
    beta_c_omega: float
    cells: tuple[tuple[float | None, float | None, bool], ...]
    carnot: float | None


def _sweep_models(args) -> tuple[tuple[str, RestrictionModel, RestrictionModel], ...]:
    models = getattr(args, "models", None)
    hot = getattr(args, "hot", None)
    cold = getattr(args, "cold", None)
    if models and (hot or cold):
        raise ValueError("--models excludes --hot/--cold")
    entries: list[tuple[str, RestrictionModel, RestrictionModel]] = []
    if models:
        if isinstance(models, str):
            specs = [s for s in models.split(",") if s.strip()]
        else:
            specs = [str(s) for s in models]
        if not specs:
            raise ValueError("--models needs at least one spec")
        for spec in specs:
            model = _parse_model("--models entry", spec)
            entries.append((model.label, model, model))
    else:
        hot_model = _parse_model("--hot", hot or "unrestricted")
        cold_model = _parse_model("--cold", cold or "unrestricted")
        label = (
            hot_model.label
            if hot_model == cold_model
            else f"{hot_model.label}-{cold_model.label}"
        )
        entries.append((label, hot_model, cold_model))
    labels = [label for label, _, _ in entries]
    if len(set(labels)) != len(labels):
        raise ValueError(f"duplicate model labels in {labels!r}")
    return tuple(entries)


def _sweep_config(args, raw_allowed: bool = True) -> SweepConfig:
    axis = getattr(args, "axis", None) or "ratio"
    if axis not in _AXIS_COLUMNS:
        raise ValueError(f"--axis must be one of {sorted(_AXIS_COLUMNS)}, got {axis!r}")
    lo = _as_float("--ratio-min", args.ratio_min if args.ratio_min is not None else 1.05)
    hi = _as_float("--ratio-max", args.ratio_max if args.ratio_max is not None else 10.0)
    steps = _as_int("--ratio-steps", args.ratio_steps if args.ratio_steps is not None else 200)
    if steps < 2:
        raise ValueError(f"--ratio-steps must be >= 2, got {steps}")
    if not lo < hi:
        raise ValueError(f"--ratio-min must be below --ratio-max, got {lo!r} >= {hi!r}")
    if lo <= 0.0:
        raise ValueError(f"swept values must be positive, got minimum {lo!r}")
    beta_h = None if args.bh is None else _as_float("--bh", args.bh)
    beta_c = None if args.bc is None else _as_float("--bc", args.bc)
    if axis in ("ratio", "bc"):
        beta_h = 0.2 if beta_h is None else beta_h
    if axis == "bh" and beta_c is None:
        raise ValueError("--bc is required when sweeping beta_h_omega")
    raw = bool(getattr(args, "raw", None)) if raw_allowed else False
    return SweepConfig(
        axis=axis,
        values=tuple(float(x) for x in np.linspace(lo, hi, steps)),
        beta_h_omega=beta_h,
        beta_c_omega=beta_c,
        models=_sweep_models(args),
        include_carnot=bool(getattr(args, "carnot", None)),
        raw=raw,
    )


def _point_betas(cfg: SweepConfig, x: float) -> tuple[float, float]:
    if cfg.axis == "ratio":
        return cfg.beta_h_omega, cfg.beta_h_omega * x
    if cfg.axis == "bh":
        return x, cfg.beta_c_omega
    return cfg.beta_h_omega, x


def _sweep_points(cfg: SweepConfig) -> list[SweepPoint]:
    points = []
    seen_warnings: set = set()
    for x in cfg.values:
        beta_h, beta_c = _point_betas(cfg, x)
        cells = []
        for _, hot, cold in cfg.models:
            _warn_clamped("hot", hot, beta_h, seen_warnings)
            _warn_clamped("cold", cold, beta_c, seen_warnings)
            params = engine_params_from(hot, cold, beta_h, beta_c)
            point = optimal_performance(params)
            bhw = beta_h * point.w_max
            cells.append((point.eta_max, bhw, point.operational))
        carnot = 1.0 - beta_h / beta_c if beta_c > 0.0 else None
        points.append(SweepPoint(x, beta_h, beta_c, tuple(cells), carnot))
    return points


def _sweep_header(cfg: SweepConfig) -> list[str]:
    header = [_AXIS_COLUMNS[cfg.axis]]
    for label, _, _ in cfg.models:
        header.extend([f"eta_{label}", f"bhw_{label}"])
    if cfg.include_carnot:
        header.append("eta_carnot")
    return header


def _sweep_rows(cfg: SweepConfig, drop_inoperative_rows: bool) -> list[list[float | None]]:
    rows = []
    for point in _sweep_points(cfg):
        if drop_inoperative_rows and not cfg.raw and not any(op for _, _, op in point.cells):
            continue
        row: list[float | None] = [point.x]
        for eta, bhw, operational in point.cells:
            show = operational or cfg.raw
            row.append(eta if show else None)
            row.append(bhw if show else None)
        if cfg.include_carnot:
            row.append(point.carnot)
        rows.append(row)
    return rows


def _format_cell(value: float | None) -> str:
    return "" if value is None else format(float(value), ".9g")


def _meta_line(args, cfg: SweepConfig | None = None) -> str:
    argv = getattr(args, "_argv", [])
    command = shlex.join(["threestroke", *argv])
    parts = [f"threestroke {__version__}", command]
    if cfg is not None:
        fixed = []
        if cfg.axis in ("ratio", "bc"):
            fixed.append(f"beta_h_omega={cfg.beta_h_omega:.9g}")
        if cfg.axis == "bh":
            fixed.append(f"beta_c_omega={cfg.beta_c_omega:.9g}")
        models = ",".join(label for label, _, _ in cfg.models)
        parts.append(f"axis={cfg.axis} {' '.join(fixed)} models={models}")
    return "# " + " | ".join(parts)


def _emit_csv(path, meta: str, header: list[str], rows) -> None:
    lines = [meta, ",".join(header)]
    lines.extend(",".join(_format_cell(cell) for cell in row) for row in rows)
    text = "\n".join(lines) + "\n"
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w", newline="") as handle:
            handle.write(text)


# ---------------------------------------------------------------------------
# commands


def cmd_perf(args) -> int:
    beta_h = _as_float("--bh", _required(args, "bh", "--bh"))
    beta_c = _as_float("--bc", _required(args, "bc", "--bc"))
    hot = _parse_model("--hot", getattr(args, "hot", None) or "unrestricted")
    cold = _parse_model("--cold", getattr(args, "cold", None) or "unrestricted")
    seen: set = set()
    _warn_clamped("hot", hot, beta_h, seen)
    _warn_clamped("cold", cold, beta_c, seen)
    params = engine_params_from(hot, cold, beta_h, beta_c)
    point = optimal_performance(params)
    payload = {
        "beta_h_omega": params.beta_h_omega,
        "beta_c_omega": params.beta_c_omega,
        "hot": hot.label,
        "cold": cold.label,
        "lambda_h_max": params.lambda_h_max,
        "lambda_c_max": params.lambda_c_max,
        "p_opt": point.p_opt,
        "w_max_over_omega": point.w_max,
        "eta_max": point.eta_max,
        "eta_carnot": None if beta_c == 0.0 else params.carnot_efficiency(),
        "operational": point.operational,
        "cold_hotter": params.cold_hotter,
    }
    print(json.dumps(payload, indent=2, sort_keys=True))
    return EXIT_OK


def cmd_sweep(args) -> int:
    cfg = _sweep_config(args)
    rows = _sweep_rows(cfg, drop_inoperative_rows=False)
    _emit_csv(args.out, _meta_line(args, cfg), _sweep_header(cfg), rows)
    return EXIT_OK


def cmd_tradeoff(args) -> int:
    cfg = _sweep_config(args)
    rows = _sweep_rows(cfg, drop_inoperative_rows=True)
    _emit_csv(args.out, _meta_line(args, cfg), _sweep_header(cfg), rows)
    return EXIT_OK


def cmd_figures(args) -> int:
    out_dir = Path(args.out or "figures-data")
    out_dir.mkdir(parents=True, exist_ok=True)
    steps = _as_int("--ratio-steps", args.ratio_steps if args.ratio_steps is not None else 200)
    presets = {
        "fig2.csv": ("sweep", "unrestricted,fb:15,fb:10,fb:5", False),
        "fig3.csv": ("sweep", "unrestricted,fb:15,fb:10,fb:5", False),
        "fig4.csv": ("sweep", "unrestricted,fb:10,jc", True),
        "fig5.csv": ("tradeoff", "unrestricted,fb:10,fb:5,jc", False),
    }
    for name, (kind, models, carnot) in presets.items():
        preset_args = argparse.Namespace(
            _argv=getattr(args, "_argv", []),
            axis="ratio",
            bh=args.bh,
            bc=None,
            ratio_min=args.ratio_min,
            ratio_max=args.ratio_max,
            ratio_steps=steps,
            models=models,
            hot=None,
            cold=None,
            carnot=carnot,
            raw=None,
            out=str(out_dir / name),
        )
        cfg = _sweep_config(preset_args)
        rows = _sweep_rows(cfg, drop_inoperative_rows=(kind == "tradeoff"))
        _emit_csv(preset_args.out, _meta_line(preset_args, cfg), _sweep_header(cfg), rows)
        print(f"wrote {preset_args.out}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# verification checks


def _check_thm3(seed: int, grid: int) -> list[tuple[str, str]]:
    worst_exhaustive = 0.0
    for d in (1, 2, 3):
        for beta_omega in (0.2, 1.0):
            dev = abs(
                scan_lambda_max(beta_omega, d) - lambda_max_finite_bath(beta_omega, d)
            )
            worst_exhaustive = max(worst_exhaustive, dev)
    worst_ascent = abs(scan_lambda_max(0.5, 10) - lambda_max_finite_bath(0.5, 10))
    ok = worst_exhaustive <= 1e-6 and worst_ascent <= 1e-4
    level = "PASS" if ok else "FAIL"
    return [
        (
            level,
            "thm3: scanned ladder caps match the closed form "
            f"(exhaustive dev {worst_exhaustive:.2e}, ascent dev {worst_ascent:.2e})",
        )
    ]


def _check_thm2(seed: int, grid: int) -> list[tuple[str, str]]:
    rng = np.random.default_rng(seed)
    worst_w = 0.0
    worst_eta = 0.0
    for _ in range(10):
        beta_h = rng.uniform(0.05, 1.0)
        beta_c = beta_h * rng.uniform(1.2, 6.0)
        params = EngineParams(beta_h, beta_c, rng.uniform(0.2, 1.0), rng.uniform(0.2, 1.0))
        point = optimal_performance(params)
        oracle = brute_force_performance(params, grid)
        worst_w = max(worst_w, abs(oracle.w_max - max(point.w_max, 0.0)))
        if point.w_max > 1e-6:
            worst_eta = max(worst_eta, abs(oracle.eta_max - point.eta_max))
    ok = worst_w <= 1e-6 and worst_eta <= 1e-6
    level = "PASS" if ok else "FAIL"
    return [
        (
            level,
            "thm2: grid search over weights and permutations matches the closed form "
            f"(work dev {worst_w:.2e}, efficiency dev {worst_eta:.2e})",
        )
    ]


def _check_eta_d(seed: int, grid: int) -> list[tuple[str, str]]:
    worst = 0.0
    for d in (5, 10, 15):
        model = RestrictionModel.finite_bath(d)
        for ratio in np.linspace(1.05, 10.0, 50):
            beta_h = 0.2
            beta_c = beta_h * ratio
            point = optimal_performance(engine_params_from(model, model, beta_h, beta_c))
            if point.eta_max is None:
                return [("FAIL", f"eta-d: efficiency undefined at d={d}, ratio={ratio}")]
            worst = max(worst, abs(eta_finite_bath(beta_h, beta_c, d) - point.eta_max))
    ok = worst <= 1e-9
    level = "PASS" if ok else "FAIL"
    return [
        (
            level,
            "eta-d: stated ladder-bath efficiency matches the general closed form "
            f"(max dev {worst:.2e})",
        )
    ]


def _check_jc(seed: int, grid: int) -> list[tuple[str, str]]:
    lines = []
    ok = True
    details = []
    for beta_omega in (0.5, 1.0, 2.0):
        cap = lambda_max_jc(beta_omega)
        scanned = jc_time_scan(beta_omega)
        inside = cap - 5e-2 <= scanned <= cap + 1e-2
        ok = ok and inside
        details.append(f"bw={beta_omega:g}: stated {cap:.6f}, scanned {scanned:.6f}")
    level = "PASS" if ok else "FAIL"
    lines.append((level, "jc: time scan brackets the stated cap (" + "; ".join(details) + ")"))
    probes = np.linspace(0.21, JC_BRANCH_POINT - 1e-9, 25)
    worst_raw = max(lambda_max_jc_raw(b) for b in probes)
    if worst_raw > 1.0:
        lines.append(
            (
                "WARN",
                "jc: stated high-temperature expression exceeds 1 inside "
                f"(0.2, {JC_BRANCH_POINT:.4f}) (max {worst_raw:.4f}); caps are clamped",
            )
        )
    return lines


def _check_carnot(seed: int, grid: int) -> list[tuple[str, str]]:
    rng = np.random.default_rng(seed)
    failures: list[str] = []
    count = 2000
    for _ in range(count):
        beta_h = rng.uniform(0.05, 2.0)
        beta_c = beta_h * rng.uniform(1.01, 8.0)
        lam_h_max = rng.uniform(0.05, 1.0)
        lam_c_max = rng.uniform(0.05, 1.0)
        params = EngineParams(beta_h, beta_c, lam_h_max, lam_c_max)
        lam_h = rng.uniform(0.0, lam_h_max)
        lam_c = rng.uniform(0.0, lam_c_max)
        swap = bool(rng.integers(0, 2))
        perm = WorkPermutation.swap() if swap else WorkPermutation.identity(2)
        p0 = qubit_population(_scalar_fixed_point(lam_h, lam_c, params, swap))
        report = run_cycle(p0, lam_h, lam_c, perm, params)
        if not report.closes:
            failures.append(f"cycle failed to close at {params!r}")
            continue
        diagnostics = check_laws(report, params)
        if not diagnostics.ok:
            failures.append("; ".join(diagnostics.failures))
    if failures:
        return [("FAIL", f"carnot: {len(failures)}/{count} cycles violated the laws "
                 f"(first: {failures[0]})")]
    return [("PASS", f"carnot: first law and Carnot bound hold on {count} random closing cycles")]


_CHECKS = {
    "thm3": _check_thm3,
    "thm2": _check_thm2,
    "eta-d": _check_eta_d,
    "jc": _check_jc,
    "carnot": _check_carnot,
}


def cmd_verify(args) -> int:
    seed = _as_int("--seed", args.seed if args.seed is not None else 0)
    grid = _as_int("--grid", args.grid if args.grid is not None else 200)
    if args.only is not None:
        names = [name.strip() for name in str(args.only).split(",") if name.strip()]
        unknown = [name for name in names if name not in _CHECKS]
        if unknown:
            raise ValueError(f"unknown checks {unknown!r}, available: {sorted(_CHECKS)}")
    else:
        names = list(_CHECKS)
    failed = False
    for name in names:
        for level, message in _CHECKS[name](seed, grid):
            print(f"{level} {message}")
            failed = failed or level == "FAIL"
    return EXIT_VERIFY if failed else EXIT_OK


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="threestroke",
        description="Optimal work and efficiency of a restricted three-stroke qubit engine.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    subparsers = parser.add_subparsers(dest="command", required=True)

    def add_common(sub, betas=True, models=True):
        sub.add_argument("--config", metavar="PATH", help="JSON file supplying defaults for any flag")
        if betas:
            sub.add_argument("--bh", type=float, help="hot-bath beta times the splitting")
            sub.add_argument("--bc", type=float, help="cold-bath beta times the splitting")
        if models:
            sub.add_argument("--hot", metavar="MODEL", help="unrestricted | fb:D | jc | lam:X")
            sub.add_argument("--cold", metavar="MODEL", help="unrestricted | fb:D | jc | lam:X")

    perf = subparsers.add_parser("perf", help="closed-form optimum at one parameter point")
    add_common(perf)
    perf.set_defaults(func=cmd_perf)

    for name, func, help_text in (
        ("sweep", cmd_sweep, "sweep the closed-form optimum and write CSV"),
        ("tradeoff", cmd_tradeoff, "efficiency/work pairs over the sweep, engine regime only"),
    ):
        sub = subparsers.add_parser(name, help=help_text)
        add_common(sub)
        sub.add_argument("--models", metavar="SPECS",
                         help="comma-separated restriction specs applied to both strokes")
        sub.add_argument("--ratio-min", type=float, help="lower end of the swept values")
        sub.add_argument("--ratio-max", type=float, help="upper end of the swept values")
        sub.add_argument("--ratio-steps", type=int, help="number of swept points")
        sub.add_argument("--axis", choices=sorted(_AXIS_COLUMNS),
                         help="swept variable (default ratio = beta_c/beta_h)")
        sub.add_argument("--carnot", action="store_true", default=None,
                         help="append an eta_carnot column")
        sub.add_argument("--raw", action="store_true", default=None,
                         help="emit values outside the engine regime too")
        sub.add_argument("--out", metavar="PATH", help="output CSV path (default stdout)")
        sub.set_defaults(func=func)

    figures = subparsers.add_parser("figures", help="write the four figure-data CSVs")
    figures.add_argument("--config", metavar="PATH", help="JSON file supplying defaults for any flag")
    figures.add_argument("--bh", type=float, help="hot-bath beta times the splitting")
    figures.add_argument("--ratio-min", type=float, help="lower end of the ratio grid")
    figures.add_argument("--ratio-max", type=float, help="upper end of the ratio grid")
    figures.add_argument("--ratio-steps", type=int, help="number of ratio points")
    figures.add_argument("--out", metavar="DIR", help="output directory (default figures-data)")
    figures.set_defaults(func=cmd_figures)

    verify = subparsers.add_parser("verify", help="run the oracle cross-checks")
    verify.add_argument("--config", metavar="PATH", help="JSON file supplying defaults for any flag")
    verify.add_argument("--seed", type=int, help="seed for the randomized checks (default 0)")
    verify.add_argument("--grid", type=int, help="grid size for the brute-force search (default 200)")
    verify.add_argument("--only", metavar="NAMES",
                        help=f"comma-separated subset of {sorted(_CHECKS)}")
    verify.set_defaults(func=cmd_verify)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    args._argv = list(argv) if argv is not None else sys.argv[1:]
    try:
        _apply_config(args)
        return args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except RuntimeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VERIFY


if __name__ == "__main__":
    sys.exit(main())
