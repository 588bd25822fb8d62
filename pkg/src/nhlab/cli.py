"""Command-line entry point: config ingestion, subcommand dispatch, and
CSV/JSON emission for downstream plotting.

One JSON document configures a run; sections mirror the core types
(``params``, ``grid``, ``window``, ``controls``) plus ``output`` and
``seed``.  Unknown keys are rejected at every level.  CSV cells use
scientific notation with 17 significant digits so re-runs are byte-identical
and doubles round-trip losslessly.

Exit codes: 0 success, 1 runtime failure, 2 config parse error,
3 validation error.
"""

from __future__ import annotations

import argparse
import concurrent.futures
import copy
import json
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import analytic, gridops, propagate, verify
from .analytic import AnalyticState
from .errors import (
    AlphaZeroCrossing,
    ComplexLambda,
    ConfigError,
    DegreeOutOfRange,
    NHLabError,
    NonPositiveScale,
    ZeroAuxiliary,
)
from .params import (
    GridSpec,
    PhysParams,
    Regime,
    TimeWindow,
    gridspec_from_dict,
    physparams_from_dict,
    timewindow_from_dict,
)
from .propagate import PropagationControls

_FLOAT_FMT = "%.16e"

EXIT_OK = 0
EXIT_RUNTIME = 1
EXIT_CONFIG = 2
EXIT_VALIDATION = 3

_TOP_KEYS = {"params", "grid", "window", "controls", "output", "seed", "sweep", "command"}
_OUTPUT_KEYS = {"timeSamples"}
_CONTROL_KEYS = {"dt", "substepTrigger", "maxHalvings", "recordEvery"}


@dataclass(frozen=True)
class RunSetup:
    params: PhysParams
    grid: GridSpec
    window: TimeWindow
    controls: PropagationControls
    time_samples: int
    seed: int


def load_config(path: str | Path) -> dict:
    with open(path, "r", encoding="utf-8") as fh:
        doc = json.load(fh)
    if not isinstance(doc, dict):
        raise ConfigError("config root must be a JSON object")
    unknown = set(doc) - _TOP_KEYS
    if unknown:
        raise ConfigError(f"unknown top-level keys: {sorted(unknown)}")
    return doc


def controls_from_dict(doc: dict) -> PropagationControls:
    unknown = set(doc) - _CONTROL_KEYS
    if unknown:
        raise ConfigError(f"unknown keys in controls: {sorted(unknown)}")
    return PropagationControls(
        dt=float(doc.get("dt", 1e-3)),
        substep_trigger=float(doc.get("substepTrigger", 0.25)),
        max_halvings=int(doc.get("maxHalvings", 20)),
        record_every=int(doc.get("recordEvery", 100)),
    )


def build_run(doc: dict, seed_override: int | None = None) -> RunSetup:
    out = doc.get("output", {})
    unknown = set(out) - _OUTPUT_KEYS
    if unknown:
        raise ConfigError(f"unknown keys in output: {sorted(unknown)}")
    seed = int(doc.get("seed", 2024)) if seed_override is None else seed_override
    return RunSetup(
        params=physparams_from_dict(doc.get("params", {})),
        grid=gridspec_from_dict(doc.get("grid", {})),
        window=timewindow_from_dict(doc.get("window", {})),
        controls=controls_from_dict(doc.get("controls", {})),
        time_samples=int(out.get("timeSamples", 5)),
        seed=seed,
    )


def _write_csv(path: Path, header: list[str], rows) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(_format_cell(v) for v in row) + "\n")


def _format_cell(v) -> str:
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    return _FLOAT_FMT % float(v)


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_analytic(run: RunSetup, out_dir: Path, metric_density: bool = True) -> list[Path]:
    """Evaluate the exact solution on a (t, x) mesh and write analytic_<n>.csv."""
    p = run.params
    from . import auxsolve

    auxsolve.validate_interval(run.window, p)
    state = AnalyticState(p)
    x = run.grid.points()
    times = np.linspace(run.window.t0, run.window.t1, run.time_samples)
    harmonic = p.regime is Regime.HARMONIC
    include_eta = metric_density and harmonic

    header = ["t", "x", "re_psi", "im_psi", "abs2_plain"]
    if include_eta:
        header.append("abs2_eta")
    rows = []
    for t in times:
        vals = np.asarray(analytic.psi(x, float(t), state))
        dens_eta = None
        if include_eta:
            grid_state = gridops.WaveGrid(run.grid, vals, float(t))
            dens_eta = gridops.eta_density(grid_state, float(t), p)
        for j in range(x.size):
            row = [t, x[j], vals[j].real, vals[j].imag, abs(vals[j]) ** 2]
            if include_eta:
                row.append(dens_eta[j])
            rows.append(row)
    out_dir.mkdir(parents=True, exist_ok=True)
    path = out_dir / f"analytic_{state.level}.csv"
    _write_csv(path, header, rows)
    return [path]


def cmd_propagate(run: RunSetup, out_dir: Path) -> list[Path]:
    """Propagate the exact state numerically; write trajectory and snapshots."""
    p = run.params
    state = AnalyticState(p)
    x = run.grid.points()
    initial = gridops.sample(run.grid, lambda xx, tt: analytic.psi(xx, tt, state), run.window.t0)
    traj = propagate.evolve(initial, run.window, run.controls, p)

    out_dir.mkdir(parents=True, exist_ok=True)
    rows = []
    for i, t in enumerate(traj.times):
        ref = np.asarray(analytic.psi(x, t, state))
        err = float(np.linalg.norm(traj.states[i].amplitudes - ref) / np.linalg.norm(ref))
        rows.append([t, traj.eta_norms[i], traj.plain_norms[i], err])
    files = [out_dir / "trajectory.csv"]
    _write_csv(files[0], ["t", "eta_norm", "plain_norm", "l2_error_vs_analytic"], rows)

    for i, t in enumerate(traj.times):
        path = out_dir / f"snapshot_{i:03d}.csv"
        amp = traj.states[i].amplitudes
        _write_csv(
            path,
            ["t", "x", "re_psi", "im_psi"],
            ([t, x[j], amp[j].real, amp[j].imag] for j in range(x.size)),
        )
        files.append(path)
    return files


def cmd_verify(run: RunSetup, out_dir: Path) -> int:
    """Run every suite; emit JSON + table; exit 0 iff all pass."""
    reports = verify.run_all(run.params, run.grid, run.window,
                             seed=run.seed, controls=run.controls)
    out_dir.mkdir(parents=True, exist_ok=True)
    payload = [r.to_dict() for r in reports]
    with open(out_dir / "verify_report.json", "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=2)
        fh.write("\n")
    for r in reports:
        print(r.format_table())
    return EXIT_OK if all(r.overall for r in reports) else EXIT_RUNTIME


def cmd_uncertainty(run: RunSetup, out_dir: Path, n_max: int = 5) -> list[Path]:
    """Uncertainty table of the exact states for n = 0..n_max."""
    p = run.params
    if p.regime is not Regime.HARMONIC:
        raise ConfigError("uncertainty requires harmonic-regime parameters")
    from . import auxsolve

    auxsolve.validate_interval(run.window, p)
    t = 0.5 * (run.window.t0 + run.window.t1)
    rows = []
    for n in range(n_max + 1):
        st = AnalyticState(p, n=n)
        state = gridops.sample(run.grid, lambda xx, tt: analytic.psi_harmonic(xx, tt, st), t)
        rep = gridops.uncertainty_report(state, t, p)
        rows.append([n, np.sqrt(max(rep.var_x, 0.0)), np.sqrt(max(rep.var_p, 0.0)),
                     rep.product, rep.bound])
    out_dir.mkdir(parents=True, exist_ok=True)
    path = out_dir / "uncertainty.csv"
    _write_csv(path, ["n", "dX", "dP", "product", "bound"], rows)
    return [path]


def _set_path(doc: dict, dotted: str, value) -> None:
    parts = dotted.split(".")
    if len(parts) == 1:
        parts = ["params", parts[0]]
    node = doc
    for key in parts[:-1]:
        node = node.setdefault(key, {})
    node[parts[-1]] = value


def cmd_sweep(doc: dict, out_dir: Path, seed: int | None) -> int:
    """Cartesian product over listed parameter values, one output dir per point."""
    sweep = doc.get("sweep")
    if not isinstance(sweep, dict) or not sweep:
        raise ConfigError("sweep requires a non-empty 'sweep' mapping in the config")
    command = doc.get("command", "analytic")
    if command not in ("analytic", "propagate", "uncertainty"):
        raise ConfigError(f"sweep cannot wrap command {command!r}")

    fields = sorted(sweep)
    grids = [sweep[f] for f in fields]
    points = [[]]
    for values in grids:
        if not isinstance(values, list) or not values:
            raise ConfigError("every sweep entry must be a non-empty list")
        points = [pt + [v] for pt in points for v in values]

    def run_point(idx_values):
        idx, values = idx_values
        sub = copy.deepcopy(doc)
        sub.pop("sweep", None)
        sub.pop("command", None)
        tag = "_".join(f"{f.split('.')[-1]}{v}" for f, v in zip(fields, values))
        for f, v in zip(fields, values):
            _set_path(sub, f, v)
        run = build_run(sub, seed_override=seed)
        point_dir = out_dir / f"point_{idx:03d}_{tag}"
        if command == "analytic":
            cmd_analytic(run, point_dir)
        elif command == "propagate":
            cmd_propagate(run, point_dir)
        else:
            cmd_uncertainty(run, point_dir)

    with concurrent.futures.ThreadPoolExecutor(max_workers=min(4, len(points))) as pool:
        list(pool.map(run_point, enumerate(points)))
    return EXIT_OK


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nhlab",
        description="Exact solutions, metric-weighted observables, and numerical "
                    "cross-checks for a solvable time-dependent non-Hermitian model.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ("analytic", "propagate", "verify", "uncertainty", "sweep"):
        sp = sub.add_parser(name)
        sp.add_argument("--config", required=True, help="path to the JSON run configuration")
        sp.add_argument("--out", default="out", help="output directory (default: ./out)")
        sp.add_argument("--seed", type=int, default=None, help="override the config seed")
        if name == "analytic":
            sp.add_argument("--no-metric-density", action="store_true",
                            help="omit the abs2_eta column")
        if name == "uncertainty":
            sp.add_argument("--n-max", type=int, default=5)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        doc = load_config(args.config)
    except (OSError, json.JSONDecodeError, ConfigError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    out_dir = Path(args.out)
    try:
        if args.command == "sweep":
            return cmd_sweep(doc, out_dir, args.seed)
        run = build_run(doc, seed_override=args.seed)
        if args.command == "analytic":
            cmd_analytic(run, out_dir, metric_density=not args.no_metric_density)
        elif args.command == "propagate":
            cmd_propagate(run, out_dir)
        elif args.command == "uncertainty":
            cmd_uncertainty(run, out_dir, n_max=args.n_max)
        elif args.command == "verify":
            return cmd_verify(run, out_dir)
        return EXIT_OK
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (NonPositiveScale, ComplexLambda, ZeroAuxiliary, AlphaZeroCrossing,
            DegreeOutOfRange) as exc:
        print(f"validation error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except NHLabError as exc:
        print(f"runtime error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    raise SystemExit(main())
