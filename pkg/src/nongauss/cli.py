"""Command-line front end: figure sweeps as CSV, single-state queries.

Usage::

    nongauss figure fig1 --out fig1.csv
    nongauss measure psts --nbar 1 --m 1
    nongauss evolve pats --nbar 1.5 --m 10 --nbar-r 0.1 --gamma-t-max 6 --steps 60

Exit status is 0 on success, 1 on configuration or domain errors and 2 on
I/O errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Sequence

from .damping import DampingChannel, trajectory
from .errors import ConfigError, NongaussError
from .fock_states import (
    DEFAULT_TRUNC_TOL,
    ExcitationSpec,
    Kind,
    ThermalParams,
    make_pats,
    make_psts,
    make_thermal,
    mean_photon,
    purity,
)
from .nongaussianity import measures

FIGURES = ("fig1", "fig2", "fig3", "fig4")
MEASURES = ("hs", "re", "fid")


def _grid(start: float, stop: float, step: float) -> tuple[float, ...]:
    count = int(round((stop - start) / step))
    return tuple(round(start + i * step, 12) for i in range(count + 1))


@dataclass(frozen=True)
class SweepConfig:
    """Parameters of one figure sweep.

    Which grids are used depends on ``figure_id``: fig1 sweeps ``nbar_list``
    x ``m_list``; fig2 sweeps ``m_list`` x ``x_list``; fig3 and fig4 sweep
    ``kinds`` x ``m_list`` x ``gamma_t_list`` at fixed ``nbar_list[0]`` and
    ``nbar_r``.
    """

    figure_id: str
    nbar_list: tuple[float, ...] = ()
    m_list: tuple[int, ...] = ()
    x_list: tuple[float, ...] = ()
    gamma_t_list: tuple[float, ...] = ()
    nbar_r: float = 0.0
    kinds: tuple[str, ...] = ("psts",)
    measures: tuple[str, ...] = MEASURES
    out: str | None = None
    trunc_tol: float = DEFAULT_TRUNC_TOL
    jobs: int = 1

    def validate(self) -> "SweepConfig":
        if self.figure_id not in FIGURES:
            raise ConfigError("figure_id", f"expected one of {', '.join(FIGURES)}, got {self.figure_id!r}")
        if not self.measures or any(m not in MEASURES for m in self.measures):
            raise ConfigError("measures", f"expected a non-empty subset of {','.join(MEASURES)}")
        if not self.trunc_tol > 0:
            raise ConfigError("trunc_tol", "must be positive")
        if self.jobs < 1:
            raise ConfigError("jobs", "must be >= 1")
        if not self.m_list or any(m < 0 or int(m) != m for m in self.m_list):
            raise ConfigError("m_list", "must be a non-empty list of non-negative integers")
        if self.figure_id == "fig2":
            if not self.x_list or any(not 0 <= x < 1 for x in self.x_list):
                raise ConfigError("x_list", "must be a non-empty list of values in [0, 1)")
        else:
            if not self.nbar_list or any(n <= 0 for n in self.nbar_list):
                raise ConfigError("nbar_list", "must be a non-empty list of positive values")
        if self.figure_id in ("fig3", "fig4"):
            ts = self.gamma_t_list
            if not ts or ts[0] < 0 or any(b <= a for a, b in zip(ts, ts[1:])):
                raise ConfigError("gamma_t_list", "must be non-empty, non-negative and strictly ascending")
            if self.nbar_r < 0:
                raise ConfigError("nbar_r", "must be >= 0")
            if not self.kinds or any(k not in ("psts", "pats") for k in self.kinds):
                raise ConfigError("kinds", "expected a non-empty subset of psts,pats")
        return self


def preset(figure_id: str) -> SweepConfig:
    """Default grids of the four figure sweeps.

    fig3/fig4 use gamma*t in [0, 6], step 0.1, by which point the measures
    have decayed below 1e-5; override with ``replace`` or CLI flags.
    """
    times = _grid(0.0, 6.0, 0.1)
    presets = {
        "fig1": SweepConfig("fig1", nbar_list=(0.1, 1.0, 2.0, 5.0), m_list=tuple(range(11))),
        "fig2": SweepConfig("fig2", m_list=(1, 4, 5, 8, 9), x_list=_grid(0.0, 0.95, 0.05)),
        "fig3": SweepConfig("fig3", nbar_list=(1.5,), m_list=(1, 4, 5, 8, 9),
                            gamma_t_list=times, nbar_r=0.1),
        "fig4": SweepConfig("fig4", nbar_list=(1.5,), m_list=(1, 10), gamma_t_list=times,
                            nbar_r=0.1, kinds=("psts", "pats")),
    }
    if figure_id not in presets:
        raise ConfigError("figure_id", f"expected one of {', '.join(FIGURES)}, got {figure_id!r}")
    return presets[figure_id]


def _fmt(value) -> str:
    if isinstance(value, str):
        return value
    if isinstance(value, int):
        return str(value)
    return f"{value:.17g}"


# Each task returns a list of rows; tasks are module-level so they pickle.

def _fig1_task(args):
    nbar, m, tol, names = args
    ms = measures(make_psts(ThermalParams(nbar), m, tol)).as_dict()
    return [[nbar, m] + [ms[k] for k in names]]


def _fig2_task(args):
    m, x, tol, names = args
    if x == 0.0:
        # limit nbar -> 0+ of the subtracted state is the vacuum
        state = make_thermal(ThermalParams(0.0), tol)
    else:
        state = make_psts(ThermalParams.from_x(x), m, tol)
    ms = measures(state).as_dict()
    return [[m, x] + [ms[k] for k in names]]


def _trajectory_task(args):
    kind, nbar, m, nbar_r, times, tol, names, with_kind = args
    points = trajectory(ThermalParams(nbar), ExcitationSpec(m, Kind(kind)), DampingChannel(nbar_r),
                        times, tol)
    rows = []
    for pt in points:
        ms = pt.measures.as_dict()
        lead = [kind, m] if with_kind else [m]
        rows.append(lead + [pt.at.gamma_t] + [ms[k] for k in names])
    return rows


def figure_rows(config: SweepConfig) -> tuple[list[str], list[list]]:
    """Header and data rows of a figure sweep, in grid order."""
    config.validate()
    names = list(config.measures)
    tol = config.trunc_tol
    fid = config.figure_id
    if fid == "fig1":
        header = ["nbar", "M"] + names
        task = _fig1_task
        args = [(n, m, tol, names) for n in config.nbar_list for m in config.m_list]
    elif fid == "fig2":
        header = ["M", "x"] + names
        task = _fig2_task
        args = [(m, x, tol, names) for m in config.m_list for x in config.x_list]
    else:
        with_kind = fid == "fig4"
        header = (["kind", "M"] if with_kind else ["M"]) + ["gamma_t"] + names
        task = _trajectory_task
        nbar = config.nbar_list[0]
        args = [(k, nbar, m, config.nbar_r, config.gamma_t_list, tol, names, with_kind)
                for k in config.kinds for m in config.m_list]

    if config.jobs > 1:
        with ProcessPoolExecutor(max_workers=config.jobs) as pool:
            chunks = list(pool.map(task, args))
    else:
        chunks = [task(a) for a in args]
    return header, [row for chunk in chunks for row in chunk]


def render_csv(header: Sequence[str], rows: Sequence[Sequence]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_fmt(v) for v in row])
    return buf.getvalue()


def run_figure(config: SweepConfig) -> Path:
    """Compute a figure sweep and write it as CSV to ``config.out``."""
    header, rows = figure_rows(config)
    path = Path(config.out or f"{config.figure_id}.csv")
    path.write_text(render_csv(header, rows))
    return path


def _parse_measures(text: str) -> tuple[str, ...]:
    return tuple(part.strip() for part in text.split(",") if part.strip())


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="nongauss", description="Non-Gaussianity of photon-subtracted and "
                     "photon-added thermal states, and its decay under thermal damping.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    fig = sub.add_parser("figure", help="write a figure's data set as CSV")
    fig.add_argument("figure_id", choices=FIGURES)
    fig.add_argument("--out", help="output CSV path (default: <figure>.csv)")
    fig.add_argument("--measures", default="hs,re,fid", type=_parse_measures,
                     help="comma-separated subset of hs,re,fid")
    fig.add_argument("--tol", type=float, default=DEFAULT_TRUNC_TOL, help="Fock-space truncation tolerance")
    fig.add_argument("--gamma-t-max", type=float, help="end of the gamma*t axis (fig3, fig4)")
    fig.add_argument("--gamma-t-step", type=float, default=0.1, help="gamma*t step (fig3, fig4)")
    fig.add_argument("--jobs", type=int, default=1, help="worker processes")

    mes = sub.add_parser("measure", help="print the three measures of one state")
    mes.add_argument("kind", choices=("thermal", "psts", "pats"))
    mes.add_argument("--nbar", type=float, required=True)
    mes.add_argument("--m", type=int, default=0)
    mes.add_argument("--tol", type=float, default=DEFAULT_TRUNC_TOL)
    mes.add_argument("--dump", help="also write the photon-number distribution to this file")

    evo = sub.add_parser("evolve", help="measures along a damped trajectory, as CSV")
    evo.add_argument("kind", choices=("psts", "pats"))
    evo.add_argument("--nbar", type=float, required=True)
    evo.add_argument("--m", type=int, required=True)
    evo.add_argument("--nbar-r", type=float, required=True)
    evo.add_argument("--gamma-t-max", type=float, required=True)
    evo.add_argument("--steps", type=int, required=True)
    evo.add_argument("--tol", type=float, default=DEFAULT_TRUNC_TOL)
    evo.add_argument("--out", help="output CSV path (default: standard output)")
    return parser


def _cmd_figure(args) -> None:
    config = replace(preset(args.figure_id), measures=args.measures, trunc_tol=args.tol,
                     out=args.out, jobs=args.jobs)
    if args.gamma_t_max is not None:
        if not args.gamma_t_max > 0 or not args.gamma_t_step > 0:
            raise ConfigError("gamma_t_list", "--gamma-t-max and --gamma-t-step must be positive")
        config = replace(config, gamma_t_list=_grid(0.0, args.gamma_t_max, args.gamma_t_step))
    path = run_figure(config)
    print(f"wrote {path}", file=sys.stderr)


def _cmd_measure(args) -> None:
    params = ThermalParams(args.nbar)
    if args.m < 0:
        raise ConfigError("m", "must be >= 0")
    if args.kind == "thermal":
        state = make_thermal(params, args.tol)
    elif args.kind == "psts":
        state = make_psts(params, args.m, args.tol)
    else:
        state = make_pats(params, args.m, args.tol)
    ms = measures(state)
    m = 0 if args.kind == "thermal" else args.m
    for label, value in (("kind", args.kind), ("nbar", params.nbar), ("M", m),
                         ("mean_photon", mean_photon(state)), ("purity", purity(state)),
                         ("delta_hs", ms.hs), ("delta_re", ms.re), ("delta_fid", ms.fid)):
        shown = value if isinstance(value, (str, int)) else f"{value:.12g}"
        print(f"{label:<12}{shown}")
    if args.dump:
        state.save(args.dump)


def _cmd_evolve(args) -> None:
    if args.steps < 1:
        raise ConfigError("steps", "must be >= 1")
    if not args.gamma_t_max > 0:
        raise ConfigError("gamma_t_max", "must be positive")
    if args.m < 0:
        raise ConfigError("m", "must be >= 0")
    times = [args.gamma_t_max * i / args.steps for i in range(args.steps + 1)]
    points = trajectory(ThermalParams(args.nbar), ExcitationSpec(args.m, Kind(args.kind)),
                        DampingChannel(args.nbar_r), times, args.tol)
    rows = [[pt.at.gamma_t, pt.mean_photon, pt.measures.hs, pt.measures.re, pt.measures.fid]
            for pt in points]
    text = render_csv(["gamma_t", "mean_photon", "hs", "re", "fid"], rows)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    handler = {"figure": _cmd_figure, "measure": _cmd_measure, "evolve": _cmd_evolve}[args.command]
    try:
        handler(args)
    except OSError as exc:
        print(f"nongauss: I/O error: {exc}", file=sys.stderr)
        return 2
    except (NongaussError, ValueError) as exc:
        print(f"nongauss: error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
