"""Command-line driver.

Subcommands: coeffs (weight tables), radius (single stability point),
sweep (stability curves to CSV), simulate (time-domain run with growth
estimate), repro (canned sweep bundles reproducing the stability
studies). Exit codes: 0 success, 1 usage error, 2 numerical failure.
"""

from __future__ import annotations

import os

# many small eigenproblems: parallelize across processes, not BLAS threads
for _var in ("OPENBLAS_NUM_THREADS", "OMP_NUM_THREADS", "MKL_NUM_THREADS"):
    os.environ.setdefault(_var, "1")

import argparse
import sys

import numpy as np

from . import __version__
from .coeffs import SchemeSpec, bdf_weights, ext_weights, multirate_weights
from .discretize import GridSpec
from .multirate import MultirateSpec, growth_matrix_multirate
from .simulate import empirical_growth_rate, replicated_state, run_multirate, run_singlerate
from .singlerate import growth_matrix_singlerate
from .spectral import classify, spectral_radius
from .sweep import SweepSpec, run_sweep, write_csv

USAGE_ERROR, NUMERICAL_ERROR = 1, 2

BUNDLES = {
    "fig5": dict(schemes=((1, 1), (2, 1), (2, 2), (3, 1), (3, 2), (3, 3))),
    "fig6": dict(schemes=((2, 2), (3, 2), (3, 3)), grids=((32, 3), (32, 5), (32, 7))),
    "fig7": dict(schemes=((2, 2), (3, 2), (3, 3)), grids=((32, 5), (65, 10), (98, 15))),
    "fig8": dict(schemes=((3, 3),), gammas=(1.0, 0.5)),
    "fig10": dict(schemes=((1, 1), (2, 1), (2, 2), (3, 1), (3, 2), (3, 3)), etas=(2,)),
    "fig11": dict(schemes=((3, 3),), etas=(1, 2, 3, 4, 5, 10)),
    "fig12": dict(schemes=((3, 3),), etas=(1, 2, 3, 4, 5, 10), grids=((32, 10),)),
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(USAGE_ERROR, f"{self.prog}: error: {message}\n")


def _fmt(values) -> str:
    return " ".join(format(float(v), ".12g") for v in np.atleast_1d(values))


def _int_list(text: str) -> tuple[int, ...]:
    out = []
    for part in text.split(","):
        if "-" in part:  # "0-7" inclusive range
            lo, hi = part.split("-", 1)
            out.extend(range(int(lo), int(hi) + 1))
        else:
            out.append(int(part))
    return tuple(out)


def _float_list(text: str) -> tuple[float, ...]:
    return tuple(float(p) for p in text.split(","))


def _pair(text: str) -> tuple[int, int]:
    a, b = text.split(":")
    return int(a), int(b)


def cmd_coeffs(args) -> int:
    print(f"beta: {_fmt(bdf_weights(args.k).beta)}")
    print(f"ext: {_fmt(ext_weights(args.m).alpha)}")
    wt = multirate_weights(args.eta, args.m)
    print(f"pred_coarse: {_fmt(wt.pred_coarse)}")
    for i in range(args.eta):
        print(f"pred_fine[{i + 1}]: {_fmt(wt.pred_fine[i])}")
    for i in range(args.eta):
        print(f"corr_fine[{i + 1}]: {_fmt(wt.corr_fine[i])}")
    return 0


def _growth(args):
    scheme = SchemeSpec(k=args.k, m=args.m, Q=args.Q, gamma_blend=args.gamma)
    grid = GridSpec(N=args.N, K=args.K, nu=1.0)
    dt_c = args.s * grid.dx**2
    if args.eta == 1:
        return scheme, grid, dt_c, growth_matrix_singlerate(scheme, grid, dt_c)
    mspec = MultirateSpec(scheme=scheme, grid=grid, eta=args.eta, dt_c=dt_c)
    return scheme, grid, dt_c, growth_matrix_multirate(mspec)


def cmd_radius(args) -> int:
    _, _, _, gm = _growth(args)
    point = classify(args.s, spectral_radius(gm.G))
    print(f"s={point.s!r} rho={point.rho!r} stable={int(point.stable)}")
    return 0


def _sweep_spec(args) -> SweepSpec:
    return SweepSpec(
        schemes=tuple(args.scheme),
        q_values=args.Q,
        gammas=args.gamma,
        etas=args.eta,
        grids=tuple(args.grid),
        s_min=args.s_min,
        s_max=args.s_max,
        points=args.points,
    )


def cmd_sweep(args) -> int:
    rows = run_sweep(_sweep_spec(args), workers=args.workers)
    write_csv(rows, args.out, __version__)
    print(f"wrote {len(rows)} rows to {args.out}")
    return 0


def cmd_simulate(args) -> int:
    scheme, grid, dt_c, gm = _growth(args)
    rng = np.random.default_rng(args.seed)
    if args.zero_state:
        u_c = np.zeros(grid.N)
        u_f = np.zeros(grid.N)
    else:
        u_c = rng.standard_normal(grid.N)
        u_f = rng.standard_normal(grid.N)
    z0 = replicated_state(u_c, u_f, args.eta)
    if args.eta == 1:
        traj = run_singlerate(scheme, grid, dt_c, z0, args.steps)
    else:
        mspec = MultirateSpec(scheme=scheme, grid=grid, eta=args.eta, dt_c=dt_c)
        traj = run_multirate(mspec, z0, args.steps)
    rho = spectral_radius(gm.G)
    lines = [f"{n + 1},{t!r},{norm!r}" for n, (t, norm) in enumerate(zip(traj.times, traj.norms))]
    window = min(args.window, len(traj.norms) - 1)
    try:
        rate = repr(empirical_growth_rate(traj, window)) if window >= 1 else "na"
    except ValueError:
        rate = "na"
    footer = [
        f"# empirical_rate={rate}",
        f"# rho={rho!r}",
        f"# overflowed={int(traj.overflowed)}",
    ]
    text = "step,time,norm\n" + "\n".join(lines + footer) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_repro(args) -> int:
    names = list(BUNDLES) if args.bundle == "all" else [args.bundle]
    os.makedirs(args.out_dir, exist_ok=True)
    for name in names:
        spec = SweepSpec(q_values=tuple(range(8)), points=args.points, **BUNDLES[name])
        rows = run_sweep(spec, workers=args.workers)
        path = os.path.join(args.out_dir, f"{name}.csv")
        write_csv(rows, path, __version__)
        print(f"wrote {len(rows)} rows to {path}")
    return 0


def _add_scheme_grid_args(p, single_s: bool):
    p.add_argument("--k", type=int, required=True, help="BDF order (1..3)")
    p.add_argument("--m", type=int, required=True, help="extrapolation order (1..k)")
    p.add_argument("--Q", type=int, required=True, help="corrector sweeps per step")
    p.add_argument("--gamma", type=float, default=1.0, help="final-sweep blend weight for even Q")
    p.add_argument("--eta", type=int, default=1, help="coarse/fine timestep ratio")
    p.add_argument("--N", type=int, required=True, help="dofs per subdomain")
    p.add_argument("--K", type=int, required=True, help="overlap point count")
    if single_s:
        p.add_argument("--s", type=float, required=True, help="nondimensional timestep nu*dt_c/dx^2")


def build_parser() -> _Parser:
    parser = _Parser(prog="ospc", description=__doc__)
    parser.add_argument("--version", action="version", version=f"ospc {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("coeffs", help="print BDF/EXT and multirate weight tables")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--eta", type=int, default=1)
    p.set_defaults(fn=cmd_coeffs)

    p = sub.add_parser("radius", help="spectral radius at a single s")
    _add_scheme_grid_args(p, single_s=True)
    p.set_defaults(fn=cmd_radius)

    p = sub.add_parser("sweep", help="stability curves over a log-spaced s range, to CSV")
    p.add_argument("--scheme", type=_pair, action="append", required=True,
                   metavar="K:M", help="BDF:EXT order pair (repeatable)")
    p.add_argument("--Q", type=_int_list, default=tuple(range(8)), help="corrector counts, e.g. 0-7 or 1,3,5")
    p.add_argument("--gamma", type=_float_list, default=(1.0,))
    p.add_argument("--eta", type=_int_list, default=(1,))
    p.add_argument("--grid", type=_pair, action="append", required=True,
                   metavar="N:K", help="grid size pair (repeatable)")
    p.add_argument("--s-min", type=float, default=1e-2)
    p.add_argument("--s-max", type=float, default=1e6)
    p.add_argument("--points", type=int, default=200)
    p.add_argument("--workers", type=int, default=os.cpu_count() or 1)
    p.add_argument("--out", required=True)
    p.set_defaults(fn=cmd_sweep)

    p = sub.add_parser("simulate", help="time-domain run with empirical growth estimate")
    _add_scheme_grid_args(p, single_s=True)
    p.add_argument("--steps", type=int, default=256)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--zero-state", action="store_true", help="start from the zero state")
    p.add_argument("--window", type=int, default=64, help="growth-rate estimation window")
    p.add_argument("--out", default=None, help="CSV path (default: stdout)")
    p.set_defaults(fn=cmd_simulate)

    p = sub.add_parser("repro", help="run the canned sweep bundles")
    p.add_argument("--bundle", choices=[*BUNDLES, "all"], required=True)
    p.add_argument("--out-dir", required=True)
    p.add_argument("--points", type=int, default=200)
    p.add_argument("--workers", type=int, default=os.cpu_count() or 1)
    p.set_defaults(fn=cmd_repro)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse exits for usage errors, --help, --version
        return int(exc.code or 0)
    try:
        return args.fn(args)
    except ValueError as exc:
        print(f"ospc: error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except (np.linalg.LinAlgError, FloatingPointError, ArithmeticError) as exc:
        print(f"ospc: numerical failure: {exc}", file=sys.stderr)
        return NUMERICAL_ERROR


if __name__ == "__main__":
    sys.exit(main())
