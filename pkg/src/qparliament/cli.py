"""Command-line front end.

    qparliament list-presets [-v]
    qparliament run --preset fig2-balanced --engine rk4 --out runs/
    qparliament run --config my.yaml --engine trajectories --n-traj 2000 --seed 42
    qparliament run --replay runs/fig2-balanced-rk4.json
    qparliament oracle-check --preset fig5-gamma4   (or --all)
    qparliament sweep --preset fig2-balanced --param tau2 --values 0,0.25,0.5

Exit status: 0 success, 1 configuration error, 2 numerical-invariant
failure, 3 I/O error. The default output directory comes from the
QPARLIAMENT_OUT environment variable (fallback ``runs``).
"""
import argparse
import sys

from .errors import ConfigError, DimensionError, JumpSchemeError, UnphysicalStateError
from .io import read_config, read_metadata
from .presets import get_preset, list_presets
from .runner import (
    ENGINES, ORACLE_TOL, RunManifest, default_out_dir, oracle_check, run, set_parameter,
    trajectory_config, with_overrides,
)

EXIT_OK, EXIT_CONFIG, EXIT_NUMERIC, EXIT_IO = 0, 1, 2, 3


class OracleFailure(Exception):
    pass


def _scenario(args):
    """Resolve (name, config) from --preset or --config and apply --dt / --t-end."""
    if args.preset and args.config:
        raise ConfigError("give either --preset or --config, not both")
    if args.preset:
        name, cfg = args.preset, get_preset(args.preset).config
    elif args.config:
        cfg = read_config(args.config)
        name = args.config.rsplit("/", 1)[-1].rsplit(".", 1)[0]
    else:
        raise ConfigError("one of --preset or --config is required")
    return name, cfg


def _engine_config(args, cfg):
    if args.engine == "trajectories":
        cfg = trajectory_config(cfg, args.dt)
        return with_overrides(cfg, t_end=args.t_end)
    return with_overrides(cfg, dt=args.dt, t_end=args.t_end)


def cmd_list(args):
    for p in list_presets():
        print(f"{p.name:18s} {p.figure:7s} {p.caption}")
        if args.verbose:
            for key, value in p.config.to_dict().items():
                print(f"    {key} = {value}")
    return EXIT_OK


def cmd_run(args):
    if args.replay:
        manifest = RunManifest.from_metadata(read_metadata(args.replay), args.out)
    else:
        name, cfg = _scenario(args)
        manifest = RunManifest(
            scenario=name, engine=args.engine, config=_engine_config(args, cfg),
            out_dir=args.out or default_out_dir(), seed=args.seed, n_traj=args.n_traj,
        )
    series, csv_path, meta_path = run(manifest)
    my, s, _ = series.asymptotic()
    print(f"wrote {csv_path} ({len(series)} samples) and {meta_path}")
    print("asymptotic mean_yes: " + ", ".join(f"{v:.6f}" for v in my) + f"; entropy {s:.6f}")
    return EXIT_OK


def cmd_oracle(args):
    if args.all:
        names = [p.name for p in list_presets()]
    elif args.preset:
        names = [args.preset]
    else:
        raise ConfigError("oracle-check needs --preset or --all")
    failed = []
    for name in names:
        cfg = with_overrides(get_preset(name).config, dt=args.dt, t_end=args.t_end)
        rep = oracle_check(cfg, args.tolerance)
        status = "ok" if rep["passed"] else "FAIL"
        print(f"{name:18s} max|rk4-exact| = {rep['max_deviation']:.3e}  "
              f"({rep['seconds']:.2f} s)  {status}")
        if not rep["passed"]:
            failed.append(name)
    if failed:
        raise OracleFailure(f"deviation above {args.tolerance:g}: {', '.join(failed)}")
    return EXIT_OK


def cmd_sweep(args):
    name, cfg = _scenario(args)
    values = [float(v) for v in args.values.split(",") if v.strip()]
    if not values:
        raise ConfigError("--values needs at least one number")
    for v in values:
        point = set_parameter(cfg, args.param, v)
        manifest = RunManifest(
            scenario=f"{name}-{args.param}={v:g}", engine=args.engine,
            config=_engine_config(args, point), out_dir=args.out or default_out_dir(),
            seed=args.seed, n_traj=args.n_traj,
        )
        series, csv_path, _ = run(manifest)
        my, s, _ = series.asymptotic()
        print(f"{args.param}={v:g}: mean_yes " + ", ".join(f"{x:.6f}" for x in my)
              + f"; entropy {s:.6f} -> {csv_path}")
    return EXIT_OK


def _add_scenario_flags(p, engine=True):
    p.add_argument("--preset", help="named preset (see list-presets)")
    p.add_argument("--config", help="flat key: value scenario file")
    p.add_argument("--dt", type=float, help="time step")
    p.add_argument("--t-end", type=float, help="final time")
    if engine:
        p.add_argument("--engine", choices=ENGINES, default="rk4")
        p.add_argument("--n-traj", type=int, help="trajectories (engine=trajectories)")
        p.add_argument("--seed", type=int, help="base seed (engine=trajectories)")
        p.add_argument("--out", help="output directory (default $QPARLIAMENT_OUT or ./runs)")


def build_parser():
    parser = argparse.ArgumentParser(prog="qparliament", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("list-presets", help="show the preset catalog")
    p.add_argument("-v", "--verbose", action="store_true", help="print every parameter")
    p.set_defaults(func=cmd_list)

    p = sub.add_parser("run", help="simulate one scenario and write CSV + metadata")
    _add_scenario_flags(p)
    p.add_argument("--replay", help="metadata JSON of an earlier run to reproduce")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("oracle-check", help="compare RK4 against the exact propagator")
    _add_scenario_flags(p, engine=False)
    p.add_argument("--all", action="store_true", help="check every preset")
    p.add_argument("--tolerance", type=float, default=ORACLE_TOL)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("sweep", help="vary one parameter, one output file per value")
    _add_scenario_flags(p)
    p.add_argument("--param", required=True, help="parameter name, e.g. tau2 or omega[1]")
    p.add_argument("--values", required=True, help="comma-separated values")
    p.set_defaults(func=cmd_sweep)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, DimensionError, KeyError, ValueError) as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (UnphysicalStateError, JumpSchemeError, OracleFailure) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
