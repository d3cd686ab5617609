"""
Command-Line Entry Point
========================

    occlusion-risk run plan.json [--penetration 0 0.5 1] [--seed 7] [--reps 10]
                                 [--paradigm symmetric] [--fov-mode homogeneous_360]
                                 [--pair-filter veh_veh] [--out DIR] [--workers N]
    occlusion-risk synth crossing --out scenes/

Flags override the plan; the plan overrides the run-config file it names.
Log verbosity comes from ``OCCLUSION_RISK_LOG_LEVEL``.

EXIT CODES:
-----------
    0   success
    1   unusable input (missing/invalid trajectory, map, config or plan)
    2   anything else, including a failed consistency check
"""

from __future__ import annotations

import argparse
import logging
import sys
from collections.abc import Sequence

from occlusion_risk.errors import InputError, OcclusionRiskError
from occlusion_risk.graph import run_plan
from occlusion_risk.ingest import load_plan
from occlusion_risk.models.run_config import FovMode, Paradigm, PairFilter
from occlusion_risk.synthetic import GENERATORS, write_synthetic
from occlusion_risk.utils.config import get_settings
from occlusion_risk.utils.log import configure_logging

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_FAILURE = 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="occlusion-risk",
        description="Occlusion risk (RTL) analytics and V2X deployment experiments",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    run = commands.add_parser("run", help="Execute a sweep plan")
    run.add_argument("plan", help="Plan JSON file")
    run.add_argument("--penetration", type=float, nargs="+", default=None, help="Penetration rates in [0, 1]")
    run.add_argument("--seed", type=int, default=None, help="Base seed; repetition r uses seed + r")
    run.add_argument("--reps", type=int, default=None, help="Monte Carlo repetitions per rate")
    run.add_argument("--paradigm", choices=[p.value for p in Paradigm], default=None)
    run.add_argument("--fov-mode", choices=[m.value for m in FovMode], default=None)
    run.add_argument("--pair-filter", choices=[f.value for f in PairFilter], default=None)
    run.add_argument("--out", default=None, help="Output directory")
    run.add_argument("--workers", type=int, default=None, help="Thread workers for Monte Carlo draws")

    synth = commands.add_parser("synth", help="Write a synthetic scenario (trajectory CSV + map JSON)")
    synth.add_argument("kind", choices=sorted(GENERATORS))
    synth.add_argument("--out", default=".", help="Directory for the generated files")
    synth.add_argument("--seed", type=int, default=None, help="Seed (dense_intersection only)")

    return parser


def _overrides(args: argparse.Namespace) -> dict:
    return {
        "penetration_rates": args.penetration,
        "seed": args.seed,
        "repetitions": args.reps,
        "paradigm": args.paradigm,
        "fov_mode": args.fov_mode,
        "pair_filter": args.pair_filter,
        "output_dir": args.out,
    }


def _run(args: argparse.Namespace) -> None:
    plan = load_plan(args.plan)
    final = run_plan(plan, _overrides(args), workers=args.workers)
    logger.info("wrote %d files, manifest %s", len(final.get("files", [])), final["manifest_path"])
    print(final["manifest_path"])


def _synth(args: argparse.Namespace) -> None:
    kwargs = {"seed": args.seed} if args.seed is not None and args.kind == "dense_intersection" else {}
    trajectory, map_path = write_synthetic(args.kind, args.out, **kwargs)
    print(trajectory)
    print(map_path)


def main(argv: Sequence[str] | None = None) -> int:
    configure_logging(get_settings().log_level)
    args = build_parser().parse_args(argv)
    try:
        if args.command == "run":
            _run(args)
        else:
            _synth(args)
    except InputError as exc:
        logger.error("%s", exc)
        return EXIT_INPUT
    except OcclusionRiskError as exc:
        logger.error("%s: %s", type(exc).__name__, exc)
        return EXIT_FAILURE
    except Exception:
        logger.exception("unexpected failure")
        return EXIT_FAILURE
    return EXIT_OK


__all__ = ["build_parser", "main", "EXIT_OK", "EXIT_INPUT", "EXIT_FAILURE"]


if __name__ == "__main__":
    sys.exit(main())
