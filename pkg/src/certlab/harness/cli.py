"""Command-line entry point.

Exit codes: 0 all assertions passed, 1 assertion failure, 2 configuration
error (bad config file, unknown keys' values, missing inputs).
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from ..errors import BudgetError, CertlabError, ConfigError, FormatError
from .commands import (
    cmd_codes_test,
    cmd_enumerate,
    cmd_learn,
    cmd_reduce,
    cmd_tradeoff,
    cmd_vcdim,
)
from .config import parse_config

COMMANDS = {
    "enumerate": cmd_enumerate,
    "learn": cmd_learn,
    "reduce": cmd_reduce,
    "tradeoff": cmd_tradeoff,
    "vcdim": cmd_vcdim,
    "codes-test": cmd_codes_test,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="certlab")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--config", type=str, default=None, help="path to a key = value config file")
        p.add_argument("--seed", type=int, default=None, help="overrides the config seed")
        p.add_argument("--out", type=str, default=".", help="output directory")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg: dict[str, str] = {}
        if args.config is not None:
            path = Path(args.config)
            if not path.exists():
                raise ConfigError(f"config file not found: {args.config}")
            cfg = parse_config(path.read_text())
        seed = args.seed if args.seed is not None else int(cfg.get("seed", "0"))
        out_dir = Path(args.out)
        out_dir.mkdir(parents=True, exist_ok=True)
        code = COMMANDS[args.command](cfg, out_dir, seed)
    except (ConfigError, FormatError, BudgetError) as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2
    except CertlabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if code != 0:
        print("assertion failure (see report files)", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
