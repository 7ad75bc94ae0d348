"""
ctpair: Cassels-Tate pairing on 2-Selmer elements given by binary quartics.

    ctpair pair --in triple.json [--precision-ceiling N] [--verbose]
    ctpair invariants --quartic "a,b,c,d,e"
"""
import argparse
import logging
import os
import sys

# Make the package modules importable when run as a script
sys.path.append(os.path.dirname(os.path.abspath(__file__)))

from pydantic import ValidationError

from components.commands import COMMANDS, exit_code, run
from components.report import render_json, render_text
from engine_config import configure_logging, load_settings
from models.errors import CtpairError, MalformedInputError, ValidationFailure
from models.pairing import PairingEngine
from models.schemas import JobSpec, Report, TripleFile

logger = logging.getLogger(__name__)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ctpair", description=__doc__.strip().splitlines()[0])
    parser.add_argument("command", choices=sorted(COMMANDS))
    parser.add_argument("--in", dest="input", help="JSON file with a 'quartics' list")
    parser.add_argument(
        "--quartic", action="append", default=[],
        help='quartic as "a,b,c,d,e" (repeat for triples)',
    )
    parser.add_argument("--precision-ceiling", type=int, help="number of precision doublings for sqrt")
    parser.add_argument("--verbose", action="store_true")
    parser.add_argument("--output", help="write the report here instead of stdout")
    parser.add_argument("--config", help="key=value settings file (CTPAIR_<FIELD>=...)")
    return parser


def read_quartics(args) -> list:
    if args.input and args.quartic:
        raise MalformedInputError("use either --in or --quartic, not both")
    if args.input:
        try:
            with open(args.input, "r") as f:
                return TripleFile.model_validate_json(f.read()).quartics
        except OSError as e:
            raise MalformedInputError(f"cannot read {args.input}: {e}") from e
        except ValidationError as e:
            raise MalformedInputError(f"bad input file {args.input}: {e}") from e
    # coefficients stay strings here; components.commands parses them exactly
    return [[part.strip() for part in text.split(",")] for text in args.quartic]


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    configure_logging(args.verbose)
    try:
        job = JobSpec(
            command=args.command,
            quartics=read_quartics(args),
            precision_ceiling=args.precision_ceiling,
            verbose=args.verbose,
            output=args.output,
            config=args.config,
        )
        settings = load_settings(job.config, {"precision_doublings": job.precision_ceiling})
        report = run(job, PairingEngine(settings))
    except CtpairError as e:
        status = "invalid" if isinstance(e, ValidationFailure) else "error"
        report = Report(command=args.command, status=status, reason=str(e))
    except Exception as e:
        logger.exception("%s failed unexpectedly", args.command)
        report = Report(command=args.command, status="error", reason=f"internal error: {e}")

    text = render_json(report)
    if args.output:
        with open(args.output, "w") as f:
            f.write(text + "\n")
    else:
        print(text)
    if args.verbose:
        print(render_text(report), file=sys.stderr)
    return exit_code(report)


if __name__ == "__main__":
    sys.exit(main())
