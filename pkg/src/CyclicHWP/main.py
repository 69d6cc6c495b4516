# Copyright 2024 CyclicHWP contributors

# This program is free software: you can redistribute it and/or modify
# it under the terms of the GNU General Public License as published by
# the Free Software Foundation, either version 3 of the License, or
# (at your option) any later version.
#
# This program is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
# GNU General Public License for more details.
#
# You should have received a copy of the GNU General Public License
# along with this program.  If not, see <http://www.gnu.org/licenses/>.


import sys
import os
import argparse
import logging

# Ensure local source code is used instead of installed package
_src_dir = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
if _src_dir not in sys.path:
    sys.path.insert(0, _src_dir)


def build_parser():
    parser = argparse.ArgumentParser(
        prog="cyclichwp",
        description="CyclicHWP - cyclic Hamilton-Waterloo solutions with [ell^M] and [M^ell] factors",
    )
    parser.add_argument("--verbose", action="store_true", help="Log progress at INFO level")
    parser.add_argument("--debug", action="store_true", help="Log construction details at DEBUG level")
    parser.add_argument("--quiet", action="store_true", help="Hide progress bars")
    subparsers = parser.add_subparsers(dest="command")

    generate_parser = subparsers.add_parser("generate", help="Construct the base cycles of an instance")
    generate_parser.add_argument("--ell", type=int, required=True, help="Short cycle length, ell = 1 mod 4 and ell >= 9")
    generate_parser.add_argument("--n", type=int, required=True, help="Instance parameter, n >= (ell-1)/2")
    generate_parser.add_argument(
        "--verify", default="base", choices=["none", "base", "full"],
        help="Verification run before writing the certificate (default: base)",
    )
    generate_parser.add_argument(
        "--format", default="json", choices=["json", "text"],
        help="Certificate format (default: json)",
    )
    generate_parser.add_argument(
        "--output", default=None,
        help="Certificate file (default: standard output)",
    )
    generate_parser.add_argument(
        "--emit-maps", action="store_true",
        help="Include the sign maps f, phi, F and G in the certificate",
    )
    generate_parser.add_argument(
        "--maps-csv", default=None,
        help="Also write the sign maps as a CSV table to this file",
    )

    verify_parser = subparsers.add_parser("verify", help="Check a certificate")
    verify_parser.add_argument("--input", required=True, help="Certificate file, JSON or text")
    verify_parser.add_argument(
        "--level", default="base", choices=["base", "full"],
        help="base checks the difference criterion, full develops and checks every factor (default: base)",
    )
    verify_parser.add_argument(
        "--report", default=None,
        help="Write the verification summary as JSON to this file",
    )

    skolem_parser = subparsers.add_parser("skolem", help="Print the Skolem or hooked Skolem sequence of an order")
    skolem_parser.add_argument("--order", type=int, required=True, help="Order of the sequence")
    skolem_parser.add_argument(
        "--check", action="store_true",
        help="Also validate every order from 1 up to --order",
    )

    develop_parser = subparsers.add_parser("develop", help="Emit 2-factors of a certificate as JSON lines")
    develop_parser.add_argument("--input", required=True, help="Certificate file, JSON or text")
    develop_parser.add_argument(
        "--factor-index", type=int, default=None,
        help="Index of the factor, short factors first",
    )
    develop_parser.add_argument(
        "--all", action="store_true",
        help="Emit every factor (v(v-3)/2 edges in total)",
    )
    develop_parser.add_argument(
        "--output", default=None,
        help="Output file (default: standard output)",
    )
    develop_parser.add_argument(
        "--as-integers", action="store_true",
        help="Write vertices as elements of Z_v instead of pairs",
    )

    trace_parser = subparsers.add_parser("trace", help="Print the intermediate objects of a construction")
    trace_parser.add_argument("--ell", type=int, required=True, help="Short cycle length")
    trace_parser.add_argument("--n", type=int, required=True, help="Instance parameter")

    sweep_parser = subparsers.add_parser("sweep", help="Generate and verify a range of instances")
    sweep_parser.add_argument(
        "--ell", type=int, nargs="+", default=[9],
        help="Values of ell to sweep (default: 9)",
    )
    sweep_parser.add_argument(
        "--n-span", type=int, default=4,
        help="Number of n values per ell, starting at (ell-1)/2 (default: 4)",
    )
    sweep_parser.add_argument(
        "--full", action="store_true",
        help="Run the full factorization check on every instance",
    )
    sweep_parser.add_argument(
        "--csv", default=None,
        help="Write one row per instance to this CSV file",
    )
    return parser


def configure_logging(args):
    level = logging.WARNING
    if args.verbose:
        level = logging.INFO
    if args.debug:
        level = logging.DEBUG
    logging.basicConfig(
        level=level,
        datefmt="%Y-%m-%d %H:%M:%S",
        format="%(asctime)s :: %(name)s %(levelname)s :: %(message)s",
    )
    logging.getLogger("CyclicHWP").setLevel(level)


def run_cli(argv=None):
    """Parse argv, run the subcommand and return its exit status"""
    from CyclicHWP.errors import ConstructionError, InputError

    parser = build_parser()
    args = parser.parse_args(argv)
    configure_logging(args)

    if args.command is None:
        parser.print_help()
        return 2

    try:
        if args.command == "generate":
            from CyclicHWP.interface import run_generate
            return run_generate(args)
        elif args.command == "verify":
            from CyclicHWP.interface import run_verify
            return run_verify(args)
        elif args.command == "skolem":
            from CyclicHWP.interface import run_skolem
            return run_skolem(args)
        elif args.command == "develop":
            from CyclicHWP.interface import run_develop
            return run_develop(args)
        elif args.command == "trace":
            from CyclicHWP.interface import run_trace
            return run_trace(args)
        elif args.command == "sweep":
            from CyclicHWP.sweep import run_sweep
            return run_sweep(args)
    except InputError as e:
        print(f"Error: {e}", file=sys.stderr)
        return 2
    except ConstructionError as e:
        print(f"Error: {e}", file=sys.stderr)
        return 1
    except OSError as e:
        print(f"Error: {e}", file=sys.stderr)
        return 2
    return 2


def main(argv=None):
    sys.exit(run_cli(argv))


# run the application
if __name__ == "__main__":
    main()
