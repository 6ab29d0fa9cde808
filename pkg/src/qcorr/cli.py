"""Command-line entry point running the experiments and writing their tables as CSV.

Usage::

    qcorr spectrum --config harmonic.cfg --out spectrum.csv
    qcorr ambiguity --config ambiguity.cfg --threads 3
    qcorr correlate --config harmonic.cfg
    qcorr oracle-check --config oracle.cfg

Exit codes: 0 success, 2 configuration error, 3 refusal (enumeration budget, ill-conditioned
inverse, unresolved grid, unconverged eigensolver), 4 acceptance failure of the oracle check. The
default of ``--threads`` is read from the ``QCORR_THREADS`` environment variable.

Observables in configuration files use the prefix syntax of `qcorr.observables.parser`:
``phi(n)``, ``phi2(n)``, ``dfwd(n)``, ``dsym(n)``, ``dkin2(n)``, ``mul(a,b)``, ``qmul(a,b)``.
"""

# License: BSD 3-clause

import argparse
import logging
import os
import sys
from typing import Sequence

from qcorr.config.experiment_config import load_config
from qcorr.decorators import registered_runners
from qcorr.exceptions import BudgetExceededError, ConfigError, ConvergenceError, GridCouplingError, IllConditionedError, InvalidFixtureError
from qcorr.runners import csv_text
from qcorr.runners.oracle_runner import OracleCheckRunner

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_REFUSED = 3
EXIT_FAILED = 4
THREADS_ENV = "QCORR_THREADS"


def _default_threads() -> int:
    value = os.environ.get(THREADS_ENV, "1")
    try:
        threads = int(value)
    except ValueError:
        threads = 0
    if threads < 1:
        logging.warning(f"Ignoring {THREADS_ENV}={value!r}; using 1 thread")
        return 1
    return threads


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qcorr", description="Transfer-matrix experiments for a chain of coupled anharmonic oscillators.")
    subparsers = parser.add_subparsers(dest="command", required=True)
    for name, runner in registered_runners().items():
        summary = next(iter((runner.__doc__ or "").strip().splitlines()), "")
        sub = subparsers.add_parser(name, help=summary)
        sub.add_argument("--config", required=True, help="experiment configuration file")
        sub.add_argument("--out", default=None, help="CSV output file (standard output when omitted)")
        sub.add_argument("--threads", type=int, default=None, help=f"worker threads (default: ${THREADS_ENV} or 1)")
        sub.add_argument("--verbose", action="store_true", help="log progress to standard error")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    """
    Run one experiment from the command line.

    Parameters
    ----------
    argv : Sequence[str] | None, default=None
        Arguments without the program name; ``sys.argv[1:]`` when None.

    Returns
    -------
    int
        The exit code.
    """
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, stream=sys.stderr, format="%(levelname)s: %(message)s", force=True)

    threads = _default_threads() if args.threads is None else args.threads
    if threads < 1:
        print(f"qcorr: --threads must be a positive integer. Got {threads}", file=sys.stderr)
        return EXIT_CONFIG

    try:
        config = load_config(args.config)
        runner = registered_runners()[args.command](config, threads=threads)
        df = runner.run()
    except (BudgetExceededError, IllConditionedError, GridCouplingError, ConvergenceError) as e:
        print(f"qcorr: refused: {e}", file=sys.stderr)
        return EXIT_REFUSED
    except InvalidFixtureError as e:
        print(f"qcorr: oracle check failed: {e}", file=sys.stderr)
        return EXIT_FAILED
    except ValueError as e:
        # ConfigError, and value errors raised while building the model from the configuration
        print(f"qcorr: configuration error: {e}", file=sys.stderr)
        return EXIT_CONFIG

    text = csv_text(df)
    if args.out is None:
        sys.stdout.write(text)
    else:
        with open(args.out, "w", encoding="utf-8", newline="") as handle:
            handle.write(text)

    if isinstance(runner, OracleCheckRunner) and not runner.passed:
        print("qcorr: oracle check failed", file=sys.stderr)
        return EXIT_FAILED
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
