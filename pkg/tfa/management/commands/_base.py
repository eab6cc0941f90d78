"""
Shared plumbing for the modkernel management commands.

Exit codes: 0 on success, 1 when an iterative estimate does not converge,
2 on a parse or validation error, 3 when the mathematics refuses the input
(not a frame, lattice too sparse).
"""

import logging

import numpy as np
from django.core.exceptions import ValidationError
from django.core.management.base import BaseCommand, CommandError

import core
from core.exceptions import ConvergenceError, NotAFrame
from tfa.forms import RunConfigForm
from tfa.utils import read_complex_csv, write_json_report

logger = logging.getLogger(__name__)

EXIT_FAILURE = 1
EXIT_INVALID = 2
EXIT_NOT_A_FRAME = 3


def report_path(output):
    """
    JSON report path next to a CSV output.

    An output that is itself .json gets a ".report.json" sibling so the
    report never replaces the table.
    """
    if output.suffix == ".json":
        return output.with_name(f"{output.stem}.report.json")
    return output.with_suffix(".json")


class ModkernelCommand(BaseCommand):
    """
    Base command: parses flags and an optional JSON config into a RunConfig,
    then calls run(config, options) and maps failures to exit codes.
    """

    requires_system_checks = []
    defaults = {}
    uses_input = False

    def add_arguments(self, parser):
        parser.add_argument("--config", help="JSON file with RunConfig fields")
        if self.uses_input:
            parser.add_argument("--input", help="CSV file with header 're,im'")
        parser.add_argument("--output", help="Report path")
        parser.add_argument("--seed", type=int, help="Unsigned 64-bit seed")
        parser.add_argument("--N", help="Modulus N")
        parser.add_argument("--lattice", help="Lattice steps 'a,b'")
        parser.add_argument("--window", help="'gaussian' or a window CSV file")
        parser.add_argument("--perm", help="Permutation c0..c6 or 1-based indices")
        parser.add_argument("--exps", help="Exponents, e.g. '1,inf' or '2,2,inf,inf'")
        parser.add_argument("--trials", type=int, help="Random starts of lower-bound searches")
        parser.add_argument("--ascent-steps", type=int, help="Ascent steps per start")

    def handle(self, *args, **options):
        try:
            form = RunConfigForm.from_sources(options.get("config"), options, self.defaults)
            config = form.run_config()
            self.run(config, options)
        except ValidationError as e:
            message = "; ".join(e.messages)
            logger.error(f"{self.__module__.rsplit('.', 1)[-1]}: {message}")
            raise CommandError(message, returncode=EXIT_INVALID)
        except NotAFrame as e:
            message = f"{e} [frame bounds A={e.lower!r}, B={e.upper!r}]"
            raise CommandError(message, returncode=EXIT_NOT_A_FRAME)
        except ConvergenceError as e:
            message = (
                f"{e} [raise MODKERNEL_POWER_ITERATION_CAP or loosen MODKERNEL_POWER_ITERATION_TOL]"
            )
            raise CommandError(message, returncode=EXIT_FAILURE)

    def run(self, config, options):
        raise NotImplementedError

    def load_input(self, config, options):
        """
        Read the input CSV as a signal (N entries) or kernel (N^2 entries).

        Raises:
            ValidationError: If --input is missing or has the wrong entry count
        """
        path = options.get("input")
        if not path:
            raise ValidationError("input: an --input CSV file is required")
        values = read_complex_csv(path)
        N = config.N
        if values.shape[0] == N:
            return values
        if values.shape[0] == N * N:
            return values.reshape((N, N), order="F")
        raise ValidationError(
            f"input: {path} has {values.shape[0]} entries, expected N={N} or N^2={N * N}"
        )

    def report(self, config, **fields):
        """Report record with version, seed and config echo."""
        return {
            "tool_version": core.__version__,
            "command": self.__module__.rsplit(".", 1)[-1],
            "seed": config.seed,
            "config": config.echo(),
            **fields,
        }

    def write_report(self, path, payload):
        write_json_report(path, payload)
        logger.info(f"Wrote report {path}")

    @staticmethod
    def describe_input(values):
        return "kernel" if np.ndim(values) == 2 else "signal"
