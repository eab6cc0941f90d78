"""
Frame bounds and canonical dual window of a Gabor system.

Usage:
    python manage.py gabor --N 8 --lattice 2,2 --output dual.csv
"""

from tfa.gabor import build_frame
from tfa.utils import format_table, write_complex_csv

from ._base import ModkernelCommand, report_path


class Command(ModkernelCommand):
    help = "Print frame bounds A, B and B/A; write the canonical dual window"

    def run(self, config, options):
        frame = build_frame(config.load_window(), config.build_lattice())
        rows = [
            ("A", frame.lower_bound),
            ("B", frame.upper_bound),
            ("B/A", frame.condition_number),
        ]
        self.stdout.write(
            f"Gabor system N={frame.N} a={frame.lattice.a} b={frame.lattice.b}"
            f"{' (tight)' if frame.is_tight else ''}"
        )
        self.stdout.write(format_table(["bound", "value"], rows))

        if config.output:
            write_complex_csv(config.output, frame.dual_window)
            payload = self.report(
                config,
                lower_bound=frame.lower_bound,
                upper_bound=frame.upper_bound,
                condition_number=frame.condition_number,
                tight=frame.is_tight,
                dual_window=str(config.output),
            )
            self.write_report(report_path(config.output), payload)
