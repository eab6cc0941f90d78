"""
Fourier-matrix gap experiment: Schur bound N^{3/2} against the bound N.

Usage:
    python manage.py gap --N 4,9,16,25 --output gap.csv
"""

from django.core.exceptions import ValidationError

from tfa.services import GapExperimentService
from tfa.utils import format_table, write_table_csv

from ._base import ModkernelCommand, report_path

HEADERS = ["N", "schur", "certified", "lower", "ratio"]


class Command(ModkernelCommand):
    help = "Tabulate schur, certified and search lower bounds for the Fourier-matrix operator"
    defaults = {"N": "4,9,16,25"}

    def run(self, config, options):
        small = [N for N in config.moduli if N < 2]
        if small:
            raise ValidationError(f"N: the gap experiment needs N >= 2, got {small}")

        rows = GapExperimentService.run(config.moduli, config.search)
        table = [(row.N, row.schur, row.certified, row.lower, row.ratio) for row in rows]
        self.stdout.write(format_table(HEADERS, table))

        if config.output:
            write_table_csv(config.output, HEADERS, table)
            records = [
                dict(zip(HEADERS, values), spectral=row.spectral, search=row.search)
                for values, row in zip(table, rows)
            ]
            payload = self.report(config, rows=records)
            self.write_report(report_path(config.output), payload)
