"""
Boundedness certificates for the operator with a given kernel.

Usage:
    python manage.py certify --input K.csv --N 8 --lattice 2,2 --output report.json
"""

from django.core.exceptions import ValidationError

from tfa.gabor import build_frame
from tfa.services import CertificationService
from tfa.utils import format_table

from ._base import ModkernelCommand

MEASURE_NOTES = {
    "l1": "exact",
    "linf": "exact",
    "l2": "power iteration",
    "l^{inf,1}": "search lower bound",
    "l^{1,inf}": "search lower bound",
}


class Command(ModkernelCommand):
    help = "Certify M^p and M^{p,q} bounds of a kernel operator and measure lower bounds"
    uses_input = True

    def run(self, config, options):
        kernel = self.load_input(config, options)
        if kernel.ndim != 2:
            raise ValidationError(f"input: expected a kernel with N^2={config.N ** 2} entries")

        frame = build_frame(config.load_window(), config.build_lattice())
        prepared = CertificationService.prepare(kernel, frame)
        all_mp = CertificationService.certify_all_mp(prepared, frame)
        all_mpq = CertificationService.certify_all_mpq(prepared, frame)
        measured = CertificationService.measure(prepared, frame, config.search)

        self.stdout.write(
            f"frame N={frame.N} a={frame.lattice.a} b={frame.lattice.b}: "
            f"A={frame.lower_bound!r}, B={frame.upper_bound!r}"
        )
        rows = [(all_mp.space_pair, all_mp.bound, "")]
        rows += [(f"  {name}", value, "") for name, value in all_mp.ingredients.items()]
        rows += [("  interpolated at p=2", all_mp.bound_at(2), "")]
        rows += [(all_mpq.space_pair, all_mpq.bound, "")]
        rows += [(f"  {name}", value, "") for name, value in all_mpq.ingredients.items()]
        verdicts = {**all_mp.verdicts, **all_mpq.verdicts}
        rows += [(f"bounded on {name}", "", "yes" if ok else "no") for name, ok in verdicts.items()]
        rows += [
            (f"measured {name}", value, MEASURE_NOTES[name]) for name, value in measured.items()
        ]
        self.stdout.write(format_table(["quantity", "value", "note"], rows))

        payload = self.report(
            config,
            input=str(options["input"]),
            frame={
                "lower_bound": frame.lower_bound,
                "upper_bound": frame.upper_bound,
                "condition_number": frame.condition_number,
            },
            certify_all_mp=all_mp,
            interpolated={"2": all_mp.bound_at(2)},
            certify_all_mpq=all_mpq,
            measured=measured,
        )
        if config.output:
            self.write_report(config.output, payload)
