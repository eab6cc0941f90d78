"""
Mixed modulation norm of a signal or a kernel.

Usage:
    python manage.py modnorm --input f.csv --N 8 --perm c0 --exps 2,1
    python manage.py modnorm --input K.csv --N 4 --perm c1 --exps 1,1,inf,inf --lattice 2,2
"""

from django.core.exceptions import ValidationError

from core.tensors import AxisPermutation, ExponentVector
from tfa.modspaces import mod_norm_kernel, mod_norm_signal, sampled_mod_norm
from tfa.utils import format_table

from ._base import ModkernelCommand


class Command(ModkernelCommand):
    help = "Compute ||V_g f o c~|| for a signal, or the kernel analogue, on the grid and lattice"
    uses_input = True

    def run(self, config, options):
        values = self.load_input(config, options)
        kind = self.describe_input(values)
        rank = 4 if kind == "kernel" else 2
        permutation = config.permutation or AxisPermutation.identity(rank)
        exponents = config.exponents or ExponentVector(("2",) * rank)
        if len(permutation) != rank or len(exponents) != rank:
            raise ValidationError(
                f"permutation: a {kind} needs permutation and exponents of length {rank}, "
                f"got {permutation} and {exponents}"
            )

        window = config.load_window()
        lattice = config.build_lattice()
        if kind == "kernel":
            windows = (window, window)
            norm = mod_norm_kernel(values, window, window, permutation, exponents)
        else:
            windows = (window,)
            norm = mod_norm_signal(values, window, permutation, exponents)
        if lattice.is_full:
            sampled = norm
        else:
            sampled = sampled_mod_norm(values, windows, lattice, permutation, exponents)

        rows = [
            ("full grid", norm),
            (f"lattice a={lattice.a} b={lattice.b}", sampled),
        ]
        self.stdout.write(f"{kind} N={config.N} permutation={permutation} exponents={exponents}")
        self.stdout.write(format_table(["norm", "value"], rows))

        payload = self.report(
            config,
            input=str(options["input"]),
            kind=kind,
            permutation=permutation,
            exponents=exponents,
            norm=norm,
            sampled_norm=sampled,
        )
        if config.output:
            self.write_report(config.output, payload)
