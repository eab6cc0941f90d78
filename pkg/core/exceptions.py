"""
Exceptions raised when a mathematical precondition fails.

Argument errors (bad shapes, exponents, files) are reported with
django.core.exceptions.ValidationError; the classes below cover the cases
where the input is well formed but the mathematics refuses it.
"""


class NotAFrame(Exception):
    """
    The Gabor system is not a frame within the acceptance threshold.

    Attributes:
        lower: Smallest eigenvalue A of the frame operator (None if not computed)
        upper: Largest eigenvalue B of the frame operator (None if not computed)
    """

    def __init__(self, message, lower=None, upper=None):
        super().__init__(message)
        self.lower = lower
        self.upper = upper


class DensityTooLow(NotAFrame):
    """Lattice with ab > N: fewer lattice points than the signal dimension."""


class ConvergenceError(RuntimeError):
    """An iterative estimator hit its iteration cap without converging."""
