"""
Mixed modulation norms for signals and kernels.

A mixed modulation norm permutes the STFT coordinates by c~ before taking a
nested mixed norm: ||f||_{M(c)^{p_1..p_k}} = || V_g f o c~ ||_{l^{p_1..p_k}}.
"""

import logging
import math
from dataclasses import dataclass

import numpy as np
from django.core.exceptions import ValidationError

from core.tensors import (
    AxisPermutation,
    ExponentVector,
    as_complex_tensor,
    coerce_permutation,
    mixed_norm,
    permute_axes,
)
from tfa.gabor import build_frame
from tfa.timefreq import stft, stft_kernel
from tfa.utils import as_kernel, as_signal, require_nonzero_window

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CatalogEntry:
    """
    A named permutation stored with the matrix it is written down as.

    Attributes:
        name: Catalog name, e.g. "c1"
        permutation: AxisPermutation
        matrix: Permutation matrix as displayed, rows of 0/1
        description: Coordinate map in words
    """

    name: str
    permutation: AxisPermutation
    matrix: tuple
    description: str

    def matches_matrix(self):
        return np.array_equal(np.asarray(self.matrix), self.permutation.matrix)


class PermutationCatalog:
    """
    The named permutations c0..c6.

    c0 acts on signals (swap time and frequency); c1..c6 act on kernel
    coordinates (x1, x2, xi1, xi2). c5 and c6 are products c1 c3 and c1 c4.
    """

    SIGNAL_NAMES = ("c0",)
    KERNEL_NAMES = ("c1", "c2", "c3", "c4", "c5", "c6")

    def __init__(self):
        c1 = AxisPermutation((1, 3, 2, 4))
        c3 = AxisPermutation((2, 3, 1, 4))
        c4 = AxisPermutation((1, 4, 2, 3))
        self._entries = {
            "c0": CatalogEntry(
                "c0", AxisPermutation((2, 1)), ((0, 1), (1, 0)), "(x, xi) -> (xi, x)"
            ),
            "c1": CatalogEntry(
                "c1",
                c1,
                ((1, 0, 0, 0), (0, 0, 1, 0), (0, 1, 0, 0), (0, 0, 0, 1)),
                "(x1, x2, x3, x4) -> (x1, x3, x2, x4)",
            ),
            "c2": CatalogEntry(
                "c2",
                AxisPermutation((3, 1, 4, 2)),
                ((0, 0, 1, 0), (1, 0, 0, 0), (0, 0, 0, 1), (0, 1, 0, 0)),
                "(x1, x2, x3, x4) -> (x3, x1, x4, x2)",
            ),
            "c3": CatalogEntry(
                "c3",
                c3,
                ((0, 1, 0, 0), (0, 0, 1, 0), (1, 0, 0, 0), (0, 0, 0, 1)),
                "(x1, x2, x3, x4) -> (x2, x3, x1, x4)",
            ),
            "c4": CatalogEntry(
                "c4",
                c4,
                ((1, 0, 0, 0), (0, 0, 0, 1), (0, 1, 0, 0), (0, 0, 1, 0)),
                "(x1, x2, x3, x4) -> (x1, x4, x2, x3)",
            ),
            "c5": CatalogEntry(
                "c5",
                c1.compose(c3),
                ((0, 1, 0, 0), (1, 0, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)),
                "c1 c3",
            ),
            "c6": CatalogEntry(
                "c6",
                c1.compose(c4),
                ((1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 0, 1), (0, 0, 1, 0)),
                "c1 c4",
            ),
        }

    def __getitem__(self, name):
        return self.entry(name).permutation

    def __contains__(self, name):
        return name in self._entries

    def __iter__(self):
        return iter(self._entries)

    def entry(self, name):
        try:
            return self._entries[name]
        except KeyError:
            raise ValidationError(
                f"Unknown permutation {name!r}; expected one of {', '.join(self._entries)}"
            )

    def entries(self):
        return list(self._entries.values())

    def kernel_permutations(self):
        return {name: self[name] for name in self.KERNEL_NAMES}


CATALOG = PermutationCatalog()


def resolve_permutation(permutation):
    """
    Accept a catalog name, an AxisPermutation or a sequence of 1-based indices.

    Raises:
        ValidationError: On an unknown name or a non-bijective map
    """
    if isinstance(permutation, str):
        name = permutation.strip()
        if name in CATALOG:
            return CATALOG[name]
        parts = [part for part in name.replace("(", "").replace(")", "").split(",") if part]
        return coerce_permutation(parts)
    return coerce_permutation(permutation)


@dataclass(frozen=True)
class ModNormSpec:
    """
    A mixed modulation norm: permutation, exponents and window(s).

    Attributes:
        permutation: AxisPermutation of length 2 (signals) or 4 (kernels)
        exponents: ExponentVector of the same length
        windows: One window for signals, (g, gamma) for kernels
    """

    permutation: AxisPermutation
    exponents: ExponentVector
    windows: tuple

    def __post_init__(self):
        permutation = resolve_permutation(self.permutation)
        exponents = ExponentVector.coerce(self.exponents)
        if len(permutation) != len(exponents):
            raise ValidationError(
                f"Permutation {permutation} and exponents {exponents} differ in length"
            )
        expected = 1 if len(permutation) == 2 else 2
        windows = self.windows
        if isinstance(windows, np.ndarray) and windows.ndim == 1:
            windows = (windows,)
        windows = tuple(
            require_nonzero_window(as_signal(window, name="window"), name="window")
            for window in windows
        )
        if len(windows) != expected:
            raise ValidationError(
                f"A rank {len(permutation)} norm needs {expected} window(s), got {len(windows)}"
            )
        object.__setattr__(self, "permutation", permutation)
        object.__setattr__(self, "exponents", exponents)
        object.__setattr__(self, "windows", windows)

    @property
    def is_kernel(self):
        return len(self.permutation) == 4

    def evaluate(self, values):
        """Norm of a signal (rank 2) or a kernel (rank 4)."""
        if self.is_kernel:
            g, gamma = self.windows
            return mod_norm_kernel(values, g, gamma, self.permutation, self.exponents)
        return mod_norm_signal(values, self.windows[0], self.permutation, self.exponents)

    def evaluate_sampled(self, values, lattice):
        return sampled_mod_norm(values, self.windows, lattice, self.permutation, self.exponents)


def _check_lengths(permutation, exponents, rank):
    if len(permutation) != rank or len(exponents) != rank:
        raise ValidationError(
            f"Expected permutation and exponents of length {rank}, "
            f"got {permutation} and {exponents}"
        )


def mod_norm_signal(signal, window, permutation, exponents):
    """
    ||f||_{M(c)^{p1,p2}} = mixed_norm(V_g f o c~, p).

    Args:
        signal: f
        window: Nonzero window g
        permutation: Catalog name ("c0"), AxisPermutation or 1-based indices of length 2
        exponents: ExponentVector of length 2

    Returns:
        float: The norm

    Raises:
        ValidationError: On a zero window or mismatched lengths
    """
    window = require_nonzero_window(as_signal(window, name="window"))
    permutation = resolve_permutation(permutation)
    exponents = ExponentVector.coerce(exponents)
    _check_lengths(permutation, exponents, 2)
    return mixed_norm(permute_axes(stft(signal, window), permutation), exponents)


def mod_norm_kernel(kernel, window, dual_window, permutation, exponents):
    """
    ||K||_{M(c)^{p1..p4}} with window G = g (x) conj(gamma).

    Args:
        kernel: K, shape (N, N)
        window: g
        dual_window: gamma
        permutation: Catalog name ("c1".."c6"), AxisPermutation or indices of length 4
        exponents: ExponentVector of length 4

    Returns:
        float: The norm

    Raises:
        ValidationError: On a zero window or mismatched lengths
    """
    window = require_nonzero_window(as_signal(window, name="window"))
    dual_window = require_nonzero_window(as_signal(dual_window, name="dual_window"))
    return kernel_table_norm(stft_kernel(kernel, window, dual_window), permutation, exponents)


def kernel_table_norm(table, permutation, exponents):
    """
    Mixed modulation norm read off a kernel STFT table computed beforehand.

    Args:
        table: V_G K, shape (N, N, N, N) indexed (x1, x2, xi1, xi2)
        permutation: Catalog name, AxisPermutation or indices of length 4
        exponents: ExponentVector of length 4

    Returns:
        float: ||K||_{M(c)^{p1..p4}}
    """
    permutation = resolve_permutation(permutation)
    exponents = ExponentVector.coerce(exponents)
    _check_lengths(permutation, exponents, 4)
    return mixed_norm(permute_axes(table, permutation), exponents)


def modulation_norm(signal, window, p, q):
    """Classical ||f||_{M^{p,q}}: time inner with p, frequency outer with q."""
    return mod_norm_signal(signal, window, AxisPermutation.identity(2), ExponentVector.of(p, q))


def amalgam_norm(signal, window, p, q):
    """Wiener amalgam ||f||_{W(FL^p, L^q)}: frequency inner with p, time outer with q."""
    return mod_norm_signal(signal, window, CATALOG["c0"], ExponentVector.of(p, q))


def sampled_mod_norm(values, windows, lattice, permutation, exponents):
    """
    Mixed norm of the permuted STFT table restricted to the lattice.

    Signals are sampled on the lattice, kernels on the product lattice, in
    both cases before the permutation is applied.

    Args:
        values: Signal (length N) or kernel (N, N)
        windows: A window for signals; (g, gamma) for kernels
        lattice: Lattice
        permutation: Length 2 for signals, 4 for kernels
        exponents: ExponentVector matching the permutation

    Returns:
        float: The sampled norm

    Raises:
        NotAFrame: If a window does not generate a frame on the lattice
        DensityTooLow: If ab > N
    """
    values = as_complex_tensor(values, name="input")
    permutation = resolve_permutation(permutation)
    exponents = ExponentVector.coerce(exponents)
    if isinstance(windows, np.ndarray) and windows.ndim == 1:
        windows = (windows,)
    windows = tuple(windows)
    a, b = lattice.a, lattice.b

    if values.ndim == 1:
        _check_lengths(permutation, exponents, 2)
        if len(windows) != 1:
            raise ValidationError(f"A signal norm needs one window, got {len(windows)}")
        build_frame(windows[0], lattice)
        table = stft(values, windows[0])[::a, ::b]
    else:
        kernel = as_kernel(values, name="input")
        _check_lengths(permutation, exponents, 4)
        if len(windows) != 2:
            raise ValidationError(f"A kernel norm needs two windows, got {len(windows)}")
        for window in windows:
            build_frame(window, lattice)
        table = stft_kernel(kernel, *windows)[::a, ::a, ::b, ::b]
    logger.debug(f"Sampled norm {permutation} {exponents} on lattice a={a}, b={b}")
    return mixed_norm(permute_axes(table, permutation), exponents)


def equivalence_constant(ratios):
    """
    Smallest C >= 1 with every ratio in [1/C, C].

    Args:
        ratios: Positive ratios between two equivalent norms

    Returns:
        float: C, or math.inf if a ratio is zero or infinite
    """
    ratios = np.asarray(list(ratios), dtype=float)
    if ratios.size == 0:
        return 1.0
    if np.any(ratios <= 0) or not np.all(np.isfinite(ratios)):
        return math.inf
    return float(max(1.0, ratios.max(), 1.0 / ratios.min()))
