"""
Gabor matrices of integral operators and the norm formulas built on them.

The Gabor matrix of A with kernel K in the frame (g, gamma) is
K_{l,m} = <A pi(m)gamma, pi(l)g>; it is the matrix of C_g A D_gamma acting on
lattice sequences, (A~ a)_l = sum_m K_{l,m} a_m.
"""

import logging

import numpy as np
from django.core.exceptions import ValidationError

from core.tensors import (
    AxisPermutation,
    Exponent,
    ExponentVector,
    as_complex_tensor,
    mixed_norm,
    permute_axes,
)
from tfa.domain import GaborMatrix
from tfa.gabor import gabor_atoms
from tfa.modspaces import CATALOG
from tfa.timefreq import stft_kernel
from tfa.utils import as_kernel, require_same_modulus

logger = logging.getLogger(__name__)

SCHUR_EXPONENTS = ExponentVector.of(1, "inf", 1, "inf")
HALF_SWAP = AxisPermutation((3, 4, 1, 2))

SCHUR_SIDES = {
    "c3": "l^{inf,1}",
    "c4": "l^{1,inf}",
}


def _as_matrix(values):
    matrix = as_complex_tensor(values, name="matrix")
    if matrix.ndim != 2:
        raise ValidationError(f"matrix: expected rank 2, got shape {matrix.shape}")
    return matrix


def _as_gabor_tensor(values):
    tensor = as_complex_tensor(values, name="K4")
    if tensor.ndim != 4:
        raise ValidationError(f"K4: expected rank 4, got shape {tensor.shape}")
    return tensor


def gabor_matrix(kernel, frame):
    """
    Gabor matrix computed directly: apply K to pi(m)gamma, pair with pi(l)g.

    Args:
        kernel: K, shape (N, N)
        frame: GaborFrameData

    Returns:
        GaborMatrix with values indexed (l1, l2, m1, m2) by lattice indices
    """
    kernel = as_kernel(kernel)
    require_same_modulus(("kernel", kernel), ("window", frame.window))
    lattice = frame.lattice
    logger.debug(f"Gabor matrix of a kernel on {lattice.size} lattice points")
    analysis = gabor_atoms(frame.window, lattice)
    synthesis = gabor_atoms(frame.dual_window, lattice)
    flat = analysis.conj().T @ (kernel @ synthesis)
    return GaborMatrix(values=flat.reshape(lattice.shape + lattice.shape), frame=frame)


def gabor_matrix_from_stft(kernel, frame):
    """
    Gabor matrix read off the kernel STFT: (V_G K o c~1)(l1, l2, m1, -m2 mod N).

    Args:
        kernel: K, shape (N, N)
        frame: GaborFrameData

    Returns:
        numpy.ndarray: Rank-4 values, same indexing as gabor_matrix
    """
    lattice = frame.lattice
    table = permute_axes(stft_kernel(kernel, frame.window, frame.dual_window), CATALOG["c1"])
    times, frequencies = lattice.times, lattice.frequencies
    flipped = (-frequencies) % lattice.N
    return table[np.ix_(times, frequencies, times, flipped)]


def exact_norm_l1_to_lp(matrix, p):
    """
    ||M||_{l^1 -> l^p} = max over columns of the column l^p norm.

    Args:
        matrix: M with (Ma)_i = sum_j M_ij a_j
        p: Exponent

    Returns:
        float
    """
    p = Exponent.coerce(p)
    return mixed_norm(_as_matrix(matrix), ExponentVector.of(p, Exponent.infinity()))


def exact_norm_lp_to_linf(matrix, p):
    """
    ||M||_{l^p -> l^inf} = max over rows of the row l^{p'} norm.

    Args:
        matrix: M with (Ma)_i = sum_j M_ij a_j
        p: Exponent

    Returns:
        float
    """
    p = Exponent.coerce(p)
    return mixed_norm(_as_matrix(matrix).T, ExponentVector.of(p.conjugate(), Exponent.infinity()))


def schur_bound(tensor, which):
    """
    Schur-type bound ||K o c~||_{l^{1,inf,1,inf}}.

    The "c3" side bounds the operator on l^{inf,1}, the "c4" side on l^{1,inf}.

    Args:
        tensor: K4 indexed (l1, l2, m1, m2)
        which: "c3" or "c4"

    Returns:
        float

    Raises:
        ValidationError: On an unknown side or a tensor that is not rank 4
    """
    if which not in SCHUR_SIDES:
        raise ValidationError(f"which must be one of {', '.join(SCHUR_SIDES)}, got {which!r}")
    tensor = _as_gabor_tensor(tensor)
    return mixed_norm(permute_axes(tensor, CATALOG[which]), SCHUR_EXPONENTS)


def schur_pq_conditions(tensor):
    """
    Quantities whose finiteness gives continuity on every l^{p,q}.

    Args:
        tensor: K4 indexed (l1, l2, m1, m2)

    Returns:
        dict: c3 and c4 Schur bounds, the column bound sup_m sum_l |K| and the
        row bound sup_l sum_m |K| (K o c0 with the l and m halves swapped)
    """
    tensor = _as_gabor_tensor(tensor)
    column_exponents = ExponentVector.of(1, 1, "inf", "inf")
    return {
        "c3": schur_bound(tensor, "c3"),
        "c4": schur_bound(tensor, "c4"),
        "columns": mixed_norm(tensor, column_exponents),
        "rows": mixed_norm(permute_axes(tensor, HALF_SWAP), column_exponents),
    }


def apply_tensor_operator(tensor, sequence):
    """(A~ a)_{l1,l2} = sum_{m1,m2} K4[l1, l2, m1, m2] a[m1, m2]."""
    tensor = _as_gabor_tensor(tensor)
    sequence = as_complex_tensor(sequence, name="sequence")
    if sequence.shape != tensor.shape[2:]:
        raise ValidationError(
            f"sequence: expected shape {tensor.shape[2:]}, got {sequence.shape}"
        )
    return np.tensordot(tensor, sequence, axes=([2, 3], [0, 1]))


def fourier_matrix(N):
    """Unitary Fourier matrix F_jk = N^{-1/2} e^{-2 pi i jk / N}."""
    if int(N) < 1:
        raise ValidationError(f"Modulus N must be >= 1, got {N}")
    index = np.arange(int(N))
    phases = np.outer(index, index) % N
    return np.exp(-2j * np.pi * phases / N) / np.sqrt(N)


def fourier_tensor(N):
    """K4[l1, l2, m1, m2] = F[l2, m1]."""
    matrix = fourier_matrix(N)
    return np.ascontiguousarray(np.broadcast_to(matrix[None, :, :, None], (N,) * 4))
