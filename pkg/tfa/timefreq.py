"""
Time-frequency analysis on Z_N.

The modulation character is e^{2 pi i xi t / N}; the STFT carries no 1/sqrt(N)
factor, so Moyal's identity reads sum |V_g f|^2 = N ||f||^2 ||g||^2 and the
(x, xi) grid carries the measure 1/N when integrating back to signals.

Functions:
    character: e^{2 pi i k / N} for integer arrays k
    tf_shift_apply: pi(x, xi) f
    stft: V_g f(x, xi), shape (N, N)
    stft_kernel: V_G K(x1, x2, xi1, xi2) with G = g (x) conj(gamma), shape (N, N, N, N)
    upsilon_apply: Inversion operator for permuted STFT tables
    apply_kernel: (Af)(x) = sum_y K(x, y) f(y)
"""

import logging

import numpy as np
from django.core.exceptions import ValidationError

from core.tensors import as_complex_tensor, coerce_permutation, permute_axes
from tfa.utils import as_kernel, as_signal, require_same_modulus

logger = logging.getLogger(__name__)


def character(k, N):
    """e^{2 pi i k / N}, with k reduced mod N before scaling to keep the phase exact."""
    return np.exp(2j * np.pi * (np.asarray(k) % N) / N)


def _shift_indices(N):
    # [x, t] -> (t - x) mod N
    t = np.arange(N)
    return (t[None, :] - t[:, None]) % N


def tf_shift_apply(shift, signal):
    """
    Apply pi(x, xi): (pi(x, xi) f)(t) = e^{2 pi i xi t / N} f(t - x).

    Args:
        shift: TFShift
        signal: Signal f of length N

    Returns:
        numpy.ndarray: Shifted signal, same l2 norm

    Raises:
        ValidationError: If shift.N differs from the signal length
    """
    signal = as_signal(signal)
    if shift.N != signal.shape[0]:
        raise ValidationError(
            f"Modulus mismatch (shift: N={shift.N}, signal: N={signal.shape[0]})"
        )
    t = np.arange(shift.N)
    return character(shift.xi * t, shift.N) * np.roll(signal, shift.x)


def tf_shift_matrix(shift):
    """Matrix of pi(x, xi) acting on column vectors of length N."""
    N = shift.N
    translation = np.roll(np.eye(N, dtype=np.complex128), shift.x, axis=0)
    return character(shift.xi * np.arange(N), N)[:, None] * translation


def stft(signal, window):
    """
    Short-time Fourier transform V_g f(x, xi) = sum_t f(t) conj(g(t - x)) e^{-2 pi i xi t / N}.

    Each x-slice is the unnormalized DFT of t -> f(t) conj(g(t - x)).

    Args:
        signal: f, length N
        window: g, length N

    Returns:
        numpy.ndarray: shape (N, N) indexed (x, xi)

    Raises:
        ValidationError: On modulus mismatch
    """
    signal = as_signal(signal, name="signal")
    window = as_signal(window, name="window")
    N = require_same_modulus(("signal", signal), ("window", window))
    localized = signal[None, :] * np.conj(window[_shift_indices(N)])
    return np.fft.fft(localized, axis=1)


def stft_kernel(kernel, window, dual_window):
    """
    Two-dimensional STFT of a kernel with window G(t1, t2) = g(t1) conj(gamma(t2)).

    V_G K(x1, x2, xi1, xi2)
        = sum_{t1, t2} K(t1, t2) conj(g(t1 - x1)) gamma(t2 - x2) e^{-2 pi i (xi1 t1 + xi2 t2) / N}

    Args:
        kernel: K, shape (N, N)
        window: g, length N
        dual_window: gamma, length N

    Returns:
        numpy.ndarray: shape (N, N, N, N) indexed (x1, x2, xi1, xi2)

    Raises:
        ValidationError: On modulus mismatch
    """
    kernel = as_kernel(kernel)
    window = as_signal(window, name="window")
    dual_window = as_signal(dual_window, name="dual_window")
    N = require_same_modulus(("kernel", kernel), ("window", window), ("dual_window", dual_window))
    logger.debug(f"Computing rank-4 STFT of a kernel at N={N}")
    shifts = _shift_indices(N)
    first = np.conj(window[shifts])
    second = dual_window[shifts]
    localized = np.einsum("ab,xa,yb->xyab", kernel, first, second)
    return np.fft.fft2(localized, axes=(2, 3))


def upsilon_apply(table, window, permutation):
    """
    Inversion operator Upsilon_psi F(t) = (1/N) sum_w F(w) (pi(c~(w)) psi)(t).

    With F = V_g f o c~ this returns <psi, g> f for every permutation c.

    Args:
        table: F, shape (N, N) over the permuted (x, xi) grid
        window: psi, length N
        permutation: AxisPermutation c of length 2

    Returns:
        numpy.ndarray: Signal of length N

    Raises:
        ValidationError: If F is not (N, N) or c has the wrong length
    """
    window = as_signal(window, name="window")
    table = as_complex_tensor(table, name="table")
    N = window.shape[0]
    if table.shape != (N, N):
        raise ValidationError(f"table: expected shape ({N}, {N}), got {table.shape}")
    permutation = coerce_permutation(permutation)
    if len(permutation) != 2:
        raise ValidationError(f"permutation: expected length 2, got {len(permutation)}")

    # sum over w of F(w) pi(c~ w) = sum over z of (F o c~^{-1})(z) pi(z)
    grid = permute_axes(table, permutation.inverse())
    synthesized = np.fft.ifft(grid, axis=1)
    return np.sum(window[_shift_indices(N)] * synthesized, axis=0)


def apply_kernel(kernel, signal):
    """
    Integral operator (Af)(x) = sum_y K(x, y) f(y).

    Raises:
        ValidationError: On modulus mismatch
    """
    kernel = as_kernel(kernel)
    signal = as_signal(signal)
    require_same_modulus(("kernel", kernel), ("signal", signal))
    return kernel @ signal
