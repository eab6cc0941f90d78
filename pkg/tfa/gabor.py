"""
Gabor systems on divisor lattices of Z_N x Z_N.

Functions:
    gabor_atoms: Matrix whose columns are pi(l)g in lattice order
    frame_operator: S = sum_l pi(l)g (pi(l)g)^H
    frame_bounds: Optimal frame bounds (A, B) = extremal eigenvalues of S
    canonical_dual: gamma = S^{-1} g by a Cholesky solve
    build_frame: Validated GaborFrameData
    analyze: Coefficient operator C_g
    synthesize: Synthesis operator D_gamma
    reconstruct: D_gamma C_g f (or D_g C_gamma f)
"""

import logging

import numpy as np
import scipy.linalg
from django.core.exceptions import ValidationError

from core.conf import get_setting
from core.exceptions import DensityTooLow, NotAFrame
from core.tensors import as_complex_tensor
from tfa.domain import GaborFrameData
from tfa.timefreq import character
from tfa.utils import as_signal, require_nonzero_window, require_same_modulus

logger = logging.getLogger(__name__)


def _check_lattice(window, lattice, name="window"):
    if window.shape[0] != lattice.N:
        raise ValidationError(
            f"Modulus mismatch ({name}: N={window.shape[0]}, lattice: N={lattice.N})"
        )


def gabor_atoms(window, lattice):
    """
    Atoms pi(ja, kb) g as the columns of an (N, #lattice) matrix.

    Column j * (N/b) + k holds pi(ja, kb) g.

    Args:
        window: g, length N
        lattice: Lattice

    Returns:
        numpy.ndarray: shape (N, lattice.size)
    """
    window = as_signal(window, name="window")
    _check_lattice(window, lattice)
    N = lattice.N
    t = np.arange(N)
    translated = window[(t[None, :] - lattice.times[:, None]) % N]
    modulations = character(lattice.frequencies[:, None] * t[None, :], N)
    atoms = translated[:, None, :] * modulations[None, :, :]
    return atoms.reshape(lattice.size, N).T


def frame_operator(window, lattice):
    """
    Frame operator S f = sum over the lattice of <f, pi(l)g> pi(l)g, as a matrix.

    Args:
        window: Nonzero window g
        lattice: Lattice

    Returns:
        numpy.ndarray: Hermitian positive semidefinite (N, N) matrix

    Raises:
        ValidationError: On a zero window or modulus mismatch
    """
    window = require_nonzero_window(as_signal(window, name="window"))
    atoms = gabor_atoms(window, lattice)
    operator = atoms @ atoms.conj().T
    return (operator + operator.conj().T) / 2


def frame_bounds(operator):
    """
    Optimal frame bounds of a frame operator.

    Args:
        operator: Frame operator S

    Returns:
        tuple: (A, B) = (smallest, largest) eigenvalue; A = 0 signals "not a frame"
    """
    eigenvalues = scipy.linalg.eigvalsh(as_complex_tensor(operator, name="frame_operator"))
    return max(float(eigenvalues[0]), 0.0), float(eigenvalues[-1])


def canonical_dual(window, operator, acceptance_ratio=None):
    """
    Canonical dual window gamma = S^{-1} g.

    Args:
        window: g
        operator: Frame operator S of g
        acceptance_ratio: Frame valid iff A > ratio * B (default MODKERNEL_FRAME_ACCEPTANCE_RATIO)

    Returns:
        numpy.ndarray: gamma

    Raises:
        NotAFrame: If A <= ratio * B
    """
    window = as_signal(window, name="window")
    if acceptance_ratio is None:
        acceptance_ratio = get_setting("MODKERNEL_FRAME_ACCEPTANCE_RATIO", 1e-8)
    lower, upper = frame_bounds(operator)
    if lower <= acceptance_ratio * upper:
        raise NotAFrame(
            f"Frame operator is singular to working precision (A={lower!r}, B={upper!r})",
            lower=lower,
            upper=upper,
        )
    factor = scipy.linalg.cho_factor(operator)
    return scipy.linalg.cho_solve(factor, window)


def build_frame(window, lattice, acceptance_ratio=None):
    """
    Validate G(g, lattice) as a frame and compute its canonical dual.

    Args:
        window: Nonzero window g
        lattice: Lattice
        acceptance_ratio: See canonical_dual

    Returns:
        GaborFrameData

    Raises:
        ValidationError: On a zero window or modulus mismatch
        DensityTooLow: If ab > N
        NotAFrame: If the frame operator is numerically singular
    """
    window = require_nonzero_window(as_signal(window, name="window"))
    _check_lattice(window, lattice)
    if not lattice.admits_frame():
        logger.warning(f"Rejected lattice a={lattice.a}, b={lattice.b} at N={lattice.N}")
        raise DensityTooLow(
            f"Lattice density too low: ab={lattice.a * lattice.b} > N={lattice.N}, "
            f"so {lattice.size} atoms cannot span C^{lattice.N}"
        )

    operator = frame_operator(window, lattice)
    lower, upper = frame_bounds(operator)
    try:
        dual = canonical_dual(window, operator, acceptance_ratio)
    except NotAFrame:
        logger.warning(f"Not a frame at N={lattice.N}, a={lattice.a}, b={lattice.b}: A={lower}")
        raise

    logger.info(
        f"Built Gabor frame N={lattice.N} a={lattice.a} b={lattice.b}: "
        f"A={lower:.6g}, B={upper:.6g}"
    )
    return GaborFrameData(
        window=window,
        lattice=lattice,
        frame_operator=operator,
        lower_bound=lower,
        upper_bound=upper,
        dual_window=dual,
    )


def analyze(signal, window, lattice):
    """
    Coefficient operator (C_g f)_l = <f, pi(l)g>.

    Args:
        signal: f
        window: g
        lattice: Lattice

    Returns:
        numpy.ndarray: shape (N/a, N/b), the STFT sampled on the lattice
    """
    signal = as_signal(signal, name="signal")
    window = as_signal(window, name="window")
    require_same_modulus(("signal", signal), ("window", window))
    atoms = gabor_atoms(window, lattice)
    return (atoms.conj().T @ signal).reshape(lattice.shape)


def synthesize(coefficients, window, lattice):
    """
    Synthesis operator D_gamma c = sum_l c_l pi(l)gamma.

    Args:
        coefficients: shape (N/a, N/b)
        window: gamma
        lattice: Lattice

    Returns:
        numpy.ndarray: Signal of length N

    Raises:
        ValidationError: If the coefficient shape does not match the lattice
    """
    coefficients = as_complex_tensor(coefficients, name="coefficients")
    if coefficients.shape != lattice.shape:
        raise ValidationError(
            f"coefficients: expected shape {lattice.shape} for the lattice, "
            f"got {coefficients.shape}"
        )
    return gabor_atoms(window, lattice) @ coefficients.ravel()


def reconstruct(signal, frame, swap=False):
    """
    Gabor expansion f = sum <f, pi(l)g> pi(l)gamma, or with the windows swapped.

    Args:
        signal: f
        frame: GaborFrameData
        swap: Analyze with gamma and synthesize with g instead

    Returns:
        numpy.ndarray: The reconstructed signal
    """
    analysis, synthesis = frame.window, frame.dual_window
    if swap:
        analysis, synthesis = synthesis, analysis
    coefficients = analyze(signal, analysis, frame.lattice)
    return synthesize(coefficients, synthesis, frame.lattice)
