"""
Brute-force references for validating the fast paths.

Nothing here imports tfa.timefreq, tfa.gabor, tfa.kernels or tfa.services:
the STFTs are plain loops and the operator norms come from power iteration
and randomized ascent.

Functions:
    stft_reference: O(N^3) STFT
    stft_kernel_reference: O(N^6) kernel STFT
    apply_kernel_reference: Double loop matrix-vector product
    opnorm_l2: Largest singular value by power iteration on M^H M
    mixed_opnorm_lower: Lower bound for ||A~||_{l^src -> l^dst} on rank-4 operators
    ascent_trace: Best-so-far values of a single ascent run
    enumerate_l1_domain_norm: max_j ||M e_j||_p
"""

import cmath
import logging

import numpy as np
from django.core.exceptions import ValidationError

from core.conf import get_setting
from core.exceptions import ConvergenceError
from core.tensors import Exponent, ExponentVector, as_complex_tensor
from tfa.domain import SearchConfig
from tfa.utils import as_kernel, as_signal, require_same_modulus

logger = logging.getLogger(__name__)

# Width of the start block of opnorm_l2
POWER_BLOCK = 8


def stft_reference(signal, window):
    """V_g f(x, xi) by the defining triple sum."""
    signal = as_signal(signal, name="signal")
    window = as_signal(window, name="window")
    N = require_same_modulus(("signal", signal), ("window", window))
    table = np.zeros((N, N), dtype=np.complex128)
    for x in range(N):
        for xi in range(N):
            total = 0j
            for t in range(N):
                phase = cmath.exp(-2j * cmath.pi * ((xi * t) % N) / N)
                total += signal[t] * window[(t - x) % N].conjugate() * phase
            table[x, xi] = total
    return table


def stft_kernel_reference(kernel, window, dual_window):
    """V_G K(x1, x2, xi1, xi2) with G = g (x) conj(gamma), by the defining sum."""
    kernel = as_kernel(kernel)
    window = as_signal(window, name="window")
    dual_window = as_signal(dual_window, name="dual_window")
    N = require_same_modulus(("kernel", kernel), ("window", window), ("dual_window", dual_window))
    table = np.zeros((N,) * 4, dtype=np.complex128)
    for x1 in range(N):
        for x2 in range(N):
            for xi1 in range(N):
                for xi2 in range(N):
                    total = 0j
                    for t1 in range(N):
                        for t2 in range(N):
                            phase = cmath.exp(-2j * cmath.pi * ((xi1 * t1 + xi2 * t2) % N) / N)
                            total += (
                                kernel[t1, t2]
                                * window[(t1 - x1) % N].conjugate()
                                * dual_window[(t2 - x2) % N]
                                * phase
                            )
                    table[x1, x2, xi1, xi2] = total
    return table


def apply_kernel_reference(kernel, signal):
    kernel = as_kernel(kernel)
    signal = as_signal(signal)
    N = require_same_modulus(("kernel", kernel), ("signal", signal))
    result = np.zeros(N, dtype=np.complex128)
    for x in range(N):
        total = 0j
        for y in range(N):
            total += kernel[x, y] * signal[y]
        result[x] = total
    return result


def opnorm_l2(matrix, config=None):
    """
    Largest singular value of M by block power iteration on M^H M.

    A block of up to POWER_BLOCK orthonormal vectors is multiplied by M^H M
    and re-orthonormalized each step; the top Ritz value of the block is the
    estimate. Stops once it changes by less than the tolerance between two
    iterations or its Ritz vector has residual ||M^H M v - lambda v|| below
    tolerance * lambda.

    Args:
        matrix: Rank-2 array, any shape
        config: SearchConfig supplying the seed of the start block

    Returns:
        float: sigma_max(M), 0.0 for the zero matrix

    Raises:
        ConvergenceError: If neither criterion holds within
            MODKERNEL_POWER_ITERATION_CAP iterations
    """
    matrix = as_complex_tensor(matrix, name="matrix")
    if matrix.ndim != 2:
        raise ValidationError(f"matrix: expected rank 2, got shape {matrix.shape}")
    config = config or SearchConfig()
    cap = get_setting("MODKERNEL_POWER_ITERATION_CAP", 20000)
    tolerance = get_setting("MODKERNEL_POWER_ITERATION_TOL", 1e-12)

    rng = config.generator()
    columns = matrix.shape[1]
    width = min(columns, POWER_BLOCK)
    start = rng.standard_normal((columns, width)) + 1j * rng.standard_normal((columns, width))
    basis, _ = np.linalg.qr(start)
    gram = matrix.conj().T @ matrix

    previous = None
    for _ in range(cap):
        image = gram @ basis
        if not np.any(image):
            return 0.0
        values, vectors = np.linalg.eigh(basis.conj().T @ image)
        estimate = max(float(values[-1]), 0.0)
        top = vectors[:, -1]
        residual = np.linalg.norm(image @ top - estimate * (basis @ top))
        if previous is not None and (
            abs(estimate - previous) < tolerance * estimate or residual <= tolerance * estimate
        ):
            return float(np.sqrt(estimate))
        previous = estimate
        basis, _ = np.linalg.qr(image)

    logger.error(f"Power iteration did not converge in {cap} steps (last estimate {previous})")
    raise ConvergenceError(
        f"Power iteration did not reach tolerance {tolerance} within {cap} iterations"
    )


def _phase(values):
    magnitudes = np.abs(values)
    safe = np.where(magnitudes > 0, magnitudes, 1.0)
    return np.where(magnitudes > 0, values / safe, 0.0)


def _norming_columns(values, exponent):
    """
    Column-wise norming vectors: z_j with ||z_j||_{p'} = 1 and <v_j, z_j> = ||v_j||_p.

    Zero columns get a zero norming vector.
    """
    magnitudes = np.abs(values)
    phase = _phase(values)
    if exponent.is_infinite:
        result = np.zeros_like(values, dtype=np.complex128)
        rows = np.argmax(magnitudes, axis=0)
        columns = np.arange(values.shape[1])
        result[rows, columns] = phase[rows, columns]
        return result
    if exponent.finite == 1.0:
        return phase.astype(np.complex128)
    norms = np.linalg.norm(magnitudes, ord=exponent.finite, axis=0)
    safe = np.where(norms > 0, norms, 1.0)
    return phase * (magnitudes / safe) ** (exponent.finite - 1.0)


def norming_vector(values, exponents):
    """
    Norming element of a rank-2 array for the l^{p1,p2} norm (p1 along axis 0).

    Returns z with ||z||_{p1',p2'} <= 1 and <values, z> = ||values||_{p1,p2}.
    """
    inner, outer = ExponentVector.coerce(exponents)
    column_norms = _vector_norm(np.abs(values), inner, axis=0)
    weights = np.real(_norming_columns(column_norms[:, None].astype(np.complex128), outer))[:, 0]
    return _norming_columns(values, inner) * weights[None, :]


def _vector_norm(values, exponent, axis=None):
    return np.linalg.norm(values, ord=exponent.value, axis=axis)


def _mixed_norm_2(values, exponents):
    inner, outer = exponents
    column_norms = _vector_norm(np.abs(values), inner, axis=0)
    return float(_vector_norm(column_norms, outer))


def _random_start(rng, shape, exponents):
    start = rng.standard_normal(shape) + 1j * rng.standard_normal(shape)
    return start / _mixed_norm_2(start, exponents)


def _ascend(tensor, source, target, start, steps):
    """Nonlinear power steps from one start; yields the ratio after each step."""
    dual_source = source.conjugate()
    vector = start
    for _ in range(steps + 1):
        size = _mixed_norm_2(vector, tuple(source))
        if size == 0.0:
            return
        image = np.tensordot(tensor, vector, axes=([2, 3], [0, 1]))
        yield _mixed_norm_2(image, tuple(target)) / size
        if not np.any(image):
            return
        pulled = np.tensordot(tensor.conj(), norming_vector(image, target), axes=([0, 1], [0, 1]))
        if not np.any(pulled):
            return
        vector = norming_vector(pulled, dual_source)


def _coerce_search(tensor, source, target):
    tensor = as_complex_tensor(tensor, name="K4")
    if tensor.ndim != 4:
        raise ValidationError(f"K4: expected rank 4, got shape {tensor.shape}")
    source = ExponentVector.coerce(source)
    target = ExponentVector.coerce(target)
    if len(source) != 2 or len(target) != 2:
        raise ValidationError(f"src and dst need two exponents each, got {source} and {target}")
    return tensor, source, target


def ascent_trace(tensor, source, target, config=None, trial=0):
    """
    Best-so-far ratio after each ascent step of one trial.

    Args:
        tensor: K4 indexed (l1, l2, m1, m2)
        source: ExponentVector for the domain norm
        target: ExponentVector for the target norm
        config: SearchConfig
        trial: Which spawned stream to start from

    Returns:
        list[float]: Nondecreasing values
    """
    tensor, source, target = _coerce_search(tensor, source, target)
    config = config or SearchConfig()
    rng = config.trial_generators()[trial]
    start = _random_start(rng, tensor.shape[2:], tuple(source))
    history = []
    best = 0.0
    for value in _ascend(tensor, source, target, start, config.ascent_steps):
        best = max(best, value)
        history.append(best)
    return history


def mixed_opnorm_lower(tensor, source, target, config=None):
    """
    Lower bound for sup ||A~ a||_dst / ||a||_src by randomized norming ascent.

    Each trial starts from a random complex sequence and alternates between
    pushing through A~, taking a norming element in the target dual and pulling
    back through A~^H to a norming element of the source. A trial stops once a
    step fails to improve its best value.

    Args:
        tensor: K4 with (A~ a)_l = sum_m K4[l, m] a_m
        source: ExponentVector of length 2 (l1 inner, l2 outer)
        target: ExponentVector of length 2
        config: SearchConfig (trials, ascent steps, seed)

    Returns:
        float: Largest ratio found, a valid lower bound for the operator norm
    """
    tensor, source, target = _coerce_search(tensor, source, target)
    config = config or SearchConfig()
    if not np.any(tensor):
        return 0.0

    best = 0.0
    for rng in config.trial_generators():
        start = _random_start(rng, tensor.shape[2:], tuple(source))
        trial_best = 0.0
        for value in _ascend(tensor, source, target, start, config.ascent_steps):
            if value <= trial_best * (1 + 1e-14):
                break
            trial_best = value
        best = max(best, trial_best)
    logger.debug(f"Search lower bound {best!r} for {source} -> {target} with seed {config.seed}")
    return best


def enumerate_l1_domain_norm(matrix, p):
    """
    max_j ||M e_j||_p over the standard basis.

    Raises:
        ValidationError: If M has more columns than MODKERNEL_ENUMERATION_CAP
    """
    matrix = as_complex_tensor(matrix, name="matrix")
    if matrix.ndim != 2:
        raise ValidationError(f"matrix: expected rank 2, got shape {matrix.shape}")
    cap = get_setting("MODKERNEL_ENUMERATION_CAP", 4096)
    if matrix.shape[1] > cap:
        raise ValidationError(
            f"matrix: {matrix.shape[1]} columns exceeds the enumeration cap {cap}"
        )
    p = Exponent.coerce(p)
    best = 0.0
    for column in range(matrix.shape[1]):
        basis = np.zeros(matrix.shape[1], dtype=np.complex128)
        basis[column] = 1.0
        best = max(best, float(_vector_norm(matrix @ basis, p)))
    return best
