import numpy as np
import pytest
import scipy.linalg
from django.core.exceptions import ValidationError

from core.exceptions import DensityTooLow, NotAFrame
from tfa.domain import Lattice, TFShift
from tfa.gabor import (
    analyze,
    build_frame,
    canonical_dual,
    frame_bounds,
    frame_operator,
    gabor_atoms,
    reconstruct,
    synthesize,
)
from tfa.timefreq import stft, tf_shift_apply, tf_shift_matrix
from tfa.utils import gaussian_window

RECONSTRUCTING_LATTICES = [(1, 1), (2, 2), (2, 4)]


def delta(N):
    signal = np.zeros(N, dtype=np.complex128)
    signal[0] = 1.0
    return signal


class TestLattice:
    def test_points_and_shape(self):
        lattice = Lattice(8, 2, 4)
        assert lattice.shape == (4, 2)
        assert lattice.size == 8
        assert lattice.points[:3] == [(0, 0), (0, 4), (2, 0)]
        assert not lattice.is_full

    @pytest.mark.parametrize("a, b", [(3, 1), (1, 5), (0, 1), (1, -2)])
    def test_steps_must_divide(self, a, b):
        with pytest.raises(ValidationError):
            Lattice(8, a, b)

    def test_density(self):
        assert Lattice(8, 2, 4).admits_frame()
        assert not Lattice(8, 4, 4).admits_frame()


class TestGaborAtoms:
    def test_columns_are_shifted_windows(self, random_complex):
        window = random_complex(8)
        lattice = Lattice(8, 2, 4)
        atoms = gabor_atoms(window, lattice)
        assert atoms.shape == (8, 8)
        for column, (x, xi) in enumerate(lattice.points):
            np.testing.assert_allclose(
                atoms[:, column], tf_shift_apply(TFShift(8, x, xi), window), atol=1e-13
            )

    def test_modulus_mismatch(self):
        with pytest.raises(ValidationError):
            gabor_atoms(np.ones(6), Lattice(8))


class TestFrameOperator:
    def test_full_lattice_is_scaled_identity(self, random_complex):
        N = 6
        window = random_complex(N)
        operator = frame_operator(window, Lattice.full(N))
        expected = N * np.linalg.norm(window) ** 2 * np.eye(N)
        np.testing.assert_allclose(operator, expected, atol=1e-10)

    def test_explicit_sum(self, random_complex):
        window = random_complex(8)
        lattice = Lattice(8, 2, 2)
        expected = np.zeros((8, 8), dtype=np.complex128)
        for x, xi in lattice.points:
            atom = tf_shift_apply(TFShift(8, x, xi), window)
            expected += np.outer(atom, np.conj(atom))
        np.testing.assert_allclose(frame_operator(window, lattice), expected, atol=1e-10)

    def test_single_point_lattice_is_projector(self):
        operator = frame_operator(delta(4), Lattice(4, 4, 4))
        expected = np.zeros((4, 4))
        expected[0, 0] = 1.0
        np.testing.assert_allclose(operator, expected, atol=1e-15)

    def test_hermitian_positive_semidefinite(self, random_complex):
        operator = frame_operator(random_complex(8), Lattice(8, 1, 2))
        np.testing.assert_allclose(operator, operator.conj().T, atol=1e-10)
        assert scipy.linalg.eigvalsh(operator).min() >= -1e-10

    def test_commutes_with_lattice_shifts(self, random_complex):
        lattice = Lattice(8, 2, 2)
        operator = frame_operator(random_complex(8), lattice)
        scale = np.linalg.norm(operator)
        for x, xi in lattice.points:
            shift = tf_shift_matrix(TFShift(8, x, xi))
            assert np.linalg.norm(operator @ shift - shift @ operator) <= 1e-10 * scale

    def test_zero_window(self):
        with pytest.raises(ValidationError):
            frame_operator(np.zeros(8), Lattice(8))


class TestFrameBounds:
    def test_full_lattice_tight(self, random_complex):
        window = random_complex(8)
        lower, upper = frame_bounds(frame_operator(window, Lattice.full(8)))
        energy = 8 * np.linalg.norm(window) ** 2
        assert lower == pytest.approx(energy, rel=1e-9)
        assert upper == pytest.approx(energy, rel=1e-9)

    def test_single_point_lattice_not_a_frame(self):
        lower, upper = frame_bounds(frame_operator(delta(4), Lattice(4, 4, 4)))
        assert lower == 0.0
        assert upper == pytest.approx(1.0)

    def test_frame_inequality(self, random_complex):
        window = random_complex(8)
        lattice = Lattice(8, 2, 2)
        operator = frame_operator(window, lattice)
        lower, upper = frame_bounds(operator)
        assert lower > 0
        for _ in range(100):
            signal = random_complex(8)
            energy = np.sum(np.abs(analyze(signal, window, lattice)) ** 2)
            norm = np.linalg.norm(signal) ** 2
            assert lower * norm * (1 - 1e-10) <= energy <= upper * norm * (1 + 1e-10)

    def test_extremal_eigenvectors_attain_bounds(self, random_complex):
        window = random_complex(8)
        lattice = Lattice(8, 2, 2)
        operator = frame_operator(window, lattice)
        lower, upper = frame_bounds(operator)
        _, vectors = scipy.linalg.eigh(operator)
        first = np.sum(np.abs(analyze(vectors[:, 0], window, lattice)) ** 2)
        last = np.sum(np.abs(analyze(vectors[:, -1], window, lattice)) ** 2)
        assert first == pytest.approx(lower, rel=1e-9)
        assert last == pytest.approx(upper, rel=1e-9)


class TestCanonicalDual:
    def test_full_lattice_closed_form(self, random_complex):
        N = 8
        window = random_complex(N)
        dual = canonical_dual(window, frame_operator(window, Lattice.full(N)))
        np.testing.assert_allclose(dual, window / (N * np.linalg.norm(window) ** 2), atol=1e-12)

    def test_tight_frame_divides_by_bound(self):
        frame = build_frame(gaussian_window(8), Lattice.full(8))
        assert frame.is_tight
        np.testing.assert_allclose(frame.dual_window, frame.window / frame.lower_bound, atol=1e-12)

    def test_residual(self, random_complex):
        window = random_complex(8)
        operator = frame_operator(window, Lattice(8, 2, 2))
        dual = canonical_dual(window, operator)
        assert np.linalg.norm(operator @ dual - window) <= 1e-10 * np.linalg.norm(window)

    def test_singular_operator_raises_with_bounds(self):
        operator = frame_operator(delta(4), Lattice(4, 4, 4))
        with pytest.raises(NotAFrame) as excinfo:
            canonical_dual(delta(4), operator)
        assert excinfo.value.lower == 0.0
        assert excinfo.value.upper == pytest.approx(1.0)


class TestBuildFrame:
    def test_gaussian_full_lattice(self):
        frame = build_frame(gaussian_window(8), Lattice.full(8))
        assert frame.lower_bound == pytest.approx(8.0, rel=1e-9)
        assert frame.upper_bound == pytest.approx(8.0, rel=1e-9)
        assert frame.condition_number == pytest.approx(1.0)
        assert frame.N == 8

    def test_density_too_low(self):
        with pytest.raises(DensityTooLow):
            build_frame(gaussian_window(8), Lattice(8, 8, 8))

    def test_gaussian_at_critical_density_is_not_a_frame(self):
        # symmetric window: its Zak transform vanishes on the critical lattice
        with pytest.raises(NotAFrame) as excinfo:
            build_frame(gaussian_window(8), Lattice(8, 2, 4))
        assert not isinstance(excinfo.value, DensityTooLow)

    def test_acceptance_ratio_is_configurable(self, random_complex):
        window = random_complex(8)
        lattice = Lattice(8, 2, 2)
        lower, upper = frame_bounds(frame_operator(window, lattice))
        with pytest.raises(NotAFrame):
            build_frame(window, lattice, acceptance_ratio=lower / upper * 1.01)

    def test_zero_window(self):
        with pytest.raises(ValidationError):
            build_frame(np.zeros(8), Lattice(8))

    def test_modulus_mismatch(self):
        with pytest.raises(ValidationError):
            build_frame(gaussian_window(6), Lattice(8))

    @pytest.mark.parametrize("a, b", RECONSTRUCTING_LATTICES)
    def test_frame_operator_invariants(self, a, b, random_complex):
        frame = build_frame(random_complex(8), Lattice(8, a, b))
        operator = frame.frame_operator
        np.testing.assert_allclose(operator, operator.conj().T, atol=1e-10)
        residual = np.linalg.norm(operator @ frame.dual_window - frame.window)
        assert residual <= 1e-10 * np.linalg.norm(frame.window)


class TestAnalysisSynthesis:
    def test_analyze_is_sampled_stft(self, random_complex):
        signal, window = random_complex(8), random_complex(8)
        lattice = Lattice(8, 2, 4)
        np.testing.assert_allclose(
            analyze(signal, window, lattice), stft(signal, window)[::2, ::4], atol=1e-12
        )

    def test_analyze_peaks_at_the_shift(self):
        window = gaussian_window(8)
        shift = TFShift(8, 3, 5)
        coefficients = analyze(tf_shift_apply(shift, window), window, Lattice.full(8))
        magnitudes = np.abs(coefficients)
        assert np.unravel_index(np.argmax(magnitudes), magnitudes.shape) == (3, 5)
        assert magnitudes[3, 5] == pytest.approx(1.0, rel=1e-12)

    def test_analyze_zero(self, random_complex):
        assert not np.any(analyze(np.zeros(8), random_complex(8), Lattice(8, 2, 2)))

    def test_synthesize_indicator(self, random_complex):
        lattice = Lattice(8, 2, 2)
        window = random_complex(8)
        coefficients = np.zeros(lattice.shape)
        coefficients[1, 3] = 1.0
        expected = tf_shift_apply(TFShift(8, 2, 6), window)
        np.testing.assert_allclose(synthesize(coefficients, window, lattice), expected, atol=1e-13)

    def test_synthesize_zero(self, random_complex):
        lattice = Lattice(8, 2, 2)
        assert not np.any(synthesize(np.zeros(lattice.shape), random_complex(8), lattice))

    def test_synthesize_shape_mismatch(self, random_complex):
        with pytest.raises(ValidationError):
            synthesize(np.zeros((4, 2)), random_complex(8), Lattice(8, 2, 2))

    @pytest.mark.parametrize("a, b", RECONSTRUCTING_LATTICES)
    @pytest.mark.parametrize("swap", [False, True])
    def test_reconstruction(self, a, b, swap, random_complex):
        frame = build_frame(random_complex(8), Lattice(8, a, b))
        for _ in range(20):
            signal = random_complex(8)
            np.testing.assert_allclose(
                reconstruct(signal, frame, swap=swap), signal, rtol=0, atol=1e-9
            )
