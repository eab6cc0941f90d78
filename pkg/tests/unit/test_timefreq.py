import numpy as np
import pytest
from django.core.exceptions import ValidationError

from core.tensors import AxisPermutation, permute_axes
from tfa.domain import TFShift
from tfa.oracle import apply_kernel_reference, stft_kernel_reference, stft_reference
from tfa.timefreq import (
    apply_kernel,
    character,
    stft,
    stft_kernel,
    tf_shift_apply,
    tf_shift_matrix,
    upsilon_apply,
)

SWAP = AxisPermutation((2, 1))


def delta(N, at=0):
    signal = np.zeros(N, dtype=np.complex128)
    signal[at] = 1.0
    return signal


class TestTFShift:
    def test_reduces_mod_n(self):
        shift = TFShift(8, x=-1, xi=10)
        assert (shift.x, shift.xi) == (7, 2)

    def test_rejects_bad_modulus(self):
        with pytest.raises(ValidationError):
            TFShift(0)


class TestTfShiftApply:
    def test_zero_shift(self, random_complex):
        signal = random_complex(8)
        np.testing.assert_array_equal(tf_shift_apply(TFShift(8), signal), signal)

    def test_translation_of_delta(self):
        np.testing.assert_allclose(tf_shift_apply(TFShift(8, 1, 0), delta(8)), delta(8, 1))

    def test_modulation_of_ones(self):
        N = 8
        shifted = tf_shift_apply(TFShift(N, 0, 1), np.ones(N))
        np.testing.assert_allclose(shifted, np.exp(2j * np.pi * np.arange(N) / N), atol=1e-15)

    def test_isometry(self, random_complex):
        signal = random_complex(12)
        for x, xi in [(3, 5), (11, 1), (6, 6)]:
            shifted = tf_shift_apply(TFShift(12, x, xi), signal)
            assert np.linalg.norm(shifted) == pytest.approx(np.linalg.norm(signal), rel=1e-12)

    def test_matches_matrix(self, random_complex):
        signal = random_complex(6)
        shift = TFShift(6, 2, 5)
        np.testing.assert_allclose(
            tf_shift_matrix(shift) @ signal, tf_shift_apply(shift, signal), atol=1e-13
        )

    def test_modulus_mismatch(self):
        with pytest.raises(ValidationError):
            tf_shift_apply(TFShift(4, 1, 1), np.ones(5))


class TestStft:
    def test_delta_window(self, random_complex):
        N = 8
        signal = random_complex(N)
        table = stft(signal, delta(N))
        x, xi = np.meshgrid(np.arange(N), np.arange(N), indexing="ij")
        expected = signal[x] * character(-xi * x, N)
        np.testing.assert_allclose(table, expected, atol=1e-12)

    def test_constant_signal_and_window(self):
        N = 6
        expected = np.zeros((N, N))
        expected[:, 0] = N
        np.testing.assert_allclose(stft(np.ones(N), np.ones(N)), expected, atol=1e-12)

    def test_matches_reference(self, random_complex):
        for _ in range(20):
            signal, window = random_complex(8), random_complex(8)
            np.testing.assert_allclose(
                stft(signal, window), stft_reference(signal, window), rtol=0, atol=1e-11
            )

    def test_moyal(self, random_complex):
        N = 8
        for _ in range(20):
            signal, window = random_complex(N), random_complex(N)
            energy = np.sum(np.abs(stft(signal, window)) ** 2)
            expected = N * np.linalg.norm(signal) ** 2 * np.linalg.norm(window) ** 2
            assert energy == pytest.approx(expected, rel=1e-10)

    def test_covariance_in_magnitude(self, random_complex):
        N = 8
        signal, window = random_complex(N), random_complex(N)
        shift = TFShift(N, 3, 5)
        shifted = np.abs(stft(tf_shift_apply(shift, signal), window))
        expected = np.roll(np.abs(stft(signal, window)), (shift.x, shift.xi), axis=(0, 1))
        np.testing.assert_allclose(shifted, expected, atol=1e-12)

    def test_conjugate_linear_in_window(self, random_complex):
        signal, window = random_complex(8), random_complex(8)
        alpha = 0.5 + 2j
        np.testing.assert_allclose(
            stft(signal, alpha * window), np.conj(alpha) * stft(signal, window), atol=1e-12
        )
        np.testing.assert_allclose(
            stft(alpha * signal, window), alpha * stft(signal, window), atol=1e-12
        )

    def test_modulus_mismatch(self):
        with pytest.raises(ValidationError):
            stft(np.ones(4), np.ones(5))


class TestStftKernel:
    def test_rank_one_kernel(self, random_complex):
        N = 6
        f, h = random_complex(N), random_complex(N)
        g, gamma = random_complex(N), random_complex(N)
        table = stft_kernel(np.outer(f, np.conj(h)), g, gamma)
        first = stft_reference(f, g)
        second = stft_reference(h, gamma)
        negated = (-np.arange(N)) % N
        expected = np.einsum("ac,bd->abcd", first, np.conj(second[:, negated]))
        np.testing.assert_allclose(table, expected, atol=1e-10)

    def test_zero_kernel(self, random_complex):
        table = stft_kernel(np.zeros((4, 4)), random_complex(4), random_complex(4))
        assert table.shape == (4, 4, 4, 4)
        assert not np.any(table)

    def test_matches_reference(self, random_complex):
        N = 4
        kernel, g, gamma = random_complex(N, N), random_complex(N), random_complex(N)
        deviation = np.abs(stft_kernel(kernel, g, gamma) - stft_kernel_reference(kernel, g, gamma))
        assert deviation.max() <= 1e-10

    def test_modulus_mismatch(self):
        with pytest.raises(ValidationError):
            stft_kernel(np.ones((4, 4)), np.ones(4), np.ones(3))


class TestUpsilon:
    @pytest.mark.parametrize("permutation", [AxisPermutation.identity(2), SWAP])
    def test_inverts_permuted_stft(self, permutation, random_complex):
        N = 8
        for _ in range(5):
            f, g, psi = random_complex(N), random_complex(N), random_complex(N)
            table = permute_axes(stft(f, g), permutation)
            expected = np.vdot(g, psi) * f
            np.testing.assert_allclose(
                upsilon_apply(table, psi, permutation),
                expected,
                rtol=0,
                atol=1e-10 * np.linalg.norm(expected),
            )

    def test_same_window_gives_energy_factor(self, random_complex):
        f, g = random_complex(8), random_complex(8)
        recovered = upsilon_apply(stft(f, g), g, AxisPermutation.identity(2))
        np.testing.assert_allclose(recovered, np.linalg.norm(g) ** 2 * f, atol=1e-10)

    def test_zero_table(self, random_complex):
        result = upsilon_apply(np.zeros((6, 6)), random_complex(6), SWAP)
        assert not np.any(result)

    def test_shape_mismatch(self, random_complex):
        with pytest.raises(ValidationError):
            upsilon_apply(np.zeros((6, 5)), random_complex(6), SWAP)
        with pytest.raises(ValidationError):
            upsilon_apply(np.zeros((6, 6)), random_complex(6), (1, 2, 3))


class TestApplyKernel:
    def test_identity(self, random_complex):
        signal = random_complex(8)
        np.testing.assert_array_equal(apply_kernel(np.eye(8), signal), signal)

    def test_rank_one_action(self, random_complex):
        f0, h, f = random_complex(8), random_complex(8), random_complex(8)
        result = apply_kernel(np.outer(f0, np.conj(h)), f)
        np.testing.assert_allclose(result, np.vdot(h, f) * f0, atol=1e-12)

    def test_matches_loop(self, random_complex):
        kernel, signal = random_complex(16, 16), random_complex(16)
        expected = apply_kernel_reference(kernel, signal)
        np.testing.assert_allclose(apply_kernel(kernel, signal), expected, rtol=1e-12, atol=1e-12)

    def test_modulus_mismatch(self):
        with pytest.raises(ValidationError):
            apply_kernel(np.eye(3), np.ones(4))
