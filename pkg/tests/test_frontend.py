# tests/test_frontend.py

"""
One-bit quantizer, Bussgang gains, the arcsine law and distortion covariances.
"""

import numpy as np
import pytest

from onebit.channel_model.generator import complex_normal
from onebit.errors import DimensionError, DomainError
from onebit.frontend.bussgang import (
    arcsine_covariance,
    bussgang_gain,
    frontend_distortion,
    frontend_gain_squared,
    quantizer_noise_covariance,
    scalar_alpha,
)
from onebit.frontend.models import (
    BussgangGain,
    FrontendKind,
    GainKind,
    NoiseMode,
    QuantizerNoiseModel,
    QUANTIZER_NOISE_VARIANCE,
    SQRT_2_OVER_PI,
)
from onebit.frontend.quantizer import one_bit_quantize


class TestQuantizer:
    def test_outputs_are_unit_modulus_corners(self, rng):
        r = one_bit_quantize(complex_normal(rng, (50, 20)))
        np.testing.assert_allclose(np.abs(r), 1.0)
        np.testing.assert_allclose(np.abs(r.real), 1 / np.sqrt(2))
        np.testing.assert_allclose(np.abs(r.imag), 1 / np.sqrt(2))

    def test_zero_maps_to_positive_corner(self):
        assert one_bit_quantize(np.array([0.0 + 0.0j]))[0] == pytest.approx((1 + 1j) / np.sqrt(2))

    def test_examples(self):
        r = one_bit_quantize(np.array([0.3 - 2.0j, -1e-9 + 4.0j]))
        np.testing.assert_allclose(r, np.array([1 - 1j, -1 + 1j]) / np.sqrt(2))

    def test_positive_scaling_does_not_change_output(self, rng):
        y = complex_normal(rng, 100)
        np.testing.assert_array_equal(one_bit_quantize(y), one_bit_quantize(7.5 * y))


class TestBussgangGain:
    def test_scalar_alpha(self):
        assert scalar_alpha(8, 1.0) == pytest.approx(np.sqrt(2 / np.pi / 9))
        assert scalar_alpha(8, 1e-9) == pytest.approx(SQRT_2_OVER_PI)

    def test_training_gain_is_scalar(self):
        gain = bussgang_gain(GainKind.TRAINING, K=4, rho_u=0.5)
        assert gain.is_scalar
        np.testing.assert_allclose(gain.diagonal(3), np.full(3, scalar_alpha(4, 0.5)))

    def test_training_gain_needs_load(self):
        with pytest.raises(DimensionError):
            bussgang_gain(GainKind.UPLINK_APPROX)

    def test_uplink_exact_gain(self, rng):
        G_eff = complex_normal(rng, (6, 3))
        gain = bussgang_gain(GainKind.UPLINK_EXACT, G_eff=G_eff)
        expected = SQRT_2_OVER_PI / np.sqrt(np.sum(np.abs(G_eff) ** 2, axis=1) + 1)
        np.testing.assert_allclose(gain.diagonal(6), expected)

        silent = bussgang_gain(GainKind.UPLINK_EXACT, G_eff=np.zeros((4, 2)))
        np.testing.assert_allclose(silent.diag_gains, SQRT_2_OVER_PI)

    def test_downlink_gain_rejects_silent_antenna(self):
        T = np.ones((3, 2), dtype=complex)
        T[1] = 0
        with pytest.raises(DomainError):
            bussgang_gain(GainKind.DOWNLINK, T=T)

    def test_gain_range_enforced(self):
        with pytest.raises(ValueError):
            BussgangGain(kind=GainKind.TRAINING, alpha=1.0)
        with pytest.raises(ValueError):
            BussgangGain(kind=GainKind.UPLINK_EXACT, diag_gains=np.array([0.5, 1.0]))
        with pytest.raises(ValueError):
            BussgangGain(kind=GainKind.DOWNLINK, diag_gains=np.array([0.5, 0.0]))

    def test_weak_precoder_gives_large_downlink_gain(self):
        # antennas radiating less than unit power have gains above sqrt(2/pi)
        T = np.full((4, 2), 0.1 + 0.0j)
        gain = bussgang_gain(GainKind.DOWNLINK, T=T)
        np.testing.assert_allclose(gain.diag_gains, SQRT_2_OVER_PI / np.sqrt(0.02))
        assert np.all(gain.diag_gains > SQRT_2_OVER_PI)

    def test_scaled_copy(self):
        gain = BussgangGain(kind=GainKind.TRAINING, alpha=0.5)
        assert gain.scaled(2.0).alpha == 1.0
        assert gain.alpha == 0.5
        diag = BussgangGain(kind=GainKind.DOWNLINK, diag_gains=np.array([0.1, 0.2]))
        np.testing.assert_allclose(diag.scaled(3.0).diag_gains, [0.3, 0.6])

    def test_apply_matches_matrix(self, rng):
        gain = BussgangGain(kind=GainKind.DOWNLINK, diag_gains=np.array([0.1, 0.2, 0.3]))
        x = complex_normal(rng, (3, 4))
        np.testing.assert_allclose(gain.apply(x), gain.matrix(3) @ x)

    def test_empirical_gain_of_scalar_gaussian(self, rng):
        sigma = 1.7
        y = sigma * complex_normal(rng, 400_000)
        gain = np.mean(one_bit_quantize(y) * y.conj()) / sigma ** 2
        assert gain.real == pytest.approx(SQRT_2_OVER_PI / sigma, rel=0.01)
        assert abs(gain.imag) < 0.01 * SQRT_2_OVER_PI / sigma


class TestArcsineLaw:
    def test_identity_is_preserved(self):
        np.testing.assert_allclose(arcsine_covariance(np.eye(3)), np.eye(3), atol=1e-15)

    def test_unit_diagonal(self, rng):
        B = complex_normal(rng, (5, 5))
        C_r = arcsine_covariance(B @ B.conj().T + np.eye(5))
        np.testing.assert_allclose(np.diag(C_r), np.ones(5), atol=1e-12)
        np.testing.assert_allclose(C_r, C_r.conj().T, atol=1e-12)

    def test_known_entry(self):
        C_y = np.array([[1.0, 0.5], [0.5, 1.0]])
        assert arcsine_covariance(C_y)[0, 1].real == pytest.approx((2 / np.pi) * np.arcsin(0.5))

    def test_stacked_input(self):
        stack = np.stack([np.eye(2), np.array([[2.0, 1.0], [1.0, 2.0]])])
        out = arcsine_covariance(stack)
        assert out.shape == (2, 2, 2)
        assert out[1, 0, 1].real == pytest.approx((2 / np.pi) * np.arcsin(0.5))

    def test_correlation_outside_band(self):
        with pytest.raises(DomainError):
            arcsine_covariance(np.array([[1.0, 1.1], [1.1, 1.0]]))

    def test_rounding_inside_band_is_clamped(self):
        C_r = arcsine_covariance(np.array([[1.0, 1.0 + 1e-14], [1.0 + 1e-14, 1.0]]))
        assert C_r[0, 1].real == pytest.approx(1.0)

    def test_nonpositive_diagonal(self):
        with pytest.raises(DomainError):
            arcsine_covariance(np.array([[0.0, 0.0], [0.0, 1.0]]))


class TestQuantizerNoise:
    def test_approx_model(self):
        model = quantizer_noise_covariance(mode=NoiseMode.APPROX)
        assert model.variance == pytest.approx(1 - 2 / np.pi)
        np.testing.assert_allclose(model.matrix(2), QUANTIZER_NOISE_VARIANCE * np.eye(2))

    def test_exact_white_input_matches_approx(self):
        sigma2 = 3.0
        C_y = sigma2 * np.eye(4)
        A = SQRT_2_OVER_PI / np.sqrt(sigma2) * np.ones(4)
        model = quantizer_noise_covariance(C_y, A, NoiseMode.EXACT)
        np.testing.assert_allclose(model.covariance, QUANTIZER_NOISE_VARIANCE * np.eye(4), atol=1e-12)

    def test_exact_needs_inputs(self):
        with pytest.raises(DimensionError):
            quantizer_noise_covariance(mode=NoiseMode.EXACT)

    def test_quadratic_forms(self, rng):
        B = complex_normal(rng, (4, 4))
        C = B @ B.conj().T
        V = complex_normal(rng, (4, 3))
        model = QuantizerNoiseModel(mode=NoiseMode.EXACT, covariance=C)
        expected = [np.real(V[:, k] @ C @ V[:, k].conj()) for k in range(3)]
        np.testing.assert_allclose(model.quadratic_forms(V), expected)

        approx = QuantizerNoiseModel.approx()
        np.testing.assert_allclose(approx.quadratic_forms(V), QUANTIZER_NOISE_VARIANCE * np.sum(np.abs(V) ** 2, axis=0))

    def test_frontend_constants(self):
        assert frontend_gain_squared(FrontendKind.UNQUANTIZED, 8, 1.0) == 1.0
        assert frontend_distortion(FrontendKind.UNQUANTIZED) == 0.0
        assert frontend_gain_squared(FrontendKind.ONE_BIT, 8, 1.0) == pytest.approx(2 / np.pi / 9)
        assert frontend_distortion("one-bit") == pytest.approx(1 - 2 / np.pi)
