# tests/test_estimation.py

"""
Pilot training, vectorization and the approximate / exact LMMSE estimators.
"""

import numpy as np
import pytest

from onebit.channel_model.generator import complex_normal
from onebit.channel_model.models import SystemConfig
from onebit.errors import DimensionError, DomainError
from onebit.estimation.estimator import (
    approx_estimator_gain,
    estimate_variance,
    full_training_covariance,
    lmmse_estimate,
    lmmse_variance,
    predicted_estimate_statistics,
)
from onebit.estimation.models import EstimatorMethod
from onebit.estimation.pilots import dft_pilots
from onebit.estimation.training import (
    received_training,
    simulate_training,
    unvectorize_block,
    vectorize_block,
)
from onebit.frontend.models import FrontendKind

TRIALS = 4000


@pytest.fixture
def training_config():
    return SystemConfig(M=32, K=8, tau0=2, T=200, rho_u=1.0)


def _estimate_moments(config, rng, method):
    """Empirical per-user E|ĝ|² and E|g - ĝ|² over a batch of trials."""
    Phi = dft_pilots(config.tau, config.K)
    G_eff = np.sqrt(config.rho_u) * complex_normal(rng, (TRIALS, config.M, config.K))
    r_t = simulate_training(G_eff, Phi, rng)
    G_hat = lmmse_estimate(r_t, Phi, config, method).G_hat
    variance = np.mean(np.abs(G_hat) ** 2, axis=(0, 1))
    mse = np.mean(np.abs(G_eff - G_hat) ** 2, axis=(0, 1))
    return variance, mse


class TestPilots:
    def test_dft_pilots_are_orthogonal(self):
        Phi = dft_pilots(16, 8).Phi
        assert Phi.shape == (16, 8)
        np.testing.assert_allclose(np.abs(Phi), 1.0)
        np.testing.assert_allclose(Phi.conj().T @ Phi, 16 * np.eye(8), atol=1e-10)

    def test_pilot_length_must_cover_users(self):
        with pytest.raises(DimensionError):
            dft_pilots(4, 8)


class TestTraining:
    def test_time_major_vectorization(self, rng):
        Y = complex_normal(rng, (3, 5))
        r = vectorize_block(Y)
        for n in range(5):
            for m in range(3):
                assert r[n * 3 + m] == Y[m, n]
        np.testing.assert_array_equal(unvectorize_block(r, 3), Y)

    def test_batch_axes(self, rng):
        Y = complex_normal(rng, (4, 3, 5))
        np.testing.assert_array_equal(vectorize_block(Y)[2], vectorize_block(Y[2]))

    def test_noiseless_block(self, rng):
        Phi = dft_pilots(8, 4)
        G_eff = complex_normal(rng, (6, 4))
        np.testing.assert_allclose(received_training(G_eff, Phi), G_eff @ Phi.Phi.T)

    def test_user_count_mismatch(self, rng):
        with pytest.raises(DimensionError):
            received_training(complex_normal(rng, (6, 3)), dft_pilots(8, 4))

    def test_quantized_observation_is_unit_modulus(self, rng):
        r_t = simulate_training(complex_normal(rng, (6, 4)), dft_pilots(8, 4), rng)
        assert r_t.shape == (48,)
        np.testing.assert_allclose(np.abs(r_t), 1.0)


class TestClosedFormVariance:
    def test_reference_value(self):
        config = SystemConfig(M=128, K=8, tau0=2, T=200, rho_u=1.0)
        assert estimate_variance(config) == pytest.approx(0.72277, abs=5e-5)

    def test_unquantized_reference(self):
        assert float(lmmse_variance(8, 16, 1.0, FrontendKind.UNQUANTIZED)) == pytest.approx(16 / 17)

    def test_vectorized(self):
        values = lmmse_variance(np.array([4, 8]), np.array([8, 16]), np.array([1.0, 1.0]))
        assert values.shape == (2,)
        assert values[1] == pytest.approx(0.72277, abs=5e-5)

    def test_variance_below_channel_power(self):
        for rho in (0.01, 0.1, 1.0, 10.0):
            config = SystemConfig(M=16, K=4, T=100, rho_u=rho)
            assert 0 < estimate_variance(config) < rho


class TestEstimator:
    def test_unquantized_noiseless_estimate(self, rng):
        config = SystemConfig(M=6, K=4, tau0=2, T=50, rho_u=0.5)
        Phi = dft_pilots(config.tau, config.K)
        G_eff = np.sqrt(config.rho_u) * complex_normal(rng, (6, 4))
        r_t = vectorize_block(received_training(G_eff, Phi))
        estimate = lmmse_estimate(r_t, Phi, config, EstimatorMethod.EXACT, FrontendKind.UNQUANTIZED)
        shrink = config.tau * config.rho_u / (config.tau * config.rho_u + 1)
        np.testing.assert_allclose(estimate.G_hat, shrink * G_eff, atol=1e-12)
        assert estimate.method == EstimatorMethod.APPROX
        assert approx_estimator_gain(config, FrontendKind.UNQUANTIZED) == pytest.approx(0.5 / 5)

    def test_observation_length_checked(self, training_config):
        Phi = dft_pilots(training_config.tau, training_config.K)
        with pytest.raises(DimensionError):
            lmmse_estimate(np.ones(10, dtype=complex), Phi, training_config)

    def test_structured_covariance_matches_full_arcsine(self):
        Phi = dft_pilots(8, 4)
        structured = full_training_covariance(Phi, 0.7, 4, structured=True)
        full = full_training_covariance(Phi, 0.7, 4, structured=False)
        np.testing.assert_allclose(structured, full, atol=1e-12)

    def test_full_covariance_size_guard(self):
        with pytest.raises(DomainError):
            full_training_covariance(dft_pilots(16, 8), 1.0, 64)

    def test_exact_estimator_has_lower_predicted_mse(self, training_config):
        approx = predicted_estimate_statistics(training_config, EstimatorMethod.APPROX)
        exact = predicted_estimate_statistics(training_config, EstimatorMethod.EXACT)
        assert np.all(exact.mse <= approx.mse + 1e-12)
        assert np.all(exact.mse > 0)

    @pytest.mark.parametrize("method", [EstimatorMethod.APPROX, EstimatorMethod.EXACT])
    def test_empirical_statistics_match_arcsine_prediction(self, training_config, factory, method):
        rng = factory.generator(f"estimation.{method.value}")
        variance, mse = _estimate_moments(training_config, rng, method)
        predicted = predicted_estimate_statistics(training_config, method)
        np.testing.assert_allclose(variance, predicted.variance, rtol=0.03)
        np.testing.assert_allclose(mse, predicted.mse, rtol=0.03)
        assert variance.mean() == pytest.approx(predicted.variance.mean(), rel=0.01)
        assert mse.mean() == pytest.approx(predicted.mse.mean(), rel=0.01)

    def test_empirical_variance_matches_closed_form(self, training_config, factory):
        variance, mse = _estimate_moments(training_config, factory.generator("estimation.cf"), EstimatorMethod.APPROX)
        sigma2 = estimate_variance(training_config)
        assert variance.mean() == pytest.approx(sigma2, rel=0.02)
        # the closed form linearizes the arcsine law, which biases the MSE by a few percent
        assert mse.mean() == pytest.approx(training_config.rho_u - sigma2, rel=0.06)
