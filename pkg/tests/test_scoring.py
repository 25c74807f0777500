import numpy as np
import pytest

from scorefit import (
    CorrelationMatrix,
    FactorModel,
    NearSingularMatrixWarning,
    ParallelSpec,
    ScaleModel,
    ScoreWeights,
    SingularMatrixError,
    ValidationError,
    WeightKind,
    bartlett_weights,
    build_parallel_sigma,
    fs_implied_sigma,
    regression_component_loadings,
    regression_weights,
    score_model_implied_sigma,
)


def one_factor_parallel(l, p):
    sigma = build_parallel_sigma(ParallelSpec(l * l, p))
    model = FactorModel.from_standardized_loadings(np.full(p, l))
    return sigma, model


class TestScoreWeights:
    def test_unit_weights(self):
        w = ScoreWeights.unit(5)
        assert w.kind is WeightKind.FIXED_PATTERN
        assert np.array_equal(w.values, np.ones((5, 1)))

    def test_fixed_pattern_rules(self):
        ScoreWeights.fixed_pattern([[1, 0], [0, 1], [0, 1]])
        with pytest.raises(ValidationError, match="0 or 1"):
            ScoreWeights.fixed_pattern([[0.5], [1.0]])
        with pytest.raises(ValidationError, match="at most one scale"):
            ScoreWeights.fixed_pattern([[1, 1], [0, 1]])
        with pytest.raises(ValidationError, match="at least one indicator"):
            ScoreWeights.fixed_pattern([[1, 0], [1, 0]])

    def test_estimated_weights_must_be_finite(self):
        with pytest.raises(ValidationError):
            ScoreWeights([[np.inf], [1.0]], WeightKind.REGRESSION)


class TestRegressionWeights:
    @pytest.mark.parametrize("l,p", [(0.3, 4), (0.6, 6), (0.8, 12)])
    def test_parallel_closed_form(self, l, p):
        # For equal loadings l the weights collapse to l / (1 + (p-1) l^2).
        sigma, model = one_factor_parallel(l, p)
        w = regression_weights(sigma, model)
        assert np.allclose(w.values, l / (1 + (p - 1) * l * l), atol=1e-12)
        assert w.kind is WeightKind.REGRESSION

    def test_identity_everything(self):
        sigma = CorrelationMatrix(np.eye(3))
        model = FactorModel(np.eye(3), np.eye(3), np.full(3, 0.5))
        assert np.allclose(regression_weights(sigma, model).values, np.eye(3))

    def test_stai_downstream_matches_fs_route(self, stai_sigma, stai_lam):
        model = FactorModel.from_standardized_loadings(stai_lam)
        w = regression_weights(stai_sigma, model)
        assert w.values.shape == (20, 1)
        via_weights = score_model_implied_sigma(stai_sigma, w)
        direct = fs_implied_sigma(stai_sigma, model)
        assert np.abs(via_weights.values - direct.values).max() < 1e-8

    def test_singular_sigma_raises(self):
        sigma = build_parallel_sigma(ParallelSpec(1.0, 3))
        model = FactorModel(np.full(3, 0.5), np.eye(1), np.full(3, 0.75))
        with pytest.raises(SingularMatrixError):
            regression_weights(sigma, model)


class TestBartlettWeights:
    def test_identity_model(self):
        model = FactorModel(np.eye(3), np.eye(3), np.ones(3))
        assert np.allclose(bartlett_weights(model).values, np.eye(3))

    @pytest.mark.parametrize("l,p", [(0.4, 4), (0.6, 6), (0.8, 10)])
    def test_parallel_closed_form(self, l, p):
        _, model = one_factor_parallel(l, p)
        w = bartlett_weights(model)
        assert np.allclose(w.values, 1.0 / (p * l), atol=1e-12)

    def test_unbiasedness_identity(self):
        rng = np.random.default_rng(11)
        for _ in range(25):
            p, q = int(rng.integers(3, 9)), int(rng.integers(1, 3))
            q = min(q, p)
            lam = rng.uniform(0.2, 0.8, size=(p, q)) * rng.choice([0.0, 1.0], size=(p, q), p=[0.3, 0.7])
            lam[np.arange(q), np.arange(q)] = 0.7  # keep full column rank
            model = FactorModel(lam, np.eye(q), rng.uniform(0.2, 1.0, size=p))
            w = bartlett_weights(model)
            assert np.abs(w.values.T @ model.loadings - np.eye(q)).max() < 1e-8


class TestFsImpliedSigma:
    def test_identity_loadings_reproduce_sigma(self, stai_sigma):
        model = FactorModel(np.eye(20), np.eye(20), np.full(20, 0.5))
        implied = fs_implied_sigma(stai_sigma, model)
        assert np.abs(implied.values - stai_sigma.values).max() < 1e-10

    def test_parallel_equals_unit_weight_projection(self):
        for l, p in [(0.4, 5), (0.7, 8)]:
            sigma, model = one_factor_parallel(l, p)
            r = l * l
            expected = np.full((p, p), r + (1 - r) / p)
            assert np.allclose(fs_implied_sigma(sigma, model).values, expected, atol=1e-12)

    def test_rank_is_at_most_q(self, stai_sigma, stai_lam):
        model = FactorModel.from_standardized_loadings(stai_lam)
        implied = fs_implied_sigma(stai_sigma, model)
        assert np.linalg.matrix_rank(implied.values, tol=1e-8) == 1

    def test_rank_deficient_loadings_raise(self, stai_sigma):
        lam = np.column_stack([np.full(20, 0.5), np.full(20, 0.5)])  # collinear columns
        model = FactorModel(lam, np.eye(2), np.full(20, 0.5))
        with pytest.raises(SingularMatrixError):
            fs_implied_sigma(stai_sigma, model)


class TestScoreModelImpliedSigma:
    @pytest.mark.parametrize("r,p", [(0.0, 3), (0.36, 6), (0.64, 24)])
    def test_parallel_unit_weights_closed_form(self, r, p):
        sigma = build_parallel_sigma(ParallelSpec(r, p))
        implied = score_model_implied_sigma(sigma, ScoreWeights.unit(p))
        assert np.allclose(implied.values, np.full((p, p), r + (1 - r) / p), atol=1e-13)

    def test_single_indicator_returns_sigma(self):
        sigma = CorrelationMatrix([[2.5]])
        implied = score_model_implied_sigma(sigma, ScoreWeights.unit(1))
        assert implied.values[0, 0] == pytest.approx(2.5, abs=1e-14)

    def test_projection_idempotence(self, stai_sigma):
        w = ScoreWeights.unit(20)
        once = score_model_implied_sigma(stai_sigma, w)
        twice = score_model_implied_sigma(once, w)
        assert np.abs(once.values - twice.values).max() < 1e-8

    def test_invariant_to_weight_rescaling(self, stai_sigma):
        base = score_model_implied_sigma(stai_sigma, ScoreWeights.unit(20))
        scaled = ScoreWeights(np.full((20, 1), -3.7), WeightKind.REGRESSION)
        other = score_model_implied_sigma(stai_sigma, scaled)
        assert np.abs(base.values - other.values).max() < 1e-10

    def test_collinear_scales_raise(self, stai_sigma):
        w = ScoreWeights(np.ones((20, 2)), WeightKind.REGRESSION)  # identical scales
        with pytest.raises(SingularMatrixError):
            score_model_implied_sigma(stai_sigma, w)

    def test_nearly_collinear_scales_warn(self, stai_sigma):
        values = np.ones((20, 2))
        values[0, 1] = 1.0 + 2e-5
        w = ScoreWeights(values, WeightKind.REGRESSION)
        with pytest.warns(NearSingularMatrixWarning):
            score_model_implied_sigma(stai_sigma, w)

    def test_residual_diag_nonnegative(self):
        rng = np.random.default_rng(3)
        for _ in range(20):
            p = int(rng.integers(2, 10))
            a = rng.normal(size=(p + 3, p))
            sigma = CorrelationMatrix(a.T @ a / (p + 3) + 0.2 * np.eye(p))
            implied = score_model_implied_sigma(sigma, ScoreWeights.unit(p))
            resid = sigma.values - implied.values
            assert np.diag(resid).min() >= -1e-10
            assert np.linalg.eigvalsh(resid).min() >= -1e-8


class TestRegressionComponentLoadings:
    @pytest.mark.parametrize("r,p", [(0.0, 4), (0.3, 6), (0.7, 9)])
    def test_parallel_standardized_loadings(self, r, p):
        sigma = build_parallel_sigma(ParallelSpec(r, p))
        scale = regression_component_loadings(sigma, ScoreWeights.unit(p), standardize=True)
        expected = np.sqrt((1 + (p - 1) * r) / p)
        assert np.allclose(scale.loadings, expected, atol=1e-12)
        assert scale.standardized
        assert scale.scale_covariance[0, 0] == pytest.approx(1.0, abs=1e-12)

    def test_identity_sigma(self):
        sigma = CorrelationMatrix(np.eye(5))
        scale = regression_component_loadings(sigma, ScoreWeights.unit(5), standardize=True)
        assert np.allclose(scale.loadings, 1.0 / np.sqrt(5), atol=1e-14)

    def test_stai_item_total_correlations(self, stai_sigma):
        scale = regression_component_loadings(stai_sigma, ScoreWeights.unit(20), standardize=True)
        # Independent route: corr(x_i, sum of all x) from the matrix alone.
        ones = np.ones(20)
        direct = (stai_sigma.values @ ones) / np.sqrt(ones @ stai_sigma.values @ ones)
        assert np.abs(scale.loadings.ravel() - direct).max() < 1e-12
        assert np.all((scale.loadings > 0) & (scale.loadings < 1))

    def test_unstandardized_covariance_is_gram(self, stai_sigma):
        pattern = ScoreWeights.fixed_pattern(
            np.column_stack([np.r_[np.ones(10), np.zeros(10)], np.r_[np.zeros(10), np.ones(10)]])
        )
        scale = regression_component_loadings(stai_sigma, pattern, standardize=False)
        gram = pattern.values.T @ stai_sigma.values @ pattern.values
        assert np.allclose(scale.scale_covariance, gram, atol=1e-10)
        assert not scale.standardized

    def test_standardized_two_scales_unit_diag(self, stai_sigma):
        pattern = ScoreWeights.fixed_pattern(
            np.column_stack([np.r_[np.ones(10), np.zeros(10)], np.r_[np.zeros(10), np.ones(10)]])
        )
        scale = regression_component_loadings(stai_sigma, pattern, standardize=True)
        assert np.allclose(np.diag(scale.scale_covariance), 1.0, atol=1e-12)

    def test_scale_model_validates(self):
        with pytest.raises(ValidationError, match="unit diagonal"):
            ScaleModel(np.ones((2, 1)), [[2.0]], standardized=True)


class TestEstimatorInvariance:
    def test_regression_bartlett_and_direct_agree(self):
        rng = np.random.default_rng(7)
        for _ in range(10):
            p, q = int(rng.integers(4, 10)), int(rng.integers(1, 3))
            lam = np.zeros((p, q))
            for j in range(q):
                block = slice(j * (p // q), (j + 1) * (p // q) if j < q - 1 else p)
                lam[block, j] = rng.uniform(0.4, 0.8, size=lam[block, j].shape)
            phi = np.eye(q)
            if q == 2:
                phi[0, 1] = phi[1, 0] = rng.uniform(-0.5, 0.5)
            model = FactorModel.from_standardized_loadings(lam, phi)
            sigma = CorrelationMatrix(
                model.loadings @ phi @ model.loadings.T + np.diag(model.uniquenesses)
            )
            direct = fs_implied_sigma(sigma, model)
            via_reg = score_model_implied_sigma(sigma, regression_weights(sigma, model))
            via_bart = score_model_implied_sigma(sigma, bartlett_weights(model))
            assert np.abs(direct.values - via_reg.values).max() < 1e-8
            assert np.abs(direct.values - via_bart.values).max() < 1e-8
