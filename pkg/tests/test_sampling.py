"""Mixture fitting, latent classification, and rejection sampling."""

import numpy as np
import pytest
from scipy import stats

from pagforge.sampling import (
    Attribute,
    AttributeSpec,
    BudgetExhausted,
    GaussianMixture,
    LatentClassifier,
    conditional_sample,
    fit_gmm,
    gmm_logpdf,
    gmm_sample,
    train_classifier,
)


@pytest.fixture(scope="module")
def toy_gmm():
    return GaussianMixture(
        weights=np.array([0.6, 0.4]),
        means=np.array([[-2.0], [1.5]]),
        variances=np.array([[0.25], [0.64]]),
    )


class TestFitGmm:
    def test_k1_matches_closed_form_mle(self):
        rng = np.random.default_rng(1)
        data = rng.normal(3.0, 2.0, size=(400, 3))
        g = fit_gmm(data, 1, seed=0, restarts=2)
        assert np.abs(g.means[0] - data.mean(axis=0)).max() < 1e-8
        assert np.abs(g.variances[0] - data.var(axis=0)).max() < 1e-8

    def test_loglik_nondecreasing(self):
        rng = np.random.default_rng(2)
        for k in (1, 2, 4):
            data = np.concatenate([
                rng.normal(-2, 0.5, size=(150, 2)),
                rng.normal(2, 1.0, size=(150, 2)),
            ])
            g = fit_gmm(data, k, seed=3, restarts=3)
            diffs = np.diff(g.log_likelihoods)
            assert (diffs >= -1e-9).all()

    def test_three_component_recovery(self):
        rng = np.random.default_rng(7)
        means_true = np.array([[0.0, 0.0], [5.0, 5.0], [-4.0, 3.0]])
        data = np.concatenate(
            [rng.normal(m, 0.6, size=(500, 2)) for m in means_true])
        g = fit_gmm(data, 3, seed=0, restarts=10)
        remaining = list(range(3))
        for m in means_true:
            dists = [np.linalg.norm(g.means[k] - m) for k in remaining]
            j = int(np.argmin(dists))
            assert dists[j] < 0.1
            remaining.pop(j)

    def test_fewer_points_than_components(self):
        with pytest.raises(ValueError, match="components"):
            fit_gmm(np.zeros((3, 2)), 5)

    def test_degenerate_component_pruned_with_warning(self):
        # Two tight identical clusters plus one loose one; over-asking
        # for components collapses some onto duplicated points.
        rng = np.random.default_rng(5)
        tight = np.zeros((50, 2))
        loose = rng.normal(5, 1.0, size=(50, 2))
        data = np.concatenate([tight, loose])
        with pytest.warns(UserWarning, match="degenerate"):
            g = fit_gmm(data, 4, seed=1, restarts=1)
        assert g.n_components < 4
        assert np.isclose(g.weights.sum(), 1.0)


class TestDensityAndSampling:
    def test_logpdf_at_mean_single_component(self):
        g = GaussianMixture(weights=np.array([1.0]),
                            means=np.array([[1.0, -2.0]]),
                            variances=np.array([[0.5, 2.0]]))
        expected = -0.5 * np.log(2 * np.pi * np.array([0.5, 2.0])).sum()
        assert gmm_logpdf(g, g.means)[0] == pytest.approx(expected, abs=1e-12)

    def test_sampling_reproducible(self, toy_gmm):
        a = gmm_sample(toy_gmm, 1000, seed=5)
        b = gmm_sample(toy_gmm, 1000, seed=5)
        assert np.array_equal(a, b)

    def test_component_occupancy_matches_weights(self, toy_gmm):
        samples = gmm_sample(toy_gmm, 100_000, seed=9)[:, 0]
        # Assign by nearest mean; the modes are far apart.
        frac_low = float((samples < -0.4).mean())
        assert frac_low == pytest.approx(0.6, abs=0.01)

    def test_density_integrates_to_one(self, toy_gmm):
        grid = np.linspace(-15, 15, 300001)
        density = np.exp(toy_gmm.logpdf(grid[:, None]))
        integral = np.trapezoid(density, grid)
        assert integral == pytest.approx(1.0, abs=1e-3)


class TestClassifier:
    def test_separable_blobs(self):
        rng = np.random.default_rng(3)
        z = np.concatenate([
            rng.normal(-2, 0.5, size=(300, 4)),
            rng.normal(2, 0.5, size=(300, 4)),
        ])
        y = np.array([0] * 300 + [1] * 300)
        _, report = train_classifier(z, y, folds=5, seed=0, epochs=60)
        assert report.mean_balanced_accuracy >= 0.98

    def test_permutation_null(self):
        rng = np.random.default_rng(3)
        z = np.concatenate([
            rng.normal(-2, 0.5, size=(300, 4)),
            rng.normal(2, 0.5, size=(300, 4)),
        ])
        y = rng.permutation(np.array([0] * 300 + [1] * 300))
        _, report = train_classifier(z, y, folds=5, seed=0, epochs=60)
        assert abs(report.mean_balanced_accuracy - 0.5) <= 0.05

    def test_confusion_counts_sum_to_n(self):
        rng = np.random.default_rng(4)
        z = rng.normal(size=(120, 3))
        y = (z[:, 0] > 0).astype(int)
        _, report = train_classifier(z, y, folds=5, seed=1, epochs=30)
        assert report.confusion_raw.sum() == 120

    def test_single_class_rejected(self):
        with pytest.raises(ValueError, match="single class"):
            train_classifier(np.zeros((10, 2)), np.ones(10, dtype=int))

    def test_probabilities_strictly_inside_unit_interval(self):
        clf = LatentClassifier.init(3, seed=0)
        clf.params["W2"][:] = 1e4  # saturate the output
        clf.params["b2"][:] = 1e4
        p = clf.predict_proba(np.ones((5, 3)))
        assert (p > 0).all() and (p < 1).all()

    def test_layout_has_confusion_matrix(self):
        rng = np.random.default_rng(4)
        z = rng.normal(size=(80, 3))
        y = (z[:, 0] > 0).astype(int)
        _, report = train_classifier(z, y, folds=5, seed=1, epochs=20)
        layout = report.layout()
        assert "true_low_lumo" in layout
        assert "pred_high_lumo" in layout
        assert "balanced accuracy" in layout


class TestConditionalSampling:
    def test_identity_classifier_accepts_everything(self, toy_gmm):
        spec = AttributeSpec(attributes=(
            Attribute(score=lambda z: np.ones(np.atleast_2d(z).shape[0])),
        ))
        _, trace = conditional_sample(toy_gmm, spec, target_accepted=10**9,
                                      max_draws=2000, seed=1)
        assert trace.acceptance_rate == 1.0
        assert trace.n_draws == 2000

    def test_near_zero_classifier_and_budget_exhaustion(self, toy_gmm):
        eps = 1e-3
        spec = AttributeSpec(attributes=(
            Attribute(score=lambda z: np.full(np.atleast_2d(z).shape[0], eps)),
        ))
        _, trace = conditional_sample(toy_gmm, spec, target_accepted=10**9,
                                      max_draws=30000, seed=2)
        assert trace.acceptance_rate == pytest.approx(eps, rel=0.5)

        zero = AttributeSpec(attributes=(
            Attribute(score=lambda z: np.zeros(np.atleast_2d(z).shape[0])),
        ))
        with pytest.raises(BudgetExhausted):
            conditional_sample(toy_gmm, zero, target_accepted=1,
                               max_draws=500, seed=3)

    def test_accepted_match_quadrature_conditional(self, toy_gmm):
        def logistic(z):
            return 1.0 / (1.0 + np.exp(-np.atleast_2d(z)[:, 0]))

        spec = AttributeSpec(attributes=(Attribute(score=logistic),))
        accepted, trace = conditional_sample(
            toy_gmm, spec, target_accepted=10**9, max_draws=50000, seed=42)
        zs = np.array([a[0] for a in accepted])

        grid = np.linspace(-9, 9, 200001)
        target = np.exp(toy_gmm.logpdf(grid[:, None]))
        target *= 1.0 / (1.0 + np.exp(-grid))
        cdf = np.cumsum(target)
        cdf /= cdf[-1]
        inner = np.interp(np.linspace(0, 1, 21)[1:-1], cdf, grid)
        edges = np.concatenate([[-np.inf], inner, [np.inf]])
        observed, _ = np.histogram(zs, bins=edges)
        expected = np.full(20, len(zs) / 20)
        _, p = stats.chisquare(observed, expected)
        assert p > 0.01

    def test_acceptance_probability_recorded_and_bounded(self, toy_gmm):
        def logistic(z):
            return 1.0 / (1.0 + np.exp(-np.atleast_2d(z)[:, 0]))

        spec = AttributeSpec(attributes=(Attribute(score=logistic),))
        _, trace = conditional_sample(toy_gmm, spec, target_accepted=200,
                                      max_draws=5000, seed=6)
        for record in trace.records:
            assert 0.0 < record.acceptance_probability <= 1.0

    def test_seed_reproducibility(self, toy_gmm):
        def logistic(z):
            return 1.0 / (1.0 + np.exp(-np.atleast_2d(z)[:, 0]))

        spec = AttributeSpec(attributes=(Attribute(score=logistic),))
        a, ta = conditional_sample(toy_gmm, spec, target_accepted=100,
                                   max_draws=5000, seed=13, n_lanes=2)
        b, tb = conditional_sample(toy_gmm, spec, target_accepted=100,
                                   max_draws=5000, seed=13, n_lanes=2)
        assert np.array_equal(np.stack(a), np.stack(b))
        assert ta.manifest() == tb.manifest()

    def test_conditioning_raises_mean_score(self, toy_gmm):
        def logistic(z):
            return 1.0 / (1.0 + np.exp(-np.atleast_2d(z)[:, 0]))

        spec = AttributeSpec(attributes=(Attribute(score=logistic),))
        accepted, _ = conditional_sample(toy_gmm, spec, target_accepted=2000,
                                         max_draws=20000, seed=8)
        proposal = toy_gmm.sample(5000, seed=8)
        accepted_scores = logistic(np.stack(accepted))
        proposal_scores = logistic(proposal)
        assert accepted_scores.mean() >= proposal_scores.mean()

    def test_two_attributes_multiply(self, toy_gmm):
        def logistic(z):
            return 1.0 / (1.0 + np.exp(-np.atleast_2d(z)[:, 0]))

        def band(z):
            return np.full(np.atleast_2d(z).shape[0], 0.5)

        spec = AttributeSpec(attributes=(
            Attribute(score=logistic), Attribute(score=band),
        ))
        zs = np.linspace(-3, 3, 7)[:, None]
        expected = logistic(zs) * 0.5
        assert np.allclose(spec.acceptance_probability(zs), expected)

    def test_negative_polarity_flips_conditioning(self, toy_gmm):
        def logistic(z):
            return 1.0 / (1.0 + np.exp(-np.atleast_2d(z)[:, 0]))

        pos = AttributeSpec((Attribute(score=logistic, positive=True),))
        neg = AttributeSpec((Attribute(score=logistic, positive=False),))
        zp, _ = conditional_sample(toy_gmm, pos, target_accepted=1000,
                                   max_draws=20000, seed=4)
        zn, _ = conditional_sample(toy_gmm, neg, target_accepted=1000,
                                   max_draws=20000, seed=4)
        assert np.mean(np.stack(zp)) > np.mean(np.stack(zn))
