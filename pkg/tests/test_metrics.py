"""Generation-quality metric identities and closed forms."""

from collections import Counter

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import stats

from pagforge.metrics import (
    cosine_of_counts,
    frag_similarity,
    frechet_descriptor_distance,
    gaussian_frechet,
    internal_diversity,
    metric_report,
    novelty,
    scaf_similarity,
    snn,
    uniqueness,
    wasserstein1,
)

GEN = ["C[S+](C)C", "CC[S+](C)C", "c1ccccc1[S+](C)C", "C[S+]1CCCC1"]
OTHER = ["CCO", "CCCO", "c1ccncc1", "CC(=O)OC"]

MOLECULE_POOL = GEN + OTHER + [
    "CC(C)[S+]1CCCC1", "c1ccc2ccccc2c1", "C1CCOC1", "BrCCBr",
]


class TestSetMetrics:
    def test_uniqueness_all_distinct(self):
        assert uniqueness(GEN) == 1.0

    def test_uniqueness_with_respellings(self):
        assert uniqueness(["CCO", "OCC", "CC"]) == pytest.approx(2 / 3)

    def test_novelty_zero_when_gen_equals_train(self):
        assert novelty(GEN, GEN) == 0.0

    def test_novelty_one_when_disjoint(self):
        assert novelty(GEN, OTHER) == 1.0

    def test_intdiv_singleton_zero(self):
        assert internal_diversity(["CCO"]) == 0.0

    def test_empty_set_rejected(self):
        for fn in (uniqueness, internal_diversity):
            with pytest.raises(ValueError, match="empty"):
                fn([])


class TestReferenceMetrics:
    def test_identity_cases(self):
        assert snn(GEN, GEN) == 1.0
        assert frag_similarity(GEN, GEN) == 1.0
        assert scaf_similarity(GEN, GEN) == 1.0

    def test_snn_subset_is_one(self):
        assert snn(GEN[:2], GEN) == 1.0

    def test_frag_hand_cosine(self):
        a = Counter({"x": 2, "y": 1})
        b = Counter({"x": 1, "y": 1, "z": 1})
        assert cosine_of_counts(a, b) == pytest.approx(
            3 / (np.sqrt(5) * np.sqrt(3)))

    def test_scaf_undefined_when_side_empty(self):
        with pytest.raises(ValueError, match="scaffold"):
            scaf_similarity(["CCCC"], GEN)  # acyclic side has no scaffolds


class TestFrechet:
    def test_gen_equals_ref_zero(self):
        value, _ = frechet_descriptor_distance(GEN, GEN)
        assert value <= 1e-8

    def test_one_dimensional_closed_form(self):
        delta = 3.0
        value = gaussian_frechet(
            np.array([0.0]), np.array([[2.0]]),
            np.array([delta]), np.array([[2.0]]))
        assert value == pytest.approx(delta**2, abs=1e-8)

    def test_symmetry(self):
        a, _ = frechet_descriptor_distance(GEN, OTHER)
        # Standardization uses the reference side; symmetry holds on the
        # unstandardized Gaussian form.
        m1, c1 = np.array([0.0, 1.0]), np.diag([1.0, 2.0])
        m2, c2 = np.array([2.0, -1.0]), np.diag([0.5, 1.5])
        assert gaussian_frechet(m1, c1, m2, c2) == pytest.approx(
            gaussian_frechet(m2, c2, m1, c1), abs=1e-10)
        assert a >= 0.0


class TestWasserstein:
    def test_identical(self):
        assert wasserstein1([1.0, 2.0, 3.0], [1.0, 2.0, 3.0]) == 0.0

    def test_point_masses(self):
        assert wasserstein1([2.0], [5.5]) == pytest.approx(3.5)

    def test_hand_case(self):
        assert wasserstein1([0.0, 1.0], [0.0, 2.0]) == pytest.approx(0.5)

    def test_empty_rejected(self):
        with pytest.raises(ValueError, match="empty"):
            wasserstein1([], [1.0])

    @settings(max_examples=60, deadline=None)
    @given(
        st.lists(st.floats(-50, 50), min_size=1, max_size=30),
        st.lists(st.floats(-50, 50), min_size=1, max_size=30),
    )
    def test_matches_scipy_oracle(self, xs, ys):
        mine = wasserstein1(xs, ys)
        oracle = stats.wasserstein_distance(xs, ys)
        assert mine == pytest.approx(oracle, abs=1e-9)


class TestReport:
    def test_identity_report(self):
        report = metric_report(GEN, GEN)
        assert report.snn == 1.0
        assert report.frag == 1.0
        assert report.scaf == 1.0
        assert report.fcd_substitute <= 1e-8
        assert report.novelty == 0.0
        assert report.wasserstein_mw == 0.0

    def test_report_deterministic(self):
        a = metric_report(GEN, OTHER, GEN)
        b = metric_report(GEN, OTHER, GEN)
        assert a == b

    def test_table_mentions_substitute(self):
        report = metric_report(GEN, GEN)
        assert "substitute" in report.table()
        assert "fcd_substitute" in report.to_dict()

    @settings(max_examples=15, deadline=None)
    @given(st.lists(st.sampled_from(MOLECULE_POOL), min_size=2, max_size=6),
           st.lists(st.sampled_from(MOLECULE_POOL), min_size=2, max_size=6))
    def test_unit_interval_metrics_respect_bounds(self, gen, ref):
        for value in (uniqueness(gen), novelty(gen, ref),
                      internal_diversity(gen), snn(gen, ref),
                      frag_similarity(gen, ref)):
            assert -1e-12 <= value <= 1.0 + 1e-12
