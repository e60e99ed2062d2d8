import numpy as np
import pytest

from conftest import make_dataset
from seqaug.analysis import (
    PropertyReport,
    bench_method,
    compute_properties,
    corr_report,
    dataset_variance,
    intra_class_variance,
    pca_project,
    pearson_corr,
)
from seqaug.dataset import LabeledDataset
from seqaug.errors import ArgumentError


def brute_dataset_variance(ds):
    """Independent direct-definition oracle: loop over steps, population
    variance via explicit mean-of-squares."""
    data = np.stack([np.asarray(s)[:, 0] for s in ds.series])
    n, t = data.shape
    total = 0.0
    for step in range(t):
        col = data[:, step]
        mu = sum(col) / n
        total += sum((v - mu) ** 2 for v in col) / n
    return total / t


def brute_intra_class_variance(ds):
    data = np.stack([np.asarray(s)[:, 0] for s in ds.series])
    n, t = data.shape
    classes = sorted(set(ds.labels.tolist()))
    total = 0.0
    for c in classes:
        rows = data[ds.labels == c]
        nc = rows.shape[0]
        if nc < 2:
            continue
        acc = 0.0
        for step in range(t):
            col = rows[:, step]
            mu = sum(col) / nc
            acc += sum((v - mu) ** 2 for v in col) / nc
        total += nc * acc / t
    return total / (n * len(classes))


class TestDatasetVariance:
    def test_identical_patterns(self):
        x = np.random.default_rng(0).normal(size=(10, 1))
        ds = LabeledDataset(series=[x.copy() for _ in range(5)], labels=[0] * 5)
        assert dataset_variance(ds) == 0.0

    def test_hand_computed(self):
        ds = LabeledDataset(
            series=[np.array([[0.0], [0.0]]), np.array([[2.0], [2.0]])],
            labels=[0, 1],
        )
        assert dataset_variance(ds) == pytest.approx(1.0)  # population variance

    def test_shift_invariance(self):
        ds = make_dataset(10, 20)
        shifted = LabeledDataset(series=[s + 3.7 for s in ds.series],
                                 labels=ds.labels)
        assert dataset_variance(shifted) == pytest.approx(dataset_variance(ds),
                                                          abs=1e-9)

    def test_quadratic_scaling(self):
        ds = make_dataset(10, 20)
        scaled = LabeledDataset(series=[2.0 * s for s in ds.series], labels=ds.labels)
        assert dataset_variance(scaled) == pytest.approx(4 * dataset_variance(ds),
                                                         abs=1e-9)

    def test_single_pattern_rejected(self):
        ds = LabeledDataset(series=[np.zeros((5, 1))], labels=[0])
        with pytest.raises(ArgumentError):
            dataset_variance(ds)


class TestIntraClassVariance:
    def test_internally_identical_classes(self):
        x = np.random.default_rng(1).normal(size=(8, 1))
        y = np.random.default_rng(2).normal(size=(8, 1))
        ds = LabeledDataset(series=[x.copy(), x.copy(), y.copy(), y.copy()],
                            labels=[0, 0, 1, 1])
        assert intra_class_variance(ds) == 0.0

    def test_single_class_reduces_to_dataset_variance(self):
        ds = make_dataset(10, 15, n_classes=1)
        assert intra_class_variance(ds) == pytest.approx(dataset_variance(ds),
                                                         abs=1e-12)

    def test_oracle_equivalence(self):
        rng = np.random.default_rng(3)
        for trial in range(20):
            ds = make_dataset(
                n_patterns=int(rng.integers(4, 15)),
                length=int(rng.integers(5, 25)),
                n_classes=int(rng.integers(1, 4)),
                seed=trial,
            )
            assert intra_class_variance(ds) == pytest.approx(
                brute_intra_class_variance(ds), abs=1e-9)
            assert dataset_variance(ds) == pytest.approx(
                brute_dataset_variance(ds), abs=1e-9)

    def test_singleton_class_contributes_zero(self):
        x = np.random.default_rng(4).normal(size=(6, 1))
        ds = LabeledDataset(series=[x, x + 1, np.zeros((6, 1))],
                            labels=[0, 0, 1])
        with pytest.warns(UserWarning):
            value = intra_class_variance(ds)
        assert value == pytest.approx(brute_intra_class_variance(ds), abs=1e-12)


class TestPca:
    def test_duplicated_rows_identical_coordinates(self):
        rng = np.random.default_rng(5)
        rows = [rng.normal(size=12) for _ in range(4)]
        coords = pca_project(rows + [rows[0].copy()], k=2)
        assert np.allclose(coords[0], coords[-1], atol=1e-9)

    def test_component_variance_ordering(self):
        rng = np.random.default_rng(6)
        coords = pca_project([rng.normal(size=20) for _ in range(30)], k=2)
        assert coords[:, 0].var() >= coords[:, 1].var()

    def test_rank_one_data(self):
        rng = np.random.default_rng(7)
        direction = rng.normal(size=15)
        rows = [3.0 * direction * c for c in rng.normal(size=10)]
        coords = pca_project(rows, k=2)
        assert np.max(np.abs(coords[:, 1])) <= 1e-8

    def test_reproducible(self):
        rng = np.random.default_rng(8)
        rows = [rng.normal(size=18) for _ in range(12)]
        a = pca_project(rows, k=2)
        b = pca_project(rows, k=2)
        assert a.tobytes() == b.tobytes()

    def test_matches_eigendecomposition(self):
        rng = np.random.default_rng(9)
        rows = np.stack([rng.normal(size=10) for _ in range(40)])
        coords = pca_project(list(rows), k=2)
        centered = rows - rows.mean(axis=0)
        # oracle: dense symmetric eigendecomposition
        vals, vecs = np.linalg.eigh(centered.T @ centered / len(rows))
        order = np.argsort(vals)[::-1]
        for comp in range(2):
            v = vecs[:, order[comp]]
            if v[np.argmax(np.abs(v))] < 0:
                v = -v
            assert np.allclose(coords[:, comp], centered @ v, atol=1e-7)

    def test_k_too_large(self):
        with pytest.raises(ArgumentError):
            pca_project([np.zeros(4), np.ones(4)], k=3)


class TestPearson:
    def test_self_correlation(self):
        a = np.array([1.0, 2, 4, 3])
        assert pearson_corr(a, a) == pytest.approx(1.0)

    def test_negation(self):
        a = np.array([1.0, 2, 4, 3])
        assert pearson_corr(a, -a) == pytest.approx(-1.0)

    def test_affine_invariance(self):
        a = np.array([1.0, 2, 4, 3])
        assert pearson_corr(a, 2.5 * a + 7) == pytest.approx(1.0)

    def test_zero_variance_rejected(self):
        with pytest.raises(ArgumentError):
            pearson_corr([1.0, 1.0, 1.0], [1.0, 2.0, 3.0])


class TestCorrReport:
    def _reports(self):
        return [
            PropertyReport(f"ds{k}", n_train=10 * (k + 1), patterns_per_class=5.0 + k,
                           length=50 + k, dataset_variance=0.1 * (k + 1),
                           intra_class_variance=0.05 * (k + 1))
            for k in range(4)
        ]

    def test_delta_equal_to_property_column(self):
        reports = self._reports()
        deltas = {"jittering": [float(r.n_train) for r in reports]}
        out = corr_report(reports, deltas)
        assert out["jittering"]["n_train"] == pytest.approx(1.0)

    def test_constant_delta_reported_missing(self):
        out = corr_report(self._reports(), {"slicing": [0.5] * 4})
        assert all(np.isnan(v) for v in out["slicing"].values())

    def test_row_permutation_invariance(self):
        reports = self._reports()
        deltas = [0.3, -0.2, 0.5, 0.1]
        out1 = corr_report(reports, {"m": deltas})
        perm = [2, 0, 3, 1]
        out2 = corr_report([reports[p] for p in perm],
                           {"m": [deltas[p] for p in perm]})
        for prop, val in out1["m"].items():
            assert out2["m"][prop] == pytest.approx(val, abs=1e-12)

    def test_length_mismatch(self):
        with pytest.raises(ArgumentError):
            corr_report(self._reports(), {"m": [0.1, 0.2]})


class TestBench:
    def test_identity_method_near_zero(self, small_dataset):
        report = bench_method(small_dataset, "none")
        assert report.seconds < 0.5
        assert report.generated == len(small_dataset)

    def test_properties_pipeline(self, small_dataset):
        report = compute_properties(small_dataset)
        assert report.n_train == len(small_dataset)
        assert report.patterns_per_class == len(small_dataset) / 2
        assert report.length == 30
        assert report.dataset_variance > 0
