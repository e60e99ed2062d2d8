import numpy as np
import pytest

from seqaug.dataset import LabeledDataset


def make_dataset(n_patterns=12, length=30, n_classes=2, seed=0, name="synthetic"):
    """Class-templated noisy sine dataset; every class has >= 2 members."""
    rng = np.random.default_rng(seed)
    series, labels = [], []
    t = np.linspace(0, 2 * np.pi, length)
    for k in range(n_patterns):
        label = k % n_classes
        base = np.sin(t * (label + 1) + 0.3 * label)
        series.append((base + 0.05 * rng.standard_normal(length))[:, None])
        labels.append(label)
    return LabeledDataset(series=series, labels=np.array(labels), name=name)


def write_dataset_tsv(ds, path):
    from seqaug.dataset import write_tsv

    write_tsv(ds, path)
    return path


@pytest.fixture
def small_dataset():
    return make_dataset()
