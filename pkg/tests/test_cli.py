import csv

import pytest

from conftest import make_dataset
from seqaug.cli import main
from seqaug.dataset import load_tsv, write_tsv


@pytest.fixture
def train_tsv(tmp_path):
    ds = make_dataset(8, 24, n_classes=2, name="toy")
    path = tmp_path / "toy_TRAIN.tsv"
    write_tsv(ds, path)
    return path


def run(*argv):
    return main([str(a) for a in argv])


class TestAugmentCommand:
    def test_basic_augment(self, train_tsv, tmp_path):
        code = run("augment", train_tsv, "--method", "jittering",
                   "--multiplier", "4", "--seed", "7", "--out-dir", tmp_path)
        assert code == 0
        out = tmp_path / "toy_jittering_x4_TRAIN.tsv"
        assert out.exists()
        assert len(load_tsv(out)) == 32

    def test_repeat_run_byte_identical(self, train_tsv, tmp_path):
        out = tmp_path / "toy_scaling_x2_TRAIN.tsv"
        run("augment", train_tsv, "--method", "scaling", "--multiplier", "2",
            "--seed", "3", "--out-dir", tmp_path)
        first = out.read_bytes()
        run("augment", train_tsv, "--method", "scaling", "--multiplier", "2",
            "--seed", "3", "--out-dir", tmp_path)
        assert out.read_bytes() == first

    def test_unknown_method_exit_3(self, train_tsv, tmp_path, capsys):
        code = run("augment", train_tsv, "--method", "nosuch",
                   "--out-dir", tmp_path)
        assert code == 3
        err = capsys.readouterr().err
        for name in ("jittering", "spawner", "wdba", "dgw"):
            assert name in err

    def test_unknown_param_exit_3(self, train_tsv, tmp_path):
        code = run("augment", train_tsv, "--method", "jittering",
                   "--param", "bogus=1", "--out-dir", tmp_path)
        assert code == 3

    def test_param_override(self, train_tsv, tmp_path):
        code = run("augment", train_tsv, "--method", "jittering",
                   "--param", "jitter_sigma=0.0", "--multiplier", "1",
                   "--out-dir", tmp_path)
        assert code == 0

    def test_missing_file_exit_2(self, tmp_path):
        assert run("augment", tmp_path / "nope_TRAIN.tsv",
                   "--method", "jittering") == 2

    def test_malformed_file_exit_2(self, tmp_path):
        path = tmp_path / "bad_TRAIN.tsv"
        path.write_text("1\t0.5\tnot-a-number\n")
        assert run("augment", path, "--method", "jittering",
                   "--out-dir", tmp_path) == 2

    def test_input_not_mutated(self, train_tsv, tmp_path):
        before = train_tsv.read_bytes()
        run("augment", train_tsv, "--method", "permutation", "--out-dir", tmp_path)
        assert train_tsv.read_bytes() == before

    def test_env_var_out_dir(self, train_tsv, tmp_path, monkeypatch):
        target = tmp_path / "via_env"
        monkeypatch.setenv("SEQAUG_OUT_DIR", str(target))
        assert run("augment", train_tsv, "--method", "none",
                   "--multiplier", "1") == 0
        assert (target / "toy_none_x1_TRAIN.tsv").exists()


class TestAnalyzeCommand:
    def test_properties_csv(self, train_tsv, tmp_path):
        out_dir = tmp_path / "reports"
        assert run("analyze", train_tsv, "--out-dir", out_dir) == 0
        with open(out_dir / "properties.csv", newline="") as fh:
            rows = list(csv.DictReader(fh))
        assert rows[0]["dataset"] == "toy"
        assert int(rows[0]["n_train"]) == 8

    def test_single_class_reduction(self, tmp_path):
        ds = make_dataset(6, 20, n_classes=1, name="mono")
        path = tmp_path / "mono_TRAIN.tsv"
        write_tsv(ds, path)
        out_dir = tmp_path / "r"
        assert run("analyze", path, "--out-dir", out_dir) == 0
        with open(out_dir / "properties.csv", newline="") as fh:
            row = next(csv.DictReader(fh))
        assert float(row["intra_class_variance"]) == pytest.approx(
            float(row["dataset_variance"]), rel=1e-4)

    def test_empty_dir_exit_2(self, tmp_path):
        empty = tmp_path / "none"
        empty.mkdir()
        assert run("analyze", empty) == 2


class TestCorrelateCommand:
    def _delta_csv(self, tmp_path, rows):
        path = tmp_path / "delta.csv"
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["dataset", "method", "delta_acc"])
            writer.writerows(rows)
        return path

    def test_self_correlation(self, tmp_path):
        paths = []
        for k, n in enumerate((6, 8, 10, 12)):
            ds = make_dataset(n, 20, name=f"d{k}")
            p = tmp_path / f"d{k}_TRAIN.tsv"
            write_tsv(ds, p)
            paths.append(p)
        delta = self._delta_csv(
            tmp_path, [(f"d{k}", "jittering", float(n))
                       for k, n in enumerate((6, 8, 10, 12))])
        out_dir = tmp_path / "out"
        assert run("correlate", *paths, "--delta", delta,
                   "--out-dir", out_dir) == 0
        with open(out_dir / "correlations.csv", newline="") as fh:
            row = next(csv.DictReader(fh))
        assert float(row["n_train"]) == pytest.approx(1.0)

    def test_missing_rows_exit_4(self, tmp_path, capsys):
        ds = make_dataset(6, 20, name="d0")
        p = tmp_path / "d0_TRAIN.tsv"
        write_tsv(ds, p)
        delta = self._delta_csv(tmp_path, [("other", "jittering", 0.5)])
        assert run("correlate", p, "--delta", delta,
                   "--out-dir", tmp_path) == 4
        assert "d0" in capsys.readouterr().err


class TestBenchCommand:
    def test_bench_csv_layout(self, train_tsv, tmp_path):
        out_dir = tmp_path / "bench"
        assert run("bench", train_tsv, "--methods", "none", "jittering",
                   "slicing", "--out-dir", out_dir) == 0
        with open(out_dir / "bench.csv", newline="") as fh:
            rows = list(csv.reader(fh))
        assert rows[0] == ["method", "toy"]
        assert [r[0] for r in rows[1:]] == ["none", "jittering", "slicing"]

    def test_unknown_method(self, train_tsv, tmp_path):
        assert run("bench", train_tsv, "--methods", "nope",
                   "--out-dir", tmp_path) == 3


class TestPlotCommand:
    def test_overlay_and_pca_outputs(self, train_tsv, tmp_path):
        out_dir = tmp_path / "figs"
        assert run("plot", train_tsv, "--method", "jittering",
                   "--multiplier", "1", "--mode", "both",
                   "--out-dir", out_dir) == 0
        svg = (out_dir / "toy_jittering_overlay.svg").read_text()
        assert svg.lstrip().startswith("<?xml")
        with open(out_dir / "toy_jittering_pca.csv", newline="") as fh:
            rows = list(csv.DictReader(fh))
        assert len(rows) == 8 + 8  # originals + generated
        assert {r["kind"] for r in rows} == {"original", "generated"}

    def test_none_overlay_coincides(self, train_tsv, tmp_path):
        out_dir = tmp_path / "figs2"
        assert run("plot", train_tsv, "--method", "none", "--mode", "overlay",
                   "--out-dir", out_dir) == 0
        with open(out_dir / "toy_none_overlay.csv", newline="") as fh:
            for row in csv.DictReader(fh):
                assert row["original"] == row["generated"]
