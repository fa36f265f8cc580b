import subprocess
import sys

import pytest

from conftest import make_separable_dataset
from wisardkit.dataset import write_feature_file
from wisardkit.wnn import WisardModel


def run_cli(*args):
    return subprocess.run(
        [sys.executable, "-m", "wisardkit.cli", *args],
        capture_output=True,
        text=True,
    )


@pytest.fixture(scope="module")
def feature_file(tmp_path_factory):
    path = tmp_path_factory.mktemp("data") / "features.csv"
    ds = make_separable_dataset(seed=50, d=32, n_pos=9, n_neg=3)
    write_feature_file(path, ds.samples)
    return path


class TestTrain:
    def test_writes_loadable_model(self, feature_file, tmp_path):
        out = tmp_path / "model.wsd"
        proc = run_cli("train", "--features", str(feature_file), "--n", "4", "--seed", "7",
                       "--out", str(out))
        assert proc.returncode == 0, proc.stderr
        assert "class 1: 9 samples" in proc.stdout
        assert "class 0: 3 samples" in proc.stdout
        model = WisardModel.load(out)
        assert model.config.n == 4
        assert (tmp_path / "run_manifest.txt").exists()

    def test_missing_feature_file_leaves_no_output(self, tmp_path):
        out = tmp_path / "model.wsd"
        proc = run_cli("train", "--features", str(tmp_path / "nope.csv"), "--n", "4",
                       "--out", str(out))
        assert proc.returncode == 1
        assert "error:" in proc.stderr
        assert not out.exists()

    def test_zero_tuple_size_is_a_usage_error(self, tmp_path):
        proc = run_cli("train", "--features", "irrelevant.csv", "--n", "0",
                       "--out", str(tmp_path / "m.wsd"))
        assert proc.returncode == 2
        assert "usage" in proc.stderr.lower()


class TestPredict:
    def test_training_samples_saturate(self, feature_file, tmp_path):
        out = tmp_path / "model.wsd"
        run_cli("train", "--features", str(feature_file), "--n", "4", "--seed", "7",
                "--out", str(out))
        proc = run_cli("predict", "--model", str(out), "--features", str(feature_file))
        assert proc.returncode == 0, proc.stderr
        lines = proc.stdout.splitlines()
        assert lines[0] == "id,predicted_label,fired,k_total"
        assert len(lines) == 13
        for line in lines[1:]:
            sample_id, label, fired, k_total = line.split(",")
            expected = "1" if sample_id.startswith("pos") else "0"
            assert label == expected
            if expected == "1":
                assert fired == k_total  # trained patterns fire every RAM

    def test_dimension_mismatch_names_both_sizes(self, feature_file, tmp_path):
        out = tmp_path / "model.wsd"
        run_cli("train", "--features", str(feature_file), "--n", "4", "--seed", "7",
                "--out", str(out))
        other = tmp_path / "short.csv"
        ds = make_separable_dataset(seed=51, d=16, n_pos=3, n_neg=1)
        write_feature_file(other, ds.samples)
        proc = run_cli("predict", "--model", str(out), "--features", str(other))
        assert proc.returncode == 1
        assert "32" in proc.stderr and "16" in proc.stderr

    def test_empty_feature_file_prints_header_only(self, feature_file, tmp_path):
        out = tmp_path / "model.wsd"
        run_cli("train", "--features", str(feature_file), "--n", "4", "--out", str(out))
        empty = tmp_path / "empty.csv"
        empty.write_text("id,label," + ",".join(f"f{i}" for i in range(32)) + "\n")
        proc = run_cli("predict", "--model", str(out), "--features", str(empty))
        assert proc.returncode == 0
        assert proc.stdout == "id,predicted_label,fired,k_total\n"


class TestCrossval:
    def test_single_size_report(self, feature_file, tmp_path):
        out = tmp_path / "reports"
        proc = run_cli("crossval", "--features", str(feature_file), "--n", "4",
                       "--seed", "3", "--out-dir", str(out))
        assert proc.returncode == 0, proc.stderr
        sweep = (out / "sweep.csv").read_text().splitlines()
        assert sweep == ["n,accuracy,tp,fp,tn,fn", "4,1.0000,9,0,3,0"]
        comparison = (out / "comparison.csv").read_text().splitlines()
        assert comparison == ["system,accuracy", "wisard_tl,1.0000"]
        manifest = (out / "run_manifest.txt").read_text()
        assert "command=crossval" in manifest and "seed=3" in manifest

    def test_sweep_flag_and_baseline_and_no_tl(self, feature_file, tmp_path):
        out = tmp_path / "reports"
        raw = tmp_path / "raw.csv"
        write_feature_file(raw, make_separable_dataset(seed=52, d=24, n_pos=9, n_neg=3).samples)
        proc = run_cli("crossval", "--features", str(feature_file), "--sweep", "9:14",
                       "--seed", "3", "--out-dir", str(out),
                       "--baseline", "perceptron", "--epochs", "10",
                       "--features-no-tl", str(raw))
        assert proc.returncode == 0, proc.stderr
        sweep = (out / "sweep.csv").read_text().splitlines()
        assert len(sweep) == 7
        assert [line.split(",")[0] for line in sweep[1:]] == ["9", "10", "11", "12", "13", "14"]
        comparison = (out / "comparison.csv").read_text().splitlines()
        assert [line.split(",")[0] for line in comparison] == [
            "system", "wisard_tl", "wisard_no_tl", "perceptron_baseline",
        ]

    def test_sweep_subcommand_defaults_to_standard_range(self, feature_file, tmp_path):
        out = tmp_path / "reports"
        proc = run_cli("sweep", "--features", str(feature_file), "--seed", "3",
                       "--out-dir", str(out))
        assert proc.returncode == 0, proc.stderr
        assert len((out / "sweep.csv").read_text().splitlines()) == 7

    def test_reruns_are_byte_identical(self, feature_file, tmp_path):
        outputs = []
        for name in ("a", "b"):
            out = tmp_path / name
            proc = run_cli("crossval", "--features", str(feature_file), "--n", "5",
                           "--seed", "11", "--out-dir", str(out))
            assert proc.returncode == 0, proc.stderr
            outputs.append(out)
        for artifact in ("sweep.csv", "comparison.csv"):
            first = (outputs[0] / artifact).read_bytes()
            second = (outputs[1] / artifact).read_bytes()
            assert first == second, artifact
        # manifests differ only in the output location
        manifests = [
            [line for line in (out / "run_manifest.txt").read_text().splitlines()
             if not line.startswith("out_dir=")]
            for out in outputs
        ]
        assert manifests[0] == manifests[1]
