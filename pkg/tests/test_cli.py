"""Tests for the command-line entry point."""

import numpy as np
import pytest

from src.cli import main
from src.config import dump_experiment_config
from src.orchestrator import read_results
from src.qnn import QnnParams
from tests.test_orchestrator import _config


class TestCli:
    """Tests for the command-line entry point."""

    @pytest.fixture
    def config_path(self, tmp_path):
        path = tmp_path / "exp.cfg"
        path.write_text(dump_experiment_config(_config()))
        return path

    def test_gen_data(self, tmp_path, config_path):
        """gen-data writes train.csv and test.csv."""
        out = tmp_path / "data"

        code = main(["gen-data", "--config", str(config_path), "--out", str(out)])

        assert code == 0
        assert (out / "train.csv").read_text().startswith("x1,x2,y")
        assert len((out / "test.csv").read_text().splitlines()) == 31

    def test_run_experiment(self, tmp_path, config_path):
        """run-experiment appends one row per qubit count."""
        out = tmp_path / "results.csv"

        code = main(["run-experiment", "--config", str(config_path), "--out", str(out)])

        assert code == 0
        assert [row.n for row in read_results(out)] == [1, 2]

    def test_stage_by_stage(self, tmp_path, config_path):
        """gen-data, train-qnn, build-kernel and fit-svm chain through files."""
        cfg = ["--config", str(config_path)]
        data = tmp_path / "data"
        train, test = str(data / "train.csv"), str(data / "test.csv")
        params = str(tmp_path / "qnn.json")
        gram, cross = str(tmp_path / "gram.txt"), str(tmp_path / "cross.txt")
        svm = tmp_path / "svm.txt"

        assert main(["gen-data", *cfg, "--out", str(data)]) == 0
        assert main(["train-qnn", *cfg, "--train", train, "--out", params]) == 0
        gram_args = ["--params", params, "--rows", train, "--out", gram]
        assert main(["build-kernel", *cfg, *gram_args]) == 0
        assert (
            main(
                ["build-kernel", *cfg, "--params", params, "--rows", test,
                 "--cols", train, "--out", cross]
            )
            == 0
        )
        assert (
            main(
                ["fit-svm", *cfg, "--kernel", gram, "--train", train,
                 "--test-kernel", cross, "--test", test, "--out", str(svm)]
            )
            == 0
        )
        assert svm.read_text().splitlines()[0] == "30"

    def test_bad_config_exit_code(self, tmp_path):
        """An invalid config exits with 2."""
        path = tmp_path / "bad.cfg"
        path.write_text("model.layers = 0\n")

        assert main(["gen-data", "--config", str(path), "--out", str(tmp_path)]) == 2

    def test_runtime_error_exit_code(self, tmp_path, config_path):
        """A failing stage exits with 1."""
        out = str(tmp_path / "n.csv")
        code = main(["noise-sweep", "--config", str(config_path), "--out", out])

        assert code == 1

    def test_missing_input_exit_code(self, tmp_path, config_path):
        """A missing input file exits with 1."""
        code = main(
            ["build-kernel", "--config", str(config_path), "--params",
             str(tmp_path / "none.json"), "--rows", str(tmp_path / "none.csv")]
        )

        assert code == 1

    def test_one_to_n_single_qubit_width_exit_code(self, tmp_path):
        """build-kernel --n 1 on a one_to_n config is a configuration error."""
        path = tmp_path / "one.cfg"
        path.write_text(
            dump_experiment_config(_config(kernel={"construction": "one_to_n"}))
        )
        params = tmp_path / "qnn.json"
        QnnParams.random(1, 2, np.random.default_rng(0)).save(params)

        code = main(
            ["build-kernel", "--config", str(path), "--params", str(params),
             "--rows", str(tmp_path / "none.csv"), "--n", "1"]
        )

        assert code == 2
