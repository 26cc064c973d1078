"""Tests for artifact file formats and the ArtifactStore."""

import json

import numpy as np
import pytest

from src.data import Dataset, generate_dataset
from src.kernel import KernelMatrix
from src.models.errors import InvalidArgumentError
from src.qnn import QnnParams
from src.storage import (
    ArtifactStore,
    load_dataset_file,
    load_kernel_file,
    load_svm_file,
    read_matrix,
    save_dataset_file,
    save_kernel_file,
    save_svm_file,
    write_matrix,
)
from src.svm import SvmModel


class TestFormats:
    """Tests for the plain-text formats."""

    def test_matrix_layout(self, tmp_path):
        """First line M, then M rows of 17-digit decimals."""
        path = tmp_path / "k.txt"
        write_matrix(path, np.array([[1.0, 1 / 3], [1 / 3, 1.0]]))

        lines = path.read_text().splitlines()

        assert lines[0] == "2"
        assert lines[1] == "1 0.33333333333333331"
        assert np.array_equal(read_matrix(path), [[1.0, 1 / 3], [1 / 3, 1.0]])

    def test_rectangular_matrix(self, tmp_path):
        """Cross-kernel matrices carry both dimensions in the header."""
        path = tmp_path / "cross.txt"
        entries = np.arange(6, dtype=float).reshape(2, 3) / 7

        write_matrix(path, entries)

        assert path.read_text().splitlines()[0] == "2 3"
        assert np.array_equal(read_matrix(path), entries)

    def test_malformed_matrix(self, tmp_path):
        """A row count that does not match the header raises."""
        path = tmp_path / "bad.txt"
        path.write_text("3\n1 0 0\n0 1 0\n")

        with pytest.raises(InvalidArgumentError, match="Malformed"):
            read_matrix(path)

    def test_kernel_file(self, tmp_path):
        """Kernel matrices survive a file round trip bit for bit."""
        rng = np.random.default_rng(0)
        a = rng.uniform(size=(4, 4))
        kernel = KernelMatrix(a @ a.T)
        path = tmp_path / "gram.txt"

        save_kernel_file(path, kernel)

        assert np.array_equal(load_kernel_file(path).entries, kernel.entries)

    def test_svm_record(self, tmp_path):
        """SVM records hold M, c, b and one (index, alpha, label) line per point."""
        model = SvmModel(
            alphas=np.array([0.0, 0.25, 1.0]),
            bias=-0.125,
            labels=np.array([1, -1, 1]),
            c=1.0,
        )
        path = tmp_path / "svm.txt"

        save_svm_file(path, model)
        lines = path.read_text().splitlines()
        loaded = load_svm_file(path)

        assert lines[:3] == ["3", "1", "-0.125"]
        assert lines[4] == "1 0.25 -1"
        assert np.array_equal(loaded.alphas, model.alphas)
        assert np.array_equal(loaded.labels, model.labels)
        assert loaded.bias == model.bias

    def test_truncated_svm_record(self, tmp_path):
        """Missing point lines are reported."""
        path = tmp_path / "svm.txt"
        path.write_text("3\n1\n0\n0 0.5 1\n")

        with pytest.raises(InvalidArgumentError, match="3 points"):
            load_svm_file(path)

    def test_dataset_csv(self, tmp_path):
        """Datasets are written with header x1,x2,y and read back exactly."""
        dataset = generate_dataset("spiral", 20, seed=1)
        path = tmp_path / "spiral.csv"

        save_dataset_file(path, dataset)
        loaded = load_dataset_file(path)

        assert path.read_text().splitlines()[0] == "x1,x2,y"
        assert loaded.name == "spiral"
        assert np.array_equal(loaded.X, dataset.X)
        assert np.array_equal(loaded.y, dataset.y)

    def test_dataset_csv_header(self, tmp_path):
        """A file without the header is rejected."""
        path = tmp_path / "points.csv"
        path.write_text("0.1,0.2,1\n")

        with pytest.raises(InvalidArgumentError, match="header"):
            load_dataset_file(path)


class TestArtifactStore:
    """Tests for the tag-addressed artifact directory."""

    @pytest.fixture
    def store(self, tmp_path):
        return ArtifactStore(str(tmp_path / "artifacts"))

    def test_creates_directories(self, store):
        """Every artifact kind has its own directory."""
        for directory in (
            store.dataset_dir,
            store.params_dir,
            store.kernel_dir,
            store.model_dir,
        ):
            assert directory.is_dir()

    def test_round_trips_and_manifest(self, store):
        """Stored artifacts load back and are listed in manifest.json."""
        params = QnnParams.random(2, 3, np.random.default_rng(2))
        kernel = KernelMatrix(np.eye(3))
        model = SvmModel(np.array([0.5, 0.5, 0.0]), 0.0, np.array([1, -1, 1]), 1.0)
        dataset = Dataset("tiny", 4, np.array([[0.1, 0.2], [0.0, -0.5]]), np.array([1, -1]))

        store.save_params("run", params)
        store.save_kernel("run", kernel)
        store.save_svm("run", model)
        store.save_dataset("run_train", dataset)

        assert np.array_equal(store.load_params("run").flatten(), params.flatten())
        assert np.array_equal(store.load_kernel("run").entries, kernel.entries)
        assert np.array_equal(store.load_svm("run").alphas, model.alphas)
        assert np.array_equal(store.load_dataset("run_train").X, dataset.X)

        manifest = json.loads(store.manifest_path.read_text())
        assert manifest["params/run"] == "params/run.json"
        assert set(manifest) == {"params/run", "kernel/run", "svm/run", "dataset/run_train"}

    def test_manifest_reloaded(self, store):
        """A new store over the same directory sees earlier entries."""
        store.save_kernel("k", KernelMatrix(np.eye(2)))

        reopened = ArtifactStore(str(store.storage_dir))

        assert "kernel/k" in reopened.manifest

    def test_corrupt_manifest(self, store):
        """An unreadable manifest is replaced by an empty one."""
        store.manifest_path.write_text("{not json")

        assert ArtifactStore(str(store.storage_dir)).manifest == {}
