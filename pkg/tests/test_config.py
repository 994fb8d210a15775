import math
from pathlib import Path

import pytest

from mb_workbench.config import THREADS_ENV, ExperimentConfig, default_threads, read_config_file
from mb_workbench.errors import ParameterError


class TestExperimentConfig:
    def test_infinite_extents(self):
        config = ExperimentConfig.from_mapping({"M": "inf", "N": 3})
        assert config.M == math.inf
        assert config.N == 3
        assert config.as_dict()["M"] == "inf"

    def test_unknown_keys(self):
        with pytest.raises(ParameterError, match="colour"):
            ExperimentConfig.from_mapping({"colour": "red"})

    def test_invalid_values(self):
        with pytest.raises(ParameterError):
            ExperimentConfig.from_mapping({"n": 0})
        with pytest.raises(ParameterError):
            ExperimentConfig.from_mapping({"M": "many"})

    def test_merged(self):
        merged = ExperimentConfig(experiment="thm2").merged({"n": 50})
        assert (merged.experiment, merged.n) == ("thm2", 50)

    def test_params(self):
        p = ExperimentConfig(a=0.3, q=0.2, M=2, N=5).params
        assert (p.a, p.q, p.M, p.N) == (0.3, 0.2, 2, 5)


class TestReadConfigFile:
    def test_yaml(self):
        data = read_config_file(Path(__file__).parent / "data" / "prop1.yaml")
        assert data["experiment"] == "prop1"
        assert data["H"] == 2

    def test_json_is_accepted(self, tmp_path: Path):
        path = tmp_path / "c.json"
        path.write_text('{"experiment": "thm2", "eps": [0.1, 0.05]}')
        assert read_config_file(path)["eps"] == [0.1, 0.05]

    def test_empty_file(self, tmp_path: Path):
        path = tmp_path / "empty.yaml"
        path.write_text("")
        assert read_config_file(path) == {}

    def test_not_a_mapping(self, tmp_path: Path):
        path = tmp_path / "list.yaml"
        path.write_text("- 1\n- 2\n")
        with pytest.raises(ParameterError):
            read_config_file(path)

    def test_invalid_syntax(self, tmp_path: Path):
        path = tmp_path / "bad.yaml"
        path.write_text("a: [1, 2\n")
        with pytest.raises(ParameterError):
            read_config_file(path)


class TestDefaultThreads:
    def test_unset(self, monkeypatch):
        monkeypatch.delenv(THREADS_ENV, raising=False)
        assert default_threads() == 1

    def test_from_environment(self, monkeypatch):
        monkeypatch.setenv(THREADS_ENV, "4")
        assert default_threads() == 4

    @pytest.mark.parametrize("value", ["zero", "0"])
    def test_invalid(self, monkeypatch, value):
        monkeypatch.setenv(THREADS_ENV, value)
        with pytest.raises(ParameterError):
            default_threads()

    def test_config_default(self, monkeypatch):
        monkeypatch.setenv(THREADS_ENV, "2")
        assert ExperimentConfig().threads == 2
