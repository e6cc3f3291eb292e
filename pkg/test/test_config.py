"""
File: test_config.py

Description: Config file loading, env fallbacks and validation of the config DTOs

@author Derek Garcia
"""

import pytest

from config.default import EvaluationDefaults, ScaleDefaults
from config.parser import Config, EvaluationConfigDTO, ScaleConfigDTO, GeometryConfigDTO


def test_defaults(monkeypatch):
    for name in ('DBD_REPLICATES', 'DBD_MAX_CONFIGURATION_SIZE', 'DBD_CACHE_THRESHOLD'):
        monkeypatch.delenv(name, raising=False)
    config = Config()
    assert config.evaluation.replicates == EvaluationDefaults.REPLICATES
    assert config.scale.max_configuration_size == ScaleDefaults.MAX_CONFIGURATION_SIZE


def test_env_fallback(monkeypatch):
    monkeypatch.setenv('DBD_REPLICATES', '25')
    monkeypatch.setenv('DBD_MAX_CONFIGURATION_SIZE', '300')
    assert EvaluationConfigDTO().replicates == 25
    assert ScaleConfigDTO().max_configuration_size == 300


def test_explicit_value_beats_env(monkeypatch):
    monkeypatch.setenv('DBD_REPLICATES', '25')
    assert EvaluationConfigDTO(replicates=7).replicates == 7


@pytest.mark.parametrize("build", [
    lambda: EvaluationConfigDTO(replicates=0),
    lambda: ScaleConfigDTO(max_configuration_size=0),
    lambda: GeometryConfigDTO(cache_threshold=-1),
    lambda: EvaluationConfigDTO(confidence_level=1.0),
])
def test_zero_and_out_of_range_values_are_rejected(monkeypatch, build):
    monkeypatch.setenv('DBD_REPLICATES', '25')
    monkeypatch.setenv('DBD_MAX_CONFIGURATION_SIZE', '300')
    with pytest.raises(ValueError):
        build()


def test_cache_threshold_zero_is_kept(monkeypatch):
    monkeypatch.setenv('DBD_CACHE_THRESHOLD', '100')
    assert GeometryConfigDTO(cache_threshold=0).cache_threshold == 0


def test_config_file(tmp_path, monkeypatch):
    monkeypatch.setenv('DBD_REPLICATES', '25')
    path = tmp_path / "config.yaml"
    path.write_text("evaluation:\n  replicates: ''\n  neighbors: 3\nanneal:\n  iterations: 40\n", encoding="utf-8")
    config = Config(str(path))
    assert config.evaluation.replicates == 25
    assert config.evaluation.neighbors == 3
    assert config.anneal.iterations == 40


def test_config_file_zero_replicates(tmp_path):
    path = tmp_path / "config.yaml"
    path.write_text("evaluation:\n  replicates: 0\n", encoding="utf-8")
    with pytest.raises(ValueError):
        Config(str(path))
