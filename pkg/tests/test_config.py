import pytest

from kissing.config import (
    CONFIG_ENV_VAR,
    DEFAULTS,
    MusinPreset,
    load_settings,
    packaged_defaults,
    resolve_config_path,
)
from kissing.errors import ConfigError


def test_packaged_defaults_match_dataclass_defaults():
    assert packaged_defaults() == DEFAULTS


def test_no_file_gives_defaults(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    monkeypatch.delenv(CONFIG_ENV_VAR, raising=False)
    assert resolve_config_path() is None
    assert load_settings() == DEFAULTS


def test_yaml_overlay(write_lines):
    path = write_lines(
        "settings.yaml",
        [
            "lp:",
            "  grid_size: 500",
            "musin:",
            "  seed: 11",
            "  presets:",
            "    - {n: 3, s: 0.5, t0: -0.6, mu: 4}",
        ],
    )
    settings = load_settings(str(path))
    assert settings.lp.grid_size == 500
    assert settings.lp.max_iterations == DEFAULTS.lp.max_iterations
    assert settings.musin.seed == 11
    assert settings.musin.presets == (MusinPreset(n=3, s=0.5, t0=-0.6, mu=4, degree=9),)
    assert settings.musin.preset_for(4, 0.5) is None


def test_environment_variable_and_local_file(tmp_path, monkeypatch, write_lines):
    path = write_lines("env.yaml", ["geometric:", "  tol: 1.0e-8"])
    monkeypatch.chdir(tmp_path)
    monkeypatch.setenv(CONFIG_ENV_VAR, str(path))
    assert load_settings().geometric.tol == 1e-8

    monkeypatch.delenv(CONFIG_ENV_VAR)
    write_lines("kissing_config.yaml", ["analysis:", "  merge_tolerance: 1.0e-7"])
    assert load_settings().analysis.merge_tolerance == 1e-7


@pytest.mark.parametrize(
    "lines",
    [
        ("lp:", "  grid: 10"),
        ("bogus: 1",),
        ("lp: 3",),
        ("musin:", "  presets:", "    - {n: 3}"),
        ("- just", "- a list"),
    ],
)
def test_bad_files_raise_config_error(write_lines, lines):
    with pytest.raises(ConfigError):
        load_settings(str(write_lines("bad.yaml", lines)))


def test_missing_file(tmp_path):
    with pytest.raises(ConfigError):
        load_settings(str(tmp_path / "absent.yaml"))
