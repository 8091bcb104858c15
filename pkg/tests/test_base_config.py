import pytest

from apollonite.base_config import ApolloniteConfig, \
    MissingConfigOptionException
from apollonite.sandpile import Schedule


def test_defaults(monkeypatch):
    monkeypatch.delenv("APOLLONITE_CACHE", raising=False)
    config = ApolloniteConfig()
    assert config.log_level == "INFO"
    assert config.output_dir == "."
    assert config.log_file == "apollonite.log"
    assert config.cache_dir is None
    assert config.window_periods == 3
    assert config.max_probe_size == 6
    assert config.sandpile_schedule is Schedule.parallel
    assert config.progress
    assert config.palette == {"1": 0, "0": 85, "-1": 170, "-2": 255}


def test_cache_dir_from_environment(monkeypatch):
    monkeypatch.setenv("APOLLONITE_CACHE", "/tmp/vectors")
    assert ApolloniteConfig().cache_dir == "/tmp/vectors"
    assert ApolloniteConfig({"cache_dir": "here"}).cache_dir == "here"


def test_options():
    config = ApolloniteConfig({"log_level": "debug", "window_periods": "2",
                               "sandpile_schedule": "lifo",
                               "progress": False})
    assert config.log_level == "DEBUG"
    assert config.window_periods == 2
    assert config.sandpile_schedule is Schedule.lifo
    assert not config.progress


def test_unknown_schedule():
    config = ApolloniteConfig({"sandpile_schedule": "sideways"})
    with pytest.raises(ValueError):
        config.sandpile_schedule
    with pytest.raises(ValueError):
        str(config)


def test_required_options():
    with pytest.raises(MissingConfigOptionException):
        ApolloniteConfig({}, extra_required=["cache_dir"])
    ApolloniteConfig({"cache_dir": "x"}, extra_required=["cache_dir"])


def test_str_lists_every_field():
    text = str(ApolloniteConfig({"sandpile_schedule": "fifo"}))
    for field in ApolloniteConfig.fields:
        assert f"\t{field} = " in text
    assert "sandpile_schedule = fifo" in text
