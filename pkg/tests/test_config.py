import logging

import pytest

from selfdual import config
from selfdual.config import Settings, load_settings, setup_logging
from selfdual.errors import ConfigError


def test_defaults_follow_the_module_constants():
    s = Settings()
    assert s.mds_budget == config.MDS_BUDGET
    assert s.sample_seed == config.SAMPLE_SEED
    assert s.mds_sampling is True
    assert s.workers == 1
    assert load_settings(None) == s


def test_replace_ignores_missing_overrides():
    s = Settings().replace(mds_budget=5, workers=None, log_level=None)
    assert s.mds_budget == 5
    assert s.workers == config.WORKERS
    assert s.log_level == config.LOG_LEVEL
    assert s.to_dict()["mds_budget"] == 5


def test_load_settings(tmp_path):
    path = tmp_path / "selfdual.yaml"
    path.write_text("mds_budget: 2000\nmds_sampling: false\nsample_seed: 0\nlog_level: info\n")
    s = load_settings(path)
    assert s.mds_budget == 2000
    assert s.mds_sampling is False
    assert s.sample_seed == 0
    assert s.log_level == "INFO"


def test_empty_file_gives_defaults(tmp_path):
    path = tmp_path / "empty.yaml"
    path.write_text("")
    assert load_settings(path) == Settings()


@pytest.mark.parametrize("text", [
    "mds_budjet: 10\n",
    "- 1\n- 2\n",
    "mds_budget: [1\n",
    "mds_budget: -3\n",
    "mds_budget: 0\n",
    "workers: true\n",
    "mds_sampling: 1\n",
    "oracle_budget: lots\n",
])
def test_load_settings_rejects(tmp_path, text):
    path = tmp_path / "bad.yaml"
    path.write_text(text)
    with pytest.raises(ConfigError):
        load_settings(path)


def test_missing_config_file(tmp_path):
    with pytest.raises(ConfigError):
        load_settings(tmp_path / "missing.yaml")


def test_setup_logging_sets_the_root_level():
    root = logging.getLogger()
    before = root.level
    try:
        setup_logging("debug")
        assert root.level == logging.DEBUG
        setup_logging("nonsense")
        assert root.level == logging.WARNING
    finally:
        root.setLevel(before)
