from umod.config import Config


def test_defaults_without_file(tmp_path):
    config = Config.from_path(str(tmp_path / "missing.yaml"))
    assert config["universal.max_layer"] == 64
    assert config["universal.max_elements"] == 200000
    assert config["algebra.max_upset_carrier"] == 24
    assert config["refute.max_size"] == 4
    assert config["cache.enabled"] is True
    assert config["cache.directory"] == "~/.cache/umod"
    assert config["logging"]["version"] == 1


def test_file_overrides_defaults(tmp_path):
    path = tmp_path / "config.yaml"
    path.write_text("universal:\n    max_layer: 3\ncache:\n    enabled: false\n")
    config = Config.from_path(str(path))
    assert config["universal.max_layer"] == 3
    assert config["universal.max_elements"] == 200000
    assert config["cache.enabled"] is False
    assert config["refute.max_size"] == 4


def test_file_is_not_rewritten(tmp_path):
    path = tmp_path / "config.yaml"
    path.write_text("refute:\n    max_size: 2\n")
    assert Config.from_path(str(path))["refute.max_size"] == 2
    assert path.read_text() == "refute:\n    max_size: 2\n"
