"""
Tests for YAML configuration and environment overrides
"""
from config_loader import Config, get_config, reset_config


def test_defaults_when_file_is_missing(tmp_path) -> None:
    config = Config(str(tmp_path / 'absent.yaml'))
    assert config.max_gb_steps == 0
    assert config.output_format == 'csv'
    assert config.search_bound('kmax') == 6
    assert config.cache_enabled is True


def test_file_values_and_dot_paths(tmp_path) -> None:
    path = tmp_path / 'config.yaml'
    path.write_text("engine:\n  max_gb_steps: 50\nsearch:\n  tmax: 9\n", encoding='utf-8')
    config = Config(str(path))
    assert config.max_gb_steps == 50
    assert config.search_bound('tmax') == 9
    assert config.search_bound('emax') == 2
    assert config.get('engine.missing.deeper', 'fallback') == 'fallback'
    # sections absent from the file keep their defaults
    assert config.get('engine.max_saturation_steps') == 64
    assert config.get('output.format') == 'csv'


def test_environment_takes_precedence(tmp_path, monkeypatch) -> None:
    path = tmp_path / 'config.yaml'
    path.write_text("engine:\n  max_gb_steps: 50\n", encoding='utf-8')
    monkeypatch.setenv('CHARKIT_MAX_GB_STEPS', '7')
    monkeypatch.setenv('CHARKIT_CACHE', 'false')
    monkeypatch.setenv('CHARKIT_FORMAT', 'json')
    config = Config(str(path))
    assert config.max_gb_steps == 7
    assert config.cache_enabled is False
    assert config.output_format == 'json'


def test_broken_yaml_falls_back_to_defaults(tmp_path) -> None:
    path = tmp_path / 'config.yaml'
    path.write_text("engine: [unclosed\n", encoding='utf-8')
    assert Config(str(path)).max_saturation_steps == 64


def test_singleton_can_be_replaced(tmp_path) -> None:
    first = get_config()
    assert get_config() is first
    replacement = Config(str(tmp_path / 'absent.yaml'))
    reset_config(replacement)
    assert get_config() is replacement
