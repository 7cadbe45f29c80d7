"""
Tests for JSON log lines and run ids
"""
import json
import logging

from structured_logger import StructuredLogger, generate_run_id


def test_log_lines_are_json_with_run_id(tmp_path) -> None:
    log_file = tmp_path / 'charkit.log'
    logger = StructuredLogger('INFO', str(log_file))
    run_id = generate_run_id()
    logger.set_run_id(run_id)
    logger.log_command('ehk', 0.12345, reports=1)
    logger.debug('hidden_below_level')
    for handler in logger.logger.handlers:
        handler.flush()
    lines = log_file.read_text(encoding='utf-8').splitlines()
    assert len(lines) == 1
    payload = json.loads(lines[0].split(' | ', 3)[3])
    assert payload['message'] == 'command_completed'
    assert payload['elapsed_seconds'] == 0.123
    assert payload['run_id'] == run_id
    assert payload['reports'] == 1


def test_error_logging_includes_context(tmp_path) -> None:
    log_file = tmp_path / 'charkit.log'
    logger = StructuredLogger('WARNING', str(log_file))
    logger.log_error(ValueError('bad ideal'), {'command': 'gb'})
    for handler in logger.logger.handlers:
        handler.flush()
    payload = json.loads(log_file.read_text(encoding='utf-8').splitlines()[0].split(' | ', 3)[3])
    assert payload['error_type'] == 'ValueError'
    assert payload['command'] == 'gb'
    assert logger.logger.level == logging.WARNING
