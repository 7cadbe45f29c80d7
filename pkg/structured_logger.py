"""
JSON log lines on stderr, tagged with the run id of the CLI invocation
"""
import json
import logging
import sys
import threading
import uuid
from datetime import datetime
from typing import Any, Dict, Optional

LINE_FORMAT = '%(asctime)s | %(levelname)s | %(name)s | %(message)s'


class StructuredLogger:
    """Wraps the 'charkit' logger; every message body is a JSON object"""

    def __init__(self, log_level: str = "WARNING", log_file: Optional[str] = None):
        """
        Args:
            log_level: DEBUG, INFO, WARNING or ERROR
            log_file: extra destination next to stderr (stdout carries reports)
        """
        self.logger = logging.getLogger("charkit")
        self.logger.setLevel(getattr(logging, str(log_level).upper(), logging.WARNING))
        self.logger.propagate = False

        for handler in list(self.logger.handlers):
            self.logger.removeHandler(handler)
            handler.close()

        formatter = logging.Formatter(LINE_FORMAT, datefmt='%Y-%m-%d %H:%M:%S')
        handlers = [logging.StreamHandler(sys.stderr)]
        if log_file:
            handlers.append(logging.FileHandler(log_file, encoding='utf-8'))
        for handler in handlers:
            handler.setFormatter(formatter)
            self.logger.addHandler(handler)

        self._local = threading.local()

    def set_run_id(self, run_id: str) -> None:
        self._local.run_id = run_id

    def get_run_id(self) -> Optional[str]:
        return getattr(self._local, 'run_id', None)

    def _body(self, level: str, message: str, fields: Dict[str, Any]) -> str:
        body = {'timestamp': datetime.now().isoformat(), 'level': level, 'message': message, **fields}
        run_id = self.get_run_id()
        if run_id:
            body['run_id'] = run_id
        return json.dumps(body, default=str)

    def _log(self, level: int, message: str, **fields) -> None:
        # engines log from inner loops; build the JSON only when it will be written
        if self.logger.isEnabledFor(level):
            self.logger.log(level, self._body(logging.getLevelName(level), message, fields))

    def debug(self, message: str, **fields) -> None:
        self._log(logging.DEBUG, message, **fields)

    def info(self, message: str, **fields) -> None:
        self._log(logging.INFO, message, **fields)

    def warning(self, message: str, **fields) -> None:
        self._log(logging.WARNING, message, **fields)

    def error(self, message: str, **fields) -> None:
        self._log(logging.ERROR, message, **fields)

    def log_command(self, command: str, elapsed_seconds: float, **fields) -> None:
        """One line per finished CLI command"""
        self.info("command_completed", command=command,
                  elapsed_seconds=round(elapsed_seconds, 3), **fields)

    def log_error(self, error: Exception, context: Dict[str, Any]) -> None:
        self.error("error_occurred", error_type=type(error).__name__,
                   error_message=str(error), **context)


_logger_instance: Optional[StructuredLogger] = None


def get_logger() -> StructuredLogger:
    """Process-wide logger, levelled from config (logging.level / CHARKIT_LOG_LEVEL)"""
    global _logger_instance
    if _logger_instance is None:
        from config_loader import get_config
        _logger_instance = StructuredLogger(get_config().log_level)
    return _logger_instance


def generate_run_id() -> str:
    return str(uuid.uuid4())
