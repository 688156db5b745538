"""Logger configuration for revolve_fractals."""

import logging
import os
import threading
from datetime import datetime, timezone
from logging.handlers import RotatingFileHandler
from typing import Optional, Union

from concurrent_log_handler import ConcurrentRotatingFileHandler
from rich.console import Console
from rich.logging import RichHandler

LOGGER_NAME = "revolve_fractals"
MAX_BYTES = 1024 * 1024 * 10
BACKUP_COUNT = 10


class DateTimeLogFilter(logging.Filter):
    """Attach an ISO-like UTC timestamp to each log record."""

    # pylint: disable=too-few-public-methods

    def filter(self, record):
        """Populate the record with a millisecond-precision timestamp."""
        record.date_time = datetime.now(timezone.utc).strftime(
            "%Y-%m-%d %H:%M:%S.%f"
        )[:-3]
        return True


class ThreadLogFilter(logging.Filter):
    """Annotate log records with the current thread identifier."""

    # pylint: disable=too-few-public-methods

    def filter(self, record):
        """Store the worker thread id on the record."""
        record.thread = threading.get_ident()
        return True


class CustomLogFormatter(logging.Formatter):
    """Render log records in a single-line structured format."""

    def format(self, record):
        """Format with timestamp, process, thread, level and scope."""
        message = record.getMessage()
        return (
            f"[{record.date_time}][0x{record.process:04x}]"
            f"[0x{record.thread:04x}][{record.levelname:>8}]"
            f"[{record.module}::{record.funcName}] {message}"
        )


class CustomLogger:
    """One logger, one handler: a rotating file or Rich on stderr.

    Library modules log through children of ``revolve_fractals`` so a
    single handler here sees everything. Nothing goes to stdout.
    """

    def __init__(
        self,
        name: str = LOGGER_NAME,
        log_file: Optional[Union[str, os.PathLike]] = None,
        level: Union[int, str] = logging.INFO,
        concurrent: bool = True,
        console: Optional[Console] = None,
    ):
        self._console = console or Console(stderr=True)
        self._log = logging.getLogger(name=name)
        self._log.setLevel(level)
        self._log.propagate = False
        self._file: Optional[str] = None
        self.add_log_handler(log_file, concurrent)

    @staticmethod
    def create_file_handler(file, concurrent=True):
        """Construct a rotating handler."""
        if concurrent:
            return ConcurrentRotatingFileHandler(
                filename=file,
                mode="a",
                maxBytes=MAX_BYTES,
                backupCount=BACKUP_COUNT,
                encoding="utf-8",
                use_gzip=True,
            )
        return RotatingFileHandler(
            filename=file,
            mode="a",
            maxBytes=MAX_BYTES,
            backupCount=BACKUP_COUNT,
            encoding="utf-8",
        )

    def clear_log_handlers(self):
        """Remove and close every handler attached to the logger."""
        for handler in list(self._log.handlers):
            self._log.removeHandler(handler)
            handler.close()

    def add_log_handler(self, file, concurrent=True):
        """Replace the current handler with a file or Rich handler."""
        self.clear_log_handlers()

        handler: logging.Handler
        if file:
            self._file = os.path.abspath(os.fspath(file))
            handler = self.create_file_handler(self._file, concurrent)
        else:
            self._file = None
            handler = RichHandler(
                console=self._console,
                show_time=False,
                show_path=False,
            )

        handler.setFormatter(CustomLogFormatter())
        handler.addFilter(DateTimeLogFilter())
        handler.addFilter(ThreadLogFilter())
        self._log.addHandler(handler)

    @property
    def log_file(self) -> Optional[str]:
        """Absolute path of the log file, if logging to one."""
        return self._file

    @property
    def logger(self):
        """Return the configured logger instance."""
        return self._log
