"""
Structured logging for long-running computations.

Every toolkit component logs through a ComputationLogger so that log lines
share the same ``[component=... key=value] message`` shape, whether they
come from the bisection solver, a Monte-Carlo run or the certifier.
"""

import logging
import time
import uuid
from contextlib import contextmanager
from typing import Any, Dict, Iterator, Optional


class ComputationLogger:
    """Structured logger for one toolkit component."""

    def __init__(self, component: str):
        """
        Initialize logger for a specific component.

        Args:
            component: Component name (e.g., "pricing", "dual_cert")
        """
        self.component = component
        self.logger = logging.getLogger(f"sja_auction.{component}")

    def _format_message(self, message: str, **kwargs) -> str:
        """Format message with structured fields."""
        fields = [f"component={self.component}"]
        for key, value in kwargs.items():
            if value is not None:
                fields.append(f"{key}={value}")
        return f"[{' '.join(fields)}] {message}"

    def debug(self, message: str, **kwargs):
        """Log debug message with structured fields."""
        if self.logger.isEnabledFor(logging.DEBUG):
            self.logger.debug(self._format_message(message, **kwargs))

    def info(self, message: str, **kwargs):
        """Log info message with structured fields."""
        self.logger.info(self._format_message(message, **kwargs))

    def warning(self, message: str, **kwargs):
        """Log warning message with structured fields."""
        self.logger.warning(self._format_message(message, **kwargs))

    def error(self, message: str, error: Optional[Exception] = None, **kwargs):
        """Log error message with structured fields."""
        if error:
            kwargs["error_type"] = type(error).__name__
            kwargs["error_msg"] = str(error)
        self.logger.error(self._format_message(message, **kwargs))

    @contextmanager
    def track_operation(
        self, operation: str, run_id: Optional[str] = None, **fields: Any
    ) -> Iterator[Dict[str, Any]]:
        """
        Context manager to time an operation and log its outcome.

        Args:
            operation: The operation being run (e.g., "solve_prices", "certify")
            run_id: Optional run ID (generated if not provided)
            **fields: Extra structured fields attached to every line

        Yields:
            Dict with run metadata; callers may add result fields to it
        """
        if run_id is None:
            run_id = str(uuid.uuid4())[:8]

        start_time = time.perf_counter()
        self.debug(f"Starting {operation}", run_id=run_id, **fields)

        metadata: Dict[str, Any] = {"run_id": run_id, "operation": operation}
        try:
            yield metadata
            duration = time.perf_counter() - start_time
            extra = {
                k: v
                for k, v in metadata.items()
                if k not in ("run_id", "operation") and k not in fields
            }
            self.info(
                f"Completed {operation}",
                run_id=run_id,
                duration_ms=int(duration * 1000),
                **fields,
                **extra,
            )
        except Exception as e:
            duration = time.perf_counter() - start_time
            self.error(
                f"Failed {operation}",
                run_id=run_id,
                duration_ms=int(duration * 1000),
                error=e,
                **fields,
            )
            raise
