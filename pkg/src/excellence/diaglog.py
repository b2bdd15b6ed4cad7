"""Count compiler errors in a diagnostics log.

One matching line is one error; multi-line diagnostics count once via their
head line. The default pattern covers the two mainstream shapes,
``...: error: ...`` and ``... error C1234: ...``, and deliberately skips
``warning:`` and ``note:`` lines. Exotic compilers get a pattern override.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache

from .errors import MissingFileError, PatternError

DEFAULT_PATTERN_TEXT = r"\berror\b(?:\s+[A-Za-z]*\d+)?\s*:"


@dataclass(frozen=True)
class ErrorPattern:
    """A line pattern that marks a diagnostic as an error."""

    pattern_text: str = DEFAULT_PATTERN_TEXT
    case_sensitive: bool = False

    def compile(self) -> re.Pattern[str]:
        flags = 0 if self.case_sensitive else re.IGNORECASE
        try:
            return _compile(self.pattern_text, flags)
        except re.error as exc:
            pos = getattr(exc, "pos", None)
            where = f" at position {pos}" if pos is not None else ""
            raise PatternError(
                f"invalid error pattern{where}: {exc.msg}: {self.pattern_text!r}", pos
            ) from exc


DEFAULT_ERROR_PATTERN = ErrorPattern()


@lru_cache(maxsize=32)
def _compile(pattern_text: str, flags: int) -> re.Pattern[str]:
    return re.compile(pattern_text, flags)


@dataclass(frozen=True)
class ErrorReport:
    """Error count plus the 1-based numbers of the lines that matched."""

    log_name: str
    error_count: int
    matched_line_numbers: tuple[int, ...]


def _split_lines(text: str) -> list[str]:
    text = text.replace("\r\n", "\n")
    if not text:
        return []
    lines = text.split("\n")
    if lines[-1] == "":
        lines.pop()
    return lines


def count_errors(
    log_text: str,
    pattern: ErrorPattern = DEFAULT_ERROR_PATTERN,
    log_name: str = "",
) -> ErrorReport:
    """Count log lines matching ``pattern``. Line-local and deterministic."""
    regex = pattern.compile()
    matched = tuple(
        number
        for number, line in enumerate(_split_lines(log_text), start=1)
        if regex.search(line)
    )
    return ErrorReport(log_name=log_name, error_count=len(matched), matched_line_numbers=matched)


def count_errors_in_file(path: str, pattern: ErrorPattern = DEFAULT_ERROR_PATTERN) -> ErrorReport:
    """Read a log file and count its error lines.

    Logs are decoded as UTF-8 with replacement; compilers are not trusted to
    emit clean encodings.
    """
    try:
        with open(path, "rb") as f:
            raw = f.read()
    except OSError as exc:
        raise MissingFileError(f"cannot open log file: {path} ({exc.strerror})") from exc
    return count_errors(raw.decode("utf-8", errors="replace"), pattern, log_name=path)
