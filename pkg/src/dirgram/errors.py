"""Exception hierarchy shared across the package.

The CLI maps these onto exit codes: ConfigError -> 2, data errors
(CorpusError and subclasses) -> 3, NumericError -> 4.
"""


class DirgramError(Exception):
    """Base class for all errors raised by dirgram."""


class ConfigError(DirgramError):
    """Invalid configuration: bad flag values, missing files, malformed config."""


class CorpusError(DirgramError):
    """A corpus could not be read or is unusable for analysis."""


class EmptyCorpusError(CorpusError):
    """No sentences survive ingestion (empty file, or everything stripped)."""


class NumericError(DirgramError):
    """A computation produced no usable number (non-finite result, degenerate input)."""
