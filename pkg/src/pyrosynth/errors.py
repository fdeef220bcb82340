"""Exception types shared across the package."""


class ParameterError(ValueError):
    """A value violates an operation's domain (out of range, wrong shape, ...)."""


class WavFormatError(ValueError):
    """A WAV file could not be parsed or uses an unsupported encoding."""


class SilentAudioError(ValueError):
    """An input clip contains no sample above the onset threshold."""


class UndefinedCorrelationError(ValueError):
    """Rank correlation is undefined (constant input sequence)."""
