"""Exception classes; all derive from ValueError."""


class DimensionError(ValueError):
    """Array shapes are inconsistent with each other or with the season length."""


class ConfigError(ValueError):
    """A solver or task parameter is out of range."""


class ParseError(ValueError):
    """An input file could not be read."""
