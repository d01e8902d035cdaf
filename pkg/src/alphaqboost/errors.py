"""Exception hierarchy shared across the package."""


class AlphaQBoostError(Exception):
    """Base class for all package errors."""


class SchemaError(AlphaQBoostError):
    """A column, key, or field is missing or unknown."""


class LabelError(AlphaQBoostError):
    """A label value cannot be mapped onto {-1, +1}."""


class ParseError(AlphaQBoostError):
    """A feature cell is not a finite number."""


class SplitError(AlphaQBoostError):
    """A requested split would leave a part empty or is malformed."""


class SizeError(AlphaQBoostError):
    """Requested sizes exceed what the data or solver supports."""


class DegenerateFeatureError(AlphaQBoostError):
    """Every candidate feature is constant; no stump split exists."""


class DimensionError(AlphaQBoostError):
    """Vector or assignment lengths do not match."""


class PoolError(AlphaQBoostError):
    """The candidate pool is empty or unusable."""


class DegenerateSelectionError(AlphaQBoostError):
    """Every probed alpha selects zero classifiers."""


class TrainingError(AlphaQBoostError):
    """Training could not produce a non-empty classifier."""


class ConfigError(AlphaQBoostError):
    """A run configuration is invalid."""
