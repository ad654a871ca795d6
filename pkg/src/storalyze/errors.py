"""Exception hierarchy shared by all storalyze modules.

Two branches matter for the command line interface:

* :class:`ValidationError` -- the input data or arguments are unusable
  (CLI exit code 2).
* :class:`UndefinedResult` -- the input is well formed but the requested
  quantity has no defined value, e.g. a levelised cost with zero
  discharged energy (CLI exit code 3).
"""


class StoralyzeError(Exception):
    """Base class for every error raised by this package."""


class ValidationError(StoralyzeError):
    """Input data or arguments failed validation."""


class UndefinedResult(StoralyzeError):
    """The computation has no defined result for this input."""


# --- ingest -----------------------------------------------------------

class MissingColumn(ValidationError):
    """Requested column (or series key) is absent or not numeric."""


class NonUniformSpacing(ValidationError):
    """Timestamps are not strictly hourly."""


class TooManyGaps(ValidationError):
    """A run of missing values is too long (or at a boundary) to interpolate."""


class NonFiniteValue(ValidationError):
    """An infinite value was found where finite data is required."""


class UnknownTechnology(ValidationError):
    """Technology name not present in the cost table."""


class NegativeCost(ValidationError):
    """A capital cost entry is negative."""


# --- cycle detection / series alignment -------------------------------

class MisalignedSeries(ValidationError):
    """Two series that must share an hourly index have different lengths."""


# --- spectral ---------------------------------------------------------

class TooShort(ValidationError):
    """Series has fewer samples than the transform requires."""


class NonPositiveScale(ValidationError):
    """A wavelet scale (or threshold) must be positive."""


# --- economics --------------------------------------------------------

class InvalidLifetime(ValidationError):
    """Lifetime must be an integer number of years >= 1."""


class ZeroDischarge(UndefinedResult):
    """Benefit per discharged MWh is undefined when nothing was discharged."""


class NoCycles(UndefinedResult):
    """Cycle-averaged statistics need at least one complete priced cycle."""


class EmptyInput(ValidationError):
    """An aggregate over an empty collection was requested."""


# --- hydrogen pathways ------------------------------------------------

class ConservationViolation(ValidationError):
    """Hourly hydrogen flows do not balance."""


class ZeroGasUse(ValidationError):
    """Cannot split by gas use when both gas sinks are zero."""


# --- emission pathway -------------------------------------------------

class OutOfDomain(ValidationError):
    """Argument lies outside the function's domain."""


class BudgetOutOfRange(UndefinedResult):
    """No admissible trajectory reaches the requested carbon budget."""


class NonIdentifiable(UndefinedResult):
    """Every shape parameter satisfies the constraint; none is preferred."""
