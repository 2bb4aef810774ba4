class FairSelectError(Exception):
    """Base class for every error raised by fairselect."""


class ParameterError(FairSelectError, ValueError):
    """A parameter is non-finite, out of range or of the wrong shape."""


class SingularDesignError(FairSelectError):
    """A least squares system is rank deficient or too badly conditioned to solve."""


class MissingSubgroupError(FairSelectError):
    """A protected subgroup is empty where both subgroups are required."""


class NumericError(FairSelectError, ArithmeticError):
    """Overflow or non-finite values appeared during a numerical computation."""


class PopulationFormatError(FairSelectError):
    """A population file does not follow the ``x1,...,xp,z,y`` schema."""


class ConfigError(FairSelectError):
    """A run configuration file cannot be parsed."""


class ExperimentError(FairSelectError):
    """An experiment could not produce trustworthy results."""
