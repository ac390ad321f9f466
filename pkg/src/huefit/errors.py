"""Exception types shared across the package."""


class HuefitError(Exception):
    """Base class for all package errors."""


class ParseError(HuefitError):
    """Input file or payload could not be parsed."""


class ValidationError(HuefitError):
    """Parsed input violates a documented constraint."""


class InvalidConfig(HuefitError):
    """Configuration values are out of range or inconsistent."""


class FilterUnsatisfiable(HuefitError):
    """Rejection sampling found no color passing the filter within the attempt budget."""


class DegenerateVector(HuefitError):
    """A name vector with zero norm cannot be compared."""


class TooFewColors(HuefitError):
    """The operation needs at least two palette colors."""


class InvalidK(HuefitError):
    """Neighbor count k outside [1, n-1]."""


class SizeMismatch(HuefitError):
    """Palette size disagrees with the precomputed class-pair weights."""


class AllLocked(HuefitError):
    """No unlocked color is available to perturb."""


class RefinementFailed(HuefitError):
    """Minimum-distance refinement exhausted its attempt budget or locks are infeasible."""
