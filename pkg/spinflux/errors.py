"""Exception hierarchy shared by every spinflux subpackage."""


class SpinfluxError(Exception):
    """Base class for all domain errors raised by spinflux."""


class SymbolTableError(SpinfluxError, ValueError):
    """A polynomial refers to a symbol outside the global parameter table."""


class DegreeCapError(SpinfluxError, ArithmeticError):
    """A polynomial exceeded the configured total-degree cap."""


class DimensionError(SpinfluxError, ValueError):
    """Forms, matrices or representations of incompatible dimension met."""


class CalibrationError(SpinfluxError):
    """No candidate spinor frame reproduced the displayed endomorphisms."""


class UnknownClassError(SpinfluxError, ValueError):
    """A geometry class or theorem identifier is not in the catalog."""


class RelationError(SpinfluxError, ValueError):
    """A relation cannot be solved for the symbol it is meant to isolate."""


class WitnessError(SpinfluxError):
    """The sampler could not find a parameter point meeting the side
    conditions."""
