"""Exception hierarchy shared by all spinrelax modules."""


class SpinRelaxError(Exception):
    """Base class for all errors raised by this package."""


class OutOfRange(SpinRelaxError):
    """Spin counts exceed the supported ceilings."""


class InvalidKind(SpinRelaxError):
    """Initial-state kind not handled by the called constructor."""


class DimensionMismatch(SpinRelaxError):
    """Vector or matrix dimensions are inconsistent."""


class BadTopology(SpinRelaxError):
    """Topology has no defined bond list for the requested size."""


class TooLarge(SpinRelaxError):
    """Dense-path guard: dimension exceeds the dense ceiling."""


class NotHermitian(SpinRelaxError):
    """Input matrix fails the Hermiticity check."""


class NoConvergence(SpinRelaxError):
    """Iterative solver exhausted its iteration cap."""


class BasisMismatch(SpinRelaxError):
    """Reduced density matrix is tagged with the wrong basis."""


class PlanMismatch(SpinRelaxError):
    """Chebyshev plan radius is smaller than the Hamiltonian bound."""


class BadArguments(SpinRelaxError):
    """Propagation plan parameters outside their valid ranges."""


class Underdetermined(SpinRelaxError):
    """Too few points in the fit window."""


class BadGrid(SpinRelaxError):
    """Time or energy grid unsuitable for the spectral transform."""


class ConfigError(SpinRelaxError):
    """Config file could not be parsed or validated."""
