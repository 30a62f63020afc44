"""Exception types shared across the package."""


class FluxhoopError(Exception):
    """Base class for solver failures (as opposed to bad usage)."""


class KernelRangeError(FluxhoopError):
    """A special-function evaluation left the representable range."""


class SolverError(FluxhoopError):
    """A numerical stage failed (singular system, missing peak, bad fit)."""
