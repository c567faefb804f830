"""Exception types shared across the package."""


class NumericFailure(RuntimeError):
    """An iterative numerical routine failed to reach its tolerance."""


class DegenerateCut(RuntimeError):
    """A spectral cut was requested inside a (near-)degenerate cluster."""


class ResourceLimit(RuntimeError):
    """A requested construction exceeds the configured dimension cap."""
