"""Exception types shared across the package."""


class QhideError(Exception):
    """Base class for all package-specific errors."""


class DimensionTooLarge(QhideError):
    """Requested operator would exceed the dense-storage dimension guard."""


class NonConvergence(QhideError):
    """The eigensolver failed to converge on a (pathological) input."""


class ThetaOutOfRange(QhideError):
    """Mixing angle outside the closed interval [0, pi/3]."""


class DegenerateBranch(QhideError):
    """A coarse-grained branch has vanishing weight; its state is undefined."""


class ResidualTooLarge(QhideError):
    """A certificate operator fails its defining equation beyond tolerance."""


class HypothesisViolated(QhideError):
    """A decay bound was requested although one of its hypotheses fails.

    The message names the failed condition: ``pinv``, ``hlek``, ``fhho``,
    ``hhpt``, ``idsf`` or ``idss``.
    """


class NotPTInvariant(QhideError):
    """Exact PPT optimization requires a PT-invariant difference operator."""


class InvalidStrategy(QhideError):
    """Measurement effects fail positivity or completeness."""
