"""Exception types shared across the package."""


class HardynormsError(Exception):
    """Base class for all package errors."""


class UnknownForm(HardynormsError):
    """A function spec names a form this package does not support."""


class InvalidParameter(HardynormsError):
    """A function spec carries a parameter outside its admissible range."""


class NonpositiveScale(HardynormsError):
    """Dilation factor must be strictly positive."""


class EmptyComponentList(HardynormsError):
    """Tensor product of zero factors is undefined."""


class NonConvergentQuadrature(HardynormsError):
    """Adaptive quadrature failed to meet the requested tolerance.

    Distinct from proven divergence, which is reported as +inf.
    """


class UnsupportedFormForExactTail(HardynormsError):
    """No exact tail-function route for this form (sampling fallback used)."""


class DivergentHead(HardynormsError):
    """The running integral from 0 diverges; averaged values are +inf."""


class InvalidWeight(HardynormsError):
    """Weight is not admissible (must be continuous, strictly increasing,
    vanish at 0 and grow to infinity)."""


class ExponentOrder(HardynormsError):
    """Exponent pair (p, q) is in the wrong regime for this functional."""


class ExponentDomain(HardynormsError):
    """Exponent quadruple violates the admissibility conditions."""

    def __init__(self, clause, message=""):
        self.clause = clause
        super().__init__(message or clause)


class NonpositiveKappa(HardynormsError):
    """Family parameter kappa must be > 0."""


class DeltaOutOfRange(HardynormsError):
    """delta must lie strictly between 0 and the total mass."""


class ZeroNorm(HardynormsError):
    """A ratio against a zero (or infinite) norm is undefined."""


class EmptyFamily(HardynormsError):
    """A supremum over an empty function family is undefined."""


class InfiniteAtGridPoint(HardynormsError):
    """Every candidate grid point gives an infinite norm."""


class ConfigParse(HardynormsError):
    """Experiment config is malformed."""


class UnknownCheck(HardynormsError):
    """Config names a check that does not exist."""


class IoFailure(HardynormsError):
    """Report could not be written."""
