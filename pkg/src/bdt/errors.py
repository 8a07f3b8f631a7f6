"""Exception hierarchy.

Two broad families matter to callers (and to the CLI exit codes):

* ``InvalidParameterError`` -- the caller passed something outside the
  domain of the operation (a probability above 1, a negative count, ...).
* ``DegenerateComputationError`` -- the inputs were individually valid but
  the requested quantity does not exist (zero evidence, infinite odds, ...).
"""


class BdtError(Exception):
    """Base class for every error raised by this package."""


class InvalidParameterError(BdtError, ValueError):
    pass


class InconsistentProbabilityError(InvalidParameterError):
    """A joint probability exceeds its marginal."""


class InvalidPartitionError(InvalidParameterError):
    """Branch priors do not form a probability distribution."""


class InvalidThetaError(InvalidParameterError):
    """A grid parameter value is outside an observation's domain."""


class DegenerateComputationError(BdtError, ArithmeticError):
    pass


class ZeroMarginalError(DegenerateComputationError):
    """Conditioning on an event of probability zero."""


class ZeroEvidenceError(DegenerateComputationError):
    """The evidence has total probability zero under every branch."""


class DegenerateTestError(DegenerateComputationError):
    """A diagnostic test whose predictive value has a zero denominator."""


class AllZeroLikelihoodError(DegenerateComputationError):
    """Every grid point assigns zero probability to the observed data."""


class ZeroLikelihoodError(DegenerateComputationError):
    """The reference hypothesis of a Bayes factor has zero likelihood."""


class InfiniteOddsError(DegenerateComputationError):
    """Odds requested for a certain event (p = 1)."""


class InfiniteEvidenceError(DegenerateComputationError):
    """A Bayes factor with a zero denominator and a positive numerator.

    ``evidence`` carries the typed :data:`bdt.evidence.INFINITE_EVIDENCE`
    value so callers can still classify it.
    """

    def __init__(self, message, evidence=None):
        super().__init__(message)
        self.evidence = evidence


class NonConvergenceError(BdtError, RuntimeError):
    pass


class CycleDetectedError(BdtError, RuntimeError):
    pass
