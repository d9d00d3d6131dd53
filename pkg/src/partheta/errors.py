"""Exception hierarchy shared by all modules."""


class ThetaError(Exception):
    """Base class for numerical failures."""


class DomainError(ThetaError, ValueError):
    pass


class NoConvergence(ThetaError):
    """Series tail criterion not met within the term budget."""


class ScanIncomplete(ThetaError):
    """Adjacent scan points both sit below the evaluation error bound."""


class NewtonStall(ThetaError):
    pass


class LabelConflict(ThetaError):
    pass


class InsufficientZeros(ThetaError):
    pass


class Diverged(ThetaError):
    pass


class SingularJacobian(ThetaError):
    """Jacobian of the double-zero system degenerates (multiplicity > 2 suspected)."""


class ContinuationBreak(ThetaError):
    def __init__(self, message, k=None, diagnostics=None):
        super().__init__(message)
        self.k = k
        self.diagnostics = diagnostics or {}


class TooFewEntries(ThetaError):
    pass


class ContourTooClose(ThetaError):
    pass


class NonIntegerWinding(ThetaError):
    pass
