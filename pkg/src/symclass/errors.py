"""Exception hierarchy.

Every error raised on purpose by the package derives from
:class:`SymclassError`, which is itself a :class:`ValueError` so callers that
only care about "bad input" can catch that.
"""


class SymclassError(ValueError):
    pass


class UnsupportedDimension(SymclassError):
    pass


class OddDimension(SymclassError):
    pass


class WrongDimension(SymclassError):
    pass


class StructureViolation(SymclassError):
    """One or more of the structure equations fail.

    ``failures`` is a list of ``(equation, residual)`` pairs.
    """

    def __init__(self, failures):
        self.failures = list(failures)
        detail = "; ".join(f"{eq}: residual {res:.3g}" for eq, res in self.failures)
        super().__init__(f"structure equations violated ({detail})")


class NotInSpI(SymclassError):
    pass


class SingularR(SymclassError):
    pass


class InvariantViolation(SymclassError):
    pass


class DegenerateQuotient(SymclassError):
    pass


class InconsistentRegion(SymclassError):
    pass


class DegenerateLambda(SymclassError):
    pass


class ComplexEigenvalues(SymclassError):
    pass


class NonDiagonalizable(SymclassError):
    pass


class NotOnUnitCircle(SymclassError):
    pass


class NotAnEigenvalue(SymclassError):
    pass


class NotSymplectic(SymclassError):
    pass


class NonSymmetricA(SymclassError):
    pass


class NonConvergence(SymclassError):
    pass


class OnBifurcationLocus(SymclassError):
    pass


class SparseSampling(SymclassError):
    pass


class NonMonotoneParameters(SymclassError):
    pass
