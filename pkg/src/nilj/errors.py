"""Exception hierarchy shared by all nilj modules."""


class NiljError(Exception):
    """Base class for all library errors."""


class FieldMismatchError(NiljError):
    """Operands live over different scalar fields."""


class DimensionMismatchError(NiljError):
    """Vector/matrix/subspace shapes are incompatible."""


class SingularMatrixError(NiljError):
    """An invertible matrix was required."""


class RootNotInFieldError(NiljError):
    """A required square/higher root does not exist in the field.

    ``radicand`` records the offending field element.
    """

    def __init__(self, radicand, degree: int = 2):
        self.radicand = radicand
        self.degree = degree
        super().__init__(f"no {degree}-th root of {radicand!r} in the field")


class CaseNotCoveredError(NiljError):
    """The input falls outside the documented case split."""


class InvalidCocycleError(NiljError):
    """A claimed cocycle fails the cocycle-space membership check."""


class NotAnExtensionError(NiljError):
    """The algebra cannot be written as a central extension as requested."""


class FieldReductionError(NiljError):
    """Rational structure constants cannot be reduced modulo the prime."""


class SearchBudgetExceededError(NiljError):
    """An exhaustive enumeration would exceed its candidate budget."""


class UnknownAlgebraError(NiljError):
    """Catalog lookup failed."""


class InadmissibleParameterError(NiljError):
    """A parameter binding violates the entry's admissibility constraints."""


class DocumentError(NiljError):
    """An algebra document is malformed."""
