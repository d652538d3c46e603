"""Exception hierarchy for sdfkit."""


class SdfError(ValueError):
    """Base class for every error raised by sdfkit."""


class EvenModulus(SdfError):
    pass


class NotSquarefree(SdfError):
    pass


class UnitModulus(SdfError):
    """Raised for m = 1, which has no odd prime factor to work with."""


class DuplicatePrime(SdfError):
    pass


class ModulusTooLarge(SdfError):
    pass


class TooLarge(SdfError):
    """A graph or exhaustive search would exceed its configured cap."""


class InvalidPart(SdfError):
    pass


class NonCoprime(SdfError):
    pass


class WrongResidueClass(SdfError):
    pass


class NoCollision(SdfError):
    pass


class DomainError(SdfError):
    pass


class SubsetBlowup(SdfError):
    pass


class NotCovering(SdfError):
    pass


class InvalidSet(SdfError):
    pass
