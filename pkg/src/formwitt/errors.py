"""Exception hierarchy shared by every formwitt module."""


class FormwittError(Exception):
    """Base class for all library errors."""


class MixedRings(FormwittError):
    pass


class NonMonicDivisor(FormwittError):
    pass


class ZeroPolynomial(FormwittError):
    pass


class DegreeBoundExceeded(FormwittError):
    """Factorization over Q beyond the configured degree bound."""


class Unsupported(FormwittError):
    """The ring (or ring tower) is outside what the residue machinery handles."""


class NotInvertible(FormwittError):
    pass


class CountMismatch(FormwittError):
    pass


class DimensionMismatch(FormwittError):
    pass


class UnsupportedHom(FormwittError):
    pass


class ParseError(FormwittError):
    def __init__(self, message, text="", position=None):
        if position is not None:
            message = f"{message} at position {position}: {text!r}"
        super().__init__(message)
        self.text = text
        self.position = position


# witt
class NotTotallyIsotropic(FormwittError):
    pass


class NotComplemented(FormwittError):
    pass


class UndecidableAnisotropy(FormwittError):
    """A search over an infinite ring ran out of budget without a certificate."""


# clifford
class Singular(FormwittError):
    pass


class EvenDegree(FormwittError):
    pass


class DegreeMismatch(FormwittError):
    pass


# descent
class RankTooSmall(FormwittError):
    pass


class NotIsotropic(FormwittError):
    pass


class DegreeOne(FormwittError):
    pass


class Inconsistent(FormwittError):
    """An input witness fails verification, or a certificate contradicts it."""


class LeadingCoeffNotUnit(FormwittError):
    """Internal-consistency failure in the semilocal degree-lowering step."""


class NonConstantDegree(FormwittError):
    pass


class UnsupportedEtalePresentation(FormwittError):
    pass


class SingularAugmented(FormwittError):
    pass


# lifting
class SingularPoint(FormwittError):
    pass


class NotIsotropicInput(FormwittError):
    pass


class RankMismatch(FormwittError):
    pass


class NotTransverse(FormwittError):
    pass
