"""Exception types raised across critlab."""


class CritlabError(Exception):
    """Base class for all critlab errors."""


class JacobiViolation(CritlabError):
    def __init__(self, defect, quadruple):
        self.defect = defect
        self.quadruple = quadruple
        i, j, k, m = (q + 1 for q in quadruple)
        super().__init__(
            f"Jacobi identity fails: defect {defect:.3e} at (i,j,k,m)=({i},{j},{k},{m})")


class IndexOutOfRange(CritlabError):
    pass


class DuplicateBracket(CritlabError):
    pass


class NonPositiveScale(CritlabError):
    pass


class SingularMap(CritlabError):
    pass


class NotOrthogonal(CritlabError):
    pass


class BadFactorDimension(CritlabError):
    pass


class EqualIndices(CritlabError):
    pass


class ZeroScalarCurvature(CritlabError):
    pass


class WrongDimension(CritlabError):
    pass


class OutOfDomain(CritlabError):
    pass


class NoRoot(CritlabError):
    pass


class UnknownFamily(CritlabError):
    pass


class NotSymbolicallyVerifiable(CritlabError):
    pass


class ModeMismatch(CritlabError):
    pass


class SpecParseError(CritlabError):
    """Malformed metric-spec file or polynomial text."""
