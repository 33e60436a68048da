"""Exception hierarchy.  Everything derives from :class:`HeckeRootError`."""


class HeckeRootError(Exception):
    pass


class ZeroInput(HeckeRootError, ValueError):
    pass


class EvenInput(HeckeRootError, ValueError):
    pass


class NotPrime(HeckeRootError, ValueError):
    pass


class NotCoprime(HeckeRootError, ValueError):
    pass


class EvenModulus(HeckeRootError, ValueError):
    pass


class EvenPlace(HeckeRootError, ValueError):
    pass


class NotFourthPowerFree(HeckeRootError, ValueError):
    pass


class FactorizationLimit(HeckeRootError, ArithmeticError):
    pass


class EffortBound(HeckeRootError, ArithmeticError):
    pass


class ReciprocityPreconditionViolated(HeckeRootError):
    pass


class TableMiss(HeckeRootError):
    pass


class BadReduction(HeckeRootError, ValueError):
    pass


class GoodReduction(HeckeRootError, ValueError):
    pass


class SearchExhausted(HeckeRootError):
    pass


class UnsupportedEvenBadReduction(HeckeRootError, NotImplementedError):
    """Root number at (1+i) requested for a curve with bad reduction there."""


class ShapeError(HeckeRootError, ValueError):
    pass
