"""Exception types shared across the engine."""


class QCongError(Exception):
    """Base class for all engine errors."""


class DivisionByZeroPoly(QCongError, ZeroDivisionError):
    pass


class BothZero(QCongError, ValueError):
    pass


class ZeroInput(QCongError, ValueError):
    pass


class PoleAtOne(QCongError, ArithmeticError):
    pass


class WrongFamily(QCongError, ValueError):
    pass


class EvenModulus(QCongError, ValueError):
    pass


class NonInvertible(QCongError, ArithmeticError):
    pass


class InvalidParams(QCongError, ValueError):
    pass


class DenominatorNotCoprime(QCongError, ArithmeticError):
    """The congruence is undefined: the reduced denominator meets the modulus."""


class NonInvertibleInQuotient(QCongError, ArithmeticError):
    pass


class PrecisionLoss(QCongError, ArithmeticError):
    """Working precision in the quotient ring turned out to be insufficient."""


class EmptySelection(QCongError, ValueError):
    pass
