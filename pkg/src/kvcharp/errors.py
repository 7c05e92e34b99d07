"""Exception types raised across the package."""


class KVCharPError(Exception):
    pass


class NotPrimeError(KVCharPError, ValueError):
    pass


class NegativeValuation(KVCharPError, ArithmeticError):
    """A rational with negative p-adic valuation has no image mod p."""


class FieldMismatch(KVCharPError, TypeError):
    pass


class AlphabetMismatch(KVCharPError, TypeError):
    pass


class ConstantTermViolation(KVCharPError, ValueError):
    pass


class NonzeroConstantTerm(KVCharPError, ValueError):
    pass


class NotLieElement(KVCharPError, ValueError):
    """Triangular elimination against the Lyndon basis left a remainder."""

    def __init__(self, message, remainder=None):
        super().__init__(message)
        self.remainder = remainder


class ValuationViolation(KVCharPError, ArithmeticError):
    """A coefficient has a pole of order two or more at p where at most one is allowed."""


class DegreeMismatch(KVCharPError, ValueError):
    pass


class ParseError(KVCharPError, ValueError):
    pass
