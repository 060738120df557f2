"""Exception types. Every error carries a short machine-readable ``code``."""


class CliffordError(Exception):
    code = "ERROR"


class DescriptorMismatch(CliffordError):
    code = "DESCRIPTOR_MISMATCH"


class NotUnital(CliffordError):
    code = "NOT_UNITAL"


class NotSemisimple(CliffordError):
    code = "NOT_SEMISIMPLE"


class NotClassifiable(CliffordError):
    """Semisimple, but not of the shape M(n,D) or M(n,D) + M(n,D)."""
    code = "NOT_CLASSIFIABLE"


class NotClosed(CliffordError):
    code = "NOT_CLOSED"


class NotInvolution(CliffordError):
    code = "NOT_INVOLUTION"


class NotCentral(CliffordError):
    code = "NOT_CENTRAL"


class NonConvergence(CliffordError):
    code = "NONCONVERGENCE"


class ParseError(CliffordError):
    code = "SYNTAX"

    def __init__(self, message, position, expected=()):
        self.position = position
        self.expected = tuple(sorted(set(expected)))
        detail = f"{message} at offset {position}"
        if self.expected:
            detail += " (expected one of: " + ", ".join(self.expected) + ")"
        super().__init__(detail)


class UndefinedSymbol(CliffordError):
    code = "UNDEFINED_SYMBOL"


class RingMismatch(CliffordError):
    code = "RING_MISMATCH"


class DivisionByZero(CliffordError):
    code = "DIVISION_BY_ZERO"
