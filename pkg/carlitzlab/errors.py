"""Exception hierarchy for carlitzlab.

Input problems derive from ``ValueError`` as well, so callers that only
guard against bad input keep working with a plain ``except ValueError``.
"""


class CarlitzlabError(Exception):
    pass


class SpecMismatch(CarlitzlabError, ValueError):
    """Operands live over different finite fields."""


class DivByZero(CarlitzlabError, ZeroDivisionError):
    pass


class TooLarge(CarlitzlabError):
    """An enumeration would exceed its configured cap."""

    def __init__(self, what, size, cap_key, cap):
        self.what = what
        self.size = size
        self.cap_key = cap_key
        self.cap = cap
        super().__init__(
            f"{what} has size {size}, above the cap {cap_key}={cap} "
            f"(raise it with CARLITZLAB_CAPS={cap_key}=N)."
        )


class ZeroInput(CarlitzlabError, ValueError):
    pass


class ModulusMismatch(CarlitzlabError):
    pass


class NotAMultiple(CarlitzlabError):
    pass


class FieldMismatch(CarlitzlabError):
    pass


class NotNested(CarlitzlabError):
    pass


class HypothesisNotMet(CarlitzlabError):
    pass


class NotInL(CarlitzlabError):
    pass


class NotCoprime(CarlitzlabError):
    pass


class WrongOrders(CarlitzlabError):
    pass


class DegreeNotOne(CarlitzlabError):
    pass


class ParseError(CarlitzlabError, ValueError):
    pass


class ConfigError(CarlitzlabError, ValueError):
    pass


class InvariantViolation(CarlitzlabError):
    """An internal self-check failed; the result cannot be trusted."""


def check_cap(what, size, caps, cap_key):
    cap = getattr(caps, cap_key)
    if size > cap:
        raise TooLarge(what, size, cap_key, cap)
