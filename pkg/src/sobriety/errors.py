"""Exception hierarchy shared by the library and the CLI."""


class SobrietyError(Exception):
    pass


class CycleError(SobrietyError):
    """The reflexive-transitive closure of the generators is not antisymmetric."""

    def __init__(self, a, b):
        super().__init__(f"order is not antisymmetric: {a} <= {b} and {b} <= {a}")
        self.pair = (a, b)


class DuplicateLabel(SobrietyError):
    pass


class UnknownLabel(SobrietyError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


class NotT0(SobrietyError):
    pass


class CarrierMismatch(SobrietyError):
    pass


class NotALattice(SobrietyError):
    pass


class TooManyOpens(SobrietyError):
    pass


class BoundTooSmall(SobrietyError):
    pass


class PreconditionError(SobrietyError, ValueError):
    pass


class InvalidXRep(SobrietyError, ValueError):
    pass


class FamilyNotInA(SobrietyError):
    pass


class FormatError(SobrietyError, ValueError):
    """Malformed poset file or element string."""
