"""Exception hierarchy shared by every carrylab module."""


class CarrylabError(ValueError):
    """Base class for all errors raised by carrylab."""


class WrongCardinality(CarrylabError):
    pass


class NotCompleteResidueSystem(CarrylabError):
    pass


class MDoesNotDivideQ(CarrylabError):
    pass


class NotAUnit(CarrylabError):
    pass


class BadTarget(CarrylabError):
    pass


class DomainMismatch(CarrylabError):
    pass


class BadT(CarrylabError):
    pass


class ChowlaViolation(CarrylabError):
    """Neither set has the Chowla property, so Pollard's inequality is not guaranteed."""


class HypothesesNotMet(CarrylabError):
    pass


class NotOddPrime(CarrylabError):
    pass


class SpaceTooLarge(CarrylabError):
    pass


class UnknownTheorem(CarrylabError):
    pass


class ParseError(CarrylabError):
    pass


class ReportIntegrityError(CarrylabError):
    """A deserialized report contains a witness that does not re-validate."""
