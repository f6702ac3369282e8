"""Exception hierarchy. Every error that carries a counterexample exposes it as ``witness``."""


class OrdhullError(ValueError):
    def __init__(self, message="", witness=None):
        super().__init__(message)
        self.witness = witness


class AntisymmetryViolation(OrdhullError):
    pass


class NotOrderComplete(OrdhullError):
    pass


class NotAssociative(OrdhullError):
    pass


class NotAHomomorphism(OrdhullError):
    pass


class TargetNotMonoid(OrdhullError):
    pass


class EmptyGenerators(OrdhullError):
    pass


class GroupModeOnNonGroup(OrdhullError):
    pass


class NotGenerating(OrdhullError):
    pass


class Ax0Violation(OrdhullError):
    pass


class Ax1Violation(OrdhullError):
    pass


class Ax2Violation(OrdhullError):
    pass


class NotAGroup(OrdhullError):
    pass


class OrbitwiseNeedsGroups(OrdhullError):
    pass


class TargetNotGroup(OrdhullError):
    pass


class UnknownStatement(OrdhullError):
    pass


class BoundsTooLarge(OrdhullError):
    pass


class EnumerationTooLarge(OrdhullError):
    pass


class DomainEscape(OrdhullError):
    pass


class InstanceFileError(OrdhullError):
    """Malformed or inconsistent instance file."""
