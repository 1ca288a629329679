"""Exception hierarchy shared by every module and mapped to CLI exit codes."""


class RetractLabError(Exception):
    """Base class for all library errors."""


class ParseError(RetractLabError):
    def __init__(self, message, position):
        super().__init__(f"{message} at position {position}")
        self.position = position


class PreconditionError(RetractLabError):
    """An operation was called outside its domain (CLI exit 3)."""


class ConstantInput(PreconditionError):
    pass


class ConstantGenerator(PreconditionError):
    pass


class DependentPair(PreconditionError):
    pass


class DegreeMismatch(PreconditionError):
    pass


class HypothesisViolation(PreconditionError):
    def __init__(self, hypothesis):
        super().__init__(f"hypothesis violated: {hypothesis}")
        self.hypothesis = hypothesis


class NotInRetract(PreconditionError):
    pass


class NonInjective(PreconditionError):
    pass


class OrderMismatch(PreconditionError):
    pass


class StepCapExceeded(RetractLabError):
    """Raised when a bounded search burns through RETRACTLAB_MAX_STEPS."""


class InvariantBreach(RetractLabError):
    """Something that must never happen did (CLI exit 4)."""
