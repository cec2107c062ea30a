"""Exception hierarchy shared by all modules."""


class GradedPFError(Exception):
    """Base class; ``exit_code`` drives the command-line contract."""

    exit_code = 3


class InputError(GradedPFError):
    exit_code = 1


class InvalidRelation(InputError):
    pass


class CapExceeded(GradedPFError):
    exit_code = 2


class InfiniteDimensional(CapExceeded):
    pass


class OrderCapExceeded(CapExceeded):
    pass


class InvariantViolation(GradedPFError):
    exit_code = 3


class NotWeaklyBasic(InputError):
    pass


class NotSplitBasic(InputError):
    pass


class NotPF(InputError):
    pass


class NotSplit(InputError):
    pass


class BadBasis(InputError):
    pass


class FormError(InvariantViolation):
    pass


class HypothesisFailed(InputError):
    def __init__(self, hypothesis: str, witness=None):
        self.hypothesis = hypothesis
        self.witness = witness
        msg = f"hypothesis failed: {hypothesis}"
        if witness is not None:
            msg += f" (witness: {witness})"
        super().__init__(msg)


class ActionError(InputError):
    pass


class NotGraded(ActionError):
    pass


class IdealNotStable(ActionError):
    pass


class NotFreeOnVertices(ActionError):
    pass


class UnsupportedField(GradedPFError):
    exit_code = 3
