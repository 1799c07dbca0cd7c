"""Exception hierarchy.

Every error carries the process exit code the CLI reports for it:
2 invalid input, 3 verification failure, 4 soundness violation.
"""

from typing import Any


class KissingError(Exception):
    exit_code = 1


# ---------------------------------------------------------------------------
# Invalid input (exit 2)
# ---------------------------------------------------------------------------


class InvalidInput(KissingError):
    exit_code = 2


class InvalidDimension(InvalidInput):
    pass


class OutOfRange(InvalidInput):
    pass


class UnknownCode(InvalidInput):
    pass


class InconsistentLengths(InvalidInput):
    pass


class OddWeightCodeword(InvalidInput):
    pass


class TooLarge(InvalidInput):
    pass


class SingletonCode(InvalidInput):
    pass


class UnsupportedConfiguration(InvalidInput):
    pass


class ConfigError(InvalidInput):
    pass


class PreconditionViolated(InvalidInput):
    pass


# ---------------------------------------------------------------------------
# Verification failures (exit 3)
# ---------------------------------------------------------------------------


class VerificationFailure(KissingError):
    exit_code = 3


class ConditionViolated(VerificationFailure):
    """A polynomial failed one of the Delsarte conditions A1/A2 or the Musin conditions B1/B2/B3.

    ``witness`` is the offending point ``t`` for sign conditions and the
    offending Gegenbauer index ``k`` for coefficient conditions.
    """

    def __init__(self, condition: str, witness: Any, value: Any = None, detail: str = ""):
        self.condition = condition
        self.witness = witness
        self.value = value
        msg = f"condition {condition} violated at {witness!r}"
        if value is not None:
            msg += f" (value {float(value):.6g})"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)


class KernelConstructionFailure(VerificationFailure):
    pass


class NoRealRoot(VerificationFailure):
    pass


class DomainError(VerificationFailure):
    pass


class PostVerificationFailed(VerificationFailure):
    pass


class InfeasibleCap(VerificationFailure):
    pass


class SelfCheckFailed(VerificationFailure):
    pass


class LpInfeasible(VerificationFailure):
    pass


class LpUnbounded(VerificationFailure):
    pass


class MaxIterationsExceeded(VerificationFailure):
    pass


class LpNumericalFailure(VerificationFailure):
    """No basis passed the optimality check, even under Bland's rule."""


# ---------------------------------------------------------------------------
# Soundness (exit 4)
# ---------------------------------------------------------------------------


class SoundnessViolation(KissingError):
    exit_code = 4
