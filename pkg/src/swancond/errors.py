"""Exception types raised across the package."""


class ConductorError(Exception):
    """Base class. ``code`` is the machine-readable tag used by the CLI."""

    code = "error"
    internal = False


class InputError(ConductorError, ValueError):
    code = "input_error"


class DivisionByZero(ConductorError, ZeroDivisionError):
    code = "division_by_zero"


class NotAPthPower(InputError):
    code = "not_a_pth_power"


class BoundExceeded(InputError):
    code = "bound_exceeded"


class LengthMismatch(InputError):
    code = "length_mismatch"


class NotDivisible(InputError):
    code = "not_divisible"


class NotClosed(InputError):
    code = "not_closed"


class UnramifiedCharacter(InputError):
    code = "unramified_character"


class NotPure(InputError):
    code = "not_pure"


class ZeroElement(InputError):
    code = "zero_element"


class DegenerateOperator(InputError):
    code = "degenerate_operator"


class SmallRadiusConditionFails(InputError):
    code = "small_radius_condition_fails"


class HypothesisViolated(InputError):
    code = "hypothesis_violated"


class InexactLeading(InputError):
    code = "inexact_leading"


class ParseError(InputError):
    code = "parse_error"


class IntegralityFailure(ConductorError):
    """An integrality guarantee failed; this always indicates a bug."""

    code = "integrality_failure"
    internal = True


class InvariantFailure(ConductorError):
    code = "invariant_failure"
    internal = True
