"""Exception hierarchy shared by every module.

Each class carries the process exit code the CLI maps it to:
0 success, 2 parse, 3 algebra, 4 genericity, 5 decode ambiguity, 6 schema.
"""


class PlanecodeError(Exception):
    exit_code = 1


class PolyParseError(PlanecodeError):
    exit_code = 2


# -- algebra -----------------------------------------------------------------

class FieldMismatch(PlanecodeError):
    exit_code = 3


class DivisionByZero(PlanecodeError, ZeroDivisionError):
    exit_code = 3


class ReducibleModulus(PlanecodeError):
    """The working modulus is not irreducible; `factor` names a witness."""

    exit_code = 3

    def __init__(self, message, factor=None):
        super().__init__(message)
        self.factor = factor


class TrivialField(PlanecodeError):
    exit_code = 3


class NotARoot(PlanecodeError):
    exit_code = 3


class PrecisionExhausted(PlanecodeError):
    exit_code = 3


class DegenerateJoin(PlanecodeError):
    exit_code = 3


class DegenerateMeet(PlanecodeError):
    exit_code = 3


class InvalidMMap(PlanecodeError):
    exit_code = 3


class ParityViolation(PlanecodeError):
    exit_code = 3


# -- genericity / construction ------------------------------------------------

class GadgetDegenerate(PlanecodeError):
    exit_code = 4


class GenericityExhausted(PlanecodeError):
    exit_code = 4


class DuplicateLine(PlanecodeError):
    exit_code = 4


# -- decoding ------------------------------------------------------------------

class AmbiguousValences(PlanecodeError):
    exit_code = 5


class NotCollinear(PlanecodeError):
    exit_code = 5


class DegenerateQuadruple(PlanecodeError):
    exit_code = 5


class InfiniteCrossRatio(PlanecodeError):
    exit_code = 5


# -- files ---------------------------------------------------------------------

class SchemaError(PlanecodeError):
    exit_code = 6


class MissedIntersection(PlanecodeError):
    exit_code = 6
