"""Domain errors.

Every error carries a stable ``code`` string; the command line maps these to
exit status 1 and reports the code in JSON output.
"""


class WittError(Exception):
    code = "WittError"


class MembershipViolation(WittError):
    code = "MembershipViolation"


class DimensionMismatch(WittError):
    code = "DimensionMismatch"


class NotEmbeddable(WittError):
    code = "NotEmbeddable"


class SchemeMismatch(WittError):
    code = "SchemeMismatch"


class ZeroElement(WittError):
    code = "ZeroElement"


class EmptyComponent(WittError):
    code = "EmptyComponent"


class NotInZeroComponent(WittError):
    code = "NotInZeroComponent"


class NotAnnihilable(WittError):
    code = "NotAnnihilable"


class NoExponentialPart(WittError):
    code = "NoExponentialPart"


class EmptyGenerators(WittError):
    code = "EmptyGenerators"


class GeneratorOutsideBox(WittError):
    code = "GeneratorOutsideBox"


class OutOfTruncation(WittError):
    code = "OutOfTruncation"


class NotShapedLikeDerivation(WittError):
    code = "NotShapedLikeDerivation"


class InvalidQ(WittError):
    code = "InvalidQ"


class ExprSyntaxError(WittError):
    """Malformed expression text; ``pos`` is the 0-based character offset."""

    code = "SyntaxError"

    def __init__(self, message, pos=None):
        if pos is not None:
            message = f"{message} (at position {pos})"
        super().__init__(message)
        self.pos = pos
