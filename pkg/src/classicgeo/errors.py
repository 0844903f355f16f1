"""Exception taxonomy shared by the kernel and the CLI.

Two families matter downstream: ValidationError for malformed input
(bad schemas, wrong arity, mixed fields, singular forms) and
PreconditionError for mathematically inadmissible input (isotropic
points, orthogonal pairs, euclidean-line lengths).  The CLI maps the
first family to exit code 2 and the second to exit code 3; ``code`` is
the machine-readable reason string surfaced in error payloads.
"""


class KernelError(Exception):
    code = "kernel-error"

    def __init__(self, message, code=None):
        super().__init__(message)
        if code is not None:
            self.code = code


class ValidationError(KernelError):
    code = "validation"


class PreconditionError(KernelError):
    code = "precondition"


class FieldMismatchError(ValidationError):
    code = "field-mismatch"


class SpaceMismatchError(ValidationError):
    code = "space-mismatch"


class SingularFormError(ValidationError):
    code = "singular-form"


class IsotropicPointError(PreconditionError):
    code = "isotropic-point"


class OrthogonalPointsError(PreconditionError):
    code = "orthogonal-points"


class CoincidentPointsError(PreconditionError):
    code = "coincident-points"


class EuclideanLineError(PreconditionError):
    code = "euclidean-line"


class TanceRangeError(PreconditionError):
    code = "tance-out-of-range"


class DegeneratePlaneError(PreconditionError):
    code = "degenerate-plane"


class CrossAbsoluteError(PreconditionError):
    code = "cross-absolute-vertical"


class ZeroVectorError(PreconditionError):
    code = "zero-vector"
