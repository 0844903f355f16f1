"""Arithmetic of the involutive division algebras R, C and H.

A single runtime-tagged Scalar type covers all three fields so that the
rest of the kernel (and the CLI, which mixes fields per request) can be
written once.  Internally every scalar also has a complex matrix
incarnation -- 1x1 for R and C, 2x2 for H via q = a+bi+cj+dk |->
[[a+bi, c+di], [-c~+di~, a-bi]] -- which turns quaternionic linear
algebra into ordinary complex matrix algebra downstream.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import FieldMismatchError, PreconditionError, ValidationError

R = "R"
C = "C"
H = "H"
FIELDS = (R, C, H)

#: dimension of the field as a real vector space
REAL_DIM = {R: 1, C: 2, H: 4}

#: size of the complex matrix block representing one scalar
BLOCK_DIM = {R: 1, C: 1, H: 2}


@dataclass(frozen=True)
class Scalar:
    """Element a + b*i + c*j + d*k of the field tagged by ``field``.

    Components unused by the field must be exactly zero (b, c, d for R;
    c, d for C).  Values are IEEE doubles throughout.
    """

    field: str
    a: float
    b: float = 0.0
    c: float = 0.0
    d: float = 0.0

    def __post_init__(self):
        if self.field not in FIELDS:
            raise ValidationError(f"unknown field tag {self.field!r}", code="bad-field")
        if self.field == R and (self.b != 0.0 or self.c != 0.0 or self.d != 0.0):
            raise ValidationError("R scalar with nonreal components", code="bad-scalar")
        if self.field == C and (self.c != 0.0 or self.d != 0.0):
            raise ValidationError("C scalar with j/k components", code="bad-scalar")

    # -- ring structure -------------------------------------------------

    def __add__(self, other):
        other = _coerce(self.field, other)
        return Scalar(self.field, self.a + other.a, self.b + other.b,
                      self.c + other.c, self.d + other.d)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-_coerce(self.field, other))

    def __rsub__(self, other):
        return _coerce(self.field, other) + (-self)

    def __neg__(self):
        return Scalar(self.field, -self.a, -self.b, -self.c, -self.d)

    def __mul__(self, other):
        return mul(self, _coerce(self.field, other))

    def __rmul__(self, other):
        return mul(_coerce(self.field, other), self)

    def __truediv__(self, other):
        return mul(self, inv(_coerce(self.field, other)))

    def __abs__(self):
        return math.sqrt(self.a * self.a + self.b * self.b
                         + self.c * self.c + self.d * self.d)

    # -- helpers ---------------------------------------------------------

    @property
    def coeffs(self):
        """Real components, truncated to the field: R->(a,), C->(a,b), H->(a,b,c,d)."""
        n = REAL_DIM[self.field]
        return (self.a, self.b, self.c, self.d)[:n]

    def is_close(self, other, tol=1e-12):
        other = _coerce(self.field, other)
        return abs(self - other) <= tol * max(1.0, abs(self), abs(other))

    def complex_value(self):
        if self.field == H:
            raise FieldMismatchError("quaternion has no canonical complex value")
        return complex(self.a, self.b)


def _coerce(field, value):
    """Build a Scalar of ``field`` from Scalar / real / complex / coefficient tuple."""
    if isinstance(value, Scalar):
        if value.field != field:
            raise FieldMismatchError(
                f"scalar of field {value.field} used in field {field}")
        return value
    if isinstance(value, (int, float, np.integer, np.floating)):
        return Scalar(field, float(value))
    if isinstance(value, (complex, np.complexfloating)):
        if field == R:
            if value.imag != 0.0:
                raise ValidationError("complex value in a real space", code="bad-scalar")
            return Scalar(R, float(value.real))
        return Scalar(field, float(value.real), float(value.imag))
    if isinstance(value, (list, tuple, np.ndarray)):
        comps = [float(x) for x in value]
        if not 1 <= len(comps) <= 4:
            raise ValidationError("scalar needs 1 to 4 real components", code="bad-scalar")
        comps += [0.0] * (4 - len(comps))
        return Scalar(field, *comps)
    raise ValidationError(f"cannot interpret {value!r} as a scalar", code="bad-scalar")


def as_scalar(field, value):
    """Public coercion used by constructors and the JSON layer."""
    return _coerce(field, value)


def zero(field):
    return Scalar(field, 0.0)


def one(field):
    return Scalar(field, 1.0)


def mul(x: Scalar, y: Scalar) -> Scalar:
    """Algebra product; order matters over H."""
    if x.field != y.field:
        raise FieldMismatchError(f"cannot multiply {x.field} by {y.field}")
    a1, b1, c1, d1 = x.a, x.b, x.c, x.d
    a2, b2, c2, d2 = y.a, y.b, y.c, y.d
    return Scalar(
        x.field,
        a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
        a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
        a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
        a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
    )


def conj(x: Scalar) -> Scalar:
    return Scalar(x.field, x.a, -x.b, -x.c, -x.d)


def re(x: Scalar) -> float:
    return x.a


def inv(x: Scalar) -> Scalar:
    n2 = x.a * x.a + x.b * x.b + x.c * x.c + x.d * x.d
    if n2 == 0.0:
        raise PreconditionError("inverse of zero scalar", code="division-by-zero")
    return Scalar(x.field, x.a / n2, -x.b / n2, -x.c / n2, -x.d / n2)


def arg(x: Scalar) -> float:
    """Principal argument in (-pi, pi]; negative reals map to +pi."""
    if x.field != C:
        raise FieldMismatchError("arg is defined for complex scalars only")
    if x.a == 0.0 and x.b == 0.0:
        raise PreconditionError("arg of zero", code="division-by-zero")
    b = 0.0 if x.b == 0.0 else x.b  # fold -0.0 onto the +pi branch
    return math.atan2(b, x.a)


def principal_arg(z: complex) -> float:
    """Same branch convention as arg(), for raw complex values."""
    if z == 0:
        raise PreconditionError("arg of zero", code="division-by-zero")
    im = 0.0 if z.imag == 0.0 else z.imag
    return math.atan2(im, z.real)


# -- complex block incarnation -------------------------------------------

_OMEGA = np.array([[0.0, 1.0], [-1.0, 0.0]], dtype=complex)


def to_block(x: Scalar) -> np.ndarray:
    """Complex matrix block of the scalar (1x1 for R/C, 2x2 for H)."""
    if x.field == H:
        alpha = complex(x.a, x.b)
        beta = complex(x.c, x.d)
        return np.array([[alpha, beta], [-beta.conjugate(), alpha.conjugate()]])
    return np.array([[complex(x.a, x.b)]])


def from_block(field, block) -> Scalar:
    block = np.asarray(block, dtype=complex)
    if field == H:
        alpha = block[0, 0]
        beta = block[0, 1]
        return Scalar(H, float(alpha.real), float(alpha.imag),
                      float(beta.real), float(beta.imag))
    z = block[0, 0]
    if field == R:
        return Scalar(R, float(z.real))
    return Scalar(C, float(z.real), float(z.imag))


def unit_blocks(field):
    """Blocks of the real basis 1, i, j, k of the field (truncated)."""
    units = [Scalar(field, 1.0)]
    if field in (C, H):
        units.append(Scalar(field, 0.0, 1.0))
    if field == H:
        units.append(Scalar(field, 0.0, 0.0, 1.0))
        units.append(Scalar(field, 0.0, 0.0, 0.0, 1.0))
    return [to_block(u) for u in units]
