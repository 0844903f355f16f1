"""Ambient spaces: a right K-vector space with a hermitian form.

Vectors are columns, matrices act on the left, scalars act on the
right; this makes matrix maps K-linear even over H.  Internally a
vector over K^n is a complex (n*m, m) matrix of scalar blocks (m = 1
for R/C, m = 2 for H) and a K-linear map is its (n*m, n*m) block
matrix, so products, adjoints and traces reduce to numpy calls.  The
form is evaluated as conj(v_i) * J[i][j] * w_j with this exact
bracketing, which the block representation realizes verbatim.
"""

from __future__ import annotations

import numpy as np

from . import scalars
from .errors import (SingularFormError, SpaceMismatchError, ValidationError)
from .scalars import BLOCK_DIM, REAL_DIM, Scalar, as_scalar, from_block, to_block


class ClassicSpace:
    """Dimension, field tag, hermitian form matrix J and metric sign.

    ``iso_tol`` is the relative tolerance deciding isotropy and the other
    near-degenerate predicates; the auxiliary Euclidean norm of the
    representatives sets the scale.
    """

    def __init__(self, field, j_block, metric_sign=1, iso_tol=1e-9, signature=None):
        if field not in scalars.FIELDS:
            raise ValidationError(f"unknown field tag {field!r}", code="bad-field")
        if metric_sign not in (1, -1):
            raise ValidationError("metric_sign must be +1 or -1", code="bad-sign")
        if not (0.0 < iso_tol < 1.0):
            raise ValidationError("iso_tol must lie in (0, 1)", code="bad-tolerance")
        self.field = field
        self.m = BLOCK_DIM[field]
        self.real_dim = REAL_DIM[field]
        j = np.array(j_block, dtype=complex)
        if j.ndim != 2 or j.shape[0] != j.shape[1] or j.shape[0] % self.m:
            raise ValidationError("form matrix has wrong shape", code="bad-form")
        self.dim = j.shape[0] // self.m
        if self.dim < 1:
            raise ValidationError("space dimension must be positive", code="bad-form")
        scale = np.linalg.norm(j, 2)
        if scale == 0.0 or np.linalg.norm(j - j.conj().T, 2) > 1e-12 * scale:
            raise ValidationError("form matrix is not hermitian", code="form-not-hermitian")
        svals = np.linalg.svd(j, compute_uv=False)
        if svals[-1] <= 1e-12 * svals[0]:
            raise SingularFormError("hermitian form is degenerate")
        self.j = j
        self.j_inv = np.linalg.inv(j)
        self.j_norm = float(svals[0])
        self.metric_sign = int(metric_sign)
        self.iso_tol = float(iso_tol)
        self.signature = tuple(signature) if signature is not None else None

    @classmethod
    def from_signature(cls, field, signs, metric_sign=1, iso_tol=1e-9):
        """Diagonal form with entries +-1, the documented fast path."""
        signs = tuple(int(s) for s in signs)
        if not signs or any(s not in (1, -1) for s in signs):
            raise ValidationError("signature entries must be +-1", code="bad-form")
        m = BLOCK_DIM[field]
        diag = np.concatenate([[float(s)] * m for s in signs])
        return cls(field, np.diag(diag).astype(complex), metric_sign, iso_tol, signs)

    @classmethod
    def from_form(cls, field, entries, metric_sign=1, iso_tol=1e-9):
        """General hermitian J given as a nested list of scalar-like entries."""
        n = len(entries)
        if any(len(row) != n for row in entries):
            raise ValidationError("form matrix must be square", code="bad-form")
        m = BLOCK_DIM[field]
        j = np.zeros((n * m, n * m), dtype=complex)
        for i, row in enumerate(entries):
            for k, value in enumerate(row):
                j[i * m:(i + 1) * m, k * m:(k + 1) * m] = to_block(as_scalar(field, value))
        return cls(field, j, metric_sign, iso_tol)

    # -- constructors for the carried objects -----------------------------

    def vector(self, entries) -> "Vector":
        if len(entries) != self.dim:
            raise ValidationError(
                f"vector needs {self.dim} entries, got {len(entries)}", code="bad-arity")
        m = self.m
        data = np.zeros((self.dim * m, m), dtype=complex)
        for i, value in enumerate(entries):
            data[i * m:(i + 1) * m, :] = to_block(as_scalar(self.field, value))
        return Vector(self, data)

    def basis_vector(self, i) -> "Vector":
        data = np.zeros((self.dim * self.m, self.m), dtype=complex)
        data[i * self.m:(i + 1) * self.m, :] = np.eye(self.m)
        return Vector(self, data)

    def linear_map(self, rows) -> "LinearMap":
        if len(rows) != self.dim or any(len(r) != self.dim for r in rows):
            raise ValidationError("map matrix has wrong shape", code="bad-arity")
        m = self.m
        data = np.zeros((self.dim * m, self.dim * m), dtype=complex)
        for i, row in enumerate(rows):
            for k, value in enumerate(row):
                data[i * m:(i + 1) * m, k * m:(k + 1) * m] = to_block(as_scalar(self.field, value))
        return LinearMap(self, data)

    def identity_map(self) -> "LinearMap":
        return LinearMap(self, np.eye(self.dim * self.m, dtype=complex))

    def zero_map(self) -> "LinearMap":
        return LinearMap(self, np.zeros((self.dim * self.m, self.dim * self.m), dtype=complex))

    def compatible(self, other) -> bool:
        if self is other:
            return True
        return (self.field == other.field and self.dim == other.dim
                and self.metric_sign == other.metric_sign
                and np.allclose(self.j, other.j, rtol=0.0, atol=1e-12 * self.j_norm))

    def __repr__(self):
        sig = f" signature={self.signature}" if self.signature else ""
        return f"ClassicSpace({self.field}^{self.dim},{sig} metric_sign={self.metric_sign:+d})"


def check_same_space(*objects):
    space = objects[0].space
    for obj in objects[1:]:
        if not space.compatible(obj.space):
            raise SpaceMismatchError("objects live in different spaces")
    return space


class Vector:
    """Element of V^n; supports the right scalar action v * k."""

    __slots__ = ("space", "data")

    def __init__(self, space, data):
        self.space = space
        self.data = np.asarray(data, dtype=complex)
        if self.data.shape != (space.dim * space.m, space.m):
            raise ValidationError("vector block has wrong shape", code="bad-arity")

    def entries(self):
        m = self.space.m
        return [from_block(self.space.field, self.data[i * m:(i + 1) * m, :])
                for i in range(self.space.dim)]

    def entry(self, i) -> Scalar:
        m = self.space.m
        return from_block(self.space.field, self.data[i * m:(i + 1) * m, :])

    def __add__(self, other):
        check_same_space(self, other)
        return Vector(self.space, self.data + other.data)

    def __sub__(self, other):
        check_same_space(self, other)
        return Vector(self.space, self.data - other.data)

    def __neg__(self):
        return Vector(self.space, -self.data)

    def __mul__(self, k):
        """Right scalar action; reals commute, everything else multiplies on the right."""
        if isinstance(k, (int, float, np.integer, np.floating)):
            return Vector(self.space, self.data * float(k))
        k = as_scalar(self.space.field, k)
        return Vector(self.space, self.data @ to_block(k))

    def scale(self, r: float) -> "Vector":
        return Vector(self.space, self.data * float(r))

    def aux_norm(self) -> float:
        """Auxiliary Euclidean norm sqrt(sum |entries|^2)."""
        return float(np.linalg.norm(self.data)) / np.sqrt(self.space.m)

    def is_zero(self, tol=1e-12) -> bool:
        return self.aux_norm() <= tol

    def copy(self):
        return Vector(self.space, self.data.copy())

    def __repr__(self):
        return f"Vector({self.entries()})"


class LinearMap:
    """K-linear map V -> V acting on column vectors from the left."""

    __slots__ = ("space", "data")

    def __init__(self, space, data):
        self.space = space
        self.data = np.asarray(data, dtype=complex)
        nm = space.dim * space.m
        if self.data.shape != (nm, nm):
            raise ValidationError("map block has wrong shape", code="bad-arity")

    def __matmul__(self, other):
        if isinstance(other, Vector):
            check_same_space(self, other)
            return Vector(self.space, self.data @ other.data)
        check_same_space(self, other)
        return LinearMap(self.space, self.data @ other.data)

    def __add__(self, other):
        check_same_space(self, other)
        return LinearMap(self.space, self.data + other.data)

    def __sub__(self, other):
        check_same_space(self, other)
        return LinearMap(self.space, self.data - other.data)

    def __neg__(self):
        return LinearMap(self.space, -self.data)

    def scale(self, r: float) -> "LinearMap":
        return LinearMap(self.space, self.data * float(r))

    def times_complex(self, c: complex) -> "LinearMap":
        """Multiply values by the complex scalar c (field C only)."""
        if self.space.field != scalars.C:
            raise ValidationError("complex scaling needs field C", code="field-mismatch")
        return LinearMap(self.space, self.data * complex(c))

    def entry(self, i, k) -> Scalar:
        m = self.space.m
        return from_block(self.space.field,
                          self.data[i * m:(i + 1) * m, k * m:(k + 1) * m])

    def entries(self):
        return [[self.entry(i, k) for k in range(self.space.dim)]
                for i in range(self.space.dim)]

    def op_norm(self) -> float:
        return float(np.linalg.norm(self.data, 2))

    def frob_norm(self) -> float:
        return float(np.linalg.norm(self.data))

    def __repr__(self):
        return f"LinearMap({self.entries()})"


# -- the hermitian form and its companions ---------------------------------


def form(v: Vector, w: Vector) -> Scalar:
    """Hermitian form <v, w>: conjugate-linear in v, K-linear in w."""
    space = check_same_space(v, w)
    block = v.data.conj().T @ space.j @ w.data
    return from_block(space.field, block)


def form_re(v: Vector, w: Vector) -> float:
    """Real part of the form, cheap path for the many real-valued uses."""
    space = check_same_space(v, w)
    block = v.data.conj().T @ space.j @ w.data
    return float(np.trace(block).real) / space.m


def adjoint(t: LinearMap) -> LinearMap:
    """Map adjoint with respect to the form: <t x, y> = <x, t* y>."""
    space = t.space
    return LinearMap(space, space.j_inv @ t.data.conj().T @ space.j)


def real_trace(t: LinearMap) -> float:
    """Trace of t viewed as an R-linear map."""
    space = t.space
    return (space.real_dim / space.m) * float(np.trace(t.data).real)


def complex_trace(t: LinearMap) -> Scalar:
    if t.space.field != scalars.C:
        raise ValidationError("complex trace needs field C", code="field-mismatch")
    z = complex(np.trace(t.data))
    return Scalar(scalars.C, z.real, z.imag)


def rank_one(v: Vector, p: Vector) -> LinearMap:
    """The map x |-> v <p, x>."""
    space = check_same_space(v, p)
    return LinearMap(space, v.data @ (p.data.conj().T @ space.j))
