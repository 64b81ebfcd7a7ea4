"""Vectors, linear maps and bilinear operations stored as dense tensors.

Conventions
-----------
* A :class:`LinearMap` holds an ``n_out x n_in`` matrix whose column ``i``
  is the image of the basis vector ``e_i``.
* A :class:`BilinearOp` holds ``c[i][j][k]`` with
  ``e_i o e_j = sum_k c[i][j][k] e_k``.  Mixed shapes are allowed, so the
  same type represents module actions ``A x M -> M`` and cocycles
  ``A x A -> M``.
* ``compose_maps(f, g)`` is ``f o g``: apply ``g`` first, matrix ``F @ G``.

Identities are verified by :func:`run_axioms`, which evaluates
left-minus-right on every basis tuple at once (the slots are broadcast
stacks of basis vectors) and reports the lexicographically first tuple
with a nonzero residual.  Multilinearity makes the basis check complete.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import DimensionMismatch, FieldMismatch
from .report import CheckReport
from .scalars import Field, Scalar


def _freeze(arr: np.ndarray) -> np.ndarray:
    arr.flags.writeable = False
    return arr


def _same_field(*objs) -> Field:
    field = objs[0].field
    for o in objs[1:]:
        if o.field != field:
            raise FieldMismatch(f"{field} vs {o.field}")
    return field


class Vector:
    __slots__ = ("field", "coords")

    def __init__(self, field: Field, coords):
        self.field = field
        arr = coords if isinstance(coords, np.ndarray) and coords.dtype == field.dtype else field.array(coords)
        if arr.ndim != 1:
            raise DimensionMismatch(f"vector must be 1-dimensional, got shape {arr.shape}")
        self.coords = _freeze(field.reduce(arr.copy()))

    @classmethod
    def zero(cls, field: Field, n: int) -> Vector:
        return cls(field, field.zeros(n))

    @classmethod
    def basis(cls, field: Field, n: int, i: int) -> Vector:
        return cls(field, field.identity(n)[i])

    @property
    def dim(self) -> int:
        return self.coords.shape[0]

    def _check(self, other: Vector):
        _same_field(self, other)
        if other.dim != self.dim:
            raise DimensionMismatch(f"{self.dim} vs {other.dim}")

    def __add__(self, other: Vector) -> Vector:
        self._check(other)
        return Vector(self.field, self.coords + other.coords)

    def __sub__(self, other: Vector) -> Vector:
        self._check(other)
        return Vector(self.field, self.coords - other.coords)

    def __neg__(self) -> Vector:
        return Vector(self.field, -self.coords)

    def __rmul__(self, scalar) -> Vector:
        return Vector(self.field, self.coords * self.field.element(scalar))

    def is_zero(self) -> bool:
        return self.field.is_zero(self.coords)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Vector):
            return NotImplemented
        return self.field == other.field and np.array_equal(self.coords, other.coords)

    __hash__ = None

    def __getitem__(self, i) -> Scalar:
        return Scalar(self.coords[i], self.field)

    def to_strings(self) -> list[str]:
        return [self.field.format_value(v) for v in self.coords]

    def __repr__(self) -> str:
        return f"Vector({self.field}, [{', '.join(self.to_strings())}])"


class LinearMap:
    __slots__ = ("field", "matrix")

    def __init__(self, field: Field, matrix):
        self.field = field
        arr = matrix if isinstance(matrix, np.ndarray) and matrix.dtype == field.dtype else field.array(matrix)
        if arr.ndim != 2:
            raise DimensionMismatch(f"matrix must be 2-dimensional, got shape {arr.shape}")
        self.matrix = _freeze(field.reduce(arr.copy()))

    @classmethod
    def identity(cls, field: Field, n: int) -> LinearMap:
        return cls(field, field.identity(n))

    @classmethod
    def zero(cls, field: Field, n_out: int, n_in: int | None = None) -> LinearMap:
        return cls(field, field.zeros((n_out, n_out if n_in is None else n_in)))

    @property
    def n_out(self) -> int:
        return self.matrix.shape[0]

    @property
    def n_in(self) -> int:
        return self.matrix.shape[1]

    @property
    def is_square(self) -> bool:
        return self.n_in == self.n_out

    def __call__(self, v: Vector) -> Vector:
        return apply_linear(self, v)

    def __matmul__(self, other: LinearMap) -> LinearMap:
        return compose_maps(self, other)

    def power(self, k: int) -> LinearMap:
        out = LinearMap.identity(self.field, self.n_in)
        for _ in range(k):
            out = compose_maps(self, out)
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, LinearMap):
            return NotImplemented
        return self.field == other.field and np.array_equal(self.matrix, other.matrix)

    __hash__ = None

    def __repr__(self) -> str:
        rows = [[self.field.format_value(v) for v in row] for row in self.matrix]
        return f"LinearMap({self.field}, {rows})"


class BilinearOp:
    __slots__ = ("field", "tensor")

    def __init__(self, field: Field, tensor):
        self.field = field
        arr = tensor if isinstance(tensor, np.ndarray) and tensor.dtype == field.dtype else field.array(tensor)
        if arr.ndim != 3:
            raise DimensionMismatch(f"structure constants must be rank 3, got shape {arr.shape}")
        self.tensor = _freeze(field.reduce(arr.copy()))

    @classmethod
    def zero(cls, field: Field, n1: int, n2: int | None = None, n3: int | None = None) -> BilinearOp:
        n2 = n1 if n2 is None else n2
        n3 = n1 if n3 is None else n3
        return cls(field, field.zeros((n1, n2, n3)))

    @property
    def shape(self) -> tuple[int, int, int]:
        return self.tensor.shape

    def __call__(self, x: Vector, y: Vector) -> Vector:
        return apply_bilinear(self, x, y)

    def __add__(self, other: BilinearOp) -> BilinearOp:
        _same_field(self, other)
        if other.shape != self.shape:
            raise DimensionMismatch(f"{self.shape} vs {other.shape}")
        return BilinearOp(self.field, self.tensor + other.tensor)

    def __sub__(self, other: BilinearOp) -> BilinearOp:
        return self + (-other)

    def __neg__(self) -> BilinearOp:
        return BilinearOp(self.field, -self.tensor)

    def __rmul__(self, scalar) -> BilinearOp:
        return BilinearOp(self.field, self.tensor * self.field.element(scalar))

    def __eq__(self, other) -> bool:
        if not isinstance(other, BilinearOp):
            return NotImplemented
        return self.field == other.field and np.array_equal(self.tensor, other.tensor)

    __hash__ = None

    def __repr__(self) -> str:
        return f"BilinearOp({self.field}, shape={self.shape})"


# -- single-vector operations -------------------------------------------


def apply_linear(f: LinearMap, v: Vector) -> Vector:
    field = _same_field(f, v)
    if v.dim != f.n_in:
        raise DimensionMismatch(f"map expects dimension {f.n_in}, got {v.dim}")
    return Vector(field, field.einsum("ka,a->k", f.matrix, v.coords))


def apply_bilinear(op: BilinearOp, x: Vector, y: Vector) -> Vector:
    field = _same_field(op, x, y)
    n1, n2, _ = op.shape
    if x.dim != n1 or y.dim != n2:
        raise DimensionMismatch(f"op of shape {op.shape} applied to dims ({x.dim}, {y.dim})")
    return Vector(field, field.einsum("a,b,abk->k", x.coords, y.coords, op.tensor))


def compose_maps(f: LinearMap, g: LinearMap) -> LinearMap:
    """``f o g`` (``g`` applied first)."""
    field = _same_field(f, g)
    if f.n_in != g.n_out:
        raise DimensionMismatch(f"cannot compose {f.matrix.shape} after {g.matrix.shape}")
    return LinearMap(field, field.einsum("ij,jk->ik", f.matrix, g.matrix))


def compose_all(*maps: LinearMap) -> LinearMap:
    """``compose_all(f, g, h) == f o g o h``."""
    out = maps[-1]
    for f in reversed(maps[:-1]):
        out = compose_maps(f, out)
    return out


def maps_commute(f: LinearMap, g: LinearMap) -> bool:
    if not (f.is_square and g.is_square) or f.n_in != g.n_in:
        raise DimensionMismatch(f"maps_commute needs square maps of one size: {f.matrix.shape}, {g.matrix.shape}")
    return compose_maps(f, g) == compose_maps(g, f)


def transform_op(op: BilinearOp, left: LinearMap | None = None, right: LinearMap | None = None,
                 out: LinearMap | None = None) -> BilinearOp:
    """Tensor of ``(x, y) -> out(op(left(x), right(y)))``; ``None`` means identity."""
    field = op.field
    t = op.tensor
    if left is not None:
        t = field.einsum("ai,ajk->ijk", left.matrix, t)
    if right is not None:
        t = field.einsum("bj,ibk->ijk", right.matrix, t)
    if out is not None:
        t = field.einsum("ka,ija->ijk", out.matrix, t)
    return BilinearOp(field, t)


# -- batched evaluation on basis tuples ---------------------------------


def basis_stacks(field: Field, dims: Sequence[int]) -> list[np.ndarray]:
    """Slot ``k`` is the identity matrix reshaped to broadcast along axis ``k``."""
    r = len(dims)
    out = []
    for k, d in enumerate(dims):
        shape = [1] * r + [d]
        shape[k] = d
        out.append(field.identity(d).reshape(shape))
    return out


def lin(f: LinearMap, X: np.ndarray) -> np.ndarray:
    return f.field.einsum("ka,...a->...k", f.matrix, X)


def mul(op: BilinearOp, X: np.ndarray, Y: np.ndarray) -> np.ndarray:
    return op.field.einsum("...a,...b,abk->...k", X, Y, op.tensor)


@dataclass(frozen=True)
class Axiom:
    """An identity ``residual(*slots) == 0`` over basis tuples of ``dims``."""

    label: str
    dims: tuple[int, ...]
    out_dim: int
    residual: Callable[..., np.ndarray]


def first_failure(field: Field, residual: np.ndarray):
    nonzero = np.any(residual != 0, axis=-1)
    if not nonzero.any():
        return None
    idx = tuple(int(i) for i in np.argwhere(nonzero)[0])
    return idx, residual[idx]


def run_axioms(checker: str, field: Field, axioms: Sequence[Axiom]) -> CheckReport:
    """Evaluate axioms in order; report the first failure and its first witness."""
    for ax in axioms:
        slots = basis_stacks(field, ax.dims)
        res = field.reduce(np.asarray(ax.residual(*slots)))
        res = np.broadcast_to(res, tuple(ax.dims) + (ax.out_dim,))
        hit = first_failure(field, res)
        if hit is not None:
            return CheckReport.failure(checker, ax.label, hit[0], hit[1], field)
    return CheckReport.ok(checker)


def commute_axiom(label: str, f: LinearMap, g: LinearMap) -> Axiom:
    """``f g (e_i) = g f (e_i)``."""
    return Axiom(label, (f.n_in,), f.n_out, lambda x: lin(f, lin(g, x)) - lin(g, lin(f, x)))


def multiplicative_axiom(label: str, f: LinearMap, op: BilinearOp,
                         f_left: LinearMap | None = None, f_right: LinearMap | None = None) -> Axiom:
    """``f(x o y) = f_left(x) o f_right(y)``, defaulting both to ``f``.

    Mixed versions cover module compatibility such as
    ``alpha_M(x . m) = alpha_A(x) . alpha_M(m)``.
    """
    fl = f if f_left is None else f_left
    fr = f if f_right is None else f_right
    n1, n2, n3 = op.shape
    return Axiom(label, (n1, n2), f.n_out,
                 lambda x, y: lin(f, mul(op, x, y)) - mul(op, lin(fl, x), lin(fr, y)))


def is_multiplicative(f: LinearMap, op: BilinearOp) -> CheckReport:
    """Pass iff ``f(e_i o e_j) = f(e_i) o f(e_j)`` for all basis pairs."""
    field = _same_field(f, op)
    n1, n2, n3 = op.shape
    if not (n1 == n2 == n3 == f.n_in == f.n_out):
        raise DimensionMismatch(f"map {f.matrix.shape} and op {op.shape} do not live on one space")
    return run_axioms("multiplicative", field, [multiplicative_axiom("multiplicative", f, op)])
