"""Exact scalars over the rationals and over prime fields GF(p), p <= 257.

Arrays over a field are plain numpy arrays: ``int64`` holding residues in
``[0, p)`` for GF(p), and ``object`` arrays for the rationals whose
entries are Python ints when integral and :class:`fractions.Fraction`
otherwise (integer arithmetic is far cheaper than Fraction arithmetic).  :class:`Field` knows how to build, normalize and
contract them; :class:`Scalar` is the single-element value type.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

import numpy as np

from .errors import DivisionByZero, FieldMismatch, ParseError, ValidationError

MAX_MODULUS = 257

_FIELD_RE = re.compile(r"^\s*(?:GF|F)\s*\(\s*(\d+)\s*\)\s*$")
_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+)\s*)?$")
_MODULAR_RE = re.compile(r"^\s*([+-]?\d+)\s*mod\s*(\d+)\s*$")


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    return all(p % d for d in range(2, int(p**0.5) + 1))


def _canon(q):
    if isinstance(q, Fraction) and q.denominator == 1:
        return q.numerator
    return q


_canon_array = np.frompyfunc(_canon, 1, 1)


@dataclass(frozen=True)
class Field:
    """Field descriptor: ``p=None`` is the rationals, otherwise GF(p)."""

    p: int | None = None

    def __post_init__(self):
        if self.p is not None:
            if not isinstance(self.p, int) or not _is_prime(self.p) or self.p > MAX_MODULUS:
                raise ValidationError(f"modulus must be a prime <= {MAX_MODULUS}, got {self.p!r}")

    @classmethod
    def rationals(cls) -> Field:
        return cls(None)

    @classmethod
    def prime(cls, p: int) -> Field:
        return cls(p)

    @classmethod
    def parse(cls, text: str) -> Field:
        if text.strip() in ("Q", "QQ", "rationals"):
            return cls(None)
        m = _FIELD_RE.match(text)
        if not m:
            raise ParseError(f"unknown field {text!r}")
        return cls(int(m.group(1)))

    @property
    def name(self) -> str:
        return "Q" if self.p is None else f"GF({self.p})"

    def __str__(self) -> str:
        return self.name

    @property
    def is_rational(self) -> bool:
        return self.p is None

    @property
    def characteristic(self) -> int:
        return 0 if self.p is None else self.p

    # -- elements -------------------------------------------------------

    def element(self, value) -> int | Fraction:
        """Normalize a Python number (or Scalar) into this field's raw value."""
        if isinstance(value, Scalar):
            if value.field != self:
                raise FieldMismatch(f"{value.field} scalar used in {self}")
            return value.value
        if isinstance(value, str):
            return self.parse_value(value)
        if self.p is None:
            return _canon(Fraction(value))
        if isinstance(value, Fraction):
            if value.denominator % self.p == 0:
                raise DivisionByZero(f"denominator {value.denominator} vanishes in {self}")
            return value.numerator * pow(value.denominator, -1, self.p) % self.p
        if isinstance(value, (int, np.integer)):
            return int(value) % self.p
        raise ValidationError(f"cannot interpret {value!r} as an element of {self}")

    def elements(self) -> list[int]:
        if self.p is None:
            raise ValidationError("the rationals cannot be enumerated")
        return list(range(self.p))

    def inv(self, value) -> int | Fraction:
        v = self.element(value)
        if v == 0:
            raise DivisionByZero(f"0 has no inverse in {self}")
        if self.p is None:
            return _canon(Fraction(1) / v)
        return pow(v, -1, self.p)

    def format_value(self, value) -> str:
        """Canonical text of a raw value: "n", "n/d", or a residue "k"."""
        if self.p is None:
            q = Fraction(value)
            return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"
        return str(int(value) % self.p)

    def parse_value(self, text: str) -> int | Fraction:
        if not isinstance(text, str):
            raise ParseError(f"scalar must be a string, got {text!r}")
        m = _MODULAR_RE.match(text)
        if m:
            if self.p is None or int(m.group(2)) != self.p:
                raise FieldMismatch(f"{text!r} is not an element of {self}")
            return int(m.group(1)) % self.p
        m = _RATIONAL_RE.match(text)
        if not m:
            raise ParseError(f"malformed scalar {text!r}")
        num = int(m.group(1))
        den = int(m.group(2)) if m.group(2) is not None else 1
        if den == 0:
            raise ParseError(f"zero denominator in {text!r}")
        return self.element(Fraction(num, den))

    # -- arrays ---------------------------------------------------------

    @cached_property
    def dtype(self):
        return object if self.p is None else np.int64

    def array(self, data) -> np.ndarray:
        """Build a normalized array from nested lists / arrays of numbers."""
        raw = np.asarray(data, dtype=object)
        out = np.empty(raw.shape, dtype=self.dtype)
        flat_in = raw.reshape(-1)
        flat_out = out.reshape(-1)
        for i, v in enumerate(flat_in):
            flat_out[i] = self.element(v)
        return out

    def zeros(self, shape) -> np.ndarray:
        if self.p is None:
            out = np.empty(shape, dtype=object)
            out.fill(0)
            return out
        return np.zeros(shape, dtype=np.int64)

    def identity(self, n: int) -> np.ndarray:
        out = self.zeros((n, n))
        for i in range(n):
            out[i, i] = self.element(1)
        return out

    def reduce(self, arr: np.ndarray) -> np.ndarray:
        if self.p is None:
            arr = np.asarray(arr, dtype=object)
            return np.asarray(_canon_array(arr), dtype=object) if arr.size else arr
        return np.asarray(arr, dtype=np.int64) % self.p

    def einsum(self, subscripts: str, *operands: np.ndarray) -> np.ndarray:
        if self.p is None:
            return np.einsum(subscripts, *operands, dtype=object)
        return np.einsum(subscripts, *operands) % self.p

    def scale(self, value, arr: np.ndarray) -> np.ndarray:
        return self.reduce(arr * self.element(value))

    def is_zero(self, arr: np.ndarray) -> bool:
        return not np.any(arr != 0)


@dataclass(frozen=True)
class Scalar:
    """An immutable field element; arithmetic never mixes fields."""

    value: int | Fraction
    field: Field

    @classmethod
    def of(cls, value, field: Field) -> Scalar:
        return cls(field.element(value), field)

    @classmethod
    def parse(cls, text: str, field: Field | None = None) -> Scalar:
        """Parse "n", "n/d" (rationals) or "k mod p"."""
        if field is None:
            m = _MODULAR_RE.match(text)
            field = Field(int(m.group(2))) if m else Field(None)
        return cls(field.parse_value(text), field)

    def _other(self, other) -> int | Fraction:
        if isinstance(other, Scalar):
            if other.field != self.field:
                raise FieldMismatch(f"cannot combine {self.field} with {other.field}")
            return other.value
        if isinstance(other, (int, Fraction)):
            return self.field.element(other)
        return NotImplemented

    def _wrap(self, raw) -> Scalar:
        return Scalar(self.field.element(raw), self.field)

    def __add__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.value + o)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.value - o)

    def __rsub__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(o - self.value)

    def __mul__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.value * o)

    __rmul__ = __mul__

    def __neg__(self):
        return self._wrap(-self.value)

    def inverse(self) -> Scalar:
        return Scalar(self.field.inv(self.value), self.field)

    def __truediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return NotImplemented
        return self * Scalar(self.field.inv(o), self.field)

    def is_zero(self) -> bool:
        return self.value == 0

    def __str__(self) -> str:
        text = self.field.format_value(self.value)
        return text if self.field.p is None else f"{text} mod {self.field.p}"


def scalar_add(a: Scalar, b: Scalar) -> Scalar:
    return a + b


def scalar_mul(a: Scalar, b: Scalar) -> Scalar:
    return a * b


def scalar_inv(a: Scalar) -> Scalar:
    return a.inverse()


QQ = Field(None)
GF2 = Field(2)
GF3 = Field(3)
