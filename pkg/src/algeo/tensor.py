"""Dense exact ndarrays over a :class:`~algeo.field.FieldSpec`.

Over F_p the entries are residues stored as ``int64`` (or Python ints for
very large moduli).  Over QQ an array is an integer numerator array plus one shared positive
denominator, kept in lowest terms, so contractions run as integer dot
products.  Numerators are ``int64`` while every intermediate provably fits
and Python ints otherwise.
"""
from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

from .errors import DimensionMismatch, MixedFields
from .field import FieldSpec

_INT64_MODULUS_LIMIT = 1 << 24


def _dtype(field: FieldSpec):
    if field.is_prime and field.modulus >= _INT64_MODULUS_LIMIT:
        return object
    return np.int64


class ExactArray:
    """Immutable dense array of exact field values."""

    __slots__ = ("field", "num", "den")

    def __init__(self, field: FieldSpec, num: np.ndarray, den: int = 1, normalized: bool = False):
        self.field = field
        if not normalized:
            num, den = _normalize(field, num, den)
        num.flags.writeable = False
        self.num = num
        self.den = den

    # -- construction ------------------------------------------------------
    @classmethod
    def zeros(cls, field, shape):
        return cls(field, np.zeros(shape, dtype=_dtype(field)) if _dtype(field) is np.int64
                   else np.full(shape, 0, dtype=object), 1, normalized=True)

    @classmethod
    def from_ints(cls, field, ints):
        arr = np.asarray(ints)
        if _dtype(field) is object or arr.dtype == object:
            arr = arr.astype(object)
        else:
            arr = arr.astype(np.int64)
        return cls(field, arr, 1)

    @classmethod
    def from_raw(cls, field, values, shape=None):
        """Build from raw field values (Fractions over QQ, ints over F_p)."""
        flat = list(np.asarray(values, dtype=object).ravel()) if shape is None else list(values)
        if shape is None:
            shape = np.asarray(values, dtype=object).shape
        if field.is_prime:
            ints = [field.raw(v) for v in flat]
            return cls(field, np.array(ints, dtype=_dtype(field)).reshape(shape), 1)
        fracs = [Fraction(v) for v in flat]
        den = math.lcm(1, *(f.denominator for f in fracs))
        nums = np.empty(len(fracs), dtype=object)
        for i, f in enumerate(fracs):
            nums[i] = f.numerator * (den // f.denominator)
        return cls(field, nums.reshape(shape), den)

    # -- basic protocol ----------------------------------------------------
    @property
    def shape(self):
        return self.num.shape

    @property
    def ndim(self):
        return self.num.ndim

    @property
    def size(self):
        return self.num.size

    def _check(self, other):
        if not isinstance(other, ExactArray):
            raise TypeError(f"expected ExactArray, got {type(other).__name__}")
        if other.field != self.field:
            raise MixedFields(f"cannot combine {self.field} and {other.field}")
        if other.shape != self.shape:
            raise DimensionMismatch(f"shapes {self.shape} and {other.shape}")

    def _combine(self, other, sign):
        self._check(other)
        if self.field.is_prime:
            return ExactArray(self.field, self.num + other.num if sign > 0 else self.num - other.num, 1)
        den = math.lcm(self.den, other.den)
        num = _lin(self.num, den // self.den, other.num, sign * (den // other.den))
        return ExactArray(self.field, num, den)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return ExactArray(self.field, -self.num, self.den, normalized=not self.field.is_prime)

    def scale(self, c):
        """Multiply by a scalar (int, Fraction, or FieldScalar)."""
        c = getattr(c, "value", c)
        if self.field.is_prime:
            return ExactArray(self.field, self.num * self.field.raw(c), 1)
        c = Fraction(c)
        return ExactArray(self.field, _lin(self.num, c.numerator), self.den * c.denominator)

    def __eq__(self, other):
        if not isinstance(other, ExactArray):
            return NotImplemented
        return (self.field == other.field and self.shape == other.shape
                and self.den == other.den and bool(np.all(self.num == other.num)))

    __hash__ = None

    def is_zero(self):
        return bool(np.all(self.num == 0))

    def nonzero_index(self):
        """First index (C order) of a nonzero entry, or None."""
        flat = np.flatnonzero(self.num != 0)
        return None if flat.size == 0 else tuple(int(i) for i in np.unravel_index(flat[0], self.shape))

    def __getitem__(self, idx):
        v = self.num[idx]
        if isinstance(v, np.ndarray):
            return ExactArray(self.field, v.copy(), self.den)
        return self._raw_entry(v)

    def _raw_entry(self, v):
        if self.field.is_prime:
            return int(v)
        return Fraction(int(v), self.den)

    def raw_list(self):
        """Flat list of raw values in C order."""
        return [self._raw_entry(v) for v in self.num.ravel()]

    # -- structural ops ----------------------------------------------------
    def transpose(self, axes):
        return ExactArray(self.field, np.ascontiguousarray(self.num.transpose(axes)), self.den, normalized=True)

    def reshape(self, shape):
        return ExactArray(self.field, self.num.reshape(shape).copy(), self.den, normalized=True)

    def tensordot(self, other, axes):
        if other.field != self.field:
            raise MixedFields(f"cannot combine {self.field} and {other.field}")
        a, b = self.num, other.num
        if not self.field.is_prime and a.dtype != object and b.dtype != object and a.size and b.size:
            terms = 1
            for ax in axes[0]:
                terms *= a.shape[ax]
            if _max_abs(a) * _max_abs(b) * max(terms, 1) >= _INT64_SAFE:
                a, b = a.astype(object), b.astype(object)
        elif a.dtype != b.dtype:
            a, b = a.astype(object), b.astype(object)
        num = np.tensordot(a, b, axes=axes)
        return ExactArray(self.field, np.asarray(num), self.den * other.den)

    def stack(self, others):
        """Stack ``[self, *others]`` along a new leading axis."""
        arrays = [self, *others]
        den = math.lcm(*(a.den for a in arrays))
        parts = [_lin(a.num, den // a.den) for a in arrays]
        if any(p.dtype == object for p in parts):
            parts = [p.astype(object) for p in parts]
        return ExactArray(self.field, np.stack(parts), den)

    def __repr__(self):
        return f"ExactArray({self.field}, shape={self.shape})"


_INT64_SAFE = 1 << 62


def _max_abs(arr):
    if arr.size == 0:
        return 0
    return max(abs(int(arr.max())), abs(int(arr.min())))


def _lin(a, ca, b=None, cb=0):
    """Exact ``a*ca + b*cb`` on integer arrays, in int64 when that cannot overflow."""
    if a.dtype != object and (b is None or b.dtype != object):
        bound = _max_abs(a) * abs(ca) + (0 if b is None else _max_abs(b) * abs(cb))
        if bound < _INT64_SAFE:
            return a * ca if b is None else a * ca + b * cb
    a = a.astype(object)
    if b is None:
        return a * ca
    return a * ca + b.astype(object) * cb


def _normalize(field, num, den):
    if field.is_prime:
        num = np.asarray(num) % field.modulus
        if num.dtype != _dtype(field):
            num = num.astype(_dtype(field))
        return num, 1
    num = np.asarray(num)
    if den < 0:
        num, den = -num, -den
    if num.size == 0:
        return num.astype(np.int64), 1
    if num.dtype == object:
        if _max_abs(num) < _INT64_SAFE:
            num = num.astype(np.int64)
            g = math.gcd(den, int(np.gcd.reduce(num, axis=None)))
        else:
            g = math.gcd(den, *num.ravel().tolist())
    else:
        g = math.gcd(den, int(np.gcd.reduce(num, axis=None)))
    if g == 0:
        return num, 1
    if g != 1:
        num = num // g
        den //= g
    return num, den
