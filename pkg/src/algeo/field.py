"""Exact scalar fields: the rationals and prime fields F_p with p >= 5.

Raw values are ``fractions.Fraction`` for QQ and ``int`` in ``[0, p)`` for
F_p.  :class:`FieldSpec` owns the raw arithmetic; :class:`FieldScalar` is the
public immutable value wrapping a raw value together with its field.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from sympy import isprime

from .errors import DivisionByZero, MixedFields, ParseError, ValidationError

_SCALAR_RE = re.compile(r"-?[0-9]+(/[0-9]+)?")


@dataclass(frozen=True)
class FieldSpec:
    kind: str
    modulus: int | None = None

    def __post_init__(self):
        if self.kind == "rational":
            if self.modulus is not None:
                raise ValidationError("field", "rational field takes no modulus")
        elif self.kind == "prime":
            p = self.modulus
            if not isinstance(p, int) or p < 2 or not isprime(p):
                raise ValidationError("field", f"modulus {p!r} is not prime")
            if p < 5:
                raise ValidationError(
                    "field", f"F_{p}: 2 and 3 must be invertible, so the modulus must be >= 5")
        else:
            raise ValidationError("field", f"unknown field kind {self.kind!r}")

    @property
    def is_prime(self):
        return self.kind == "prime"

    def __str__(self):
        return "QQ" if self.kind == "rational" else f"GF({self.modulus})"

    # -- raw arithmetic ----------------------------------------------------
    def raw(self, value):
        """Canonical raw value for an int, Fraction, or raw value of this field."""
        if self.kind == "rational":
            return Fraction(value)
        if isinstance(value, Fraction):
            if value.denominator % self.modulus == 0:
                raise DivisionByZero(f"denominator {value.denominator} vanishes mod {self.modulus}")
            return value.numerator * pow(value.denominator, -1, self.modulus) % self.modulus
        return int(value) % self.modulus

    @property
    def zero(self):
        return Fraction(0) if self.kind == "rational" else 0

    @property
    def one(self):
        return Fraction(1) if self.kind == "rational" else 1

    def add(self, a, b):
        return a + b if self.kind == "rational" else (a + b) % self.modulus

    def sub(self, a, b):
        return a - b if self.kind == "rational" else (a - b) % self.modulus

    def mul(self, a, b):
        return a * b if self.kind == "rational" else (a * b) % self.modulus

    def neg(self, a):
        return -a if self.kind == "rational" else (-a) % self.modulus

    def inv(self, a):
        if a == 0:
            raise DivisionByZero("inverse of zero")
        return 1 / a if self.kind == "rational" else pow(a, -1, self.modulus)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def format_raw(self, a):
        if self.kind == "prime":
            return str(a)
        return str(a.numerator) if a.denominator == 1 else f"{a.numerator}/{a.denominator}"

    def parse_raw(self, text):
        if not isinstance(text, str) or not _SCALAR_RE.fullmatch(text):
            raise ParseError(f"malformed scalar {text!r}")
        num, _, den = text.partition("/")
        num, den = int(num), int(den or 1)
        if den == 0 or (self.kind == "prime" and den % self.modulus == 0):
            raise DivisionByZero(f"zero denominator in {text!r} over {self}")
        if self.kind == "rational":
            return Fraction(num, den)
        return num * pow(den, -1, self.modulus) % self.modulus

    # -- convenience -------------------------------------------------------
    def __call__(self, value) -> FieldScalar:
        if isinstance(value, FieldScalar):
            if value.field != self:
                raise MixedFields(f"{value.field} scalar used over {self}")
            return value
        if isinstance(value, str):
            return FieldScalar(self, self.parse_raw(value))
        return FieldScalar(self, self.raw(value))


QQ = FieldSpec("rational")


@lru_cache(maxsize=None)
def GF(p: int) -> FieldSpec:
    return FieldSpec("prime", p)


def field_from_string(text: str) -> FieldSpec:
    """Parse ``"QQ"``, ``"rational"``, ``"GF(7)"``, ``"F7"`` or ``"prime:7"``."""
    t = text.strip()
    if t in ("QQ", "Q", "rational"):
        return QQ
    m = re.fullmatch(r"(?:GF\((\d+)\)|F_?(\d+)|prime:(\d+))", t)
    if not m:
        raise ParseError(f"unknown field {text!r}")
    return GF(int(next(g for g in m.groups() if g)))


class FieldScalar:
    """Immutable exact field element."""

    __slots__ = ("field", "value")

    def __init__(self, field: FieldSpec, value):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "value", value)

    def __setattr__(self, name, value):
        raise AttributeError("FieldScalar is immutable")

    def _other(self, other):
        if isinstance(other, FieldScalar):
            if other.field != self.field:
                raise MixedFields(f"cannot combine {self.field} and {other.field}")
            return other.value
        if isinstance(other, (int, Fraction)):
            return self.field.raw(other)
        return NotImplemented

    def _wrap(self, v):
        return FieldScalar(self.field, v)

    def __add__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.field.add(self.value, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.field.sub(self.value, o))

    def __rsub__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.field.sub(o, self.value))

    def __mul__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.field.mul(self.value, o))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.field.div(self.value, o))

    def __rtruediv__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.field.div(o, self.value))

    def __neg__(self):
        return self._wrap(self.field.neg(self.value))

    def inv(self):
        return self._wrap(self.field.inv(self.value))

    def is_zero(self):
        return self.value == 0

    def __eq__(self, other):
        if isinstance(other, FieldScalar):
            return self.field == other.field and self.value == other.value
        if isinstance(other, (int, Fraction)):
            try:
                return self.value == self.field.raw(other)
            except DivisionByZero:
                return False
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.value))

    def __str__(self):
        return self.field.format_raw(self.value)

    def __repr__(self):
        return f"FieldScalar({self.field}, {self})"


def scalar_from_string(field: FieldSpec, text: str) -> FieldScalar:
    return FieldScalar(field, field.parse_raw(text))


def scalar_arith(op: str, a: FieldScalar, b: FieldScalar | None = None) -> FieldScalar:
    """Dispatch ``add|sub|mul|div|neg|inv`` on exact scalars."""
    if b is not None and a.field != b.field:
        raise MixedFields(f"cannot combine {a.field} and {b.field}")
    if op == "neg":
        return -a
    if op == "inv":
        return a.inv()
    if b is None:
        raise TypeError(f"{op} needs two operands")
    return {"add": a.__add__, "sub": a.__sub__, "mul": a.__mul__, "div": a.__truediv__}[op](b)
