"""Hochschild cochains of a finite-dimensional algebra and the comp calculus.

A cochain of degree ``p`` is a multilinear map ``A^{p+1} -> A`` stored as a
dense tensor of shape ``(n,)*(p+1) + (n,)``: the leading axes index the
input basis vectors, the last axis the output component.  Degree ``-1``
cochains are elements of ``A`` (shape ``(n,)``).
"""
from __future__ import annotations

import itertools
import os
from contextlib import contextmanager
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

import numpy as np

from .errors import (ArityMismatch, BudgetExceeded, DimensionMismatch,
                     MixedAlgebras, SlotCollision, SlotOutOfRange, ValidationError)
from .field import FieldScalar, FieldSpec
from .tensor import ExactArray

DEFAULT_BUDGET = 10 ** 7
_budget_override = None


def scalar_budget() -> int:
    """Largest coefficient count an operation may produce."""
    if _budget_override is not None:
        return _budget_override
    env = os.environ.get("ALGEO_BUDGET")
    return int(env) if env else DEFAULT_BUDGET


def set_budget(n: int | None):
    global _budget_override
    _budget_override = n


@contextmanager
def budget(n: int):
    old = _budget_override
    set_budget(n)
    try:
        yield
    finally:
        set_budget(old)


def _check_budget(n, degree):
    size = n ** (degree + 2)
    if size > scalar_budget():
        raise BudgetExceeded(
            f"a degree {degree} cochain on a {n}-dimensional space has {size} coefficients, "
            f"over the budget of {scalar_budget()}")


def _sign(k):
    return -1 if k % 2 else 1


def permutation_sign(perm):
    sign = 1
    for a, b in itertools.combinations(range(len(perm)), 2):
        if perm[a] > perm[b]:
            sign = -sign
    return sign


@dataclass(eq=False)
class AlgebraSpec:
    """Finite-dimensional algebra given by sparse structure constants.

    ``mu[(i, j, k)]`` is the coefficient of ``e_k`` in ``e_i e_j``.  An
    optional ``bracket`` in the same format supplies an independent Lie
    bracket; it is validated for antisymmetry and the Jacobi identity.
    """

    name: str
    field: FieldSpec
    dim: int
    mu: dict
    bracket: dict | None = None
    basis_names: list = dc_field(default=None)

    def __post_init__(self):
        if self.dim < 1:
            raise ValidationError("dimension", f"must be positive, got {self.dim}")
        if self.basis_names is None:
            self.basis_names = [f"e{i}" for i in range(self.dim)]
        if len(self.basis_names) != self.dim:
            raise ValidationError("basis_names", f"{len(self.basis_names)} names for dimension {self.dim}")
        self.mu = self._clean(self.mu, "mu")
        if self.bracket is not None:
            self.bracket = self._clean(self.bracket, "bracket")
        self._mu_tensor = self._tensor(self.mu)
        self._bracket_tensor = None if self.bracket is None else self._tensor(self.bracket)
        if self.bracket is not None:
            check_lie_bracket(Cochain(self, 1, self._bracket_tensor))

    def _clean(self, table, label):
        out = {}
        for key, c in table.items():
            i, j, k = key
            for idx in (i, j, k):
                if not 0 <= idx < self.dim:
                    raise ValidationError(f"{label}.index", f"index {idx} of {key} outside [0, {self.dim})")
            c = self.field.parse_raw(c) if isinstance(c, str) else self.field.raw(getattr(c, "value", c))
            if c != 0:
                out[(i, j, k)] = c
        return out

    def _tensor(self, table):
        vals = [self.field.zero] * self.dim ** 3
        n = self.dim
        for (i, j, k), c in table.items():
            vals[(i * n + j) * n + k] = c
        return ExactArray.from_raw(self.field, vals, shape=(n, n, n))

    def __eq__(self, other):
        if not isinstance(other, AlgebraSpec):
            return NotImplemented
        return (self.field, self.dim, self.mu, self.bracket) == (other.field, other.dim, other.mu, other.bracket)

    def __hash__(self):
        return hash((self.field, self.dim, tuple(sorted(self.mu.items()))))

    def __repr__(self):
        return f"AlgebraSpec({self.name!r}, {self.field}, dim={self.dim})"

    # -- canonical cochains ------------------------------------------------
    @property
    def mu_cochain(self) -> Cochain:
        return Cochain(self, 1, self._mu_tensor)

    @property
    def bracket_cochain(self) -> Cochain | None:
        return None if self._bracket_tensor is None else Cochain(self, 1, self._bracket_tensor)

    def identity(self) -> Cochain:
        return Cochain(self, 0, ExactArray.from_ints(self.field, np.eye(self.dim, dtype=np.int64)))

    def zero(self, degree) -> Cochain:
        return Cochain.zero(self, degree)

    def basis(self, i) -> Cochain:
        v = np.zeros(self.dim, dtype=np.int64)
        v[i] = 1
        return Cochain(self, -1, ExactArray.from_ints(self.field, v))

    def element(self, coeffs) -> Cochain:
        if len(coeffs) != self.dim:
            raise DimensionMismatch(f"{len(coeffs)} coefficients for dimension {self.dim}")
        vals = [self.field.parse_raw(c) if isinstance(c, str) else getattr(c, "value", c) for c in coeffs]
        return Cochain(self, -1, ExactArray.from_raw(self.field, vals, shape=(self.dim,)))

    def mul(self, x: Cochain, y: Cochain) -> Cochain:
        return eval_cochain(self.mu_cochain, [x, y])

    def with_bracket(self, bracket, name=None):
        return AlgebraSpec(name or self.name, self.field, self.dim, dict(self.mu), bracket, list(self.basis_names))


class Cochain:
    """Immutable multilinear map ``A^{degree+1} -> A``."""

    __slots__ = ("algebra", "degree", "data")

    def __init__(self, algebra: AlgebraSpec, degree: int, data: ExactArray):
        if degree < -1:
            raise ValueError(f"degree must be >= -1, got {degree}")
        expected = (algebra.dim,) * (degree + 2)
        if data.shape != expected:
            raise DimensionMismatch(f"degree {degree} needs shape {expected}, got {data.shape}")
        self.algebra = algebra
        self.degree = degree
        self.data = data

    @classmethod
    def zero(cls, algebra, degree):
        return cls(algebra, degree, ExactArray.zeros(algebra.field, (algebra.dim,) * (degree + 2)))

    @classmethod
    def from_raw(cls, algebra, degree, values):
        shape = (algebra.dim,) * (degree + 2)
        return cls(algebra, degree, ExactArray.from_raw(algebra.field, values, shape=shape))

    @property
    def arity(self):
        return self.degree + 1

    @property
    def field(self):
        return self.algebra.field

    def _same(self, other):
        if not isinstance(other, Cochain):
            raise TypeError(f"expected Cochain, got {type(other).__name__}")
        if other.algebra is not self.algebra and other.algebra != self.algebra:
            raise MixedAlgebras(f"{self.algebra!r} vs {other.algebra!r}")

    def __add__(self, other):
        self._same(other)
        if other.degree != self.degree:
            raise DimensionMismatch(f"cannot add degrees {self.degree} and {other.degree}")
        return Cochain(self.algebra, self.degree, self.data + other.data)

    def __sub__(self, other):
        self._same(other)
        if other.degree != self.degree:
            raise DimensionMismatch(f"cannot subtract degrees {self.degree} and {other.degree}")
        return Cochain(self.algebra, self.degree, self.data - other.data)

    def __neg__(self):
        return Cochain(self.algebra, self.degree, -self.data)

    def __mul__(self, c):
        if isinstance(c, (int, Fraction, FieldScalar)) and not isinstance(c, bool):
            return Cochain(self.algebra, self.degree, self.data.scale(c))
        return NotImplemented

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, Cochain):
            return NotImplemented
        return (self.degree == other.degree and
                (self.algebra is other.algebra or self.algebra == other.algebra)
                and self.data == other.data)

    __hash__ = None

    def is_zero(self):
        return self.data.is_zero()

    def __call__(self, *args):
        return eval_cochain(self, list(args))

    def coefficients(self):
        """Raw coefficient list (C order over ``(inputs..., output)``)."""
        return self.data.raw_list()

    def permute_inputs(self, sigma) -> Cochain:
        """The cochain ``(a_1..a_k) -> f(a_sigma(1), .., a_sigma(k))`` (0-based ``sigma``)."""
        k = self.arity
        if sorted(sigma) != list(range(k)):
            raise ValueError(f"{sigma} is not a permutation of {k} slots")
        inverse = [0] * k
        for t, s in enumerate(sigma):
            inverse[s] = t
        return Cochain(self.algebra, self.degree, self.data.transpose(inverse + [k]))

    def __repr__(self):
        return f"Cochain(degree={self.degree}, algebra={self.algebra.name!r})"


def format_element(x: Cochain) -> str:
    names = x.algebra.basis_names
    terms = []
    for name, c in zip(names, x.coefficients()):
        if c != 0:
            terms.append(f"{x.field.format_raw(c)}*{name}")
    return " + ".join(terms) if terms else "0"


# -- operations ------------------------------------------------------------

def eval_cochain(f: Cochain, args) -> Cochain:
    """Evaluate ``f`` on a list of elements (degree -1 cochains)."""
    if len(args) != f.arity:
        raise ArityMismatch(f"degree {f.degree} cochain takes {f.arity} arguments, got {len(args)}")
    t = f.data
    for a in args:
        f._same(a)
        if a.degree != -1:
            raise ArityMismatch("arguments must be algebra elements (degree -1)")
        t = a.data.tensordot(t, axes=([0], [0]))
    return Cochain(f.algebra, -1, t)


def comp_i(f: Cochain, g: Cochain, i: int) -> Cochain:
    """Insert ``g`` into input slot ``i`` (1-based) of ``f``; no sign."""
    f._same(g)
    p, q = f.degree, g.degree
    if not 1 <= i <= p + 1:
        raise SlotOutOfRange(f"slot {i} outside 1..{p + 1}")
    _check_budget(f.algebra.dim, p + q)
    t = g.data.tensordot(f.data, axes=([q + 1], [i - 1]))
    perm = list(range(q + 1, q + i)) + list(range(q + 1)) + list(range(q + i, q + p + 2))
    return Cochain(f.algebra, p + q, t.transpose(perm))


def comp(f: Cochain, g: Cochain) -> Cochain:
    """Gerstenhaber comp: signed sum of single insertions."""
    f._same(g)
    p, q = f.degree, g.degree
    if p == -1:
        return Cochain.zero(f.algebra, p + q)
    out = None
    for i in range(1, p + 2):
        term = comp_i(f, g, i)
        if (i - 1) * q % 2:
            term = -term
        out = term if out is None else out + term
    return out


def insert_pair(f: Cochain, g: Cochain, h: Cochain, i: int, j: int) -> Cochain:
    """Insert ``g`` in slot ``i`` and ``h`` in slot ``j`` of ``f`` simultaneously."""
    f._same(g)
    f._same(h)
    k = f.arity
    for s in (i, j):
        if not 1 <= s <= k:
            raise SlotOutOfRange(f"slot {s} outside 1..{k}")
    if i == j:
        raise SlotCollision(f"both insertions target slot {i}")
    # insert into the later slot first so the earlier slot index is unchanged
    if i < j:
        return comp_i(comp_i(f, h, j), g, i)
    return comp_i(comp_i(f, g, i), h, j)


def bracket(f: Cochain, g: Cochain) -> Cochain:
    """Graded commutator ``f o g - (-1)^{pq} g o f``."""
    p, q = f.degree, g.degree
    left, right = comp(f, g), comp(g, f)
    return left + right if (p * q) % 2 else left - right


def associator3(f: Cochain, g: Cochain, h: Cochain) -> Cochain:
    return comp(comp(f, g), h) - comp(f, comp(g, h))


def associator_by_insertions(f: Cochain, g: Cochain, h: Cochain) -> Cochain:
    """The associator of comp as a signed double sum of simultaneous insertions.

    ``sum_{i != j} eps(i, j) (-1)^{(i-1)q + (j-1)r} f{g in i, h in j}`` with
    ``eps(i, j) = 1`` for ``j < i`` and ``(-1)^{qr}`` otherwise.
    """
    q, r = g.degree, h.degree
    out = Cochain.zero(f.algebra, f.degree + q + r)
    k = f.arity
    for i in range(1, k + 1):
        for j in range(1, k + 1):
            if i == j:
                continue
            e = (i - 1) * q + (j - 1) * r + (0 if j < i else q * r)
            term = insert_pair(f, g, h, i, j)
            out = out - term if e % 2 else out + term
    return out


def split_mu(f: Cochain):
    """Unnormalized symmetric and skew parts of a binary cochain.

    Returns ``(f(a,b) + f(b,a), f(a,b) - f(b,a))``; their sum is ``2f``.
    """
    if f.degree != 1:
        raise ArityMismatch(f"split_mu needs a binary cochain, got degree {f.degree}")
    swapped = f.permute_inputs([1, 0])
    return f + swapped, f - swapped


def alt_cochain(f: Cochain) -> Cochain:
    """Plain alternation over input slots, without ``1/k!``."""
    k = f.arity
    if k <= 1:
        return f
    out = Cochain.zero(f.algebra, f.degree)
    for perm in itertools.permutations(range(k)):
        term = f.permute_inputs(perm)
        out = out + term if permutation_sign(perm) > 0 else out - term
    return out


def koszul_sign(perm, degrees) -> int:
    """Sign picked up by reordering graded symbols of the given degrees by ``perm``."""
    sign = 1
    for a, b in itertools.combinations(range(len(perm)), 2):
        if perm[a] > perm[b] and (degrees[perm[a]] * degrees[perm[b]]) % 2:
            sign = -sign
    return sign


def graded_alt3(op, f: Cochain, g: Cochain, h: Cochain) -> Cochain:
    """Graded alternation of a three-argument cochain operation."""
    items = (f, g, h)
    degrees = [x.degree for x in items]
    out = None
    for perm in itertools.permutations(range(3)):
        s = permutation_sign(perm) * koszul_sign(perm, degrees)
        term = op(*(items[k] for k in perm))
        term = term if s > 0 else -term
        out = term if out is None else out + term
    return out


def jacobiator(beta: Cochain) -> Cochain:
    """``[[a,b],c] + [[b,c],a] + [[c,a],b]`` for a binary cochain ``beta``."""
    t = comp_i(beta, beta, 1)
    return t + t.permute_inputs([1, 2, 0]) + t.permute_inputs([2, 0, 1])


def check_lie_bracket(beta: Cochain):
    """Raise ValidationError unless ``beta`` is antisymmetric and satisfies Jacobi."""
    sym, _ = split_mu(beta)
    idx = sym.data.nonzero_index()
    if idx is not None:
        raise ValidationError("bracket.antisymmetry", f"[e{idx[0]}, e{idx[1]}] + [e{idx[1]}, e{idx[0]}] != 0")
    idx = jacobiator(beta).data.nonzero_index()
    if idx is not None:
        a, b, c = idx[:3]
        raise ValidationError("bracket.jacobi", f"Jacobi identity fails on (e{a}, e{b}, e{c})")


class Endomorphism:
    """Linear map of the algebra; ``matrix[k, j]`` is the ``e_k`` coefficient of ``phi(e_j)``."""

    __slots__ = ("algebra", "matrix")

    def __init__(self, algebra: AlgebraSpec, matrix: ExactArray):
        if matrix.shape != (algebra.dim, algebra.dim):
            raise DimensionMismatch(f"endomorphism needs shape {(algebra.dim,) * 2}, got {matrix.shape}")
        self.algebra = algebra
        self.matrix = matrix

    @classmethod
    def identity(cls, algebra):
        return cls(algebra, ExactArray.from_ints(algebra.field, np.eye(algebra.dim, dtype=np.int64)))

    @classmethod
    def zero(cls, algebra):
        return cls(algebra, ExactArray.zeros(algebra.field, (algebra.dim, algebra.dim)))

    @classmethod
    def from_raw(cls, algebra, rows):
        n = algebra.dim
        flat = [x for r in rows for x in r]
        return cls(algebra, ExactArray.from_raw(algebra.field, flat, shape=(n, n)))

    @classmethod
    def from_cochain(cls, f: Cochain):
        if f.degree != 0:
            raise ArityMismatch(f"need a degree 0 cochain, got degree {f.degree}")
        return cls(f.algebra, f.data.transpose([1, 0]))

    def as_cochain(self) -> Cochain:
        return Cochain(self.algebra, 0, self.matrix.transpose([1, 0]))

    def __call__(self, x: Cochain) -> Cochain:
        if x.degree != -1:
            raise ArityMismatch("endomorphisms act on elements")
        return Cochain(self.algebra, -1, self.matrix.tensordot(x.data, axes=([1], [0])))

    def __matmul__(self, other):
        if not isinstance(other, Endomorphism):
            return NotImplemented
        return Endomorphism(self.algebra, self.matrix.tensordot(other.matrix, axes=([1], [0])))

    def __add__(self, other):
        return Endomorphism(self.algebra, self.matrix + other.matrix)

    def __sub__(self, other):
        return Endomorphism(self.algebra, self.matrix - other.matrix)

    def __neg__(self):
        return Endomorphism(self.algebra, -self.matrix)

    def __mul__(self, c):
        if isinstance(c, (int, Fraction, FieldScalar)) and not isinstance(c, bool):
            return Endomorphism(self.algebra, self.matrix.scale(c))
        return NotImplemented

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, Endomorphism):
            return NotImplemented
        return self.matrix == other.matrix

    __hash__ = None

    def is_zero(self):
        return self.matrix.is_zero()

    def entries(self):
        """Raw entries, row-major."""
        return self.matrix.raw_list()

    def rows(self):
        n = self.algebra.dim
        flat = self.entries()
        return [flat[r * n:(r + 1) * n] for r in range(n)]

    def __repr__(self):
        return f"Endomorphism({self.algebra.name!r})"


def random_cochain(algebra: AlgebraSpec, degree: int, rng: np.random.Generator) -> Cochain:
    """Random dense cochain; small fractions over QQ, uniform residues over F_p."""
    shape = (algebra.dim,) * (degree + 2)
    _check_budget(algebra.dim, degree)
    F = algebra.field
    if F.is_prime:
        return Cochain(algebra, degree, ExactArray.from_ints(F, rng.integers(0, F.modulus, size=shape)))
    nums = rng.integers(-4, 5, size=shape)
    dens = rng.integers(1, 4, size=shape)
    vals = [Fraction(int(a), int(b)) for a, b in zip(nums.ravel(), dens.ravel())]
    return Cochain(algebra, degree, ExactArray.from_raw(F, vals, shape=shape))
