"""The cochains of a vector space as a truncated graded torsion algebra.

The carrier is ``C^{-1}(V) + C^0(V) + ... + C^{top}(V)`` with ``top =
max_arity - 1``; the connection is the comp operation and the bracket its
graded commutator.  Products whose degree would exceed ``top`` raise
:class:`~algeo.errors.Truncated` rather than being dropped.  Degree -2 is
the zero space; products landing there are returned as ``None``.
"""
from __future__ import annotations

from .cochain import AlgebraSpec, Cochain, _check_budget, bracket, comp
from .errors import BudgetExceeded, Truncated
from .field import QQ
from .hochschild import basis_cochain
from .tensor import ExactArray


class GerstenhaberCarrier:
    def __init__(self, v_dim: int, max_arity: int, field=QQ):
        if v_dim < 1 or max_arity < 2:
            raise ValueError("need v_dim >= 1 and max_arity >= 2")
        self.V = AlgebraSpec("V", field, v_dim, {})
        self.top = max_arity - 1
        self.degrees = list(range(-1, self.top + 1))
        _check_budget(v_dim, self.top)
        self.sizes = {p: v_dim ** (p + 2) for p in self.degrees}
        self.offsets = {}
        off = 0
        for p in self.degrees:
            self.offsets[p] = off
            off += self.sizes[p]
        self.dimension = off
        if self.dimension ** 2 > 10 ** 8:
            raise BudgetExceeded(f"carrier of dimension {self.dimension} is too large for dense endomorphisms")

    @property
    def field(self):
        return self.V.field

    def basis(self, degree=None):
        degrees = self.degrees if degree is None else [degree]
        return [basis_cochain(self.V, p, i) for p in degrees for i in range(self.sizes[p])]

    def locate(self, index):
        """Map a global basis index to ``(degree, local index)``."""
        for p in reversed(self.degrees):
            if index >= self.offsets[p]:
                return p, index - self.offsets[p]
        raise IndexError(index)

    def _fits(self, degree):
        if degree > self.top:
            raise Truncated(f"degree {degree} exceeds the truncation at {self.top}")

    def product(self, x: Cochain | None, y: Cochain | None) -> Cochain | None:
        """The connection ``D_x y = x o y``."""
        if x is None or y is None or x.degree + y.degree < -1:
            return None
        self._fits(x.degree + y.degree)
        return comp(x, y)

    def bracket(self, x: Cochain, y: Cochain) -> Cochain | None:
        if x.degree + y.degree < -1:
            return None
        self._fits(x.degree + y.degree)
        return bracket(x, y)

    def torsion(self, x: Cochain, y: Cochain) -> Cochain | None:
        """Graded skew part of the connection minus the bracket."""
        p, q = x.degree, y.degree
        if p + q < -1:
            return None
        yx = self.product(y, x)
        skew = self.product(x, y) - (-yx if (p * q) % 2 else yx)
        return skew - self.bracket(x, y)

    @staticmethod
    def same(x: Cochain | None, y: Cochain | None) -> bool:
        """Equality with ``None`` read as zero."""
        if x is None or y is None:
            other = y if x is None else x
            return other is None or other.is_zero()
        return x == y

    def coordinates(self, x: Cochain):
        """Raw coordinate vector of a homogeneous cochain in the full carrier basis."""
        F = self.field
        vec = [F.zero] * self.dimension
        off = self.offsets[x.degree]
        for i, c in enumerate(x.coefficients()):
            vec[off + i] = c
        return vec

    def left_mult(self, f: Cochain) -> ExactArray:
        """Matrix of ``x -> f o x`` on the whole carrier (``[out, in]``)."""
        if f.degree > 0:
            raise Truncated(f"left multiplication by degree {f.degree} leaves the truncation")
        N = self.dimension
        cols = [self.coordinates(self.product(f, x)) for x in self.basis()]
        flat = [cols[j][i] for i in range(N) for j in range(N)]
        return ExactArray.from_raw(self.field, flat, shape=(N, N))

    def function_witness(self, f: Cochain):
        """First basis pair ``(x, y)`` with ``(f o x) o y != f o (x o y)``, or None.

        Only pairs whose products stay inside the truncation are examined.
        """
        for p in self.degrees:
            for q in self.degrees:
                if f.degree + p + q > self.top or f.degree + p > self.top:
                    continue
                xs = self.basis(p)
                ys = self.basis(q)
                for i, x in enumerate(xs):
                    fx = self.product(f, x)
                    for j, y in enumerate(ys):
                        if not self.same(self.product(fx, y), self.product(f, self.product(x, y))):
                            return (p, i), (q, j)
        return None


def gerstenhaber_truncation(v_dim: int, max_arity: int, field=QQ) -> GerstenhaberCarrier:
    return GerstenhaberCarrier(v_dim, max_arity, field)


def composition_matrix(carrier: GerstenhaberCarrier, f: Cochain, g: Cochain):
    """``(L_f L_g, L_{f o g})`` as matrices, for ``f, g`` in degree 0."""
    Lf, Lg = carrier.left_mult(f), carrier.left_mult(g)
    return Lf.tensordot(Lg, axes=([1], [0])), carrier.left_mult(comp(f, g))
