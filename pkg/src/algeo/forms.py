"""Module-valued forms on a torsion algebra and their quasi-differentials.

A form of degree ``k`` is a multilinear map ``C^k -> M`` stored as a tensor
of shape ``(n,)*k + (m,)``.  Two carriers ``M`` are supported: the vector
fields themselves (``D_X u = X u``) and the algebra of functions
(``D_X phi = X . phi``).  Module endomorphisms are ``(m, m)`` arrays in
``[out, in]`` order.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .cochain import Cochain, permutation_sign
from .errors import CarrierClosure, DegreeUnderflow, DimensionMismatch
from .hochschild import Verdict
from .linalg import NotInSpan
from .tensor import ExactArray
from .torsion import FunctionAlgebra, TorsionAlgebra, function_algebra, is_regular, vf_action

VECTOR_FIELDS = "vector-fields"
FUNCTIONS = "functions"


class ModuleCarrier:
    """A module ``M`` with derivation law ``D[X]`` and the action of the function basis."""

    def __init__(self, kind, ta: TorsionAlgebra, fa: FunctionAlgebra, D: ExactArray, action: ExactArray):
        self.kind = kind
        self.ta = ta
        self.fa = fa
        self.D = D            # [X, out, in]
        self.action = action  # [function, out, in]

    @property
    def n(self):
        return self.ta.algebra.dim

    @property
    def dim(self):
        return self.D.shape[1]

    @property
    def field(self):
        return self.ta.algebra.field

    def derivation(self, X: Cochain) -> ExactArray:
        """``D^M_X`` for an arbitrary element ``X``."""
        return X.data.tensordot(self.D, axes=([0], [0]))

    def bracket_matrix(self, X: Cochain) -> ExactArray:
        """``[in, out]`` array of ``Z -> [X, Z]``."""
        return X.data.tensordot(self.ta.lie_bracket.data, axes=([0], [0]))

    def __repr__(self):
        return f"ModuleCarrier({self.kind!r}, {self.ta.algebra.name!r})"


def vector_field_carrier(ta: TorsionAlgebra, fa: FunctionAlgebra | None = None) -> ModuleCarrier:
    fa = fa or function_algebra(ta)
    D = ta.mu.data.transpose([0, 2, 1])
    basis = [phi.matrix for phi in fa.basis]
    n = ta.algebra.dim
    action = basis[0].stack(basis[1:]) if basis else ExactArray.zeros(ta.algebra.field, (0, n, n))
    return ModuleCarrier(VECTOR_FIELDS, ta, fa, D, action)


def function_carrier(ta: TorsionAlgebra, fa: FunctionAlgebra | None = None) -> ModuleCarrier:
    """Functions with ``D_X phi = X . phi``; needs a regular torsion algebra."""
    fa = fa or function_algebra(ta)
    verdict = is_regular(ta, fa)
    if not verdict:
        raise CarrierClosure(
            "the functions carrier needs a regular torsion algebra, otherwise X . phi can leave "
            f"the algebra of functions (first violation: {verdict.witness})")
    A = ta.algebra
    F = A.field
    m = fa.dimension
    if m == 0:
        raise CarrierClosure("the algebra of functions is zero")
    D = []
    for x in range(A.dim):
        X = A.basis(x)
        cols = []
        for phi in fa.basis:
            try:
                cols.append(fa.coordinates(vf_action(ta, X, phi)))
            except NotInSpan as exc:
                raise CarrierClosure(f"e{x} . phi is not a function") from exc
        D.extend(cols[b][c] for c in range(m) for b in range(m))
    action = [fa.table[a][b][c] for a in range(m) for c in range(m) for b in range(m)]
    return ModuleCarrier(FUNCTIONS, ta, fa,
                         ExactArray.from_raw(F, D, shape=(A.dim, m, m)),
                         ExactArray.from_raw(F, action, shape=(m, m, m)))


def make_carrier(ta: TorsionAlgebra, kind: str, fa: FunctionAlgebra | None = None) -> ModuleCarrier:
    if kind in (VECTOR_FIELDS, "C"):
        return vector_field_carrier(ta, fa)
    if kind in (FUNCTIONS, "A"):
        return function_carrier(ta, fa)
    raise ValueError(f"unknown carrier {kind!r}")


class DForm:
    """Multilinear map ``C^degree -> M``; degree 0 forms are elements of ``M``."""

    __slots__ = ("carrier", "degree", "data")

    def __init__(self, carrier: ModuleCarrier, degree: int, data: ExactArray):
        expected = (carrier.n,) * degree + (carrier.dim,)
        if data.shape != expected:
            raise DimensionMismatch(f"degree {degree} form needs shape {expected}, got {data.shape}")
        self.carrier = carrier
        self.degree = degree
        self.data = data

    @classmethod
    def zero(cls, carrier, degree):
        return cls(carrier, degree, ExactArray.zeros(carrier.field, (carrier.n,) * degree + (carrier.dim,)))

    def __call__(self, *args: Cochain) -> ExactArray:
        if len(args) != self.degree:
            raise DimensionMismatch(f"degree {self.degree} form takes {self.degree} arguments")
        t = self.data
        for a in args:
            t = a.data.tensordot(t, axes=([0], [0]))
        return t

    def _new(self, degree, data):
        return DForm(self.carrier, degree, data)

    def __add__(self, other):
        return self._new(self.degree, self.data + other.data)

    def __sub__(self, other):
        return self._new(self.degree, self.data - other.data)

    def __neg__(self):
        return self._new(self.degree, -self.data)

    def __mul__(self, c):
        return self._new(self.degree, self.data.scale(c))

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, DForm):
            return NotImplemented
        return self.degree == other.degree and self.data == other.data

    __hash__ = None

    def is_zero(self):
        return self.data.is_zero()

    def permute_inputs(self, sigma):
        k = self.degree
        inverse = [0] * k
        for t, s in enumerate(sigma):
            inverse[s] = t
        return self._new(k, self.data.transpose(inverse + [k]))

    def __repr__(self):
        return f"DForm(degree={self.degree}, carrier={self.carrier.kind!r})"


def random_form(carrier: ModuleCarrier, degree: int, rng: np.random.Generator, alternating=True) -> DForm:
    shape = (carrier.n,) * degree + (carrier.dim,)
    F = carrier.field
    ints = rng.integers(-3, 4, size=shape) if not F.is_prime else rng.integers(0, F.modulus, size=shape)
    omega = DForm(carrier, degree, ExactArray.from_ints(F, ints))
    return alternate(omega) if alternating else omega


# -- invariants ------------------------------------------------------------

def is_alternating(omega: DForm) -> Verdict:
    """Adjacent transpositions negate the form; witness is the first offending slot pair."""
    k = omega.degree
    for i in range(k - 1):
        sigma = list(range(k))
        sigma[i], sigma[i + 1] = sigma[i + 1], sigma[i]
        diff = omega + omega.permute_inputs(sigma)
        idx = diff.data.nonzero_index()
        if idx is not None:
            return Verdict(False, {"slots": [i, i + 1], "args": list(idx[:-1])})
    return Verdict(True)


def _replace_slot(data: ExactArray, k: int, mat_in_out: ExactArray, slot: int) -> ExactArray:
    """Precompose input ``slot`` (0-based) with the map whose ``[in, out]`` array is given."""
    t = mat_in_out.tensordot(data, axes=([1], [slot]))
    perm = list(range(1, slot + 1)) + [0] + list(range(slot + 1, k + 1))
    return t.transpose(perm)


def _post_apply(data: ExactArray, k: int, mat_out_in: ExactArray) -> ExactArray:
    return data.tensordot(mat_out_in, axes=([k], [1]))


def a_multilinearity(omega: DForm) -> Verdict:
    """``omega(.., phi Z, ..) = phi . omega(.., Z, ..)`` for every function basis element and slot."""
    c = omega.carrier
    k = omega.degree
    for a, phi in enumerate(c.fa.basis):
        rhs = _post_apply(omega.data, k, c.action[a])
        phi_in_out = phi.matrix.transpose([1, 0])
        for s in range(k):
            idx = (_replace_slot(omega.data, k, phi_in_out, s) - rhs).nonzero_index()
            if idx is not None:
                return Verdict(False, {"function": a, "slot": s, "args": list(idx[:-1])})
    return Verdict(True)


# -- differentials ---------------------------------------------------------

def lam(carrier: ModuleCarrier, X: Cochain, u: ExactArray) -> ExactArray:
    """Left quasi-action ``lambda(X, u) = D_X u``."""
    return carrier.derivation(X).tensordot(u, axes=([1], [0]))


def rho(carrier: ModuleCarrier, u: ExactArray, X: Cochain) -> ExactArray:
    """Right quasi-action with the signed braiding, ``rho(u, X) = -D_X u``."""
    return -lam(carrier, X, u)


def hoch_form_differential(omega: DForm) -> DForm:
    """Hochschild quasi-differential with values in the (lambda, rho) quasi-bimodule.

    For ``k = omega.degree`` inputs::

        d omega(a_1..a_{k+1}) = lambda(a_1, omega(a_2..))
                                + sum_i (-1)^i omega(.., [a_i, a_{i+1}], ..)
                                + (-1)^{k-1} rho(omega(a_1..a_k), a_{k+1})

    The result is in general not alternating.
    """
    c = omega.carrier
    k = omega.degree
    # D-tensor contracted with omega's output: axes [X, out, a_1..a_k]
    Dw = c.D.tensordot(omega.data, axes=([2], [k]))
    # lambda term: X sits in slot 1, omega's arguments follow
    out = Dw.transpose([0] + list(range(2, k + 2)) + [1])
    B = c.ta.lie_bracket.data  # [a, b, out]
    for i in range(1, k + 1):
        t = B.tensordot(omega.data, axes=([2], [i - 1]))
        perm = list(range(2, i + 1)) + [0, 1] + list(range(i + 1, k + 2))
        term = t.transpose(perm)
        out = out - term if i % 2 else out + term
    # rho term: rho(u, X) = -D_X u, with X in the last slot
    rho_term = -Dw.transpose(list(range(2, k + 2)) + [0, 1])
    out = out - rho_term if (k - 1) % 2 else out + rho_term
    return DForm(c, k + 1, out)


def alternate(omega: DForm) -> DForm:
    """Sum over all input permutations with signs, no normalization."""
    k = omega.degree
    if k <= 1:
        return omega
    out = None
    for perm in itertools.permutations(range(k)):
        term = omega.permute_inputs(perm)
        term = term if permutation_sign(perm) > 0 else -term
        out = term if out is None else out + term
    return out


def ce_differential(omega: DForm, normalized: bool = True) -> DForm:
    """Alternating projection of the Hochschild quasi-differential.

    With ``normalized`` (the default) the alternation of ``d omega`` is
    divided by ``k!`` for a degree ``k`` input, which amounts to summing over
    ``(1, k)``-shuffles only.  Otherwise the full signed sum over all
    permutations is returned, which carries an extra ``k!`` on alternating
    inputs and so depends on the degree.
    """
    k = omega.degree
    full = alternate(hoch_form_differential(omega))
    return full * Fraction(1, math.factorial(k)) if normalized else full


def explicit_differential(omega: DForm) -> DForm:
    """The textbook exterior derivative with values in ``M``::

        sum_i (-1)^i D_{a_i} omega(..^i..) + sum_{i<j} (-1)^{i+j} omega([a_i, a_j], ..^i..^j..)

    (0-based ``i, j``).
    """
    c = omega.carrier
    k = omega.degree
    Dw = c.D.tensordot(omega.data, axes=([2], [k]))  # [X, out, a..]
    out = ExactArray.zeros(c.field, (c.n,) * (k + 1) + (c.dim,))
    for i in range(k + 1):
        # X in slot i, remaining arguments in order
        perm_src = [0] + list(range(2, k + 2))  # positions of (X, a_1..a_k) in Dw
        order = perm_src[1:i + 1] + [perm_src[0]] + perm_src[i + 1:]
        term = Dw.transpose(order + [1])
        out = out - term if i % 2 else out + term
    B = c.ta.lie_bracket.data
    if k >= 1:
        t = B.tensordot(omega.data, axes=([2], [0]))  # [a_i, a_j, rest.., out]
        for i in range(k + 1):
            for j in range(i + 1, k + 1):
                # position of each final argument slot within t's axes
                src = []
                rest = iter(range(2, k + 1))
                for s in range(k + 1):
                    src.append(0 if s == i else 1 if s == j else next(rest))
                term = t.transpose(src + [k + 1])
                out = out - term if (i + j) % 2 else out + term
    return DForm(c, k + 1, out)


def cyclic_formula(omega: DForm) -> DForm:
    """``sum_cycl D_X omega(Y, Z) - omega([X, Y], Z)`` for a 2-form."""
    if omega.degree != 2:
        raise DimensionMismatch("the cyclic formula is for 2-forms")
    c = omega.carrier
    Dw = c.D.tensordot(omega.data, axes=([2], [2]))  # [X, out, Y, Z]
    base = Dw.transpose([0, 2, 3, 1])
    B = c.ta.lie_bracket.data
    br = B.tensordot(omega.data, axes=([2], [0]))  # [X, Y, Z, out]
    single = DForm(c, 3, base - br)
    return single + single.permute_inputs([1, 2, 0]) + single.permute_inputs([2, 0, 1])


def ddu_check(carrier: ModuleCarrier) -> Verdict:
    """``d d u (X, Y) = K(X, Y) u`` for the Hochschild quasi-differential on basis ``X, Y, u``.

    Witness: ``{"X": x, "Y": y, "u": index of the first differing component}``.
    """
    A = carrier.ta.algebra
    F = carrier.field
    for b in range(carrier.dim):
        e = np.zeros(carrier.dim, dtype=np.int64)
        e[b] = 1
        u = DForm(carrier, 0, ExactArray.from_ints(F, e))
        ddu = hoch_form_differential(hoch_form_differential(u))
        for x in range(A.dim):
            for y in range(A.dim):
                K = curvature_K(carrier.ta, A.basis(x), A.basis(y), carrier)
                diff = ddu.data[x, y] - K[:, b]
                idx = diff.nonzero_index()
                if idx is not None:
                    return Verdict(False, {"X": x, "Y": y, "u": b, "component": idx[0]})
    return Verdict(True)


def curvature_K(ta: TorsionAlgebra, X: Cochain, Y: Cochain, carrier: ModuleCarrier) -> ExactArray:
    """``2 (D_X D_Y - D_Y D_X - D_{[X, Y]})`` on ``M``, as an ``[out, in]`` array."""
    DX, DY = carrier.derivation(X), carrier.derivation(Y)
    DXY = carrier.derivation(ta.lie(X, Y))
    comm = DX.tensordot(DY, axes=([1], [0])) - DY.tensordot(DX, axes=([1], [0]))
    return (comm - DXY).scale(2)


def interior(X: Cochain, omega: DForm) -> DForm:
    if omega.degree < 1:
        raise DegreeUnderflow("interior product of a 0-form")
    return DForm(omega.carrier, omega.degree - 1, X.data.tensordot(omega.data, axes=([0], [0])))


def lie_derivative(X: Cochain, omega: DForm) -> DForm:
    """``(L_X omega)(Z..) = D_X(omega(Z..)) - sum_i omega(.., [X, Z_i], ..)``."""
    c = omega.carrier
    k = omega.degree
    out = _post_apply(omega.data, k, c.derivation(X))
    ad = c.bracket_matrix(X)  # [in, out]
    for s in range(k):
        out = out - _replace_slot(omega.data, k, ad, s)
    return DForm(c, k, out)


def cartan_rhs(X: Cochain, omega: DForm, d=ce_differential) -> DForm:
    """``d i_X omega + i_X d omega`` (the first term is absent for 0-forms)."""
    rhs = interior(X, d(omega))
    if omega.degree >= 1:
        rhs = rhs + d(interior(X, omega))
    return rhs


def proportionality(a: ExactArray, b: ExactArray):
    """Scalar ``c`` with ``a == c * b``; ``None`` if not proportional, ``"any"`` if both vanish."""
    idx = b.nonzero_index()
    if idx is None:
        return "any" if a.is_zero() else None
    F = a.field
    c = F.div(a[idx], b[idx])
    return c if a == b.scale(c) else None


@dataclass
class ConstantReport:
    """Measured constant ``c`` with ``lhs == c * rhs`` over a family of samples."""

    constant: object
    by_degree: dict
    consistent: bool
    samples: int

    def to_dict(self, field):
        def fmt(c):
            return c if c in (None, "any") else field.format_raw(c)
        return {"constant": fmt(self.constant), "consistent": self.consistent, "samples": self.samples,
                "by_degree": {str(k): fmt(v) for k, v in sorted(self.by_degree.items())}}


def measure_constant(pairs) -> ConstantReport:
    """Fold ``(degree, lhs, rhs)`` triples into one constant, if there is one."""
    constant = "any"
    by_degree = {}
    consistent = True
    count = 0
    for degree, lhs, rhs in pairs:
        count += 1
        c = proportionality(lhs, rhs)
        if c is None:
            consistent = False
            by_degree[degree] = None
            continue
        if c == "any":
            continue
        prev = by_degree.get(degree, "any")
        if prev not in ("any", c):
            by_degree[degree] = None
            consistent = False
        elif prev == "any":
            by_degree[degree] = c
        if constant == "any":
            constant = c
        elif constant != c:
            consistent = False
    if not consistent:
        constant = None
    return ConstantReport(constant, by_degree, consistent, count)


def homotopy_comparison(carrier: ModuleCarrier, forms, elements=None) -> ConstantReport:
    """Compare ``d i_X + i_X d`` with ``L_X`` on the given forms and elements."""
    A = carrier.ta.algebra
    elements = elements if elements is not None else [A.basis(i) for i in range(A.dim)]
    return measure_constant(
        (omega.degree, cartan_rhs(X, omega).data, lie_derivative(X, omega).data)
        for omega in forms for X in elements)


def _constraint_images(carrier: ModuleCarrier, degree: int, data: ExactArray):
    omega = DForm(carrier, degree, data)
    parts = []
    for i in range(degree - 1):
        sigma = list(range(degree))
        sigma[i], sigma[i + 1] = sigma[i + 1], sigma[i]
        parts.append((omega + omega.permute_inputs(sigma)).data)
    for a, phi in enumerate(carrier.fa.basis):
        rhs = _post_apply(data, degree, carrier.action[a])
        phi_in_out = phi.matrix.transpose([1, 0])
        for s in range(degree):
            parts.append(_replace_slot(data, degree, phi_in_out, s) - rhs)
    return [x for p in parts for x in p.raw_list()]


def a_multilinear_forms(carrier: ModuleCarrier, degree: int) -> list:
    """Basis of the alternating ``A``-multilinear forms of the given degree (exact kernel)."""
    from .linalg import kernel_raw
    F = carrier.field
    shape = (carrier.n,) * degree + (carrier.dim,)
    size = int(np.prod(shape))
    columns = []
    for idx in range(size):
        e = np.zeros(size, dtype=np.int64)
        e[idx] = 1
        columns.append(_constraint_images(carrier, degree, ExactArray.from_ints(F, e.reshape(shape))))
    rows = [[col[r] for col in columns] for r in range(len(columns[0]))] if columns and columns[0] else []
    if not rows:
        rows = [[F.zero] * size]
    vectors, _ = kernel_raw(F, rows, size)
    return [DForm(carrier, degree, ExactArray.from_raw(F, v, shape=shape)) for v in vectors]
