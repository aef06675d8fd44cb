"""Torsion algebras ``(C, D, [,])``: torsion, the algebra of functions, regularity.

The multiplication ``mu`` is read as a connection, ``D_X Y = mu(X, Y)``.
A *function* is an endomorphism ``phi`` with ``D_{phi X} Y = phi(D_X Y)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from .cochain import (AlgebraSpec, Cochain, Endomorphism, check_lie_bracket, comp_i,
                      split_mu)
from .errors import ValidationError
from .hochschild import QuasiComplex, Verdict, left_regular
from .linalg import NotInSpan, kernel_raw
from .tensor import ExactArray


class TorsionAlgebra:
    """An algebra together with a Lie bracket (the commutator unless one is supplied).

    With ``validate=False`` a bracket that fails Jacobi is accepted and
    ``bracket_is_lie`` records the outcome; the function algebra and the
    vector-field carrier make sense without it.
    """

    def __init__(self, algebra: AlgebraSpec, validate: bool = True):
        self.algebra = algebra
        self.qc = QuasiComplex(algebra)
        _, skew = split_mu(algebra.mu_cochain)
        supplied = algebra.bracket_cochain
        self.lie_bracket = supplied if supplied is not None else skew
        self.bracket_supplied = supplied is not None
        try:
            check_lie_bracket(self.lie_bracket)
            self.bracket_is_lie = True
        except ValidationError:
            if validate:
                raise
            self.bracket_is_lie = False
        self.torsion = skew - self.lie_bracket

    @property
    def mu(self) -> Cochain:
        return self.qc.mu

    @property
    def alpha(self) -> Cochain:
        return self.qc.alpha

    def D(self, X: Cochain) -> Endomorphism:
        return left_regular(self.qc, X)

    def lie(self, X: Cochain, Y: Cochain) -> Cochain:
        return self.lie_bracket(X, Y)

    def __repr__(self):
        return f"TorsionAlgebra({self.algebra.name!r})"


def torsion_tensor(ta: TorsionAlgebra) -> Cochain:
    """``T(X, Y) = D_X Y - D_Y X - [X, Y]``."""
    return ta.torsion


def apply_after(phi: Endomorphism, f: Cochain) -> Cochain:
    """``phi o f``."""
    return comp_i(phi.as_cochain(), f, 1)


def apply_in_slot(f: Cochain, phi: Endomorphism, slot: int) -> Cochain:
    """``f`` with ``phi`` applied to input ``slot`` (1-based)."""
    return comp_i(f, phi.as_cochain(), slot)


def function_constraints(algebra: AlgebraSpec):
    """Raw rows of the linear system ``D_{phi X} Y - phi(D_X Y) = 0``.

    Rows are indexed by ``(X, Y, k)``, columns by the matrix entry
    ``phi[a, b]`` at position ``a * n + b``.
    """
    n = algebra.dim
    F = algebra.field
    mu = algebra.mu
    by_left = {}
    for (i, j, k), c in mu.items():
        by_left.setdefault((i, j), []).append((k, c))
    rows = []
    for X in range(n):
        for Y in range(n):
            block = [[F.zero] * (n * n) for _ in range(n)]
            # D_{phi X} Y = sum_a phi[a, X] mu(e_a, e_Y)
            for a in range(n):
                for k, c in by_left.get((a, Y), ()):
                    block[k][a * n + X] = F.add(block[k][a * n + X], c)
            # phi(D_X Y) = sum_b mu[X, Y, b] phi[:, b]
            for b, c in by_left.get((X, Y), ()):
                for k in range(n):
                    block[k][k * n + b] = F.sub(block[k][k * n + b], c)
            rows.extend(block)
    return rows


@dataclass
class FunctionAlgebra:
    """Kernel basis of the function condition and its multiplication table.

    ``table[a][b]`` holds the coordinates of ``basis[a] @ basis[b]``.
    """

    parent: TorsionAlgebra
    basis: list
    free_columns: list
    table: list

    @property
    def dimension(self):
        return len(self.basis)

    def coordinates(self, phi: Endomorphism):
        """Coordinates of ``phi`` in the basis; raises NotInSpan if ``phi`` is not a function."""
        F = self.parent.algebra.field
        flat = phi.entries()
        coords = [flat[c] for c in self.free_columns]
        rebuilt = [F.zero] * len(flat)
        for c, b in zip(coords, self.basis):
            if c:
                for idx, v in enumerate(b.entries()):
                    if v:
                        rebuilt[idx] = F.add(rebuilt[idx], F.mul(c, v))
        if rebuilt != flat:
            raise NotInSpan([F.sub(x, y) for x, y in zip(flat, rebuilt)])
        return coords

    def contains(self, phi: Endomorphism) -> bool:
        try:
            self.coordinates(phi)
        except NotInSpan:
            return False
        return True

    def combine(self, coords) -> Endomorphism:
        A = self.parent.algebra
        out = Endomorphism.zero(A)
        for c, b in zip(coords, self.basis):
            if c:
                out = out + b * c
        return out


def function_algebra(ta: TorsionAlgebra) -> FunctionAlgebra:
    A = ta.algebra
    n = A.dim
    rows = function_constraints(A)
    vectors, pivots = kernel_raw(A.field, rows, n * n)
    basis = [Endomorphism(A, ExactArray.from_raw(A.field, v, shape=(n, n))) for v in vectors]
    free = [c for c in range(n * n) if c not in set(pivots)]
    fa = FunctionAlgebra(ta, basis, free, [])
    table = []
    for phi in basis:
        row = []
        for psi in basis:
            try:
                row.append(fa.coordinates(phi @ psi))
            except NotInSpan as exc:
                raise ValidationError("function_algebra.closure", "product of functions left the kernel") from exc
        table.append(row)
    fa.table = table
    return fa


def is_function(ta: TorsionAlgebra, phi: Endomorphism) -> Verdict:
    """Direct check of ``D_{phi X} Y = phi(D_X Y)``; witness is the first failing ``(X, Y)``."""
    mu = ta.mu
    lhs = apply_in_slot(mu, phi, 1)
    rhs = apply_after(phi, mu)
    idx = (lhs - rhs).data.nonzero_index()
    return Verdict(True) if idx is None else Verdict(False, idx[:2])


def vf_action(ta: TorsionAlgebra, X: Cochain, phi: Endomorphism) -> Endomorphism:
    """``X . phi = [D_X, phi]``."""
    DX = ta.D(X)
    return DX @ phi - phi @ DX


class TwoOfThree(NamedTuple):
    r_ii: Cochain
    r_iii: Cochain
    r_function: Cochain


def lemma_two_of_three(ta: TorsionAlgebra, X: Cochain, Y: Cochain, phi: Endomorphism) -> TwoOfThree:
    """Residuals in the decomposition of ``T(X, phi Y) - phi T(X, Y)``.

    ``r_ii = D_X(phi Y) - phi D_X Y - (X.phi) Y`` and
    ``r_iii = (X.phi) Y + phi [X, Y] - [X, phi Y]``.  The extra term
    ``r_function = phi(D_Y X) - D_{phi Y} X`` vanishes exactly when the
    function condition holds at ``(Y, X)``; the three always sum to
    ``T(X, phi Y) - phi T(X, Y)``.
    """
    mul, lie = ta.algebra.mul, ta.lie
    Xphi = vf_action(ta, X, phi)
    phiY = phi(Y)
    r_ii = mul(X, phiY) - phi(mul(X, Y)) - Xphi(Y)
    r_iii = Xphi(Y) + phi(lie(X, Y)) - lie(X, phiY)
    r_fn = phi(mul(Y, X)) - mul(phiY, X)
    T = ta.torsion
    if T(X, phiY) - phi(T(X, Y)) != r_ii + r_iii + r_fn:
        raise AssertionError("torsion decomposition identity failed")
    return TwoOfThree(r_ii, r_iii, r_fn)


def _linearity_defects(f: Cochain, phi: Endomorphism, slots):
    """Yield ``(slot, index)`` for the first failure of ``f(.. phi Z_s ..) = phi f(..)``."""
    rhs = apply_after(phi, f)
    for s in slots:
        idx = (apply_in_slot(f, phi, s) - rhs).data.nonzero_index()
        if idx is not None:
            yield s, idx[:-1]


def is_regular(ta: TorsionAlgebra, fa: FunctionAlgebra) -> Verdict:
    """Torsion and associator are A-linear in their first two slots."""
    for name, tensor in (("torsion", ta.torsion), ("associator", ta.alpha)):
        for a, phi in enumerate(fa.basis):
            for slot, idx in _linearity_defects(tensor, phi, (1, 2)):
                return Verdict(False, {"tensor": name, "function": a, "slot": slot, "args": list(idx)})
    return Verdict(True)


CLAIMS = {
    1: "X.phi is a function",
    2: "X acts as a derivation on functions",
    3: "associator is A-linear in the first two slots",
    4: "[X, phi Y] = phi [X, Y] + (X.phi) Y",
    5: "D_X(phi Y) = (X.phi) Y + phi D_X Y",
    6: "torsion is A-bilinear",
}


@dataclass
class TheoremReport:
    regular: bool
    claims: dict  # claim number -> Verdict

    @property
    def all_pass(self):
        return all(v.ok for v in self.claims.values())


def theorem1_suite(ta: TorsionAlgebra, fa: FunctionAlgebra | None = None) -> TheoremReport:
    """Check the six consequences of regularity on all basis tuples."""
    if fa is None:
        fa = function_algebra(ta)
    A = ta.algebra
    n = A.dim
    elems = [A.basis(i) for i in range(n)]
    actions = [[vf_action(ta, X, phi) for phi in fa.basis] for X in elems]
    claims = {}

    def first(gen):
        return next((w for w in gen if w is not None), None)

    claims[1] = first({"X": x, "function": a} if not is_function(ta, actions[x][a]) else None
                      for x in range(n) for a in range(fa.dimension))
    claims[2] = first(
        {"X": x, "functions": [a, b]}
        if vf_action(ta, elems[x], fa.basis[a] @ fa.basis[b])
        != actions[x][a] @ fa.basis[b] + fa.basis[a] @ actions[x][b] else None
        for x in range(n) for a in range(fa.dimension) for b in range(fa.dimension))
    claims[3] = first({"function": a, "slot": s, "args": list(i)}
                      for a, phi in enumerate(fa.basis)
                      for s, i in _linearity_defects(ta.alpha, phi, (1, 2)))
    lie, mul = ta.lie, A.mul
    claims[4] = first(
        {"X": x, "Y": y, "function": a}
        if lie(elems[x], phi(elems[y])) != phi(lie(elems[x], elems[y])) + actions[x][a](elems[y]) else None
        for a, phi in enumerate(fa.basis) for x in range(n) for y in range(n))
    claims[5] = first(
        {"X": x, "Y": y, "function": a}
        if mul(elems[x], phi(elems[y])) != actions[x][a](elems[y]) + phi(mul(elems[x], elems[y])) else None
        for a, phi in enumerate(fa.basis) for x in range(n) for y in range(n))
    claims[6] = first({"function": a, "slot": s, "args": list(i)}
                      for a, phi in enumerate(fa.basis)
                      for s, i in _linearity_defects(ta.torsion, phi, (1, 2)))
    verdicts = {k: Verdict(w is None, w) for k, w in claims.items()}
    return TheoremReport(bool(is_regular(ta, fa)), verdicts)


def find_unit(algebra: AlgebraSpec) -> Cochain | None:
    """Two-sided unit, solved exactly; ``None`` if the algebra has none."""
    n = algebra.dim
    F = algebra.field
    # unknown u: sum_i u_i mu(e_i, e_j) = e_j and sum_i u_i mu(e_j, e_i) = e_j
    rows = []
    for j in range(n):
        for k in range(n):
            left = [algebra.mu.get((i, j, k), F.zero) for i in range(n)]
            right = [algebra.mu.get((j, i, k), F.zero) for i in range(n)]
            target = F.one if j == k else F.zero
            rows.append(left + [F.neg(target)])
            rows.append(right + [F.neg(target)])
    vectors, _ = kernel_raw(F, rows, n + 1)
    sol = next((v for v in vectors if v[n] != 0), None)
    if sol is None:
        return None
    scale = F.inv(sol[n])
    return algebra.element([F.mul(x, scale) for x in sol[:n]])


def left_nucleus_basis(algebra: AlgebraSpec):
    """Basis of ``{c : (c X) Y = c (X Y) for all X, Y}`` as raw coordinate vectors."""
    n = algebra.dim
    F = algebra.field
    mu = algebra.mu
    rows = []
    for X in range(n):
        for Y in range(n):
            for k in range(n):
                row = [F.zero] * n
                for c in range(n):
                    # (e_c e_X) e_Y - e_c (e_X e_Y), k-th component
                    s = F.zero
                    for m in range(n):
                        s = F.add(s, F.mul(mu.get((c, X, m), F.zero), mu.get((m, Y, k), F.zero)))
                        s = F.sub(s, F.mul(mu.get((X, Y, m), F.zero), mu.get((c, m, k), F.zero)))
                    row[c] = s
                rows.append(row)
    vectors, _ = kernel_raw(F, rows, n)
    return vectors
