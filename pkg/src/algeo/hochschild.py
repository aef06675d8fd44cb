"""The Hochschild quasi-complex ``(C(A), d = [mu, -])`` of a possibly non-associative algebra."""
from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .cochain import (AlgebraSpec, Cochain, Endomorphism, alt_cochain, bracket, comp,
                      jacobiator, split_mu)
from .tensor import ExactArray


class Verdict(NamedTuple):
    """Boolean outcome with the first violation found (``None`` on success)."""

    ok: bool
    witness: object = None

    def __bool__(self):
        return self.ok


class QuasiComplex:
    """Cochains of ``algebra`` with the quasi-differential ``ad_mu``.

    The identity cochain and the curvature are computed once at construction.
    """

    def __init__(self, algebra: AlgebraSpec):
        self.algebra = algebra
        self.mu = algebra.mu_cochain
        self.identity = algebra.identity()
        self.alpha = comp(self.mu, self.mu)

    def __repr__(self):
        return f"QuasiComplex({self.algebra.name!r})"


def differential(qc: QuasiComplex, f: Cochain) -> Cochain:
    return bracket(qc.mu, f)


def classical_differential(qc: QuasiComplex, f: Cochain) -> Cochain:
    """The Hochschild/Gerstenhaber sign convention ``(-1)^p [mu, f]``."""
    d = differential(qc, f)
    return -d if f.degree % 2 else d


def curvature(qc: QuasiComplex) -> Cochain:
    """The associator ``(xy)z - x(yz)`` as a degree 2 cochain."""
    return qc.alpha


def is_associative(qc: QuasiComplex) -> bool:
    return qc.alpha.is_zero()


def is_pre_lie(qc: QuasiComplex) -> bool:
    """``Alt(alpha) = 0``, cross-checked against Jacobi for the commutator."""
    by_alt = alt_cochain(qc.alpha).is_zero()
    _, skew = split_mu(qc.mu)
    by_jacobi = jacobiator(skew).is_zero()
    if by_alt != by_jacobi:
        raise AssertionError(f"Alt(alpha) = 0 is {by_alt} but the commutator Jacobi test gives {by_jacobi}")
    return by_alt


def bianchi_check(qc: QuasiComplex) -> bool:
    return differential(qc, qc.alpha).is_zero()


def square_formula_check(qc: QuasiComplex, s: Cochain) -> bool:
    """``d(d s) == [alpha, s]``."""
    return differential(qc, differential(qc, s)) == bracket(qc.alpha, s)


def basis_cochain(algebra: AlgebraSpec, degree: int, index: int) -> Cochain:
    """The cochain with a single 1 at flat position ``index`` (C order)."""
    shape = (algebra.dim,) * (degree + 2)
    v = np.zeros(int(np.prod(shape)), dtype=np.int64)
    v[index] = 1
    return Cochain(algebra, degree, ExactArray.from_ints(algebra.field, v.reshape(shape)))


def iterate_differential(qc: QuasiComplex, f: Cochain, times: int) -> Cochain:
    for _ in range(times):
        f = differential(qc, f)
    return f


@dataclass
class CoherenceReport:
    """Bounded search for the smallest ``N`` with ``d^N = 0``.

    ``failures`` maps each failing order to the first ``(degree, index)``
    basis cochain with ``d^N f != 0``; ``witness`` is the failure at the
    largest order tested when no order passes.
    """

    max_degree_tested: int
    max_order_tested: int
    order: int | None
    failures: dict
    witness: tuple | None = None

    @property
    def found(self):
        return self.order is not None

    def verify_witness(self, qc: QuasiComplex) -> bool:
        """Recompute ``d^N f`` for every recorded failure; True iff all are nonzero."""
        for order, (degree, index) in self.failures.items():
            f = basis_cochain(qc.algebra, degree, index)
            if iterate_differential(qc, f, order).is_zero():
                return False
        return True

    def to_dict(self):
        return {
            "max_degree_tested": self.max_degree_tested,
            "max_order_tested": self.max_order_tested,
            "order": self.order if self.order is not None else "none found",
            "failures": {str(k): {"degree": d, "index": i} for k, (d, i) in sorted(self.failures.items())},
            "witness": None if self.witness is None else
            {"order": self.witness[0], "degree": self.witness[1], "index": self.witness[2]},
        }


def _first_nonvanishing(qc, order, max_degree):
    n = qc.algebra.dim
    for degree in range(-1, max_degree + 1):
        for index in range(n ** (degree + 2)):
            f = basis_cochain(qc.algebra, degree, index)
            if not iterate_differential(qc, f, order).is_zero():
                return degree, index
    return None


def coherence_order(qc: QuasiComplex, max_order: int, max_degree: int) -> CoherenceReport:
    """Smallest ``N <= max_order`` with ``d^N f = 0`` on every basis cochain of degree ``<= max_degree``."""
    if max_order < 1 or max_degree < 0:
        raise ValueError("need max_order >= 1 and max_degree >= 0")
    failures = {}
    for order in range(1, max_order + 1):
        hit = _first_nonvanishing(qc, order, max_degree)
        if hit is None:
            return CoherenceReport(max_degree, max_order, order, failures)
        failures[order] = hit
    witness = (max_order, *failures[max_order])
    return CoherenceReport(max_degree, max_order, None, failures, witness)


def left_regular(qc: QuasiComplex, x: Cochain) -> Endomorphism:
    """Matrix of ``y -> x y``."""
    t = x.data.tensordot(qc.mu.data, axes=([0], [0]))  # [j, k]: e_k coefficient of x e_j
    return Endomorphism(qc.algebra, t.transpose([1, 0]))


class RepCurvatures(NamedTuple):
    sigma: Endomorphism
    kappa: Endomorphism


def rep_curvatures(qc: QuasiComplex, x: Cochain, y: Cochain) -> RepCurvatures:
    """Defects of the left regular map as a representation and as a Lie map.

    ``sigma = L(x)L(y) - L(xy)`` and ``kappa = [L(x), L(y)] - L(xy - yx)``.
    """
    A = qc.algebra
    Lx, Ly = left_regular(qc, x), left_regular(qc, y)
    xy, yx = A.mul(x, y), A.mul(y, x)
    sigma = Lx @ Ly - left_regular(qc, xy)
    kappa = Lx @ Ly - Ly @ Lx - left_regular(qc, xy - yx)
    for j in range(A.dim):
        z = A.basis(j)
        if sigma(z) != -qc.alpha(x, y, z):
            raise AssertionError(f"sigma(x,y)(e{j}) != -alpha(x,y,e{j})")
    return RepCurvatures(sigma, kappa)
