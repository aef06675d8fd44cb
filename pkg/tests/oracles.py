"""Slow, independent reference implementations used to cross-check the library.

Cochains are plain dicts ``{input index tuple: [Fraction, ...]}`` built by
evaluating on basis tuples, so nothing here touches tensordot or axis
permutations.
"""
from __future__ import annotations

import itertools
from fractions import Fraction

import sympy as sp


def as_table(f):
    """Library cochain -> {tuple: list of raw output coefficients}."""
    n = f.algebra.dim
    raw = f.coefficients()
    k = f.arity
    out = {}
    for pos, idx in enumerate(itertools.product(range(n), repeat=k)):
        out[idx] = raw[pos * n:(pos + 1) * n]
    return out


def naive_comp_i(f, g, i, n, p, q, zero):
    """``f o_i g`` by explicit evaluation; tables as returned by :func:`as_table`."""
    out = {}
    for args in itertools.product(range(n), repeat=p + q + 1):
        inner = g[args[i - 1:i + q]]
        total = [zero] * n
        for m, c in enumerate(inner):
            if c == 0:
                continue
            val = f[args[:i - 1] + (m,) + args[i + q:]]
            total = [t + c * v for t, v in zip(total, val)]
        out[args] = total
    return out


def naive_comp(f, g, n, p, q, zero):
    if p == -1:
        return {args: [zero] * n for args in itertools.product(range(n), repeat=p + q + 1)}
    out = None
    for i in range(1, p + 2):
        term = naive_comp_i(f, g, i, n, p, q, zero)
        sign = -1 if (i - 1) * q % 2 else 1
        if out is None:
            out = {k: [sign * x for x in v] for k, v in term.items()}
        else:
            out = {k: [a + sign * b for a, b in zip(out[k], term[k])] for k in out}
    return out


def reduce_table(table, field):
    return {k: [field.raw(x) for x in v] for k, v in table.items()}


def function_algebra_dimension(algebra) -> int:
    """Dimension of ``{phi : (phi X) Y = phi(X Y)}`` from a sympy nullspace (QQ only)."""
    n = algebra.dim
    mu = {k: sp.Rational(Fraction(v).numerator, Fraction(v).denominator) for k, v in algebra.mu.items()}
    phi = sp.Matrix(n, n, lambda i, j: sp.Symbol(f"p{i}_{j}"))
    syms = list(phi)

    def mul(x, y):
        out = [0] * n
        for (i, j, k), c in mu.items():
            out[k] += c * x[i] * y[j]
        return out

    unit = [[1 if i == j else 0 for i in range(n)] for j in range(n)]
    eqs = []
    for X in range(n):
        for Y in range(n):
            lhs = mul(list(phi * sp.Matrix(unit[X])), unit[Y])
            rhs = list(phi * sp.Matrix(mul(unit[X], unit[Y])))
            eqs += [sp.expand(a - b) for a, b in zip(lhs, rhs)]
    M = sp.Matrix([[sp.diff(e, s) for s in syms] for e in eqs])
    return len(M.nullspace())


def matrix_product(a, b):
    """Product of 2x2 matrices given as flat [e11, e12, e21, e22] coefficient lists."""
    A = sp.Matrix(2, 2, a)
    B = sp.Matrix(2, 2, b)
    return list(A * B)
