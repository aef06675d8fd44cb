"""Builtin algebras, addressable by name."""
from __future__ import annotations

import re
from fractions import Fraction

import numpy as np

from .cochain import AlgebraSpec
from .errors import ValidationError
from .field import GF, QQ


def matrix_algebra_2():
    """M_2(QQ) on the matrix units e11, e12, e21, e22."""
    mu = {}
    for a in range(2):
        for b in range(2):
            for d in range(2):
                mu[(2 * a + b, 2 * b + d, 2 * a + d)] = 1
    return AlgebraSpec("m2q", QQ, 4, mu, basis_names=["e11", "e12", "e21", "e22"])


def cyclic_group_algebra(order=3):
    mu = {(a, b, (a + b) % order): 1 for a in range(order) for b in range(order)}
    return AlgebraSpec(f"qz{order}", QQ, order, mu, basis_names=[f"g{a}" for a in range(order)])


def _sl2_table(scale=1):
    # basis e, f, h with [h,e] = 2e, [h,f] = -2f, [e,f] = h
    E, F, H = 0, 1, 2
    base = {(H, E, E): 2, (E, H, E): -2, (H, F, F): -2, (F, H, F): 2, (E, F, H): 1, (F, E, H): -1}
    return {k: Fraction(v) * scale for k, v in base.items()}


def sl2():
    """sl_2(QQ) with the multiplication equal to the Lie bracket."""
    return AlgebraSpec("sl2", QQ, 3, _sl2_table(), basis_names=["e", "f", "h"])


def sl2_half():
    """sl_2(QQ) with multiplication half the bracket and the bracket itself as Lie bracket."""
    return AlgebraSpec("sl2half", QQ, 3, _sl2_table(Fraction(1, 2)), bracket=_sl2_table(),
                       basis_names=["e", "f", "h"])


# e_i e_{i+1} = e_{i+3} (indices mod 7, 1-based), all cyclic shifts of each triple
_FANO = [(i, i % 7 + 1, (i + 2) % 7 + 1) for i in range(1, 8)]


def octonions():
    """Octonions over QQ on 1, e1..e7 with the Fano-plane table e_i e_{i+1} = e_{i+3}."""
    mu = {}
    for i in range(8):
        mu[(0, i, i)] = 1
        mu[(i, 0, i)] = 1
    for i in range(1, 8):
        mu[(i, i, 0)] = -1
    for a, b, c in _FANO:
        for x, y, z in ((a, b, c), (b, c, a), (c, a, b)):
            mu[(x, y, z)] = 1
            mu[(y, x, z)] = -1
    return AlgebraSpec("octonions", QQ, 8, mu, basis_names=["1"] + [f"e{i}" for i in range(1, 8)])


def zero_algebra(dim=3):
    return AlgebraSpec(f"zero{dim}", QQ, dim, {}, basis_names=[f"z{i}" for i in range(dim)])


def poisson_sl2():
    """Zero multiplication with the sl_2 bracket as an independent Lie bracket."""
    return AlgebraSpec("poisson_sl2", QQ, 3, {}, bracket=_sl2_table(), basis_names=["e", "f", "h"])


def random_algebra(p=7, dim=2, seed=0, density=1.0):
    """Random structure constants over F_p, or small integers over QQ when ``p == 0``."""
    rng = np.random.default_rng([p, dim, seed])
    vals = rng.integers(0, p, size=(dim, dim, dim)) if p else rng.integers(-3, 4, size=(dim, dim, dim))
    if density < 1.0:
        vals = vals * (rng.random(size=vals.shape) < density)
    mu = {tuple(int(x) for x in idx): int(vals[idx]) for idx in np.ndindex(vals.shape) if vals[idx]}
    return AlgebraSpec(f"random:{p}:{dim}:{seed}", GF(p) if p else QQ, dim, mu)


BUILTINS = {
    "m2q": matrix_algebra_2,
    "qz3": cyclic_group_algebra,
    "sl2": sl2,
    "sl2half": sl2_half,
    "octonions": octonions,
    "zero3": zero_algebra,
    "poisson_sl2": poisson_sl2,
}

# associative and unital, commutator bracket by default
ASSOCIATIVE_UNITAL = ("m2q", "qz3")

_RANDOM_RE = re.compile(r"random:(\d+):(\d+):(\d+)")


def is_builtin(name: str) -> bool:
    return name in BUILTINS or _RANDOM_RE.fullmatch(name) is not None


def builtin(name: str) -> AlgebraSpec:
    """Look up a builtin; ``random:P:N:SEED`` builds a random algebra over F_P (QQ for P = 0)."""
    if name in BUILTINS:
        return BUILTINS[name]()
    m = _RANDOM_RE.fullmatch(name)
    if m:
        p, dim, seed = (int(g) for g in m.groups())
        return random_algebra(p, dim, seed)
    raise ValidationError("builtin", f"unknown builtin algebra {name!r}; known: {', '.join(BUILTINS)}, random:P:N:SEED")
