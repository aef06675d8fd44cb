"""Associators as curvature: the cochain calculus on a few small algebras.

Run with ``python3 demos/associators.py``.
"""
import itertools

from algeo import builtin
from algeo.cochain import alt_cochain, bracket, comp, format_element, split_mu
from algeo.hochschild import QuasiComplex, coherence_order, differential, is_associative, is_pre_lie

for name in ("m2q", "sl2", "octonions"):
    qc = QuasiComplex(builtin(name))
    print(f"{name}: associative={is_associative(qc)} pre_lie={is_pre_lie(qc)}")

# In a Lie algebra the associator is a double bracket.
sl2 = builtin("sl2")
alpha = comp(sl2.mu_cochain, sl2.mu_cochain)
e, f, h = (sl2.basis(i) for i in range(3))
print("alpha(e, f, h) =", format_element(alpha(e, f, h)))
print("[f, [h, e]]    =", format_element(sl2.mul(f, sl2.mul(h, e))))

# d = [mu, -] squares to [alpha, -]; on M2 that is zero, on the octonions it is not.
for name in ("m2q", "octonions"):
    qc = QuasiComplex(builtin(name))
    x = qc.algebra.basis(1)
    dd = differential(qc, differential(qc, x))
    print(f"{name}: d^2 e1 == [alpha, e1]: {dd == bracket(qc.alpha, x)}, zero: {dd.is_zero()}")

# Symmetric and skew parts of the matrix product.
m2 = builtin("m2q")
plus, minus = split_mu(m2.mu_cochain)
print("Alt of the Jordan associator vanishes:", alt_cochain(comp(plus, plus)).is_zero())
print("Alt of the Lie associator vanishes:   ", alt_cochain(comp(minus, minus)).is_zero())

oct_alpha = QuasiComplex(builtin("octonions")).alpha
print("octonions: Alt(alpha) == 6 alpha:", alt_cochain(oct_alpha) == oct_alpha * 6)
A = builtin("octonions")
nonzero = next((i, j, k) for i, j, k in itertools.product(range(1, 8), repeat=3)
               if not oct_alpha(A.basis(i), A.basis(j), A.basis(k)).is_zero())
print("first nonzero octonion associator on", [A.basis_names[i] for i in nonzero])

for name in ("zero3", "m2q", "octonions"):
    qc = QuasiComplex(builtin(name))
    print(name, "coherence:", coherence_order(qc, 4, 1).to_dict()["order"])
