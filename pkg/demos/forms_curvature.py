"""Forms with values in vector fields or functions, and their curvature."""
import numpy as np

from algeo import builtin
from algeo.forms import (curvature_K, ddu_check, hoch_form_differential, homotopy_comparison,
                         make_carrier, random_form)
from algeo.torsion import TorsionAlgebra

rng = np.random.default_rng(0)

for name in ("m2q", "sl2", "octonions"):
    ta = TorsionAlgebra(builtin(name), validate=False)
    c = make_carrier(ta, "C")
    A = ta.algebra
    K = curvature_K(ta, A.basis(1), A.basis(2), c)
    print(f"{name}: ddu = K u holds: {bool(ddu_check(c))}, K(e1, e2) zero: {K.is_zero()}")

# d applied twice to a 0-form picks up the curvature; on sl2 it does not vanish.
ta = TorsionAlgebra(builtin("sl2"))
c = make_carrier(ta, "C")
u = random_form(c, 0, rng)
ddu = hoch_form_differential(hoch_form_differential(u))
print("sl2: ddu is zero:", ddu.is_zero())

# Cartan's formula holds up to one constant, the same at every degree.
for name in ("sl2", "m2q"):
    for kind in ("C", "A"):
        c = make_carrier(TorsionAlgebra(builtin(name)), kind)
        forms = [random_form(c, k, rng) for k in range(3)]
        rep = homotopy_comparison(c, forms)
        print(f"{name} carrier {kind}: d i_X + i_X d = {rep.constant} L_X, consistent: {rep.consistent}")
