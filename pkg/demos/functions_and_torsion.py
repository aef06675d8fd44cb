"""Functions on an algebra read as vector fields with a connection."""
from algeo import builtin
from algeo.cochain import format_element
from algeo.torsion import TorsionAlgebra, find_unit, function_algebra, is_regular, theorem1_suite

for name in ("m2q", "qz3", "sl2half", "octonions", "zero3", "poisson_sl2"):
    ta = TorsionAlgebra(builtin(name), validate=False)
    fa = function_algebra(ta)
    print(f"{name:12s} functions: {fa.dimension}  regular: {bool(is_regular(ta, fa))}  "
          f"bracket is Lie: {ta.bracket_is_lie}")

# On M2 every function is left multiplication by phi(1).
ta = TorsionAlgebra(builtin("m2q"))
fa = function_algebra(ta)
one = find_unit(ta.algebra)
for phi in fa.basis:
    print("phi(1) =", format_element(phi(one)))

report = theorem1_suite(ta)
print("all six claims hold on M2:", report.all_pass)

# Zero product with the sl2 bracket is not regular: torsion is -[,] and is not A-bilinear.
bad = theorem1_suite(TorsionAlgebra(builtin("poisson_sl2")))
for k, v in sorted(bad.claims.items()):
    print(f"claim {k}: {'ok' if v.ok else 'fails at ' + str(v.witness)}")
