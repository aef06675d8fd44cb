"""Exact calculus of Hochschild quasi-complexes and torsion algebras."""
from ._version import __version__
from .algebra_file import algebra_digest, dump_algebra, load_algebra, parse_algebra
from .cochain import (AlgebraSpec, Cochain, Endomorphism, alt_cochain, associator3,
                      associator_by_insertions, bracket, budget, comp, comp_i, eval_cochain,
                      graded_alt3, insert_pair, random_cochain, set_budget, split_mu)
from .errors import (AlgeoError, ArityMismatch, BudgetExceeded, CarrierClosure, DegreeUnderflow,
                     DimensionMismatch, DivisionByZero, MixedAlgebras, MixedFields, ParseError,
                     SlotCollision, SlotOutOfRange, Truncated, ValidationError)
from .field import GF, QQ, FieldScalar, FieldSpec, field_from_string, scalar_arith, scalar_from_string
from .forms import (DForm, ModuleCarrier, ce_differential, curvature_K, hoch_form_differential,
                    interior, lie_derivative, make_carrier)
from .gerstenhaber import GerstenhaberCarrier, gerstenhaber_truncation
from .hochschild import (QuasiComplex, bianchi_check, classical_differential, coherence_order,
                         curvature, differential, is_associative, is_pre_lie, square_formula_check)
from .library import builtin
from .linalg import Matrix, expand_in_basis, kernel_basis, rref
from .tensor import ExactArray
from .torsion import (FunctionAlgebra, TorsionAlgebra, function_algebra, is_function, is_regular,
                      lemma_two_of_three, theorem1_suite, torsion_tensor, vf_action)
