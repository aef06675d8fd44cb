import itertools

import numpy as np
import pytest

from algeo.errors import CarrierClosure, DegreeUnderflow
from algeo.forms import (DForm, a_multilinear_forms, a_multilinearity, alternate, ce_differential,
                         curvature_K, cyclic_formula, ddu_check, explicit_differential,
                         hoch_form_differential, homotopy_comparison, interior, is_alternating,
                         lie_derivative, make_carrier, measure_constant, proportionality, random_form)
from algeo.library import BUILTINS, builtin
from algeo.torsion import TorsionAlgebra, function_algebra, is_regular

ASSOCIATIVE = ("m2q", "qz3", "zero3")


def carrier(name, kind):
    return make_carrier(TorsionAlgebra(builtin(name), validate=False), kind)


def admissible():
    for name in sorted(BUILTINS):
        yield name, "C"
        ta = TorsionAlgebra(builtin(name), validate=False)
        if is_regular(ta, function_algebra(ta)):
            yield name, "A"


def forms_of(c, seed=0, max_degree=2, per_degree=2):
    rng = np.random.default_rng(seed)
    return [random_form(c, k, rng) for k in range(max_degree + 1) for _ in range(per_degree)]


def test_zero_form_differential_doubles_the_derivation():
    c = carrier("sl2", "C")
    u = random_form(c, 0, np.random.default_rng(0))
    du = hoch_form_differential(u)
    for x in range(3):
        X = c.ta.algebra.basis(x)
        assert du(X) == c.derivation(X).tensordot(u.data, axes=([1], [0])).scale(2)


@pytest.mark.parametrize("name", ["m2q", "sl2", "octonions"])
def test_one_form_hochschild_differential_is_the_textbook_one(name):
    c = carrier(name, "C")
    w = random_form(c, 1, np.random.default_rng(1), alternating=False)
    assert hoch_form_differential(w) == explicit_differential(w)


@pytest.mark.parametrize("name, kind", list(admissible()))
def test_ddu_is_curvature(name, kind):
    v = ddu_check(carrier(name, kind))
    assert v, v.witness


@pytest.mark.parametrize("name, kind", list(admissible()))
def test_curvature_antisymmetric(name, kind):
    c = carrier(name, kind)
    A = c.ta.algebra
    for x, y in itertools.product(range(A.dim), repeat=2):
        X, Y = A.basis(x), A.basis(y)
        assert curvature_K(c.ta, X, Y, c) == -curvature_K(c.ta, Y, X, c)


@pytest.mark.parametrize("name", ASSOCIATIVE)
@pytest.mark.parametrize("kind", ["C", "A"])
def test_curvature_vanishes_for_associative(name, kind):
    c = carrier(name, kind)
    A = c.ta.algebra
    for x, y in itertools.product(range(A.dim), repeat=2):
        assert curvature_K(c.ta, A.basis(x), A.basis(y), c).is_zero()


def test_curvature_of_octonions():
    c = carrier("octonions", "C")
    A = c.ta.algebra
    K = curvature_K(c.ta, A.basis(1), A.basis(2), c)
    assert K[3, 6] == -8


def test_functions_carrier_needs_regularity():
    with pytest.raises(CarrierClosure):
        carrier("poisson_sl2", "A")
    with pytest.raises(ValueError):
        carrier("m2q", "B")


def test_interior_products():
    c = carrier("m2q", "A")
    A = c.ta.algebra
    w = random_form(c, 2, np.random.default_rng(3))
    X, Y = A.basis(1), A.basis(2) + A.basis(0)
    assert interior(X, interior(Y, w)) == -interior(Y, interior(X, w))
    assert interior(X, interior(X, w)).is_zero()
    with pytest.raises(DegreeUnderflow):
        interior(X, DForm.zero(c, 0))


def test_lie_derivative_basics():
    c = carrier("sl2", "C")
    A = c.ta.algebra
    assert lie_derivative(A.basis(0), DForm.zero(c, 2)).is_zero()
    u = random_form(c, 0, np.random.default_rng(0))
    assert lie_derivative(A.basis(2), u).data == c.derivation(A.basis(2)).tensordot(u.data, axes=([1], [0]))


@pytest.mark.parametrize("name, kind", list(admissible()))
def test_operations_preserve_alternation(name, kind):
    c = carrier(name, kind)
    A = c.ta.algebra
    for w in forms_of(c, max_degree=2 if A.dim < 8 else 1):
        assert is_alternating(ce_differential(w))
        assert is_alternating(lie_derivative(A.basis(A.dim - 1), w))


def test_non_alternating_witness():
    c = carrier("sl2", "C")
    w = random_form(c, 2, np.random.default_rng(0), alternating=False)
    v = is_alternating(w)
    assert not v and v.witness["slots"] == [0, 1]


@pytest.mark.parametrize("name", ["sl2", "m2q"])
@pytest.mark.parametrize("kind", ["C", "A"])
def test_homotopy_constant_is_two(name, kind):
    c = carrier(name, kind)
    report = homotopy_comparison(c, forms_of(c))
    assert report.consistent and report.constant == 2


@pytest.mark.parametrize("name", ["sl2", "m2q", "qz3"])
def test_normalization_constants(name):
    c = carrier(name, "C")
    forms = forms_of(c, seed=5)
    assert measure_constant((w.degree, ce_differential(w).data, explicit_differential(w).data)
                            for w in forms).constant == 2
    full = measure_constant((w.degree, ce_differential(w, normalized=False).data,
                             explicit_differential(w).data) for w in forms)
    assert not full.consistent and full.by_degree == {0: 2, 1: 2, 2: 4}
    two = [w for w in forms if w.degree == 2]
    assert measure_constant((2, ce_differential(w).data, cyclic_formula(w).data) for w in two).constant == 2
    assert all(alternate(hoch_form_differential(w)) == ce_differential(w, normalized=False) for w in forms)


def test_proportionality():
    c = carrier("sl2", "C")
    w = random_form(c, 1, np.random.default_rng(0))
    assert proportionality(w.data.scale(3), w.data) == 3
    assert proportionality(DForm.zero(c, 1).data, DForm.zero(c, 1).data) == "any"
    assert proportionality(w.data, DForm.zero(c, 1).data) is None


def test_m2_a_multilinear_forms():
    c = carrier("m2q", "A")
    A = c.ta.algebra
    basis = {k: a_multilinear_forms(c, k) for k in range(3)}
    assert [len(basis[k]) for k in range(3)] == [4, 4, 0]
    for w in basis[1]:
        assert a_multilinearity(w)
        for x in range(4):
            assert a_multilinearity(lie_derivative(A.basis(x), w))
    # the alternating projection does not stay A-multilinear on M2
    failures = [w for w in basis[1] if not a_multilinearity(ce_differential(w))]
    assert failures
    v = a_multilinearity(ce_differential(failures[0]))
    assert set(v.witness) == {"function", "slot", "args"}


def test_a_multilinearity_of_commutative_example():
    c = carrier("qz3", "A")
    for k in range(3):
        for w in a_multilinear_forms(c, k):
            assert a_multilinearity(ce_differential(w))
