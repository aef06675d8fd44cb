import pytest

from algeo.cochain import comp
from algeo.errors import Truncated
from algeo.gerstenhaber import composition_matrix, gerstenhaber_truncation
from algeo.suites import gerstenhaber_suite


def test_carrier_dimension_and_layout():
    c = gerstenhaber_truncation(2, 4)
    assert c.dimension == 2 + 4 + 8 + 16 + 32 == 62
    assert c.locate(0) == (-1, 0)
    assert c.locate(6) == (1, 0)
    assert c.locate(61) == (3, 31)
    with pytest.raises(ValueError):
        gerstenhaber_truncation(0, 3)


def test_truncation_and_degree_minus_two():
    c = gerstenhaber_truncation(1, 3)
    f = c.basis(2)[0]
    with pytest.raises(Truncated):
        c.product(f, f)
    x = c.basis(-1)[0]
    assert c.product(x, x) is None
    assert c.same(None, c.product(c.basis(0)[0], x) * 0)
    with pytest.raises(Truncated):
        c.left_mult(c.basis(1)[0])


def test_small_truncation_suite():
    report = gerstenhaber_suite(1, 3)
    assert report.exit_code == 0
    assert [ch.id for ch in report.checks] == [
        "gerstenhaber/01-degree-zero-functions", "gerstenhaber/02-degree-one-witnesses",
        "gerstenhaber/03-composition", "gerstenhaber/04-torsion"]


def test_composition_matrix_matches_comp():
    c = gerstenhaber_truncation(2, 3)
    f, g = c.basis(0)[1], c.basis(0)[2]
    lhs, rhs = composition_matrix(c, f, g)
    assert lhs == rhs
    assert rhs == c.left_mult(comp(f, g))


def test_degree_one_witness_replays():
    c = gerstenhaber_truncation(2, 3)
    f = c.basis(1)[5]
    (p, i), (q, j) = c.function_witness(f)
    x, y = c.basis(p)[i], c.basis(q)[j]
    assert not c.same(c.product(c.product(f, x), y), c.product(f, c.product(x, y)))
