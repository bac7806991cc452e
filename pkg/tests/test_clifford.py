import pytest
from hypothesis import given
from hypothesis import strategies as st

from formwitt.clifford import (
    QuadraticEtale,
    even_clifford,
    idempotent,
    is_split,
    norm_form,
    rank2_springer,
    splitting_invariance_check,
)
from formwitt.errors import EvenDegree, Singular
from formwitt.forms import QuadraticForm, hyperbolic_plane
from formwitt.rings import GF, quotient
from formwitt.witt import Anisotropic, Isotropic, find_isotropic

F2, F3, F5, F7 = GF(2), GF(3), GF(5), GF(7)


def test_even_clifford_examples():
    A = even_clifford(hyperbolic_plane(F5))
    assert (A.beta, A.gamma) == (1, 0)
    assert [r.value for r in __import__("formwitt.rings", fromlist=["roots"]).roots(A.polynomial())] == [0, 1]
    assert is_split(even_clifford(QuadraticForm.diagonal(F3, [1, 1]))) is None
    assert is_split(even_clifford(QuadraticForm(F2, [[1, 1], [0, 1]]))) is None


def test_is_split_examples():
    assert is_split(QuadraticEtale(F7, 1, 0)).value == 0
    assert is_split(QuadraticEtale(F5, 0, 1)).value == 2
    assert is_split(QuadraticEtale(F3, 0, 1)) is None


def test_singular_discriminant_rejected():
    with pytest.raises(Singular):
        QuadraticEtale(F5, 2, 1)


def test_norm_form_of_split_algebra_is_isotropic():
    assert isinstance(find_isotropic(norm_form(QuadraticEtale(F7, 1, 0))), Isotropic)
    assert isinstance(find_isotropic(norm_form(even_clifford(hyperbolic_plane(F3)))), Isotropic)


@given(st.integers(0, 48), st.integers(0, 48))
def test_norm_is_multiplicative(i, j):
    A = QuadraticEtale(F7, 3, 1)
    s, t = divmod(i, 7), divmod(j, 7)
    assert A.norm(A.mul(s, t)) == A.norm(s) * A.norm(t) % 7


def test_idempotent_is_idempotent():
    A = QuadraticEtale(F5, 0, 1)
    e = idempotent(A)
    assert A.mul(e, e) == e and A.norm(e) == 0


def test_rank2_springer_examples():
    S = quotient(F5, "X^3+X+1")
    r = rank2_springer(hyperbolic_plane(F5), S)
    assert isinstance(r, Isotropic) and hyperbolic_plane(F5).value(r.witness.v) == 0
    r = rank2_springer(QuadraticForm.diagonal(F3, [1, 1]), GF(3, 3))
    assert isinstance(r, Anisotropic) and r.certificate == "NonsplitClifford"
    r = rank2_springer(QuadraticForm.diagonal(F5, [1, 1]))
    assert r.witness.v == (1, 2)
    with pytest.raises(EvenDegree):
        rank2_springer(QuadraticForm.diagonal(F3, [1, 1]), quotient(F3, "X^2+1"))


def test_splitting_invariance():
    A = QuadraticEtale(F3, 0, 1)
    assert splitting_invariance_check(QuadraticEtale(F3, 1, 0), quotient(F3, "X^3+2*X+1"))
    assert splitting_invariance_check(A, quotient(F3, "X^3+2*X+1"))
    assert not splitting_invariance_check(A, GF(3, 2))


def test_rank2_over_semilocal_ring():
    R = quotient(F5, "X^2+3*X+2")
    q = QuadraticForm(R, [[1, 0], [0, 1]])
    r = rank2_springer(q)
    assert isinstance(r, Isotropic) and q.value(r.witness.v) == R.zero
