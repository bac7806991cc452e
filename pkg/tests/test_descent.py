from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from formwitt import oracles as O
from formwitt.descent import (
    PolyVector,
    construct_lemma_PR,
    descend_field,
    descend_semilocal,
    represents_descend,
    springer,
)
from formwitt.errors import DegreeOne, EvenDegree, Inconsistent, NonMonicDivisor, RankTooSmall
from formwitt.forms import QuadraticForm, Vector, base_change, direct_sum, hyperbolic_plane
from formwitt.rings import GF, QQ, ProductRing, parse_polynomial, quotient
from formwitt.rings.grammar import format_polynomial
from formwitt.witt import Isotropic, find_isotropic, is_unimodular

F3, F5 = GF(3), GF(5)


def ref_form(R, a):
    """xy + a z^2"""
    return direct_sum(hyperbolic_plane(R), QuadraticForm.diagonal(R, [a]))


def test_lemma_example():
    q = ref_form(F5, 1)
    P = parse_polynomial(F5, "X^3+X+1")
    v = construct_lemma_PR(q, P)
    assert [format_polynomial(c) for c in v.coords] == ["4", "4*X^2+4*X", "X^2"]
    assert format_polynomial(v.value(q)) == "X^4+X^2+X"


def test_lemma_quadratic_modulus():
    q = ref_form(F3, 2)
    v = construct_lemma_PR(q, parse_polynomial(F3, "X^2"))
    assert [format_polynomial(c) for c in v.coords] == ["1", "0", "X"]
    assert v.value(q).degree == 2


def test_lemma_errors():
    q = ref_form(F5, 1)
    with pytest.raises(NonMonicDivisor):
        construct_lemma_PR(q, parse_polynomial(F5, "2*X^3+1"))
    with pytest.raises(DegreeOne):
        construct_lemma_PR(q, parse_polynomial(F5, "X+1"))
    with pytest.raises(RankTooSmall):
        construct_lemma_PR(hyperbolic_plane(F5), parse_polynomial(F5, "X^3+X+1"))


def test_descend_field_examples():
    q = QuadraticForm.diagonal(F3, [1, 1, 1])
    S = quotient(F3, "X^3+2*X+1")
    z = find_isotropic(base_change(q, S)).witness
    w = descend_field(q, S, z)
    assert q.value(w.v) == 0 and not w.is_zero()
    q = QuadraticForm.diagonal(QQ, [1, 1, -2])
    S = quotient(QQ, "X^3-2")
    z = Vector(S, [1, 1, 1])
    assert descend_field(q, S, z).v == (1, 1, 1)


def test_constructive_descent_over_q():
    q = QuadraticForm.diagonal(QQ, [1, 1, -2])
    S = quotient(QQ, "X^5-2*X+2")
    z = construct_lemma_PR(q, S.modulus).reduce(S)
    path = []
    w = descend_field(q, S, z, constructive=True, path=path)
    assert q.value(w.v) == 0 and not w.is_zero()
    assert path


def test_semilocal_reference_example():
    q = ref_form(F5, 1)
    S = quotient(F5, "X^3+X+1")
    z = find_isotropic(base_change(q, S)).witness
    tr = descend_semilocal(q, S, z)
    assert tr.degrees == [3, 1]
    assert q.value(tr.witness.v) == 0 and is_unimodular(tr.witness)


def test_product_ring_trace():
    R = ProductRing([F3, F3])
    q = QuadraticForm.diagonal(R, [(1, 1), (1, 2), (1, 1)])
    S = quotient(R, "X^3+X+1")
    z = find_isotropic(base_change(q, S)).witness
    tr = descend_semilocal(q, S, z)
    assert tr.degrees == [3, 1]
    assert q.value(tr.witness.v) == R.zero and is_unimodular(tr.witness)


def test_springer_dispatch():
    q = QuadraticForm.diagonal(F5, [1, 1, 1])
    w = springer(q, F5, Vector(F5, [0, 1, 2]))
    assert w.v == (0, 1, 2)
    S = ProductRing([F3, GF(3, 2)])
    q3 = QuadraticForm.diagonal(F3, [1, 1, 1])
    w = springer(q3, S, Vector(S, [(1, (1, 0)), (1, (1, 0)), (1, (1, 0))]))
    assert w.v == (1, 1, 1)
    with pytest.raises(EvenDegree):
        springer(q, quotient(F5, "X^2+2"), Vector(quotient(F5, "X^2+2"), [0, 1, 2]))
    with pytest.raises(Inconsistent):
        springer(q, F5, Vector(F5, [1, 1, 1]))


def test_springer_full_pipeline():
    q = QuadraticForm.diagonal(F5, [1, 1, 1])
    S = quotient(F5, "X^3+X+1")
    z = find_isotropic(base_change(q, S)).witness
    w = springer(q, S, z)
    assert q.value(w.v) == 0 and O.field_isotropic([[1, 0, 0], [0, 1, 0], [0, 0, 1]], 5)


def test_represents_descend_examples():
    S = quotient(F3, "X^3+2*X+1")
    h = hyperbolic_plane(F3)
    for a in (1, 2):
        x = Vector(S, [1, S.embed(a)])
        assert h.value(represents_descend(h, a, S, x).v) == a
    q = QuadraticForm.diagonal(F3, [1, 1])
    m = represents_descend(q, 2, S, Vector(S, [1, 1]))
    assert q.value(m.v) == 2
    # rank one goes through the norm
    S5 = quotient(F5, "X^3+X+1")
    q1 = QuadraticForm.diagonal(F5, [3])
    m = represents_descend(q1, 2, S5, Vector(S5, [S5.embed(2)]))
    assert q1.value(m.v) == 2


def test_poly_vector_helpers():
    # v(X) = (1 + X^2, X): coefficient vectors m_0 = (1, 0), m_1 = (0, 1), m_2 = (1, 0)
    v = PolyVector.from_coefficients(F5, [Vector(F5, [1, 0]), Vector(F5, [0, 1]), Vector(F5, [1, 0])])
    assert v.degree == 2 and v.rank == 2
    assert v.evaluate(F5(2)).v == (0, 2)
    assert v.top().v == (1, 0)
    assert v.zero_locus() == []
    w = PolyVector(F5, [c * parse_polynomial(F5, "X+1") for c in v.coords])
    assert format_polynomial(w.content()) == "X+1"


# -- properties --------------------------------------------------------------------------


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([2, 3, 5, 7]), st.integers(3, 5), st.integers(2, 6), st.data())
def test_lemma_contract(p, n, d, data):
    F = GF(p)
    C = [[data.draw(st.integers(0, p - 1)) if j >= i else 0 for j in range(n)] for i in range(n)]
    if not O.field_nonsingular(C, p):
        return
    P = tuple(data.draw(st.integers(0, p - 1)) for _ in range(d)) + (1,)
    v = construct_lemma_PR(QuadraticForm(F, C), parse_polynomial(F, "+".join(f"{c}*X^{i}" for i, c in enumerate(P))))
    val = v.value(QuadraticForm(F, C))
    assert val.degree == 2 * d - 2
    assert O.pmod(tuple(int(c) for c in val.c), P, p) == ()
    assert all(any(O.peval(tuple(int(c) for c in coord.c), x, p) for coord in v.coords) for x in range(p))


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([3, 5]), st.sampled_from([(1, 2, 0, 1), (1, 1, 0, 1), (2, 0, 0, 1), (0, 0, 0, 1), (4, 1, 0, 0, 0, 1)]), st.data())
def test_springer_on_random_isotropic_forms(p, P, data):
    F = GF(p)
    n = data.draw(st.integers(2, 4))
    C = [[data.draw(st.integers(0, p - 1)) if j >= i else 0 for j in range(n)] for i in range(n)]
    if not O.field_nonsingular(C, p):
        return
    locs = O.local_factors(P, p)
    vecs = [O.local_isotropic_vector(C, L) for L in locs]
    if any(v is None for v in vecs):
        assert not O.field_isotropic(C, p)
        return
    coords = O.crt_vector(P, p, locs, vecs)
    d = len(P) - 1
    S = quotient(F, "+".join(f"{c}*X^{i}" for i, c in enumerate(P) if c))
    z = Vector.raw(S, [tuple(list(c) + [0] * (d - len(c))) for c in coords])
    w = springer(QuadraticForm(F, C), S, z)
    assert QuadraticForm(F, C).value(w.v) == 0 and not w.is_zero()


def test_rational_instances():
    from formwitt.acceptance import RATIONAL_CASES

    assert len(RATIONAL_CASES) >= 20
    for coeffs, Ps in RATIONAL_CASES[:5]:
        q = QuadraticForm.diagonal(QQ, [Fraction(c) for c in coeffs])
        S = quotient(QQ, Ps)
        z = construct_lemma_PR(q, S.modulus).reduce(S) if S.degree > 1 else None
        if z is None:
            continue
        w = springer(q, S, z)
        assert q.value(w.v) == 0 and not w.is_zero()
