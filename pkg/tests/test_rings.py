from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from formwitt.errors import CountMismatch, NonMonicDivisor, ParseError
from formwitt.rings import (
    GF,
    QQ,
    Polynomial,
    ProductRing,
    algebra_norm,
    crt_combine,
    euclidean_divide,
    factor,
    is_unit,
    parse_element,
    parse_polynomial,
    parse_ring,
    quotient,
    residues,
    roots,
)
from formwitt.rings.grammar import format_polynomial, format_ring

F5 = GF(5)

RINGS = [
    GF(2),
    GF(3),
    GF(7),
    GF(2, 2),
    GF(3, 2),
    quotient(GF(5), "X^2+2*X+1"),
    quotient(GF(3), "X^3"),
    quotient(GF(5), "X^2+3*X+2"),
    ProductRing([GF(3), GF(5)]),
    ProductRing([GF(2), GF(2, 2)]),
    quotient(QQ, "X^3-2"),
]


def poly(R, text):
    return parse_polynomial(R, text)


def elements(R):
    if R == QQ or R.order is None:
        return st.builds(lambda a, b: R(Fraction(a, b)), st.integers(-20, 20), st.integers(1, 9))
    return st.integers(0, R.order - 1).map(lambda i: R.element(R.from_index(i)))


@st.composite
def ring_and_elements(draw, k=3):
    R = draw(st.sampled_from([r for r in RINGS if r.order is not None]))
    return R, [draw(elements(R)) for _ in range(k)]


# -- examples ------------------------------------------------------------------------------


def test_division_example():
    q, r = euclidean_divide(poly(F5, "X^4"), poly(F5, "X^3+X+1"))
    assert (format_polynomial(q), format_polynomial(r)) == ("X", "4*X^2+4*X")


def test_division_trivial_cases():
    f = poly(F5, "3*X^3+X+2")
    assert euclidean_divide(f, poly(F5, "1")) == (f, Polynomial(F5))
    zero = Polynomial(F5)
    assert euclidean_divide(zero, f.monic()) == (zero, zero)


def test_division_needs_monic():
    with pytest.raises(NonMonicDivisor):
        euclidean_divide(poly(F5, "X^2"), poly(F5, "2*X+1"))


def test_factor_examples():
    unit, facs = factor(poly(F5, "X^2+1"))
    assert sorted(format_polynomial(g) for g, _ in facs) == ["X+2", "X+3"]
    assert factor(poly(F5, "X"))[1] == [(poly(F5, "X"), 1)]
    assert factor(poly(QQ, "X^3-2"))[1] == [(poly(QQ, "X^3-2"), 1)]


def test_roots_sorted():
    assert [r.value for r in roots(poly(F5, "X^2+1"))] == [2, 3]


def test_norm_examples():
    S = quotient(F5, "X^2+1")
    assert algebra_norm(S, S.gen).value == 1
    assert algebra_norm(S, S(3)).value == pow(3, 2, 5)


def test_residue_examples():
    r = residues(GF(7))
    assert len(r) == 1 and r.nilpotency == 1
    r = residues(quotient(F5, "X^3+4*X^2+2"))
    assert [str(x.field) for x in r] == ["GF(5)", "GF(5)"] and r.nilpotency == 2
    r = residues(ProductRing([GF(3), GF(3, 2)]))
    assert len(r) == 2 and r.nilpotency == 1


def test_crt_example():
    S = quotient(F5, "X^2+3*X+2")
    res = crt_combine(S, [F5(1), F5(3)])
    assert str(res.preimage) == "3*X+4"
    with pytest.raises(CountMismatch):
        crt_combine(S, [F5(1)])


def test_is_unit_examples():
    S = quotient(F5, "X^2+1")
    P = ProductRing([GF(3), GF(3)])
    assert not is_unit(S(0))
    assert is_unit(S.gen) and (S.gen * S.gen * S(4)).value == S.one
    assert not is_unit(P((1, 0)))


def test_default_extension_modulus_is_least_irreducible():
    assert format_ring(GF(3, 2)) == "GF(3^2,X^2+1)"
    assert format_ring(GF(2, 3)) == "GF(2^3,X^3+X^2+1)"  # (1,0,1,1) < (1,1,0,1) low-degree first


@pytest.mark.parametrize(
    "text",
    ["Q", "GF(7)", "GF(5^3,X^3+X+1)", "GF(5)[X]/(X^2+2*X+1)", "GF(3) x GF(3^2,X^2+1)", "Q[X]/(X^3-2)", "(GF(3) x GF(3))[X]/(X^3+X+1)"],
)
def test_ring_grammar_round_trip(text):
    R = parse_ring(text)
    assert format_ring(parse_ring(format_ring(R))) == format_ring(R)
    assert parse_ring(format_ring(R)) == R


def test_parse_error_has_position():
    with pytest.raises(ParseError) as info:
        parse_ring("GF(5)[X]/(X^2+")
    assert info.value.position is not None


# -- properties ------------------------------------------------------------------------------


@given(ring_and_elements())
def test_ring_axioms(data):
    R, (a, b, c) = data
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert a - a == R(0)
    if a.is_unit():
        assert a * a.inverse() == R(1)


@given(ring_and_elements(1))
def test_element_format_round_trip(data):
    R, (a,) = data
    assert parse_element(R, str(a)) == a


@given(st.sampled_from([2, 3, 5, 7]), st.lists(st.integers(0, 6), min_size=1, max_size=8), st.lists(st.integers(0, 6), max_size=4))
def test_division_reconstruction(p, fc, gc):
    F = GF(p)
    f = Polynomial(F, fc)
    g = Polynomial(F, gc + [1])
    q, r = euclidean_divide(f, g)
    assert q * g + r == f
    assert r.degree < g.degree


@settings(deadline=None)
@given(st.sampled_from([2, 3, 5, 7]), st.lists(st.integers(0, 6), min_size=2, max_size=7))
def test_factorization_matches_sympy(p, coeffs):
    F = GF(p)
    f = Polynomial(F, coeffs)
    if f.degree < 1:
        return
    unit, facs = factor(f)
    prod = Polynomial.constant(F, unit.value)
    for g, e in facs:
        assert g.is_monic
        prod = prod * g ** e
    assert prod == f
    x = sympy.symbols("x")
    ref = sympy.factor_list(sympy.Poly(list(reversed([int(c) for c in f.c])), x, modulus=p))
    theirs = sorted((sympy.Poly(g, x, modulus=p).degree(), e) for g, e in ref[1])
    ours = sorted((g.degree, e) for g, e in facs)
    assert ours == theirs


@settings(deadline=None, max_examples=40)
@given(st.lists(st.integers(-6, 6), min_size=2, max_size=5))
def test_rational_factorization_matches_sympy(coeffs):
    f = Polynomial(QQ, coeffs)
    if f.degree < 1:
        return
    unit, facs = factor(f)
    prod = Polynomial.constant(QQ, unit.value)
    for g, e in facs:
        prod = prod * g ** e
    assert prod == f
    x = sympy.symbols("x")
    ref = sympy.factor_list(sympy.Poly(list(reversed(coeffs[: f.degree + 1])), x, domain="QQ"))
    assert sorted((g.degree(), e) for g, e in ref[1]) == sorted((g.degree, e) for g, e in facs)


@given(st.data())
def test_norm_is_multiplicative(data):
    S = data.draw(st.sampled_from([quotient(GF(7), "X^3+X+1"), quotient(F5, "X^2+2*X+1"), quotient(QQ, "X^3-2")]))
    s, t = data.draw(elements(S)), data.draw(elements(S))
    assert algebra_norm(S, s * t) == algebra_norm(S, s) * algebra_norm(S, t)


@given(st.data())
def test_crt_reduces_to_values(data):
    R = data.draw(st.sampled_from([quotient(F5, "X^3+4*X^2+5*X+2"), ProductRing([GF(3), GF(5)]), quotient(GF(3), "X^3+X")]))
    rs = residues(R)
    vals = [data.draw(elements(r.field)) for r in rs]
    pre = crt_combine(R, vals).preimage
    for r, v in zip(rs, vals):
        assert r.reduce(pre.value) == v.value
