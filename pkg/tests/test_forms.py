import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from formwitt.errors import DimensionMismatch, MixedRings, ParseError
from formwitt.forms import (
    BilinearForm,
    QuadraticForm,
    Vector,
    base_change,
    direct_sum,
    format_form,
    hyperbolic_plane,
    hyperbolic_space,
    is_nonsingular,
    is_regular,
    metabolic,
    parse_form,
    parse_vector,
    pure_tensor,
    radical,
    rank_decompose,
    residue_forms,
    tensor_bq,
)
from formwitt.rings import GF, ProductRing, quotient
from formwitt.rings.algebra import residue_map
from formwitt import linalg

F2, F3, F5, F7 = GF(2), GF(3), GF(5), GF(7)


def diag(R, *vals):
    return QuadraticForm.diagonal(R, list(vals))


def test_evaluate_examples():
    h = hyperbolic_plane(F5)
    assert h.value((1, 0)) == 0 and h.value((2, 3)) == 1
    assert diag(F7, 3).value((2,)) == 3 * 4 % 7
    assert QuadraticForm.zero_form(F5, 2).value((4, 1)) == 0


def test_polar_examples():
    assert diag(F7, 3).polar_matrix() == [[6]]
    assert hyperbolic_plane(F3).polar_matrix() == [[0, 1], [1, 0]]
    q = QuadraticForm(F2, [[1, 1], [0, 0]])
    assert q.polar_matrix() == [[0, 1], [1, 0]]


def test_base_change_examples():
    q = QuadraticForm(F5, [[1, 2], [0, 3]])
    assert base_change(q, F5) == q
    S = quotient(F5, "X^3+X+1")
    qS = base_change(q, S)
    assert qS.value((S.embed(2), S.embed(4))) == S.embed(q.value((2, 4)))
    R = quotient(F5, "X^2+3*X+2")
    q = QuadraticForm(R, [[R.gen.value, 1], [0, 2]])
    k = residue_map(R, 0)
    qk = base_change(q, k)
    # the first residue is X = -1
    assert qk.C[0][0] == 4


def test_direct_sum_examples():
    q = diag(F3, 1)
    assert direct_sum(q, QuadraticForm.zero_form(F3)) == q
    assert direct_sum(q, q) == diag(F3, 1, 1)
    assert format_form(direct_sum(hyperbolic_plane(F5), diag(F5, 2))) == "rank=3;c[1][2]=1;c[3][3]=2"
    with pytest.raises(MixedRings):
        direct_sum(diag(F3, 1), diag(F5, 1))


def test_tensor_examples():
    q = QuadraticForm(F7, [[1, 2], [0, 3]])
    one = BilinearForm(F7, [[1]])
    assert tensor_bq(one, q) == q
    b = BilinearForm(F7, [[2, 3], [3, 5]])
    qb = tensor_bq(b, diag(F7, 1))
    assert qb.value((1, 1)) == (2 + 3 + 3 + 5) % 7
    assert qb.polar_matrix() == [[4, 6], [6, 3]]


def test_radical_examples():
    assert radical(hyperbolic_plane(F5)) == []
    assert [v.v for v in radical(diag(F2, 1, 1))] == [(1, 1)]
    assert radical(diag(F2, 1)) == []


def test_regular_and_nonsingular():
    assert not is_regular(diag(F2, 1)) and is_nonsingular(diag(F2, 1))
    for R in (F2, F3, GF(2, 2), quotient(F5, "X^2")):
        h = hyperbolic_plane(R)
        assert is_regular(h) and is_nonsingular(h)
    assert not is_nonsingular(diag(F2, 1, -1))


def test_metabolic_examples():
    h = hyperbolic_space(F5, 1)
    assert h.value((1, 0)) == 0 == h.value((0, 1))
    assert h.polar_matrix() == [[0, 1], [1, 0]]
    zero = BilinearForm(F3, [[0, 0], [0, 0]])
    assert metabolic(zero) == BilinearForm(F3, [[0, 0, 1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, 1, 0, 0]])


@pytest.mark.parametrize("R", [F2, F3, F5, GF(2, 2), quotient(F3, "X^2")])
def test_metabolic_is_regular(R):
    import random

    rng = random.Random(7)
    for _ in range(10):
        M = [[R.random(rng) for _ in range(2)] for _ in range(2)]
        M[1][0] = M[0][1]
        assert metabolic(BilinearForm(R, M)).is_regular()


def test_residue_forms_over_products():
    R = ProductRing([F3, F3])
    q = QuadraticForm(R, [[(1, 2), (0, 1)], [0, (2, 2)]])
    a, b = residue_forms(q)
    assert a == QuadraticForm(F3, [[1, 0], [0, 2]])
    assert b == QuadraticForm(F3, [[2, 1], [0, 2]])


def test_rank_decompose_single_factor():
    q = diag(F5, 1, 2)
    assert rank_decompose(q) == [q]


def test_form_text_round_trip():
    R = quotient(F5, "X^2+1")
    q = parse_form(R, "rank=3; c[1][2]=X+1; c[3][3]=2*X")
    assert parse_form(R, format_form(q)) == q
    with pytest.raises(ParseError):
        parse_form(R, "rank=2;c[2][1]=1")
    assert parse_vector(R, "(X, 1, 0)") == Vector(R, ["X", 1, 0])


def test_vector_rank_checks():
    with pytest.raises(DimensionMismatch):
        diag(F5, 1, 2)(Vector(F5, [1]))


# -- properties ----------------------------------------------------------------------------

RINGS = [F2, F3, F5, GF(2, 2), quotient(F5, "X^2+2*X+1"), ProductRing([F3, F5]), quotient(F3, "X^2+X")]


@st.composite
def forms(draw, n=None):
    R = draw(st.sampled_from(RINGS))
    n = draw(st.integers(1, 4)) if n is None else n
    el = st.integers(0, R.order - 1).map(R.from_index)
    C = [[draw(el) if j >= i else R.zero for j in range(n)] for i in range(n)]
    return QuadraticForm.raw(R, C)


def vec(draw, R, n):
    return tuple(draw(st.integers(0, R.order - 1).map(R.from_index)) for _ in range(n))


@given(st.data())
def test_quadratic_form_axioms(data):
    q = data.draw(forms())
    R, n = q.ring, q.rank
    x, y = vec(data.draw, R, n), vec(data.draw, R, n)
    r = data.draw(st.integers(0, R.order - 1).map(R.from_index))
    rx = tuple(R.mul(r, t) for t in x)
    assert q.value(rx) == R.mul(R.mul(r, r), q.value(x))
    s = tuple(R.add(a, b) for a, b in zip(x, y))
    assert q.polar_value(x, y) == R.sub(R.sub(q.value(s), q.value(x)), q.value(y))
    assert q.polar_value(x, x) == R.add(q.value(x), q.value(x))


@given(st.data())
def test_transform_matches_evaluation(data):
    q = data.draw(forms())
    R, n = q.ring, q.rank
    T = [list(vec(data.draw, R, n)) for _ in range(n)]
    x = vec(data.draw, R, n)
    assert q.transform(T).value(x) == q.value(linalg.matvec(R, T, x))


@given(st.data())
def test_direct_sum_is_orthogonal(data):
    q1 = data.draw(forms())
    q2 = data.draw(forms(n=2).filter(lambda f: f.ring == q1.ring))
    R = q1.ring
    x, y = vec(data.draw, R, q1.rank), vec(data.draw, R, q2.rank)
    s = direct_sum(q1, q2)
    assert s.value(x + y) == R.add(q1.value(x), q2.value(y))


@settings(max_examples=60)
@given(st.data())
def test_tensor_identities(data):
    q = data.draw(forms(n=2))
    R = q.ring
    B = [list(vec(data.draw, R, 2)) for _ in range(2)]
    B[1][0] = B[0][1]
    b = BilinearForm(R, B)
    T = tensor_bq(b, q)
    m, m2 = Vector.raw(R, vec(data.draw, R, 2)), Vector.raw(R, vec(data.draw, R, 2))
    n, n2 = Vector.raw(R, vec(data.draw, R, 2)), Vector.raw(R, vec(data.draw, R, 2))
    assert T.value(pure_tensor(m, n).v) == R.mul(b.value(m.v, m.v), q.value(n.v))
    assert T.polar_value(pure_tensor(m, n).v, pure_tensor(m2, n2).v) == R.mul(b.value(m.v, m2.v), q.polar_value(n.v, n2.v))


@given(st.data())
def test_radical_vectors_are_radical(data):
    q = data.draw(forms().filter(lambda f: f.ring.is_field))
    R = q.ring
    for v in radical(q):
        assert q.value(v.v) == R.zero
        assert all(t == R.zero for t in linalg.matvec(R, q.polar_matrix(), v.v))
