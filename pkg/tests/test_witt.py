import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from formwitt import linalg
from formwitt import oracles as O
from formwitt.errors import Inconsistent, NotTotallyIsotropic
from formwitt.forms import QuadraticForm, Vector, direct_sum, hyperbolic_plane, hyperbolic_space
from formwitt.rings import GF, QQ, ProductRing, quotient
from formwitt.witt import (
    Anisotropic,
    Isotropic,
    Unknown,
    find_isotropic,
    hyperbolic_complete,
    is_hyperbolic,
    is_isometric,
    is_unimodular,
    orthogonal_complement,
    represents,
    witt_cancel,
    witt_decompose,
)

F3, F5, F7 = GF(3), GF(5), GF(7)


def diag(R, *vals):
    return QuadraticForm.diagonal(R, list(vals))


def test_unimodular_examples():
    assert is_unimodular(Vector(F5, [1, 0, 0]))
    assert not is_unimodular(Vector(F5, [0, 0]))
    R = quotient(F5, "X^2+3*X+2")
    assert is_unimodular(Vector(R, ["X+1", "X+2"]))
    assert not is_unimodular(Vector(R, ["X+1", "2*X+2"]))


def test_find_isotropic_examples():
    r = find_isotropic(hyperbolic_plane(F3))
    assert isinstance(r, Isotropic) and r.witness.v == (1, 0)
    r = find_isotropic(diag(QQ, 1, 1))
    assert isinstance(r, Anisotropic) and r.certificate == "Definite"
    r = find_isotropic(diag(F5, 1, 1))
    assert r.witness.v == (2, 1)  # colex least: last coordinate most significant
    assert isinstance(find_isotropic(diag(F3, 1, 1)), Anisotropic)


def test_find_isotropic_over_q():
    r = find_isotropic(diag(QQ, 1, 1, -2))
    assert isinstance(r, Isotropic)
    assert sum(c * x * x for c, x in zip((1, 1, -2), r.witness.v)) == 0
    r = find_isotropic(diag(QQ, 1, 1, -3))
    assert isinstance(r, Anisotropic) and r.certificate == "LocalObstruction"
    r = find_isotropic(diag(QQ, 1, 1, 1, 1, -7), bound=2)
    assert isinstance(r, Unknown) and r.bound == 2


def test_find_isotropic_semilocal_matches_oracle():
    R = quotient(F5, "X^2+2*X+1")
    L = O.LocalAlgebra(5, (1, 1), 2)
    for C in ([[1, 0, 0], [0, 2, 0], [0, 0, 3]], [[1, 0], [0, 1]], [[1, 0], [0, 2]]):
        q = QuadraticForm(R, C)
        res = find_isotropic(q)
        assert isinstance(res, Isotropic) == (O.local_isotropic_vector(C, L) is not None)
        if isinstance(res, Isotropic):
            assert q.value(res.witness.v) == R.zero and is_unimodular(res.witness)


def test_hyperbolic_complete_examples():
    h = hyperbolic_plane(F5)
    V, T = hyperbolic_complete(h, [Vector(F5, [1, 0])])
    assert V[0].v == (0, 1)
    H2 = hyperbolic_space(F3, 2)
    e1 = Vector.basis(F3, 4, 0)
    V, T = hyperbolic_complete(H2, [e1])
    assert H2.value(V[0].v) == 0 and H2.polar_value(e1.v, V[0].v) == 1
    assert hyperbolic_complete(h, []) == ([], [[], []])
    with pytest.raises(NotTotallyIsotropic):
        hyperbolic_complete(h, [Vector(F5, [1, 1])])


def test_witt_decompose_examples():
    d = witt_decompose(hyperbolic_space(F5, 2))
    assert (d.index, d.kernel.rank) == (2, 0)
    d = witt_decompose(diag(F5, 1, 1))
    assert (d.index, d.kernel.rank) == (1, 0)
    d = witt_decompose(diag(QQ, 1, 1, 1))
    assert d.index == 0 and d.kernel_certificate.certificate == "Definite"


def test_is_hyperbolic_examples():
    assert is_hyperbolic(hyperbolic_space(F7, 3)) is not None
    assert is_hyperbolic(diag(F3, 1, 1)) is None
    assert is_hyperbolic(diag(F3, 1)) is None


def test_isometry_examples():
    q = diag(F5, 1, 2)
    iso = is_isometric(q, q)
    assert iso.matrix == linalg.identity(F5, 2)
    assert is_isometric(q, diag(F5, 1)) is None
    assert is_isometric(diag(F5, 1, 1), hyperbolic_plane(F5)) is not None
    assert is_isometric(diag(F3, 1, 1), hyperbolic_plane(F3)) is None


def test_witt_cancel_examples():
    h = hyperbolic_plane(F7)
    assert witt_cancel(h, direct_sum(h, diag(F7, 1)), direct_sum(h, diag(F7, 2))) is not None
    h = hyperbolic_plane(F5)
    assert witt_cancel(h, direct_sum(h, diag(F5, 1)), direct_sum(h, diag(F5, 2))) is None
    q = direct_sum(diag(F5, 1), diag(F5, 3))
    assert witt_cancel(diag(F5, 1), q, q).matrix == linalg.identity(F5, 1)


def test_witt_cancel_rejects_non_block_sums():
    with pytest.raises(Inconsistent):
        witt_cancel(diag(F5, 2), direct_sum(diag(F5, 1), diag(F5, 1)), direct_sum(diag(F5, 1), diag(F5, 1)))


def test_represents_examples():
    h = hyperbolic_plane(F5)
    for a in range(1, 5):
        v = represents(h, a)
        assert h.value(v.v) == a
    assert represents(diag(F3, 1), 2) is None
    assert represents(diag(F3, 1, 1), 2).v is not None


def test_orthogonal_complement():
    q = diag(F7, 1, 2, 3)
    W = orthogonal_complement(q, [Vector(F7, [1, 1, 0])])
    assert len(W) == 2
    for w in W:
        assert q.polar_value((1, 1, 0), w.v) == 0


# -- properties ----------------------------------------------------------------------------


def _exhaustive_isotropic(q):
    R = q.ring
    for v in itertools.product(list(R.payloads()), repeat=q.rank):
        if any(x != R.zero for x in v) and q.value(v) == R.zero:
            return True
    return False


@settings(max_examples=80)
@given(st.sampled_from([2, 3, 5, 7]), st.integers(1, 3), st.data())
def test_field_isotropy_matches_exhaustive(p, n, data):
    F = GF(p)
    C = [[data.draw(st.integers(0, p - 1)) if j >= i else 0 for j in range(n)] for i in range(n)]
    q = QuadraticForm(F, C)
    res = find_isotropic(q)
    assert isinstance(res, Isotropic) == _exhaustive_isotropic(q)
    if isinstance(res, Isotropic):
        assert q.value(res.witness.v) == 0


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([F3, F5, GF(2, 2), quotient(F5, "X^2"), ProductRing([F3, F3])]), st.integers(1, 3), st.data())
def test_q_plus_minus_q_is_hyperbolic(R, n, data):
    el = st.integers(0, R.order - 1).map(R.from_index)
    C = [[data.draw(el) if j >= i else R.zero for j in range(n)] for i in range(n)]
    q = QuadraticForm.raw(R, C)
    if not q.is_regular():
        return
    h = direct_sum(q, -q)
    U = is_hyperbolic(h)
    assert U is not None and len(U) == n
    V, T = hyperbolic_complete(h, U)
    assert h.transform(T) == hyperbolic_space(R, n)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([F3, F5, F7]), st.data())
def test_witt_decomposition_recombines(F, data):
    n = data.draw(st.integers(1, 4))
    C = [[data.draw(st.integers(0, F.p - 1)) if j >= i else 0 for j in range(n)] for i in range(n)]
    q = QuadraticForm(F, C)
    if not q.is_regular():
        return
    d = witt_decompose(q)
    target = direct_sum(hyperbolic_space(F, d.index), d.kernel)
    assert q.transform(d.transform) == target
    if d.kernel.rank:
        assert isinstance(find_isotropic(d.kernel), Anisotropic)


@settings(max_examples=30, deadline=None)
@given(st.sampled_from([3, 5]), st.data())
def test_isometry_matches_brute_force(p, data):
    F = GF(p)
    draw = lambda: [[data.draw(st.integers(0, p - 1)) if j >= i else 0 for j in range(2)] for i in range(2)]
    C1, C2 = draw(), draw()
    q1, q2 = QuadraticForm(F, C1), QuadraticForm(F, C2)
    if not (q1.is_regular() and q2.is_regular()):
        return
    iso = is_isometric(q1, q2)
    assert (iso is not None) == O.field_isometric(C1, C2, p)
    if iso is not None and iso.matrix is not None:
        assert q2.transform(iso.matrix) == q1


def test_rational_witness_is_exact():
    q = QuadraticForm.diagonal(QQ, [Fraction(1, 2), Fraction(3), Fraction(-7, 2)])
    res = find_isotropic(q)
    assert isinstance(res, Isotropic) and q.value(res.witness.v) == 0
