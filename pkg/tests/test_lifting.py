import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from formwitt import oracles as O
from formwitt.errors import NotIsotropicInput, NotTransverse, SingularPoint
from formwitt.forms import QuadraticForm, Vector, direct_sum, hyperbolic_plane
from formwitt.lifting import (
    LiftProblem,
    complement_lift,
    lift_isotropic,
    newton_bound,
    newton_refine,
)
from formwitt.rings import GF, ProductRing, quotient

F3, F5 = GF(3), GF(5)


def test_product_of_fields_needs_no_newton():
    R = ProductRing([F3, F5])
    q = QuadraticForm.diagonal(R, [(1, 1), (1, 1), (1, 1)])
    res = lift_isotropic(LiftProblem(q, ((1, 1, 1), (0, 1, 2))))
    assert res.iterations == 0 and q.value(res.vector.v) == R.zero


def test_one_newton_step_over_square():
    # xy + X z^2 over GF(5)[X]/((X+1)^2); the residue target (1, 1, 1) is off by the nilpotent X + 1
    A = quotient(F5, "X^2+2*X+1")
    q = direct_sum(hyperbolic_plane(A), QuadraticForm.diagonal(A, [A.gen.value]))
    assert q.value(Vector(A, [1, 1, 1]).v) != A.zero
    res = lift_isotropic(LiftProblem(q, ((1, 1, 1),)))
    assert res.iterations == 1 and res.bound == 1
    assert q.value(res.vector.v) == A.zero
    red = A.residues()[0].reduce
    assert tuple(red(x) for x in res.vector.v) == (1, 1, 1)


def test_exact_witness_is_fixed_point():
    A = quotient(F5, "X^2")
    q = direct_sum(hyperbolic_plane(A), QuadraticForm.diagonal(A, [1]))
    v, steps = newton_refine(q, Vector(A, [1, 0, 0]).v)
    assert steps == 0 and v == Vector(A, [1, 0, 0]).v


def test_lift_input_checks():
    A = quotient(F5, "X^2")
    q = QuadraticForm.diagonal(A, [1, 1, 1])
    with pytest.raises(NotIsotropicInput):
        lift_isotropic(LiftProblem(q, ((1, 1, 1),)))
    q2 = QuadraticForm.diagonal(A, [1, 1, 0])
    with pytest.raises(SingularPoint):
        lift_isotropic(LiftProblem(q2, ((0, 0, 1),)))


def test_newton_bound():
    assert [newton_bound(e) for e in (1, 2, 3, 4, 5, 8)] == [0, 1, 2, 2, 3, 3]


def test_complement_lift_examples():
    W = complement_lift(F5, 2, [], [[(1, 0)]], 1)
    assert W[0].v == (1, 0)
    R = ProductRing([F3, F3])
    W = complement_lift(R, 2, [], [[(1, 0)], [(0, 1)]], 1)
    assert W[0].v == ((1, 0), (0, 1))
    R = quotient(F5, "X^2+3*X+2")
    W = complement_lift(R, 2, [], [[(1, 0)], [(0, 1)]], 1)
    res = R.residues()
    assert tuple(res[0].reduce(x) for x in W[0].v) == (1, 0)
    assert tuple(res[1].reduce(x) for x in W[0].v) == (0, 1)
    with pytest.raises(NotTransverse):
        complement_lift(F5, 2, [Vector(F5, [1, 0])], [[(2, 0)]], 1)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([2, 3, 5]), st.integers(2, 4), st.data())
def test_lift_matches_oracle(p, e, data):
    f = data.draw(st.sampled_from(O.irreducibles(p, 1)))
    L = O.LocalAlgebra(p, f, e)
    A = quotient(GF(p), "+".join(f"{c}*X^{i}" for i, c in enumerate(L.m) if c))
    n = 3
    C = [[tuple(data.draw(st.integers(0, p - 1)) for _ in range(e)) if j >= i else A.zero for j in range(n)] for i in range(n)]
    q = QuadraticForm.raw(A, C)
    if not q.is_nonsingular():
        return
    red = A.residues()[0].reduce
    Ck = [[red(c) for c in row] for row in C]
    target = O.local_isotropic_vector(Ck, O.LocalAlgebra(p, (0, 1), 1))
    res = lift_isotropic(LiftProblem(q, (tuple(int(t[0]) for t in target),)))
    assert q.value(res.vector.v) == A.zero
    assert tuple(red(x) for x in res.vector.v) == tuple(int(t[0]) for t in target)
    assert res.iterations <= math.ceil(math.log2(e))
