"""The brute-force oracles themselves, checked against sympy and by hand."""

import itertools

import numpy as np
import sympy

from formwitt import oracles as O


def test_irreducible_counts_match_necklace_formula():
    # number of monic irreducibles of degree d over GF(p)
    def count(p, d):
        return sum(sympy.mobius(d // k) * p ** k for k in sympy.divisors(d)) // d

    for p, d in [(2, 3), (2, 5), (3, 2), (3, 3), (5, 3), (3, 5)]:
        assert len(O.irreducibles(p, d)) == count(p, d)


def test_factor_poly_matches_sympy():
    x = sympy.symbols("x")
    for p in (2, 3, 5):
        for P in itertools.islice(O.monic_polys(p, 4), 0, None, 7):
            ours = sorted((len(g) - 1, e) for g, e in O.factor_poly(P, p))
            ref = sympy.factor_list(sympy.Poly(list(reversed(P)), x, modulus=p))[1]
            assert ours == sorted((g.degree(), e) for g, e in ref)


def test_crt_idempotents():
    P = O.pmul((1, 1), (2, 1), 5)  # (X+1)(X+2)
    locs = O.local_factors(P, 5)
    E = O.crt_idempotents(P, 5, locs)
    for i, (Ei, L) in enumerate(zip(E, locs)):
        for j, M in enumerate(locs):
            r = O.pmod(Ei, M.m, 5)
            assert r == ((1,) if i == j else ())
    assert sorted(E) == sorted([(2, 1), (4, 4)])  # X+2 and 4X+4


def test_gf9_isotropy():
    L = O.LocalAlgebra(3, O.irreducibles(3, 2)[0], 1)
    v = O.local_isotropic_vector([[1, 0], [0, 1]], L)
    assert v is not None
    val = O.quad_eval(L, [[1, 0], [0, 1]], v[None])
    assert not val.any()
    assert not O.field_isotropic([[1, 0], [0, 1]], 3)


def test_local_algebra_max_ideal():
    L = O.LocalAlgebra(3, (1, 1), 2)
    M = L.max_ideal()
    assert len(M) == 3
    for m in M:
        assert L.residue(m) == ()


def test_algebra_multiplication_is_associative():
    A = O.Algebra(5, (1, 0, 1, 1))
    rng = np.random.default_rng(0)
    a, b, c = (rng.integers(0, 5, size=(20, 3)) for _ in range(3))
    assert np.array_equal(A.mul(A.mul(a, b), c), A.mul(a, A.mul(b, c)))


def test_square_classes():
    assert O.is_square_in_extension(2, 3, 2)
    assert not O.is_square_in_extension(2, 3, 3)
    assert not O.is_square_in_extension(2, 5, 5)


def test_field_isometric_by_hand():
    assert O.field_isometric([[1, 0], [0, 1]], [[0, 1], [0, 0]], 5)
    assert not O.field_isometric([[1, 0], [0, 1]], [[0, 1], [0, 0]], 3)
