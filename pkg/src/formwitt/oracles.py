"""Brute-force reference arithmetic used to cross-check the library.

Nothing here imports the algebra layers of formwitt: polynomials over GF(p)
are plain int tuples (lowest degree first), algebras GF(p)[X]/(m) are numpy
structure tensors, and every search is a vectorized enumeration.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

import numpy as np

CHUNK = 1 << 15


# -- polynomials over GF(p) --------------------------------------------------------------


def ptrim(a) -> tuple:
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return tuple(a)


def padd(a, b, p):
    n = max(len(a), len(b))
    return ptrim(((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)) % p for i in range(n))


def psub(a, b, p):
    return padd(a, tuple(-x % p for x in b), p)


def pmul(a, b, p):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return ptrim(out)


def pdivmod(a, b, p):
    """Division by a nonzero b (leading coefficient inverted mod p)."""
    a = list(ptrim(a))
    b = ptrim(b)
    inv = pow(b[-1], -1, p)
    q = [0] * max(0, len(a) - len(b) + 1)
    while len(a) >= len(b) and a:
        c = a[-1] * inv % p
        k = len(a) - len(b)
        q[k] = c
        for i, y in enumerate(b):
            a[k + i] = (a[k + i] - c * y) % p
        a = list(ptrim(a))
    return ptrim(q), ptrim(a)


def pmod(a, b, p):
    return pdivmod(a, b, p)[1]


def pgcd(a, b, p):
    a, b = ptrim(a), ptrim(b)
    while b:
        a, b = b, pmod(a, b, p)
    if not a:
        return a
    inv = pow(a[-1], -1, p)
    return tuple(x * inv % p for x in a)


def peval(a, x, p):
    acc = 0
    for c in reversed(a):
        acc = (acc * x + c) % p
    return acc


def monic_polys(p, d):
    for t in itertools.product(range(p), repeat=d):
        yield tuple(t) + (1,)


@lru_cache(maxsize=None)
def irreducibles(p, d) -> tuple:
    out = []
    for f in monic_polys(p, d):
        if all(pmod(f, g, p) for k in range(1, d // 2 + 1) for g in irreducibles(p, k)):
            out.append(f)
    return tuple(out)


@lru_cache(maxsize=None)
def factor_poly(f, p) -> tuple:
    """Monic f as ((g, e), ...) by trial division with irreducibles."""
    f = ptrim(f)
    out = []
    d = 1
    while len(f) > 1:
        if 2 * d > len(f) - 1:
            out.append((f, 1))
            break
        for g in irreducibles(p, d):
            e = 0
            while True:
                q, r = pdivmod(f, g, p)
                if r:
                    break
                f, e = q, e + 1
            if e:
                out.append((g, e))
        d += 1
    merged = {}
    for g, e in out:
        merged[g] = merged.get(g, 0) + e
    return tuple(sorted(merged.items(), key=lambda t: (len(t[0]), t[0])))


# -- algebras GF(p)[X]/(m) ------------------------------------------------------------------


class Algebra:
    """GF(p)[X]/(m) with elements as int vectors of length deg m."""

    def __init__(self, p: int, m: tuple):
        self.p = p
        self.m = ptrim(m)
        D = len(self.m) - 1
        self.D = D
        T = np.zeros((D, D, D), dtype=np.int64)
        for i in range(D):
            for j in range(D):
                mono = (0,) * (i + j) + (1,)
                r = pmod(mono, self.m, p)
                T[i, j, : len(r)] = r
        self.T = T
        self._T2 = T.reshape(D * D, D)

    @property
    def order(self) -> int:
        return self.p ** self.D

    def elem(self, poly) -> np.ndarray:
        r = pmod(ptrim(poly), self.m, self.p)
        out = np.zeros(self.D, dtype=np.int64)
        out[: len(r)] = r
        return out

    def one(self):
        return self.elem((1,))

    def mul(self, A, B):
        """Elementwise product of stacks (..., D)."""
        A, B = np.broadcast_arrays(A, B)
        outer = (A[..., :, None] * B[..., None, :]).reshape(A.shape[:-1] + (self.D * self.D,))
        return (outer @ self._T2) % self.p

    def all_elements(self) -> np.ndarray:
        if getattr(self, "_all", None) is None:
            idx = np.arange(self.order)
            self._all = np.stack([(idx // self.p ** k) % self.p for k in range(self.D)], axis=-1).astype(np.int64)
        return self._all

    def is_zero(self, A):
        return ~np.any(A % self.p, axis=-1)

    def to_poly(self, a) -> tuple:
        return ptrim(int(x) % self.p for x in a)

    def power(self, a, n):
        out = self.one()
        base = np.array(a, dtype=np.int64)
        while n:
            if n & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            n >>= 1
        return out


class LocalAlgebra(Algebra):
    """GF(p)[X]/(g^e) with g irreducible; the maximal ideal is (g)."""

    def __init__(self, p: int, g: tuple, e: int):
        m = (1,)
        for _ in range(e):
            m = pmul(m, g, p)
        super().__init__(p, m)
        self.g = ptrim(g)
        self.e = e

    def residue(self, a) -> tuple:
        return pmod(self.to_poly(a), self.g, self.p)

    def max_ideal(self) -> np.ndarray:
        if getattr(self, "_max", None) is None:
            self._max = self._max_ideal()
        return self._max

    def _max_ideal(self) -> np.ndarray:
        k = len(self.g) - 1
        rest = Algebra(self.p, (0,) * (self.D - k) + (1,)).all_elements() if self.D > k else np.zeros((1, 0), dtype=np.int64)
        out = []
        for r in rest:
            poly = pmul(self.g, ptrim(int(x) for x in r), self.p)
            out.append(self.elem(poly))
        return np.array(out, dtype=np.int64).reshape(-1, self.D)


def quad_eval(alg: Algebra, C, V):
    """q(v) for a stack V of shape (N, n, D); C is an n x n upper-triangular int matrix."""
    n = len(C)
    acc = np.zeros(V.shape[:1] + (alg.D,), dtype=np.int64)
    for i in range(n):
        for j in range(i, n):
            c = C[i][j] % alg.p
            if c:
                acc = (acc + c * alg.mul(V[:, i], V[:, j])) % alg.p
    return acc


def quad_eval_alg(alg: Algebra, C, V):
    """As quad_eval, with coefficients that are algebra elements (n x n x D array)."""
    n = C.shape[0]
    acc = np.zeros(V.shape[:1] + (alg.D,), dtype=np.int64)
    for i in range(n):
        for j in range(i, n):
            if np.any(C[i, j]):
                t = alg.mul(V[:, i], V[:, j])
                acc = (acc + alg.mul(np.broadcast_to(C[i, j], t.shape), t)) % alg.p
    return acc


def polar_eval(alg: Algebra, C, U, W):
    n = len(C)
    acc = np.zeros(U.shape[:1] + (alg.D,), dtype=np.int64)
    for i in range(n):
        for j in range(i, n):
            c = C[i][j] % alg.p
            if not c:
                continue
            if i == j:
                t = 2 * alg.mul(U[:, i], W[:, i])
            else:
                t = alg.mul(U[:, i], W[:, j]) + alg.mul(U[:, j], W[:, i])
            acc = (acc + c * t) % alg.p
    return acc


def _mixed(sets, start, stop):
    """Rows start..stop of the colex product of the candidate sets (first set fastest)."""
    idx = np.arange(start, stop)
    cols = []
    for s in sets:
        cols.append(s[idx % len(s)])
        idx = idx // len(s)
    return np.stack(cols, axis=1)


def _search(alg: Algebra, sets, pred, first: int = 64):
    total = 1
    for s in sets:
        total *= len(s)
    # chunks grow geometrically: most hits come early
    start, size = 0, first
    while start < total:
        V = _mixed(sets, start, min(total, start + size))
        hit = np.flatnonzero(pred(V))
        if hit.size:
            return V[hit[0]]
        start += size
        size = min(2 * size, CHUNK)
    return None


def local_isotropic_vector(C, alg: LocalAlgebra):
    """A unimodular isotropic vector over a local algebra, or None (exhaustive).

    Unimodular vectors are normalized so that the first unit coordinate is 1;
    earlier coordinates then run over the maximal ideal. Low-degree candidates
    are tried first, which finds most witnesses quickly.
    """
    n = len(C)
    A = alg.all_elements()
    M = alg.max_ideal()
    one = alg.one()[None, :]
    pred = lambda V: alg.is_zero(quad_eval(alg, C, V))  # noqa: E731
    for k in range(n):
        # tiers: free coordinates of degree < j first; the last tier is the full set
        free = n - k - 1
        for j in range(1 if free > 1 else alg.D, alg.D + 1):
            sets = [M] * k + [one] + [A[: alg.p ** j]] * free
            v = _search(alg, sets, pred, first=64 if free > 1 else CHUNK)
            if v is not None:
                return v
    return None


def local_represents(C, alg: Algebra, a) -> np.ndarray | None:
    """Some v with q(v) = a over the algebra (exhaustive)."""
    n = len(C)
    A = alg.all_elements()
    target = alg.elem(a)
    return _search(alg, [A] * n, lambda V: ~np.any((quad_eval(alg, C, V) - target) % alg.p, axis=-1))


def local_factors(P: tuple, p: int) -> list:
    return [LocalAlgebra(p, g, e) for g, e in factor_poly(ptrim(P), p)]


def crt_idempotents(P: tuple, p: int, locs: list) -> list:
    """Polynomials E_i with E_i = 1 mod g_i^e_i and 0 mod the other local moduli."""
    out = []
    for L in locs:
        Mi = pdivmod(P, L.m, p)[0]
        # solve Mi * x = 1 in L by Gaussian elimination on the multiplication matrix
        D = L.D
        cols = [L.elem(pmul(Mi, (0,) * j + (1,), p)) for j in range(D)]
        A = [[int(cols[j][i]) for j in range(D)] + [1 if i == 0 else 0] for i in range(D)]
        x = _solve_mod_p(A, D, p)
        out.append(pmod(pmul(Mi, ptrim(x), p), P, p))
    return out


def _solve_mod_p(A, n, p):
    A = [row[:] for row in A]
    r = 0
    piv = []
    for c in range(n):
        pr = next((i for i in range(r, len(A)) if A[i][c] % p), None)
        if pr is None:
            continue
        A[r], A[pr] = A[pr], A[r]
        inv = pow(A[r][c], -1, p)
        A[r] = [x * inv % p for x in A[r]]
        for i in range(len(A)):
            if i != r and A[i][c] % p:
                f = A[i][c]
                A[i] = [(x - f * y) % p for x, y in zip(A[i], A[r])]
        piv.append(c)
        r += 1
    x = [0] * n
    for i, c in enumerate(piv):
        x[c] = A[i][n]
    return x


def crt_vector(P: tuple, p: int, locs: list, parts: list) -> list:
    """Coordinates in GF(p)[X]/(P) (as polynomials) reducing to the given local vectors."""
    E = crt_idempotents(P, p, locs)
    n = len(parts[0])
    out = []
    for i in range(n):
        acc = ()
        for Ei, L, v in zip(E, locs, parts):
            acc = padd(acc, pmul(Ei, L.to_poly(v[i]), p), p)
        out.append(pmod(acc, P, p))
    return out


# -- forms over GF(p) ---------------------------------------------------------------------


def field_forms(p: int, n: int):
    """All upper-triangular coefficient matrices over GF(p) of rank n."""
    slots = [(i, j) for i in range(n) for j in range(i, n)]
    for vals in itertools.product(range(p), repeat=len(slots)):
        C = [[0] * n for _ in range(n)]
        for (i, j), v in zip(slots, vals):
            C[i][j] = v
        yield C


def polar_matrix(C, p):
    n = len(C)
    return [[(C[i][j] + C[j][i]) % p if i != j else 2 * C[i][i] % p for j in range(n)] for i in range(n)]


def rank_mod_p(M, p) -> int:
    A = [list(r) for r in M]
    if not A:
        return 0
    cols = len(A[0])
    r = 0
    for c in range(cols):
        pr = next((i for i in range(r, len(A)) if A[i][c] % p), None)
        if pr is None:
            continue
        A[r], A[pr] = A[pr], A[r]
        inv = pow(A[r][c], -1, p)
        A[r] = [x * inv % p for x in A[r]]
        for i in range(len(A)):
            if i != r and A[i][c] % p:
                f = A[i][c]
                A[i] = [(x - f * y) % p for x, y in zip(A[i], A[r])]
        r += 1
    return r


def field_nonsingular(C, p) -> bool:
    """No nonzero v with q(v) = 0 and b_q(v, .) = 0 (exhaustive)."""
    n = len(C)
    alg = Algebra(p, (0, 1))
    B = polar_matrix(C, p)
    if rank_mod_p(B, p) == n:
        return True
    for v in itertools.product(range(p), repeat=n):
        if not any(v):
            continue
        Bv = [sum(B[i][j] * v[j] for j in range(n)) % p for i in range(n)]
        if any(Bv):
            continue
        V = np.array(v, dtype=np.int64).reshape(1, n, 1)
        if alg.is_zero(quad_eval(alg, C, V))[0]:
            return False
    return True


def field_isotropic(C, p) -> bool:
    return local_isotropic_vector(C, LocalAlgebra(p, (0, 1), 1)) is not None


def field_represents(C, p, a) -> bool:
    return local_represents(C, Algebra(p, (0, 1)), (a % p,)) is not None


def gl_matrices(p: int, n: int):
    for t in itertools.product(range(p), repeat=n * n):
        M = [list(t[i * n:(i + 1) * n]) for i in range(n)]
        if rank_mod_p(M, p) == n:
            yield M


def transport(C, M, p):
    """Coefficients of x -> q(M x)."""
    n = len(C)
    B = polar_matrix(C, p)
    cols = [[M[i][j] for i in range(n)] for j in range(n)]

    def qv(v):
        return sum(C[i][j] * v[i] * v[j] for i in range(n) for j in range(i, n)) % p

    out = [[0] * n for _ in range(n)]
    for i in range(n):
        out[i][i] = qv(cols[i])
        for j in range(i + 1, n):
            out[i][j] = sum(cols[i][a] * B[a][b] * cols[j][b] for a in range(n) for b in range(n)) % p
    return out


def field_isometric(C1, C2, p) -> bool:
    """Brute force over GL_n(GF(p))."""
    n = len(C1)
    if n != len(C2):
        return False
    t1 = [[x % p for x in r] for r in C1]
    return any(transport(C2, M, p) == t1 for M in gl_matrices(p, n))


def is_square_in_extension(a: int, p: int, d: int) -> bool:
    """Euler's criterion for a in GF(p) inside GF(p^d), computed in GF(p)[X]/(g)."""
    if a % p == 0:
        return True
    if p == 2:
        return True
    g = irreducibles(p, d)[0]
    F = Algebra(p, g)
    x = F.power(F.elem((a % p,)), (p ** d - 1) // 2)
    return F.to_poly(x) == (1,)
