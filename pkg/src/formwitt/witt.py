"""Isotropy, hyperbolic completion, Witt decomposition, isometry and cancellation.

Searches are deterministic: vectors are ordered colexicographically (the last
coordinate is the most significant), each coordinate by its ring index, so
the first hit of an enumeration is the least witness.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple, Sequence

from . import linalg
from .errors import (
    Inconsistent,
    MixedRings,
    NotComplemented,
    NotInvertible,
    NotTotallyIsotropic,
    Singular,
    SingularPoint,
    Unsupported,
    UndecidableAnisotropy,
)
from .forms import QuadraticForm, Vector, direct_sum, hyperbolic_space, residue_forms
from .rings import RationalField, Ring

EXHAUSTIVE_LIMIT = 200_000
Q_SEARCH_BOUND = 10_000
ISOMETRY_SEARCH_LIMIT = 100_000


# -- results -------------------------------------------------------------------------


@dataclass(frozen=True)
class Isotropic:
    witness: Vector
    certificate: tuple  # per residue field: index of a coordinate that stays nonzero
    status = "isotropic"

    @property
    def is_isotropic(self) -> bool:
        return True


@dataclass(frozen=True)
class Anisotropic:
    certificate: str  # Exhausted | Definite | LocalObstruction | NonsplitClifford
    modulus: int | None = None
    detail: str = ""
    status = "anisotropic"

    @property
    def is_isotropic(self) -> bool:
        return False


@dataclass(frozen=True)
class Unknown:
    bound: int
    status = "unknown"

    @property
    def is_isotropic(self) -> bool:
        return False


IsotropyResult = Isotropic | Anisotropic | Unknown


@dataclass(frozen=True)
class WittDecomposition:
    index: int
    kernel: QuadraticForm
    transform: list  # n x n payload matrix, columns u1, v1, ..., um, vm, kernel basis
    kernel_certificate: object = None

    @property
    def pairs(self) -> list:
        cols = linalg.columns(self.transform)
        return [(cols[2 * i], cols[2 * i + 1]) for i in range(self.index)]

    @property
    def kernel_basis(self) -> list:
        return linalg.columns(self.transform)[2 * self.index:]


class HyperbolicCompletion(NamedTuple):
    V: list
    isometry: list  # n x 2k, columns u1, v1, u2, v2, ...


@dataclass(frozen=True)
class Isometry:
    """f with target(f x) = source(x); ``matrix`` is None for a verdict without witness."""

    matrix: list | None
    source: QuadraticForm = field(repr=False, default=None)
    target: QuadraticForm = field(repr=False, default=None)
    method: str = ""


# -- unimodularity ---------------------------------------------------------------------


def _residue_maps(R: Ring):
    if R.is_field:
        return [(R, lambda a: a)]
    return [(r.field, r.reduce) for r in R.residues()]


def unimodular_certificate(v: Vector) -> tuple | None:
    """Per residue field, the first coordinate that reduces to nonzero (None if some residue kills v)."""
    out = []
    for F, red in _residue_maps(v.ring):
        j = next((i for i, x in enumerate(v.v) if red(x) != F.zero), None)
        if j is None:
            return None
        out.append(j)
    return tuple(out)


def is_unimodular(v: Vector) -> bool:
    return unimodular_certificate(v) is not None


# -- isotropy search -----------------------------------------------------------------


def _field_search(q: QuadraticForm, target=None):
    """Least nonzero v with q(v) = 0 over a finite field: last nonzero coordinate 1."""
    F = q.ring
    n = q.rank
    elems = list(F.payloads())
    for k in range(n):
        tail = (F.one,) + (F.zero,) * (n - k - 1)
        for head in itertools.product(elems, repeat=k):
            v = head[::-1] + tail
            if q.value(v) == F.zero:
                return v
    return None


def _ring_search(q: QuadraticForm, value, unimodular: bool):
    """Least vector (colex order) with q(v) = value, over a finite ring."""
    R = q.ring
    elems = list(R.payloads())
    n = q.rank
    maps = _residue_maps(R)
    for t in itertools.product(elems, repeat=n):
        v = t[::-1]
        if q.value(v) != value:
            continue
        if unimodular and not all(any(red(x) != F.zero for x in v) for F, red in maps):
            continue
        return v
    return None


def _residue_route(q: QuadraticForm):
    """Isotropic vector of a form over a finite ring from its residue fields plus Newton lifting."""
    from .lifting import LiftProblem, lift_isotropic

    targets = []
    for qk in residue_forms(q):
        F = qk.ring
        v = _smooth_isotropic(qk)
        if v is None:
            return Anisotropic("Exhausted", detail=f"no isotropic vector over residue field {F}")
        targets.append(v)
    return lift_isotropic(LiftProblem(q, tuple(targets))).vector


def _smooth_isotropic(qk: QuadraticForm):
    """Least isotropic vector over a finite field at which b_q(v, .) does not vanish."""
    F = qk.ring
    B = qk.polar_matrix()
    v = _field_search(qk)
    if v is None:
        return None
    if any(x != F.zero for x in linalg.matvec(F, B, v)):
        return v
    n = qk.rank
    elems = list(F.payloads())
    for k in range(n):
        tail = (F.one,) + (F.zero,) * (n - k - 1)
        for head in itertools.product(elems, repeat=k):
            w = head[::-1] + tail
            if qk.value(w) == F.zero and any(x != F.zero for x in linalg.matvec(F, B, w)):
                return w
    raise SingularPoint(f"every isotropic vector over {F} is singular")


def find_isotropic(q: QuadraticForm, *, bound: int = Q_SEARCH_BOUND, exhaustive_limit: int = EXHAUSTIVE_LIMIT):
    """Decide isotropy (a unimodular v with q(v) = 0) with a certificate."""
    R = q.ring
    n = q.rank
    if n == 0:
        return Anisotropic("Exhausted", detail="rank 0")
    if isinstance(R, RationalField):
        return _find_isotropic_q(q, bound)
    if not R.is_finite:
        return Unknown(0)
    if R.is_field:
        v = _field_search(q)
    elif R.order ** n <= exhaustive_limit:
        v = _ring_search(q, R.zero, True)
    else:
        try:
            v = _residue_route(q)
        except SingularPoint:
            return Unknown(exhaustive_limit)
        if isinstance(v, Anisotropic):
            return v
        v = v.v
    if v is None:
        return Anisotropic("Exhausted")
    w = Vector.raw(R, v)
    return Isotropic(w, unimodular_certificate(w))


# -- the rational case -------------------------------------------------------------------


def _integral_coeffs(q: QuadraticForm) -> list:
    den = 1
    for row in q.C:
        for c in row:
            den = den * c.denominator // math.gcd(den, c.denominator)
    return [[int(c * den) for c in row] for row in q.C]


def _int_value(C, x):
    n = len(x)
    return sum(C[i][j] * x[i] * x[j] for i in range(n) for j in range(i, n))


def _primitive(v):
    den = 1
    for c in v:
        den = den * Fraction(c).denominator // math.gcd(den, Fraction(c).denominator)
    ints = [int(Fraction(c) * den) for c in v]
    g = 0
    for x in ints:
        g = math.gcd(g, x)
    ints = [x // g for x in ints]
    last = next(x for x in reversed(ints) if x)
    if last < 0:
        ints = [-x for x in ints]
    return ints


def _diagonal_signs(Q: Ring, B: list):
    """Signs of a diagonalization of the symmetric matrix B, or a kernel vector."""
    n = len(B)
    ker = linalg.kernel(Q, B, n)
    if ker:
        return None, ker[0]
    A = [list(r) for r in B]
    signs = []
    for k in range(n):
        if A[k][k] == 0:
            j = next((j for j in range(k + 1, n) if A[j][j] != 0), None)
            if j is not None:
                A[k], A[j] = A[j], A[k]
                for r in A:
                    r[k], r[j] = r[j], r[k]
            else:
                j = next(j for j in range(k + 1, n) if A[k][j] != 0)
                # replace e_k by e_k + e_j, which has value 2 A[k][j] != 0 on the diagonal
                for c in range(n):
                    A[k][c] += A[j][c]
                for r in A:
                    r[k] += r[j]
        p = A[k][k]
        signs.append(1 if p > 0 else -1)
        for i in range(k + 1, n):
            f = A[i][k] / p
            if f:
                for c in range(k, n):
                    A[i][c] -= f * A[k][c]
        for i in range(k + 1, n):
            A[k][i] = Fraction(0)
            A[i][k] = Fraction(0)
    return signs, None


_LOCAL_MODULI = (8, 3, 5, 9, 7, 16, 4, 11, 13, 25, 27)


def _local_obstruction(C, n: int):
    for m in _LOCAL_MODULI:
        if m ** n > 200_000:
            continue
        p = next(d for d in range(2, m + 1) if m % d == 0)
        found = False
        for x in itertools.product(range(m), repeat=n):
            if all(t % p == 0 for t in x):
                continue
            if _int_value(C, x) % m == 0:
                found = True
                break
        if not found:
            return m
    return None


def _height_vectors(n: int, h: int):
    """Primitive integer vectors of max-norm h with positive last nonzero coordinate."""
    order = [0]
    for t in range(1, h + 1):
        order += [t, -t]
    for t in itertools.product(order, repeat=n):
        x = t[::-1]
        if max(abs(a) for a in x) != h:
            continue
        last = next(a for a in reversed(x) if a)
        if last < 0:
            continue
        g = 0
        for a in x:
            g = math.gcd(g, a)
        if g == 1:
            yield x


def _find_isotropic_q(q: QuadraticForm, bound: int):
    Q = q.ring
    n = q.rank
    signs, ker = _diagonal_signs(Q, q.polar_matrix())
    if ker is not None:
        w = Vector.raw(Q, [Fraction(a) for a in _primitive(ker)])
        return Isotropic(w, unimodular_certificate(w))
    if all(s > 0 for s in signs) or all(s < 0 for s in signs):
        return Anisotropic("Definite")
    C = _integral_coeffs(q)
    m = _local_obstruction(C, n)
    if m is not None:
        return Anisotropic("LocalObstruction", modulus=m)
    tried = 0
    h = 1
    while tried < bound:
        for x in _height_vectors(n, h):
            tried += 1
            if _int_value(C, x) == 0:
                w = Vector.raw(Q, [Fraction(a) for a in x])
                return Isotropic(w, unimodular_certificate(w))
            if tried >= bound:
                break
        h += 1
    return Unknown(bound)


# -- hyperbolic completion and complements ----------------------------------------------


def _check_totally_isotropic(q: QuadraticForm, U: Sequence[Vector]):
    R = q.ring
    for i, u in enumerate(U):
        if q.value(u.v) != R.zero:
            raise NotTotallyIsotropic(f"q does not vanish on basis vector {i + 1}")
        for j in range(i):
            if q.polar_value(U[j].v, u.v) != R.zero:
                raise NotTotallyIsotropic(f"basis vectors {j + 1} and {i + 1} are not orthogonal")


def hyperbolic_complete(q: QuadraticForm, U: Sequence[Vector]) -> HyperbolicCompletion:
    """V with U + V hyperbolic: b_q(u_i, v_j) = delta_ij and q(V) = 0.

    A right inverse W of the pairing m -> (b_q(u_i, m))_i is found per residue
    field and glued (Newton-corrected over non-reduced rings); then
    v_j = w_j - sum_{i <= j} beta_ij u_i with beta the upper-triangular
    coefficient matrix of q on W.
    """
    R = q.ring
    n = q.rank
    k = len(U)
    if k == 0:
        return HyperbolicCompletion([], [[] for _ in range(n)])
    for u in U:
        if u.ring != R:
            raise MixedRings(f"vector over {u.ring}, form over {R}")
    _check_totally_isotropic(q, U)
    Ucols = [list(u.v) for u in U]
    fields = _residue_maps(R)
    for F, red in fields:
        if linalg.rank(F, [[red(x) for x in u] for u in Ucols]) != k:
            raise NotComplemented(f"U is not a direct summand (rank drops over {F})")
    B = q.polar_matrix()
    L = [linalg.matvec(R, B, u) for u in Ucols]  # k x n: row i is b_q(u_i, .)
    try:
        W = linalg.columns(linalg.right_inverse(R, L))
    except NotInvertible as exc:
        raise NotComplemented(f"pairing with U is not surjective: {exc}") from None
    beta = q.transform(linalg.from_columns(W, n)).C
    V = []
    for j in range(k):
        v = list(W[j])
        for i in range(j + 1):
            c = beta[i][j]
            if c != R.zero:
                v = [R.sub(a, R.mul(c, b)) for a, b in zip(v, Ucols[i])]
        V.append(Vector.raw(R, v))
    cols = []
    for u, v in zip(U, V):
        cols += [u.v, v.v]
    T = linalg.from_columns(cols, n)
    if q.transform(T) != hyperbolic_space(R, k):
        raise Inconsistent("hyperbolic completion failed its own check")
    return HyperbolicCompletion(V, T)


def orthogonal_complement(q: QuadraticForm, P: Sequence[Vector]) -> list:
    """Basis of the orthogonal complement of a regular free summand span(P)."""
    R = q.ring
    n = q.rank
    k = len(P)
    if k == 0:
        return [Vector.basis(R, n, i) for i in range(n)]
    B = q.polar_matrix()
    Pcols = [list(p.v) for p in P]
    PtB = [linalg.matvec(R, B, p) for p in Pcols]  # k x n
    G = [[_dot(R, PtB[i], Pcols[j]) for j in range(k)] for i in range(k)]
    try:
        Ginv = linalg.inverse(R, G)
    except NotInvertible:
        raise Singular("the subspace is not regular") from None
    E = linalg.extend_to_basis(R, Pcols, n)
    out = []
    for e in E:
        coeff = linalg.matvec(R, Ginv, linalg.matvec(R, PtB, e))
        v = list(e)
        for c, p in zip(coeff, Pcols):
            if c != R.zero:
                v = [R.sub(a, R.mul(c, b)) for a, b in zip(v, p)]
        out.append(Vector.raw(R, v))
    return out


def _dot(R, a, b):
    acc = R.zero
    for x, y in zip(a, b):
        acc = R.add(acc, R.mul(x, y))
    return acc


# -- Witt decomposition -------------------------------------------------------------------


def witt_decompose(q: QuadraticForm, **search) -> WittDecomposition:
    """Split off hyperbolic planes until the remaining form is anisotropic."""
    R = q.ring
    n = q.rank
    basis = [[R.one if i == j else R.zero for i in range(n)] for j in range(n)]
    pairs = []
    cur = q
    cert = None
    while True:
        res = find_isotropic(cur, **search)
        if isinstance(res, Unknown):
            raise UndecidableAnisotropy(f"isotropy search exhausted its bound {res.bound}")
        if isinstance(res, Anisotropic):
            cert = res
            break
        u = res.witness
        V, _ = hyperbolic_complete(cur, [u])
        v = V[0]
        comp = orthogonal_complement(cur, [u, v])
        M = linalg.from_columns(basis, n)
        pairs.append((linalg.matvec(R, M, u.v), linalg.matvec(R, M, v.v)))
        basis = [linalg.matvec(R, M, c.v) for c in comp]
        cur = q.restrict([Vector.raw(R, b) for b in basis])
    cols = []
    for u, v in pairs:
        cols += [u, v]
    cols += basis
    T = linalg.from_columns(cols, n)
    if q.transform(T) != direct_sum(hyperbolic_space(R, len(pairs)), cur):
        raise Inconsistent("Witt decomposition failed its own check")
    return WittDecomposition(len(pairs), cur, T, cert)


def is_hyperbolic(q: QuadraticForm, **search) -> list | None:
    """A Lagrangian basis U (q(U) = 0, U = U^perp) or None."""
    if q.rank % 2:
        return None
    wd = witt_decompose(q, **search)
    if 2 * wd.index != q.rank:
        return None
    return [Vector.raw(q.ring, u) for u, _ in wd.pairs]


# -- isometry ---------------------------------------------------------------------------


def _identity_isometry(q, q2):
    R = q.ring
    return Isometry(linalg.identity(R, q.rank), q, q2, "identity")


def _graph_isometry(q: QuadraticForm, q2: QuadraticForm, L: list):
    R = q.ring
    n = q.rank
    A = [[u.v[i] for u in L] for i in range(n)]
    Bm = [[u.v[n + i] for u in L] for i in range(n)]
    if not linalg.is_invertible(R, A):
        return None
    f = linalg.matmul(R, Bm, linalg.inverse(R, A))
    if q2.transform(f) != q or not linalg.is_invertible(R, f):
        return None
    return f


def isometry_search(q: QuadraticForm, q2: QuadraticForm, limit: int = ISOMETRY_SEARCH_LIMIT):
    """Exhaustive search for g with q2(g x) = q(x) over a finite ring; None if too large or absent.

    Returns (found, matrix): ``found`` is False when the search was skipped.
    """
    R = q.ring
    r = q.rank
    if r == 0:
        return True, []
    if not R.is_finite or R.order ** r > limit:
        return False, None
    elems = list(R.payloads())
    cands = [t[::-1] for t in itertools.product(elems, repeat=r)]
    by_value = {}
    for v in cands:
        by_value.setdefault(q2.value(v), []).append(v)
    chosen = []

    def extend(i):
        if i == r:
            M = linalg.from_columns(chosen, r)
            return M if linalg.is_invertible(R, M) else None
        for v in by_value.get(q.C[i][i], []):
            if all(q2.polar_value(chosen[j], v) == q.C[j][i] for j in range(i)):
                chosen.append(v)
                M = extend(i + 1)
                if M is not None:
                    return M
                chosen.pop()
        return None

    return True, extend(0)


def _decomposition_isometry(q: QuadraticForm, q2: QuadraticForm, **search):
    """Compare Witt decompositions; returns (decided, matrix or None)."""
    R = q.ring
    w1 = witt_decompose(q, **search)
    w2 = witt_decompose(q2, **search)
    if w1.index != w2.index:
        return True, None
    found, g = isometry_search(w1.kernel, w2.kernel)
    if not found:
        return False, None
    if g is None:
        return True, None
    m = 2 * w1.index
    n = q.rank
    D = linalg.identity(R, n)
    for i in range(len(g)):
        for j in range(len(g)):
            D[m + i][m + j] = g[i][j]
    f = linalg.matmul(R, linalg.matmul(R, w2.transform, D), linalg.inverse(R, w1.transform))
    if q2.transform(f) != q:
        raise Inconsistent("composed isometry failed its check")
    return True, f


def is_isometric(q: QuadraticForm, q2: QuadraticForm, **search) -> Isometry | None:
    """An isometry f with q2(f x) = q(x), decided through hyperbolicity of q + (-q2)."""
    if q.ring != q2.ring:
        raise MixedRings(f"forms over {q.ring} and {q2.ring}")
    if q.rank != q2.rank:
        return None
    if q == q2:
        return _identity_isometry(q, q2)
    regular = q.is_regular() and q2.is_regular()
    if regular:
        L = is_hyperbolic(direct_sum(q, -q2), **search)
        if L is None:
            return None
        f = _graph_isometry(q, q2, L)
        if f is not None:
            return Isometry(f, q, q2, "graph")
        decided, f = _decomposition_isometry(q, q2, **search)
        if f is not None:
            return Isometry(f, q, q2, "decomposition")
        if decided:
            raise Inconsistent("q + (-q2) is hyperbolic but the decompositions disagree")
        return Isometry(None, q, q2, "hyperbolicity")
    decided, f = _decomposition_isometry(q, q2, **search)
    if not decided:
        raise Unsupported("isometry of non-regular forms needs a feasible exhaustive kernel search")
    return Isometry(f, q, q2, "decomposition") if f is not None else None


def witt_cancel(q1: QuadraticForm, sum12: QuadraticForm, sum12b: QuadraticForm, **search) -> Isometry | None:
    """Cancel q1 from q1 + q2 and q1 + q2'.

    ``q1`` must be the restriction of both sums to their first rank(q1)
    coordinates.  The verdict is that of sum12 against sum12b; the returned
    isometry maps the complement of q1 in sum12 onto the one in sum12b.
    """
    R = q1.ring
    k = q1.rank
    if not q1.is_regular():
        raise Singular("the cancelled form must be regular")
    for s in (sum12, sum12b):
        if s.ring != R:
            raise MixedRings(f"forms over {R} and {s.ring}")
        if s.rank < k or s.restrict([Vector.basis(R, s.rank, i) for i in range(k)]) != q1:
            raise Inconsistent("q1 is not the first block of the sum")
    if sum12.rank != sum12b.rank:
        return None
    first = [Vector.basis(R, sum12.rank, i) for i in range(k)]
    q2 = sum12.restrict(orthogonal_complement(sum12, first))
    q2b = sum12b.restrict(orthogonal_complement(sum12b, first))
    verdict = is_isometric(sum12, sum12b, **search) is not None
    direct = is_isometric(q2, q2b, **search)
    if verdict != (direct is not None):
        raise Inconsistent("cancellation verdict disagrees with the complements")
    return direct


# -- value sets --------------------------------------------------------------------------


def _represent_over_field(q: QuadraticForm, a, **search):
    F = q.ring
    aug = direct_sum(q, QuadraticForm.diagonal(F, [F.neg(a)]))
    res = find_isotropic(aug, **search)
    if isinstance(res, Unknown):
        raise UndecidableAnisotropy(f"search bound {res.bound} exhausted")
    if isinstance(res, Anisotropic):
        return None
    x = res.witness.v
    t = x[-1]
    if t != F.zero:
        ti = F.inv(t)
        return tuple(F.mul(c, ti) for c in x[:-1])
    # q itself is isotropic: represent a in a hyperbolic plane
    u = Vector.raw(F, x[:-1])
    V, _ = hyperbolic_complete(q, [u])
    return tuple(F.add(p, F.mul(a, s)) for p, s in zip(u.v, V[0].v))


def represents(q: QuadraticForm, a, **search) -> Vector | None:
    """Some m with q(m) = a for a unit a, or None when a is not a value of q."""
    R = q.ring
    a = a.value if hasattr(a, "value") else R.coerce(a)
    if not R.is_unit(a):
        raise ValueError("represents expects a unit")
    if q.rank == 0:
        return None
    if R.is_field:
        m = _represent_over_field(q, a, **search)
        return None if m is None else Vector.raw(R, m)
    if R.is_finite and R.order ** q.rank <= search.get("exhaustive_limit", EXHAUSTIVE_LIMIT):
        m = _ring_search(q, a, False)
        return None if m is None else Vector.raw(R, m)
    from .lifting import LiftProblem, lift_isotropic

    aug = direct_sum(q, QuadraticForm.diagonal(R, [R.neg(a)]))
    targets = []
    for (F, red), qk in zip(_residue_maps(R), residue_forms(q)):
        m = _represent_over_field(qk, red(a), **search)
        if m is None:
            return None
        targets.append(m + (F.one,))
    x = lift_isotropic(LiftProblem(aug, tuple(targets))).vector.v
    rinv = R.inv(x[-1])
    return Vector.raw(R, [R.mul(c, rinv) for c in x[:-1]])
