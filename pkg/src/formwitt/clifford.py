"""Even Clifford algebras of binary forms and the rank-2 odd-degree descent.

For q = a x^2 + b xy + c y^2 the even Clifford algebra is A = R[w] with
w = e1 e2 and w^2 = b w - ac.  M = R^2 is a right A-module via
e1 w = a e2, e2 w = -c e1 + b e2, and q(m s) = q(m) n_A(s).  If A splits, a
nontrivial idempotent e has n_A(e) = 0, so M e is a free isotropic line.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import linalg
from .errors import DegreeMismatch, DimensionMismatch, EvenDegree, Inconsistent, Singular
from .forms import QuadraticForm, Vector, base_change
from .rings import QuotientAlgebra, Ring, RingElement, RingHom, inclusion, roots
from .rings.poly import Polynomial
from .witt import Anisotropic, Isotropic, unimodular_certificate


@dataclass(frozen=True)
class QuadraticEtale:
    """A = R[w]/(w^2 - beta w + gamma) with unit discriminant."""

    ring: Ring
    beta: object
    gamma: object

    def __post_init__(self):
        if not self.ring.is_unit(self.delta):
            raise Singular(f"discriminant {self.ring.format(self.delta)} is not a unit")

    @property
    def delta(self):
        R = self.ring
        return R.sub(R.mul(self.beta, self.beta), R.mul(R.from_int(4), self.gamma))

    def polynomial(self) -> Polynomial:
        R = self.ring
        return Polynomial.raw(R, [self.gamma, R.neg(self.beta), R.one])

    def mul(self, s, t):
        """(x1 + y1 w)(x2 + y2 w) on payload pairs."""
        R = self.ring
        x1, y1 = s
        x2, y2 = t
        yy = R.mul(y1, y2)
        return (
            R.sub(R.mul(x1, x2), R.mul(self.gamma, yy)),
            R.add(R.add(R.mul(x1, y2), R.mul(x2, y1)), R.mul(self.beta, yy)),
        )

    def norm(self, s):
        R = self.ring
        x, y = s
        return R.add(R.add(R.mul(x, x), R.mul(self.beta, R.mul(x, y))), R.mul(self.gamma, R.mul(y, y)))

    def conjugate(self, s):
        R = self.ring
        x, y = s
        return (R.add(x, R.mul(self.beta, y)), R.neg(y))

    def base_change(self, hom) -> "QuadraticEtale":
        h = hom if isinstance(hom, RingHom) else inclusion(self.ring, hom)
        return QuadraticEtale(h.target, h.fn(self.beta), h.fn(self.gamma))

    def __str__(self):
        return f"{self.ring}[z]/({self.polynomial().__str__().replace('X', 'z')})"


def even_clifford(q: QuadraticForm) -> QuadraticEtale:
    if q.rank != 2:
        raise DimensionMismatch(f"even_clifford needs a binary form, got rank {q.rank}")
    R = q.ring
    a, b, c = q.C[0][0], q.C[0][1], q.C[1][1]
    return QuadraticEtale(R, b, R.mul(a, c))


def norm_form(A: QuadraticEtale) -> QuadraticForm:
    """n_A(x + y w) = x^2 + beta x y + gamma y^2."""
    R = A.ring
    return QuadraticForm.raw(R, [[R.one, A.beta], [R.zero, A.gamma]])


def _field_roots(A: QuadraticEtale) -> list:
    F = A.ring
    return sorted((r.value for r in roots(A.polynomial())), key=F.sort_key)


def is_split(A: QuadraticEtale) -> RingElement | None:
    """A root of w^2 - beta w + gamma in R (the least one over fields), or None."""
    R = A.ring
    if R.is_field:
        rs = _field_roots(A)
        return RingElement(R, rs[0]) if rs else None
    data = R.residues()
    per = []
    for res in data:
        r = is_split(QuadraticEtale(res.field, res.reduce(A.beta), res.reduce(A.gamma)))
        if r is None:
            return None
        per.append(r.value)
    z = R.lift_residues(per)
    f = A.polynomial()
    # Newton on a simple root: f'(z)^2 = delta is a unit
    for _ in range(max(1, data.nilpotency).bit_length() + 1):
        fz = f(RingElement(R, z)).value
        if fz == R.zero:
            return RingElement(R, z)
        df = R.sub(R.add(z, z), A.beta)
        z = R.sub(z, R.mul(fz, R.inv(df)))
    if f(RingElement(R, z)).value != R.zero:
        raise Inconsistent("Hensel lifting of the root did not converge")
    return RingElement(R, z)


def relative_degree(R: Ring, S: Ring | None) -> int:
    if S is None or S == R:
        return 1
    if isinstance(S, QuotientAlgebra) and S.base == R:
        return S.degree
    raise DegreeMismatch(f"{S} is not presented as R[X]/(P) over {R}")


def idempotent(A: QuadraticEtale, r=None):
    """e = (w - r) / (r' - r) with r' = beta - r; returns payload pair and the root used."""
    R = A.ring
    if r is None:
        root = is_split(A)
        if root is None:
            return None
        r = root.value
    r2 = R.sub(A.beta, r)
    inv = R.inv(R.sub(r2, r))
    return (R.neg(R.mul(r, inv)), inv)


def _omega_matrix(q: QuadraticForm) -> list:
    R = q.ring
    a, b, c = q.C[0][0], q.C[0][1], q.C[1][1]
    # columns are e1 w = a e2 and e2 w = -c e1 + b e2
    return [[R.zero, R.neg(c)], [a, b]]


def _check_witness(q: QuadraticForm, S: Ring, witness) -> bool:
    if witness is None:
        return False
    if not isinstance(witness, Vector):
        witness = Vector(S, witness)
    qS = base_change(q, S) if S != q.ring else q
    if qS.value(witness.v) != S.zero or unimodular_certificate(witness) is None:
        raise Inconsistent("the given S-witness is not a unimodular isotropic vector")
    return True


def rank2_springer(q: QuadraticForm, S: Ring | None = None, witness=None):
    """Isotropy of a nonsingular binary q over R, using that q_S isotropic forces A split."""
    R = q.ring
    if q.rank != 2:
        raise DimensionMismatch(f"rank2_springer needs a binary form, got rank {q.rank}")
    d = relative_degree(R, S)
    if d % 2 == 0:
        raise EvenDegree(f"extension degree {d} is even")
    has_witness = _check_witness(q, S if S is not None else R, witness)
    A = even_clifford(q)
    e = idempotent(A)
    if e is None:
        if has_witness:
            raise Inconsistent("isotropic over S but the Clifford algebra does not split over R")
        return Anisotropic("NonsplitClifford")
    x, y = e
    Om = _omega_matrix(q)
    E = [[R.add(R.mul(x, R.one if i == j else R.zero), R.mul(y, Om[i][j])) for j in range(2)] for i in range(2)]
    if R.is_field:
        j = next(j for j in range(2) if E[0][j] != R.zero or E[1][j] != R.zero)
        v = [E[0][j], E[1][j]]
        lead = next(t for t in v if t != R.zero)
        inv = R.inv(lead)
        v = [R.mul(inv, t) for t in v]
    else:
        per = []
        for res in R.residues():
            Ek = linalg.map_matrix(res.reduce, E)
            j = next(j for j in range(2) if Ek[0][j] != res.field.zero or Ek[1][j] != res.field.zero)
            per.append([res.field.one if i == j else res.field.zero for i in range(2)])
        w = [R.lift_residues([p[i] for p in per]) for i in range(2)]
        v = linalg.matvec(R, E, w)
    vec = Vector.raw(R, v)
    cert = unimodular_certificate(vec)
    if q.value(vec.v) != R.zero or cert is None:
        raise Inconsistent("idempotent construction did not give an isotropic line")
    return Isotropic(vec, cert)


def splitting_invariance_check(A: QuadraticEtale, S: Ring) -> bool:
    """is_split(A) == is_split(A_S)."""
    return (is_split(A) is not None) == (is_split(A.base_change(S)) is not None)
