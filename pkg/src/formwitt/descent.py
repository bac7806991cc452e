"""Odd-degree descent of isotropic vectors and of represented values.

Field case: a nonzero isotropic vector over k[X]/(P_i) with P_i irreducible
of odd degree m is written as v(X) with coprime coordinates of degree < m.
Either its top coefficient vector is isotropic over k, or q(v(X)) = P_i h
with deg h odd and < m, and some odd-degree irreducible factor of h gives a
smaller extension to recurse into.

Semilocal case: for S = R[X]/(P) with deg P = d, residue-field solutions
v_i(X) = -a u + R(X) v + X^(d-1) w of q(v_i) = a P Q are glued by CRT,
made exactly isotropic over S by Newton steps, and then
q(v(X)) = u P(X) Q(X) with u a unit and Q monic of degree d - 2, which
continues the recursion over R[X]/(Q).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .clifford import rank2_springer, relative_degree
from .errors import (
    DegreeOne,
    EvenDegree,
    Inconsistent,
    LeadingCoeffNotUnit,
    NonConstantDegree,
    NonMonicDivisor,
    NotIsotropic,
    RankTooSmall,
    SingularAugmented,
    UnsupportedEtalePresentation,
)
from .forms import QuadraticForm, Vector, base_change, direct_sum, is_nonsingular
from .lifting import LiftProblem, lift_isotropic, newton_refine
from .rings import ProductRing, QuotientAlgebra, RationalField, Ring, RingElement, algebra_norm, factor
from .rings.poly import Polynomial, euclidean_divide, poly_gcd
from .witt import (
    Anisotropic,
    Isotropic,
    Unknown,
    find_isotropic,
    hyperbolic_complete,
    orthogonal_complement,
    unimodular_certificate,
    _primitive,
)


class PolyVector:
    """v(X) = m_0 + m_1 X + ... + m_e X^e, stored as one polynomial per coordinate."""

    def __init__(self, ring: Ring, coords: Sequence[Polynomial]):
        self.ring = ring
        self.coords = tuple(coords)

    @classmethod
    def from_coefficients(cls, ring: Ring, vectors: Sequence[Vector]) -> "PolyVector":
        n = len(vectors[0])
        return cls(ring, [Polynomial.raw(ring, [m.v[i] for m in vectors]) for i in range(n)])

    @property
    def rank(self) -> int:
        return len(self.coords)

    @property
    def degree(self) -> int:
        return max((c.degree for c in self.coords if not c.is_zero()), default=-1)

    @property
    def coefficients(self) -> list:
        R = self.ring
        return [Vector.raw(R, [c.c[j] if j < len(c.c) else R.zero for c in self.coords]) for j in range(self.degree + 1)]

    def top(self) -> Vector:
        return self.coefficients[-1]

    def evaluate(self, x) -> Vector:
        R = self.ring
        return Vector.raw(R, [c(x).value for c in self.coords])

    def reduce(self, S: QuotientAlgebra) -> Vector:
        """The image in M (x) S for S = R[X]/(Q)."""
        return Vector.raw(S, [S.from_poly(c % S.modulus) for c in self.coords])

    def value(self, q: QuadraticForm) -> Polynomial:
        """q(v(X)) in R[X]."""
        R = self.ring
        out = Polynomial.raw(R, ())
        for i in range(self.rank):
            for j in range(i, self.rank):
                c = q.C[i][j]
                if c != R.zero:
                    out = out + (self.coords[i] * self.coords[j]).scale(c)
        return out

    def zero_locus(self) -> list:
        """{x in k : v(x) = 0}, exhaustively over a finite ring."""
        R = self.ring
        return [x for x in R.payloads() if all(c(RingElement(R, x)).value == R.zero for c in self.coords)]

    def content(self) -> Polynomial:
        g = Polynomial.raw(self.ring, ())
        for c in self.coords:
            g = poly_gcd(g, c)
        return g

    def __eq__(self, other):
        return isinstance(other, PolyVector) and self.ring == other.ring and self.coords == other.coords

    def __str__(self):
        return "(" + ", ".join(str(c) for c in self.coords) + ")"

    def __repr__(self):
        return f"PolyVector{self} over {self.ring}"


@dataclass
class DescentStep:
    degree: int
    modulus: Polynomial
    witness: Vector
    lifted: PolyVector
    unit: object
    next_modulus: Polynomial


@dataclass
class DescentTrace:
    steps: list = field(default_factory=list)
    witness: Vector | None = None

    @property
    def degrees(self) -> list:
        return [s.degree for s in self.steps] + [1]


# -- Lemma: v(X) with q(v) = a P Q ------------------------------------------------------


def _value_vector(q: QuadraticForm, basis: Sequence[Vector]):
    R = q.ring
    for b in basis:
        a = q.value(b.v)
        if a != R.zero:
            return b, a
    for i in range(len(basis)):
        for j in range(i + 1, len(basis)):
            w = basis[i] + basis[j]
            a = q.value(w.v)
            if a != R.zero:
                return w, a
    raise Inconsistent("the complement of a hyperbolic plane takes no nonzero value")


def construct_lemma_PR(q: QuadraticForm, P: Polynomial, witness: Vector | None = None) -> PolyVector:
    """v(X) = -a u + R(X) v + X^(d-1) w with q(v(X)) = a P Q, where X^(2d-2) = P Q + R."""
    k = q.ring
    if q.rank < 3:
        raise RankTooSmall(f"rank {q.rank} < 3")
    if not P.is_monic:
        raise NonMonicDivisor(f"{P} is not monic")
    d = P.degree
    if d < 2:
        raise DegreeOne("the construction needs deg P >= 2")
    if witness is None:
        res = find_isotropic(q)
        if not isinstance(res, Isotropic):
            raise NotIsotropic(f"q has no isotropic vector over {k}")
        witness = res.witness
    elif not isinstance(witness, Vector):
        witness = Vector(k, witness)
    if q.value(witness.v) != k.zero or unimodular_certificate(witness) is None:
        raise NotIsotropic("the supplied witness is not isotropic")
    u = witness
    v = hyperbolic_complete(q, [u]).V[0]
    w, a = _value_vector(q, orthogonal_complement(q, [u, v]))
    Q, rem = euclidean_divide(Polynomial.monomial(k, 2 * d - 2), P)
    top = Polynomial.monomial(k, d - 1)
    neg_a = k.neg(a)
    coords = []
    for i in range(q.rank):
        c = Polynomial.raw(k, (k.mul(neg_a, u.v[i]),))
        c = c + rem.scale(v.v[i]) + top.scale(w.v[i])
        coords.append(c)
    return PolyVector(k, coords)


# -- field descent -------------------------------------------------------------------------


def _odd_factors(f: Polynomial) -> list:
    _, facs = factor(f)
    return [g for g, _ in facs if g.degree % 2 == 1]


def _as_poly_vector(S: QuotientAlgebra, z: Vector) -> PolyVector:
    return PolyVector(S.base, [S.to_poly(x) for x in z.v])


def _check_witness(qS: QuadraticForm, z: Vector):
    if qS.value(z.v) != qS.ring.zero:
        raise Inconsistent("the extension witness is not isotropic")
    if unimodular_certificate(z) is None:
        raise Inconsistent("the extension witness is not unimodular")


def _coerce_vector(S: Ring, z) -> Vector:
    if isinstance(z, Vector):
        if z.ring != S:
            raise Inconsistent(f"witness over {z.ring}, expected {S}")
        return z
    return Vector(S, z)


def _degree_one_value(S: Ring, z: Vector, R: Ring) -> Vector:
    if S == R:
        return z
    # R[X]/(X - r): payloads are constant tuples
    return Vector.raw(R, [x[0] for x in z.v])


def _normalize(k: Ring, v: Vector) -> Vector:
    if isinstance(k, RationalField):
        return Vector.raw(k, [k.coerce(a) for a in _primitive(v.v)])
    return v


def _field_recursion(q: QuadraticForm, P: Polynomial, zv: PolyVector, path: list) -> Vector:
    k = q.ring
    while True:
        facs = _odd_factors(P)
        Pi = next((f for f in facs if any(not (c % f).is_zero() for c in zv.coords)), None)
        if Pi is None:
            raise Inconsistent("no odd-degree factor carries the witness")
        path.append(Pi)
        v = PolyVector(k, [c % Pi for c in zv.coords])
        g = v.content()
        v = PolyVector(k, [c // g for c in v.coords])
        if Pi.degree == 1:
            root = k.neg(Pi.c[0])
            return v.evaluate(RingElement(k, root))
        t = v.top()
        if q.value(t.v) == k.zero:
            return t
        h, rem = euclidean_divide(v.value(q), Pi)
        if not rem.is_zero():
            raise Inconsistent("the witness is not isotropic modulo the chosen factor")
        if h.degree % 2 == 0:
            raise Inconsistent(f"cofactor of even degree {h.degree}")
        P, zv = h.monic(), v


def descend_field(q: QuadraticForm, S: Ring, z, *, constructive: bool = False, path: list | None = None) -> Vector:
    """A k-isotropic vector from an isotropic vector over S = k[X]/(P), deg P odd."""
    k = q.ring
    d = relative_degree(k, S)
    if d % 2 == 0:
        raise EvenDegree(f"extension degree {d} is even")
    z = _coerce_vector(S, z)
    qS = base_change(q, S) if S != k else q
    _check_witness(qS, z)
    if d == 1:
        return _degree_one_value(S, z, k)
    if q.rank == 2:
        return rank2_springer(q, S, z).witness
    if q.rank < 2:
        raise Inconsistent("forms of rank < 2 have no isotropic vectors")
    if not constructive:
        res = find_isotropic(q)
        if isinstance(res, Isotropic):
            return res.witness
    v = _field_recursion(q, S.modulus, _as_poly_vector(S, z), path if path is not None else [])
    v = _normalize(k, v)
    if q.value(v.v) != k.zero or v.is_zero():
        raise Inconsistent("field descent produced a non-isotropic vector")
    return v


# -- semilocal descent --------------------------------------------------------------------


def _residue_triples(R: Ring):
    if R.is_field:
        return [(R, lambda a: a)]
    return [(r.field, r.reduce) for r in R.residues()]


def descend_semilocal(q: QuadraticForm, S: QuotientAlgebra, z) -> DescentTrace:
    """The d -> d - 2 recursion over a semilocal base ring."""
    R = q.ring
    if q.rank < 3:
        raise RankTooSmall(f"rank {q.rank} < 3")
    d = relative_degree(R, S)
    if d % 2 == 0:
        raise EvenDegree(f"extension degree {d} is even")
    z = _coerce_vector(S, z)
    _check_witness(base_change(q, S) if S != R else q, z)
    trace = DescentTrace()
    if d == 1:
        trace.witness = _degree_one_value(S, z, R)
        return trace
    P = S.modulus
    while d > 1:
        polys = []
        for kappa, red in _residue_triples(R):
            qk = QuadraticForm.raw(kappa, [[red(c) for c in row] for row in q.C])
            Pk = P.map_coeffs(kappa, red)
            Sk = QuotientAlgebra(kappa, Pk)
            zk = Vector.raw(Sk, [Sk.from_poly(S.to_poly(x).map_coeffs(kappa, red)) for x in z.v])
            uk = descend_field(qk, Sk, zk)
            polys.append(construct_lemma_PR(qk, Pk, witness=uk))
        # coefficientwise CRT into R[X], then Newton over S
        n = q.rank
        coords = []
        for i in range(n):
            cs = [p.coords[i] for p in polys]
            coords.append(Polynomial.raw(R, [R.lift_residues([c.c[j] if j < len(c.c) else c.ring.zero for c in cs]) for j in range(d)]))
        v0 = PolyVector(R, coords).reduce(S)
        qS = base_change(q, S)
        v, _ = newton_refine(qS, v0.v)
        vX = PolyVector(R, [S.to_poly(x) for x in v])
        F = vX.value(q)
        H, rem = euclidean_divide(F, P)
        if not rem.is_zero():
            raise Inconsistent("P does not divide q(v(X))")
        if F.degree != 2 * d - 2 or not R.is_unit(F.c[-1]):
            raise LeadingCoeffNotUnit(f"q(v(X)) = {F} has no unit coefficient in degree {2 * d - 2}")
        u = F.c[-1]
        Qm = H.scale(R.inv(u))
        trace.steps.append(DescentStep(d, P, z, vX, u, Qm))
        P, d = Qm, Qm.degree
        if d == 1:
            root = R.neg(Qm.c[0])
            w = vX.evaluate(RingElement(R, root))
        else:
            S = QuotientAlgebra(R, Qm)
            z = vX.reduce(S)
    if q.value(w.v) != R.zero or unimodular_certificate(w) is None:
        raise Inconsistent("semilocal descent produced an invalid witness")
    trace.witness = w
    return trace


# -- dispatch -------------------------------------------------------------------------------


def _over(R: Ring, S: Ring) -> bool:
    return S == R or (isinstance(S, QuotientAlgebra) and S.base == R)


def springer(q: QuadraticForm, S: Ring, witness) -> Vector:
    """An R-isotropic vector from an isotropic vector over an odd-degree S."""
    R = q.ring
    if isinstance(S, ProductRing) and not _over(R, S):
        w = _coerce_vector(S, witness)
        if all(_over(R, f) for f in S.factors):
            degs = [relative_degree(R, f) for f in S.factors]
            if sum(degs) % 2 == 0:
                raise EvenDegree(f"total degree {sum(degs)} is even")
            i = min((i for i, e in enumerate(degs) if e % 2), key=lambda i: (degs[i], i))
            Si = S.factors[i]
            return springer(q, Si, Vector.raw(Si, [x[i] for x in w.v]))
        if isinstance(R, ProductRing) and len(R.factors) == len(S.factors) and all(
            _over(r, f) for r, f in zip(R.factors, S.factors)
        ):
            degs = {relative_degree(r, f) for r, f in zip(R.factors, S.factors)}
            if len(degs) != 1:
                raise NonConstantDegree(f"component degrees {sorted(degs)}")
            parts = []
            for i, (Ri, Si) in enumerate(zip(R.factors, S.factors)):
                qi = QuadraticForm.raw(Ri, [[c[i] for c in row] for row in q.C])
                parts.append(springer(qi, Si, Vector.raw(Si, [x[i] for x in w.v])).v)
            return Vector.raw(R, list(zip(*parts)))
        raise UnsupportedEtalePresentation(f"{S} is not a componentwise extension of {R}")
    if not _over(R, S):
        raise UnsupportedEtalePresentation(f"{S} is not presented over {R}")
    d = relative_degree(R, S)
    if d % 2 == 0:
        raise EvenDegree(f"extension degree {d} is even")
    z = _coerce_vector(S, witness)
    _check_witness(base_change(q, S) if S != R else q, z)
    if d == 1:
        return _degree_one_value(S, z, R)
    if q.rank < 2:
        raise Inconsistent("forms of rank < 2 have no isotropic vectors")
    if q.rank == 2:
        res = rank2_springer(q, S, z)
        if not isinstance(res, Isotropic):
            raise Inconsistent("isotropic over S but not over R")
        return res.witness
    if R.is_field:
        return descend_field(q, S, z)
    return descend_semilocal(q, S, z).witness


def _hyperbolic_value(q: QuadraticForm, y: Vector, a) -> Vector:
    """u + a v in a hyperbolic plane through the isotropic y."""
    F = q.ring
    v = hyperbolic_complete(q, [y]).V[0]
    return Vector.raw(F, [F.add(p, F.mul(a, s)) for p, s in zip(y.v, v.v)])


def represents_descend(q: QuadraticForm, a, S: Ring, witness) -> Vector:
    """m over R with q(m) = a, from x over S with q_S(x) = a."""
    R = q.ring
    a = a.value if isinstance(a, RingElement) else R.coerce(a)
    if not R.is_unit(a):
        raise ValueError("represents_descend expects a unit")
    aug = direct_sum(q, QuadraticForm.diagonal(R, [R.neg(a)]))
    if not is_nonsingular(aug):
        raise SingularAugmented("q + <-a> is singular")
    d = relative_degree(R, S)
    if d % 2 == 0:
        raise EvenDegree(f"extension degree {d} is even")
    x = _coerce_vector(S, witness)
    to_S = (lambda c: c) if S == R else S.embed
    qS = base_change(q, S) if S != R else q
    if qS.value(x.v) != to_S(a):
        raise Inconsistent("the extension witness does not represent a")
    if q.rank == 1:
        u = q.C[0][0]
        N = algebra_norm(S, RingElement(S, x.v[0]), R).value if S != R else x.v[0]
        m = R.mul(N, R.pow(R.mul(u, R.inv(a)), (d - 1) // 2))
        out = Vector.raw(R, [m])
    else:
        targets = []
        for kappa, red in _residue_triples(R):
            qk = QuadraticForm.raw(kappa, [[red(c) for c in row] for row in q.C])
            augk = QuadraticForm.raw(kappa, [[red(c) for c in row] for row in aug.C])
            if S == R:
                Sk, xk = kappa, [red(c) for c in x.v]
            else:
                Sk = QuotientAlgebra(kappa, S.modulus.map_coeffs(kappa, red))
                xk = [Sk.from_poly(S.to_poly(c).map_coeffs(kappa, red)) for c in x.v]
            yt = springer(augk, Sk, Vector.raw(Sk, list(xk) + [Sk.one])).v
            t = yt[-1]
            if t != kappa.zero:
                ti = kappa.inv(t)
                m = [kappa.mul(c, ti) for c in yt[:-1]]
            else:
                m = list(_hyperbolic_value(qk, Vector.raw(kappa, yt[:-1]), red(a)).v)
            targets.append(tuple(m) + (kappa.one,))
        y = lift_isotropic(LiftProblem(aug, tuple(targets))).vector.v
        rinv = R.inv(y[-1])
        out = Vector.raw(R, [R.mul(c, rinv) for c in y[:-1]])
    if q.value(out.v) != a:
        raise Inconsistent("value descent produced a wrong representation")
    return out
