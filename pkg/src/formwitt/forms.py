"""Quadratic and bilinear forms on free modules R^n.

A quadratic form is carried by its upper-triangular coefficient matrix C,
q(x) = sum_{i<=j} c_ij x_i x_j, so characteristic 2 needs no special casing.
The polar form has matrix B = C + C^T.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from . import linalg
from .errors import DimensionMismatch, MixedRings, ParseError, Unsupported, UnsupportedHom
from .rings import ProductRing, Ring, RingElement, RingHom
from .rings.algebra import inclusion, projection
from .rings.grammar import parse_element, split_top


def _payload(R: Ring, x):
    if isinstance(x, RingElement):
        if x.ring != R:
            raise MixedRings(f"{x.ring} element in a form over {R}")
        return x.value
    if isinstance(x, str):
        return R(x).value
    return R.coerce(x)


class Vector:
    """An element of R^n; coordinates are stored as payloads."""

    __slots__ = ("ring", "v")

    def __init__(self, ring: Ring, entries: Iterable):
        self.ring = ring
        self.v = tuple(_payload(ring, x) for x in entries)

    @classmethod
    def raw(cls, ring: Ring, payloads: Sequence) -> "Vector":
        out = cls.__new__(cls)
        out.ring = ring
        out.v = tuple(payloads)
        return out

    @classmethod
    def basis(cls, ring: Ring, n: int, i: int) -> "Vector":
        return cls.raw(ring, [ring.one if j == i else ring.zero for j in range(n)])

    @classmethod
    def zero(cls, ring: Ring, n: int) -> "Vector":
        return cls.raw(ring, [ring.zero] * n)

    def __len__(self):
        return len(self.v)

    def __getitem__(self, i):
        return RingElement(self.ring, self.v[i])

    def __iter__(self):
        return (RingElement(self.ring, x) for x in self.v)

    def __eq__(self, other):
        return isinstance(other, Vector) and self.ring == other.ring and self.v == other.v

    def __hash__(self):
        return hash(self.v)

    def _check(self, other):
        if not isinstance(other, Vector):
            return False
        if other.ring != self.ring:
            raise MixedRings(f"vectors over {self.ring} and {other.ring}")
        if len(other) != len(self):
            raise DimensionMismatch(f"lengths {len(self)} and {len(other)}")
        return True

    def __add__(self, other):
        if not self._check(other):
            return NotImplemented
        R = self.ring
        return Vector.raw(R, [R.add(a, b) for a, b in zip(self.v, other.v)])

    def __sub__(self, other):
        if not self._check(other):
            return NotImplemented
        R = self.ring
        return Vector.raw(R, [R.sub(a, b) for a, b in zip(self.v, other.v)])

    def __neg__(self):
        return Vector.raw(self.ring, [self.ring.neg(a) for a in self.v])

    def scale(self, s) -> "Vector":
        R = self.ring
        s = _payload(R, s)
        return Vector.raw(R, [R.mul(s, a) for a in self.v])

    __rmul__ = scale

    def is_zero(self) -> bool:
        return all(a == self.ring.zero for a in self.v)

    def map(self, hom: RingHom) -> "Vector":
        return Vector.raw(hom.target, [hom.fn(a) for a in self.v])

    def concat(self, other: "Vector") -> "Vector":
        return Vector.raw(self.ring, self.v + other.v)

    def sort_key(self):
        # colexicographic: the last coordinate is the most significant
        R = self.ring
        return tuple(R.sort_key(a) for a in reversed(self.v))

    def to_strings(self) -> list:
        return [self.ring.format(a) for a in self.v]

    def __str__(self):
        return "(" + ", ".join(self.to_strings()) + ")"

    def __repr__(self):
        return f"Vector{self} over {self.ring}"


class BilinearForm:
    """Symmetric bilinear form given by its Gram matrix."""

    def __init__(self, ring: Ring, matrix: Sequence[Sequence]):
        self.ring = ring
        B = [[_payload(ring, x) for x in row] for row in matrix]
        n = len(B)
        if any(len(row) != n for row in B):
            raise DimensionMismatch("Gram matrix must be square")
        for i in range(n):
            for j in range(i):
                if B[i][j] != B[j][i]:
                    raise ValueError("bilinear form matrix is not symmetric")
        self.B = tuple(tuple(r) for r in B)

    @property
    def rank(self) -> int:
        return len(self.B)

    @classmethod
    def diagonal(cls, ring: Ring, values) -> "BilinearForm":
        vals = [_payload(ring, v) for v in values]
        n = len(vals)
        return cls(ring, [[vals[i] if i == j else ring.zero for j in range(n)] for i in range(n)])

    def value(self, u: Sequence, v: Sequence):
        R = self.ring
        acc = R.zero
        for i, a in enumerate(u):
            if a == R.zero:
                continue
            row = self.B[i]
            for j, b in enumerate(v):
                if b != R.zero and row[j] != R.zero:
                    acc = R.add(acc, R.mul(R.mul(a, row[j]), b))
        return acc

    def __call__(self, u: Vector, v: Vector) -> RingElement:
        if len(u) != self.rank or len(v) != self.rank:
            raise DimensionMismatch("vector length does not match the rank")
        return RingElement(self.ring, self.value(u.v, v.v))

    def matrix(self) -> list:
        return [list(r) for r in self.B]

    def is_regular(self) -> bool:
        return linalg.is_invertible(self.ring, self.matrix())

    def __eq__(self, other):
        return isinstance(other, BilinearForm) and self.ring == other.ring and self.B == other.B

    def __hash__(self):
        return hash(self.B)

    def __repr__(self):
        rows = "; ".join(" ".join(self.ring.format(x) for x in r) for r in self.B)
        return f"BilinearForm([{rows}] over {self.ring})"


class QuadraticForm:
    """q(x) = sum_{i<=j} c_ij x_i x_j over ``ring``."""

    def __init__(self, ring: Ring, coeffs: Sequence[Sequence]):
        self.ring = ring
        n = len(coeffs)
        C = []
        for i in range(n):
            row = coeffs[i]
            if len(row) != n:
                raise DimensionMismatch("coefficient matrix must be square")
            C.append(tuple(_payload(ring, row[j]) if j >= i else ring.zero for j in range(n)))
        for i in range(n):
            for j in range(i):
                if _payload(ring, coeffs[i][j]) != ring.zero:
                    raise ValueError("coefficients below the diagonal must be zero")
        self.C = tuple(C)

    @classmethod
    def raw(cls, ring: Ring, C: Sequence[Sequence]) -> "QuadraticForm":
        out = cls.__new__(cls)
        out.ring = ring
        out.C = tuple(tuple(r) for r in C)
        return out

    @classmethod
    def from_dict(cls, ring: Ring, n: int, entries: dict) -> "QuadraticForm":
        """Entries keyed by 0-based (i, j) with i <= j."""
        C = [[ring.zero] * n for _ in range(n)]
        for (i, j), x in entries.items():
            if not (0 <= i <= j < n):
                raise ValueError(f"bad coefficient index ({i}, {j}) for rank {n}")
            C[i][j] = _payload(ring, x)
        return cls.raw(ring, C)

    @classmethod
    def diagonal(cls, ring: Ring, values) -> "QuadraticForm":
        """<a_1, ..., a_n>_q = a_1 x_1^2 + ... + a_n x_n^2."""
        vals = [_payload(ring, v) for v in values]
        return cls.from_dict(ring, len(vals), {(i, i): v for i, v in enumerate(vals)})

    @classmethod
    def zero_form(cls, ring: Ring, n: int = 0) -> "QuadraticForm":
        return cls.raw(ring, [[ring.zero] * n for _ in range(n)])

    @property
    def rank(self) -> int:
        return len(self.C)

    def coeff(self, i: int, j: int) -> RingElement:
        if i > j:
            i, j = j, i
        return RingElement(self.ring, self.C[i][j])

    # -- evaluation ---------------------------------------------------------
    def value(self, x: Sequence):
        """q on a payload tuple."""
        R = self.ring
        zero = R.zero
        acc = zero
        for i, xi in enumerate(x):
            if xi == zero:
                continue
            row = self.C[i]
            s = zero
            for j in range(i, len(x)):
                c = row[j]
                xj = x[j]
                if c != zero and xj != zero:
                    s = R.add(s, R.mul(c, xj))
            if s != zero:
                acc = R.add(acc, R.mul(xi, s))
        return acc

    def __call__(self, v: Vector) -> RingElement:
        if len(v) != self.rank:
            raise DimensionMismatch(f"vector of length {len(v)} for a rank {self.rank} form")
        if v.ring != self.ring:
            raise MixedRings(f"vector over {v.ring}, form over {self.ring}")
        return RingElement(self.ring, self.value(v.v))

    def polar_matrix(self) -> list:
        R = self.ring
        n = self.rank
        B = [[R.zero] * n for _ in range(n)]
        for i in range(n):
            for j in range(i, n):
                c = self.C[i][j]
                if i == j:
                    B[i][i] = R.add(c, c)
                else:
                    B[i][j] = c
                    B[j][i] = c
        return B

    def polar(self) -> BilinearForm:
        return BilinearForm(self.ring, self.polar_matrix())

    def polar_value(self, u: Sequence, v: Sequence):
        R = self.ring
        acc = R.zero
        for i in range(self.rank):
            for j in range(i, self.rank):
                c = self.C[i][j]
                if c == R.zero:
                    continue
                t = R.add(R.mul(u[i], v[j]), R.mul(u[j], v[i]))
                acc = R.add(acc, R.mul(c, t))
        return acc

    def polar_eval(self, u: Vector, v: Vector) -> RingElement:
        return RingElement(self.ring, self.polar_value(u.v, v.v))

    # -- constructions ----------------------------------------------------------
    def transform(self, T: Sequence[Sequence]) -> "QuadraticForm":
        """The form x -> q(T x) for an n x m matrix T of payloads."""
        R = self.ring
        m = len(T[0]) if T else 0
        cols = linalg.columns(T) if m else []
        C = [[R.zero] * m for _ in range(m)]
        for i in range(m):
            C[i][i] = self.value(cols[i])
            for j in range(i + 1, m):
                C[i][j] = self.polar_value(cols[i], cols[j])
        return QuadraticForm.raw(R, C)

    def restrict(self, vectors: Sequence[Vector]) -> "QuadraticForm":
        """The form on the span of ``vectors`` in the given basis."""
        if not vectors:
            return QuadraticForm.zero_form(self.ring)
        return self.transform(linalg.from_columns([v.v for v in vectors], self.rank))

    def scale(self, a) -> "QuadraticForm":
        R = self.ring
        a = _payload(R, a)
        return QuadraticForm.raw(R, [[R.mul(a, c) for c in row] for row in self.C])

    def __neg__(self):
        return self.scale(self.ring.from_int(-1))

    def __eq__(self, other):
        return isinstance(other, QuadraticForm) and self.ring == other.ring and self.C == other.C

    def __hash__(self):
        return hash(self.C)

    def __repr__(self):
        return f"QuadraticForm({format_form(self)} over {self.ring})"

    def __str__(self):
        return format_form(self)

    # -- properties ---------------------------------------------------------------
    def is_regular(self) -> bool:
        return is_regular(self)

    def is_nonsingular(self) -> bool:
        return is_nonsingular(self)


# -- module-level operations ----------------------------------------------------------


def evaluate(q: QuadraticForm, v: Vector) -> RingElement:
    return q(v)


def polar_eval(q: QuadraticForm, u: Vector, v: Vector) -> RingElement:
    return q.polar_eval(u, v)


def polar(q: QuadraticForm) -> BilinearForm:
    return q.polar()


def hyperbolic_plane(R: Ring) -> QuadraticForm:
    """hyp(r1, r2) = r1 r2."""
    return QuadraticForm.from_dict(R, 2, {(0, 1): R.one})


def hyperbolic_space(R: Ring, n: int) -> QuadraticForm:
    """H(R^n): n hyperbolic planes on interleaved pairs (phi_1, u_1, phi_2, u_2, ...)."""
    return QuadraticForm.from_dict(R, 2 * n, {(2 * i, 2 * i + 1): R.one for i in range(n)})


def metabolic(b: BilinearForm) -> BilinearForm:
    """M(U, b) on U + U*, Gram matrix [[B, I], [I, 0]] in block form."""
    R = b.ring
    m = b.rank
    M = [[R.zero] * (2 * m) for _ in range(2 * m)]
    for i in range(m):
        for j in range(m):
            M[i][j] = b.B[i][j]
        M[i][m + i] = R.one
        M[m + i][i] = R.one
    return BilinearForm(R, M)


def _as_hom(source: Ring, hom) -> RingHom:
    if isinstance(hom, RingHom):
        if hom.source != source:
            raise UnsupportedHom(f"homomorphism from {hom.source}, form over {source}")
        return hom
    if isinstance(hom, Ring):
        return inclusion(source, hom)
    raise UnsupportedHom(f"cannot base change along {hom!r}")


def base_change(q: QuadraticForm, hom) -> QuadraticForm:
    """q_S for a ring homomorphism (or the structure map to a target ring)."""
    h = _as_hom(q.ring, hom)
    fn = h.fn
    return QuadraticForm.raw(h.target, [[fn(c) for c in row] for row in q.C])


def base_change_bilinear(b: BilinearForm, hom) -> BilinearForm:
    h = _as_hom(b.ring, hom)
    return BilinearForm(h.target, [[h.fn(x) for x in row] for row in b.B])


def direct_sum(*forms: QuadraticForm) -> QuadraticForm:
    if not forms:
        raise ValueError("direct_sum needs at least one form")
    R = forms[0].ring
    for f in forms:
        if f.ring != R:
            raise MixedRings(f"forms over {R} and {f.ring}")
    n = sum(f.rank for f in forms)
    C = [[R.zero] * n for _ in range(n)]
    off = 0
    for f in forms:
        for i in range(f.rank):
            for j in range(i, f.rank):
                C[off + i][off + j] = f.C[i][j]
        off += f.rank
    return QuadraticForm.raw(R, C)


def tensor_bq(b: BilinearForm, q: QuadraticForm) -> QuadraticForm:
    """b (x) q with (b (x) q)(m (x) n) = b(m, m) q(n).

    Basis e_i (x) f_j in lexicographic order of (i, j).
    """
    if b.ring != q.ring:
        raise MixedRings(f"bilinear form over {b.ring}, quadratic form over {q.ring}")
    R = q.ring
    m, n = b.rank, q.rank
    Bq = q.polar_matrix()
    N = m * n
    C = [[R.zero] * N for _ in range(N)]
    for i in range(m):
        bii = b.B[i][i]
        for j in range(n):
            for l in range(j, n):
                C[i * n + j][i * n + l] = R.mul(bii, q.C[j][l])
        for k in range(i + 1, m):
            bik = b.B[i][k]
            if bik == R.zero:
                continue
            for j in range(n):
                for l in range(n):
                    C[i * n + j][k * n + l] = R.mul(bik, Bq[j][l])
    return QuadraticForm.raw(R, C)


def pure_tensor(m: Vector, n: Vector) -> Vector:
    R = m.ring
    return Vector.raw(R, [R.mul(a, b) for a in m.v for b in n.v])


# -- radical, regularity, nonsingularity ----------------------------------------------


def radical(q: QuadraticForm) -> list:
    """Basis of rad(q) = {m : q(m) = 0, b_q(m, .) = 0} over a field."""
    F = q.ring
    if not F.is_field:
        raise Unsupported(f"radical needs a field, got {F}")
    n = q.rank
    if n == 0:
        return []
    ker = linalg.kernel(F, q.polar_matrix(), n)
    if F.characteristic != 2:
        return [Vector.raw(F, v) for v in ker]
    if not ker:
        return []
    # q is Frobenius-semilinear on ker(B): q(sum l_i u_i) = sum l_i^2 q(u_i)
    values = [q.value(u) for u in ker]
    mus = linalg.kernel(F, [values], len(ker))
    out = []
    for mu in mus:
        lam = [F.sqrt_char2(x) for x in mu]
        v = [F.zero] * n
        for l, u in zip(lam, ker):
            if l != F.zero:
                v = [F.add(a, F.mul(l, b)) for a, b in zip(v, u)]
        out.append(Vector.raw(F, v))
    return out


def is_regular(q: QuadraticForm) -> bool:
    """The polar matrix has unit determinant."""
    return linalg.is_invertible(q.ring, q.polar_matrix())


def residue_forms(q: QuadraticForm) -> list:
    """q reduced to every residue field of its ring."""
    R = q.ring
    if R.is_field:
        return [q]
    out = []
    for r in R.residues():
        red = r.reduce
        out.append(QuadraticForm.raw(r.field, [[red(c) for c in row] for row in q.C]))
    return out


def is_nonsingular(q: QuadraticForm) -> bool:
    """rad(q_kappa) = 0 for every residue field kappa."""
    return all(not radical(f) for f in residue_forms(q))


def rank_decompose(q: QuadraticForm) -> list:
    """Componentwise forms of a form over a product ring."""
    R = q.ring
    if not isinstance(R, ProductRing):
        return [q]
    return [base_change(q, projection(R, i)) for i in range(len(R.factors))]


# -- text format --------------------------------------------------------------------


def format_form(q: QuadraticForm) -> str:
    parts = [f"rank={q.rank}"]
    R = q.ring
    for i in range(q.rank):
        for j in range(i, q.rank):
            c = q.C[i][j]
            if c != R.zero:
                parts.append(f"c[{i + 1}][{j + 1}]={R.format(c)}")
    return ";".join(parts)


def parse_form(R: Ring, text: str) -> QuadraticForm:
    """Parse ``rank=n; c[i][j]=<element>; ...`` (1-based, i <= j, omitted entries 0)."""
    items = [s for s in split_top(text, ";") if s]
    if not items or not items[0].replace(" ", "").startswith("rank="):
        raise ParseError("form must start with rank=n", text, 0)
    try:
        n = int(items[0].split("=", 1)[1])
    except ValueError:
        raise ParseError("rank must be an integer", text, 0) from None
    entries = {}
    for item in items[1:]:
        lhs, sep, rhs = item.partition("=")
        lhs = lhs.replace(" ", "")
        if not sep or not lhs.startswith("c[") or not lhs.endswith("]") or "][" not in lhs:
            raise ParseError(f"bad coefficient {item!r}", text, text.find(item))
        i_s, j_s = lhs[2:-1].split("][")
        i, j = int(i_s) - 1, int(j_s) - 1
        if not (0 <= i <= j < n):
            raise ParseError(f"index out of range in {item!r}", text, text.find(item))
        entries[(i, j)] = parse_element(R, rhs.strip()).value
    return QuadraticForm.from_dict(R, n, entries)


def _outer_parens(s: str) -> bool:
    if not (s.startswith("(") and s.endswith(")")):
        return False
    depth = 0
    for i, ch in enumerate(s):
        depth += ch == "("
        depth -= ch == ")"
        if depth == 0:
            return i == len(s) - 1
    return False


def parse_vector(R: Ring, text: str) -> Vector:
    """Comma-separated coordinates, optionally in parentheses (required over products)."""
    body = text.strip()
    if _outer_parens(body):
        body = body[1:-1]
    return Vector.raw(R, [parse_element(R, s).value for s in split_top(body, ",")])
