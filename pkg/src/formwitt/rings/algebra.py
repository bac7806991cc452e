"""Composite rings: R[X]/(P), GF(p^n), finite products; homomorphisms, CRT, norms."""

from __future__ import annotations

import itertools
from functools import cached_property
from typing import Callable, NamedTuple, Sequence

from ..errors import (
    CountMismatch,
    MixedRings,
    NotInvertible,
    Unsupported,
    UnsupportedHom,
)
from .core import (
    PrimeField,
    Residue,
    ResidueData,
    Ring,
    RingElement,
    prime_field_section,
)
from .poly import Polynomial, _pdivmod, _peval, poly_gcd, poly_xgcd

MAX_RESIDUE_DEPTH = 2


class QuotientAlgebra(Ring):
    """The one-generated algebra ``base[X]/(modulus)`` with ``modulus`` monic.

    Payloads are tuples of exactly ``degree`` base payloads (coefficients of
    1, theta, ..., theta^(d-1)).
    """

    def __init__(self, base: Ring, modulus: Polynomial, *, is_field: bool | None = None):
        if modulus.ring != base:
            raise MixedRings(f"modulus over {modulus.ring}, base {base}")
        if not modulus.is_monic or modulus.degree < 1:
            raise ValueError(f"modulus {modulus} must be monic of degree >= 1")
        self.base = base
        self.modulus = modulus
        self.degree = len(modulus.c) - 1
        self.characteristic = base.characteristic
        self.is_finite = base.is_finite
        d = self.degree
        self.zero = (base.zero,) * d
        self.one = (base.one,) + (base.zero,) * (d - 1)
        self._m = modulus.c[:-1]
        self._p = base.p if isinstance(base, PrimeField) else None
        if is_field is not None:
            self.__dict__["is_field"] = is_field

    def _key(self):
        return (self.base, self.modulus.c)

    def __eq__(self, other):
        return isinstance(other, QuotientAlgebra) and self._key() == other._key()

    def __hash__(self):
        return hash(("QuotientAlgebra", self._key()))

    @cached_property
    def is_field(self):
        if self.degree == 1:
            return self.base.is_field
        if not self.base.is_field:
            return False
        from .factor import is_irreducible

        return is_irreducible(self.modulus)

    @property
    def depth(self) -> int:
        return 1 + getattr(self.base, "depth", 0)

    def describe(self):
        from .grammar import format_ring

        return format_ring(self)

    # -- arithmetic -----------------------------------------------------------
    def add(self, a, b):
        p = self._p
        if p is not None:
            return tuple((x + y) % p for x, y in zip(a, b))
        B = self.base
        return tuple(B.add(x, y) for x, y in zip(a, b))

    def sub(self, a, b):
        p = self._p
        if p is not None:
            return tuple((x - y) % p for x, y in zip(a, b))
        B = self.base
        return tuple(B.sub(x, y) for x, y in zip(a, b))

    def neg(self, a):
        p = self._p
        if p is not None:
            return tuple(-x % p for x in a)
        return tuple(self.base.neg(x) for x in a)

    def mul(self, a, b):
        d = self.degree
        m = self._m
        p = self._p
        if p is not None:
            prod = [0] * (2 * d - 1)
            for i, x in enumerate(a):
                if x:
                    for j, y in enumerate(b):
                        if y:
                            prod[i + j] += x * y
            for k in range(2 * d - 2, d - 1, -1):
                c = prod[k] % p
                if c:
                    off = k - d
                    for j in range(d):
                        if m[j]:
                            prod[off + j] -= c * m[j]
            return tuple(x % p for x in prod[:d])
        B = self.base
        zero = B.zero
        prod = [zero] * (2 * d - 1)
        for i, x in enumerate(a):
            if x == zero:
                continue
            for j, y in enumerate(b):
                if y != zero:
                    prod[i + j] = B.add(prod[i + j], B.mul(x, y))
        for k in range(2 * d - 2, d - 1, -1):
            c = prod[k]
            if c != zero:
                off = k - d
                for j in range(d):
                    prod[off + j] = B.sub(prod[off + j], B.mul(c, m[j]))
        return tuple(prod[:d])

    def scalar_mul(self, s, a):
        """Multiply by a base payload."""
        B = self.base
        return tuple(B.mul(s, x) for x in a)

    def from_int(self, n):
        return (self.base.from_int(n),) + (self.base.zero,) * (self.degree - 1)

    def embed(self, b):
        """Base payload to algebra payload."""
        return (b,) + (self.base.zero,) * (self.degree - 1)

    def from_poly(self, f: Polynomial):
        """Reduce a base polynomial modulo the modulus."""
        if f.ring != self.base:
            raise MixedRings(f"polynomial over {f.ring}, algebra over {self.base}")
        r = _pdivmod(self.base, f.c, self.modulus.c)[1]
        return tuple(r) + (self.base.zero,) * (self.degree - len(r))

    def to_poly(self, a) -> Polynomial:
        return Polynomial.raw(self.base, a)

    @property
    def gen(self) -> RingElement:
        """The class theta of X."""
        if self.degree == 1:
            return RingElement(self, (self.base.neg(self.modulus.c[0]),))
        return RingElement(self, (self.base.zero, self.base.one) + (self.base.zero,) * (self.degree - 2))

    def coerce(self, x):
        if isinstance(x, Polynomial):
            return self.from_poly(x)
        if isinstance(x, RingElement) and x.ring == self.base:
            return self.embed(x.value)
        if isinstance(x, int) and not isinstance(x, bool):
            return self.from_int(x)
        if isinstance(x, tuple) and len(x) == self.degree:
            return tuple(self.base.coerce(c) if not isinstance(c, RingElement) else c.value for c in x)
        return self.embed(self.base.coerce(x))

    def is_unit(self, a):
        if self.base.is_field:
            if self.is_field:
                return a != self.zero
            return poly_gcd(self.to_poly(a), self.modulus).degree == 0
        return super().is_unit(a)

    def inv(self, a):
        if self.base.is_field:
            d, s, _ = poly_xgcd(self.to_poly(a), self.modulus)
            if d.degree != 0:
                raise NotInvertible(f"{self.format(a)} is not a unit in {self}")
            return self.from_poly(s)
        return super().inv(a)

    # -- residues ---------------------------------------------------------------
    def _compute_residues(self):
        if self.depth > MAX_RESIDUE_DEPTH:
            raise Unsupported(f"residue machinery supports towers of depth <= {MAX_RESIDUE_DEPTH}")
        if self.is_field:
            return ResidueData((Residue(self, _identity, self.describe()),), 1)
        from .factor import factor

        base_data = self.base.residues()
        out = []
        mult = 1
        for br in base_data:
            kappa = br.field
            P = self.modulus.map_coeffs(kappa, br.reduce)
            _, facs = factor(P)
            for F, e in facs:
                mult = max(mult, e)
                out.append(_quotient_residue(self, br, kappa, F))
        nil = mult if base_data.nilpotency == 1 else mult * base_data.nilpotency
        return ResidueData(tuple(out), nil)

    @cached_property
    def _section(self):
        data = self.residues()
        F = self.prime_field
        D = self.prime_dimension
        rows = []
        for r in data:
            cols = [r.field.to_coords(r.reduce(self.from_coords(_unit_vector(F, D, j)))) for j in range(D)]
            dim = r.field.prime_dimension
            for t in range(dim):
                rows.append([cols[j][t] for j in range(D)])
        return prime_field_section(F, rows, len(rows))

    def lift_residues(self, values):
        data = self.residues()
        if len(values) != len(data):
            raise CountMismatch(f"{len(values)} values for {len(data)} residues")
        if self.is_field:
            return values[0]
        F = self.prime_field
        target = []
        for r, v in zip(data, values):
            target.extend(r.field.to_coords(v))
        D = self.prime_dimension
        x = [F.zero] * D
        for t, coeff in enumerate(target):
            if coeff != F.zero:
                row = self._section[t]
                x = [F.add(xi, F.mul(coeff, si)) for xi, si in zip(x, row)]
        return self.from_coords(x)

    # -- enumeration ------------------------------------------------------------
    @property
    def order(self):
        o = self.base.order
        return None if o is None else o ** self.degree

    def payloads(self):
        for t in itertools.product(list(self.base.payloads()), repeat=self.degree):
            yield t[::-1]

    def index(self, a):
        B = self.base
        n = B.order
        i = 0
        for x in reversed(a):
            i = i * n + B.index(x)
        return i

    def from_index(self, i):
        B = self.base
        n = B.order
        out = []
        for _ in range(self.degree):
            i, r = divmod(i, n)
            out.append(B.from_index(r))
        return tuple(out)

    def sort_key(self, a):
        if self.is_finite:
            return self.index(a)
        return tuple(self.base.sort_key(x) for x in reversed(a))

    def random(self, rng):
        return tuple(self.base.random(rng) for _ in range(self.degree))

    @property
    def prime_field(self):
        return self.base.prime_field

    @property
    def prime_dimension(self):
        return self.degree * self.base.prime_dimension

    def to_coords(self, a):
        out = []
        for x in a:
            out.extend(self.base.to_coords(x))
        return out

    def from_coords(self, coords):
        k = self.base.prime_dimension
        return tuple(self.base.from_coords(coords[i * k:(i + 1) * k]) for i in range(self.degree))

    def format(self, a):
        from .grammar import format_payload

        return format_payload(self, a)


def _quotient_residue(S: QuotientAlgebra, br: Residue, kappa: Ring, F: Polynomial) -> Residue:
    base_reduce = br.reduce
    if F.degree == 1:
        root = kappa.neg(F.c[0])

        def reduce(a, _k=kappa, _r=root, _b=base_reduce):
            return _peval(_k, [_b(x) for x in a], _r)

        return Residue(kappa, reduce, f"{br.label}; X={kappa.format(root)}")
    if isinstance(kappa, PrimeField):
        L = ExtensionField(kappa.p, F, check=False)
    else:
        L = QuotientAlgebra(kappa, F, is_field=True)

    def reduce(a, _k=kappa, _L=L, _b=base_reduce):
        return _L.from_poly(Polynomial.raw(_k, [_b(x) for x in a]))

    return Residue(L, reduce, f"{br.label}; {F}")


def _identity(a):
    return a


def _unit_vector(F, D, j):
    return [F.one if i == j else F.zero for i in range(D)]


class ExtensionField(QuotientAlgebra):
    """GF(p^n) presented as GF(p)[X]/(F) with F irreducible of degree n >= 2."""

    def __init__(self, p: int, modulus: Polynomial | None = None, *, degree: int | None = None, check=True):
        base = PrimeField(p)
        if modulus is None:
            if degree is None:
                raise ValueError("give a modulus or a degree")
            from .factor import smallest_irreducible

            modulus = smallest_irreducible(base, degree)
        elif modulus.ring != base:
            modulus = Polynomial(base, [int(x) if not hasattr(x, "numerator") else x for x in modulus.c])
        if modulus.degree < 2:
            raise ValueError("extension degree must be >= 2")
        super().__init__(base, modulus, is_field=True)
        if check:
            from .factor import is_irreducible

            if not is_irreducible(modulus):
                raise ValueError(f"{modulus} is not irreducible over GF({p})")
        self.p = p


class ProductRing(Ring):
    """Finite product of rings; payloads are tuples of component payloads."""

    def __init__(self, factors: Sequence[Ring]):
        flat = []
        for f in factors:
            if isinstance(f, ProductRing):
                flat.extend(f.factors)
            else:
                flat.append(f)
        if not flat:
            raise ValueError("a product ring needs at least one factor")
        self.factors = tuple(flat)
        self.zero = tuple(f.zero for f in flat)
        self.one = tuple(f.one for f in flat)
        self.is_finite = all(f.is_finite for f in flat)
        chars = {f.characteristic for f in flat}
        self.characteristic = chars.pop() if len(chars) == 1 else 0
        self.is_field = len(flat) == 1 and flat[0].is_field

    def _key(self):
        return self.factors

    @property
    def depth(self):
        return max(getattr(f, "depth", 0) for f in self.factors)

    def describe(self):
        from .grammar import format_ring

        return format_ring(self)

    def add(self, a, b):
        return tuple(f.add(x, y) for f, x, y in zip(self.factors, a, b))

    def sub(self, a, b):
        return tuple(f.sub(x, y) for f, x, y in zip(self.factors, a, b))

    def neg(self, a):
        return tuple(f.neg(x) for f, x in zip(self.factors, a))

    def mul(self, a, b):
        return tuple(f.mul(x, y) for f, x, y in zip(self.factors, a, b))

    def from_int(self, n):
        return tuple(f.from_int(n) for f in self.factors)

    def coerce(self, x):
        if isinstance(x, tuple) and len(x) == len(self.factors):
            return tuple(f(c).value for f, c in zip(self.factors, x))
        return super().coerce(x)

    def is_unit(self, a):
        return all(f.is_unit(x) for f, x in zip(self.factors, a))

    def inv(self, a):
        return tuple(f.inv(x) for f, x in zip(self.factors, a))

    def _compute_residues(self):
        out = []
        nil = 1
        for i, f in enumerate(self.factors):
            data = f.residues()
            nil = max(nil, data.nilpotency)
            for r in data:
                out.append(Residue(r.field, _component_reduce(i, r.reduce), f"[{i}] {r.label}"))
        return ResidueData(tuple(out), nil)

    def lift_residues(self, values):
        data = self.residues()
        if len(values) != len(data):
            raise CountMismatch(f"{len(values)} values for {len(data)} residues")
        out = []
        pos = 0
        for f in self.factors:
            k = len(f.residues())
            out.append(f.lift_residues(values[pos:pos + k]))
            pos += k
        return tuple(out)

    @property
    def order(self):
        total = 1
        for f in self.factors:
            if f.order is None:
                return None
            total *= f.order
        return total

    def payloads(self):
        return itertools.product(*[list(f.payloads()) for f in self.factors])

    def index(self, a):
        i = 0
        for f, x in zip(self.factors, a):
            i = i * f.order + f.index(x)
        return i

    def from_index(self, i):
        out = []
        for f in reversed(self.factors):
            i, r = divmod(i, f.order)
            out.append(f.from_index(r))
        return tuple(reversed(out))

    def sort_key(self, a):
        return tuple(f.sort_key(x) for f, x in zip(self.factors, a))

    def random(self, rng):
        return tuple(f.random(rng) for f in self.factors)

    @property
    def prime_field(self):
        fields = {f.prime_field for f in self.factors}
        if len(fields) != 1:
            raise Unsupported("product of rings of different characteristic")
        return fields.pop()

    @property
    def prime_dimension(self):
        return sum(f.prime_dimension for f in self.factors)

    def to_coords(self, a):
        out = []
        for f, x in zip(self.factors, a):
            out.extend(f.to_coords(x))
        return out

    def from_coords(self, coords):
        out = []
        pos = 0
        for f in self.factors:
            k = f.prime_dimension
            out.append(f.from_coords(coords[pos:pos + k]))
            pos += k
        return tuple(out)

    def format(self, a):
        from .grammar import format_payload

        return format_payload(self, a)


def _component_reduce(i, inner):
    def reduce(a):
        return inner(a[i])

    return reduce


# -- homomorphisms -------------------------------------------------------------


class RingHom:
    """A ring homomorphism given by a payload-level map."""

    def __init__(self, source: Ring, target: Ring, fn: Callable, label: str = ""):
        self.source = source
        self.target = target
        self.fn = fn
        self.label = label

    def __call__(self, x):
        if isinstance(x, RingElement):
            if x.ring != self.source:
                raise MixedRings(f"hom from {self.source} applied to {x.ring} element")
            return RingElement(self.target, self.fn(x.value))
        return RingElement(self.target, self.fn(self.source.coerce(x)))

    def then(self, other: "RingHom") -> "RingHom":
        if other.source != self.target:
            raise UnsupportedHom("homomorphisms do not compose")
        f, g = self.fn, other.fn
        return RingHom(self.source, other.target, lambda a: g(f(a)), f"{self.label}; {other.label}")

    def __repr__(self):
        return f"RingHom({self.source} -> {self.target}: {self.label})"


def identity(R: Ring) -> RingHom:
    return RingHom(R, R, _identity, "id")


def inclusion(R: Ring, S: Ring) -> RingHom:
    """The structure map R -> S for S = R, R[X]/(P), towers of these, or products of them."""
    if S == R:
        return identity(R)
    if isinstance(S, QuotientAlgebra):
        if S.base == R:
            return RingHom(R, S, S.embed, "inclusion")
        inner = inclusion(R, S.base)
        return inner.then(RingHom(S.base, S, S.embed, "inclusion"))
    if isinstance(S, ProductRing):
        parts = [inclusion(R, f) for f in S.factors]
        fns = [h.fn for h in parts]
        return RingHom(R, S, lambda a: tuple(fn(a) for fn in fns), "diagonal")
    raise UnsupportedHom(f"no structure map {R} -> {S}")


def residue_map(R: Ring, i: int) -> RingHom:
    r = R.residues()[i]
    return RingHom(R, r.field, r.reduce, f"reduce[{r.label}]")


def projection(R: ProductRing, i: int) -> RingHom:
    return RingHom(R, R.factors[i], lambda a: a[i], f"pr{i}")


def extend_scalars(S: Ring, hom: RingHom):
    """Given S = R[X]/(P) (or S = R) and hom: R -> R', return (S', S -> S')."""
    R = hom.source
    if S == R:
        return hom.target, hom
    if not isinstance(S, QuotientAlgebra) or S.base != R:
        raise UnsupportedHom(f"{S} is not a one-generated algebra over {R}")
    S2 = QuotientAlgebra(hom.target, S.modulus.map_coeffs(hom.target, hom.fn))
    fn = hom.fn
    return S2, RingHom(S, S2, lambda a: tuple(fn(x) for x in a), "extend")


# -- module-level operations -----------------------------------------------------


def residues(R: Ring) -> ResidueData:
    return R.residues()


def is_unit(x: RingElement) -> bool:
    return x.ring.is_unit(x.value)


class CRTResult(NamedTuple):
    reduced: RingElement
    preimage: RingElement


def crt_combine(R: Ring, values: Sequence[RingElement]) -> CRTResult:
    """Assemble one value per residue field into R/J(R) and pick a preimage in R."""
    data = R.residues()
    if len(values) != len(data):
        raise CountMismatch(f"{len(values)} values for {len(data)} residues")
    payloads = []
    for r, v in zip(data, values):
        if isinstance(v, RingElement):
            if v.ring != r.field:
                raise MixedRings(f"value in {v.ring}, residue field {r.field}")
            payloads.append(v.value)
        else:
            payloads.append(r.field.coerce(v))
    pre = R.lift_residues(payloads)
    fields = [r.field for r in data]
    if len(fields) == 1:
        reduced = RingElement(fields[0], payloads[0])
    else:
        reduced = RingElement(ProductRing(fields), tuple(payloads))
    return CRTResult(reduced, RingElement(R, pre))


def multiplication_matrix(S: QuotientAlgebra, s) -> list:
    """Matrix (over the base) of t -> s t in the basis 1, theta, ..., theta^(d-1)."""
    a = s.value if isinstance(s, RingElement) else s
    d = S.degree
    cols = []
    for j in range(d):
        basis = tuple(S.base.one if i == j else S.base.zero for i in range(d))
        cols.append(S.mul(a, basis))
    return [[RingElement(S.base, cols[j][i]) for j in range(d)] for i in range(d)]


def algebra_norm(S: Ring, s: RingElement, base: Ring | None = None) -> RingElement:
    """N_{S/R}(s): determinant of multiplication by s over R.

    ``S`` is R[X]/(P), R itself, or a product of such algebras over the same R.
    """
    from ..linalg import det

    if isinstance(S, ProductRing):
        if base is None:
            raise ValueError("base ring required for a product algebra")
        out = base.one_element
        for i, f in enumerate(S.factors):
            out = out * algebra_norm(f, RingElement(f, s.value[i]), base)
        return out
    if base is not None and S == base:
        return s
    if not isinstance(S, QuotientAlgebra):
        raise UnsupportedHom(f"{S} is not presented as an algebra over {base}")
    if s.ring != S:
        raise MixedRings(f"element of {s.ring}, algebra {S}")
    if base is not None and S.base != base:
        raise UnsupportedHom(f"{S} is not an algebra over {base}")
    return det(multiplication_matrix(S, s), S.base)
