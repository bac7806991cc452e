"""Dense univariate polynomials over any supported ring.

Coefficients are stored as a tuple of ring payloads, lowest degree first,
with trailing zeros stripped.  The ``_p*`` helpers work on such tuples and are
reused by the quotient algebras.
"""

from __future__ import annotations

import math
from typing import Iterable, Sequence

from ..errors import MixedRings, NonMonicDivisor, NotInvertible
from .core import Ring, RingElement


def _strip(R: Ring, c: Sequence) -> tuple:
    n = len(c)
    zero = R.zero
    while n and c[n - 1] == zero:
        n -= 1
    return tuple(c[:n])


def _padd(R, a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, y in enumerate(b):
        out[i] = R.add(out[i], y)
    return _strip(R, out)


def _psub(R, a, b):
    n = max(len(a), len(b))
    out = []
    for i in range(n):
        x = a[i] if i < len(a) else R.zero
        y = b[i] if i < len(b) else R.zero
        out.append(R.sub(x, y))
    return _strip(R, out)


def _pmul(R, a, b):
    if not a or not b:
        return ()
    out = [R.zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == R.zero:
            continue
        for j, y in enumerate(b):
            out[i + j] = R.add(out[i + j], R.mul(x, y))
    return _strip(R, out)


def _pscale(R, s, a):
    return _strip(R, [R.mul(s, x) for x in a])


def _pdivmod(R, a, b):
    """Division by a polynomial whose leading coefficient is a unit."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    lead = b[-1]
    inv = R.one if lead == R.one else R.inv(lead)
    rem = list(a)
    db = len(b) - 1
    if len(rem) - 1 < db:
        return (), _strip(R, rem)
    quot = [R.zero] * (len(rem) - db)
    for k in range(len(rem) - 1, db - 1, -1):
        c = rem[k]
        if c == R.zero:
            continue
        c = R.mul(c, inv)
        quot[k - db] = c
        for j in range(db + 1):
            rem[k - db + j] = R.sub(rem[k - db + j], R.mul(c, b[j]))
    return _strip(R, quot), _strip(R, rem[:db])


def _peval(R, a, x):
    acc = R.zero
    for c in reversed(a):
        acc = R.add(R.mul(acc, x), c)
    return acc


class Polynomial:
    """Polynomial over ``ring``; ``coeffs`` lowest degree first."""

    __slots__ = ("ring", "c")

    def __init__(self, ring: Ring, coeffs: Iterable = ()):
        vals = []
        for x in coeffs:
            if isinstance(x, RingElement):
                if x.ring != ring:
                    raise MixedRings(f"coefficient from {x.ring} in polynomial over {ring}")
                vals.append(x.value)
            else:
                vals.append(ring.coerce(x))
        self.ring = ring
        self.c = _strip(ring, vals)

    @classmethod
    def raw(cls, ring: Ring, payloads: Sequence) -> "Polynomial":
        p = cls.__new__(cls)
        p.ring = ring
        p.c = _strip(ring, payloads)
        return p

    @classmethod
    def x(cls, ring: Ring) -> "Polynomial":
        return cls.raw(ring, (ring.zero, ring.one))

    @classmethod
    def constant(cls, ring: Ring, value) -> "Polynomial":
        if isinstance(value, RingElement):
            value = value.value
        elif isinstance(value, int):
            value = ring.from_int(value)
        return cls.raw(ring, (value,))

    @classmethod
    def monomial(cls, ring: Ring, n: int, coeff=None) -> "Polynomial":
        c = ring.one if coeff is None else coeff
        return cls.raw(ring, (ring.zero,) * n + (c,))

    # -- basic properties ---------------------------------------------------
    @property
    def degree(self):
        """Degree; the zero polynomial has degree ``-inf``."""
        return len(self.c) - 1 if self.c else -math.inf

    @property
    def coeffs(self) -> tuple:
        return tuple(RingElement(self.ring, x) for x in self.c)

    def coeff(self, i: int) -> RingElement:
        return RingElement(self.ring, self.c[i] if 0 <= i < len(self.c) else self.ring.zero)

    @property
    def leading(self) -> RingElement:
        return RingElement(self.ring, self.c[-1] if self.c else self.ring.zero)

    @property
    def is_monic(self) -> bool:
        return bool(self.c) and self.c[-1] == self.ring.one

    def is_zero(self) -> bool:
        return not self.c

    def __bool__(self):
        return bool(self.c)

    def __len__(self):
        return len(self.c)

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self.c == other.c
        if isinstance(other, int):
            return self.c == _strip(self.ring, (self.ring.from_int(other),))
        return NotImplemented

    def __hash__(self):
        return hash(self.c)

    def sort_key(self):
        R = self.ring
        return (len(self.c), tuple(R.sort_key(x) for x in self.c))

    def __repr__(self):
        return f"Polynomial({self}, over {self.ring})"

    def __str__(self):
        from .grammar import format_polynomial

        return format_polynomial(self)

    # -- arithmetic ---------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise MixedRings(f"polynomials over {self.ring} and {other.ring}")
            return other.c
        if isinstance(other, RingElement):
            if other.ring != self.ring:
                raise MixedRings(f"polynomial over {self.ring} and element of {other.ring}")
            return _strip(self.ring, (other.value,))
        if isinstance(other, int):
            return _strip(self.ring, (self.ring.from_int(other),))
        return None

    def __add__(self, other):
        b = self._coerce(other)
        if b is None:
            return NotImplemented
        return Polynomial.raw(self.ring, _padd(self.ring, self.c, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._coerce(other)
        if b is None:
            return NotImplemented
        return Polynomial.raw(self.ring, _psub(self.ring, self.c, b))

    def __rsub__(self, other):
        b = self._coerce(other)
        if b is None:
            return NotImplemented
        return Polynomial.raw(self.ring, _psub(self.ring, b, self.c))

    def __neg__(self):
        return Polynomial.raw(self.ring, tuple(self.ring.neg(x) for x in self.c))

    def __mul__(self, other):
        b = self._coerce(other)
        if b is None:
            return NotImplemented
        return Polynomial.raw(self.ring, _pmul(self.ring, self.c, b))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = Polynomial.raw(self.ring, (self.ring.one,))
        base = self
        while n:
            if n & 1:
                out = out * base
            n >>= 1
            if n:
                base = base * base
        return out

    def __divmod__(self, other):
        b = self._coerce(other)
        if b is None:
            return NotImplemented
        q, r = _pdivmod(self.ring, self.c, b)
        return Polynomial.raw(self.ring, q), Polynomial.raw(self.ring, r)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def scale(self, s) -> "Polynomial":
        if isinstance(s, RingElement):
            s = s.value
        return Polynomial.raw(self.ring, _pscale(self.ring, s, self.c))

    def monic(self) -> "Polynomial":
        """Divide by the leading coefficient (which must be a unit)."""
        if not self.c:
            return self
        return self.scale(self.ring.inv(self.c[-1]))

    def __call__(self, x):
        """Evaluate at an element of the coefficient ring."""
        if isinstance(x, RingElement):
            if x.ring != self.ring:
                raise MixedRings(f"evaluating polynomial over {self.ring} at {x.ring} element")
            return RingElement(self.ring, _peval(self.ring, self.c, x.value))
        return RingElement(self.ring, _peval(self.ring, self.c, self.ring.coerce(x)))

    def derivative(self) -> "Polynomial":
        R = self.ring
        return Polynomial.raw(R, tuple(R.mul(R.from_int(i), x) for i, x in enumerate(self.c) if i))

    def map_coeffs(self, target: Ring, fn) -> "Polynomial":
        """Apply a payload-level map to every coefficient."""
        return Polynomial.raw(target, tuple(fn(x) for x in self.c))


def euclidean_divide(f: Polynomial, g: Polynomial):
    """Quotient and remainder of ``f`` by the monic ``g`` (valid over any ring)."""
    if f.ring != g.ring:
        raise MixedRings(f"dividend over {f.ring}, divisor over {g.ring}")
    if not g.is_monic:
        raise NonMonicDivisor(f"divisor {g} is not monic")
    q, r = _pdivmod(f.ring, f.c, g.c)
    return Polynomial.raw(f.ring, q), Polynomial.raw(f.ring, r)


def poly_gcd(f: Polynomial, g: Polynomial) -> Polynomial:
    """Monic gcd over a field (zero if both inputs vanish)."""
    R = f.ring
    a, b = f.c, g.c
    while b:
        a, b = b, _pdivmod(R, a, b)[1]
    return Polynomial.raw(R, a).monic()


def poly_xgcd(f: Polynomial, g: Polynomial):
    """(d, s, t) with d = s f + t g monic, over a field."""
    R = f.ring
    r0, r1 = f.c, g.c
    s0, s1 = (R.one,), ()
    t0, t1 = (), (R.one,)
    while r1:
        q, r = _pdivmod(R, r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _psub(R, s0, _pmul(R, q, s1))
        t0, t1 = t1, _psub(R, t0, _pmul(R, q, t1))
    if not r0:
        zero = Polynomial.raw(R, ())
        return zero, zero, zero
    inv = R.inv(r0[-1])
    return (
        Polynomial.raw(R, _pscale(R, inv, r0)),
        Polynomial.raw(R, _pscale(R, inv, s0)),
        Polynomial.raw(R, _pscale(R, inv, t0)),
    )


def poly_powmod(f: Polynomial, n: int, m: Polynomial) -> Polynomial:
    R = f.ring
    result = (R.one,)
    base = _pdivmod(R, f.c, m.c)[1]
    while n:
        if n & 1:
            result = _pdivmod(R, _pmul(R, result, base), m.c)[1]
        n >>= 1
        if n:
            base = _pdivmod(R, _pmul(R, base, base), m.c)[1]
    return Polynomial.raw(R, _pdivmod(R, result, m.c)[1])


def poly_inverse_mod(f: Polynomial, m: Polynomial) -> Polynomial:
    d, s, _ = poly_xgcd(f, m)
    if d.degree != 0:
        raise NotInvertible(f"{f} is not invertible modulo {m}")
    return s % m
