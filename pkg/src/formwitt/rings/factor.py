"""Polynomial factorization over finite fields and over Q.

Finite fields: trial division by every monic polynomial up to half the degree
when ``q**deg <= BRUTE_FORCE_LIMIT``; otherwise squarefree decomposition,
distinct-degree and (seeded) equal-degree splitting.

Q: primitive integer model, rational roots stripped, then Kronecker
interpolation for the remaining part, bounded by ``degree_bound``.
"""

from __future__ import annotations

import itertools
import math
import os
import random
from fractions import Fraction

from ..errors import DegreeBoundExceeded, Unsupported, ZeroPolynomial
from .core import PrimeField, RationalField, Ring, RingElement
from .poly import Polynomial, _pdivmod, _peval, poly_gcd, poly_powmod

BRUTE_FORCE_LIMIT = 10**6
DEFAULT_Q_DEGREE_BOUND = 8


def default_seed() -> int:
    return int(os.environ.get("FORMWITT_SEED", "0"))


def factor(f: Polynomial, *, degree_bound: int = DEFAULT_Q_DEGREE_BOUND, seed: int | None = None):
    """Return ``(unit, [(monic irreducible, multiplicity), ...])`` with f = unit * prod.

    Factors are sorted by degree, then by coefficients.
    """
    R = f.ring
    if f.is_zero():
        raise ZeroPolynomial("cannot factor the zero polynomial")
    unit = f.leading
    if f.degree == 0:
        return unit, []
    if isinstance(R, RationalField):
        facs = _factor_rational(f, degree_bound)
    elif R.is_field and R.is_finite:
        g = f.monic()
        if R.order ** g.degree <= BRUTE_FORCE_LIMIT:
            facs = _factor_trial(g)
        else:
            facs = _factor_berlekamp_free(g, default_seed() if seed is None else seed)
    else:
        raise Unsupported(f"factorization over {R} is not supported")
    facs.sort(key=lambda fe: fe[0].sort_key())
    return unit, facs


def _monic_polys(R: Ring, k: int):
    elems = list(R.payloads())
    for t in itertools.product(elems, repeat=k):
        yield Polynomial.raw(R, t[::-1] + (R.one,))


def _factor_trial(f: Polynomial):
    out = []
    R = f.ring
    k = 1
    while 2 * k <= f.degree:
        for g in _monic_polys(R, k):
            e = 0
            while True:
                q, r = _pdivmod(R, f.c, g.c)
                if r:
                    break
                f = Polynomial.raw(R, q)
                e += 1
            if e:
                out.append((g, e))
            if 2 * k > f.degree:
                break
        k += 1
    if f.degree >= 1:
        out.append((f, 1))
    return out


# -- finite fields, large case ---------------------------------------------------


def _pth_root_poly(f: Polynomial) -> Polynomial:
    R = f.ring
    p = R.characteristic
    q = R.order
    e = q // p  # x^(q/p) is the inverse of Frobenius
    coeffs = [R.pow(c, e) for c in f.c[::p]]
    return Polynomial.raw(R, coeffs)


def squarefree_decomposition(f: Polynomial):
    """[(g, m)] with f = prod g^m, g squarefree and pairwise coprime (f monic, finite field)."""
    R = f.ring
    p = R.characteristic
    out = []
    if f.degree < 1:
        return out
    df = f.derivative()
    if df.is_zero():
        for h, m in squarefree_decomposition(_pth_root_poly(f)):
            out.append((h, m * p))
        return out
    c = poly_gcd(f, df)
    w = f // c
    i = 1
    while w.degree > 0:
        y = poly_gcd(w, c)
        z = w // y
        if z.degree > 0:
            out.append((z.monic(), i))
        i += 1
        w = y
        c = c // y
    if c.degree > 0:
        for h, m in squarefree_decomposition(_pth_root_poly(c.monic())):
            out.append((h, m * p))
    return out


def distinct_degree(f: Polynomial):
    R = f.ring
    q = R.order
    X = Polynomial.x(R)
    out = []
    h = X % f
    i = 1
    rest = f
    while rest.degree >= 2 * i:
        h = poly_powmod(h, q, rest)
        g = poly_gcd(h - X, rest)
        if g.degree > 0:
            out.append((g, i))
            rest = rest // g
            h = h % rest
        i += 1
    if rest.degree > 0:
        out.append((rest.monic(), rest.degree))
    return out


def equal_degree(f: Polynomial, d: int, rng: random.Random):
    R = f.ring
    if f.degree == d:
        return [f.monic()]
    q = R.order
    n = f.degree
    while True:
        a = Polynomial.raw(R, [R.random(rng) for _ in range(n)])
        if a.degree < 1:
            continue
        if q % 2:
            b = poly_powmod(a, (q**d - 1) // 2, f) - 1
        else:
            # trace map a + a^2 + ... + a^(2^(k d - 1)) with q = 2^k
            k = q.bit_length() - 1
            t = a % f
            b = t
            for _ in range(k * d - 1):
                t = (t * t) % f
                b = b + t
        g = poly_gcd(b, f)
        if 0 < g.degree < n:
            return equal_degree(g, d, rng) + equal_degree(f // g, d, rng)


def _factor_berlekamp_free(f: Polynomial, seed: int):
    rng = random.Random(seed)
    out = {}
    for g, m in squarefree_decomposition(f):
        for h, d in distinct_degree(g):
            for irr in equal_degree(h, d, rng):
                out[irr] = out.get(irr, 0) + m
    return list(out.items())


def is_irreducible(f: Polynomial) -> bool:
    R = f.ring
    if f.degree < 1:
        return False
    if f.degree == 1:
        return True
    if R.is_field and R.is_finite:
        g = f.monic()
        n = g.degree
        q = R.order
        X = Polynomial.x(R)
        if poly_powmod(X, q**n, g) != X % g:
            return False
        for r in _prime_divisors(n):
            h = poly_powmod(X, q ** (n // r), g) - X
            if poly_gcd(h, g).degree != 0:
                return False
        return True
    _, facs = factor(f)
    return len(facs) == 1 and facs[0][1] == 1


def _prime_divisors(n):
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def smallest_irreducible(F: PrimeField, n: int) -> Polynomial:
    """Lexicographically smallest monic irreducible of degree n (c_0 compared first)."""
    for t in itertools.product(range(F.p), repeat=n):
        f = Polynomial.raw(F, t + (1,))
        if is_irreducible(f):
            return f
    raise ValueError(f"no irreducible polynomial of degree {n} over GF({F.p})")


def roots(f: Polynomial) -> list:
    """All roots in a finite field (exhaustive) or in Q (rational root theorem)."""
    R = f.ring
    if isinstance(R, RationalField):
        return [RingElement(R, r) for r in _rational_roots(_primitive_int(f))]
    if not (R.is_field and R.is_finite):
        raise Unsupported(f"root search over {R}")
    return [RingElement(R, a) for a in R.payloads() if _peval(R, f.c, a) == R.zero]


# -- Q --------------------------------------------------------------------------------


def _primitive_int(f: Polynomial) -> list:
    den = 1
    for c in f.c:
        den = den * c.denominator // math.gcd(den, c.denominator)
    ints = [int(c * den) for c in f.c]
    g = 0
    for x in ints:
        g = math.gcd(g, x)
    ints = [x // g for x in ints]
    if ints[-1] < 0:
        ints = [-x for x in ints]
    return ints


def _divisors(n: int) -> list:
    n = abs(n)
    small = [d for d in range(1, math.isqrt(n) + 1) if n % d == 0]
    return sorted(set(small + [n // d for d in small]))


def _int_eval(c, x):
    acc = 0
    for a in reversed(c):
        acc = acc * x + a
    return acc


def _rational_roots(c: list) -> list:
    out = []
    if c[0] == 0:
        out.append(Fraction(0))
        k = 0
        while c[k] == 0:
            k += 1
        c = c[k:]
    if len(c) <= 1:
        return out
    for p in _divisors(c[0]):
        for q in _divisors(c[-1]):
            for s in (1, -1):
                r = Fraction(s * p, q)
                if r in out:
                    continue
                if sum(a * r**i for i, a in enumerate(c)) == 0:
                    out.append(r)
    return sorted(out)


def _int_divide(a: list, b: list):
    """Exact division of integer polynomials, or None."""
    a = list(a)
    if len(b) > len(a):
        return None
    q = [0] * (len(a) - len(b) + 1)
    for k in range(len(a) - 1, len(b) - 2, -1):
        c = a[k]
        if c % b[-1]:
            return None
        c //= b[-1]
        q[k - len(b) + 1] = c
        for j in range(len(b)):
            a[k - len(b) + 1 + j] -= c * b[j]
    if any(a[: len(b) - 1]):
        return None
    return q


def _interpolate(xs, ys):
    """Integer coefficients of the interpolating polynomial, or None if not integral."""
    n = len(xs)
    coeffs = [Fraction(0)] * n
    for i in range(n):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j in range(n):
            if j == i:
                continue
            basis = [Fraction(0)] + basis
            for k in range(len(basis) - 1):
                basis[k] -= xs[j] * basis[k + 1]
            denom *= xs[i] - xs[j]
        for k in range(n):
            coeffs[k] += ys[i] * basis[k] / denom
    if any(c.denominator != 1 for c in coeffs):
        return None
    out = [int(c) for c in coeffs]
    while out and out[-1] == 0:
        out.pop()
    return out


def _kronecker_split(c: list):
    """A proper integer factor of the primitive polynomial c, or None if irreducible."""
    n = len(c) - 1
    points = []
    x = 0
    while len(points) < n // 2 + 1:
        if _int_eval(c, x) != 0:
            points.append(x)
        x = -x if x > 0 else -x + 1
    for k in range(1, n // 2 + 1):
        xs = points[: k + 1]
        vals = [_int_eval(c, t) for t in xs]
        choices = [_divisors(v) for v in vals]
        for combo in itertools.product(*choices):
            for signs in itertools.product((1, -1), repeat=k):
                ys = [combo[0]] + [s * d for s, d in zip(signs, combo[1:])]
                g = _interpolate(xs, ys)
                if g is None or len(g) - 1 != k:
                    continue
                if _int_divide(c, g) is not None:
                    if g[-1] < 0:
                        g = [-a for a in g]
                    return g
    return None


def _factor_rational(f: Polynomial, degree_bound: int):
    Q = f.ring
    c = _primitive_int(f)
    out = []

    def add(g_int, mult=1):
        lead = Fraction(g_int[-1])
        g = Polynomial.raw(Q, [Fraction(a) / lead for a in g_int])
        for i, (h, e) in enumerate(out):
            if h == g:
                out[i] = (h, e + mult)
                return
        out.append((g, mult))

    for r in _rational_roots(c):
        lin = [-r.numerator, r.denominator]
        while True:
            q = _int_divide(c, lin)
            if q is None:
                break
            c = q
            add(lin)
    if len(c) - 1 > degree_bound:
        raise DegreeBoundExceeded(f"degree {len(c) - 1} exceeds the Kronecker bound {degree_bound}")
    stack = [c] if len(c) > 1 else []
    while stack:
        g = stack.pop()
        h = _kronecker_split(g)
        if h is None:
            add(g)
        else:
            stack.append(h)
            stack.append(_int_divide(g, h))
    return out

