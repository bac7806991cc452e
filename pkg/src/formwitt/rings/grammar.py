"""Text grammar for rings, polynomials and ring elements.

    ring  := term (" x " term)*
    term  := atom ("[X]/(" poly ")")*
    atom  := "Q" | "GF(" p ")" | "GF(" p "^" n ["," poly] ")" | "(" ring ")"
    poly  := signed sum of  [coef ["*"]] "X" ["^" n]  or  coef
    coef  := integer | integer "/" integer | "[" element-of-base "]"

Elements of R[X]/(P) are polynomials in X whose coefficients are base
elements (bracketed unless the base is Q or GF(p)); elements of products are
parenthesised tuples.  Printing is canonical, so print(parse(s)) == s for
every printed string.
"""

from __future__ import annotations

from fractions import Fraction

from ..errors import ParseError
from .core import PrimeField, RationalField, Ring, RingElement, QQ


def _is_prime_field(R: Ring) -> bool:
    return isinstance(R, (PrimeField, RationalField))


# -- formatting -------------------------------------------------------------------


def _format_coeff(R: Ring, c) -> str:
    s = R.format(c)
    if _is_prime_field(R) or s.isdigit():
        return s
    # integers embedded in a product print plainly too
    if s.startswith("(") and len(set(split_top(s[1:-1], ","))) == 1 and split_top(s[1:-1], ",")[0].isdigit():
        v = split_top(s[1:-1], ",")[0]
        if R.from_int(int(v)) == c:
            return v
    return f"[{s}]"


def format_poly_payloads(R: Ring, coeffs) -> str:
    terms = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = coeffs[k]
        if c == R.zero:
            continue
        mono = "" if k == 0 else ("X" if k == 1 else f"X^{k}")
        neg = False
        if isinstance(R, RationalField) and c < 0:
            neg, c = True, -c
        if k > 0 and c == R.one:
            body = mono
        else:
            cs = _format_coeff(R, c)
            body = cs if k == 0 else f"{cs}*{mono}"
        terms.append(("-" if neg else "+", body))
    if not terms:
        return "0"
    out = ("-" if terms[0][0] == "-" else "") + terms[0][1]
    for sign, body in terms[1:]:
        out += sign + body
    return out


def format_polynomial(f) -> str:
    return format_poly_payloads(f.ring, f.c)


def format_payload(R: Ring, a) -> str:
    from .algebra import ProductRing, QuotientAlgebra

    if isinstance(R, ProductRing):
        return "(" + ", ".join(f.format(x) for f, x in zip(R.factors, a)) + ")"
    if isinstance(R, QuotientAlgebra):
        return format_poly_payloads(R.base, a)
    return R.format(a)


def format_ring(R: Ring) -> str:
    from .algebra import ExtensionField, ProductRing, QuotientAlgebra

    if isinstance(R, ExtensionField):
        return f"GF({R.p}^{R.degree},{format_polynomial(R.modulus)})"
    if isinstance(R, QuotientAlgebra):
        base = format_ring(R.base)
        if isinstance(R.base, ProductRing):
            base = f"({base})"
        return f"{base}[X]/({format_polynomial(R.modulus)})"
    if isinstance(R, ProductRing):
        return " x ".join(format_ring(f) for f in R.factors)
    return R.describe()


def format_element(x: RingElement) -> str:
    return x.ring.format(x.value)


# -- parsing ------------------------------------------------------------------------


class _Cursor:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos] in " \t\n":
            self.pos += 1

    def peek(self, s: str) -> bool:
        self.skip()
        return self.text.startswith(s, self.pos)

    def take(self, s: str) -> bool:
        if self.peek(s):
            self.pos += len(s)
            return True
        return False

    def expect(self, s: str):
        if not self.take(s):
            self.fail(f"expected {s!r}")

    def peek_digit(self) -> bool:
        self.skip()
        return self.pos < len(self.text) and self.text[self.pos].isdigit()

    def integer(self) -> int:
        self.skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            self.fail("expected an integer")
        return int(self.text[start:self.pos])

    def at_end(self) -> bool:
        self.skip()
        return self.pos >= len(self.text)

    def fail(self, msg):
        raise ParseError(msg, self.text, self.pos)

    def bracketed(self, open_: str, close: str) -> str:
        """Raw text up to the matching close bracket (the opener is already consumed)."""
        depth = 1
        start = self.pos
        while self.pos < len(self.text):
            ch = self.text[self.pos]
            if ch == open_:
                depth += 1
            elif ch == close:
                depth -= 1
                if depth == 0:
                    s = self.text[start:self.pos]
                    self.pos += 1
                    return s
            self.pos += 1
        self.fail(f"unbalanced {open_!r}")


def parse_ring(text: str) -> Ring:
    cur = _Cursor(text)
    R = _ring(cur)
    if not cur.at_end():
        cur.fail("trailing input")
    return R


def _ring(cur: _Cursor) -> Ring:
    from .algebra import ProductRing

    factors = [_term(cur)]
    while True:
        save = cur.pos
        cur.skip()
        if cur.text.startswith("x", cur.pos) and cur.pos > 0 and cur.text[cur.pos - 1] in " \t":
            cur.pos += 1
            factors.append(_term(cur))
        else:
            cur.pos = save
            break
    return factors[0] if len(factors) == 1 else ProductRing(factors)


def _term(cur: _Cursor) -> Ring:
    from .algebra import QuotientAlgebra

    R = _atom(cur)
    while cur.take("[X]/("):
        body = cur.bracketed("(", ")")
        P = _parse_poly_text(R, body, cur)
        R = QuotientAlgebra(R, P)
    return R


def _atom(cur: _Cursor) -> Ring:
    from .algebra import ExtensionField
    from .poly import Polynomial

    if cur.take("("):
        R = _ring(cur)
        cur.expect(")")
        return R
    if cur.take("Q"):
        return QQ
    if cur.take("GF("):
        p = cur.integer()
        try:
            F = PrimeField(p)
        except ValueError as exc:
            cur.fail(str(exc))
        if cur.take("^"):
            n = cur.integer()
            modulus = None
            if cur.take(","):
                start = cur.pos
                depth = 0
                while cur.pos < len(cur.text):
                    ch = cur.text[cur.pos]
                    if ch == "(":
                        depth += 1
                    elif ch == ")":
                        if depth == 0:
                            break
                        depth -= 1
                    cur.pos += 1
                modulus = _parse_poly_text(F, cur.text[start:cur.pos], cur)
                if modulus.degree != n:
                    cur.fail(f"modulus degree {modulus.degree} does not match n={n}")
            cur.expect(")")
            if n == 1:
                return F
            try:
                return ExtensionField(p, modulus, degree=n)
            except ValueError as exc:
                cur.fail(str(exc))
        cur.expect(")")
        return F
    cur.fail("expected a ring")


def _parse_poly_text(R: Ring, text: str, outer: _Cursor | None = None):
    from .poly import Polynomial

    try:
        coeffs = _poly_coeffs(R, _Cursor(text))
    except ParseError as exc:
        if outer is not None:
            raise ParseError(f"in polynomial {text!r}: {exc}") from exc
        raise
    return Polynomial.raw(R, coeffs)


def parse_polynomial(R: Ring, text: str):
    return _parse_poly_text(R, text)


def _number(R: Ring, cur: _Cursor):
    n = cur.integer()
    if cur.take("/"):
        d = cur.integer()
        if d == 0:
            cur.fail("zero denominator")
        return R.coerce(Fraction(n, d))
    return R.from_int(n)


def _poly_coeffs(R: Ring, cur: _Cursor) -> list:
    out: dict[int, object] = {}
    first = True
    while True:
        if cur.at_end():
            if first:
                cur.fail("empty polynomial")
            break
        sign = 1
        if cur.take("+"):
            pass
        elif cur.take("-"):
            sign = -1
        elif not first:
            cur.fail("expected '+' or '-'")
        first = False
        coeff = None
        if cur.take("["):
            coeff = parse_element(R, cur.bracketed("[", "]")).value
        elif cur.peek_digit():
            coeff = _number(R, cur)
        power = 0
        if coeff is not None:
            if cur.take("*"):
                cur.expect("X")
                power = 1
            elif cur.peek("X"):
                cur.take("X")
                power = 1
        else:
            cur.expect("X")
            power = 1
            coeff = R.one
        if power and cur.take("^"):
            power = cur.integer()
        if sign < 0:
            coeff = R.neg(coeff)
        out[power] = R.add(out.get(power, R.zero), coeff)
    top = max(out) if out else -1
    return [out.get(i, R.zero) for i in range(top + 1)]


def parse_element(R: Ring, text: str) -> RingElement:
    from .algebra import ProductRing, QuotientAlgebra

    cur = _Cursor(text)
    if isinstance(R, ProductRing):
        if cur.take("("):
            body = cur.bracketed("(", ")")
            if not cur.at_end():
                cur.fail("trailing input")
            parts = _split_top(body, ",")
            if len(parts) != len(R.factors):
                raise ParseError(f"expected {len(R.factors)} components, got {len(parts)}", text, 0)
            return RingElement(R, tuple(parse_element(f, s).value for f, s in zip(R.factors, parts)))
        sign = -1 if cur.take("-") else 1
        n = cur.integer()
        if not cur.at_end():
            cur.fail("trailing input")
        return RingElement(R, R.from_int(sign * n))
    if isinstance(R, QuotientAlgebra):
        coeffs = _poly_coeffs(R.base, cur)
        from .poly import Polynomial

        return RingElement(R, R.from_poly(Polynomial.raw(R.base, coeffs)))
    sign = -1 if cur.take("-") else 1
    cur.take("+")
    v = _number(R, cur)
    if not cur.at_end():
        cur.fail("trailing input")
    return RingElement(R, v if sign > 0 else R.neg(v))


def _split_top(text: str, sep: str) -> list:
    parts, depth, start = [], 0, 0
    for i, ch in enumerate(text):
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        elif ch == sep and depth == 0:
            parts.append(text[start:i])
            start = i + 1
    parts.append(text[start:])
    return [p.strip() for p in parts]


split_top = _split_top
