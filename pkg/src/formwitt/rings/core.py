"""Ring protocol, element wrapper, and the two prime fields (Q and GF(p)).

Every ring works on *payloads*: immutable canonical Python values (``Fraction``
for Q, ``int`` for GF(p), tuples for the composite rings).  ``RingElement``
wraps a payload together with its ring and provides operator overloading; the
hot loops in the library call the payload-level methods directly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Callable, Iterator, Sequence

from ..errors import MixedRings, NotInvertible, Unsupported


@dataclass(frozen=True)
class Residue:
    """One maximal ideal: its residue field and the payload-level reduction map."""

    field: "Ring"
    reduce: Callable
    label: str


@dataclass(frozen=True)
class ResidueData:
    residues: tuple
    nilpotency: int

    def __len__(self):
        return len(self.residues)

    def __iter__(self):
        return iter(self.residues)

    def __getitem__(self, i):
        return self.residues[i]


class Ring:
    """Payload-level arithmetic shared by every supported coefficient ring."""

    is_field = False
    is_finite = False
    characteristic = 0
    zero = None
    one = None

    # -- identity -----------------------------------------------------------
    def _key(self):
        raise NotImplementedError

    def __eq__(self, other):
        return type(self) is type(other) and self._key() == other._key()

    def __hash__(self):
        return hash((type(self).__name__, self._key()))

    def __repr__(self):
        return f"Ring({self.describe()})"

    def __str__(self):
        return self.describe()

    def describe(self) -> str:
        raise NotImplementedError

    # -- arithmetic -----------------------------------------------------------
    def add(self, a, b):
        raise NotImplementedError

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def neg(self, a):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def from_int(self, n: int):
        raise NotImplementedError

    def is_zero(self, a) -> bool:
        return a == self.zero

    def pow(self, a, n: int):
        if n < 0:
            return self.pow(self.inv(a), -n)
        result = self.one
        while n:
            if n & 1:
                result = self.mul(result, a)
            n >>= 1
            if n:
                a = self.mul(a, a)
        return result

    def is_unit(self, a) -> bool:
        return all(not r.field.is_zero(r.reduce(a)) for r in self.residues())

    def inv(self, a):
        """Inverse through the residue fields, refined by Newton steps x <- x(2 - ax)."""
        data = self.residues()
        values = []
        for r in data:
            red = r.reduce(a)
            if r.field.is_zero(red):
                raise NotInvertible(f"{self.format(a)} is not a unit in {self}")
            values.append(r.field.inv(red))
        x = self.lift_residues(values)
        two = self.from_int(2)
        for _ in range(max(1, data.nilpotency).bit_length() + 1):
            ax = self.mul(a, x)
            if ax == self.one:
                return x
            x = self.mul(x, self.sub(two, ax))
        if self.mul(a, x) != self.one:
            raise NotInvertible(f"Newton inversion failed in {self}")
        return x

    # -- residues -------------------------------------------------------------
    def residues(self) -> ResidueData:
        return self._residue_data

    @cached_property
    def _residue_data(self) -> ResidueData:
        return self._compute_residues()

    def _compute_residues(self) -> ResidueData:
        raise NotImplementedError

    def lift_residues(self, values: Sequence):
        """Some payload reducing to ``values[i]`` in residue field ``i``."""
        raise NotImplementedError

    # -- enumeration and order ------------------------------------------------
    @property
    def order(self):
        return None

    def payloads(self) -> Iterator:
        raise Unsupported(f"{self} is not finite")

    def index(self, a) -> int:
        raise Unsupported(f"{self} is not finite")

    def from_index(self, i: int):
        raise Unsupported(f"{self} is not finite")

    def sort_key(self, a):
        return self.index(a)

    def random(self, rng):
        return self.from_index(rng.randrange(self.order))

    # -- coordinates over the prime field --------------------------------------
    @property
    def prime_field(self) -> "Ring":
        raise Unsupported(f"{self} has no prime field")

    @property
    def prime_dimension(self) -> int:
        raise NotImplementedError

    def to_coords(self, a) -> list:
        raise NotImplementedError

    def from_coords(self, coords: Sequence):
        raise NotImplementedError

    # -- text -----------------------------------------------------------------
    def format(self, a) -> str:
        raise NotImplementedError

    # -- element construction --------------------------------------------------
    def element(self, payload) -> "RingElement":
        return RingElement(self, payload)

    def __call__(self, x) -> "RingElement":
        if isinstance(x, RingElement):
            if x.ring != self:
                raise MixedRings(f"{x.ring} element used as {self} element")
            return x
        if isinstance(x, str):
            from .grammar import parse_element

            return parse_element(self, x)
        return RingElement(self, self.coerce(x))

    def coerce(self, x):
        """Payload for a Python value (int by default)."""
        if isinstance(x, bool) or not isinstance(x, int):
            raise TypeError(f"cannot coerce {x!r} into {self}")
        return self.from_int(x)

    def elements(self) -> Iterator["RingElement"]:
        for a in self.payloads():
            yield RingElement(self, a)

    @property
    def zero_element(self):
        return RingElement(self, self.zero)

    @property
    def one_element(self):
        return RingElement(self, self.one)

    def sqrt_char2(self, a):
        """Inverse Frobenius in a finite field of characteristic 2."""
        if not (self.is_field and self.is_finite and self.characteristic == 2):
            raise Unsupported("Frobenius square root needs a finite field of characteristic 2")
        return self.pow(a, self.order // 2)


class RingElement:
    """An element of a ``Ring``; equality is equality of canonical payloads."""

    __slots__ = ("ring", "value")

    def __init__(self, ring: Ring, value):
        self.ring = ring
        self.value = value

    def _other(self, other):
        if isinstance(other, RingElement):
            if other.ring is not self.ring and other.ring != self.ring:
                raise MixedRings(f"cannot combine {self.ring} and {other.ring}")
            return other.value
        if isinstance(other, int) and not isinstance(other, bool):
            return self.ring.from_int(other)
        if isinstance(other, Fraction):
            return self.ring.coerce(other)
        return NotImplemented

    def __add__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return RingElement(self.ring, self.ring.add(self.value, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return RingElement(self.ring, self.ring.sub(self.value, b))

    def __rsub__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return RingElement(self.ring, self.ring.sub(b, self.value))

    def __mul__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return RingElement(self.ring, self.ring.mul(self.value, b))

    __rmul__ = __mul__

    def __neg__(self):
        return RingElement(self.ring, self.ring.neg(self.value))

    def __pow__(self, n: int):
        return RingElement(self.ring, self.ring.pow(self.value, n))

    def __truediv__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return RingElement(self.ring, self.ring.mul(self.value, self.ring.inv(b)))

    def inverse(self) -> "RingElement":
        return RingElement(self.ring, self.ring.inv(self.value))

    def is_zero(self) -> bool:
        return self.ring.is_zero(self.value)

    def is_unit(self) -> bool:
        return self.ring.is_unit(self.value)

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if isinstance(other, RingElement):
            return self.ring == other.ring and self.value == other.value
        if isinstance(other, int) and not isinstance(other, bool):
            return self.value == self.ring.from_int(other)
        return NotImplemented

    def __hash__(self):
        return hash(self.value)

    def __lt__(self, other):
        return self.ring.sort_key(self.value) < self.ring.sort_key(other.value)

    def __str__(self):
        return self.ring.format(self.value)

    def __repr__(self):
        return f"{self.ring.format(self.value)} in {self.ring.describe()}"


def is_prime(n: int) -> bool:
    """Deterministic trial division; inputs are small by design."""
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


class RationalField(Ring):
    is_field = True
    characteristic = 0
    zero = Fraction(0)
    one = Fraction(1)

    def _key(self):
        return ()

    def describe(self):
        return "Q"

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def from_int(self, n):
        return Fraction(n)

    def coerce(self, x):
        if isinstance(x, (int, Fraction)) and not isinstance(x, bool):
            return Fraction(x)
        raise TypeError(f"cannot coerce {x!r} into Q")

    def is_unit(self, a):
        return a != 0

    def inv(self, a):
        if a == 0:
            raise NotInvertible("0 is not invertible in Q")
        return 1 / a

    def _compute_residues(self):
        return ResidueData((Residue(self, _identity, "Q"),), 1)

    def lift_residues(self, values):
        return values[0]

    def sort_key(self, a):
        return a

    @property
    def prime_field(self):
        return self

    prime_dimension = 1

    def to_coords(self, a):
        return [a]

    def from_coords(self, coords):
        return coords[0]

    def format(self, a):
        return str(a)


def _identity(a):
    return a


class PrimeField(Ring):
    is_field = True
    is_finite = True
    zero = 0
    one = 1

    def __init__(self, p: int):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.characteristic = p
        # inverse table keeps division cheap inside search loops
        self._inverses = [0] + [pow(a, -1, p) for a in range(1, p)] if p < 4096 else None

    def _key(self):
        return (self.p,)

    def describe(self):
        return f"GF({self.p})"

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return -a % self.p

    def mul(self, a, b):
        return a * b % self.p

    def from_int(self, n):
        return n % self.p

    def coerce(self, x):
        if isinstance(x, Fraction):
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        return super().coerce(x)

    def is_unit(self, a):
        return a != 0

    def inv(self, a):
        if a == 0:
            raise NotInvertible(f"0 is not invertible in GF({self.p})")
        if self._inverses is not None:
            return self._inverses[a]
        return pow(a, -1, self.p)

    def pow(self, a, n):
        if n < 0:
            a, n = self.inv(a), -n
        return pow(a, n, self.p)

    def _compute_residues(self):
        return ResidueData((Residue(self, _identity, self.describe()),), 1)

    def lift_residues(self, values):
        return values[0]

    @property
    def order(self):
        return self.p

    def payloads(self):
        return iter(range(self.p))

    def index(self, a):
        return a

    def from_index(self, i):
        return i

    def sort_key(self, a):
        return a

    def random(self, rng):
        return rng.randrange(self.p)

    @property
    def prime_field(self):
        return self

    prime_dimension = 1

    def to_coords(self, a):
        return [a]

    def from_coords(self, coords):
        return coords[0] % self.p

    def format(self, a):
        return str(a)

    def sqrt_char2(self, a):
        if self.p != 2:
            raise Unsupported("Frobenius square root needs characteristic 2")
        return a


QQ = RationalField()


def prime_field_section(field: Ring, matrix: list, rank_needed: int):
    """Right inverse of a surjective linear map over a prime field.

    ``matrix`` has ``rank_needed`` rows (target coordinates) and any number of
    columns (source coordinates).  Returns, for every target basis vector, a
    source coordinate vector mapping onto it.
    """
    rows = len(matrix)
    cols = len(matrix[0]) if rows else 0
    # augmented Gaussian elimination on [M | I]
    aug = [list(matrix[i]) + [field.one if j == i else field.zero for j in range(rows)] for i in range(rows)]
    pivots = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if not field.is_zero(aug[i][c])), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        inv = field.inv(aug[r][c])
        aug[r] = [field.mul(inv, x) for x in aug[r]]
        for i in range(rows):
            if i != r and not field.is_zero(aug[i][c]):
                f = aug[i][c]
                aug[i] = [field.sub(x, field.mul(f, y)) for x, y in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    if r < rank_needed:
        raise Unsupported("reduction map is not surjective")
    # row i of the reduced system: x[pivots[i]] = (E y)_i
    section = []
    for t in range(rows):
        x = [field.zero] * cols
        for i, c in enumerate(pivots):
            x[c] = aug[i][cols + t]
        section.append(x)
    return section


def lcm_many(values) -> int:
    out = 1
    for v in values:
        out = out * v // math.gcd(out, v)
    return out
