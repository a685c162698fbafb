"""Exact arithmetic on Z[1/p] and p-power roots of unity.

Every evaluation point used by the toolkit (coset-grid nodes, translation
shifts, mask arguments) is an element of Z[1/p], stored canonically as
u * p**e with p coprime to u.  The additive character chi_p(x) =
exp(2*pi*i*{x}_p) is kept exact as a root of unity (integer index over a
p-power level); conversion to a floating complex number happens only at the
grid/mask evaluation boundary, so zero tests can stay exact downstream.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache


class _PosInfinity:
    """Sentinel for the valuation of zero.

    Compares above every integer.  It deliberately supports no arithmetic:
    formulas that would silently absorb the zero case raise instead.
    """

    __slots__ = ()

    def __repr__(self) -> str:
        return "POS_INFINITY"

    def __lt__(self, other) -> bool:
        return False

    def __le__(self, other) -> bool:
        return other is self

    def __gt__(self, other) -> bool:
        return other is not self

    def __ge__(self, other) -> bool:
        return True


POS_INFINITY = _PosInfinity()


@lru_cache(maxsize=None)
def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def require_prime(p: int) -> None:
    if not isinstance(p, int) or not is_prime(p):
        raise ValueError(f"p must be a prime integer, got {p!r}")


@dataclass(frozen=True)
class PAdicRational:
    """An element u * p**exp of Z[1/p] with p coprime to u.

    Zero is stored as unit = 0, exp = 0.  Instances are immutable and
    hashable; equality is value equality because the form is canonical.
    """

    p: int
    unit: int
    exp: int

    def __post_init__(self) -> None:
        require_prime(self.p)
        if self.unit == 0:
            if self.exp != 0:
                raise ValueError("zero must be stored with exp = 0")
        elif self.unit % self.p == 0:
            raise ValueError("unit must be coprime to p (use from_fraction)")

    @classmethod
    def zero(cls, p: int) -> "PAdicRational":
        return cls(p, 0, 0)

    @classmethod
    def from_fraction(cls, p: int, value) -> "PAdicRational":
        """Build from an int or Fraction; rejects denominators not a p-power."""
        frac = Fraction(value)
        if frac == 0:
            return cls(p, 0, 0)
        num, den = frac.numerator, frac.denominator
        e = 0
        while den % p == 0:
            den //= p
            e -= 1
        if den != 1:
            raise ValueError(f"{frac} is not an element of Z[1/{p}]")
        while num % p == 0:
            num //= p
            e += 1
        return cls(p, num, e)

    @classmethod
    def from_string(cls, text: str, p: int | None = None) -> "PAdicRational":
        """Parse "u*p^e" or "l/p^s"; the embedded base must match p if given."""
        s = text.strip().replace(" ", "")
        for sep, sign in (("*", 1), ("/", -1)):
            if sep in s:
                mant, _, rest = s.partition(sep)
                base, caret, expo = rest.partition("^")
                if not caret:
                    break
                try:
                    u, b, e = int(mant), int(base), int(expo)
                except ValueError:
                    break
                if p is not None and b != p:
                    raise ValueError(f"expected base {p}, got {b} in {text!r}")
                if sign < 0 and e < 0:
                    break
                return cls.from_fraction(b, Fraction(u) * Fraction(b) ** (sign * e))
        raise ValueError(f"cannot parse p-adic rational from {text!r}")

    def to_string(self) -> str:
        if self.exp >= 0:
            return f"{self.unit}*{self.p}^{self.exp}"
        return f"{self.unit}/{self.p}^{-self.exp}"

    def __str__(self) -> str:
        return self.to_string()

    def as_fraction(self) -> Fraction:
        return Fraction(self.unit) * Fraction(self.p) ** self.exp

    def is_zero(self) -> bool:
        return self.unit == 0

    def norm_exp(self):
        """Valuation v with |x|_p = p**(-v); POS_INFINITY for x = 0."""
        if self.unit == 0:
            return POS_INFINITY
        return self.exp

    def frac_part(self) -> "PAdicRational":
        """p-adic fractional part {x}_p: the tail of negative-power digits.

        The result r lies in [0, 1), has denominator p**max(0, -v(x)), and
        x - r is a p-adic integer.
        """
        if self.unit == 0 or self.exp >= 0:
            return PAdicRational(self.p, 0, 0)
        s = -self.exp
        r = self.unit % self.p**s
        return PAdicRational(self.p, r, -s)

    def character(self) -> "RootOfUnity":
        """Additive character chi_p(x) = exp(2*pi*i*{x}_p), exactly."""
        f = self.frac_part()
        if f.unit == 0:
            return RootOfUnity(self.p, 0, 0)
        return RootOfUnity(self.p, -f.exp, f.unit)

    def _coerce(self, other) -> "PAdicRational":
        if isinstance(other, PAdicRational):
            if other.p != self.p:
                raise ValueError(f"mixed primes {self.p} and {other.p}")
            return other
        return PAdicRational.from_fraction(self.p, other)

    def __add__(self, other) -> "PAdicRational":
        other = self._coerce(other)
        if self.unit == 0:
            return other
        if other.unit == 0:
            return self
        e = min(self.exp, other.exp)
        u = self.unit * self.p ** (self.exp - e) + other.unit * self.p ** (other.exp - e)
        if u == 0:
            return PAdicRational(self.p, 0, 0)
        while u % self.p == 0:
            u //= self.p
            e += 1
        return PAdicRational(self.p, u, e)

    __radd__ = __add__

    def __neg__(self) -> "PAdicRational":
        if self.unit == 0:
            return self
        return PAdicRational(self.p, -self.unit, self.exp)

    def __sub__(self, other) -> "PAdicRational":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "PAdicRational":
        return (-self) + other

    def __mul__(self, other) -> "PAdicRational":
        other = self._coerce(other)
        if self.unit == 0 or other.unit == 0:
            return PAdicRational(self.p, 0, 0)
        return PAdicRational(self.p, self.unit * other.unit, self.exp + other.exp)

    __rmul__ = __mul__


@dataclass(frozen=True)
class RootOfUnity:
    """exp(2*pi*i * n / p**s), with (n, s) reduced: p does not divide n
    unless n = 0, in which case s = 0."""

    p: int
    s: int
    n: int

    def __post_init__(self) -> None:
        require_prime(self.p)
        if self.s < 0:
            raise ValueError("level must be nonnegative")
        if self.s == 0:
            if self.n != 0:
                raise ValueError("level 0 forces index 0")
        elif not 0 < self.n < self.p**self.s or self.n % self.p == 0:
            raise ValueError(f"index {self.n} not reduced at level {self.s}")

    @classmethod
    def make(cls, p: int, n: int, s: int) -> "RootOfUnity":
        """Canonicalize an arbitrary (index, level) pair."""
        if s < 0:
            raise ValueError("level must be nonnegative")
        n %= p**s if s > 0 else 1
        while s > 0 and n != 0 and n % p == 0:
            n //= p
            s -= 1
        if n == 0:
            s = 0
        return cls(p, s, n)

    @classmethod
    def one(cls, p: int) -> "RootOfUnity":
        return cls(p, 0, 0)

    def is_one(self) -> bool:
        return self.s == 0

    def __mul__(self, other: "RootOfUnity") -> "RootOfUnity":
        if other.p != self.p:
            raise ValueError(f"mixed primes {self.p} and {other.p}")
        s = max(self.s, other.s)
        n = self.n * self.p ** (s - self.s) + other.n * self.p ** (s - other.s)
        return RootOfUnity.make(self.p, n, s)

    def __pow__(self, k: int) -> "RootOfUnity":
        return RootOfUnity.make(self.p, self.n * k, self.s)

    def conjugate(self) -> "RootOfUnity":
        return RootOfUnity.make(self.p, -self.n, self.s)

    @property
    def value(self) -> complex:
        if self.s == 0:
            return 1.0 + 0.0j
        if 2 * self.n == self.p**self.s:
            return -1.0 + 0.0j
        return cmath.exp(2j * cmath.pi * self.n / self.p**self.s)

    def __complex__(self) -> complex:
        return self.value


def enumerate_shifts(p: int, radius_exp: int) -> list[PAdicRational]:
    """The natural shifts a with |a|_p <= p**radius_exp, including a = 0.

    Returns exactly {k / p**radius_exp : k = 0, ..., p**radius_exp - 1} in
    canonical form, ascending in k.
    """
    require_prime(p)
    if radius_exp < 0:
        raise ValueError("radius_exp must be nonnegative")
    den = p**radius_exp
    return [PAdicRational.from_fraction(p, Fraction(k, den)) for k in range(den)]
