"""Finite-support model of a perfect valuation ring in characteristic p.

Elements are finite F_p-linear combinations of powers t^e where the
exponents e range over the nonnegative part of Z[1/p], that is,
rationals whose denominator is a power of p.  The Gauss valuation is
normalized by v(t) = 1.  Because F_p has no zero divisors, the lowest
terms of a product never cancel, so the valuation is exactly additive
under multiplication.  Frobenius raises coefficients to the p-th power
(the identity on F_p) and multiplies every exponent by p; the exponent
lattice is p-divisible, so Frobenius is invertible here.

Valuations are returned as :class:`TiltVal`, a totally ordered wrapper
around Fraction with a single infinite value reserved for the valuation
of zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from math import isqrt
from typing import Mapping, Union

from .errors import ConfigError, DomainError

__all__ = [
    "INF_VAL",
    "TiltElement",
    "TiltVal",
    "is_prime",
    "tilt_frobenius",
    "tilt_mul",
    "tilt_pow",
    "tilt_rescale_t",
    "tilt_val",
    "untilt_val_compare",
]


def is_prime(n: int) -> bool:
    """Trial-division primality test; exact for any int, meant for small ones."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d <= isqrt(n):
        if n % d == 0:
            return False
        d += 2
    return True


def _is_p_power(n: int, p: int) -> bool:
    while n % p == 0:
        n //= p
    return n == 1


_RatLike = Union[Fraction, int]


@total_ordering
@dataclass(frozen=True, eq=False)
class TiltVal:
    """A valuation value: an exact rational, or infinite for the zero element.

    ``value is None`` encodes +infinity.  Comparisons and addition accept
    plain ints and Fractions on either side, so ``tilt_val(x) == Fraction(1, 4)``
    reads naturally in callers.
    """

    value: Fraction | None

    def __post_init__(self):
        if self.value is None or isinstance(self.value, Fraction):
            return
        if isinstance(self.value, int):
            object.__setattr__(self, "value", Fraction(self.value))
            return
        raise DomainError(f"valuation must be a Fraction, int, or None, got {type(self.value).__name__}")

    @property
    def is_infinite(self) -> bool:
        return self.value is None

    def as_fraction(self) -> Fraction:
        if self.value is None:
            raise DomainError("the zero element has no finite valuation")
        return self.value

    @staticmethod
    def _coerce(other: object) -> "TiltVal | None":
        if isinstance(other, TiltVal):
            return other
        if isinstance(other, (int, Fraction)):
            return TiltVal(Fraction(other))
        return None

    def __eq__(self, other: object) -> bool:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.value == o.value

    def __lt__(self, other: object) -> bool:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.value is None:
            return False
        if o.value is None:
            return True
        return self.value < o.value

    def __hash__(self) -> int:
        return hash(self.value)

    def __add__(self, other: "TiltVal | _RatLike") -> "TiltVal":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.value is None or o.value is None:
            return INF_VAL
        return TiltVal(self.value + o.value)

    __radd__ = __add__

    def __mul__(self, scalar: _RatLike) -> "TiltVal":
        if not isinstance(scalar, (int, Fraction)):
            return NotImplemented
        if scalar <= 0:
            raise DomainError("valuations only scale by positive factors")
        if self.value is None:
            return INF_VAL
        return TiltVal(self.value * scalar)

    __rmul__ = __mul__

    def __repr__(self) -> str:
        return "TiltVal(+inf)" if self.value is None else f"TiltVal({self.value})"


INF_VAL = TiltVal(None)


@dataclass(frozen=True)
class TiltElement:
    """Finite F_p-combination of powers t^e with e in Z[1/p], e >= 0.

    ``terms`` holds (exponent, coefficient) pairs in strictly increasing
    exponent order with coefficients reduced to 1..p-1; the zero element
    is the empty tuple.  Construct through :meth:`from_terms`,
    :meth:`monomial`, :meth:`zero`, or :meth:`one` rather than passing a
    raw tuple; the validator runs either way.
    """

    p: int
    terms: tuple[tuple[Fraction, int], ...]

    def __post_init__(self):
        if not is_prime(self.p):
            raise DomainError(f"coefficient characteristic must be prime, got {self.p}")
        prev = None
        for exponent, coeff in self.terms:
            if not isinstance(exponent, Fraction):
                raise DomainError("exponents must be Fraction instances")
            if exponent < 0:
                raise DomainError(f"exponent {exponent} is negative")
            if not _is_p_power(exponent.denominator, self.p):
                raise DomainError(
                    f"exponent denominator {exponent.denominator} is not a power of {self.p}"
                )
            if not isinstance(coeff, int) or not 0 < coeff < self.p:
                raise DomainError(f"coefficient {coeff!r} is not reduced to 1..{self.p - 1}")
            if prev is not None and exponent <= prev:
                raise DomainError("terms must be strictly increasing in the exponent")
            prev = exponent

    @classmethod
    def from_terms(cls, p: int, terms: Mapping[_RatLike, int]) -> "TiltElement":
        """Build an element from an exponent -> coefficient mapping.

        Coefficients are reduced mod p and zero terms dropped, so any
        integer coefficients are accepted.
        """
        collected: dict[Fraction, int] = {}
        for exponent, coeff in terms.items():
            e = Fraction(exponent)
            collected[e] = (collected.get(e, 0) + coeff) % p
        reduced = tuple(sorted((e, c) for e, c in collected.items() if c))
        return cls(p, reduced)

    @classmethod
    def monomial(cls, p: int, exponent: _RatLike, coeff: int = 1) -> "TiltElement":
        return cls.from_terms(p, {Fraction(exponent): coeff})

    @classmethod
    def zero(cls, p: int) -> "TiltElement":
        return cls(p, ())

    @classmethod
    def one(cls, p: int) -> "TiltElement":
        return cls.monomial(p, 0)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def support(self) -> tuple[Fraction, ...]:
        """The exponents carrying a nonzero coefficient, in increasing order."""
        return tuple(e for e, _ in self.terms)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.terms:
            if e == 0:
                parts.append(str(c))
            elif c == 1:
                parts.append(f"t^({e})")
            else:
                parts.append(f"{c}*t^({e})")
        return " + ".join(parts)


def tilt_val(x: TiltElement) -> TiltVal:
    """Gauss valuation with v(t) = 1; the zero element maps to +infinity."""
    if not x.terms:
        return INF_VAL
    return TiltVal(x.terms[0][0])


def _require_same_p(x: TiltElement, y: TiltElement) -> int:
    if x.p != y.p:
        raise ConfigError(f"cannot combine elements over F_{x.p} and F_{y.p}")
    return x.p


def tilt_mul(x: TiltElement, y: TiltElement) -> TiltElement:
    """Exact product; valuations add because F_p is an integral domain."""
    p = _require_same_p(x, y)
    acc: dict[Fraction, int] = {}
    for ex, cx in x.terms:
        for ey, cy in y.terms:
            e = ex + ey
            acc[e] = (acc.get(e, 0) + cx * cy) % p
    return TiltElement.from_terms(p, acc)


def tilt_pow(x: TiltElement, k: int) -> TiltElement:
    """k-th power for k >= 0 by repeated squaring; k = 0 is the empty product."""
    if not isinstance(k, int) or k < 0:
        raise DomainError(f"exponent must be a nonnegative integer, got {k!r}")
    result = TiltElement.one(x.p)
    base = x
    while k:
        if k & 1:
            result = tilt_mul(result, base)
        base = tilt_mul(base, base)
        k >>= 1
    return result


def tilt_frobenius(x: TiltElement, n: int = 1) -> TiltElement:
    """n-th Frobenius twist: every exponent is multiplied by p**n.

    Coefficients are fixed because c**p = c on F_p.  Negative n applies
    the inverse; exponent denominators stay p-powers either way.
    """
    if not isinstance(n, int):
        raise DomainError(f"Frobenius power must be an integer, got {n!r}")
    scale = Fraction(x.p) ** n
    return TiltElement.from_terms(x.p, {e * scale: c for e, c in x.terms})


def untilt_val_compare(vx: TiltVal, vy: TiltVal) -> int:
    """Three-way comparison (-1, 0, 1) in the shared totally ordered value group."""
    if vx == vy:
        return 0
    return -1 if vx < vy else 1


def tilt_rescale_t(x: TiltElement, u: int) -> TiltElement:
    """Ring substitution t -> u*t for a unit u of F_p.

    A fractional exponent e = m / p^k acts through its residue mod p - 1,
    where p is invertible, so u^e is well defined and the substitution is
    multiplicative.  Every exponent is preserved, hence so is every
    valuation.  Over F_2 the only unit is u = 1.
    """
    p = x.p
    if not isinstance(u, int) or not 0 < u < p:
        raise DomainError(f"substitution unit must be an integer in 1..{p - 1}, got {u!r}")
    m = p - 1
    new: dict[Fraction, int] = {}
    for e, c in x.terms:
        r = (e.numerator * pow(e.denominator, -1, m)) % m if m > 1 else 0
        new[e] = (c * pow(u, r, p)) % p
    return TiltElement.from_terms(p, new)
