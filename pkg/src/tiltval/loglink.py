"""Exact p-adic logarithms of principal units and valuation chains.

The logarithm is computed from the alternating series log(1 + x) =
sum_k (-1)^(k+1) x^k / k as an exact rational, then reduced once mod
p^N.  Convergence bookkeeping: for a principal unit (u = 1 mod p for
odd p, u = 1 mod 4 for p = 2) the k-th term has valuation at least
k*v - v_p(k) with v = 1 resp. 2, and k*v - floor(log_p k) never
decreases, so the cutoff is the first index where that lower bound
reaches N.  Every dropped term is divisible by p^N, so the reduction is
exact, and the reduced denominator is prime to p, so the single modular
inversion is legitimate.

The result always lands in p Z/p^N (4 Z/2^N for p = 2); that subgroup
membership is re-checked on every call.  On these subgroups log turns
products into sums and p-th powers into multiplication by p, which is
the mechanism the valuation chains below quantify: one step of the
chain rescales v(p) by p, no step crosses between chain indices, and
catching up to a proximity epsilon takes m(epsilon) steps with
1/p^m < epsilon.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import ConfigError, DomainError, PrecisionError, VerificationError
from .tilt import is_prime

__all__ = [
    "LogLinkChain",
    "PadicUnit",
    "chain_build",
    "kummer_shift",
    "m_of_epsilon",
    "padic_log",
]


@dataclass(frozen=True)
class PadicUnit:
    """A principal unit of Z/p^N: value = 1 mod p (mod 4 when p = 2).

    ``precision`` is N.  The floor N >= 2 for odd p and N >= 3 for p = 2
    keeps log and its inverse honest at this precision; below that the
    congruence classes carry no information.
    """

    p: int
    precision: int
    value: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise DomainError(f"p must be prime, got {self.p}")
        floor = 3 if self.p == 2 else 2
        if self.precision < floor:
            raise PrecisionError(
                f"precision {self.precision} is below the minimum {floor} for p = {self.p}",
                required=floor,
            )
        if not isinstance(self.value, int) or not 0 <= self.value < self.modulus:
            raise DomainError(f"value must be reduced mod {self.p}^{self.precision}")
        congruence = 4 if self.p == 2 else self.p
        if self.value % congruence != 1:
            raise DomainError(f"not a principal unit: {self.value} != 1 mod {congruence}")

    @classmethod
    def of(cls, p: int, precision: int, value: int) -> "PadicUnit":
        """Reduce an integer mod p^precision and wrap it."""
        if precision < 1:
            raise PrecisionError("precision must be at least 1", required=1)
        return cls(p, precision, value % p**precision)

    @property
    def modulus(self) -> int:
        return self.p**self.precision

    def _check_same(self, other: "PadicUnit") -> None:
        if (self.p, self.precision) != (other.p, other.precision):
            raise ConfigError(
                f"mixed unit groups: ({self.p}, {self.precision}) vs ({other.p}, {other.precision})"
            )

    def mul(self, other: "PadicUnit") -> "PadicUnit":
        self._check_same(other)
        return PadicUnit(self.p, self.precision, (self.value * other.value) % self.modulus)

    def pow(self, k: int) -> "PadicUnit":
        """k-th power, any integer k; units are invertible mod p^N."""
        return PadicUnit(self.p, self.precision, pow(self.value, k, self.modulus))


def _floor_log(n: int, p: int) -> int:
    e = 0
    while p ** (e + 1) <= n:
        e += 1
    return e


def padic_log(u: PadicUnit) -> int:
    """log(u) mod p^precision as a reduced integer in p Z/p^N (4 Z/2^N)."""
    p, n_prec = u.p, u.precision
    modulus = u.modulus
    x = (u.value - 1) % modulus
    if x == 0:
        return 0
    v = 2 if p == 2 else 1
    # First k where even the worst case k*v - floor(log_p k) reaches N;
    # the bound never decreases with k, so everything beyond is dropped.
    cutoff = 1
    while cutoff * v - _floor_log(cutoff, p) < n_prec:
        cutoff += 1
    total = Fraction(0)
    x_pow = 1
    for k in range(1, cutoff):
        x_pow *= x
        term = Fraction(x_pow, k)
        total = total + term if k % 2 else total - term
    if total.denominator % p == 0:
        raise VerificationError("series denominator picked up a factor of p")
    result = (total.numerator * pow(total.denominator, -1, modulus)) % modulus
    subgroup = 4 if p == 2 else p
    if result % subgroup:
        raise VerificationError(f"log left the expected subgroup {subgroup}Z/{p}^{n_prec}")
    return result


@dataclass(frozen=True)
class LogLinkChain:
    """Valuations v_n = v0 * p^n of the same prime along a chain window.

    Moving one step toward smaller n divides the valuation by p: the
    chain records how the normalization of v(p) drifts, entry by entry,
    with no operation that would identify different indices.
    """

    p: int
    v0: Fraction
    window: tuple[int, int]
    entries: tuple[tuple[int, Fraction], ...]

    def __post_init__(self):
        if not is_prime(self.p):
            raise DomainError(f"p must be prime, got {self.p}")
        if not isinstance(self.v0, Fraction) or self.v0 <= 0:
            raise DomainError(f"v0 must be a positive Fraction, got {self.v0!r}")
        lo, hi = self.window
        if not (isinstance(lo, int) and isinstance(hi, int) and lo <= hi):
            raise DomainError(f"window must be an inclusive integer range, got {self.window!r}")
        expected_indexes = tuple(range(lo, hi + 1))
        if tuple(n for n, _ in self.entries) != expected_indexes:
            raise DomainError("entries must cover the window exactly once, in order")
        for n, value in self.entries:
            if value <= 0:
                raise DomainError(f"valuation at index {n} must be positive")
        for (_, prev), (_, cur) in zip(self.entries, self.entries[1:]):
            if cur != prev * self.p:
                raise VerificationError("adjacent chain entries must differ by a factor of p")

    def value_at(self, n: int) -> Fraction:
        lo, hi = self.window
        if not lo <= n <= hi:
            raise DomainError(f"index {n} outside the chain window [{lo}, {hi}]")
        return self.entries[n - lo][1]


def chain_build(p: int, v0: Fraction, window: tuple[int, int]) -> LogLinkChain:
    """Build the chain v_n = v0 * p^n over an inclusive index window."""
    if not is_prime(p):
        raise DomainError(f"p must be prime, got {p}")
    if not isinstance(v0, Fraction) or v0 <= 0:
        raise DomainError(f"v0 must be a positive Fraction, got {v0!r}")
    lo, hi = window
    if not (isinstance(lo, int) and isinstance(hi, int) and lo <= hi):
        raise DomainError(f"window must be an inclusive integer range, got {window!r}")
    entries = tuple((n, v0 * Fraction(p) ** n) for n in range(lo, hi + 1))
    return LogLinkChain(p=p, v0=v0, window=(lo, hi), entries=entries)


def m_of_epsilon(p: int, eps: Fraction) -> int:
    """Least m >= 0 with 1/p^m strictly below eps, for eps < 1.

    A proximity demand of eps >= 1 is no demand at all and returns 0
    outright; eps <= 0 is meaningless.
    """
    if not is_prime(p):
        raise DomainError(f"p must be prime, got {p}")
    if not isinstance(eps, Fraction):
        raise DomainError(f"eps must be a Fraction, got {eps!r}")
    if eps <= 0:
        raise DomainError(f"eps must be positive, got {eps}")
    if eps >= 1:
        return 0
    m = 1
    while Fraction(1, p**m) >= eps:
        m += 1
    return m


def kummer_shift(n1: int, n2: int) -> int:
    """Index shift from chain position n1 to n2; shifts telescope."""
    if not (isinstance(n1, int) and isinstance(n2, int)):
        raise DomainError("chain positions are integers")
    return n2 - n1
