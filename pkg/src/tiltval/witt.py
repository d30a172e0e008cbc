"""Teichmuller-style expressions over the tilt model and their Gauss norms.

A :class:`WittExpr` stores a chosen presentation sum_i [x_i] * p^i with
each x_i in the tilt model.  No carry arithmetic is performed: two
presentations of the same underlying element are distinct values here,
and the norm attached to a presentation is an upper bound for the norm
of the element it denotes.  On a single Teichmuller term the bound is
the exact value, which is all the downstream size estimates use.

Norms are kept in additive (logarithmic) form.  For the weight r of
rho = |t|^r the log-norm of a presentation is

    lambda = min_i ( v(x_i) + i * r )

so lambda >= 0 says the presentation certifies membership in the ring of
integral elements for that rho.  The boundary norm at rho = 1 is the
degenerate weight r = 0 and gets its own flag rather than a zero weight
smuggled through the same code path.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Union

from .errors import ConfigError, DomainError
from .tilt import INF_VAL, TiltElement, TiltVal, is_prime, tilt_frobenius, tilt_pow, tilt_val

__all__ = [
    "NEG_INF",
    "PrimitiveDeg1",
    "RhoWeight",
    "WittExpr",
    "eta_val",
    "gauss_log_norm",
    "primitive_frobenius",
    "primitive_pow_family",
    "teichmuller",
]


class _NegativeInfinity:
    """Sentinel below every rational; the log-norm of the empty presentation.

    The empty presentation denotes zero, whose norm is 0; in log form
    that is -infinity, kept distinct from every finite Fraction.
    """

    __slots__ = ()

    def __eq__(self, other: object) -> bool:
        return isinstance(other, _NegativeInfinity)

    def __lt__(self, other: object) -> bool:
        return not isinstance(other, _NegativeInfinity)

    def __le__(self, other: object) -> bool:
        return True

    def __gt__(self, other: object) -> bool:
        return False

    def __ge__(self, other: object) -> bool:
        return isinstance(other, _NegativeInfinity)

    def __hash__(self) -> int:
        return hash("tiltval.NEG_INF")

    def __repr__(self) -> str:
        return "NEG_INF"


NEG_INF = _NegativeInfinity()


@dataclass(frozen=True)
class RhoWeight:
    """Weight r selecting the Gauss norm with rho = |t|^r.

    Interior points of the relevant disk have r > 0; the boundary norm at
    rho = 1 is selected by ``at_one`` with the weight pinned to 0.
    """

    r: Fraction
    at_one: bool = False

    def __post_init__(self):
        if not isinstance(self.r, Fraction):
            raise DomainError("weight must be a Fraction")
        if self.at_one:
            if self.r != 0:
                raise DomainError("the boundary norm carries weight 0")
        elif self.r <= 0:
            raise DomainError(f"interior weight must be positive, got {self.r}")

    @classmethod
    def of(cls, r: Union[Fraction, int]) -> "RhoWeight":
        return cls(Fraction(r))

    @classmethod
    def one(cls) -> "RhoWeight":
        return cls(Fraction(0), at_one=True)

    @property
    def weight(self) -> Fraction:
        return Fraction(0) if self.at_one else self.r


@dataclass(frozen=True)
class WittExpr:
    """A presentation sum_i [x_i] * p^i with nonzero tilt entries x_i."""

    p: int
    terms: tuple[tuple[int, TiltElement], ...]

    def __post_init__(self):
        if not is_prime(self.p):
            raise DomainError(f"residue characteristic must be prime, got {self.p}")
        prev = None
        for slot, x in self.terms:
            if not isinstance(slot, int) or slot < 0:
                raise DomainError(f"slot index must be a nonnegative integer, got {slot!r}")
            if prev is not None and slot <= prev:
                raise DomainError("slots must be strictly increasing")
            if not isinstance(x, TiltElement) or x.p != self.p:
                raise ConfigError(f"slot {slot} entry is not a tilt element over F_{self.p}")
            if x.is_zero:
                raise DomainError(f"slot {slot} holds zero; drop empty slots instead")
            prev = slot

    @classmethod
    def from_terms(cls, p: int, terms: Mapping[int, TiltElement]) -> "WittExpr":
        kept = tuple(sorted((i, x) for i, x in terms.items() if not x.is_zero))
        return cls(p, kept)

    @property
    def is_zero(self) -> bool:
        return not self.terms


def teichmuller(x: TiltElement) -> WittExpr:
    """The single-slot presentation [x]; zero maps to the empty presentation."""
    if x.is_zero:
        return WittExpr(x.p, ())
    return WittExpr(x.p, ((0, x),))


def gauss_log_norm(w: WittExpr, rho: RhoWeight) -> Union[Fraction, _NegativeInfinity]:
    """Additive Gauss norm min_i (v(x_i) + i*r) of a presentation.

    Returns :data:`NEG_INF` for the empty presentation (norm 0 in
    multiplicative terms).  Exact on Teichmuller terms, an upper bound
    for the denoted element otherwise; see the module docstring.
    """
    if w.is_zero:
        return NEG_INF
    wt = rho.weight
    return min(tilt_val(x).as_fraction() + slot * wt for slot, x in w.terms)


@dataclass(frozen=True)
class PrimitiveDeg1:
    """Generator data [a] - p of a degree-one prime, with 0 < v(a) < +inf.

    Only ``a`` is stored; the constructor enforces that a is a nonzero
    element of the open unit disk, which is exactly the condition for
    [a] - p to be primitive of degree one.
    """

    a: TiltElement

    def __post_init__(self):
        v = tilt_val(self.a)
        if v.is_infinite or v.as_fraction() <= 0:
            raise DomainError("generator must satisfy 0 < v(a) < +inf")


def primitive_pow_family(a: TiltElement, ell: int) -> tuple[PrimitiveDeg1, ...]:
    """The tuple ([a^(j^2)] - p) for j = 1 .. (ell - 1) / 2.

    ell must be an odd prime different from the residue characteristic.
    Valuations scale by j^2 because v is additive and a^(j^2) never
    cancels below its lowest term.
    """
    if not is_prime(ell) or ell == 2:
        raise DomainError(f"ell must be an odd prime, got {ell}")
    if ell == a.p:
        raise DomainError(f"ell must differ from the residue characteristic {a.p}")
    PrimitiveDeg1(a)  # validate 0 < v(a) < +inf before powering
    ell_star = (ell - 1) // 2
    return tuple(PrimitiveDeg1(tilt_pow(a, j * j)) for j in range(1, ell_star + 1))


def primitive_frobenius(w: PrimitiveDeg1, n: int = 1) -> PrimitiveDeg1:
    """Frobenius on generator data: [a] - p maps to [a^(p^n)] - p."""
    return PrimitiveDeg1(tilt_frobenius(w.a, n))


def eta_val(prim: PrimitiveDeg1, x: TiltElement) -> TiltVal:
    """Valuation of the image of [x] in the untilt cut out by [a] - p.

    Normalized so that v(p) = 1 there; concretely v(x) / v(a).  The zero
    element maps to +infinity.
    """
    vx = tilt_val(x)
    if vx.is_infinite:
        return INF_VAL
    return TiltVal(vx.as_fraction() / tilt_val(prim.a).as_fraction())
