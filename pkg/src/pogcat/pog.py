"""Partially ordered abelian groups (pogs) with exact rational elements.

A pog is a group together with a partial order invariant under left
translation, or equivalently a positivity cone.  Supported kinds:

* ``ZScaled(n)`` -- the subgroup (1/n)Z of the rationals, ordered as usual.
* ``Rationals()`` -- Q with its usual order.
* ``Quotient(base, subgroup)`` -- base/subgroup, e.g. (1/4)Z/Z.  Quotients
  carry the induced grading but no order (the cone meets every coset), so
  ``leq`` is refused on them.

Elements are ``fractions.Fraction`` throughout; floats are rejected.
Spec strings: ``"Z"``, ``"Z/4"``, ``"Q"``, with suffix ``"%Z"`` for
quotients by the integers, e.g. ``"Z/4%Z"``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction


class PogError(ValueError):
    pass


class PogMismatchError(PogError):
    """Operands belong to different pogs."""


class UnorderedPogError(PogError):
    """Order operation on a pog that does not carry a partial order."""


class InclusionError(PogError):
    """Requested sub/sup pair is not a discrete inclusion with adjoints."""


def as_rat(x) -> Fraction:
    """Coerce to an exact rational.  Floats are rejected, never rounded."""
    if isinstance(x, float):
        raise PogError(f"floats are not exact: {x!r}")
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise PogError(f"not a rational: {x!r}")


@dataclass(frozen=True)
class Pog:
    """Base class; use the concrete kinds below."""

    def contains(self, x) -> bool:
        raise NotImplementedError

    def check_element(self, x) -> Fraction:
        r = as_rat(x)
        if not self.contains(r):
            raise PogError(f"{r} is not an element of {self}")
        return self.normalize(r)

    def normalize(self, x: Fraction) -> Fraction:
        return x

    def add(self, a, b) -> Fraction:
        return self.normalize(as_rat(a) + as_rat(b))

    def neg(self, a) -> Fraction:
        return self.normalize(-as_rat(a))

    def sub(self, a, b) -> Fraction:
        return self.normalize(as_rat(a) - as_rat(b))

    @property
    def zero(self) -> Fraction:
        return Fraction(0)

    @property
    def ordered(self) -> bool:
        return True

    def cone_contains(self, g) -> bool:
        """Membership in the positivity cone {g : 0 <= g}."""
        raise NotImplementedError

    def leq(self, a, b) -> bool:
        """a <= b, i.e. (b - a) lies in the cone."""
        if not self.ordered:
            raise UnorderedPogError(f"{self} carries no partial order")
        return self.cone_contains(self.sub(b, a))

    def spec_string(self) -> str:
        raise NotImplementedError

    def __str__(self) -> str:
        return self.spec_string()


@dataclass(frozen=True)
class ZScaled(Pog):
    """(1/n)Z inside Q.  n = 1 is the integers."""

    n: int = 1

    def __post_init__(self):
        if not (isinstance(self.n, int) and self.n >= 1):
            raise PogError(f"denominator must be a positive integer: {self.n!r}")

    def contains(self, x) -> bool:
        r = as_rat(x)
        return self.n % r.denominator == 0

    def cone_contains(self, g) -> bool:
        return self.check_element(g) >= 0

    def spec_string(self) -> str:
        return "Z" if self.n == 1 else f"Z/{self.n}"


@dataclass(frozen=True)
class Rationals(Pog):
    def contains(self, x) -> bool:
        as_rat(x)
        return True

    def cone_contains(self, g) -> bool:
        return as_rat(g) >= 0

    def spec_string(self) -> str:
        return "Q"


@dataclass(frozen=True)
class Quotient(Pog):
    """base/subgroup with coset representatives in [0, generator(subgroup)).

    The subgroup must be a ZScaled contained in the base.  The induced
    "cone" grading contains every coset (each coset has positive lifts),
    which is why quotients are not ordered.
    """

    base: Pog = None
    subgroup: ZScaled = None

    def __post_init__(self):
        if not isinstance(self.subgroup, ZScaled):
            raise PogError("quotient subgroup must be a scaled-integer pog")
        if not is_subpog(self.subgroup, self.base):
            raise PogError(f"{self.subgroup} is not a subgroup of {self.base}")

    @property
    def period(self) -> Fraction:
        return Fraction(1, self.subgroup.n)

    def contains(self, x) -> bool:
        return self.base.contains(x)

    def normalize(self, x: Fraction) -> Fraction:
        return x - (x / self.period).__floor__() * self.period

    @property
    def ordered(self) -> bool:
        return False

    def cone_contains(self, g) -> bool:
        # every coset of a ZScaled/Q modulo a finite-index lattice contains
        # arbitrarily large positive lifts
        self.check_element(g)
        return True

    def spec_string(self) -> str:
        if self.subgroup.n == 1:
            return f"{self.base.spec_string()}%Z"
        return f"{self.base.spec_string()}%{self.subgroup.spec_string()}"


def parse_pog(text: str) -> Pog:
    """Parse a spec string such as "Z", "Z/4", "Q" or "Z/4%Z"."""
    text = text.strip()
    if "%" in text:
        base_s, sub_s = text.split("%", 1)
        sub = parse_pog(sub_s)
        if not isinstance(sub, ZScaled):
            raise PogError(f"unsupported quotient subgroup: {sub_s!r}")
        return Quotient(parse_pog(base_s), sub)
    if text == "Q":
        return Rationals()
    if text == "Z":
        return ZScaled(1)
    if text.startswith("Z/"):
        try:
            n = int(text[2:])
        except ValueError:
            raise PogError(f"bad pog spec: {text!r}") from None
        return ZScaled(n)
    raise PogError(f"bad pog spec: {text!r}")


def is_subpog(sub: Pog, sup: Pog) -> bool:
    """Inclusion as ordered subgroups (or quotients with the same period)."""
    if isinstance(sub, Quotient) and isinstance(sup, Quotient):
        return sub.subgroup == sup.subgroup and is_subpog(sub.base, sup.base)
    if isinstance(sub, Quotient) or isinstance(sup, Quotient):
        return False
    if isinstance(sup, Rationals):
        return True
    if isinstance(sub, Rationals):
        return False
    return sup.n % sub.n == 0


def _require_discrete_inclusion(sub: Pog, sup: Pog):
    if not is_subpog(sub, sup):
        raise InclusionError(f"{sub} is not included in {sup}")
    if isinstance(sub, Quotient):
        raise InclusionError("adjoints of quotient inclusions are not supported")
    if isinstance(sub, Rationals) and not isinstance(sup, Rationals):
        raise InclusionError(f"{sub} in {sup} is not an inclusion")


def floor_to(sub: Pog, sup: Pog, g) -> Fraction:
    """Largest element of sub below g; right adjoint to the inclusion.

    Requires sub discrete in sup, i.e. sub a scaled-integer pog (or the
    identity inclusion).  Does not commute with addition:
    floor(1/2) + floor(1/2) = 0 while floor(1) = 1.
    """
    _require_discrete_inclusion(sub, sup)
    r = sup.check_element(g)
    if isinstance(sub, Rationals):
        return r
    return Fraction(math.floor(r * sub.n), sub.n)


def ceil_to(sub: Pog, sup: Pog, g) -> Fraction:
    """Smallest element of sub above g; left adjoint to the inclusion."""
    _require_discrete_inclusion(sub, sup)
    r = sup.check_element(g)
    if isinstance(sub, Rationals):
        return r
    return Fraction(math.ceil(r * sub.n), sub.n)


@dataclass(frozen=True)
class PogMorphismWitness:
    """Witness that a <= b in an ordered pog: the hom set of the order
    category is a point when the relation holds and empty otherwise."""

    pog: Pog
    source: Fraction
    target: Fraction

    def __post_init__(self):
        if not self.pog.leq(self.source, self.target):
            raise PogError(f"{self.source} <= {self.target} fails in {self.pog}")


def hom_witness(pog: Pog, a, b):
    """The unique morphism a -> b when a <= b, else None."""
    a = pog.check_element(a)
    b = pog.check_element(b)
    if pog.leq(a, b):
        return PogMorphismWitness(pog, a, b)
    return None


def exhaustion(pog: Pog, steps: int) -> list:
    """Increasing chain of scaled-integer subpogs exhausting Q (or Q%Z).

    Stage k is (1/k!)Z: every denominator d appears from stage d onward.
    """
    if steps < 1:
        raise PogError("exhaustion needs at least one step")
    if isinstance(pog, Rationals):
        return [ZScaled(math.factorial(k)) for k in range(1, steps + 1)]
    if isinstance(pog, Quotient) and isinstance(pog.base, Rationals):
        return [
            Quotient(ZScaled(math.factorial(k)), pog.subgroup)
            for k in range(1, steps + 1)
        ]
    raise PogError(f"no canonical exhaustion for {pog}")
