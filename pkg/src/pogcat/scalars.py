"""Monoid rings on positivity cones and their weight-cutoff truncations.

``MonoidRingElt`` is a finite integer combination of formal symbols T^e
with e a rational exponent in the cone of a pog.  ``NovikovElt`` is the
same thing remembered modulo the ideal of exponents >= cutoff, which is
how completed series are represented at desk scale: a truncation of an
infinite sum is a finite, exact object.

The almost-mathematics predicates live here too.  The maximal ideal of
positive-valuation elements is not finitely generated, so the decision
procedures test it on the generators T^(1/k), k up to a caller-supplied
denominator bound, which is exact for the finitely presented truncated
modules this library produces.

>>> from fractions import Fraction
>>> lam = MonoidRingElt.from_terms(Rationals(), {Fraction(0): 1, Fraction(1, 2): 2})
>>> str(lam * lam)
'1*T^(0) + 4*T^(1/2) + 4*T^(1)'
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from .homology import IntSolver
from .pog import Pog, PogError, PogMismatchError, Quotient, Rationals, ZScaled, as_rat


class CutoffError(PogError):
    """Operation needs a truncation cutoff that is missing or invalid."""


def _clean_terms(pog: Pog, terms) -> dict[Fraction, int]:
    out: dict[Fraction, int] = {}
    pairs = terms.items() if hasattr(terms, "items") else terms
    for e, c in pairs:
        if not isinstance(c, int):
            raise PogError(f"coefficients must be integers: {c!r}")
        if c == 0:
            continue
        e = pog.check_element(e)
        if not pog.cone_contains(e):
            raise PogError(f"exponent {e} is outside the cone of {pog}")
        out[e] = out.get(e, 0) + c
    return {e: c for e, c in out.items() if c}


def _render(terms: dict[Fraction, int]) -> str:
    if not terms:
        return "0"
    parts = []
    for e in sorted(terms):
        c = terms[e]
        if not parts:
            parts.append(f"{c}*T^({e})")
        elif c < 0:
            parts.append(f"- {-c}*T^({e})")
        else:
            parts.append(f"+ {c}*T^({e})")
    return " ".join(parts)


@dataclass(frozen=True)
class MonoidRingElt:
    """Element of Z[P_+], the monoid ring on the cone of a pog."""

    pog: Pog
    terms: tuple[tuple[Fraction, int], ...]

    @classmethod
    def from_terms(cls, pog: Pog, terms) -> "MonoidRingElt":
        clean = _clean_terms(pog, terms)
        return cls(pog, tuple(sorted(clean.items())))

    @classmethod
    def monomial(cls, pog: Pog, exponent, coeff: int = 1) -> "MonoidRingElt":
        return cls.from_terms(pog, {as_rat(exponent): coeff})

    @classmethod
    def zero(cls, pog: Pog) -> "MonoidRingElt":
        return cls(pog, ())

    @classmethod
    def one(cls, pog: Pog) -> "MonoidRingElt":
        return cls.monomial(pog, 0)

    def term_dict(self) -> dict[Fraction, int]:
        return dict(self.terms)

    def _check_same(self, other):
        if self.pog != other.pog:
            raise PogMismatchError(f"{self.pog} vs {other.pog}")

    def __add__(self, other):
        self._check_same(other)
        merged = self.term_dict()
        for e, c in other.terms:
            merged[e] = merged.get(e, 0) + c
        return MonoidRingElt.from_terms(self.pog, merged)

    def __neg__(self):
        return MonoidRingElt(self.pog, tuple((e, -c) for e, c in self.terms))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return MonoidRingElt.from_terms(
                self.pog, {e: c * other for e, c in self.terms})
        self._check_same(other)
        prod: dict[Fraction, int] = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                e = self.pog.add(e1, e2)
                prod[e] = prod.get(e, 0) + c1 * c2
        return MonoidRingElt.from_terms(self.pog, prod)

    __rmul__ = __mul__

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def valuation(self):
        """Least exponent with nonzero coefficient; None for 0."""
        return self.terms[0][0] if self.terms else None

    def __str__(self) -> str:
        return _render(dict(self.terms))


def mring_add(x: MonoidRingElt, y: MonoidRingElt) -> MonoidRingElt:
    return x + y


def mring_mul(x: MonoidRingElt, y: MonoidRingElt) -> MonoidRingElt:
    return x * y


@dataclass(frozen=True)
class NovikovElt:
    """Truncated series: exponents live in [0, cutoff), products drop the
    rest.  Mixing cutoffs is allowed and lands in the coarser (smaller)
    one, mirroring how completed limits are approximated from below."""

    pog: Pog
    terms: tuple[tuple[Fraction, int], ...]
    cutoff: Fraction

    @classmethod
    def from_terms(cls, pog: Pog, terms, cutoff) -> "NovikovElt":
        cutoff = as_rat(cutoff)
        if cutoff <= 0:
            raise CutoffError(f"cutoff must be positive: {cutoff}")
        if isinstance(pog, Quotient):
            raise CutoffError("truncation needs an ordered pog")
        clean = _clean_terms(pog, terms)
        clean = {e: c for e, c in clean.items() if e < cutoff}
        return cls(pog, tuple(sorted(clean.items())), cutoff)

    @classmethod
    def monomial(cls, pog, exponent, cutoff, coeff: int = 1) -> "NovikovElt":
        return cls.from_terms(pog, {as_rat(exponent): coeff}, cutoff)

    @classmethod
    def zero(cls, pog, cutoff) -> "NovikovElt":
        return cls.from_terms(pog, {}, cutoff)

    @classmethod
    def one(cls, pog, cutoff) -> "NovikovElt":
        return cls.monomial(pog, 0, cutoff)

    def term_dict(self) -> dict[Fraction, int]:
        return dict(self.terms)

    def _joint_cutoff(self, other) -> Fraction:
        if self.pog != other.pog:
            raise PogMismatchError(f"{self.pog} vs {other.pog}")
        return min(self.cutoff, other.cutoff)

    def __add__(self, other):
        cut = self._joint_cutoff(other)
        merged = self.term_dict()
        for e, c in other.terms:
            merged[e] = merged.get(e, 0) + c
        return NovikovElt.from_terms(self.pog, merged, cut)

    def __neg__(self):
        return NovikovElt(self.pog, tuple((e, -c) for e, c in self.terms),
                          self.cutoff)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return NovikovElt.from_terms(
                self.pog, {e: c * other for e, c in self.terms}, self.cutoff)
        cut = self._joint_cutoff(other)
        prod: dict[Fraction, int] = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                e = e1 + e2
                if e < cut:
                    prod[e] = prod.get(e, 0) + c1 * c2
        return NovikovElt.from_terms(self.pog, prod, cut)

    __rmul__ = __mul__

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def valuation(self):
        return self.terms[0][0] if self.terms else None

    def has_positive_valuation(self) -> bool:
        v = self.valuation()
        return v is not None and v > 0

    def shift(self, by) -> "NovikovElt":
        """Multiply by the monomial T^by."""
        by = as_rat(by)
        return NovikovElt.from_terms(
            self.pog, {e + by: c for e, c in self.terms}, self.cutoff)

    def __str__(self) -> str:
        return _render(dict(self.terms))


def novikov_truncate(x, cutoff) -> NovikovElt:
    """Truncate a monoid-ring element or re-truncate a finer Novikov
    element.  Ring map up to cutoff: truncate(x*y) = truncate(x)*truncate(y)."""
    cutoff = as_rat(cutoff)
    if isinstance(x, NovikovElt):
        if cutoff > x.cutoff:
            raise CutoffError(
                f"cannot refine cutoff {x.cutoff} to {cutoff}: data was dropped")
        return NovikovElt.from_terms(x.pog, x.term_dict(), cutoff)
    if isinstance(x, MonoidRingElt):
        return NovikovElt.from_terms(x.pog, x.term_dict(), cutoff)
    raise PogError(f"cannot truncate {x!r}")


def idempotent_split(x: NovikovElt) -> list[tuple[NovikovElt, NovikovElt]]:
    """Witness that positive-valuation elements form an idempotent ideal:
    each term T^e factors as T^(e/2) * (c T^(e/2)), both of positive
    valuation.  Summing the products recovers x up to cutoff."""
    if not x.has_positive_valuation():
        raise PogError("idempotent split needs positive valuation")
    pog = x.pog
    if isinstance(pog, ZScaled):
        # halves of lattice exponents need the finer lattice
        pog = ZScaled(2 * pog.n)
    out = []
    for e, c in x.terms:
        out.append((NovikovElt.monomial(pog, e / 2, x.cutoff),
                    NovikovElt.monomial(pog, e / 2, x.cutoff, c)))
    return out


# ---------------------------------------------------------------------------
# almost mathematics on truncated modules

@dataclass(frozen=True)
class AlmostSetup:
    """The base pair: truncated scalars plus the positive-valuation ideal,
    probed on the generators T^(1/k) for k up to denominator_bound."""

    denominator_bound: int

    def __post_init__(self):
        if self.denominator_bound < 1:
            raise PogError("denominator bound must be at least 1")

    def ideal_exponents(self) -> list[Fraction]:
        return [Fraction(1, k) for k in range(1, self.denominator_bound + 1)]


class TruncatedModule:
    """Finitely presented module over Z[P_+]/(exponents >= cutoff):
    cokernel of finitely many relation columns among free generators."""

    def __init__(self, pog: Pog, cutoff, n_gens: int,
                 relations: list[list[NovikovElt]] = ()):
        if isinstance(pog, Quotient):
            raise CutoffError("truncated modules need an ordered pog")
        self.pog = pog
        self.cutoff = as_rat(cutoff)
        if self.cutoff <= 0:
            raise CutoffError(f"cutoff must be positive: {self.cutoff}")
        self.n_gens = n_gens
        self.relations = [list(col) for col in relations]
        for col in self.relations:
            if len(col) != n_gens:
                raise PogError("relation column length != generator count")
            for x in col:
                if x.cutoff != self.cutoff or x.pog != pog:
                    raise PogMismatchError("relation entries disagree with module")

    @classmethod
    def free(cls, pog, cutoff, n_gens: int) -> "TruncatedModule":
        return cls(pog, cutoff, n_gens)

    def denominators(self) -> int:
        d = self.cutoff.denominator
        for col in self.relations:
            for x in col:
                for e, _ in x.terms:
                    d = lcm(d, e.denominator)
        return d

    def lattice(self, setup: AlmostSetup) -> int:
        return lcm(self.denominators(),
                   *range(1, setup.denominator_bound + 1))

    def monomials(self, L: int) -> list[Fraction]:
        out = []
        e = Fraction(0)
        step = Fraction(1, L)
        while e < self.cutoff:
            out.append(e)
            e += step
        return out

    def _flat(self, gen: int, mono_index: int, n_monos: int) -> int:
        return gen * n_monos + mono_index

    def relation_columns_z(self, L: int) -> list[list[int]]:
        """Z-span of the relation submodule: every monomial shift of every
        relation, expanded in the (generator, monomial) basis."""
        monos = self.monomials(L)
        index = {e: i for i, e in enumerate(monos)}
        nb = len(monos)
        cols = []
        for col in self.relations:
            for m in monos:
                vec = [0] * (self.n_gens * nb)
                nonzero = False
                for gen, x in enumerate(col):
                    for e, c in x.terms:
                        em = e + m
                        if em < self.cutoff:
                            vec[self._flat(gen, index[em], nb)] += c
                            nonzero = True
                if nonzero:
                    cols.append(vec)
        return cols

    def almost_zero(self, setup: AlmostSetup) -> bool:
        """Do all probed positive-valuation scalars annihilate the module?

        T^(1/k) kills a residue class iff shifting it lands in the span of
        the relations (or beyond the cutoff), an exact integer question.
        """
        L = self.lattice(setup)
        monos = self.monomials(L)
        index = {e: i for i, e in enumerate(monos)}
        nb = len(monos)
        cols = self.relation_columns_z(L)
        if cols:
            solver = IntSolver([[col[i] for col in cols]
                                for i in range(self.n_gens * nb)])
        else:
            solver = None
        for t in setup.ideal_exponents():
            for gen in range(self.n_gens):
                if t >= self.cutoff:
                    continue
                target = [0] * (self.n_gens * nb)
                target[self._flat(gen, index[t], nb)] = 1
                if solver is None:
                    return False
                if solver.solve(target) is None:
                    return False
        return True


def almost_zero(module: TruncatedModule, setup: AlmostSetup) -> bool:
    return module.almost_zero(setup)


def direct_sum(a: TruncatedModule, b: TruncatedModule) -> TruncatedModule:
    if a.pog != b.pog or a.cutoff != b.cutoff:
        raise PogMismatchError("direct sum needs matching scalars")
    zero_a = [NovikovElt.zero(a.pog, a.cutoff)] * a.n_gens
    zero_b = [NovikovElt.zero(b.pog, b.cutoff)] * b.n_gens
    rels = [col + zero_b for col in a.relations]
    rels += [zero_a + col for col in b.relations]
    return TruncatedModule(a.pog, a.cutoff, a.n_gens + b.n_gens, rels)


class TruncatedMap:
    """Map of free truncated modules, a matrix of NovikovElt entries
    (rows index the target, columns the source)."""

    def __init__(self, pog: Pog, cutoff, matrix: list[list[NovikovElt]],
                 n_source: int, n_target: int):
        self.pog = pog
        self.cutoff = as_rat(cutoff)
        self.n_source = n_source
        self.n_target = n_target
        if len(matrix) != n_target or any(len(r) != n_source for r in matrix):
            raise PogError("matrix shape disagrees with source/target ranks")
        self.matrix = [list(r) for r in matrix]

    def denominators(self) -> int:
        d = self.cutoff.denominator
        for row in self.matrix:
            for x in row:
                for e, _ in x.terms:
                    d = lcm(d, e.denominator)
        return d

    def _expand(self, setup: AlmostSetup):
        L = lcm(self.denominators(), *range(1, setup.denominator_bound + 1))
        helper = TruncatedModule.free(self.pog, self.cutoff, 1)
        monos = helper.monomials(L)
        index = {e: i for i, e in enumerate(monos)}
        nb = len(monos)
        rows = self.n_target * nb
        cols_n = self.n_source * nb
        a = [[0] * cols_n for _ in range(rows)]
        for j_src in range(self.n_source):
            for m in monos:
                col = j_src * nb + index[m]
                for i_tgt in range(self.n_target):
                    x = self.matrix[i_tgt][j_src]
                    for e, c in x.terms:
                        em = e + m
                        if em < self.cutoff:
                            a[i_tgt * nb + index[em]][col] += c
        return a, monos, nb

    def kernel_almost_zero(self, setup: AlmostSetup) -> bool:
        """Kernel inside a free module: almost zero iff every probed T^(1/k)
        pushes every kernel vector entirely past the cutoff."""
        from .homology import kernel_basis
        a, monos, nb = self._expand(setup)
        dim_src = self.n_source * nb
        if dim_src == 0:
            return True
        if not a:
            # map into the zero module: the kernel is everything
            basis = [[1 if i == j else 0 for i in range(dim_src)]
                     for j in range(dim_src)]
        else:
            basis = kernel_basis(a)
        for t in setup.ideal_exponents():
            for vec in basis:
                for flat, c in enumerate(vec):
                    if c == 0:
                        continue
                    e = monos[flat % nb]
                    if e + t < self.cutoff:
                        return False
        return True

    def cokernel_almost_zero(self, setup: AlmostSetup) -> bool:
        coker = TruncatedModule(self.pog, self.cutoff, self.n_target,
                                [[row[j] for row in self.matrix]
                                 for j in range(self.n_source)])
        return coker.almost_zero(setup)

    def almost_iso(self, setup: AlmostSetup) -> bool:
        return self.kernel_almost_zero(setup) and self.cokernel_almost_zero(setup)


def almost_iso(f: TruncatedMap, setup: AlmostSetup) -> bool:
    """Kernel and cokernel both almost zero."""
    return f.almost_iso(setup)
