"""Graded modules over the monoid ring of a positive cone.

A ``GradedModule`` keeps a finite window of grades, one finitely presented
abelian group per grade, and integer matrices for the cone action.  The
functor laws (identity at zero, composition of shifts) are not assumed;
``module_check`` verifies them and reports witnesses when they fail.
Components outside the stored support are zero, so the full module is the
product of the stored pieces with zero glue.

Persistence modules live on an ordered one dimensional grading and are
constant between finitely many critical grades.  Transition maps point up
the grading.  Completion along a dense inclusion evaluates at the least
lattice point at or above the query; with this orientation completion is
right adjoint to restriction, which the tests exercise through hom group
ranks and the triangle identities.

Everything here is exact integer or rational arithmetic, and all objects
are immutable after construction, so verification passes are pure reads.
"""

from __future__ import annotations

import random
from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction

from .homology import (
    AbGroup,
    cokernel,
    identity,
    in_span,
    int_inverse,
    kernel_basis,
    mat_mul,
    mat_vec,
    shape,
    span_contains,
    transpose,
    zeros,
)
from .pog import (
    InclusionError,
    Pog,
    PogError,
    Quotient,
    Rationals,
    ZScaled,
    as_rat,
    ceil_to,
    is_subpog,
)
from .report import Report
from .scalars import CutoffError, NovikovElt

__all__ = [
    "ModuleError",
    "Presentation",
    "GradedModule",
    "module_check",
    "restrict",
    "equivariantize",
    "tensor",
    "free_line",
    "ideal_quotient_ranks",
    "PersistenceModule",
    "interval_module",
    "complete_persistence",
    "restrict_persistence",
    "extend_persistence",
    "hom_rank",
    "ring_completion",
    "TruncatedRing",
]


class ModuleError(PogError):
    """Graded module data is malformed, inconsistent, or underdetermined."""


@dataclass(frozen=True)
class Presentation:
    """Cokernel presentation: ``n_gens`` generators, one relation per column."""

    n_gens: int
    relations: tuple[tuple[int, ...], ...] = ()

    def __post_init__(self):
        if self.n_gens < 0:
            raise ModuleError("generator count must be nonnegative")
        for col in self.relations:
            if len(col) != self.n_gens or not all(isinstance(e, int) for e in col):
                raise ModuleError("relation columns must be integer vectors "
                                  f"of length {self.n_gens}")

    @staticmethod
    def free(n: int) -> "Presentation":
        return Presentation(n)

    def relation_columns(self) -> list[list[int]]:
        return [list(c) for c in self.relations]

    def group(self) -> AbGroup:
        if not self.relations:
            return AbGroup(self.n_gens)
        return cokernel(transpose(self.relation_columns()))

    def maps_equal(self, a, b) -> bool:
        """Do two matrices into this presentation induce the same map?"""
        cols = len(a[0]) if a else 0
        for j in range(cols):
            diff = [a[i][j] - b[i][j] for i in range(self.n_gens)]
            if not in_span(self.relation_columns(), diff):
                return False
        return True


def action_pog(pog: Pog) -> Pog:
    """Shifts act through the base cone; quotient gradings inherit it."""
    return pog.base if isinstance(pog, Quotient) else pog


class GradedModule:
    """Finite-support graded module with explicit cone action matrices.

    ``components`` maps grades to presentations.  ``steps`` maps pairs
    ``(grade, rho)`` with ``rho`` a positive cone element to the matrix of
    the shift action from ``component(grade)`` to ``component(grade + rho)``.
    Composite shifts are resolved by chaining stored steps; whether every
    chain with the same endpoints agrees is exactly what ``module_check``
    tests, so construction does not enforce it.
    """

    def __init__(self, pog: Pog, components: dict, steps: dict | None = None):
        self.pog = pog
        self.shift_pog = action_pog(pog)
        comp: dict[Fraction, Presentation] = {}
        for g, pres in components.items():
            key = pog.check_element(as_rat(g))
            if not isinstance(pres, Presentation):
                pres = Presentation.free(int(pres))
            if key in comp:
                raise ModuleError(f"grade {key} listed twice")
            comp[key] = pres
        self.components = comp
        self.support = sorted(comp)
        stored: dict[tuple[Fraction, Fraction], list[list[int]]] = {}
        for (g, rho), mat in (steps or {}).items():
            g = pog.check_element(as_rat(g))
            rho = self.shift_pog.check_element(as_rat(rho))
            if not self.shift_pog.cone_contains(rho) or rho == 0:
                raise ModuleError(f"step shift must be positive in the cone: {rho}")
            if g not in comp:
                raise ModuleError(f"step at grade {g} has no source component")
            tgt = pog.normalize(g + rho)
            if tgt not in comp:
                raise ModuleError(f"step {g} + {rho} lands outside the support; "
                                  "maps to the zero component are implicit")
            mat = [list(row) for row in mat]
            rows, cols = shape(mat)
            want = (comp[tgt].n_gens, comp[g].n_gens)
            if (rows, cols) != want and not (want[0] == 0 or want[1] == 0):
                raise ModuleError(f"step ({g}, {rho}) has shape {(rows, cols)}, "
                                  f"expected {want}")
            if want[0] == 0 or want[1] == 0:
                mat = zeros(*want)
            stored[(g, rho)] = mat
        self.steps = stored
        by_source: dict[Fraction, list[tuple[Fraction, list[list[int]]]]] = {}
        for (g, rho), mat in stored.items():
            by_source.setdefault(g, []).append((rho, mat))
        for g in by_source:
            by_source[g].sort(key=lambda t: t[0])
        self._by_source = by_source

    def component(self, grade) -> Presentation:
        g = self.pog.normalize(as_rat(grade))
        return self.components.get(g, Presentation.free(0))

    def dim(self, grade) -> int:
        return self.component(grade).n_gens

    def action(self, rho, grade) -> list[list[int]]:
        """Matrix of the shift by rho out of the given grade.

        Resolution composes stored steps along the first decomposition found
        in sorted order, which makes the answer deterministic.  A shift whose
        target component is absent is the zero map.  A shift with a present
        target but no chain of stored steps is underdetermined and raises.
        """
        rho = self.shift_pog.check_element(as_rat(rho))
        if not self.shift_pog.cone_contains(rho):
            raise ModuleError(f"{rho} is not in the positive cone")
        g = self.pog.normalize(as_rat(grade))
        n = self.dim(g)
        if rho == 0:
            return identity(n)
        tgt = self.pog.normalize(g + rho)
        if n == 0:
            return zeros(self.dim(tgt), 0)
        if tgt not in self.components:
            return zeros(0, n)
        found = self._resolve(g, rho, {})
        if found is None:
            raise ModuleError(f"no stored chain realizes the shift by {rho} "
                              f"from grade {g}")
        return found

    def _resolve(self, g, rho, memo):
        key = (g, rho)
        if key in memo:
            return memo[key]
        memo[key] = None  # cuts cycles on quotient gradings
        if key in self.steps:
            memo[key] = self.steps[key]
            return memo[key]
        for s, mat in self._by_source.get(g, ()):
            if s >= rho:
                continue
            rest = self._resolve(self.pog.normalize(g + s), rho - s, memo)
            if rest is not None:
                memo[key] = mat_mul(rest, mat)
                return memo[key]
        return memo[key]

    def paths(self, g, max_len: int):
        """All stored-step chains out of g, as (total shift, matrix, trail)."""
        out = []
        stack = [(g, Fraction(0), identity(self.dim(g)), ())]
        while stack:
            cur, total, mat, trail = stack.pop()
            if trail:
                out.append((g, total, mat, trail))
            if len(trail) >= max_len:
                continue
            for s, m in self._by_source.get(cur, ()):
                stack.append((self.pog.normalize(cur + s), total + s,
                              mat_mul(m, mat), trail + ((cur, s),)))
        return out


def module_check(m: GradedModule, samples: int = 25, seed: int = 0,
                 depth: int = 3) -> Report:
    """Verify that the stored action data defines a module.

    Checks relation preservation for every stored step, agreement of all
    step chains with equal endpoints up to the given length, and sampled
    composite factorizations through the deterministic resolver.  Maps are
    compared in the target presentation, not entrywise.
    """
    rep = Report("graded module check")

    bad = None
    for (g, rho), mat in sorted(m.steps.items()):
        tgt = m.component(m.pog.normalize(g + rho))
        for idx, rel in enumerate(m.component(g).relations):
            image = mat_vec(mat, list(rel))
            if not in_span(tgt.relation_columns(), image):
                bad = f"step ({g}, {rho}) breaks relation {idx}"
                break
        if bad:
            break
    rep.add("relations preserved by steps", bad is None, bad or "")

    conflict = None
    grouped: dict[tuple[Fraction, Fraction], list] = {}
    for g in m.support:
        for start, total, mat, trail in m.paths(g, depth):
            grouped.setdefault((start, total), []).append((mat, trail))
    for (start, total), entries in sorted(grouped.items()):
        tgt = m.component(m.pog.normalize(start + total))
        first_mat, first_trail = entries[0]
        for mat, trail in entries[1:]:
            if not tgt.maps_equal(first_mat, mat):
                conflict = (f"chains {list(first_trail)} and {list(trail)} "
                            f"from {start} disagree at shift {total}")
                break
        if conflict:
            break
    rep.add("chains with equal endpoints agree", conflict is None, conflict or "")

    mismatch = None
    rng = random.Random(seed)
    flat = sorted(m.steps)
    for _ in range(samples):
        if not flat or mismatch:
            break
        g, s = flat[rng.randrange(len(flat))]
        total, cur = s, m.pog.normalize(g + s)
        hops = rng.randrange(0, depth)
        for _ in range(hops):
            opts = m._by_source.get(cur, ())
            if not opts:
                break
            s2, _ = opts[rng.randrange(len(opts))]
            total, cur = total + s2, m.pog.normalize(cur + s2)
        try:
            whole = m.action(total, g)
        except ModuleError:
            continue  # gap in the support window, nothing to compare
        split = rng.choice([t for t in _splits(total, m, g)] or [None])
        if split is None:
            continue
        a, b = split
        try:
            step_b = m.action(b, m.pog.normalize(g + a))
            step_a = m.action(a, g)
        except ModuleError:
            continue
        lhs = mat_mul(step_b, step_a)
        tgt = m.component(m.pog.normalize(g + total))
        if not tgt.maps_equal(lhs, whole):
            mismatch = f"action({total}) from {g} differs from the {a} + {b} split"
    rep.add("sampled composites factor", mismatch is None, mismatch or "")

    ident = all(m.action(0, g) == identity(m.dim(g)) for g in m.support)
    rep.add("zero shift is the identity", ident)
    return rep


def _splits(total, m, g):
    """Two-part splittings of a shift realized by stored step sizes."""
    seen = []
    for (h, s) in m.steps:
        if h == g and 0 < s < total:
            seen.append((s, total - s))
    return seen


def restrict(m: GradedModule, sub: Pog) -> GradedModule:
    """Keep the grades lying in a sub pog.

    A cone action of the sub pog remains well defined: shifts between
    surviving grades resolve through the original module even when the
    intermediate grades leave the sublattice.  The resolved matrices for
    neighbouring surviving grades are stored as the new steps; composites
    whose original chain is underdetermined stay underdetermined.
    """
    if sub == m.pog:
        return GradedModule(m.pog, m.components, m.steps)
    if isinstance(m.pog, Quotient):
        if not (isinstance(sub, Quotient) and sub.subgroup == m.pog.subgroup
                and is_subpog(sub.base, m.pog.base)):
            raise InclusionError(f"{sub} is not a sub grading of {m.pog}")
        keep = lambda g: sub.base.contains(g)
    else:
        if not is_subpog(sub, m.pog):
            raise InclusionError(f"{sub} is not included in {m.pog}")
        keep = lambda g: sub.contains(g)
    comps = {g: p for g, p in m.components.items() if keep(g)}
    kept = sorted(comps)
    pairs = []
    if isinstance(m.pog, Quotient):
        for i, g in enumerate(kept):
            rho = kept[(i + 1) % len(kept)] - g
            if rho <= 0:
                rho += sub.period
            pairs.append((g, rho))
    else:
        pairs = [(g, h - g) for g, h in zip(kept, kept[1:])]
    steps = {}
    for g, rho in pairs:
        try:
            steps[(g, rho)] = m.action(rho, g)
        except ModuleError:
            continue
    return GradedModule(sub, comps, steps)


def equivariantize(m: GradedModule, p0: ZScaled,
                   identifications: dict) -> GradedModule:
    """Collapse the grading to cosets of a subgroup lattice.

    ``identifications[g]`` must be a unimodular matrix identifying
    ``component(g)`` with ``component(g + period)``.  Support must cover
    each coset without gaps so the identifications chain; every grade of a
    coset is then transported to its least representative, and transported
    steps from different representatives have to agree.
    """
    if isinstance(m.pog, Quotient):
        # collapsing further: the new subgroup must contain the old one
        if not is_subpog(m.pog.subgroup, p0):
            raise InclusionError(f"{p0} does not contain {m.pog.subgroup}")
        base = m.pog.base
    else:
        base = m.pog
    if not is_subpog(p0, base):
        raise InclusionError(f"{p0} is not a subgroup lattice of {base}")
    period = Fraction(1, p0.n)
    qpog = Quotient(base, p0)

    ident = {}
    for g, mat in identifications.items():
        ident[m.pog.check_element(as_rat(g))] = [list(r) for r in mat]

    cosets: dict[Fraction, list[Fraction]] = {}
    for g in m.support:
        cosets.setdefault(qpog.normalize(g), []).append(g)

    psi: dict[Fraction, list[list[int]]] = {}
    for rep_grade, members in sorted(cosets.items()):
        members.sort()
        base = members[0]
        psi[base] = identity(m.dim(base))
        for prev, cur in zip(members, members[1:]):
            if cur - prev != period:
                raise ModuleError(f"support gap inside the coset of {rep_grade}: "
                                  f"{prev} then {cur}")
            if prev not in ident:
                raise ModuleError(f"missing periodicity identification at {prev}")
            step = ident[prev]
            rows, cols = shape(step)
            if (rows, cols) != (m.dim(cur), m.dim(prev)):
                raise ModuleError(f"identification at {prev} has shape "
                                  f"{(rows, cols)}, expected "
                                  f"{(m.dim(cur), m.dim(prev))}")
            src_rel = m.component(prev).relation_columns()
            tgt_rel = m.component(cur).relation_columns()
            if not span_contains(tgt_rel, [mat_vec(step, c) for c in src_rel]):
                raise ModuleError(f"identification at {prev} does not preserve "
                                  "relations")
            inv = int_inverse(step)
            if inv is None:
                raise ModuleError(f"identification at {prev} is not unimodular")
            psi[cur] = mat_mul(psi[prev], inv)

    comps = {}
    for rep_grade, members in cosets.items():
        comps[rep_grade] = m.components[members[0]]

    steps: dict[tuple[Fraction, Fraction], list[list[int]]] = {}
    for (g, s), mat in sorted(m.steps.items()):
        tgt = m.pog.normalize(g + s)
        induced = mat_mul(psi[tgt], mat_mul(mat, int_inverse(psi[g])))
        key = (qpog.normalize(g), s)
        if key in steps:
            pres = comps[qpog.normalize(tgt)]
            if not pres.maps_equal(steps[key], induced):
                raise ModuleError(f"steps over the coset of {key[0]} disagree "
                                  f"at shift {s}")
        else:
            steps[key] = induced
    return GradedModule(qpog, comps, steps)


def tensor(m: GradedModule, n: GradedModule, window) -> GradedModule:
    """Convolution tensor product, truncated to the given grade window.

    Grade g collects pairs of grades summing to g; balancing relations
    identify routing a shift through either factor, so the action may be
    pushed through the left factor and fall back to the right one.
    """
    if m.pog != n.pog:
        raise ModuleError("tensor factors must share a grading")
    pog = m.pog
    window = [pog.check_element(as_rat(g)) for g in window]

    pairs: dict[Fraction, list[tuple[Fraction, Fraction]]] = {}
    for g in window:
        ps = [(a, b) for a in m.support for b in n.support
              if pog.normalize(a + b) == g]
        if ps:
            pairs[g] = sorted(ps)

    def slot(g, a, b, i, j):
        # flat index of e_i (x) e_j inside the (a, b) summand at grade g
        off = 0
        for (x, y) in pairs[g]:
            if (x, y) == (a, b):
                return off + i * n.dim(b) + j
            off += m.dim(x) * n.dim(y)
        raise ModuleError("pair outside the window")

    shifts = sorted({s for (_, s) in m.steps} | {s for (_, s) in n.steps})

    comps = {}
    for g, ps in pairs.items():
        total = sum(m.dim(a) * n.dim(b) for a, b in ps)
        rels = []
        for (a, b) in ps:
            for rel in m.component(a).relations:
                for j in range(n.dim(b)):
                    col = [0] * total
                    for i in range(m.dim(a)):
                        col[slot(g, a, b, i, j)] = rel[i]
                    rels.append(tuple(col))
            for rel in n.component(b).relations:
                for i in range(m.dim(a)):
                    col = [0] * total
                    for j in range(n.dim(b)):
                        col[slot(g, a, b, i, j)] = rel[j]
                    rels.append(tuple(col))
        # balancing: pushing a shift through either factor is the same map
        for s in shifts:
            for a in m.support:
                for b2 in n.support:
                    if pog.normalize(a + b2 + s) != g:
                        continue
                    a2, b = pog.normalize(a + s), pog.normalize(b2 + s)
                    left_in = (a2, b2) in ps
                    right_in = (a, b) in ps
                    if not left_in and not right_in:
                        continue
                    try:
                        left = m.action(s, a) if left_in else None
                        right = n.action(s, b2) if right_in else None
                    except ModuleError:
                        continue
                    for i in range(m.dim(a)):
                        for j in range(n.dim(b2)):
                            col = [0] * total
                            if left_in:
                                for i2 in range(m.dim(a2)):
                                    col[slot(g, a2, b2, i2, j)] += left[i2][i]
                            if right_in:
                                for j2 in range(n.dim(b)):
                                    col[slot(g, a, b, i, j2)] -= right[j2][j]
                            if any(col):
                                rels.append(tuple(col))
        comps[g] = Presentation(total, tuple(rels))

    steps = {}
    for g, ps in pairs.items():
        for s in shifts:
            tgt = pog.normalize(g + s)
            if tgt not in pairs:
                continue
            mat = zeros(comps[tgt].n_gens, comps[g].n_gens)
            defined = comps[tgt].n_gens > 0 and comps[g].n_gens > 0
            for (a, b) in ps if defined else ():
                a2, b2 = pog.normalize(a + s), pog.normalize(b + s)
                try:
                    if (a2, b) in pairs[tgt]:
                        left = m.action(s, a)
                        for i in range(m.dim(a)):
                            for j in range(n.dim(b)):
                                src = slot(g, a, b, i, j)
                                for i2 in range(m.dim(a2)):
                                    mat[slot(tgt, a2, b, i2, j)][src] += left[i2][i]
                    elif (a, b2) in pairs[tgt]:
                        right = n.action(s, b)
                        for i in range(m.dim(a)):
                            for j in range(n.dim(b)):
                                src = slot(g, a, b, i, j)
                                for j2 in range(n.dim(b2)):
                                    mat[slot(tgt, a, b2, i, j2)][src] += right[j2][j]
                    # pairs with no route inside the window map to zero
                except ModuleError:
                    defined = False
                    break
            if defined and any(any(row) for row in mat):
                steps[(g, s)] = mat
    return GradedModule(pog, comps, steps)


def free_line(n: int, upto) -> GradedModule:
    """Rank one free module in each lattice grade from 0 up to a bound."""
    pog = ZScaled(n)
    upto = as_rat(upto)
    grades = []
    g = Fraction(0)
    while g <= upto:
        grades.append(g)
        g += Fraction(1, n)
    comps = {g: Presentation.free(1) for g in grades}
    steps = {(g, Fraction(1, n)): [[1]] for g in grades[:-1]}
    return GradedModule(pog, comps, steps)


def ideal_quotient_ranks(m: GradedModule, k) -> dict[Fraction, AbGroup]:
    """Grade components of the quotient by shifts of size at least k."""
    if not m.pog.ordered:
        raise ModuleError("ideal quotients need an ordered grading")
    k = as_rat(k)
    out = {}
    for g in m.support:
        cols = m.component(g).relation_columns()
        for h in m.support:
            rho = g - h
            if rho >= k:
                try:
                    img = m.action(rho, h)
                except ModuleError:
                    continue
                cols.extend(transpose(img) if img else [])
        n_gens = m.dim(g)
        if cols:
            out[g] = cokernel(transpose(cols)) if n_gens else AbGroup(0)
        else:
            out[g] = AbGroup(n_gens)
    return out


# ---------------------------------------------------------------------------
# persistence modules and limit-dense completion


class PersistenceModule:
    """Finite-type persistence module on an ordered grading.

    Free components of constant rank between consecutive critical grades,
    with an integer transition matrix crossing each one.  Values are right
    continuous: the rank on ``[c_i, c_{i+1})`` is ``ranks[i + 1]``.  When
    ``initial_known`` is false the germ below the first critical grade is
    not part of the data and queries there raise.
    """

    def __init__(self, pog: Pog, critical, ranks, maps,
                 initial_known: bool = True):
        if not pog.ordered:
            raise ModuleError("persistence needs an ordered grading")
        self.pog = pog
        self.critical = tuple(pog.check_element(as_rat(c)) for c in critical)
        if list(self.critical) != sorted(set(self.critical)):
            raise ModuleError("critical grades must be strictly increasing")
        self.ranks = tuple(int(r) for r in ranks)
        if len(self.ranks) != len(self.critical) + 1:
            raise ModuleError(f"need {len(self.critical) + 1} ranks, "
                              f"got {len(self.ranks)}")
        if any(r < 0 for r in self.ranks):
            raise ModuleError("ranks must be nonnegative")
        mats = []
        for i, mat in enumerate(maps):
            mat = [list(r) for r in mat]
            want = (self.ranks[i + 1], self.ranks[i])
            rows, cols = shape(mat)
            if 0 in want:
                mat = zeros(*want)
            elif (rows, cols) != want:
                raise ModuleError(f"transition {i} has shape {(rows, cols)}, "
                                  f"expected {want}")
            mats.append(mat)
        if len(mats) != len(self.critical):
            raise ModuleError("one transition matrix per critical grade")
        self.maps = mats
        self.initial_known = bool(initial_known)

    def region(self, a) -> int:
        a = self.pog.check_element(as_rat(a))
        idx = bisect_right(self.critical, a)
        if idx == 0 and not self.initial_known:
            raise ModuleError(f"germ below {self.critical[0] if self.critical else '?'} "
                              "is not determined by the presentation")
        return idx

    def rank_at(self, a) -> int:
        return self.ranks[self.region(a)]

    def value_at(self, a) -> AbGroup:
        return AbGroup(self.rank_at(a))

    def transition(self, a, b) -> list[list[int]]:
        """Matrix of the structure map from grade a up to grade b."""
        a = self.pog.check_element(as_rat(a))
        b = self.pog.check_element(as_rat(b))
        if a > b:
            raise ModuleError(f"transition runs upward, got {a} > {b}")
        i, j = self.region(a), self.region(b)
        mat = identity(self.ranks[i])
        for t in range(i, j):
            mat = mat_mul(self.maps[t], mat)
        return mat


def interval_module(pog: Pog, start, end=None, rank: int = 1) -> PersistenceModule:
    """Free module of the given rank supported on [start, end)."""
    start = as_rat(start)
    if end is None:
        return PersistenceModule(pog, [start], [0, rank], [zeros(rank, 0)])
    end = as_rat(end)
    if end <= start:
        raise ModuleError("interval must be nonempty")
    return PersistenceModule(pog, [start, end], [0, rank, 0],
                             [zeros(rank, 0), zeros(0, rank)])


def complete_persistence(g: PersistenceModule, a) -> AbGroup:
    """Value of the completion at a rational point of the ambient line.

    The completion along a dense or lattice inclusion is the limit over
    grades at or above the query, and the limit is attained at the least
    such grade of the module's own lattice.
    """
    a = as_rat(a)
    if isinstance(g.pog, Rationals):
        b = a
    else:
        b = ceil_to(g.pog, Rationals(), a)
    return g.value_at(b)


def restrict_persistence(f: PersistenceModule, sub: Pog) -> PersistenceModule:
    """Evaluate only on a coarser lattice; criticals move up to the lattice."""
    if not is_subpog(sub, f.pog):
        raise InclusionError(f"{sub} is not included in {f.pog}")
    merged: list[Fraction] = []
    ranks = [f.ranks[0]]
    maps = []
    for i, c in enumerate(f.critical):
        c2 = c if isinstance(sub, Rationals) else ceil_to(sub, f.pog, c)
        if merged and c2 == merged[-1]:
            maps[-1] = mat_mul(f.maps[i], maps[-1])
            ranks[-1] = f.ranks[i + 1]
        else:
            merged.append(c2)
            maps.append(f.maps[i])
            ranks.append(f.ranks[i + 1])
    return PersistenceModule(sub, merged, ranks, maps,
                             initial_known=f.initial_known)


def extend_persistence(g: PersistenceModule, fine: Pog) -> PersistenceModule:
    """Materialize the completion of a lattice module on a finer lattice.

    The completed value at a is the value at the least coarse point at or
    above a, so on the fine lattice each jump moves down by one coarse cell
    and up by one fine cell.
    """
    if isinstance(g.pog, Rationals):
        raise ModuleError("completion of a dense module is itself")
    if not (isinstance(fine, ZScaled) and is_subpog(g.pog, fine)):
        raise InclusionError(f"{g.pog} is not a sublattice of {fine}")
    coarse_step = Fraction(1, g.pog.n)
    fine_step = Fraction(1, fine.n)
    critical = [c - coarse_step + fine_step for c in g.critical]
    return PersistenceModule(fine, critical, g.ranks, g.maps,
                             initial_known=g.initial_known)


def _regions(mods: list[PersistenceModule]):
    """Shared region structure: boundaries plus one sample point per region."""
    bounds = sorted({c for m in mods for c in m.critical})
    if not bounds:
        return bounds, [Fraction(0)]
    samples = [bounds[0] - 1]
    samples.extend(bounds)
    return bounds, samples


def hom_rank(a: PersistenceModule, b: PersistenceModule) -> int:
    """Rank of the group of natural transformations between two modules."""
    if a.pog != b.pog:
        raise ModuleError("hom needs a common grading")
    bounds, samples = _regions([a, b])
    dims = [(a.rank_at(s), b.rank_at(s)) for s in samples]
    offsets, total = [], 0
    for (ra, rb) in dims:
        offsets.append(total)
        total += ra * rb
    if total == 0:
        return 0
    rows: list[list[int]] = []
    for r, c in enumerate(bounds):
        lo, hi = samples[r], samples[r + 1]
        ta = a.transition(lo, hi)
        tb = b.transition(lo, hi)
        ra0, rb0 = dims[r]
        ra1, rb1 = dims[r + 1]
        # naturality: phi_hi . ta = tb . phi_lo, one row per matrix entry
        for i in range(rb1):
            for j in range(ra0):
                row = [0] * total
                for k in range(ra1):
                    row[offsets[r + 1] + i * ra1 + k] += ta[k][j]
                for k in range(rb0):
                    row[offsets[r] + k * ra0 + j] -= tb[i][k]
                rows.append(row)
    if not rows:
        return total
    return len(kernel_basis(rows))


# ---------------------------------------------------------------------------
# truncated completion of the monoid ring


@dataclass(frozen=True)
class TruncatedRing:
    """Arithmetic of the monoid ring modulo exponents at or above the cutoff."""

    pog: Pog
    cutoff: Fraction

    def __post_init__(self):
        if not self.pog.ordered:
            raise CutoffError("completion needs a directed grading")
        if self.cutoff <= 0:
            raise CutoffError(f"cutoff must be positive: {self.cutoff}")

    def element(self, terms) -> NovikovElt:
        return NovikovElt.from_terms(self.pog, terms, self.cutoff)

    def one(self) -> NovikovElt:
        return self.element([(Fraction(0), 1)])

    def monomial(self, e, c: int = 1) -> NovikovElt:
        return self.element([(as_rat(e), c)])

    def monomial_basis(self) -> list[Fraction]:
        if not isinstance(self.pog, ZScaled):
            raise CutoffError("monomial rank is finite only over a lattice")
        out = []
        e = Fraction(0)
        while e < self.cutoff:
            out.append(e)
            e += Fraction(1, self.pog.n)
        return out

    def rank(self) -> int:
        return len(self.monomial_basis())


def ring_completion(p: Pog, cutoff) -> TruncatedRing:
    return TruncatedRing(p, as_rat(cutoff))
