"""Quotients, twisted complexes, bounding cochains and localization.

Quotients by a full subcategory are presented by bar words: a morphism
from X to Y is either a plain generator or a chain routed through marked
objects, each inner factor shifted down by one.  The structure maps act
by collapsing a consecutive stretch of letters with an operation of the
base category, the empty stretch standing for a curvature insertion at
an inner junction.  Word length is truncated explicitly; operations that
would leave the window are counted and sampled rather than silently
forgotten.

Twisted complexes are finite shifted sums with a triangular connection.
Their operations conjugate the base ones by the shifts, which over the
integers costs the sign

    (-1)^(k(0) + sum_a k(a) (|y_a| - 1) + k(m) (|out| - 1))

per application, where k(a) is the shift of the slot reached after the
a-th letter of the expanded composition.  This is the unique dressing
compatible with strict units for which a single shifted object is an
identical copy of its base object.

Bounding cochains deform the connection of a single object until the
curvature dies; mod two they are found stratum by stratum in the weight
filtration, where each new stratum enters linearly.  Localization glues
in cones over the chosen morphisms and then quotients them away.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from .cainf import (CAinf, CAinfError, CAinfFunctor, Elt, F0, Key,
                    ModuleData, check_cainf, check_functor, fmt_chain,
                    fmt_elt, fmt_key, functor_curvature, relation_residual,
                    restrict_objects)
from .report import Report

__all__ = [
    "QuotientCategory", "TwObject", "bounding_cochains", "check_quotient",
    "check_quotient_functor", "cone", "embed", "induced_quotient_functor",
    "localize", "localize_module", "mc_residual", "quotient", "twisted",
]


def word_name(letters: tuple[Key, ...]) -> str:
    """Canonical generator name of a bar word.

    Plain words keep the base name, so a quotient by nothing reproduces
    the base tables verbatim.  Inner letters carry their target, which
    pins down the routing when several marked objects share names.
    """
    if len(letters) == 1:
        return letters[0][2]
    bits = [f"{k[2]}>{k[1]}" for k in letters[:-1]]
    bits.append(letters[-1][2])
    return "|".join(bits)


def _bar_sign(cat: CAinf, letters) -> int:
    if cat.coeff == "f2":
        return 1
    s = sum(cat.degree(k) - 1 for k in letters)
    return -1 if s % 2 else 1


def _add(acc: dict, spot, coeff) -> None:
    val = acc.get(spot, 0) + coeff
    if val:
        acc[spot] = val
    else:
        acc.pop(spot, None)


class QuotientCategory(CAinf):
    """A quotient presentation, with its word book-keeping attached.

    ``base`` and ``sub`` record what was collapsed, ``words`` maps each
    generator key back to its letters, ``include`` is the strict functor
    from the base, and ``dropped`` samples the operations that fell out
    of the length window.
    """

    base: CAinf
    sub: tuple[str, ...]
    lmax: int
    words: dict[Key, tuple[Key, ...]]
    dropped: list[str]
    include: CAinfFunctor


def _bar_words(cat: CAinf, sub, x: str, y: str, lmax: int):
    """All letter chains from x to y routed through sub, most p = lmax
    inner stops, total weight below the cutoff."""
    out = []

    def rec(prefix, at, stops):
        tails = cat.hom_keys(at, y)
        for k in tails:
            word = tuple(prefix) + (k,)
            if sum((cat.weight(g) for g in word), F0) < cat.cutoff:
                out.append(word)
        if stops == lmax:
            return
        for a in sub:
            for k in cat.hom_keys(at, a):
                rec(prefix + [k], a, stops + 1)

    rec([], x, 0)
    return out


def _chains_over(gens, objects, d):
    """Composable d-tuples over a raw generator table."""
    by_src: dict[str, list[Key]] = {}
    for (x, y), table in sorted(gens.items()):
        by_src.setdefault(x, []).extend((x, y, n) for n in table)

    def rec(prefix, at):
        if len(prefix) == d:
            yield tuple(prefix)
            return
        for key in by_src.get(at, []):
            yield from rec(prefix + [key], key[1])

    for x in objects:
        yield from rec([], x)


def quotient(cat: CAinf, sub, lmax: int, *, name: str | None = None
             ) -> QuotientCategory:
    """Collapse a finite full subcategory, words of at most lmax stops.

    The curvature is untouched.  Structure maps collapse a stretch that
    starts in the first argument, crosses every junction and ends in the
    last one; with one argument the empty stretch inserts the curvature
    of an inner stop.  Output words longer than the window are dropped
    and reported through ``dropped``.
    """
    sub = tuple(dict.fromkeys(sub))
    for a in sub:
        if a not in cat.objects:
            raise CAinfError(f"cannot collapse {a}: not an object")
    if lmax < 0:
        raise CAinfError("the word window cannot be negative")

    words: dict[Key, tuple[Key, ...]] = {}
    gens_q: dict[tuple[str, str], dict[str, tuple[int, Fraction]]] = {}
    for x in cat.objects:
        for y in cat.objects:
            table = {}
            for letters in _bar_words(cat, sub, x, y, lmax):
                deg = sum(cat.degree(k) for k in letters) - (len(letters) - 1)
                wt = sum((cat.weight(k) for k in letters), F0)
                key = (x, y, word_name(letters))
                words[key] = letters
                table[key[2]] = (deg, wt)
            if table:
                gens_q[(x, y)] = table

    dropped: list[str] = []
    lost = 0
    max_d = max(cat.mu, default=0)
    mu_q: dict[int, dict] = {d: {} for d in range(1, max_d + 1)}

    def push(d, chain, head, inner: Elt, tail, sign):
        nonlocal lost
        for (g, s), c in inner.items():
            new = head + (g,) + tail
            if len(new) - 1 > lmax:
                lost += 1
                if len(dropped) < 5:
                    dropped.append(
                        f"arity {d} at {fmt_chain(chain)}: word of "
                        f"{len(new)} letters over the window")
                continue
            wkey = (new[0][0], new[-1][1], word_name(new))
            if wkey not in words:
                continue  # over the weight cutoff, hence zero
            _add(mu_q[d].setdefault(tuple(chain), {}), (wkey, s), sign * c)

    for d in range(1, max_d + 1):
        for chain in _chains_over(gens_q, cat.objects, d):
            parts = [words[k] for k in chain]
            first, last = parts[0], parts[-1]
            mid = tuple(itertools.chain.from_iterable(parts[1:-1]))
            for h in range(len(first) - 1, -1, -1):
                head = first[:h]
                sign = _bar_sign(cat, head)
                if d == 1:
                    for j in range(h - 1, len(first)):
                        stretch = first[h:j + 1]
                        tail = first[j + 1:]
                        if stretch:
                            inner = cat.mu.get(len(stretch), {}).get(stretch)
                            if inner:
                                push(d, chain, head, inner, tail, sign)
                        elif h > 0 and j == h - 1 and tail:
                            inner = cat.curvature(first[h - 1][1])
                            if inner:
                                push(d, chain, head, inner, tail, sign)
                else:
                    for t in range(len(last) - 1, -1, -1):
                        stretch = first[h:] + mid + last[:len(last) - t]
                        tail = last[len(last) - t:]
                        inner = cat.mu.get(len(stretch), {}).get(stretch)
                        if inner:
                            push(d, chain, head, inner, tail, sign)

    out = QuotientCategory(
        cat.objects, gens_q, dict(cat.units), mu0=dict(cat.mu0),
        mu={d: t for d, t in mu_q.items() if t}, cutoff=cat.cutoff,
        eps=cat.eps, coeff=cat.coeff,
        name=name or f"{cat.name}/{{{','.join(sub)}}}")
    out.base = cat
    out.sub = sub
    out.lmax = lmax
    out.words = words
    out.lost = lost
    if lost > len(dropped):
        dropped.append(f"{lost - len(dropped)} further operations dropped")
    out.dropped = dropped

    phi1 = {}
    for (x, y), table in cat.gens.items():
        for n in table:
            phi1[((x, y, n),)] = {((x, y, n), F0): 1}
    out.include = CAinfFunctor(cat, out, {x: x for x in cat.objects},
                               {1: phi1}, name=f"{cat.name} -> {out.name}")
    return out


def check_quotient(q: QuotientCategory, d_max: int = 3,
                   max_tuples: int = 20000) -> Report:
    """Structural checks of a quotient, aware of its word window.

    Grading, curvature and units are checked as for any category.  The
    relation sweep covers the certified tuples, those short enough that
    every composite in the relation stays inside the window; outside of
    it the truncation itself is what breaks the relation, and that is
    reported as a count instead.
    """
    shallow = check_cainf(q, d_max=0, max_tuples=max_tuples)
    rep = Report(f"quotient data of {q.name}")
    rep.items.extend(shallow.items[:3])

    # curvature insertions lengthen a word by one per collapse, so they
    # eat into the certified budget when a collapsed object is curved
    slack = 2 if any(q.base.mu0.get(a) for a in q.sub) else 0
    budget = q.lmax + 1 - slack
    broken = None
    seen = 0
    skipped = 0
    ran_out = False
    for d in range(d_max + 1):
        if d == 0:
            if 1 > budget:
                skipped += len(q.objects)
                continue
            for x in q.objects:
                seen += 1
                residual = q.eval([q.curvature(x)])
                if residual:
                    broken = f"d=0 at {x}: residual {fmt_elt(residual)}"
                    break
        else:
            for chain in q.chains(d):
                if seen >= max_tuples:
                    ran_out = True
                    break
                if sum(len(q.words[k]) for k in chain) > budget:
                    skipped += 1
                    continue
                seen += 1
                residual = relation_residual(q, chain)
                if residual:
                    broken = (f"d={d} at {fmt_chain(chain)}: "
                              f"residual {fmt_elt(residual)}")
                    break
        if broken or ran_out:
            break
    label = (f"the curved relation holds on the certified window "
             f"through arity {d_max}")
    if broken:
        rep.add(label, False, broken)
    elif ran_out:
        rep.add(label, None, f"stopped after {seen} tuples")
    else:
        rep.add(label, True,
                f"{seen} tuples checked, {skipped} beyond the window")

    rep.add("word-length truncation", True,
            f"{q.lost} operations dropped" if q.lost else "nothing dropped")
    return rep


def induced_quotient_functor(fun: CAinfFunctor, qsrc: QuotientCategory,
                             qdst: QuotientCategory, *,
                             name: str | None = None) -> CAinfFunctor:
    """Push a strict functor through two quotient presentations.

    Each argument word is concatenated and regrouped into consecutive
    stretches whose inner boundaries avoid the junctions between
    arguments; every stretch maps through the original functor and the
    images line up into a word of the target quotient.  Collapsed
    objects must land on collapsed objects.
    """
    if fun.phi0:
        raise CAinfError("only strict functors descend to quotients")
    if fun.src is not qsrc.base and fun.src != qsrc.base:
        raise CAinfError("functor and quotient source do not match")
    if fun.tgt is not qdst.base and fun.tgt != qdst.base:
        raise CAinfError("functor and quotient target do not match")
    for a in qsrc.sub:
        if fun.obj_map[a] not in qdst.sub:
            raise CAinfError(
                f"{a} is collapsed but its image {fun.obj_map[a]} is not")

    max_phi = max(fun.phi, default=1)
    letter_cap = (qdst.lmax + 1) * max_phi
    phi_q: dict[int, dict] = {}

    for d in range(1, letter_cap + 1):
        table: dict = {}
        for chain in qsrc.chains(d):
            parts = [qsrc.words[k] for k in chain]
            letters = tuple(itertools.chain.from_iterable(parts))
            if len(letters) > letter_cap:
                continue
            junctions = set(itertools.accumulate(len(p) for p in parts[:-1]))
            acc: Elt = {}
            for cuts in _groupings(len(letters), junctions, max_phi):
                factors = []
                start = 0
                for stop in cuts:
                    piece = fun.apply(letters[start:stop])
                    if not piece:
                        factors = None
                        break
                    factors.append(list(piece.items()))
                    start = stop
                if factors is None:
                    continue
                for combo in itertools.product(*factors):
                    img = tuple(term[0] for term, _ in combo)
                    if len(img) - 1 > qdst.lmax:
                        continue
                    wkey = (img[0][0], img[-1][1], word_name(img))
                    if wkey not in qdst.words:
                        continue
                    shift = sum((term[1] for term, _ in combo), F0)
                    coeff = 1
                    for _, c in combo:
                        coeff *= c
                    _add(acc, (wkey, shift), coeff)
            acc = qdst.clean(acc)
            if acc:
                table[chain] = acc
        if table:
            phi_q[d] = table

    return CAinfFunctor(qsrc, qdst, dict(fun.obj_map), phi_q,
                        name=name or f"{fun.name} on quotients")


def check_quotient_functor(fun: CAinfFunctor, d_max: int = 2) -> Report:
    """Functor checks between quotients, aware of both word windows.

    Shape and unit checks run as for any functor.  The relation sweep
    keeps the certified tuples, short enough that no composite on
    either side of the relation can fall off a window; residuals at
    longer tuples are truncation shadows and only counted.
    """
    qsrc, qdst = fun.src, fun.tgt
    if not isinstance(qsrc, QuotientCategory) \
            or not isinstance(qdst, QuotientCategory):
        raise CAinfError("both ends must be quotient presentations")
    rep = Report(f"induced functor data of {fun.name}")
    rep.items.extend(check_functor(fun).items)

    slack_src = 2 if any(qsrc.base.mu0.get(a) for a in qsrc.sub) else 0
    slack_dst = 2 if any(qdst.base.mu0.get(a) for a in qdst.sub) else 0
    budget = min(qsrc.lmax + 1 - slack_src, qdst.lmax + 1 - slack_dst)
    residuals = functor_curvature(fun, d_max)
    broken = None
    skipped = 0
    for d in sorted(residuals):
        for chain, elt in sorted(residuals[d].items()):
            if d and sum(len(qsrc.words[k]) for k in chain) > budget:
                skipped += 1
                continue
            broken = f"d={d} at {fmt_chain(chain)}: residual {fmt_elt(elt)}"
            break
        if broken:
            break
    label = (f"the functor relations hold on the certified window "
             f"through arity {d_max}")
    detail = f"{skipped} residuals beyond the window" if skipped else ""
    rep.add(label, broken is None, broken or detail)
    return rep


def _groupings(total, junctions, width):
    """Cut points 0 < c_1 < ... < c_r = total avoiding the junctions,
    no group wider than width."""
    def rec(at, cuts):
        if at == total:
            yield tuple(cuts)
            return
        for step in range(1, min(width, total - at) + 1):
            stop = at + step
            if stop != total and stop in junctions:
                continue
            cuts.append(stop)
            yield from rec(stop, cuts)
            cuts.pop()

    yield from rec(0, [])


# -- localization of modules -------------------------------------------


def localize_module(mod: ModuleData, q: QuotientCategory, *,
                    name: str | None = None) -> ModuleData:
    """Extend a module along a quotient presentation.

    The new value at X stacks the old one with chains routed through
    the collapsed objects that end in an old value; the structure maps
    collapse stretches exactly as in the quotient, with the terminal
    stretch handed to the old module action.
    """
    cat = q.base
    if mod.cat is not cat and mod.cat != cat:
        raise CAinfError("module and quotient base do not match")

    values: dict[str, dict[str, tuple[int, Fraction]]] = {}
    vwords: dict[tuple[str, str], tuple[tuple[Key, ...], str]] = {}
    for x in cat.objects:
        table = {}

        def keep(letters, at):
            for vn, (vd, vw) in mod.values.get(at, {}).items():
                deg = sum(cat.degree(k) - 1 for k in letters) + vd
                wt = sum((cat.weight(k) for k in letters), F0) + vw
                if wt >= cat.cutoff:
                    continue
                vname = vn if not letters else "|".join(
                    [f"{k[2]}>{k[1]}" for k in letters] + [vn])
                table[vname] = (deg, wt)
                vwords[(x, vname)] = (tuple(letters), vn)

        def rec(prefix, at, stops):
            keep(prefix, at)
            if stops == q.lmax:
                return
            for a in q.sub:
                for k in cat.hom_keys(at, a):
                    rec(prefix + [k], a, stops + 1)

        rec([], x, 0)
        if table:
            values[x] = table

    dropped: list[str] = []
    lost = 0
    max_d = max([0] + [d for d in mod.action] + [d for d in cat.mu])
    action: dict[int, dict] = {d: {} for d in range(max_d + 1)}

    def land(d, spot, head, inner_c: Elt | None, tail, vn, inner_m: Elt | None,
             sign):
        """One collapsed term; either a category stretch inserted before
        the tail, or a module stretch replacing it."""
        nonlocal lost
        acc = action[d].setdefault(spot, {})
        if inner_c is not None:
            for (g, s), c in inner_c.items():
                letters = head + (g,) + tail
                if len(letters) > q.lmax:
                    lost += 1
                    if len(dropped) < 5:
                        dropped.append(
                            f"arity {d}: value word of {len(letters)} "
                            "letters over the window")
                    continue
                vname = "|".join([f"{k[2]}>{k[1]}" for k in letters] + [vn])
                vkey = (letters[0][0], vname)
                if vkey not in vwords:
                    continue
                _add(acc, (vkey, s), sign * c)
        else:
            for ((o, wn), s), c in inner_m.items():
                if head:
                    vname = "|".join([f"{k[2]}>{k[1]}" for k in head] + [wn])
                    at = head[0][0]
                else:
                    vname, at = wn, o
                if (at, vname) not in vwords:
                    continue
                _add(acc, ((at, vname), s), sign * c)
        if not acc:
            action[d].pop(spot, None)

    for x, table in values.items():
        for vname in table:
            yletters, vn = vwords[(x, vname)]
            tail_obj = yletters[-1][1] if yletters else x
            spot = ((), (x, vname))
            q_len = len(yletters)
            # category stretches inside the chain part
            for h in range(q_len):
                sign = _bar_sign(cat, yletters[:h])
                for j in range(h, q_len):
                    stretch = yletters[h:j + 1]
                    inner = cat.mu.get(len(stretch), {}).get(stretch)
                    if inner:
                        land(0, spot, yletters[:h], inner, yletters[j + 1:],
                             vn, None, sign)
            # curvature insertions at inner junctions, including the
            # junction right before the value
            for h in range(1, q_len + 1):
                inner = cat.curvature(yletters[h - 1][1])
                if inner:
                    land(0, spot, yletters[:h], inner, yletters[h:], vn, None,
                         _bar_sign(cat, yletters[:h]))
            # module stretches ending in the value
            for h in range(q_len + 1):
                got = mod.act(yletters[h:], {((tail_obj, vn), F0): 1})
                if got:
                    land(0, spot, yletters[:h], None, None, vn, got,
                         _bar_sign(cat, yletters[:h]))

    for d in range(1, max_d + 1):
        for chain in q.chains(d):
            parts = [q.words[k] for k in chain]
            x_val = chain[-1][1]
            for vname in values.get(x_val, {}):
                yletters, vn = vwords[(x_val, vname)]
                tail_obj = yletters[-1][1] if yletters else x_val
                spot = (chain, (x_val, vname))
                first = parts[0]
                mid = tuple(itertools.chain.from_iterable(parts[1:]))
                for h in range(len(first)):
                    head = first[:h]
                    sign = _bar_sign(cat, head)
                    body = first[h:] + mid
                    # stretch crosses into the chain part of the value
                    for j in range(len(yletters)):
                        stretch = body + yletters[:j + 1]
                        inner = cat.mu.get(len(stretch), {}).get(stretch)
                        if inner:
                            land(d, spot, head, inner, yletters[j + 1:], vn,
                                 None, sign)
                    # stretch swallows the value through the old action
                    got = mod.act(body + yletters, {((tail_obj, vn), F0): 1})
                    if got:
                        land(d, spot, head, None, None, vn, got, sign)

    out = ModuleData(q, values, {d: t for d, t in action.items() if t},
                     name=name or f"{mod.name} localized")
    out.lost = lost
    if lost > len(dropped):
        dropped.append(f"{lost - len(dropped)} further terms dropped")
    out.dropped = dropped
    return out


# -- twisted complexes -------------------------------------------------


class TwObject:
    """A finite shifted sum with a triangular connection.

    ``entries`` lists (object, shift) pairs; ``delta`` maps slot pairs
    (i, j) with i <= j to elements of hom(X_i, X_j).  Validation happens
    when the object enters a category, where the cutoff and the weight
    threshold live.
    """

    def __init__(self, entries, delta=None, name: str | None = None):
        self.entries = tuple((str(x), int(k)) for x, k in entries)
        if not self.entries:
            raise CAinfError("a twisted object needs at least one entry")
        norm: dict[tuple[int, int], Elt] = {}
        for (i, j), val in (delta or {}).items():
            if isinstance(val, tuple):
                val = {(val, F0): 1}
            if val:
                norm[(int(i), int(j))] = dict(val)
        self.delta = norm
        if name is None:
            bits = "+".join(f"{x}[{k}]" for x, k in self.entries)
            conn = ";".join(f"{i}{j}:{fmt_elt(e)}"
                            for (i, j), e in sorted(self.delta.items()))
            name = bits if not conn else f"{bits};{conn}"
        self.name = name

    def __repr__(self):
        return f"TwObject({self.name})"


def embed(x: str, shift: int = 0, name: str | None = None) -> TwObject:
    return TwObject(((x, shift),), name=name if name is not None
                    else (x if shift == 0 else None))


def cone(m: Elt | Key, name: str | None = None) -> TwObject:
    """The cone over a morphism: source shifted up, connection m."""
    if isinstance(m, tuple):
        m = {(m, F0): 1}
    homs = {(k[0], k[1]) for (k, _s) in m}
    if len(homs) != 1:
        raise CAinfError("a cone needs a morphism in a single hom")
    (x, y), = homs
    return TwObject(((x, 1), (y, 0)), {(0, 1): dict(m)},
                    name=name or f"cone({fmt_elt(m)})")


def twisted(cat: CAinf, objects, *, name: str | None = None) -> CAinf:
    """The category of the given twisted complexes over cat.

    Connections must be triangular, homogeneous of degree one in the
    shifted grading, diagonal entries and the whole Maurer-Cartan
    residual strictly above the weight threshold.
    """
    objs = [o if isinstance(o, TwObject) else TwObject(*o) for o in objects]
    names = [o.name for o in objs]
    if len(set(names)) != len(names):
        raise CAinfError("twisted objects need distinct names")

    deltas: dict[str, list] = {}
    for T in objs:
        letters = []
        for (i, j), elt in sorted(T.delta.items()):
            if not 0 <= i < len(T.entries) or not 0 <= j < len(T.entries):
                raise CAinfError(f"connection of {T.name} leaves the entries")
            if i > j:
                raise CAinfError(f"connection of {T.name} is not triangular")
            xi, ki = T.entries[i]
            xj, kj = T.entries[j]
            elt = cat._clean_elt(elt, (xi, xj))
            for (k, s), c in elt.items():
                if cat.degree(k) != kj - ki + 1:
                    raise CAinfError(
                        f"connection entry {fmt_key(k)} of {T.name} is off "
                        f"degree {kj - ki + 1}")
                if i == j and cat.weight(k) + s < cat.eps:
                    raise CAinfError(
                        f"diagonal connection of {T.name} has weight "
                        f"{cat.weight(k) + s} below {cat.eps}")
                letters.append((i, j, k, s, c))
        deltas[T.name] = letters

    def gname(S: TwObject, T: TwObject, i, j, base) -> str:
        if len(S.entries) == 1 and len(T.entries) == 1:
            return base
        return f"{i}.{j}.{base}"

    by_name = {T.name: T for T in objs}
    gens_t: dict[tuple[str, str], dict[str, tuple[int, Fraction]]] = {}
    info: dict[Key, tuple[int, int, Key]] = {}
    for S in objs:
        for T in objs:
            table = {}
            for i, (xi, ki) in enumerate(S.entries):
                for j, (yj, kj) in enumerate(T.entries):
                    for n, (deg, wt) in cat.gens.get((xi, yj), {}).items():
                        nm = gname(S, T, i, j, n)
                        table[nm] = (deg + ki - kj, wt)
                        info[(S.name, T.name, nm)] = (i, j, (xi, yj, n))
            if table:
                gens_t[(S.name, T.name)] = table

    def slot_shift(T: TwObject, i: int) -> int:
        return T.entries[i][1]

    def dress(path_shifts, letters, out_deg) -> int:
        # path_shifts[a] = shift of the slot after the a-th letter,
        # with the starting slot at index 0
        if cat.coeff == "f2":
            return 1
        s = path_shifts[0] + path_shifts[-1] * (out_deg - 1)
        for a, k in enumerate(letters):
            s += path_shifts[a + 1] * (cat.degree(k) - 1)
        return -1 if s % 2 else 1

    def collapse(seq_objs, args) -> Elt:
        """All dressed collapses of args (Tw generator keys) with
        connection letters of the intermediate objects woven in."""
        S, T = seq_objs[0], seq_objs[-1]
        acc: Elt = {}
        max_d = max(cat.mu, default=0)

        def rec(a, slot0, slot, shifts, letters, extra, coeff, low):
            if low >= cat.cutoff or len(letters) > max_d:
                return
            if a == len(args) and letters:
                inner = cat.mu.get(len(letters), {}).get(tuple(letters))
                if inner:
                    for (g, s), c in inner.items():
                        sgn = dress(shifts, letters, cat.degree(g))
                        nm = gname(S, T, slot0, slot, g[2])
                        okey = (S.name, T.name, nm)
                        _add(acc, (okey, extra + s), sgn * coeff * c)
            for (u, v, k, s, c) in deltas[seq_objs[a].name]:
                if slot is not None and u != slot:
                    continue
                sh0 = [slot_shift(seq_objs[a], u)] if slot is None else []
                rec(a, slot0 if slot is not None else u, v,
                    shifts + sh0 + [slot_shift(seq_objs[a], v)],
                    letters + [k], extra + s, coeff * c,
                    low + cat.weight(k) + s)
            if a < len(args):
                i, j, base = info[args[a]]
                if slot is not None and i != slot:
                    return
                sh0 = [slot_shift(seq_objs[a], i)] if slot is None else []
                rec(a + 1, slot0 if slot is not None else i, j,
                    shifts + sh0 + [slot_shift(seq_objs[a + 1], j)],
                    letters + [base], extra, coeff,
                    low + cat.weight(base))

        rec(0, None, None, [], [], F0, 1, F0)
        return acc

    mu0_t: dict[str, Elt] = {}
    for T in objs:
        acc: Elt = {}
        for i, (xi, ki) in enumerate(T.entries):
            for (g, s), c in cat.curvature(xi).items():
                sgn = 1
                if cat.coeff == "z" and (ki * cat.degree(g)) % 2:
                    sgn = -1
                nm = gname(T, T, i, i, g[2])
                _add(acc, ((T.name, T.name, nm), s), sgn * c)
        for (okey, s), c in collapse([T, T], ()).items():
            _add(acc, (okey, s), c)
        for (okey, s), c in list(acc.items()):
            i, j, base = info[okey]
            if cat.weight(base) + s < cat.eps:
                raise CAinfError(
                    f"Maurer-Cartan residual of {T.name} has weight "
                    f"{cat.weight(base) + s} below {cat.eps}")
        if acc:
            mu0_t[T.name] = acc

    max_d = max(cat.mu, default=0)
    mu_t: dict[int, dict] = {d: {} for d in range(1, max_d + 1)}
    for d in range(1, max_d + 1):
        for chain in _chains_over(gens_t, [T.name for T in objs], d):
            seq = [by_name[chain[0][0]]] + [by_name[k[1]] for k in chain]
            got = collapse(seq, chain)
            if got:
                mu_t[d][chain] = got

    units_t: dict[str, Elt] = {}
    for T in objs:
        elt: Elt = {}
        for i, (xi, ki) in enumerate(T.entries):
            for ((_, _, n), s), c in cat.unit_elts[xi].items():
                elt[((T.name, T.name, gname(T, T, i, i, n)), s)] = c
        units_t[T.name] = elt

    out = CAinf([T.name for T in objs], gens_t, units_t, mu0=mu0_t,
                mu={d: t for d, t in mu_t.items() if t}, cutoff=cat.cutoff,
                eps=cat.eps, coeff=cat.coeff, name=name or f"tw {cat.name}")
    out.tw_objects = {T.name: T for T in objs}
    out.info = info
    return out


# -- bounding cochains -------------------------------------------------


def mc_residual(cat: CAinf, x: str, b: Elt) -> Elt:
    """Curvature plus the operations on the constant chain with entries
    b, as far as the weight filtration sees them."""
    for (k, _s), _c in b.items():
        if k[0] != x or k[1] != x:
            raise CAinfError(f"{fmt_key(k)} is not an endomorphism of {x}")
    acc: Elt = dict(cat.curvature(x))
    low = cat.min_weight(b)
    if low is not None:
        if low < cat.eps:
            raise CAinfError("a bounding cochain needs weight at least "
                             f"{cat.eps}")
        k = 1
        while k * low < cat.cutoff:
            for spot, c in cat.eval([b] * k).items():
                _add(acc, spot, c)
            k += 1
    return cat.clean(acc)


def _f2_solutions(rows, rhs, nvars, cap=16):
    """All GF(2) solutions of rows . c = rhs; rows are int bitmasks."""
    pivots: dict[int, tuple[int, int]] = {}
    for row, r in zip(rows, rhs):
        while row:
            lead = row.bit_length() - 1
            if lead not in pivots:
                break
            prow, pr = pivots[lead]
            row ^= prow
            r ^= pr
        if row:
            pivots[row.bit_length() - 1] = (row, r)
        elif r:
            return []
    free = [c for c in range(nvars) if c not in pivots]
    if len(free) > cap:
        raise CAinfError("the mod-two search space is too large")
    sols = []
    for bits in itertools.product((0, 1), repeat=len(free)):
        vec = 0
        for c, bit in zip(free, bits):
            if bit:
                vec |= 1 << c
        # leading bits are the highest of their rows, so solving the
        # pivots in increasing order only ever reads settled bits
        for col in sorted(pivots):
            prow, pr = pivots[col]
            val = pr ^ (bin(prow & vec).count("1") & 1)
            if val:
                vec |= 1 << col
        sols.append(vec)
    return sols


def _bc_search(cat: CAinf, x: str, bound: int | None):
    basis = [k for k in cat.hom_keys(x, x)
             if cat.degree(k) == 1 and cat.weight(k) >= cat.eps]
    strata = sorted({cat.weight(k) for k in basis})
    partial: list[frozenset] = [frozenset()]
    for w in strata:
        here = [k for k in basis if cat.weight(k) == w]
        grown = []
        for sol in partial:
            b = {(k, F0): 1 for k in sol}
            res = mc_residual(cat, x, b)
            if any(cat.term_weight(t) < w for t in res):
                continue  # obstructed below the stratum, dead branch
            cols = {}
            for v, k in enumerate(here):
                for spot, _c in cat.eval([k]).items():
                    if cat.term_weight(spot) == w:
                        cols.setdefault(spot, 0)
                        cols[spot] |= 1 << v
            spots = sorted(set(cols) | {t for t in res
                                        if cat.term_weight(t) == w},
                           key=lambda t: (t[0], t[1]))
            rows = [cols.get(t, 0) for t in spots]
            rhs = [res.get(t, 0) % 2 for t in spots]
            for vec in _f2_solutions(rows, rhs, len(here)):
                picked = {here[v] for v in range(len(here)) if vec >> v & 1}
                nxt = sol | picked
                if bound is None or len(nxt) <= bound:
                    grown.append(frozenset(nxt))
        partial = sorted(set(grown), key=sorted)
        if not partial:
            break
    out = []
    for sol in partial:
        b = {(k, F0): 1 for k in sorted(sol)}
        if not mc_residual(cat, x, b):
            out.append(b)
    return out


def bounding_cochains(cat: CAinf, search_cutoff: int | None = None,
                      candidates=None):
    """Find or verify curvature-killing endomorphism deformations.

    Mod two this searches stratum by stratum through the weight
    filtration and returns every solution supported on the degree-one
    basis (at most ``search_cutoff`` generators).  Over the integers
    only supplied ``candidates`` (pairs of object and element) are
    verified; with none given, the zero cochain is tried everywhere.
    Each reported solution is re-verified from scratch, and the flat
    deformed objects come back as a twisted-complex category.
    """
    found: list[tuple[str, Elt]] = []
    if candidates is not None:
        for x, b in candidates:
            if not mc_residual(cat, x, cat.clean(dict(b))):
                found.append((x, cat.clean(dict(b))))
    elif cat.coeff == "f2":
        for x in cat.objects:
            for b in _bc_search(cat, x, search_cutoff):
                found.append((x, b))
    else:
        for x in cat.objects:
            if not mc_residual(cat, x, {}):
                found.append((x, {}))

    checked = [(x, b) for x, b in found if not mc_residual(cat, x, b)]
    window = []
    for idx, (x, b) in enumerate(checked):
        delta = {(0, 0): dict(b)} if b else {}
        window.append(TwObject(((x, 0),), delta, name=f"{x}|b{idx}"))
    return checked, twisted(cat, window, name=f"{cat.name} deformed")


# -- localization ------------------------------------------------------


def localize(cat: CAinf, ms, *, lmax: int, extra=(),
             name: str | None = None) -> CAinf:
    """Invert closed degree-zero morphisms by killing their cones.

    Each morphism must be degree zero with differential above the
    weight threshold.  The result keeps the objects of cat; plain
    generators keep their names, and new generators are words through
    the collapsed cones.
    """
    norm: list[Elt] = []
    for m in ms:
        if isinstance(m, tuple):
            m = {(m, F0): 1}
        m = dict(m)
        homs = {(k[0], k[1]) for (k, _s) in m}
        if len(homs) != 1:
            raise CAinfError("each morphism must live in a single hom")
        for (k, _s), _c in m.items():
            if cat.degree(k) != 0:
                raise CAinfError(f"cannot invert {fmt_key(k)}: degree "
                                 f"{cat.degree(k)}")
        dm = cat.eval([m])
        low = cat.min_weight(dm)
        if low is not None and low < cat.eps:
            raise CAinfError(
                f"cannot invert {fmt_elt(m)}: differential has weight {low}")
        norm.append(m)

    window = [embed(x) for x in cat.objects]
    cones = []
    for idx, m in enumerate(norm):
        c = cone(m, name=f"cone{idx}")
        cones.append(c.name)
        window.append(c)
    window.extend(extra)
    tw = twisted(cat, window)
    q = quotient(tw, cones, lmax)
    out = restrict_objects(q, list(cat.objects),
                           name=name or f"{cat.name} localized")
    out.presentation = q
    return out
