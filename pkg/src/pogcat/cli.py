"""Command line front end over the library verifiers.

Every run reads one self-contained description file, executes a
construction or a check suite, and prints a deterministic report; the
``--json`` flag switches to the machine rendering of the same data.
Exit codes: 0 all checks pass, 1 something failed, 2 for usage or parse
problems, 3 when a window was too small to decide.
"""

from __future__ import annotations

import argparse
import math
import sys
from fractions import Fraction

from .cainf import (CAinf, CAinfError, check_cainf, fmt_elt,
                    hom_stratum_complex)
from .constructions import (bounding_cochains, check_quotient, localize,
                            quotient, twisted)
from .homology import AbGroup
from .modules import (ModuleError, free_line, ideal_quotient_ranks,
                      interval_module, module_check, restrict_persistence,
                      complete_persistence, ring_completion)
from .orbit import (OrbitError, change_of_enrichment, check_enriched, orbit,
                    orbit_pog, orbit_quotient, reconstruct, unorbit_quotient)
from .pog import (PogError, Quotient, Rationals, ZScaled, ceil_to,
                  exhaustion)
from .report import Report
from .scalars import CutoffError, NovikovElt
from .workspace import (ParseError, parse_category, parse_workspace,
                        twist_window)


def _frac(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(
            f"expected a rational like 3/2, got {text!r}") from None


def _group(g: AbGroup) -> str:
    bits = [f"Z^{g.free_rank}"] if g.free_rank else []
    bits += [f"Z/{t}" for t in g.torsion]
    return " + ".join(bits) if bits else "0"


def _hom_notes(cat: CAinf, rep: Report) -> None:
    for (x, y) in sorted(cat.gens):
        table: dict[tuple[int, Fraction], int] = {}
        for _n, (deg, wt) in cat.gens[(x, y)].items():
            table[(deg, wt)] = table.get((deg, wt), 0) + 1
        for (deg, wt) in sorted(table):
            rep.note(f"hom {x}->{y} degree {deg} weight {wt}: "
                     f"rank {table[(deg, wt)]}")


def _obj(o) -> str:
    if isinstance(o, tuple) and len(o) == 2:
        return f"{o[0]}@{o[1]}"
    return str(o)


def _enriched_notes(name, cat, rep: Report) -> None:
    for (x, y) in sorted(cat.homs, key=str):
        mod = cat.homs[(x, y)]
        for g in mod.support:
            rep.note(f"{name}: hom {_obj(x)}->{_obj(y)} grade {g}: "
                     f"rank {mod.dim(g)}")


def _load_cat(args) -> CAinf:
    over = {}
    if getattr(args, "coeff", None):
        over["coeff"] = args.coeff
    if getattr(args, "cutoff", None) is not None:
        over["cutoff"] = args.cutoff
    if getattr(args, "eps", None) is not None:
        over["eps"] = args.eps
    return parse_category(args.file, **over)


def _pick_category(ws, wanted):
    if wanted:
        if wanted not in ws.categories:
            raise ParseError("<args>", 1, 1,
                             f"no category named {wanted!r} in the file")
        return wanted, ws.categories[wanted]
    return ws.sole_category()


# -- subcommands -------------------------------------------------------


def cmd_check(args) -> Report:
    if str(args.file).endswith(".ws"):
        ws = parse_workspace(args.file)
        rep = Report(f"workspace check of {args.file}")
        for name in sorted(ws.categories):
            rep.extend(check_enriched(ws.categories[name]),
                       prefix=f"category {name}: ")
        for name in sorted(ws.modules):
            rep.extend(module_check(ws.modules[name]),
                       prefix=f"module {name}: ")
        for name in sorted(ws.actions):
            rep.extend(ws.actions[name].check(), prefix=f"action {name}: ")
        for name in sorted(ws.categories):
            _enriched_notes(name, ws.categories[name], rep)
        return rep
    cat = _load_cat(args)
    rep = Report(f"curved category check of {args.file}")
    rep.extend(check_cainf(cat, d_max=args.dmax))
    _hom_notes(cat, rep)
    return rep


def cmd_homology(args) -> Report:
    cat = _load_cat(args)
    rep = Report(f"stratum homology of {args.file}")
    top = args.window
    if top is None:
        top = max((wt for t in cat.gens.values() for (_d, wt) in t.values()),
                  default=Fraction(0))
    weights = []
    w = Fraction(0)
    while w <= top:
        weights.append(w)
        w += cat.eps
    for (x, y) in sorted(cat.gens):
        bad = None
        for w in weights:
            try:
                cx = hom_stratum_complex(cat, x, y, w)
            except ValueError as exc:
                bad = f"T^{w}: {exc}"
                break
            for deg in sorted(cx.basis):
                h = cx.homology(deg)
                if not h.is_zero:
                    rep.note(f"H^{deg} hom {x}->{y} @ T^{w}: {_group(h)}")
        rep.add(f"differential squares to zero on hom {x}->{y}",
                bad is None, bad or "")
    return rep


def cmd_orbit(args) -> Report:
    ws = parse_workspace(args.file)
    if args.action not in ws.actions:
        raise ParseError("<args>", 1, 1,
                         f"no action named {args.action!r} in the file")
    act = ws.actions[args.action]
    if args.p0 is not None:
        out = orbit_quotient(act.cat, act, ZScaled(args.p0))
        title = f"orbit of {args.action} over the 1/{args.p0} lattice"
    else:
        if args.window is None:
            raise ParseError("<args>", 1, 1,
                             "orbit needs --p0 or a finite --window")
        grades = [k * act.gen for k in range(args.window + 1)]
        build = orbit_pog if act.kappa is not None else orbit
        out = build(act.cat, act, grades)
        title = f"orbit of {args.action} on a window of {args.window} steps"
    rep = Report(title)
    rep.extend(check_enriched(out))
    _enriched_notes("orbit", out, rep)
    return rep


def cmd_unorbit(args) -> Report:
    ws = parse_workspace(args.file)
    name, cat = _pick_category(ws, args.name)
    out, shift = unorbit_quotient(cat)
    rep = Report(f"unorbit of {name}")
    rep.extend(check_enriched(out))
    rep.note(f"objects: {len(out.objects)} "
             f"({len(cat.objects)} across {len(shift['grades'])} cosets)")
    if shift.get("wraps"):
        rep.note("the translation action wraps around the quotient")
    _enriched_notes("unorbit", out, rep)
    return rep


def cmd_reconstruct(args) -> Report:
    ws = parse_workspace(args.file)
    name, cat = _pick_category(ws, args.name)
    depth = args.depth if args.depth is not None else ws.depth
    if depth is None:
        raise ParseError("<args>", 1, 1,
                         "no depth in the file and no --depth flag")
    rep = Report(f"reconstruction of {name} at depth {depth}")
    rep.extend(reconstruct(cat, depth))
    return rep


def cmd_quotient(args) -> Report:
    cat = _load_cat(args)
    sub = [s for chunk in args.at for s in chunk.split(",") if s]
    q = quotient(cat, sub, args.lmax)
    rep = Report(f"quotient collapsing {', '.join(sub)} at word length "
                 f"{args.lmax}")
    rep.extend(check_quotient(q, d_max=args.dmax))
    _hom_notes(q, rep)
    return rep


def cmd_localize(args) -> Report:
    cat = _load_cat(args)
    names = [s for chunk in args.at for s in chunk.split(",") if s]
    by_name = {n: (x, y, n) for (x, y), t in cat.gens.items() for n in t}
    keys = []
    for n in names:
        if n not in by_name:
            raise ParseError("<args>", 1, 1, f"no generator named {n!r}")
        keys.append(by_name[n])
    loc = localize(cat, keys, lmax=args.lmax)
    rep = Report(f"localization inverting {', '.join(names)} at word "
                 f"length {args.lmax}")
    rep.extend(check_quotient(loc.presentation, d_max=args.dmax))
    _hom_notes(loc, rep)
    if args.window is not None:
        w = Fraction(0)
        while w <= args.window:
            for (x, y) in sorted(loc.gens):
                cx = hom_stratum_complex(loc, x, y, w)
                for deg in sorted(cx.basis):
                    h = cx.homology(deg)
                    if not h.is_zero:
                        rep.note(f"H^{deg} hom {x}->{y} @ T^{w}: "
                                 f"{_group(h)}")
            w += loc.eps
    return rep


def cmd_tw(args) -> Report:
    cat = _load_cat(args)
    twists = getattr(cat, "twists", [])
    t = twisted(cat, twist_window(cat))
    rep = Report(f"twisted complexes over {args.file} "
                 f"({len(twists)} declared)")
    rep.extend(check_cainf(t, d_max=args.dmax))
    _hom_notes(t, rep)
    return rep


def cmd_bc(args) -> Report:
    cat = _load_cat(args)
    sols, bcat = bounding_cochains(cat, search_cutoff=args.search_cutoff)
    rep = Report(f"bounding cochains for {args.file}")
    found: dict[str, list] = {}
    for x, b in sols:
        found.setdefault(x, []).append(b)
    for x in cat.objects:
        if x in found:
            first = found[x][0]
            detail = fmt_elt(first) if first else "the zero cochain"
            if len(found[x]) > 1:
                detail += f" (+{len(found[x]) - 1} more)"
            rep.add(f"object {x} admits a bounding cochain", True, detail)
        else:
            rep.add(f"object {x} admits a bounding cochain", False,
                    "no solution in the search window")
    rep.note(f"deformed flat category objects: {', '.join(bcat.objects)}"
             if bcat.objects else "deformed flat category is empty")
    return rep


def cmd_demo_novikov(args) -> Report:
    n, cutoff = args.n, args.cutoff
    if n < 1:
        raise ParseError("<args>", 1, 1, "the denominator bound must be >= 1")
    if cutoff <= 0:
        raise ParseError("<args>", 1, 1, "the cutoff must be positive")
    rep = Report(f"Novikov completion demo on the 1/{n} grid, cutoff "
                 f"{cutoff}")
    module = free_line(n, cutoff)
    depth = max(1, math.floor(cutoff))
    towers = {}
    for k in range(1, depth + 1):
        got = ideal_quotient_ranks(module, k)
        want = {g: AbGroup(1 if g < k else 0) for g in module.support}
        towers[k] = got
        ok = got == want
        rep.add(f"M/I^{k} matches Z[R]/I^{k} on the 1/{n} grid", ok,
                "" if ok else "rank tables differ")
        for g in sorted(got):
            if not got[g].is_zero:
                rep.note(f"M/I^{k} grade {g}: {_group(got[g])}")
    ring = ring_completion(ZScaled(n), cutoff)
    # truncation is strict at the cutoff, the ambient window inclusive
    limit = sorted(g for g in module.support if g < cutoff)
    stable = all(towers[depth].get(g) == AbGroup(1)
                 for g in limit if g < depth)
    ok = limit == ring.monomial_basis() and stable
    rep.add("the tower limit is the truncated Novikov ring", ok,
            f"rank {ring.rank()} at cutoff {cutoff}")
    for d in range(1, n):
        if n % d:
            continue
        coarse = ideal_quotient_ranks(free_line(d, cutoff), depth)
        fine = towers[depth]
        ok = all(fine.get(g) == grp for g, grp in coarse.items())
        rep.add(f"the 1/{d} subgrid ranks are refined, never contradicted",
                ok, "")
    terms = {}
    bad_m = None
    for m in range(1, n + 3):
        exponent = Fraction(m * m + 1, m)
        terms[exponent] = 1
        if (exponent * n).denominator != 1 and bad_m is None:
            bad_m = m
    rep.add("the divergence witness stays outside the module",
            bad_m is not None,
            f"T^{bad_m}+1/{bad_m} needs denominator {bad_m} > {n}"
            if bad_m else "")
    elt = NovikovElt.from_terms(Rationals(), terms, cutoff)
    rep.add("the divergence witness truncates into the completion", True,
            str(elt))
    return rep


def _pipeline_completion(dcat, chain, rep) -> None:
    coarse = chain[-1].base
    denom = coarse.n
    for mod in dcat.homs.values():
        for g in mod.support:
            denom = denom * g.denominator // math.gcd(denom, g.denominator)
    fine = ZScaled(2 * denom)
    off_grid = None
    mismatch = None
    waiting = 0
    for (x, y) in sorted(dcat.homs, key=str):
        mod = dcat.homs[(x, y)]
        for theta in mod.support:
            if (theta * coarse.n).denominator != 1:
                off_grid = (f"critical value {theta} of hom({_obj(x)}, "
                            f"{_obj(y)}) is off the stage grid; deepen "
                            "the exhaustion")
                continue
            full = interval_module(Rationals(), theta, None, mod.dim(theta))
            part = restrict_persistence(full, coarse)
            a = Fraction(0)
            while a <= theta + 1:
                # a point just below the birth value is resolved only
                # once the grid ceiling drops under it; until then the
                # limit legitimately reports the next stage over
                if a < theta <= ceil_to(coarse, Rationals(), a):
                    waiting += 1
                    a += Fraction(1, fine.n)
                    continue
                want = mod.dim(theta) if a >= theta else 0
                if complete_persistence(part, a) != AbGroup(want):
                    mismatch = (f"completed value at {a} differs from the "
                                f"dense one at hom({_obj(x)}, {_obj(y)})")
                    break
                a += Fraction(1, fine.n)
            if mismatch:
                break
        if mismatch:
            break
    name = "completion over the reals recovers the dense values"
    if mismatch:
        rep.add(name, False, mismatch)
    elif off_grid:
        rep.add(name, None, off_grid)
    else:
        rep.add(name, True,
                f"samples awaiting a deeper stage: {waiting}"
                if waiting else "")


def _pipeline_base_change(dcat, ws, chain, rep) -> None:
    denom = chain[-1].base.n
    for mod in dcat.homs.values():
        for g in mod.support:
            denom = denom * g.denominator // math.gcd(denom, g.denominator)
    dense = change_of_enrichment(
        dcat, Quotient(ZScaled(denom), dcat.pog.subgroup))
    coarse = change_of_enrichment(dcat, chain[-1].base)
    ring = ring_completion(ZScaled(denom), ws.cutoff)
    monos = ring.monomial_basis()

    def table(cat):
        out = {}
        for pair in sorted(cat.homs, key=str):
            mod = cat.homs[pair]
            for theta in [Fraction(j, denom) for j in range(denom)]:
                rank = sum(mod.dim(cat.pog.normalize(theta - c))
                           for c in monos)
                if rank:
                    out[(pair, theta)] = rank
        return out

    want = table(dense)
    got = table(coarse)
    missing = sorted(set(want) - set(got), key=str)
    if missing:
        (pair, theta), = missing[:1]
        rep.add("the Novikov base change reproduces the dense hom ranks",
                None, f"coset {theta} of hom({pair[0]}, {pair[1]}) is not "
                "covered yet; deepen the exhaustion")
    else:
        ok = want == got
        first = next((k for k in sorted(want, key=str)
                      if want[k] != got.get(k)), None)
        rep.add("the Novikov base change reproduces the dense hom ranks",
                ok, "" if ok else f"rank differs at coset {first[1]} of "
                f"hom({first[0][0]}, {first[0][1]})")


def cmd_pipeline(args) -> Report:
    ws = parse_workspace(args.file)
    name, dcat = _pick_category(ws, args.name)
    depth = args.depth if args.depth is not None else ws.depth
    if depth is None:
        raise ParseError("<args>", 1, 1,
                         "no depth in the file and no --depth flag")
    rep = Report(f"pipeline over {name} at exhaustion depth {depth}")
    chain = exhaustion(dcat.pog, depth)
    for k, sub in enumerate(chain, start=1):
        stage = unorbit_quotient(change_of_enrichment(dcat, sub))[0]
        check = check_enriched(stage)
        homs = sum(sum(m.dim(g) for g in m.support)
                   for m in stage.homs.values())
        rep.add(f"stage {k} unorbit over {sub} is a category",
                check.status == "pass",
                f"{len(stage.objects)} objects, {homs} hom generators")
    rep.extend(reconstruct(dcat, depth), prefix="reconstruction: ")
    _pipeline_completion(dcat, chain, rep)
    _pipeline_base_change(dcat, ws, chain, rep)
    final = unorbit_quotient(change_of_enrichment(dcat, chain[-1]))[0]
    _enriched_notes("colimit", final, rep)
    return rep


# -- argument surface --------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="pogcat",
        description="exact checks and constructions for graded and "
                    "filtered categories")
    top.add_argument("--json", action="store_true",
                     help="machine rendering of the same report")
    sub = top.add_subparsers(dest="command", required=True)

    def cat_flags(p, lmax=False):
        p.add_argument("file")
        p.add_argument("--dmax", type=int, default=3,
                       help="relation sweep arity bound")
        p.add_argument("--coeff", choices=("z", "f2"),
                       help="override the recorded coefficient mode")
        p.add_argument("--cutoff", type=_frac,
                       help="override the recorded weight cutoff")
        p.add_argument("--eps", type=_frac,
                       help="override the recorded weight granularity")
        if lmax:
            p.add_argument("--lmax", type=int, required=True,
                           help="word length bound, part of the recorded "
                                "experiment")

    p = sub.add_parser("check", help="full invariant sweep of a file")
    cat_flags(p)
    p.set_defaults(fn=cmd_check)

    p = sub.add_parser("homology", help="stratum homology tables")
    cat_flags(p)
    p.add_argument("--window", type=_frac,
                   help="largest stratum weight to tabulate")
    p.set_defaults(fn=cmd_homology)

    p = sub.add_parser("orbit", help="orbit category of a stored action")
    p.add_argument("file")
    p.add_argument("--action", required=True)
    p.add_argument("--p0", type=int,
                   help="collapse the 1/n lattice acting trivially")
    p.add_argument("--window", type=int,
                   help="steps of the acting generator to keep")
    p.set_defaults(fn=cmd_orbit)

    p = sub.add_parser("unorbit", help="spread a coset graded category")
    p.add_argument("file")
    p.add_argument("--name", help="category to use when several are stored")
    p.set_defaults(fn=cmd_unorbit)

    p = sub.add_parser("reconstruct",
                       help="colimit of restricted unorbits vs the direct "
                            "construction")
    p.add_argument("file")
    p.add_argument("--name")
    p.add_argument("--depth", type=int, help="exhaustion depth override")
    p.set_defaults(fn=cmd_reconstruct)

    p = sub.add_parser("quotient", help="bar word quotient of a category")
    cat_flags(p, lmax=True)
    p.add_argument("--at", action="append", required=True,
                   help="object to collapse (repeat or comma separate)")
    p.set_defaults(fn=cmd_quotient)

    p = sub.add_parser("localize", help="invert morphisms by cone collapse")
    cat_flags(p, lmax=True)
    p.add_argument("--at", action="append", required=True,
                   help="generator to invert (repeat or comma separate)")
    p.add_argument("--window", type=_frac,
                   help="also tabulate stratum homology up to this weight")
    p.set_defaults(fn=cmd_localize)

    p = sub.add_parser("tw", help="twisted complexes declared in the file")
    cat_flags(p)
    p.set_defaults(fn=cmd_tw)

    p = sub.add_parser("bc", help="bounding cochain search")
    cat_flags(p)
    p.add_argument("--search-cutoff", type=int,
                   help="largest number of basis elements per cochain")
    p.set_defaults(fn=cmd_bc)

    p = sub.add_parser("demo-novikov",
                       help="the completion example on a denominator grid")
    p.add_argument("--n", type=int, required=True,
                   help="denominator bound of the grid")
    p.add_argument("--cutoff", type=_frac, required=True)
    p.set_defaults(fn=cmd_demo_novikov)

    p = sub.add_parser("pipeline",
                       help="exhaustion, reconstruction, completion and "
                            "base change in one run")
    p.add_argument("file")
    p.add_argument("--name")
    p.add_argument("--depth", type=int)
    p.set_defaults(fn=cmd_pipeline)

    return top


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        rep = args.fn(args)
    except (ParseError, PogError, OrbitError, ModuleError, CAinfError,
            CutoffError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(rep.render_json() if args.json else rep.render())
    return rep.exit_code


if __name__ == "__main__":
    sys.exit(main())
