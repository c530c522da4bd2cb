"""Line-based description files for categories, modules and actions.

Two formats share one tokenizer.  A ``.cat`` file describes a single
curved A-infinity category: grading pog, coefficient mode, cutoffs,
generator and operation tables, and optionally twisted-complex windows.
A ``.ws`` workspace carries enriched categories over a pog together with
graded modules and group actions, plus the truncation data every run
must record.  Both parse deterministically; unknown keys are errors, as
are missing cutoffs, so a file pins down the whole experiment.
"""

from __future__ import annotations

import ast
from dataclasses import dataclass, field
from fractions import Fraction

from .cainf import CAinf, Elt, Key
from .constructions import TwObject, embed
from .modules import GradedModule, Presentation
from .orbit import EnrichedCategory, GroupAction
from .pog import Pog, parse_pog

__all__ = [
    "ParseError",
    "Workspace",
    "parse_category",
    "parse_category_text",
    "parse_workspace",
    "parse_workspace_text",
]


class ParseError(Exception):
    """Error with file name, line and column of the offending token."""

    def __init__(self, name: str, line: int, col: int, msg: str):
        super().__init__(f"{name}:{line}:{col}: {msg}")
        self.line = line
        self.col = col


def _lines(text: str):
    for no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if line.strip():
            yield no, line


def _col(line: str, token: str) -> int:
    pos = line.find(token)
    return pos + 1 if pos >= 0 else 1


def _split(line: str) -> tuple[list[str], str | None]:
    """Tokens of the head and the raw bracket literal tail, if any."""
    cut = line.find("[")
    tail = None
    if cut >= 0:
        tail = line[cut:].strip()
        line = line[:cut]
    for ch in "(),":
        line = line.replace(ch, f" {ch} ")
    toks = [t for t in line.split() if t not in (",",)]
    return toks, tail


def _frac(name, no, line, tok) -> Fraction:
    try:
        return Fraction(tok)
    except (ValueError, ZeroDivisionError):
        raise ParseError(name, no, _col(line, tok),
                         f"expected a rational number, got {tok!r}") from None


def _int(name, no, line, tok) -> int:
    try:
        return int(tok)
    except ValueError:
        raise ParseError(name, no, _col(line, tok),
                         f"expected an integer, got {tok!r}") from None


def _literal(name, no, line, tail, what):
    if tail is None:
        raise ParseError(name, no, len(line), f"missing {what} literal")
    try:
        value = ast.literal_eval(tail)
    except (ValueError, SyntaxError):
        raise ParseError(name, no, _col(line + tail, "["),
                         f"bad {what} literal {tail!r}") from None
    return value


def _matrix(name, no, line, tail) -> list[list[int]]:
    value = _literal(name, no, line, tail, "matrix")
    if not isinstance(value, list) or \
            not all(isinstance(r, list) for r in value):
        raise ParseError(name, no, 1, "matrices are lists of integer rows")
    return [[int(e) for e in r] for r in value]


# -- category files ----------------------------------------------------


def _parse_terms(name, no, line, toks, gens) -> Elt:
    """``coeff T^shift gen`` summands joined by ``+`` tokens."""
    out: Elt = {}
    chunk: list[str] = []
    chunks = []
    for t in toks:
        if t == "+":
            chunks.append(chunk)
            chunk = []
        else:
            chunk.append(t)
    chunks.append(chunk)
    for c in chunks:
        if len(c) != 3 or not c[1].startswith("T^"):
            raise ParseError(name, no, 1,
                             "operation terms read: coeff T^shift generator")
        coeff = _int(name, no, line, c[0])
        shift = _frac(name, no, line, c[1][2:])
        if c[2] not in gens:
            raise ParseError(name, no, _col(line, c[2]),
                             f"unknown generator {c[2]!r}")
        key = gens[c[2]]
        out[(key, shift)] = out.get((key, shift), 0) + coeff
    return {k: c for k, c in out.items() if c}


def parse_category_text(text: str, name: str = "<cat>", *,
                        coeff: str | None = None, cutoff=None,
                        eps=None) -> CAinf:
    """Build a curved category from its description; flags override the
    recorded coefficient mode and cutoffs."""
    pog: Pog | None = None
    file_coeff = None
    file_cutoff = None
    file_eps = None
    objects: list[str] = []
    gen_tables: dict[tuple[str, str], dict[str, tuple[int, Fraction]]] = {}
    by_name: dict[str, Key] = {}
    units: dict[str, str] = {}
    mu: dict[int, dict] = {}
    mu0: dict[str, Elt] = {}
    twists: list[TwObject] = []
    twist_data: dict[str, tuple] = {}

    for no, line in _lines(text):
        toks, tail = _split(line)
        key = toks[0]
        if key == "pog":
            pog = parse_pog(toks[1])
        elif key == "coeff":
            if toks[1] not in ("z", "f2"):
                raise ParseError(name, no, _col(line, toks[1]),
                                 "coefficient mode is z or f2")
            file_coeff = toks[1]
        elif key == "cutoff":
            file_cutoff = _frac(name, no, line, toks[1])
        elif key == "eps":
            file_eps = _frac(name, no, line, toks[1])
        elif key == "objects":
            objects.extend(toks[1:])
        elif key == "gen":
            if len(toks) != 6:
                raise ParseError(name, no, 1,
                                 "generator lines read: gen src tgt name "
                                 "degree weight")
            src, tgt, gname = toks[1], toks[2], toks[3]
            for obj in (src, tgt):
                if obj not in objects:
                    raise ParseError(name, no, _col(line, obj),
                                     f"unknown object {obj!r}")
            if gname in by_name:
                raise ParseError(name, no, _col(line, gname),
                                 f"generator name {gname!r} reused; names "
                                 "are global so operation lines can cite "
                                 "them")
            deg = _int(name, no, line, toks[4])
            wt = _frac(name, no, line, toks[5])
            if pog is None:
                raise ParseError(name, no, 1, "pog line must come first")
            wt = pog.check_element(wt)
            gen_tables.setdefault((src, tgt), {})[gname] = (deg, wt)
            by_name[gname] = (src, tgt, gname)
        elif key == "unit":
            if len(toks) != 3:
                raise ParseError(name, no, 1, "unit lines read: unit obj gen")
            units[toks[1]] = toks[2]
        elif key == "mu":
            arrow = toks.index("->") if "->" in toks else -1
            if len(toks) < 2 or toks[2] != ":" or arrow < 0:
                raise ParseError(name, no, 1,
                                 "operation lines read: mu d : (g1, ...) "
                                 "-> coeff T^shift out + ...")
            d = _int(name, no, line, toks[1])
            head = [t for t in toks[3:arrow] if t not in "()"]
            val = _parse_terms(name, no, line, toks[arrow + 1:], by_name)
            if d == 0:
                if len(head) != 1 or head[0] not in objects:
                    raise ParseError(name, no, 1,
                                     "curvature lines read: mu 0 : obj -> ...")
                mu0[head[0]] = val
            else:
                if len(head) != d:
                    raise ParseError(name, no, 1,
                                     f"arity {d} operation lists {len(head)} "
                                     "inputs")
                chain = []
                for g in head:
                    if g not in by_name:
                        raise ParseError(name, no, _col(line, g),
                                         f"unknown generator {g!r}")
                    chain.append(by_name[g])
                mu.setdefault(d, {})[tuple(chain)] = val
        elif key == "twist":
            if len(toks) < 3 or toks[2] != ":":
                raise ParseError(name, no, 1,
                                 "twist lines read: twist name : (obj "
                                 "shift) ...")
            tname = toks[1]
            flat = [t for t in toks[3:] if t not in "()"]
            if len(flat) % 2:
                raise ParseError(name, no, 1, "twist entries pair an object "
                                 "with an integer shift")
            entries = []
            for i in range(0, len(flat), 2):
                if flat[i] not in objects:
                    raise ParseError(name, no, _col(line, flat[i]),
                                     f"unknown object {flat[i]!r}")
                entries.append((flat[i], _int(name, no, line, flat[i + 1])))
            twist_data[tname] = (no, tuple(entries), {})
        elif key == "delta":
            if len(toks) < 5 or toks[4] != ":":
                raise ParseError(name, no, 1,
                                 "delta lines read: delta twist i j : terms")
            tname = toks[1]
            if tname not in twist_data:
                raise ParseError(name, no, _col(line, tname),
                                 f"unknown twist {tname!r}")
            i = _int(name, no, line, toks[2])
            j = _int(name, no, line, toks[3])
            val = _parse_terms(name, no, line, toks[5:], by_name)
            twist_data[tname][2][(i, j)] = val
        else:
            raise ParseError(name, no, _col(line, key),
                             f"unknown key {key!r}")

    missing = [k for k, v in (("pog", pog), ("coeff", file_coeff),
                              ("cutoff", file_cutoff), ("eps", file_eps))
               if v is None]
    if missing:
        raise ParseError(name, 1, 1,
                         f"missing required keys: {', '.join(missing)}")
    cat = CAinf(objects, gen_tables, units, mu0=mu0, mu=mu,
                cutoff=cutoff if cutoff is not None else file_cutoff,
                eps=eps if eps is not None else file_eps,
                coeff=coeff if coeff is not None else file_coeff,
                name=name)
    for tname, (_no, entries, delta) in twist_data.items():
        twists.append(TwObject(entries, delta, name=tname))
    cat.twists = twists
    return cat


def parse_category(path, **overrides) -> CAinf:
    with open(path, encoding="utf-8") as fh:
        return parse_category_text(fh.read(), name=str(path), **overrides)


# -- workspaces --------------------------------------------------------


@dataclass
class Workspace:
    """One experiment: grading, scalar mode, all cutoffs, named data."""

    pog: Pog
    mode: str
    cutoff: Fraction
    lmax: int
    dmax: int
    eps: Fraction
    depth: int | None = None
    categories: dict[str, EnrichedCategory] = field(default_factory=dict)
    modules: dict[str, GradedModule] = field(default_factory=dict)
    actions: dict[str, GroupAction] = field(default_factory=dict)

    def sole_category(self) -> tuple[str, EnrichedCategory]:
        if len(self.categories) != 1:
            raise ValueError("workspace holds "
                             f"{len(self.categories)} categories; name one")
        return next(iter(self.categories.items()))


def _mor_terms(name, no, line, toks):
    """``coeff (grade index)`` summands joined by ``+`` tokens."""
    terms = {}
    flat = [t for t in toks if t not in "()"]
    pos = 0
    while pos < len(flat):
        if flat[pos] == "+":
            pos += 1
            continue
        try:
            c = _int(name, no, line, flat[pos])
            g = _frac(name, no, line, flat[pos + 1])
            i = _int(name, no, line, flat[pos + 2])
        except IndexError:
            raise ParseError(name, no, 1,
                             "morphism terms read: coeff (grade index)") \
                from None
        terms[(g, i)] = terms.get((g, i), 0) + c
        pos += 3
    return {k: c for k, c in terms.items() if c}


def parse_workspace_text(text: str, name: str = "<ws>") -> Workspace:
    pog = mode = cutoff = lmax = dmax = eps = None
    depth = None
    categories: dict[str, EnrichedCategory] = {}
    modules: dict[str, GradedModule] = {}
    actions: dict[str, GroupAction] = {}
    block = None  # ("category"|"module"|"action", name, state)

    def close(no):
        nonlocal block
        kind, bname, st = block
        if pog is None and kind != "action":
            raise ParseError(name, no, 1, "pog line must precede blocks")
        if kind == "category":
            comps = {}
            for (x, y), table in st["homs"].items():
                comps[(x, y)] = GradedModule(
                    pog, {g: Presentation(r, tuple(map(tuple, rel)))
                          for g, (r, rel) in table.items()},
                    st["steps"].get((x, y)))
            categories[bname] = EnrichedCategory(
                pog, st["objects"], comps, st["comp"], st["idents"])
        elif kind == "module":
            modules[bname] = GradedModule(
                pog, {g: Presentation(r, tuple(map(tuple, rel)))
                      for g, (r, rel) in st["grades"].items()}, st["steps"])
        else:
            if st["cat"] not in categories:
                raise ParseError(name, no, 1,
                                 f"action targets unknown category "
                                 f"{st['cat']!r}")
            actions[bname] = GroupAction(
                categories[st["cat"]], st["pog"], st["send"], st["mats"],
                kappa=st["kappa"] or None)
        block = None

    for no, line in _lines(text):
        toks, tail = _split(line)
        key = toks[0]
        if block is None:
            if key == "pog":
                pog = parse_pog(toks[1])
            elif key == "mode":
                if toks[1] not in ("z", "f2"):
                    raise ParseError(name, no, _col(line, toks[1]),
                                     "scalar mode is z or f2")
                mode = toks[1]
            elif key == "cutoff":
                cutoff = _frac(name, no, line, toks[1])
            elif key == "lmax":
                lmax = _int(name, no, line, toks[1])
            elif key == "dmax":
                dmax = _int(name, no, line, toks[1])
            elif key == "eps":
                eps = _frac(name, no, line, toks[1])
            elif key == "depth":
                depth = _int(name, no, line, toks[1])
            elif key == "category":
                block = ("category", toks[1],
                         {"objects": [], "homs": {}, "steps": {},
                          "comp": {}, "idents": {}})
            elif key == "module":
                block = ("module", toks[1], {"grades": {}, "steps": {}})
            elif key == "action":
                if len(toks) != 6 or toks[2] != "on" or toks[4] != "over":
                    raise ParseError(name, no, 1, "action blocks open with: "
                                     "action name on category over Z/n")
                block = ("action", toks[1],
                         {"cat": toks[3], "pog": parse_pog(toks[5]),
                          "send": {}, "mats": {}, "kappa": {}})
            else:
                raise ParseError(name, no, _col(line, key),
                                 f"unknown key {key!r}")
            continue

        kind, _bname, st = block
        if key == "end":
            close(no)
        elif kind == "category" and key == "object":
            st["objects"].extend(toks[1:])
        elif kind == "category" and key == "hom":
            # hom x y : grade rank [rel ...]
            if len(toks) < 6 or toks[3] != ":":
                raise ParseError(name, no, 1,
                                 "hom lines read: hom x y : grade rank")
            g = _frac(name, no, line, toks[4])
            r = _int(name, no, line, toks[5])
            rel = []
            if len(toks) > 6:
                if toks[6] != "rel":
                    raise ParseError(name, no, _col(line, toks[6]),
                                     "only a rel literal may follow the rank")
                rel = _matrix(name, no, line, tail)
            st["homs"].setdefault((toks[1], toks[2]), {})[g] = (r, rel)
        elif kind == "category" and key == "step":
            if len(toks) < 6 or toks[3] != ":":
                raise ParseError(name, no, 1,
                                 "step lines read: step x y : grade rho "
                                 "[[...]]")
            g = _frac(name, no, line, toks[4])
            rho = _frac(name, no, line, toks[5])
            st["steps"].setdefault((toks[1], toks[2]), {})[(g, rho)] = \
                _matrix(name, no, line, tail)
        elif kind == "category" and key == "comp":
            flat = [t for t in toks[1:] if t not in "()"]
            if len(flat) < 9 or flat[3] != ":" or "->" not in flat:
                raise ParseError(name, no, 1,
                                 "composition lines read: comp x y z : "
                                 "(g i) (h j) -> coeff (k m) + ...")
            arrow = flat.index("->")
            if arrow != 8:
                raise ParseError(name, no, 1,
                                 "composition takes exactly two inputs")
            x, y, z = flat[0], flat[1], flat[2]
            g = _frac(name, no, line, flat[4])
            i = _int(name, no, line, flat[5])
            h = _frac(name, no, line, flat[6])
            j = _int(name, no, line, flat[7])
            out = _mor_terms(name, no, line, flat[arrow + 1:])
            st["comp"].setdefault((x, y, z), {})[((g, i), (h, j))] = out
        elif kind == "category" and key == "identity":
            if len(toks) < 4 or toks[2] != ":":
                raise ParseError(name, no, 1,
                                 "identity lines read: identity x : coeff "
                                 "(grade index)")
            st["idents"][toks[1]] = _mor_terms(name, no, line, toks[3:])
        elif kind == "module" and key == "grade":
            if len(toks) < 3:
                raise ParseError(name, no, 1,
                                 "grade lines read: grade g rank [rel ...]")
            g = _frac(name, no, line, toks[1])
            r = _int(name, no, line, toks[2])
            rel = []
            if len(toks) > 3:
                if toks[3] != "rel":
                    raise ParseError(name, no, _col(line, toks[3]),
                                     "only a rel literal may follow the rank")
                rel = _matrix(name, no, line, tail)
            st["grades"][g] = (r, rel)
        elif kind == "module" and key == "step":
            if len(toks) != 3:
                raise ParseError(name, no, 1,
                                 "step lines read: step g rho [[...]]")
            st["steps"][(_frac(name, no, line, toks[1]),
                         _frac(name, no, line, toks[2]))] = \
                _matrix(name, no, line, tail)
        elif kind == "action" and key == "send":
            st["send"][toks[1]] = toks[2]
        elif kind == "action" and key == "mat":
            st["mats"][(toks[1], toks[2])] = _matrix(name, no, line, tail)
        elif kind == "action" and key == "kappa":
            if len(toks) < 4 or toks[2] != ":":
                raise ParseError(name, no, 1,
                                 "kappa lines read: kappa x : coeff "
                                 "(grade index)")
            st["kappa"][toks[1]] = _mor_terms(name, no, line, toks[3:])
        else:
            raise ParseError(name, no, _col(line, key),
                             f"unknown key {key!r} in a {kind} block")

    if block is not None:
        raise ParseError(name, no, 1, f"unterminated {block[0]} block")
    missing = [k for k, v in (("pog", pog), ("mode", mode),
                              ("cutoff", cutoff), ("lmax", lmax),
                              ("dmax", dmax), ("eps", eps)) if v is None]
    if missing:
        raise ParseError(name, 1, 1,
                         f"missing required keys: {', '.join(missing)}")
    return Workspace(pog, mode, cutoff, lmax, dmax, eps, depth,
                     categories, modules, actions)


def parse_workspace(path) -> Workspace:
    with open(path, encoding="utf-8") as fh:
        return parse_workspace_text(fh.read(), name=str(path))


def twist_window(cat: CAinf) -> list[TwObject]:
    """Declared twists after plain embeddings of every object."""
    return [embed(x) for x in cat.objects] + list(getattr(cat, "twists", []))
