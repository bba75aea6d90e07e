"""Line-oriented text formats.

``.gcat`` presentations, ``.gfun`` functors, ``.gnat`` transformations,
``.gadj`` adjunction bundles, ``.ggraph`` generalized graphs, ``.glob``
globular sets and ``.gdiag`` diagrams.  Every format uses ``#`` comments and
one declaration per line.
"""
from __future__ import annotations

import re
from pathlib import Path

from .kernel import GencatError, Presentation, parse_elem, STRICT, LAX

NAME = r"(?!idof\()[^\s:=.<>\-]+(?:-[^\s:=.<>\-]+)*"
_name = re.compile(rf"^{NAME}$")


class ParseError(GencatError):
    def __init__(self, msg, line=0, col=0, path=None):
        self.line, self.col, self.path = line, col, path
        where = f"{path or '<text>'}:{line}:{col}"
        super().__init__(f"{where}: {msg}")


def _lines(text):
    for lineno, raw in enumerate(text.splitlines(), 1):
        body = raw.split("#", 1)[0]
        stripped = body.strip()
        if stripped:
            col = len(body) - len(body.lstrip()) + 1
            yield lineno, col, stripped


def _sym(tok, lineno, col):
    if not _name.match(tok):
        raise ParseError(f"bad symbol {tok!r}", lineno, col)
    return tok


def _elem(tok, lineno, col):
    try:
        e = parse_elem(tok)
    except ValueError as exc:
        raise ParseError(str(exc), lineno, col) from None
    _sym(e.gen, lineno, col)
    return e


_GCAT = [
    ("gencat", re.compile(rf"^gencat\s+({NAME})$")),
    ("mode", re.compile(r"^mode\s+(strict|lax)$")),
    ("idbound", re.compile(r"^idbound\s+(\d+)$")),
    ("object", re.compile(rf"^object\s+({NAME})$")),
    ("arrow", re.compile(rf"^arrow\s+({NAME})\s*:\s*({NAME})\s*->\s*({NAME})$")),
    ("order", re.compile(rf"^order\s+({NAME})\s*<=\s*({NAME})$")),
    ("comp", re.compile(rf"^comp\s+({NAME})\s*\.\s*({NAME})\s*=\s*({NAME})$")),
    ("coerce", re.compile(r"^coerce\s+(\S+)\s+\.\s+(\S+)\s*=\s*(\S+)$")),
]


def parse_presentation(text: str, path=None) -> Presentation:
    name, mode, idbound = None, STRICT, 2
    gens, src, tgt, declared_at = [], {}, {}, {}
    order, comp, coerce = set(), {}, {}
    refs = []  # (symbol, line, col) to validate after all declarations

    for lineno, col, line in _lines(text):
        for kind, rx in _GCAT:
            m = rx.match(line)
            if m:
                break
        else:
            raise ParseError(f"cannot parse {line!r}", lineno, col, path)
        g = m.groups()
        if kind == "gencat":
            name = g[0]
        elif kind == "mode":
            mode = g[0]
        elif kind == "idbound":
            idbound = int(g[0])
        elif kind in ("object", "arrow"):
            sym = g[0]
            if sym in declared_at:
                raise ParseError(f"duplicate generator {sym}", lineno, col, path)
            declared_at[sym] = lineno
            gens.append(sym)
            src[sym], tgt[sym] = (sym, sym) if kind == "object" else (g[1], g[2])
            refs += [(x, lineno, col) for x in (src[sym], tgt[sym])]
        elif kind == "order":
            order.add((g[0], g[1]))
            refs += [(x, lineno, col) for x in g]
        elif kind == "comp":
            key = (g[0], g[1])
            if key in comp:
                raise ParseError(f"duplicate composition entry {g[0]} . {g[1]}",
                                 lineno, col, path)
            comp[key] = g[2]
            refs += [(x, lineno, col) for x in g]
        elif kind == "coerce":
            l, r, v = (_elem(t, lineno, col) for t in g)
            if (l, r) in coerce:
                raise ParseError(f"duplicate coerce entry {l} . {r}", lineno, col, path)
            coerce[(l, r)] = v
            refs += [(e.gen, lineno, col) for e in (l, r, v)]

    if name is None:
        name = Path(path).stem if path else "anonymous"
    for sym, lineno, col in refs:
        if sym not in declared_at:
            raise ParseError(f"undeclared generator {sym}", lineno, col, path)
    if coerce and mode != LAX:
        raise ParseError("coerce entries require mode lax", 0, 0, path)
    return Presentation(name, tuple(gens), src, tgt, frozenset(order), comp,
                        coerce, idbound, mode)


def serialize_presentation(C: Presentation) -> str:
    out = [f"gencat {C.name}", f"mode {C.mode}", f"idbound {C.idbound}"]
    gens = sorted(C.generators)
    out += [f"object {g}" for g in gens if C.gen_is_object(g)]
    out += [f"arrow {g} : {C.src[g]} -> {C.tgt[g]}" for g in gens
            if not C.gen_is_object(g)]
    out += [f"order {a} <= {b}" for a, b in sorted(C.order)]
    out += [f"comp {a} . {b} = {v}" for (a, b), v in sorted(C.comp.items())]
    out += [f"coerce {a} . {b} = {v}" for (a, b), v in
            sorted(C.coerce.items(), key=lambda kv: (str(kv[0][0]), str(kv[0][1])))]
    return "\n".join(out) + "\n"


def load_presentation(path) -> Presentation:
    path = Path(path)
    return parse_presentation(path.read_text(encoding="utf-8"), path=str(path))


# ---------------------------------------------------------------------------
# companion formats
#
# Cross-file references are resolved through ``registry`` (name -> object)
# first, then by looking for ``<name>.<ext>`` next to the referring file.


class _Resolver:
    def __init__(self, path, registry):
        self.base = Path(path).parent if path else Path(".")
        self.registry = registry if registry is not None else {}

    def get(self, name, ext, loader, lineno, col, path):
        if name in self.registry:
            return self.registry[name]
        candidate = self.base / name
        if candidate.suffix != ext:
            candidate = self.base / f"{name}{ext}"
        if not candidate.exists():
            raise ParseError(f"cannot resolve {name!r} (looked for {candidate})", lineno, col, path)
        obj = loader(candidate, self.registry)
        self.registry[name] = obj
        return obj


def _load_gcat(path, registry=None):
    return load_presentation(path)


def _match(rules, text, path):
    for lineno, col, line in _lines(text):
        for kind, rx in rules:
            m = rx.match(line)
            if m:
                yield kind, m.groups(), lineno, col
                break
        else:
            raise ParseError(f"cannot parse {line!r}", lineno, col, path)


def _check_elem(C, e, lineno, col, path):
    from .kernel import UnknownGenerator
    try:
        return C.norm(e)
    except UnknownGenerator as exc:
        raise ParseError(str(exc), lineno, col, path) from None


_ELEM = r"\S+"

_GFUN = [
    ("functor", re.compile(rf"^functor\s+({NAME})\s*:\s*({NAME})\s*->\s*({NAME})$")),
    ("variance", re.compile(r"^variance\s+(co|contra|upto-objects)$")),
    ("cellular", re.compile(r"^cellular$")),
    ("map", re.compile(rf"^map\s+({NAME})\s*=\s*({_ELEM})$")),
]


def parse_functor(text, path=None, registry=None):
    from .transform import FunctorMap, CO
    res = _Resolver(path, registry)
    name = dom = cod = None
    variance, cellular, mapping = CO, False, {}
    for kind, g, lineno, col in _match(_GFUN, text, path):
        if kind == "functor":
            name = g[0]
            dom = res.get(g[1], ".gcat", _load_gcat, lineno, col, path)
            cod = res.get(g[2], ".gcat", _load_gcat, lineno, col, path)
        elif kind == "variance":
            variance = g[0]
        elif kind == "cellular":
            cellular = True
        else:
            if dom is None:
                raise ParseError("map before the functor header", lineno, col, path)
            if g[0] not in dom.generators:
                raise ParseError(f"{g[0]} is not a generator of {dom.name}", lineno, col, path)
            if g[0] in mapping:
                raise ParseError(f"duplicate map for {g[0]}", lineno, col, path)
            mapping[g[0]] = _check_elem(cod, _elem(g[1], lineno, col), lineno, col, path)
    if name is None:
        raise ParseError("missing functor header", 0, 0, path)
    return FunctorMap(name, dom, cod, mapping, variance, cellular)


def load_functor(path, registry=None):
    path = Path(path)
    return parse_functor(path.read_text(encoding="utf-8"), str(path), registry)


_GNAT = [
    ("natural", re.compile(rf"^natural\s+({NAME})\s*:\s*({NAME})\s*=>\s*({NAME})$")),
    ("at", re.compile(rf"^at\s+({NAME})\s*=\s*({_ELEM})$")),
    ("pair", re.compile(r"^pair$")),
    ("theta", re.compile(rf"^theta([12])\s+({_ELEM})\s*=\s*({_ELEM})$")),
]


def parse_transformation(text, path=None, registry=None):
    from .transform import Transformation
    res = _Resolver(path, registry)
    name = F = G = None
    theta, th1, th2, pair = {}, {}, {}, False
    for kind, g, lineno, col in _match(_GNAT, text, path):
        if kind == "natural":
            name = g[0]
            F = res.get(g[1], ".gfun", load_functor, lineno, col, path)
            G = res.get(g[2], ".gfun", load_functor, lineno, col, path)
            continue
        if F is None:
            raise ParseError("component before the natural header", lineno, col, path)
        if kind == "pair":
            pair = True
        elif kind == "at":
            if g[0] not in F.dom.generators:
                raise ParseError(f"{g[0]} is not a generator of {F.dom.name}", lineno, col, path)
            theta[g[0]] = _check_elem(F.cod, _elem(g[1], lineno, col), lineno, col, path)
        else:
            if not pair:
                raise ParseError("theta lines need a preceding 'pair'", lineno, col, path)
            key = _check_elem(F.dom, _elem(g[1], lineno, col), lineno, col, path)
            val = _check_elem(F.cod, _elem(g[2], lineno, col), lineno, col, path)
            (th1 if g[0] == "1" else th2)[key] = val
    if name is None:
        raise ParseError("missing natural header", 0, 0, path)
    if pair and theta:
        raise ParseError("'at' and 'pair' sections cannot be mixed", 0, 0, path)
    return Transformation(name, F, G, theta, (th1, th2) if pair else None)


def load_transformation(path, registry=None):
    path = Path(path)
    return parse_transformation(path.read_text(encoding="utf-8"), str(path), registry)


_GADJ = [
    ("adjunction", re.compile(rf"^adjunction\s+({NAME})$")),
    ("left", re.compile(rf"^left\s+({NAME})$")),
    ("right", re.compile(rf"^right\s+({NAME})$")),
    ("unit", re.compile(rf"^unit\s+({NAME})$")),
    ("counit", re.compile(rf"^counit\s+({NAME})$")),
]


def parse_adjunction(text, path=None, registry=None):
    from .adjoint import AdjunctionWitness
    res = _Resolver(path, registry)
    parts = {"adjunction": None}
    for kind, g, lineno, col in _match(_GADJ, text, path):
        if kind == "adjunction":
            parts[kind] = g[0]
        elif kind in ("left", "right"):
            parts[kind] = res.get(g[0], ".gfun", load_functor, lineno, col, path)
        else:
            parts[kind] = res.get(g[0], ".gnat", load_transformation, lineno, col, path)
    for k in ("left", "right", "unit", "counit"):
        if k not in parts:
            raise ParseError(f"missing '{k}' line", 0, 0, path)
    return AdjunctionWitness(parts["left"], parts["right"], parts["unit"], parts["counit"],
                             parts["adjunction"] or "adjunction")


def load_adjunction(path, registry=None):
    path = Path(path)
    return parse_adjunction(path.read_text(encoding="utf-8"), str(path), registry)


_GGRAPH = [
    ("edge", re.compile(rf"^edge\s+({NAME})$")),
    ("src", re.compile(rf"^src\s+({NAME})\s*=\s*({NAME})$")),
    ("tgt", re.compile(rf"^tgt\s+({NAME})\s*=\s*({NAME})$")),
]


def parse_graph(text, path=None):
    """Edges default to being their own source and target."""
    from .constructions import GenGraph
    edges, src, tgt, refs = [], {}, {}, []
    for kind, g, lineno, col in _match(_GGRAPH, text, path):
        if kind == "edge":
            if g[0] in edges:
                raise ParseError(f"duplicate edge {g[0]}", lineno, col, path)
            edges.append(g[0])
        else:
            (src if kind == "src" else tgt)[g[0]] = g[1]
            refs += [(x, lineno, col) for x in g]
    for x, lineno, col in refs:
        if x not in edges:
            raise ParseError(f"undeclared edge {x}", lineno, col, path)
    return GenGraph(tuple(edges), {e: src.get(e, e) for e in edges},
                    {e: tgt.get(e, e) for e in edges})


def load_graph(path):
    path = Path(path)
    return parse_graph(path.read_text(encoding="utf-8"), str(path))


_GLOB = [
    ("cell", re.compile(rf"^cell\s+(\d+)\s+({NAME})$")),
    ("sigma", re.compile(rf"^sigma\s+({NAME})\s*=\s*({NAME})$")),
    ("tau", re.compile(rf"^tau\s+({NAME})\s*=\s*({NAME})$")),
]


def parse_globular(text, path=None):
    from .constructions import GlobularPresentation
    cells, sigma, tau, seen = {}, {}, {}, set()
    for kind, g, lineno, col in _match(_GLOB, text, path):
        if kind == "cell":
            if g[1] in seen:
                raise ParseError(f"duplicate cell {g[1]}", lineno, col, path)
            seen.add(g[1])
            cells.setdefault(int(g[0]), []).append(g[1])
        else:
            (sigma if kind == "sigma" else tau)[g[0]] = g[1]
    return GlobularPresentation({n: tuple(sorted(v)) for n, v in sorted(cells.items())},
                                sigma, tau)


def serialize_globular(G) -> str:
    out = [f"cell {n} {c}" for n, cs in sorted(G.cells.items()) for c in cs]
    out += [f"sigma {c} = {G.sigma[c]}" for c in sorted(G.sigma)]
    out += [f"tau {c} = {G.tau[c]}" for c in sorted(G.tau)]
    return "\n".join(out) + "\n"


def load_globular(path):
    path = Path(path)
    return parse_globular(path.read_text(encoding="utf-8"), str(path))


_GDIAG = [
    ("diagram", re.compile(rf"^diagram\s+({NAME})$")),
    ("kind", re.compile(r"^kind\s+(product|equalizer|coproduct|coequalizer|diagram)$")),
    ("index", re.compile(r"^index\s+(\S+)$")),
    ("base", re.compile(r"^base\s+(\S+)$")),
]


def parse_diagram(text, path=None, registry=None):
    """``index`` and ``base`` name files relative to the diagram file."""
    from .limits import Diagram
    res = _Resolver(path, registry)
    kind, index, base = "diagram", None, None
    for k, g, lineno, col in _match(_GDIAG, text, path):
        if k == "kind":
            kind = g[0]
        elif k == "index":
            index = res.get(g[0], ".gcat", _load_gcat, lineno, col, path)
        elif k == "base":
            base = res.get(g[0], ".gfun", load_functor, lineno, col, path)
    if index is None or base is None:
        raise ParseError("a diagram needs 'index' and 'base' lines", 0, 0, path)
    if base.dom != index:
        raise ParseError(f"base {base.name} does not start at the index", 0, 0, path)
    return Diagram(index, base, kind)


def load_diagram(path, registry=None):
    path = Path(path)
    return parse_diagram(path.read_text(encoding="utf-8"), str(path), registry)
