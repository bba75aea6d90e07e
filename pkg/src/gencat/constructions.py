"""Builders: generated categories, flattenings, path categories of
generalized graphs, tree categories, cells and globular sets."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .kernel import (Elem, GencatError, Presentation, Truncated,
                     hom_set, is_one_category, make)
from .transform import FunctorMap


class ConstructionError(GencatError):
    pass


# ---------------------------------------------------------------------------
# categories with explicit identity arrows


def _acts_as_identity(C: Presentation, e: str) -> bool:
    x = C.src[e]
    if C.tgt[e] != x or C.gen_is_object(e):
        return False
    if C.comp.get((e, e)) != e:
        return False
    for f in C.generators:
        if f == e or C.gen_is_object(f):
            continue
        if C.tgt[f] == x and C.comp.get((e, f)) != f:
            return False
        if C.src[f] == x and C.comp.get((f, e)) != f:
            return False
    return True


def from_category(C: Presentation) -> Presentation:
    """Identify explicit identity arrows with their objects."""
    if not is_one_category(C):
        raise ConstructionError(f"{C.name} is not a one-category")
    absorb = {}
    for e in sorted(C.generators):
        if _acts_as_identity(C, e) and C.src[e] not in absorb.values():
            absorb[e] = C.src[e]
    ren = lambda g: absorb.get(g, g)
    gens = tuple(g for g in C.generators if g not in absorb)
    comp = {}
    for (g, f), h in C.comp.items():
        if g in absorb or f in absorb:
            continue
        h = ren(h)
        comp[(g, f)] = h
    return Presentation(C.name, gens, {g: ren(C.src[g]) for g in gens},
                        {g: ren(C.tgt[g]) for g in gens}, C.order, comp, {},
                        C.idbound, C.mode)


# ---------------------------------------------------------------------------
# flattening

FLAT_CAT, FLAT_ZERO = "flat_cat", "flat_zero"


def _obj(e: Elem) -> str:
    return f"[{e}]"


def _arr(e: Elem) -> str:
    return f"({e})"


def flat_name(C: Presentation, e: Elem) -> str:
    """Name of the flattened image of the element e."""
    e = C.norm(e)
    if C.is_identity(e):
        return _obj(C.base(e))
    return _arr(e)


def flatten(C: Presentation, variant: str = FLAT_CAT) -> Presentation:
    E = C.elements()
    if variant == FLAT_ZERO:
        # level 0 only: the identities left are the objects, written (a)
        names = [_arr(Elem(g)) if C.gen_is_object(g) else _obj(Elem(g))
                 for g in sorted(C.generators)]
        return make(f"flat0_{C.name}", objects=names, idbound=0)
    if variant != FLAT_CAT:
        raise ValueError(f"unknown flattening {variant}")
    objs = [_obj(e) for e in E]
    arrows = [(_arr(f), _obj(C.source(f)), _obj(C.target(f)))
              for f in E if not C.is_identity(f)]
    comp = {}
    nonid = [f for f in E if not C.is_identity(f)]
    for g, f in itertools.product(nonid, repeat=2):
        if C.source(g) == C.target(f):
            comp[(_arr(g), _arr(f))] = flat_name(C, C.compose(g, f))
    return make(f"flat_{C.name}", objects=objs, arrows=arrows, comp=comp, idbound=0)


def flatten_functor(F: FunctorMap, flatC=None, flatD=None) -> FunctorMap:
    C, D = F.dom, F.cod
    flatC = flatC or flatten(C)
    flatD = flatD or flatten(D)
    mapping = {}
    for e in C.elements():
        img = F(e)
        if img.level > D.idbound:
            raise Truncated(f"{F.name}({e}) = {img} lies above the bound of {D.name}")
        mapping[_obj(e)] = Elem(_obj(img))
        if not C.is_identity(e):
            mapping[_arr(e)] = Elem(flat_name(D, img))
    return FunctorMap(f"flat({F.name})", flatC, flatD, mapping)


# ---------------------------------------------------------------------------
# generalized graphs


@dataclass(frozen=True)
class GenGraph:
    edges: tuple
    src: dict
    tgt: dict

    def is_one_dimensional(self) -> bool:
        return all(self.src[self.src[e]] == self.src[e] and
                   self.tgt[self.tgt[e]] == self.tgt[e] for e in self.edges)

    def is_object(self, e) -> bool:
        return self.src[e] == e and self.tgt[e] == e


@dataclass(frozen=True)
class PathCategory:
    presentation: Presentation
    truncated: bool
    is_one_dimensional: bool


def path_name(path) -> str:
    # path is (last, ..., first) in composition order
    return "*".join(path)


def graph_path_category(G: GenGraph, max_len: int) -> PathCategory:
    if max_len < 1:
        raise ConstructionError("max_len must be positive")
    objs = [e for e in G.edges if G.is_object(e)]
    edges = [e for e in G.edges if not G.is_object(e)]
    paths = [(e,) for e in edges]
    frontier = list(paths)
    for _ in range(max_len - 1):
        nxt = []
        for p in frontier:
            for e in edges:
                if G.src[e] == G.tgt[p[0]]:
                    nxt.append((e,) + p)
        paths += nxt
        frontier = nxt
    known = {path_name(p) for p in paths}
    arrows = [(path_name(p), G.src[p[-1]], G.tgt[p[0]]) for p in paths]
    comp, truncated = {}, False
    for p, q in itertools.product(paths, repeat=2):
        if G.src[p[-1]] == G.tgt[q[0]]:
            name = path_name(p + q)
            if name in known:
                comp[(path_name(p), path_name(q))] = name
            else:
                truncated = True
    C = make(f"path{max_len}", objects=objs, arrows=arrows, comp=comp)
    return PathCategory(C, truncated, G.is_one_dimensional())


def graph_of(C: Presentation) -> GenGraph:
    return GenGraph(tuple(sorted(C.generators)), dict(C.src), dict(C.tgt))


# ---------------------------------------------------------------------------
# trees of morphisms
#
# A tree is a tuple: (u,) for a leaf, (u, left, right) otherwise.  The target
# of a node is its left subtree and the source its right subtree; leaves are
# objects.


def tree_depth(t) -> int:
    return 1 if len(t) == 1 else 1 + max(tree_depth(t[1]), tree_depth(t[2]))


def tree_str(t) -> str:
    """Parenthesized prefix form ``(root left right)``."""
    return t[0] if len(t) == 1 else f"({t[0]} {tree_str(t[1])} {tree_str(t[2])})"


def tree_name(t) -> str:
    return t[0] if len(t) == 1 else f"({t[0]},{tree_name(t[1])},{tree_name(t[2])})"


@dataclass
class TreeCategory:
    presentation: Presentation
    trees: dict = field(default_factory=dict)   # generator name -> tree

    def tree(self, e: Elem):
        return self.trees[e.gen]


def tree_category(C: Presentation, max_depth: int) -> TreeCategory:
    if not is_one_category(C):
        raise ConstructionError(f"{C.name} is not a one-category")
    if max_depth < 1:
        raise ConstructionError("max_depth must be positive")
    dom = lambda u: C.src[u]
    cod = lambda u: C.tgt[u]
    endo = lambda t: dom(t[0]) == cod(t[0])

    def absorb(u, left, right):
        if C.gen_is_object(u) and left == right == (u,):
            return (u,)
        return (u, left, right)

    layers = [[(u,) for u in sorted(C.generators)]]
    for depth in range(2, max_depth + 1):
        children = [t for layer in layers for t in layer if endo(t)]
        new = []
        for u in sorted(C.generators):
            for left, right in itertools.product(children, repeat=2):
                if max(tree_depth(left), tree_depth(right)) != depth - 1:
                    continue
                if cod(left[0]) == cod(u) and dom(right[0]) == dom(u):
                    t = absorb(u, left, right)
                    if len(t) == 3:
                        new.append(t)
        layers.append(new)
    trees = [t for layer in layers for t in layer]
    names = {t: tree_name(t) for t in trees}

    objs = [names[t] for t in trees if len(t) == 1]
    nodes = [t for t in trees if len(t) == 3]
    arrows = [(names[t], names[t[2]], names[t[1]]) for t in nodes]
    comp = {}
    for g, f in itertools.product(nodes, repeat=2):
        if g[2] != f[1]:
            continue
        r = C.compose(Elem(g[0]), Elem(f[0]))
        if r is None:
            raise ConstructionError(f"roots of {tree_str(g)} and {tree_str(f)} do not compose")
        h = absorb(r.gen, g[1], f[2])
        if h not in names:
            raise Truncated(f"{tree_str(h)} exceeds depth {max_depth}")
        comp[(names[g], names[f])] = names[h]
    P = make(f"{C.name}f{max_depth}", objects=objs, arrows=arrows, comp=comp,
             idbound=C.idbound)
    return TreeCategory(P, {names[t]: t for t in trees})


def is_tree_like(C: Presentation) -> bool:
    E = C.elements()
    for a, b in itertools.product(E, repeat=2):
        if len(hom_set(C, a, b)) > 1:
            return False
    # any boundary cycle must pass only through objects
    for e in E:
        if C.is_object(e):
            continue
        seen, todo = set(), [C.source(e), C.target(e)]
        while todo:
            x = todo.pop()
            if x == e:
                return False
            if x in seen or C.is_object(x):
                continue
            seen.add(x)
            todo += [C.source(x), C.target(x)]
    return True


# ---------------------------------------------------------------------------
# cells


@dataclass(frozen=True)
class CellInfo:
    dim: int
    is_k_cell: dict
    is_cellular_element: bool


def dim(C: Presentation, e: Elem) -> int:
    e = C.norm(e)
    seen = set()
    n = 0
    while True:
        s = C.source(e)
        if s == e:
            return n
        if e in seen:
            raise ConstructionError(f"sources of {e} never stabilize; dim is undefined")
        seen.add(e)
        e, n = s, n + 1


def is_k_cell(C: Presentation, f: Elem, k: int) -> bool:
    f = C.norm(f)
    if k == 0:
        return C.is_object(f)
    s, t = f, f
    for j in range(k):
        if C.is_object(s) or C.is_object(t):
            return False
        s, t = C.source(s), C.target(t)
    if not (C.is_object(s) and C.is_object(t)):
        return False
    sf, tf = C.source(f), C.target(f)
    if k >= 2 and (C.source(tf) != C.source(sf) or C.target(sf) != C.target(tf)):
        return False
    return is_k_cell(C, sf, k - 1) and is_k_cell(C, tf, k - 1)


def cell_analysis(C: Presentation, e: Elem) -> CellInfo:
    d = dim(C, e)
    cells = {k: is_k_cell(C, e, k) for k in range(d + 2)}
    return CellInfo(d, cells, C.is_object(C.norm(e)) or any(cells[k] for k in cells if k >= 1))


def is_cellular(C: Presentation) -> bool:
    try:
        return all(cell_analysis(C, e).is_cellular_element for e in C.elements())
    except ConstructionError:
        return False


@dataclass(frozen=True)
class GlobularPresentation:
    cells: dict   # n -> tuple of names
    sigma: dict   # name -> name
    tau: dict

    def dim_of(self) -> dict:
        return {c: n for n, cs in self.cells.items() for c in cs}

    def globularity_violations(self) -> list:
        bad = []
        d = self.dim_of()
        for c, n in sorted(d.items()):
            if n == 0:
                continue
            if c not in self.sigma or c not in self.tau:
                bad.append((c, "missing boundary"))
                continue
            if d.get(self.sigma[c]) != n - 1 or d.get(self.tau[c]) != n - 1:
                bad.append((c, "boundary of the wrong dimension"))
                continue
            if n >= 2:
                s, t = self.sigma[c], self.tau[c]
                if self.sigma[s] != self.sigma[t]:
                    bad.append((c, "sigma sigma != sigma tau"))
                if self.tau[s] != self.tau[t]:
                    bad.append((c, "tau sigma != tau tau"))
        return bad


def to_globular(C: Presentation, n_max: int) -> GlobularPresentation:
    """Bucket the generators by dimension, with sigma = source and tau = target.

    Identity towers are degenerate cells and are not listed.
    """
    if any(a != b for a, b in C.closure):
        raise ConstructionError(f"{C.name} is not sharp")
    if not is_cellular(C):
        raise ConstructionError(f"{C.name} is not cellular")
    cells, sigma, tau = {}, {}, {}
    for g in sorted(C.generators):
        n = dim(C, Elem(g))
        if n > n_max:
            continue
        cells.setdefault(n, []).append(g)
        if n:
            sigma[g], tau[g] = C.src[g], C.tgt[g]
    return GlobularPresentation({n: tuple(v) for n, v in sorted(cells.items())}, sigma, tau)


def from_globular(G: GlobularPresentation, name="glob") -> Presentation:
    bad = G.globularity_violations()
    if bad:
        raise ConstructionError(f"globularity violated at {bad[0][0]}: {bad[0][1]}")
    objs = list(G.cells.get(0, ()))
    arrows = [(c, G.sigma[c], G.tau[c]) for n, cs in sorted(G.cells.items()) if n
              for c in cs]
    return make(name, objects=objs, arrows=arrows)
