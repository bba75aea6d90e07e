"""Small named presentations used by the tests, scripts and CLI demos."""
from __future__ import annotations

import itertools

from .formats import parse_presentation
from .kernel import Presentation, make, LAX

T0_TEXT = """\
gencat T0
object a
"""

T1_TEXT = """\
gencat T1
object a
arrow b : a -> b
"""

T2_TEXT = """\
gencat T2
arrow a : b -> b
arrow b : a -> a
comp a . a = a
comp b . b = b
"""

Z3_TEXT = """\
gencat Z3
idbound 0
object o
arrow g : o -> o
arrow h : o -> o
comp g . g = h
comp g . h = o
comp h . g = o
comp h . h = g
"""

# x <= y with identities at level 1; c is the declared cast of idof(x).idof(y)
CAST_TEXT = """\
gencat Cast
mode {mode}
idbound 1
object o
arrow x : o -> o
arrow y : o -> o
arrow c : y -> x
order x <= y
comp x . x = x
comp x . y = y
comp y . x = y
comp y . y = y
{coerce}"""


def T0() -> Presentation:
    return parse_presentation(T0_TEXT)


def T1() -> Presentation:
    return parse_presentation(T1_TEXT)


def T2() -> Presentation:
    return parse_presentation(T2_TEXT)


def Z3() -> Presentation:
    return parse_presentation(Z3_TEXT)


def cast(mode="strict") -> Presentation:
    coerce = "coerce idof(x) . idof(y) = c\n" if mode == LAX else ""
    return parse_presentation(CAST_TEXT.format(mode=mode, coerce=coerce))


def arrow_name(x: str, y: str) -> str:
    return f"{x}_{y}"


def thin(name: str, elements, relation, idbound: int = 0) -> Presentation:
    """Thin one-category of a finite preorder.

    ``relation`` is any collection of pairs; its reflexive-transitive closure
    is taken.  There is one arrow ``x_y`` for each related pair x != y.
    """
    elements = list(elements)
    le = {(x, x) for x in elements} | set(relation)
    changed = True
    while changed:
        changed = False
        for (a, b), (c, d) in itertools.product(list(le), repeat=2):
            if b == c and (a, d) not in le:
                le.add((a, d))
                changed = True

    def hom(x, y):
        return x if x == y else arrow_name(x, y)

    arrows = [(arrow_name(x, y), x, y) for x in elements for y in elements
              if x != y and (x, y) in le]
    comp = {}
    for f, x, y in arrows:
        for g, y2, z in arrows:
            if y2 == y:
                comp[(g, f)] = hom(x, z)
    return make(name, objects=elements, arrows=arrows, comp=comp, idbound=idbound)


def chain(n: int, name=None) -> Presentation:
    els = [f"c{i}" for i in range(n)]
    return thin(name or f"Chain{n}", els, [(els[i], els[i + 1]) for i in range(n - 1)])


def P2() -> Presentation:
    return make("P2", objects=["x", "y"], arrows=[("m", "x", "y")], idbound=0)


def L4() -> Presentation:
    """Diamond lattice bot < p, q < top."""
    return thin("L4", ["bot", "p", "q", "top"],
                [("bot", "p"), ("bot", "q"), ("p", "top"), ("q", "top")])


def L4_dup() -> Presentation:
    """L4 with a second top ``top2`` isomorphic to ``top``."""
    return thin("L4dup", ["bot", "p", "q", "top", "top2"],
                [("bot", "p"), ("bot", "q"), ("p", "top"), ("q", "top"),
                 ("top", "top2"), ("top2", "top")])


def L4_minus_bot() -> Presentation:
    return thin("L3", ["p", "q", "top"], [("p", "top"), ("q", "top")])


def V3() -> Presentation:
    """p, q below top and above bot, plus a separate atom r under top."""
    return thin("V5", ["bot", "p", "q", "r", "top"],
                [("bot", "p"), ("bot", "q"), ("bot", "r"),
                 ("p", "top"), ("q", "top"), ("r", "top")])


def discrete(name, elements) -> Presentation:
    return make(name, objects=list(elements))


def axiom_fixtures() -> list:
    return [T0(), T1(), T2(), P2(), Z3(), L4()]


# ---------------------------------------------------------------------------
# monotone maps between thin categories


def _thin_hom(C: Presentation, x: str, y: str):
    if x == y:
        return x
    name = arrow_name(x, y)
    return name if name in C.src else None


def thin_objects(C: Presentation) -> list:
    return [g for g in C.generators if C.gen_is_object(g)]


def monotone_functor(C: Presentation, D: Presentation, objmap: dict, name=None):
    """Functor between thin categories induced by a monotone map of objects."""
    from .kernel import Elem
    from .transform import FunctorMap

    m = {}
    for g in C.generators:
        img = _thin_hom(D, objmap[C.src[g]], objmap[C.tgt[g]])
        if img is None:
            raise ValueError(f"object map is not monotone at {g}")
        m[g] = Elem(img)
    return FunctorMap(name or "F", C, D, m)


def monotone_maps(C: Presentation, D: Presentation) -> list:
    """Every monotone object map C -> D, as dicts, in lexicographic order."""
    xs, ys = thin_objects(C), thin_objects(D)
    out = []
    for vals in itertools.product(ys, repeat=len(xs)):
        m = dict(zip(xs, vals))
        if all(_thin_hom(D, m[C.src[g]], m[C.tgt[g]]) is not None for g in C.generators):
            out.append(m)
    return out


def pointwise(F, G, name=None):
    """The unique transformation F => G between thin functors, or None."""
    from .kernel import Elem
    from .transform import Transformation

    theta = {}
    for x in thin_objects(F.dom):
        h = _thin_hom(F.cod, F(Elem(x)).gen, G(Elem(x)).gen)
        if h is None:
            return None
        theta[x] = Elem(h)
    return Transformation(name or f"{F.name}=>{G.name}", F, G, theta)


def galois_connection(C: Presentation, D: Presentation, fmap: dict, name="galois"):
    """Adjunction f -| g for a monotone object map f: C -> D between thin
    categories, or None when some g(d) = max{c : f(c) <= d} does not exist."""
    from .adjoint import AdjunctionWitness
    from .transform import compose_functors, identity_functor

    xs = thin_objects(C)
    gmap = {}
    for d in thin_objects(D):
        below = [c for c in xs if _thin_hom(D, fmap[c], d) is not None]
        top = [c for c in below if all(_thin_hom(C, b, c) is not None for b in below)]
        if len(top) != 1:
            return None
        gmap[d] = top[0]
    try:
        f = monotone_functor(C, D, fmap, "f")
        g = monotone_functor(D, C, gmap, "g")
    except ValueError:
        return None
    eta = pointwise(identity_functor(C), compose_functors(g, f), "eta")
    eps = pointwise(compose_functors(f, g), identity_functor(D), "eps")
    if eta is None or eps is None:
        return None
    return AdjunctionWitness(f, g, eta, eps, name)


# ---------------------------------------------------------------------------
# small diagram shapes

SHAPES = {
    "arrow": dict(objects=["s", "t"], arrows=[("f", "s", "t")]),
    "pair": dict(objects=["s", "t"], arrows=[("u", "s", "t"), ("v", "s", "t")]),
    # height 2: a loop t on the arrow f
    "I2": dict(objects=["a", "b"], arrows=[("f", "a", "b"), ("t", "f", "f")],
               comp={("t", "t"): "t"}),
}


def shape(name: str) -> Presentation:
    return make(name, idbound=0, **SHAPES[name])


def diagram_family(C: Presentation, max_discrete: int = 4) -> list:
    """Covariant diagrams in C over the discrete shapes with up to
    ``max_discrete`` objects and over the arrow, pair and I2 shapes."""
    from .kernel import Elem
    from .limits import Diagram, PRODUCT, make_standard_diagram
    from .transform import FunctorMap

    objs = [Elem(g) for g in sorted(C.generators) if C.gen_is_object(g)]
    out = []
    for n in range(max_discrete + 1):
        for combo in itertools.product(objs, repeat=n):
            out.append(make_standard_diagram(PRODUCT, C, combo))
    for x, y in itertools.product(objs, repeat=2):
        homs = C.hom_index.get((x, y), [])
        if not homs:
            continue
        I = shape("arrow")
        for h in homs:
            out.append(Diagram(I, FunctorMap("arrow", I, C, {"s": x, "t": y, "f": h}), "arrow"))
        I = shape("pair")
        for u, v in itertools.product(homs, repeat=2):
            out.append(Diagram(I, FunctorMap("pair", I, C, {"s": x, "t": y, "u": u, "v": v}),
                               "pair"))
        I = shape("I2")
        for h in homs:
            out.append(Diagram(I, FunctorMap("I2", I, C, {"a": x, "b": y, "f": h,
                                                           "t": C.ident(h)}), "I2"))
    return out
