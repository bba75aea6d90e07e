"""Cones and cocones, limits by universal property, standard diagrams, the
construction of finite limits from products and equalizers, and exactness
of functors.

A cone has one leg per boundary generator of the index (every generator
that is the source or target of some generator, so every object).  The base
clauses are checked per leg for targets and per non-object generator for
commutation.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Optional

from .kernel import Elem, GencatError, Presentation, Report, height, hom_set, make, opposite
from .transform import CO, UPTO, FunctorMap, _safe_mul, compose_functors

CONE, COCONE = "cone", "cocone"
PRODUCT, EQUALIZER, COPRODUCT, COEQUALIZER = "product", "equalizer", "coproduct", "coequalizer"
KINDS = (PRODUCT, EQUALIZER, COPRODUCT, COEQUALIZER)


class DiagramError(GencatError):
    pass


@dataclass(frozen=True)
class Diagram:
    index: Presentation
    base: FunctorMap
    kind: str = "diagram"

    @property
    def target(self) -> Presentation:
        return self.base.cod

    @property
    def height(self) -> float:
        return max((height(self.index, Elem(g)) for g in self.index.generators), default=0)

    def keys(self) -> list:
        I = self.index
        used = {I.src[g] for g in I.generators} | {I.tgt[g] for g in I.generators}
        return sorted(used)

    def arrows(self) -> list:
        return [g for g in sorted(self.index.generators) if not self.index.gen_is_object(g)]

    def alpha(self, i: str) -> Elem:
        return self.base(Elem(i))


@dataclass(frozen=True)
class Cone:
    orientation: str
    legs: tuple       # sorted (key, Elem) pairs
    vertex: Elem

    @classmethod
    def of(cls, orientation, legs: dict, vertex: Elem) -> "Cone":
        return cls(orientation, tuple(sorted(legs.items())), vertex)

    def leg(self, i: str) -> Elem:
        return dict(self.legs)[i]

    def text(self) -> str:
        lines = [f"{self.orientation}"] + [f"leg {i} = {e}" for i, e in self.legs]
        lines.append(f"vertex = {self.vertex}")
        return "\n".join(lines) + "\n"


def _apex(C, e, orientation):
    return C.source(e) if orientation == CONE else C.target(e)


def _foot(C, e, orientation):
    return C.target(e) if orientation == CONE else C.source(e)


def check_cone(c: Cone, d: Diagram) -> Report:
    C, I = d.target, d.index
    rep = Report(f"{c.orientation} over {d.base.name}")
    legs = dict(c.legs)
    keys = d.keys()
    for i in keys:
        if i not in legs:
            rep.add("cone-missing", (Elem(i),), f"no leg at {i}")
    for i in sorted(legs):
        if i not in keys:
            rep.add("cone-extra", (Elem(i),), f"{i} is not a boundary generator of the index")
    if not rep.passed:
        return rep.sorted()
    for i in keys:
        e = C.norm(legs[i])
        if _apex(C, e, c.orientation) != C.norm(c.vertex):
            rep.add("cone-vertex", (Elem(i), e), f"leg {e} does not share the vertex {c.vertex}")
        if _foot(C, e, c.orientation) != d.alpha(i):
            rep.add("cone-base", (Elem(i), e), f"leg {e} does not end at {d.alpha(i)}")
    for g in d.arrows():
        a = d.alpha(g)
        s, t = I.src[g], I.tgt[g]
        if c.orientation == CONE:
            got = _safe_mul(C, a, legs[s])
            if got != C.norm(legs[t]):
                rep.add("cone-commute", (Elem(g),), f"leg {t} = {legs[t]} but {a}.{legs[s]} = {got}")
        else:
            got = _safe_mul(C, legs[t], a)
            if got != C.norm(legs[s]):
                rep.add("cone-commute", (Elem(g),), f"leg {s} = {legs[s]} but {legs[t]}.{a} = {got}")
    return rep.sorted()


def vertex_candidates(C: Presentation, orientation: str) -> list:
    k = 0 if orientation == CONE else 1
    return sorted({st[k] for st in C.hom_index})


def enumerate_cones(d: Diagram, orientation: str = CONE) -> list:
    C = d.target
    keys = d.keys()
    homs = C.hom_index
    out = []
    for v in vertex_candidates(C, orientation):
        if orientation == CONE:
            choices = [homs.get((v, d.alpha(i)), []) for i in keys]
        else:
            choices = [homs.get((d.alpha(i), v), []) for i in keys]
        for pick in itertools.product(*choices):
            c = Cone.of(orientation, dict(zip(keys, pick)), v)
            if check_cone(c, d).passed:
                out.append(c)
    return out


def mediators(c: Cone, other: Cone, C: Presentation) -> list:
    """Every lambda with other = c . lambda (cones) or lambda . c (cocones)."""
    legs, want = dict(c.legs), dict(other.legs)
    if c.orientation == CONE:
        cands = hom_set(C, other.vertex, c.vertex)
        mul = lambda lam, i: _safe_mul(C, legs[i], lam)
    else:
        cands = hom_set(C, c.vertex, other.vertex)
        mul = lambda lam, i: _safe_mul(C, lam, legs[i])
    return [lam for lam in cands if all(mul(lam, i) == C.norm(want[i]) for i in legs)]


def is_limit(c: Cone, d: Diagram, cones=None) -> tuple:
    """(verdict, Report).  Quantifies over every cone over the same base."""
    rep = check_cone(c, d)
    if not rep.passed:
        return False, rep
    C = d.target
    for other in (cones if cones is not None else enumerate_cones(d, c.orientation)):
        m = mediators(c, other, C)
        if len(m) != 1:
            rule = "no-mediator" if not m else "many-mediators"
            rep.add(rule, (other.vertex,), f"{len(m)} mediating elements from the cone at {other.vertex}")
    return rep.passed, rep.sorted()


def find_limits(d: Diagram, orientation: str = CONE) -> list:
    cones = enumerate_cones(d, orientation)
    return [c for c in cones if is_limit(c, d, cones)[0]]


def find_colimits(d: Diagram) -> list:
    return find_limits(d, COCONE)


def opposite_diagram(d: Diagram) -> Diagram:
    Iop, Cop = opposite(d.index), opposite(d.target)
    base = FunctorMap(d.base.name + "_op", Iop, Cop, dict(d.base.map), d.base.variance)
    return Diagram(Iop, base, d.kind)


# ---------------------------------------------------------------------------
# standard diagrams


def _labelled_product(C: Presentation, labelled, kind=PRODUCT) -> Diagram:
    labels = [lab for lab, _ in labelled]
    I = make("disc" + str(len(labels)), objects=labels, idbound=0)
    values = {lab: C.norm(e) for lab, e in labelled}
    variance = CO if all(C.is_object(e) for e in values.values()) else UPTO
    return Diagram(I, FunctorMap(kind, I, C, values, variance), kind)


def make_standard_diagram(kind: str, C: Presentation, data) -> Diagram:
    if kind in (PRODUCT, COPRODUCT):
        return _labelled_product(C, [(f"i{n}", e) for n, e in enumerate(data)], kind)
    if kind in (EQUALIZER, COEQUALIZER):
        f, g = (C.norm(x) for x in data)
        if C.source(f) != C.source(g) or C.target(f) != C.target(g):
            raise DiagramError(f"{f} and {g} are not parallel")
        I = make("pair", objects=["s", "t"], arrows=[("u", "s", "t"), ("v", "s", "t")], idbound=0)
        base = FunctorMap(kind, I, C, {"s": C.source(f), "t": C.target(f), "u": f, "v": g})
        return Diagram(I, base, kind)
    raise DiagramError(f"unknown standard diagram {kind}")


def restrict(d: Diagram, k) -> Diagram:
    """The diagram on generators of height <= k.  Identities come along
    automatically since they are not stored."""
    I = d.index
    keep = [g for g in I.generators if height(I, Elem(g)) <= k]
    objs = [g for g in keep if I.gen_is_object(g)]
    arrows = [(g, I.src[g], I.tgt[g]) for g in keep if not I.gen_is_object(g)]
    comp = {p: v for p, v in I.comp.items() if p[0] in keep and p[1] in keep}
    J = make(f"{I.name}<={k}", objects=objs, arrows=arrows, comp=comp, idbound=I.idbound)
    base = FunctorMap(d.base.name, J, d.target, {g: d.base.map[g] for g in keep}, d.base.variance)
    return Diagram(J, base, d.kind)


# ---------------------------------------------------------------------------
# construction from products and equalizers


@dataclass
class LimitConstruction:
    cone: Optional[Cone]
    missing: Optional[str] = None
    steps: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.cone is not None


class _Missing(Exception):
    pass


def _first_limit(d: Diagram, what: str):
    found = find_limits(d)
    if not found:
        raise _Missing(what)
    return found[0]


def _mediate(C, limit: Cone, legs: dict, vertex: Elem, what: str) -> Elem:
    other = Cone.of(CONE, legs, vertex)
    m = mediators(limit, other, C)
    if len(m) != 1:
        raise _Missing(f"{what} ({len(m)} mediators)")
    return m[0]


def _describe(labelled):
    return "product of [" + ", ".join(f"{lab}:{e}" for lab, e in labelled) + "]"


def construct_limit(d: Diagram) -> LimitConstruction:
    C = d.target
    h = d.height
    if h == math.inf:
        return LimitConstruction(None, "unsupported: the index has infinite height")
    steps = []
    keys = set(d.keys())
    mul = lambda a, b: _safe_mul(C, a, b)
    try:
        # height 0: a product over the objects
        base_keys = [i for i in sorted(keys) if height(d.index, Elem(i)) == 0]
        labelled = [(i, d.alpha(i)) for i in base_keys]
        sigma = _first_limit(_labelled_product(C, labelled), _describe(labelled))
        steps.append(f"height 0: product with vertex {sigma.vertex}")
        legs, L = dict(sigma.legs), sigma.vertex
        for k in range(0, int(h)):
            new = [g for g in d.arrows() if height(d.index, Elem(g)) == k + 1]
            if not new:
                continue
            # flattened product over the legs so far
            flat = [(i, d.alpha(i)) for i in sorted(legs)]
            P = _first_limit(_labelled_product(C, flat), _describe(flat))
            pl = dict(P.legs)
            u1 = _mediate(C, P, legs, L, f"u1 into {_describe(flat)}")
            # product over the targets of the new generators
            tops = [(g, C.target(d.alpha(g))) for g in new]
            Q = _first_limit(_labelled_product(C, tops), _describe(tops))
            u2 = _mediate(C, Q, {g: pl[d.index.tgt[g]] for g in new}, P.vertex, "u2")
            u3 = _mediate(C, Q, {g: mul(d.alpha(g), pl[d.index.src[g]]) for g in new},
                          P.vertex, "u3")
            f, g2 = mul(u2, u1), mul(u3, u1)
            if f is None or g2 is None:
                raise _Missing(f"composites u2.u1 / u3.u1 at height {k + 1}")
            eq = _first_limit(make_standard_diagram(EQUALIZER, C, (f, g2)),
                              f"equalizer of ({f}, {g2})")
            e = eq.leg("s")
            L = eq.vertex
            legs = {i: mul(mul(pl[i], u1), e) for i in sorted(legs)}
            for g in new:
                if g in keys:
                    legs[g] = mul(d.alpha(g), legs[d.index.src[g]])
            steps.append(f"height {k + 1}: u1={u1} u2={u2} u3={u3} e={e} vertex {L}")
        missing_keys = keys - set(legs)
        if missing_keys:
            raise _Missing(f"legs at {sorted(missing_keys)}")
    except _Missing as exc:
        return LimitConstruction(None, str(exc), steps)
    cone = Cone.of(CONE, legs, L)
    ok, rep = is_limit(cone, d)
    if not ok:
        return LimitConstruction(None, f"assembled cone is not a limit: {rep.findings[0].line()}", steps)
    return LimitConstruction(cone, None, steps)


# ---------------------------------------------------------------------------
# exactness


def image_cone(F: FunctorMap, c: Cone) -> Cone:
    return Cone.of(c.orientation, {i: F(e) for i, e in c.legs}, F(c.vertex))


def pushforward(F: FunctorMap, d: Diagram) -> Diagram:
    return Diagram(d.index, compose_functors(F, d.base), d.kind)


@dataclass
class Exactness:
    preserves_limits: bool
    preserves_colimits: bool
    creates_limits: bool
    creates_colimits: bool
    report: Report


def standard_sample(C: Presentation, max_elems: int = 3) -> list:
    """All standard diagrams over at most ``max_elems`` elements."""
    E = C.elements()
    out = []
    for n in range(max_elems + 1):
        for combo in itertools.combinations(E, n):
            out.append(make_standard_diagram(PRODUCT, C, combo))
            out.append(make_standard_diagram(COPRODUCT, C, combo))
    for f, g in itertools.combinations_with_replacement(E, 2):
        if C.source(f) == C.source(g) and C.target(f) == C.target(g):
            out.append(make_standard_diagram(EQUALIZER, C, (f, g)))
            out.append(make_standard_diagram(COEQUALIZER, C, (f, g)))
    return out


def _label(d: Diagram) -> tuple:
    return (d.kind,) + tuple(f"{i}={d.alpha(i)}" for i in sorted(d.index.generators))


def exactness_check(F: FunctorMap, sample=None) -> Exactness:
    rep = Report(f"exactness of {F.name}")
    sample = standard_sample(F.dom) if sample is None else sample
    for orient, pres, crea in ((CONE, "preserve-limit", "create-limit"),
                               (COCONE, "preserve-colimit", "create-colimit")):
        for d in sample:
            lims = find_limits(d, orient)
            Fd = pushforward(F, d)
            cones = enumerate_cones(Fd, orient)
            for c in lims:
                img = image_cone(F, c)
                if not is_limit(img, Fd, cones)[0]:
                    rep.add(pres, _label(d), f"image of the {orient} at {c.vertex} is not universal")
            images = [image_cone(F, c) for c in lims]
            for c in [c for c in cones if is_limit(c, Fd, cones)[0]]:
                n = images.count(c)
                if n != 1:
                    rep.add(crea, _label(d) + (c.vertex,),
                            f"{n} preimage {orient}s for the universal {orient} at {c.vertex}")
    rules = rep.rules()
    return Exactness("preserve-limit" not in rules, "preserve-colimit" not in rules,
                     "create-limit" not in rules, "create-colimit" not in rules, rep.sorted())
