"""Functors, morphisms of functors, natural transformations and their
vertical and star composites."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Optional

from .kernel import (Elem, GencatError, IdentityClash, IncompletePresentation,
                     Presentation, Report, _composites)

CO, CONTRA, UPTO = "co", "contra", "upto-objects"


class FunctorError(GencatError):
    pass


@dataclass(frozen=True)
class FunctorMap:
    name: str = field(compare=False)
    dom: Presentation
    cod: Presentation
    map: dict
    variance: str = CO
    cellular: bool = False

    def __call__(self, e: Elem) -> Elem:
        e = self.dom.norm(e)
        try:
            img = self.map[e.gen]
        except KeyError:
            raise FunctorError(f"{self.name} is undefined on {e.gen}") from None
        img = self.cod.norm(img)
        for _ in range(e.level):
            img = self.cod.ident(img)
        return img


def identity_functor(C: Presentation) -> FunctorMap:
    return FunctorMap(f"id_{C.name}", C, C, {g: Elem(g) for g in C.generators})


def constant_functor(C: Presentation, D: Presentation, value: Elem, name=None) -> FunctorMap:
    # objects must go to objects; everything else collapses onto value as well
    return FunctorMap(name or f"const_{value}", C, D, {g: value for g in C.generators})


def _safe_mul(C, a, b):
    if a is None or b is None or not C.composable(a, b):
        return None
    try:
        return C.compose(a, b)
    except (IncompletePresentation, IdentityClash):
        return None


def check_functor(F: FunctorMap) -> Report:
    C, D = F.dom, F.cod
    rep = Report(f"functor {F.name}")
    for g in sorted(C.generators):
        if g not in F.map:
            rep.add("functor-total", (Elem(g),), f"{F.name} has no value at {g}")
            continue
        D.norm(F.map[g])  # raises UnknownGenerator on dangling references
    if not rep.passed:
        return rep
    E = C.elements()
    co, contra = F.variance == CO, F.variance == CONTRA

    for a in E:
        Fa = F(a)
        exempt = F.variance == UPTO and C.is_object(a)
        s_img, t_img = (D.target(Fa), D.source(Fa)) if contra else (D.source(Fa), D.target(Fa))
        if not exempt and F(C.source(a)) != s_img:
            rep.add("functor-source", (a,), f"{F.name}(source {a}) = {F(C.source(a))}, expected {s_img}")
        if not exempt and F(C.target(a)) != t_img:
            rep.add("functor-target", (a,), f"{F.name}(target {a}) = {F(C.target(a))}, expected {t_img}")
        if F.variance == UPTO:
            if not C.is_object(a) and D.is_identity(Fa) != C.is_identity(a):
                rep.add("functor-identity", (a,), f"{a} and {F.name}({a}) = {Fa} disagree on being identities")
        elif F(C.ident(a)) != D.ident(Fa):
            rep.add("functor-identity", (a,), f"{F.name}(idof({a})) != idof({Fa})")
        if F.cellular and D.source(Fa) == Fa and C.source(a) != a:
            rep.add("functor-cellular", (a,), f"{F.name} sends {a} to a 0-cell")

    if co or contra:
        for a in E:
            for b in E:
                if a != b and C.leq(a, b):
                    x, y = (F(b), F(a)) if contra else (F(a), F(b))
                    if not D.leq(x, y):
                        rep.add("functor-order", (a, b), f"{a} <= {b} but images are not ordered")

    table, _ = _composites(C, E)
    for (a, b), ab in table.items():
        if F.variance == UPTO and (C.is_object(a) or C.is_object(b)):
            continue  # objects need not map to identities
        want = _safe_mul(D, F(b), F(a)) if contra else _safe_mul(D, F(a), F(b))
        if want != F(ab):
            rep.add("functor-comp", (a, b), f"{F.name}({a}.{b}) = {F(ab)} but the image composite is {want}")
    return rep.sorted()


_VAR = {(CO, CO): CO, (CONTRA, CONTRA): CO, (CO, CONTRA): CONTRA,
        (CONTRA, CO): CONTRA, (CO, UPTO): UPTO}


def compose_functors(G: FunctorMap, F: FunctorMap) -> FunctorMap:
    """G after F."""
    if F.cod != G.dom:
        raise FunctorError(f"cannot compose {G.name} after {F.name}: "
                           f"{F.cod.name} is not {G.dom.name}")
    try:
        var = _VAR[(G.variance, F.variance)]
    except KeyError:
        raise FunctorError(f"variances {G.variance} after {F.variance} do not compose") from None
    return FunctorMap(f"{G.name}*{F.name}", F.dom, G.cod,
                      {g: G(F(Elem(g))) for g in F.dom.generators}, var,
                      F.cellular and G.cellular)


def same_functor(F: FunctorMap, G: FunctorMap) -> bool:
    """Extensional equality on elements up to the domain's bound."""
    return (F.dom == G.dom and F.cod == G.cod
            and all(F(e) == G(e) for e in F.dom.elements()))


# ---------------------------------------------------------------------------
# transformations


@dataclass(frozen=True)
class Transformation:
    """theta-form keeps one component per generator; raw pairs keep the two
    maps of a (not necessarily natural) morphism of functors."""
    name: str = field(compare=False)
    source: FunctorMap
    target: FunctorMap
    theta: dict = field(default_factory=dict)
    raw: Optional[tuple] = None

    def __call__(self, e: Elem) -> Elem:
        e = self.source.dom.norm(e)
        if e.level:
            raise GencatError(f"{self.name} has no component at identity level {e}")
        try:
            return self.target.cod.norm(self.theta[e.gen])
        except KeyError:
            raise GencatError(f"{self.name} has no component at {e}") from None

    @property
    def dom(self) -> Presentation:
        return self.source.dom

    @property
    def cod(self) -> Presentation:
        return self.source.cod


def as_pair(t: Transformation) -> tuple:
    """(theta1, theta2) keyed by domain generators."""
    if t.raw is not None:
        return t.raw
    C = t.dom
    th1, th2 = {}, {}
    for g in C.generators:
        a = Elem(g)
        if C.target(a).gen in t.theta:
            th1[a] = t(C.target(a))
        if C.source(a).gen in t.theta:
            th2[a] = t(C.source(a))
    return th1, th2


def _boundary_gens(C):
    used = set()
    for g in C.generators:
        used.add(C.src[g])
        used.add(C.tgt[g])
    return sorted(used)


def check_transformation(t: Transformation, require_natural: bool = True) -> Report:
    F, G = t.source, t.target
    C, D = t.dom, t.cod
    rep = Report(f"transformation {t.name}")
    if F.dom != G.dom or F.cod != G.cod:
        rep.add("transformation-shape", (), f"{F.name} and {G.name} have different shapes")
        return rep

    if t.raw is None:
        for g in _boundary_gens(C):
            if g not in t.theta:
                rep.add("natural-missing", (Elem(g),), f"{t.name} has no component at {g}")
        if not rep.passed:
            return rep
        for g in sorted(C.generators):
            f = Elem(g)
            left = _safe_mul(D, t(C.target(f)), F(f))
            right = _safe_mul(D, G(f), t(C.source(f)))
            if left is None or right is None or left != right:
                rep.add("natural-relation", (f,),
                        f"{t.name}(target {f}).{F.name}({f}) = {left} but "
                        f"{G.name}({f}).{t.name}(source {f}) = {right}")
        return rep.sorted()

    th1, th2 = t.raw
    for a in sorted(set(th1) | set(th2)):
        if a not in th1 or a not in th2:
            rep.add("mof-missing", (a,), f"only one of theta1, theta2 is given at {a}")
            continue
        left = _safe_mul(D, th1[a], F(a))
        right = _safe_mul(D, G(a), th2[a])
        if left is None or right is None or left != right:
            rep.add("mof-relation", (a,), f"theta1({a}).{F.name}({a}) = {left} but "
                    f"{G.name}({a}).theta2({a}) = {right}")
    if require_natural:
        keys = sorted(set(th1) & set(th2))
        for a, b in itertools.combinations(keys, 2):
            if C.target(a) == C.target(b) and th1[a] != th1[b]:
                rep.add("natural-target", (a, b), f"theta1 differs on {a}, {b} with equal targets")
            if C.source(a) == C.source(b) and th2[a] != th2[b]:
                rep.add("natural-source", (a, b), f"theta2 differs on {a}, {b} with equal sources")
        for a in keys:
            if C.is_identity(a) and th1[a] != th2[a]:
                rep.add("natural-identity", (a,), f"theta1({a}) != theta2({a}) on an identity")
    return rep.sorted()


def identity_transformation(F: FunctorMap) -> Transformation:
    D = F.cod
    return Transformation(f"1_{F.name}", F, F,
                          {g: D.ident(F(Elem(g))) for g in _boundary_gens(F.dom)})


def _pointwise(name, src, tgt, keys, value):
    theta = {}
    for g in keys:
        v = value(Elem(g))
        if v is None:
            raise GencatError(f"{name}: component at {g} is undefined")
        theta[g] = v
    return Transformation(name, src, tgt, theta)


def vertical_compose(beta: Transformation, alpha: Transformation) -> Transformation:
    """(beta . alpha)(X) = beta(X) . alpha(X)."""
    if alpha.target != beta.source:
        raise GencatError(f"cannot stack {beta.name} on {alpha.name}: "
                          f"{alpha.target.name} is not {beta.source.name}")
    D = alpha.cod
    keys = sorted(set(alpha.theta) & set(beta.theta))
    return _pointwise(f"{beta.name}.{alpha.name}", alpha.source, beta.target, keys,
                      lambda x: _safe_mul(D, beta(x), alpha(x)))


def whisker_left(G: FunctorMap, alpha: Transformation) -> Transformation:
    """G o alpha : G F => G F'."""
    return Transformation(f"{G.name}{alpha.name}", compose_functors(G, alpha.source),
                          compose_functors(G, alpha.target),
                          {g: G(alpha(Elem(g))) for g in alpha.theta})


def whisker_right(beta: Transformation, F: FunctorMap) -> Transformation:
    """beta o F : G F => G' F."""
    def comp_at(g):
        x = F(Elem(g))
        return beta(x) if x.level == 0 else None
    return _pointwise(f"{beta.name}{F.name}", compose_functors(beta.source, F),
                      compose_functors(beta.target, F),
                      [g for g in F.dom.generators if F(Elem(g)).gen in beta.theta],
                      lambda x: comp_at(x.gen))


def star_forms(beta: Transformation, alpha: Transformation) -> tuple:
    """Both expansions of beta * alpha for alpha: F => G (C -> D) and
    beta: F' => G' (D -> E).

    first:  beta(G X) . F'(alpha X)
    second: G'(alpha X) . beta(F X)
    """
    if alpha.cod != beta.dom:
        raise GencatError(f"star: {alpha.name} lands in {alpha.cod.name}, "
                          f"{beta.name} starts at {beta.dom.name}")
    first = vertical_compose(whisker_right(beta, alpha.target),
                             whisker_left(beta.source, alpha))
    second = vertical_compose(whisker_left(beta.target, alpha),
                              whisker_right(beta, alpha.source))
    return first, second


def star_compose(beta: Transformation, alpha: Transformation) -> Transformation:
    first, second = star_forms(beta, alpha)
    if first.theta != second.theta:
        raise GencatError(f"{beta.name} * {alpha.name}: the two expansions differ, "
                          "so one of the inputs is not natural")
    return Transformation(f"{beta.name}*{alpha.name}", first.source, first.target,
                          first.theta)


def same_transformation(s: Transformation, t: Transformation) -> bool:
    return (same_functor(s.source, t.source) and same_functor(s.target, t.target)
            and s.theta == t.theta)


# ---------------------------------------------------------------------------
# isomorphism of functors


def functor_iso(F: FunctorMap, G: FunctorMap):
    """Search invertible-valued (theta1, theta2) with
    theta1(a) F(a) = G(a) theta2(a) for every element a.

    Returns ``(True, (theta1, theta2))`` or ``(False, witness_element)``.
    """
    from .invertibles import invertible_elements

    if F.dom != G.dom or F.cod != G.cod:
        raise FunctorError("functor_iso needs a common domain and codomain")
    D = F.cod
    inv = invertible_elements(D)
    th1, th2 = {}, {}
    for a in F.dom.elements():
        Fa, Ga = F(a), G(a)
        for t1, t2 in itertools.product(inv, repeat=2):
            left = _safe_mul(D, t1, Fa)
            if left is not None and left == _safe_mul(D, Ga, t2):
                th1[a], th2[a] = t1, t2
                break
        else:
            return False, a
    return True, (th1, th2)
