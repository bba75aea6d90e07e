"""Adjunctions, hom-set bijections, fullness and faithfulness, and the two
equivalence decisions."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional

from .invertibles import (category_of_invertibles, inverse, is_invertible,
                          lift_functor)
from .kernel import Elem, GencatError, Presentation, Report, hom_set, objects
from .transform import (FunctorMap, Transformation, _boundary_gens, _safe_mul,
                        check_functor, check_transformation, identity_transformation,
                        vertical_compose, whisker_left, whisker_right)

TRUE, FALSE, INCONCLUSIVE = "true", "false", "inconclusive"
DEFAULT_BUDGET = 1_000_000


@dataclass(frozen=True)
class AdjunctionWitness:
    F: FunctorMap          # C -> D
    G: FunctorMap          # D -> C
    eta: Transformation    # id_C => G F
    epsilon: Transformation  # F G => id_D
    name: str = "adjunction"


def _triangle(rep, label, composite, unit, witness_name):
    try:
        got = composite()
    except GencatError as exc:
        rep.add(label, (), f"{witness_name}: {exc}")
        return
    for g in sorted(unit.theta):
        have = got.theta.get(g)
        if have != unit.theta[g]:
            rep.add(label, (Elem(g),), f"{witness_name} at {g} is {have}, "
                    f"expected {unit.theta[g]}")


def check_adjunction(w: AdjunctionWitness) -> Report:
    rep = Report(f"adjunction {w.name}")
    for part in (check_functor(w.F), check_functor(w.G),
                 check_transformation(w.eta), check_transformation(w.epsilon)):
        rep.extend(part)
    if not rep.passed:
        return rep.sorted()
    F, G, eta, eps = w.F, w.G, w.eta, w.epsilon
    # (G eps) . (eta G) = 1_G
    _triangle(rep, "triangle-right",
              lambda: vertical_compose(whisker_left(G, eps), whisker_right(eta, G)),
              identity_transformation(G), "(G eps).(eta G)")
    # (eps F) . (F eta) = 1_F
    _triangle(rep, "triangle-left",
              lambda: vertical_compose(whisker_right(eps, F), whisker_left(F, eta)),
              identity_transformation(F), "(eps F).(F eta)")
    return rep.sorted()


# ---------------------------------------------------------------------------
# hom-set bijection


@dataclass
class HomBijection:
    phi: dict
    psi: dict
    report: Report


def _phi(w, f, v):
    return _safe_mul(w.G.cod, w.G(v), w.eta(f))


def _psi(w, g, u):
    return _safe_mul(w.F.cod, w.epsilon(g), w.F(u))


def hom_bijection(w: AdjunctionWitness, f: Elem, g: Elem) -> HomBijection:
    """phi: hom(F f, g) -> hom(f, G g) and its inverse psi."""
    C, D = w.F.dom, w.F.cod
    F, G = w.F, w.G
    rep = Report(f"hom bijection {w.name} at ({f}, {g})")
    left = hom_set(D, F(f), g)
    right = hom_set(C, f, G(g))
    phi = {v: _phi(w, f, v) for v in left}
    psi = {u: _psi(w, g, u) for u in right}
    for v in left:
        if phi[v] not in psi or psi[phi[v]] != v:
            rep.add("psi-phi", (v,), f"psi(phi({v})) = {psi.get(phi[v])}")
    for u in right:
        if psi[u] not in phi or phi[psi[u]] != u:
            rep.add("phi-psi", (u,), f"phi(psi({u})) = {phi.get(psi[u])}")

    # phi(u . F v) = phi(u) . v   for v in hom(f', f)
    for v in C.elements():
        if C.target(v) != C.norm(f):
            continue
        f2 = C.source(v)
        for u in left:
            uv = _safe_mul(D, u, F(v))
            if uv is None:
                continue
            lhs = _phi(w, f2, uv)
            rhs = _safe_mul(C, phi[u], v)
            if lhs != rhs:
                rep.add("natural-in-source", (u, v), f"phi({u}.F({v})) = {lhs} but phi({u}).{v} = {rhs}")
    # phi(v' . v) = G(v') . phi(v)   for v' in hom(g, g')
    for v2 in D.elements():
        if D.source(v2) != D.norm(g):
            continue
        for v in left:
            vv = _safe_mul(D, v2, v)
            if vv is None:
                continue
            lhs = _phi(w, f, vv)
            rhs = _safe_mul(C, G(v2), phi[v])
            if lhs != rhs:
                rep.add("natural-in-target", (v2, v), f"phi({v2}.{v}) = {lhs} but G({v2}).phi({v}) = {rhs}")
    return HomBijection(phi, psi, rep.sorted())


def all_hom_bijections(w: AdjunctionWitness) -> Report:
    """hom_bijection over every pair of objects."""
    rep = Report(f"hom bijections {w.name}")
    for f in objects(w.F.dom):
        for g in objects(w.F.cod):
            rep.extend(hom_bijection(w, f, g).report)
    return rep.sorted()


# ---------------------------------------------------------------------------
# fullness and faithfulness


@dataclass(frozen=True)
class FullFaithful:
    is_full: bool
    is_faithful: bool
    not_full_at: Optional[tuple] = None
    not_faithful_at: Optional[tuple] = None


def fullness_faithfulness(F: FunctorMap) -> FullFaithful:
    """Injectivity and surjectivity of F on hom(a, b) for every pair of
    elements a, b that occur as a boundary."""
    C, D = F.dom, F.cod
    E = sorted({x for e in C.elements() for x in (C.source(e), C.target(e))})
    full_w = faith_w = None
    for a, b in itertools.product(E, repeat=2):
        homs = hom_set(C, a, b)
        images = [F(e) for e in homs]
        if faith_w is None and len(set(images)) < len(images):
            faith_w = (a, b)
        if full_w is None and not set(hom_set(D, F(a), F(b))) <= set(images):
            full_w = (a, b)
    return FullFaithful(full_w is None, faith_w is None, full_w, faith_w)


# ---------------------------------------------------------------------------
# natural equivalence


class _Budget:
    def __init__(self, limit):
        self.left = limit

    def tick(self, n=1):
        self.left -= n
        if self.left < 0:
            raise _OutOfBudget


class _OutOfBudget(Exception):
    pass


@dataclass
class EquivalenceResult:
    verdict: str
    witness: Optional[AdjunctionWitness] = None
    reason: str = ""

    def __bool__(self):
        return self.verdict == TRUE


def _iso_between(D, a, b, budget):
    """An invertible element a -> b, or None."""
    for e in hom_set(D, a, b):
        budget.tick()
        if is_invertible(D, e):
            return e
    return None


def _preimage(F, a, b, target, budget):
    C = F.dom
    for c in hom_set(C, a, b):
        budget.tick()
        if F(c) == target:
            return c
    return None


def is_natural_equivalence(F: FunctorMap, budget: int = DEFAULT_BUDGET) -> EquivalenceResult:
    C, D = F.dom, F.cod
    ff = fullness_faithfulness(F)
    if not ff.is_full:
        return EquivalenceResult(FALSE, reason=f"not full at {ff.not_full_at}")
    if not ff.is_faithful:
        return EquivalenceResult(FALSE, reason=f"not faithful at {ff.not_faithful_at}")
    B = _Budget(budget)
    try:
        # choose, for each object Y of D, an object X of C and an iso F X -> Y
        choice = {}
        for Y in objects(D):
            for X in objects(C):
                i = D.ident(Y) if F(X) == Y else _iso_between(D, F(X), Y, B)
                if i is not None:
                    choice[Y] = (X, i)
                    break
            else:
                return EquivalenceResult(
                    FALSE, reason=f"not essentially surjective: {Y} is not isomorphic to any image")
        Gmap = {}
        for g in sorted(D.generators):
            d = Elem(g)
            if D.is_object(d):
                Gmap[g] = choice[d][0]
                continue
            X, i = choice[D.source(d)]
            X2, i2 = choice[D.target(d)]
            target = _safe_mul(D, inverse(D, i2), _safe_mul(D, d, i))
            c = _preimage(F, X, X2, target, B)
            if c is None:
                return EquivalenceResult(FALSE, reason=f"no preimage for {d}")
            Gmap[g] = c
        G = FunctorMap(f"{F.name}^-", D, C, Gmap)
        eps = Transformation("eps", _compose(F, G), _identity(D),
                             {y: choice[Elem(y)][1] for y in _boundary_gens(D)})
        eta_theta = {}
        for x in _boundary_gens(C):
            X = Elem(x)
            X2, i = choice[F(X)]
            c = _preimage(F, X, X2, inverse(D, i), B)
            if c is None:
                return EquivalenceResult(FALSE, reason=f"no unit component at {X}")
            eta_theta[x] = c
        eta = Transformation("eta", _identity(C), _compose(G, F), eta_theta)
    except _OutOfBudget:
        return EquivalenceResult(INCONCLUSIVE, reason=f"node budget {budget} exhausted")
    w = AdjunctionWitness(F, G, eta, eps, f"{F.name} equivalence")
    rep = check_adjunction(w)
    if not rep.passed:
        return EquivalenceResult(FALSE, w, reason=rep.findings[0].line())
    return EquivalenceResult(TRUE, w)


def _identity(C):
    from .transform import identity_functor
    return identity_functor(C)


def _compose(G, F):
    from .transform import compose_functors
    return compose_functors(G, F)


# ---------------------------------------------------------------------------
# equivalence through categories of invertibles


@dataclass
class CategoryEquivalence:
    verdict: str
    mapping: Optional[dict] = None
    lifts: Optional[bool] = None

    def __bool__(self):
        return self.verdict == TRUE


def presentation_isomorphism(P: Presentation, Q: Presentation, budget: int = DEFAULT_BUDGET):
    """Backtracking search for a generator bijection preserving objects,
    boundaries and the composition table.  Returns the mapping, None, or
    raises _OutOfBudget."""
    if len(P.generators) != len(Q.generators) or len(P.comp) != len(Q.comp):
        return None
    B = _Budget(budget)

    def sig(C, g):
        ins = sum(1 for h in C.generators if C.tgt[h] == g and h != g)
        outs = sum(1 for h in C.generators if C.src[h] == g and h != g)
        return (C.gen_is_object(g), ins, outs)

    order = sorted(P.generators, key=lambda g: (not P.gen_is_object(g), g))
    qsig = {g: sig(Q, g) for g in Q.generators}

    def consistent(m):
        for g, h in m.items():
            s, t = P.src[g], P.tgt[g]
            if s in m and m[s] != Q.src[h]:
                return False
            if t in m and m[t] != Q.tgt[h]:
                return False
        for (a, b), c in P.comp.items():
            if a in m and b in m and c in m:
                if Q.comp.get((m[a], m[b])) != m[c]:
                    return False
        return True

    def go(i, m, used):
        if i == len(order):
            return dict(m)
        g = order[i]
        for h in sorted(Q.generators):
            B.tick()
            if h in used or qsig[h] != sig(P, g):
                continue
            m[g] = h
            used.add(h)
            if consistent(m):
                r = go(i + 1, m, used)
                if r is not None:
                    return r
            del m[g]
            used.discard(h)
        return None

    return go(0, {}, set())


def categories_equivalent(C: Presentation, D: Presentation, F: FunctorMap = None,
                          budget: int = DEFAULT_BUDGET) -> CategoryEquivalence:
    QC, QD = category_of_invertibles(C), category_of_invertibles(D)
    try:
        m = presentation_isomorphism(QC.quotient, QD.quotient, budget)
    except _OutOfBudget:
        return CategoryEquivalence(INCONCLUSIVE)
    if m is None:
        return CategoryEquivalence(FALSE)
    lifts = None
    if F is not None:
        lifted = lift_functor(F, QC, QD)
        images = {g: lifted.map[g].gen for g in QC.quotient.generators}
        lifts = (len(set(images.values())) == len(images)
                 and check_functor(lifted).passed)
    return CategoryEquivalence(TRUE, m, lifts)
