"""Inverses, cancellation, the monic/epic/iso class relations and the
category of invertibles."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional

from .kernel import Elem, Presentation, make
from .transform import FunctorMap, _safe_mul

MONIC, EPIC, ISO = "monic", "epic", "iso"


def inverse(C: Presentation, e: Elem) -> Optional[Elem]:
    e = C.norm(e)
    one_t, one_s = C.ident(C.target(e)), C.ident(C.source(e))
    for b in C.elements(max(C.idbound, e.level)):
        if _safe_mul(C, e, b) == one_t and _safe_mul(C, b, e) == one_s:
            return b
    return None


def invertible_elements(C: Presentation) -> list:
    return [e for e in C.elements() if inverse(C, e) is not None]


def is_invertible(C: Presentation, e: Elem) -> bool:
    return inverse(C, e) is not None


def same_class(C: Presentation, a: Elem, b: Elem, kind: str = ISO, invertibles=None):
    """Return the witness (theta or (theta1, theta2)) or None.

    monic: a.theta = b;  epic: theta.a = b;  iso: theta1.a = b.theta2.
    Search order is the element order of ``C.elements()``.
    """
    a, b = C.norm(a), C.norm(b)
    inv = invertible_elements(C) if invertibles is None else invertibles
    if kind == MONIC:
        return next((t for t in inv if _safe_mul(C, a, t) == b), None)
    if kind == EPIC:
        return next((t for t in inv if _safe_mul(C, t, a) == b), None)
    for t1 in inv:
        left = _safe_mul(C, t1, a)
        if left is None:
            continue
        for t2 in inv:
            if _safe_mul(C, b, t2) == left:
                return (t1, t2)
    return None


def isomorphic(C: Presentation, x: Elem, y: Elem) -> bool:
    return same_class(C, C.ident(x), C.ident(y), ISO) is not None


@dataclass(frozen=True)
class Cancellation:
    is_monic: bool
    is_epi: bool
    monic_witness: Optional[tuple] = None
    epi_witness: Optional[tuple] = None


def cancellation(C: Presentation, e: Elem) -> Cancellation:
    e = C.norm(e)
    E = C.elements()
    monic_w = epi_w = None
    for f, g in itertools.combinations(E, 2):
        if monic_w is None:
            ef = _safe_mul(C, e, f)
            if ef is not None and ef == _safe_mul(C, e, g):
                monic_w = (f, g)
        if epi_w is None:
            fe = _safe_mul(C, f, e)
            if fe is not None and fe == _safe_mul(C, g, e):
                epi_w = (f, g)
    return Cancellation(monic_w is None, epi_w is None, monic_w, epi_w)


# ---------------------------------------------------------------------------
# category of invertibles


def _carrier(C: Presentation) -> list:
    seen = list(C.elements())
    extra = set()
    for e in seen:
        for x in (C.source(e), C.target(e)):
            i = C.ident(x)
            if i not in seen:
                extra.add(i)
    return seen + sorted(extra)


def class_name(rep: Elem) -> str:
    return f"~{rep}"


@dataclass
class InvertiblesQuotient:
    source: Presentation
    quotient: Presentation
    classes: dict   # Elem -> class name
    section: dict   # class name -> representative Elem
    invertibles: list

    def class_of(self, e: Elem) -> str:
        e = self.source.norm(e)
        if e in self.classes:
            return self.classes[e]
        for name, rep in self.section.items():
            if same_class(self.source, e, rep, ISO, self.invertibles) is not None:
                self.classes[e] = name
                return name
        raise KeyError(f"{e} falls outside every iso class of {self.source.name}")

    def members(self, name: str) -> list:
        return [e for e, n in self.classes.items() if n == name]

    def class_map_text(self) -> str:
        lines = []
        for name in sorted(self.section):
            members = ", ".join(str(e) for e in sorted(self.members(name)))
            lines.append(f"class {name} = {{{members}}}")
        return "\n".join(lines) + "\n"


def category_of_invertibles(C: Presentation) -> InvertiblesQuotient:
    inv = invertible_elements(C)
    carrier = _carrier(C)
    # carrier identities above the bound are invertible too
    inv_all = inv + [e for e in carrier if e not in inv and C.is_identity(e)]
    classes, section = {}, {}
    for e in carrier:          # carrier order is lexicographic, so reps are least
        for name, rep in section.items():
            if same_class(C, e, rep, ISO, inv_all) is not None:
                classes[e] = name
                break
        else:
            name = class_name(e)
            classes[e], section[name] = name, e

    objs, arrows, comp = [], [], {}
    is_obj = {n: r in inv_all for n, r in section.items()}
    for name, rep in section.items():
        if is_obj[name]:
            objs.append(name)
        else:
            arrows.append((name, classes[C.ident(C.source(rep))],
                           classes[C.ident(C.target(rep))]))
    Q = InvertiblesQuotient(C, None, classes, section, inv_all)
    src = {n: s for n, s, _ in arrows}
    tgt = {n: t for n, _, t in arrows}
    for A, _, _ in arrows:
        for B, _, _ in arrows:
            if src[A] != tgt[B]:
                continue
            a, b = section[A], section[B]
            for th in inv_all:
                ab = _safe_mul(C, a, _safe_mul(C, th, b))
                if ab is not None:
                    comp[(A, B)] = Q.class_of(ab)
                    break
    Q.quotient = make(f"{C.name}~", objects=objs, arrows=arrows, comp=comp, idbound=0)
    return Q


def lift_functor(F: FunctorMap, QC: InvertiblesQuotient, QD: InvertiblesQuotient) -> FunctorMap:
    mapping = {name: Elem(QD.class_of(F(rep))) for name, rep in QC.section.items()}
    return FunctorMap(f"{F.name}~", QC.quotient, QD.quotient, mapping)


@dataclass(frozen=True)
class EssentialProperties:
    essentially_injective: bool
    essentially_surjective: bool
    routes_agree: bool


def essential_properties(F: FunctorMap, QC=None, QD=None) -> EssentialProperties:
    C, D = F.dom, F.cod
    QC = QC or category_of_invertibles(C)
    QD = QD or category_of_invertibles(D)
    lift = lift_functor(F, QC, QD)
    images = [lift.map[n].gen for n in sorted(QC.section)]
    lift_inj = len(set(images)) == len(images)
    lift_surj = set(images) >= set(QD.section)

    E = C.elements()
    direct_inj = all(same_class(C, a, b, ISO, QC.invertibles) is not None
                     for a, b in itertools.combinations(E, 2) if F(a) == F(b))
    direct_surj = all(any(same_class(D, F(a), al, ISO, QD.invertibles) is not None for a in E)
                      for al in D.elements())
    return EssentialProperties(direct_inj, direct_surj,
                               (lift_inj, lift_surj) == (direct_inj, direct_surj))
