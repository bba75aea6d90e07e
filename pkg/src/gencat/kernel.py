"""Finite presentations of generalized categories and the axiom checker.

Elements are ``Elem(gen, level)`` pairs: a declared generator together with
the number of identity operators applied to it.  Identity towers are never
stored; they are enumerated up to the presentation's ``idbound``.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field, replace
from functools import cached_property
from typing import NamedTuple, Optional


class GencatError(Exception):
    pass


class UnknownGenerator(GencatError):
    pass


class IncompletePresentation(GencatError):
    """A composable pair has no declared composite."""

    def __init__(self, pair, what="comp"):
        self.pair = pair
        super().__init__(f"incomplete presentation: no {what} entry for "
                         f"{pair[0]} . {pair[1]}")


class IdentityClash(GencatError):
    """Strict mode: two identities composed across a strict order step."""

    def __init__(self, pair, need_target=None, got_target=None):
        self.pair = pair
        msg = (f"identity clash on ({pair[0]}, {pair[1]}): the left unit law "
               f"forces {pair[1]}, the right forces {pair[0]}")
        if need_target is not None:
            msg += (f"; the boundary law needs target {need_target} but "
                    f"target({pair[1]}) = {got_target}")
        super().__init__(msg)


class Truncated(GencatError):
    pass


class Elem(NamedTuple):
    gen: str
    level: int = 0

    def __str__(self):
        return "idof(" * self.level + self.gen + ")" * self.level

    def up(self, n: int = 1) -> "Elem":
        return Elem(self.gen, self.level + n)


def parse_elem(text: str) -> Elem:
    text = text.strip()
    level = 0
    while text.startswith("idof(") and text.endswith(")"):
        text = text[5:-1].strip()
        level += 1
    if not text or any(ch.isspace() for ch in text):
        raise ValueError(f"bad element expression {text!r}")
    return Elem(text, level)


STRICT, LAX = "strict", "lax"
SOURCE, TARGET = "source", "target"


@dataclass(frozen=True, eq=True)
class Presentation:
    name: str = field(compare=False)
    generators: tuple
    src: dict
    tgt: dict
    order: frozenset = frozenset()
    comp: dict = field(default_factory=dict)
    coerce: dict = field(default_factory=dict)
    idbound: int = 2
    mode: str = STRICT

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(sorted(self.generators)))
        gens = set(self.generators)
        for g in self.generators:
            if g not in self.src or g not in self.tgt:
                raise UnknownGenerator(f"generator {g} lacks a source or target")
        refs = list(self.src.values()) + list(self.tgt.values())
        refs += [x for pair in self.order for x in pair]
        refs += [x for key, val in self.comp.items() for x in (*key, val)]
        refs += [e.gen for key, val in self.coerce.items() for e in (*key, val)]
        for r in refs:
            if r not in gens:
                raise UnknownGenerator(f"undeclared generator {r}")

    # -- order ---------------------------------------------------------

    @cached_property
    def closure(self) -> frozenset:
        """Reflexive-transitive closure of the declared generator order."""
        up = {g: {g} for g in self.generators}
        for a, b in self.order:
            up[a].add(b)
        changed = True
        while changed:
            changed = False
            for g in self.generators:
                new = set().union(*(up[h] for h in up[g]))
                if new != up[g]:
                    up[g] = new
                    changed = True
        return frozenset((g, h) for g in self.generators for h in up[g])

    def leq(self, a: Elem, b: Elem) -> bool:
        return a.level == b.level and (a.gen, b.gen) in self.closure

    # -- elements ------------------------------------------------------

    def check_gen(self, e: Elem):
        if e.gen not in self.src:
            raise UnknownGenerator(f"unknown generator {e.gen} in {self.name}")

    def gen_is_object(self, g: str) -> bool:
        return self.src[g] == g and self.tgt[g] == g

    def norm(self, e: Elem) -> Elem:
        self.check_gen(e)
        if e.level and self.gen_is_object(e.gen):
            return Elem(e.gen, 0)
        return e

    def is_object(self, e: Elem) -> bool:
        return e.level == 0 and self.gen_is_object(e.gen)

    def is_identity(self, e: Elem) -> bool:
        return e.level > 0 or self.gen_is_object(e.gen)

    def base(self, e: Elem) -> Elem:
        """The element an identity is the identity of."""
        if self.is_object(e):
            return e
        if e.level == 0:
            raise GencatError(f"{e} is not an identity")
        return Elem(e.gen, e.level - 1)

    def ident(self, e: Elem) -> Elem:
        """1_e, with no truncation check."""
        e = self.norm(e)
        return e if self.is_object(e) else e.up()

    def source(self, e: Elem) -> Elem:
        e = self.norm(e)
        if e.level:
            return Elem(e.gen, e.level - 1)
        return Elem(self.src[e.gen])

    def target(self, e: Elem) -> Elem:
        e = self.norm(e)
        if e.level:
            return Elem(e.gen, e.level - 1)
        return Elem(self.tgt[e.gen])

    @cached_property
    def hom_index(self) -> dict:
        """(source, target) -> elements at level <= idbound, in element order."""
        idx = {}
        for e in self.elements():
            idx.setdefault((self.source(e), self.target(e)), []).append(e)
        return idx

    def elements(self, bound: Optional[int] = None) -> list:
        bound = self.idbound if bound is None else bound
        out = []
        for g in sorted(self.generators):
            top = 0 if self.gen_is_object(g) else bound
            out.extend(Elem(g, n) for n in range(top + 1))
        return out

    # -- composition ---------------------------------------------------

    def composable(self, a: Elem, b: Elem) -> bool:
        return self.leq(self.source(a), self.target(b))

    def is_coercion(self, a: Elem, b: Elem) -> bool:
        """True when a.b is composable, involves an identity, and is not an
        exact unit composite."""
        if not self.composable(a, b):
            return False
        ida, idb = self.is_identity(a), self.is_identity(b)
        if not (ida or idb):
            return False
        if ida and self.base(a) == self.target(b):
            return False
        if idb and self.base(b) == self.source(a):
            return False
        return True

    def compose(self, a: Elem, b: Elem) -> Optional[Elem]:
        a, b = self.norm(a), self.norm(b)
        if not self.composable(a, b):
            return None
        ida, idb = self.is_identity(a), self.is_identity(b)
        if ida and self.base(a) == self.target(b):
            return b
        if idb and self.base(b) == self.source(a):
            return a
        if not (ida or idb):
            try:
                return Elem(self.comp[(a.gen, b.gen)])
            except KeyError:
                raise IncompletePresentation((a, b)) from None
        if self.mode == LAX:
            try:
                return self.norm(self.coerce[(a, b)])
            except KeyError:
                raise IncompletePresentation((a, b), "coerce") from None
        if ida and idb:
            raise IdentityClash((a, b), self.target(a), self.target(b))
        return b if ida else a

    def with_(self, **changes) -> "Presentation":
        return replace(self, **changes)


# ---------------------------------------------------------------------------
# module-level queries


def boundary(C: Presentation, e: Elem, side: str) -> Elem:
    if e.level > C.idbound + 1:
        raise Truncated(f"{e} lies above the identity bound {C.idbound}")
    return C.source(e) if side == SOURCE else C.target(e)


def leq(C: Presentation, a: Elem, b: Elem) -> bool:
    return C.leq(C.norm(a), C.norm(b))


def compose(C: Presentation, a: Elem, b: Elem) -> Optional[Elem]:
    return C.compose(a, b)


def identity_of(C: Presentation, e: Elem) -> Elem:
    i = C.ident(e)
    if i.level > C.idbound + 1:
        raise Truncated(f"identity of {e} exceeds identity bound {C.idbound}")
    return i


@dataclass(frozen=True)
class ElementKind:
    is_object: bool
    is_identity: bool
    is_subject: bool
    identity_of: Elem


def is_subject(C: Presentation, e: Elem) -> bool:
    # e's own identity tower does not count
    e = C.norm(e)
    for f in C.elements(C.idbound + 1):
        if f == C.ident(e):
            continue
        if C.source(f) == e or C.target(f) == e:
            return True
    return False


def classify_element(C: Presentation, e: Elem) -> ElementKind:
    e = C.norm(e)
    return ElementKind(C.is_object(e), C.is_identity(e), is_subject(C, e),
                       identity_of(C, e))


def height(C: Presentation, e: Elem) -> float:
    """0 on objects, 1 + max over both boundaries otherwise, inf on cycles."""
    memo: dict = {}

    def go(x, stack):
        if C.is_object(x):
            return 0
        if x in memo:
            return memo[x]
        if x in stack:
            return math.inf
        stack.add(x)
        h = 1 + max(go(C.source(x), stack), go(C.target(x), stack))
        stack.discard(x)
        memo[x] = h
        return h

    return go(C.norm(e), set())


def hom_set(C: Presentation, a: Elem, b: Elem) -> list:
    return list(C.hom_index.get((C.norm(a), C.norm(b)), ()))


# ---------------------------------------------------------------------------
# reports


@dataclass(frozen=True)
class Finding:
    rule: str
    witness: tuple
    message: str

    def line(self) -> str:
        wit = " ".join(str(w) for w in self.witness)
        return f"RULE {self.rule} WITNESS {wit} # {self.message}"


@dataclass
class Report:
    subject: str
    findings: list = field(default_factory=list)

    @property
    def verdict(self) -> str:
        return "pass" if not self.findings else "fail"

    @property
    def passed(self) -> bool:
        return not self.findings

    def add(self, rule, witness, message):
        self.findings.append(Finding(rule, tuple(witness), message))

    def extend(self, other: "Report"):
        self.findings.extend(other.findings)

    def rules(self) -> set:
        return {f.rule for f in self.findings}

    def keys(self) -> set:
        return {(f.rule, f.witness) for f in self.findings}

    def sorted(self) -> "Report":
        key = lambda f: (f.rule, tuple(str(w) for w in f.witness))
        return Report(self.subject, sorted(self.findings, key=key))

    def text(self) -> str:
        head = f"{'PASS' if self.passed else 'FAIL'} {self.subject}"
        return "\n".join([head] + [f.line() for f in self.sorted().findings])


DEF_MAIN, DEF_ALT = "def-main", "def-alternative"


def _composites(C: Presentation, elems):
    """All defined composites among elems: (table, problem findings)."""
    table, problems = {}, []
    for a in elems:
        for b in elems:
            if not C.composable(a, b):
                continue
            try:
                table[a, b] = C.compose(a, b)
            except IncompletePresentation as exc:
                problems.append(("incomplete", (a, b), str(exc)))
            except IdentityClash as exc:
                problems.append(("identity-clash", (a, b), str(exc)))
    return table, problems


def check_axioms(C: Presentation, profile: str = DEF_MAIN) -> Report:
    rep = Report(f"gencat {C.name}")
    E = C.elements()
    gens = sorted(C.generators)

    # (1) partial order; reflexivity and transitivity hold by closure
    for g, h in itertools.combinations(gens, 2):
        if (g, h) in C.closure and (h, g) in C.closure:
            rep.add("order-antisymmetry", (Elem(g), Elem(h)),
                    f"{g} and {h} are mutually below each other")

    # (2) table entries must sit on composable pairs
    for (g, h) in sorted(C.comp):
        if not C.composable(Elem(g), Elem(h)):
            rep.add("comp-domain", (Elem(g), Elem(h)),
                    f"comp declared for {g} . {h} but source({g}) is not below target({h})")
    for (a, b) in sorted(C.coerce, key=str):
        if not C.is_coercion(a, b):
            rep.add("comp-domain", (a, b),
                    f"coerce declared for {a} . {b}, which is not a cast composite")

    # declared entries that the unit laws override
    for (g, h), v in sorted(C.comp.items()):
        a, b = Elem(g), Elem(h)
        if not C.composable(a, b) or not (C.is_identity(a) or C.is_identity(b)):
            continue
        if C.is_identity(a) and C.base(a) == C.target(b):
            if v != h:
                rule = "object-left" if C.is_object(a) else "identity-left"
                rep.add(rule, (a, b), f"comp declares {g} . {h} = {v}, the unit law forces {h}")
        elif C.is_identity(b) and C.base(b) == C.source(a):
            if v != g:
                rule = "object-right" if C.is_object(b) else "identity-right"
                rep.add(rule, (a, b), f"comp declares {g} . {h} = {v}, the unit law forces {g}")

    table, problems = _composites(C, E)
    for rule, wit, msg in problems:
        rep.add(rule, wit, msg)

    # (4) boundaries of composites
    for (a, b), c in table.items():
        if C.source(c) != C.source(b):
            rep.add("boundary-source", (a, b), f"source({a}.{b}) = {C.source(c)} != source({b})")
        if C.target(c) != C.target(a):
            rep.add("boundary-target", (a, b), f"target({a}.{b}) = {C.target(c)} != target({a})")

    # (3) associativity
    def mul(x, y):
        if (x, y) in table:
            return table[x, y]
        if not C.composable(x, y):
            return None
        try:
            return C.compose(x, y)
        except (IncompletePresentation, IdentityClash):
            return None

    for (a, b), ab in table.items():
        for c in E:
            bc = table.get((b, c))
            left = mul(ab, c)
            right = mul(a, bc) if bc is not None else None
            if left is None and right is None:
                continue
            if left != right:
                rep.add("assoc", (a, b, c), f"({a}.{b}).{c} = {left} but {a}.({b}.{c}) = {right}")
    # triples where only a(bc) is defined are found from the other side
    for (b, c), bc in table.items():
        for a in E:
            if (a, b) in table:
                continue
            right = mul(a, bc)
            if right is not None:
                rep.add("assoc", (a, b, c), f"{a}.({b}.{c}) = {right} but {a}.{b} is undefined")

    # (5) element identities, (6) object identities
    lax = C.mode == LAX
    for a in E:
        obj = C.is_object(a)
        if not obj and profile == DEF_ALT and not is_subject(C, a):
            continue
        ia = C.ident(a)
        lrule, rrule = ("object-left", "object-right") if obj else ("identity-left", "identity-right")
        for c in E:
            if C.composable(ia, c) and not (lax and C.target(c) != a):
                v = table.get((ia, c)) if (ia, c) in table else mul(ia, c)
                if v is not None and v != c:
                    rep.add(lrule, (ia, c), f"{ia}.{c} = {v}, expected {c}")
            if C.composable(c, ia) and not (lax and C.source(c) != a):
                v = table.get((c, ia)) if (c, ia) in table else mul(c, ia)
                if v is not None and v != c:
                    rep.add(rrule, (c, ia), f"{c}.{ia} = {v}, expected {c}")

    # (7) order congruences
    pairs = [(a, b) for a in E for b in E if a != b and C.leq(a, b)]
    for a, b in pairs:
        if not C.leq(C.source(a), C.source(b)):
            rep.add("order-source", (a, b), f"{a} <= {b} but their sources are unordered")
        if not C.leq(C.target(a), C.target(b)):
            rep.add("order-target", (a, b), f"{a} <= {b} but their targets are unordered")
        if not C.leq(C.ident(a), C.ident(b)):
            rep.add("order-identity", (a, b), f"{a} <= {b} but idof({a}) is not below idof({b})")
    refl = [(a, a) for a in E]
    for (a, b), (c, d) in itertools.product(pairs + refl, repeat=2):
        if a == b and c == d:
            continue
        if (a, c) not in table or (b, d) not in table:
            continue
        if lax and (C.is_coercion(a, c) or C.is_coercion(b, d)):
            continue
        ac, bd = table[a, c], table[b, d]
        if not C.leq(ac, bd):
            rep.add("order-composite", (a, b, c, d),
                    f"{a} <= {b}, {c} <= {d} but {a}.{c} = {ac} is not below {b}.{d} = {bd}")
    return rep.sorted()


# ---------------------------------------------------------------------------
# duality and replay

_DUAL_RULE = {
    "identity-left": "identity-right", "identity-right": "identity-left",
    "object-left": "object-right", "object-right": "object-left",
    "boundary-source": "boundary-target", "boundary-target": "boundary-source",
    "order-source": "order-target", "order-target": "order-source",
}

# witnesses that are not composable pairs keep their order under duality
_UNORDERED_WITNESS = {"order-antisymmetry", "no-mediator", "many-mediators"}


def dual_finding(f: Finding) -> tuple:
    """(rule, witness) of the finding that opposite(C) reports for f."""
    rule = _DUAL_RULE.get(f.rule, f.rule)
    if f.rule in _UNORDERED_WITNESS or f.rule.startswith("cone-"):
        return rule, f.witness
    return rule, tuple(reversed(f.witness))


def replay(C: Presentation, f: Finding) -> bool:
    """Re-evaluate a finding's witness with the public queries; True when the
    violation reproduces."""
    w = f.witness
    r = f.rule

    def mul(x, y):
        try:
            return compose(C, x, y)
        except (IncompletePresentation, IdentityClash):
            return None

    if r == "order-antisymmetry":
        return leq(C, w[0], w[1]) and leq(C, w[1], w[0]) and w[0] != w[1]
    if r == "comp-domain":
        return not C.composable(w[0], w[1]) or not C.is_coercion(w[0], w[1])
    if r == "incomplete":
        try:
            compose(C, *w)
        except IncompletePresentation:
            return True
        return False
    if r == "identity-clash":
        try:
            compose(C, *w)
        except IdentityClash:
            return True
        return False
    if r == "boundary-source":
        return C.source(mul(*w)) != C.source(w[1])
    if r == "boundary-target":
        return C.target(mul(*w)) != C.target(w[0])
    if r == "assoc":
        a, b, c = w
        ab, bc = mul(a, b), mul(b, c)
        left = mul(ab, c) if ab is not None else None
        right = mul(a, bc) if bc is not None else None
        return left != right
    declared = C.comp.get((w[0].gen, w[1].gen)) if len(w) == 2 and not (w[0].level or w[1].level) else None
    if r in ("identity-left", "object-left"):
        return mul(*w) != w[1] or declared not in (None, w[1].gen)
    if r in ("identity-right", "object-right"):
        return mul(*w) != w[0] or declared not in (None, w[0].gen)
    if r == "order-source":
        return not leq(C, C.source(w[0]), C.source(w[1]))
    if r == "order-target":
        return not leq(C, C.target(w[0]), C.target(w[1]))
    if r == "order-identity":
        return not leq(C, C.ident(w[0]), C.ident(w[1]))
    if r == "order-composite":
        a, b, c, d = w
        return leq(C, a, b) and leq(C, c, d) and not leq(C, mul(a, c), mul(b, d))
    raise ValueError(f"unknown rule {r}")


# ---------------------------------------------------------------------------
# derived presentations and classifiers


def opposite(C: Presentation) -> Presentation:
    name = C.name[:-3] if C.name.endswith("_op") else C.name + "_op"
    return Presentation(
        name=name,
        generators=C.generators,
        src=dict(C.tgt),
        tgt=dict(C.src),
        order=frozenset((b, a) for a, b in C.order),
        comp={(b, a): v for (a, b), v in C.comp.items()},
        coerce={(b, a): v for (a, b), v in C.coerce.items()},
        idbound=C.idbound,
        mode=C.mode,
    )


@dataclass(frozen=True)
class CategoryKind:
    is_sharp: bool
    is_casting: bool
    is_zero_category: bool
    is_one_category: bool
    is_finitely_generated: bool = True


def is_one_category(C: Presentation) -> bool:
    return all(C.gen_is_object(C.src[g]) and C.gen_is_object(C.tgt[g])
               for g in C.generators)


def classify_category(C: Presentation) -> CategoryKind:
    sharp = all(a == b for a, b in C.closure)
    return CategoryKind(
        is_sharp=sharp,
        is_casting=not sharp,
        is_zero_category=all(C.gen_is_object(g) for g in C.generators),
        is_one_category=is_one_category(C),
    )


def objects(C: Presentation) -> list:
    return [Elem(g) for g in sorted(C.generators) if C.gen_is_object(g)]


def make(name, objects=(), arrows=(), order=(), comp=None, coerce=None,
         idbound=2, mode=STRICT) -> Presentation:
    """Build a presentation from python data.

    ``arrows`` is an iterable of ``(name, source, target)``; ``comp`` maps
    ``(g, f)`` to the generator ``g . f``.
    """
    gens, src, tgt = [], {}, {}
    for o in objects:
        gens.append(o)
        src[o] = tgt[o] = o
    for f, x, y in arrows:
        gens.append(f)
        src[f], tgt[f] = x, y
    return Presentation(name, tuple(gens), src, tgt, frozenset(order),
                        dict(comp or {}), dict(coerce or {}), idbound, mode)
