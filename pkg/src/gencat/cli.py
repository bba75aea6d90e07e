"""Command line entry point: ``gencat <command> ...``.

Exit codes: 0 pass, 1 findings or a negative verdict, 2 parse errors and
usage errors.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import adjoint, constructions as cons, invertibles, kernel, limits
from .formats import (ParseError, load_adjunction, load_diagram, load_functor,
                      load_globular, load_graph, load_presentation,
                      load_transformation, parse_elem, serialize_globular,
                      serialize_presentation)
from .kernel import GencatError

DEFAULT_BUDGET = 10 ** 6


class _Usage(Exception):
    pass


def _load_cat(args, path):
    C = load_presentation(path)
    changes = {}
    if getattr(args, "mode", None):
        changes["mode"] = args.mode
    if getattr(args, "idbound", None) is not None:
        changes["idbound"] = args.idbound
    return C.with_(**changes) if changes else C


def _elem(C, text):
    try:
        return C.norm(parse_elem(text))
    except (ValueError, GencatError) as exc:
        raise _Usage(str(exc)) from None


def _registry(paths):
    """Presentations named on the command line take part in name resolution."""
    reg = {}
    for p in paths:
        C = load_presentation(p)
        reg[C.name] = C
        reg[Path(p).stem] = C
    return reg


# ---------------------------------------------------------------------------
# commands; each returns (exit code, text)


def cmd_check(args):
    C = _load_cat(args, args.file)
    rep = kernel.check_axioms(C, args.profile)
    return (0 if rep.passed else 1), rep.text() + "\n"


def cmd_homs(args):
    C = _load_cat(args, args.file)
    a, b = _elem(C, args.source), _elem(C, args.target)
    homs = kernel.hom_set(C, a, b)
    lines = [f"hom({a}, {b}) has {len(homs)} elements"] + [str(e) for e in homs]
    return 0, "\n".join(lines) + "\n"


def cmd_classify(args):
    C = _load_cat(args, args.file)
    if args.element:
        e = _elem(C, args.element)
        k = kernel.classify_element(C, e)
        lines = [f"element {e}", f"object {str(k.is_object).lower()}",
                 f"identity {str(k.is_identity).lower()}",
                 f"subject {str(k.is_subject).lower()}", f"identity_of {k.identity_of}"]
        try:
            info = cons.cell_analysis(C, e)
            lines += [f"dim {info.dim}", f"cellular {str(info.is_cellular_element).lower()}"]
        except GencatError as exc:
            lines.append(f"dim undefined # {exc}")
        return 0, "\n".join(lines) + "\n"
    k = kernel.classify_category(C)
    lines = [f"category {C.name}"] + [f"{f} {str(v).lower()}" for f, v in
                                      sorted(vars(k).items())]
    lines.append(f"tree_like {str(cons.is_tree_like(C)).lower()}")
    return 0, "\n".join(lines) + "\n"


def cmd_opposite(args):
    return 0, serialize_presentation(kernel.opposite(_load_cat(args, args.file)))


def cmd_flatten(args):
    return 0, serialize_presentation(cons.flatten(_load_cat(args, args.file), args.variant))


def cmd_quotient(args):
    Q = invertibles.category_of_invertibles(_load_cat(args, args.file))
    maps = "".join(f"# {line}\n" for line in Q.class_map_text().splitlines())
    return 0, serialize_presentation(Q.quotient) + maps


def cmd_functor_check(args):
    from .transform import check_functor
    rep = check_functor(load_functor(args.file, _registry(args.cat)))
    return (0 if rep.passed else 1), rep.text() + "\n"


def cmd_natural_check(args):
    from .transform import check_transformation
    t = load_transformation(args.file, _registry(args.cat))
    rep = check_transformation(t, require_natural=not args.morphism_only)
    return (0 if rep.passed else 1), rep.text() + "\n"


def cmd_adjoint_check(args):
    w = load_adjunction(args.file, _registry(args.cat))
    rep = adjoint.check_adjunction(w)
    if rep.passed:
        rep.extend(adjoint.all_hom_bijections(w))
    return (0 if rep.passed else 1), rep.text() + "\n"


def cmd_equivalence(args):
    if args.functor:
        F = load_functor(args.functor, _registry(args.files))
        r = adjoint.is_natural_equivalence(F, args.budget)
        head = {adjoint.TRUE: "EQUIVALENT", adjoint.FALSE: "NOT-EQUIVALENT",
                adjoint.INCONCLUSIVE: "INCONCLUSIVE"}[r.verdict]
        lines = [f"{head} functor {F.name}"]
        if r.reason:
            lines.append(f"# {r.reason}")
        if r.witness:
            w = r.witness
            lines += [f"inverse {g} = {v}" for g, v in sorted(w.G.map.items())]
            lines += [f"unit {g} = {v}" for g, v in sorted(w.eta.theta.items())]
            lines += [f"counit {g} = {v}" for g, v in sorted(w.epsilon.theta.items())]
        code = {adjoint.TRUE: 0, adjoint.FALSE: 1, adjoint.INCONCLUSIVE: 0}[r.verdict]
        return code, "\n".join(lines) + "\n"
    if len(args.files) != 2:
        raise _Usage("equivalence needs two .gcat files or --functor")
    C, D = (load_presentation(p) for p in args.files)
    r = adjoint.categories_equivalent(C, D, budget=args.budget)
    head = {adjoint.TRUE: "EQUIVALENT", adjoint.FALSE: "NOT-EQUIVALENT",
            adjoint.INCONCLUSIVE: "INCONCLUSIVE"}[r.verdict]
    lines = [f"{head} {C.name} {D.name}"]
    if r.mapping:
        lines += [f"class {a} -> {b}" for a, b in sorted(r.mapping.items())]
    return (1 if r.verdict == adjoint.FALSE else 0), "\n".join(lines) + "\n"


def _diagram(args):
    *cats, diag = args.files
    if not diag.endswith(".gdiag"):
        raise _Usage("the last argument must be a .gdiag file")
    return load_diagram(diag, _registry(cats))


def cmd_limit(args):
    d = _diagram(args)
    orient = limits.COCONE if args.colimit or d.kind in (limits.COPRODUCT, limits.COEQUALIZER) \
        else limits.CONE
    found = limits.find_limits(d, orient)
    word = "limit" if orient == limits.CONE else "colimit"
    lines = [f"{'FOUND' if found else 'NONE'} {len(found)} {word} {orient}s"]
    for c in found:
        lines.append(c.text().rstrip("\n"))
    return (0 if found else 1), "\n".join(lines) + "\n"


def cmd_construct_limit(args):
    r = limits.construct_limit(_diagram(args))
    lines = [f"# {s}" for s in r.steps]
    if not r.ok:
        return 1, "\n".join([f"FAIL missing {r.missing}"] + lines) + "\n"
    return 0, "\n".join(["PASS limit constructed"] + lines + [r.cone.text().rstrip("\n")]) + "\n"


def cmd_exactness(args):
    F = load_functor(args.functor, _registry(args.cat))
    sample = [load_diagram(p, _registry(args.cat)) for p in args.diagrams] or None
    ex = limits.exactness_check(F, sample)
    want = {"limits": ex.preserves_limits, "colimits": ex.preserves_colimits,
            "all": ex.report.passed}[args.require]
    lines = [f"{'PASS' if want else 'FAIL'} exactness of {F.name} (require {args.require})"]
    for k in ("preserves_limits", "preserves_colimits", "creates_limits", "creates_colimits"):
        lines.append(f"{k} {str(getattr(ex, k)).lower()}")
    lines += [f.line() for f in ex.report.findings]
    return (0 if want else 1), "\n".join(lines) + "\n"


def cmd_from_graph(args):
    pc = cons.graph_path_category(load_graph(args.file), args.max_len)
    head = (f"# one_dimensional {str(pc.is_one_dimensional).lower()}\n"
            f"# truncated {str(pc.truncated).lower()}\n")
    return 0, head + serialize_presentation(pc.presentation)


def cmd_tree_cat(args):
    T = cons.tree_category(_load_cat(args, args.file), args.depth)
    return 0, serialize_presentation(T.presentation)


def cmd_globular(args):
    if args.file.endswith(".glob"):
        return 0, serialize_presentation(cons.from_globular(load_globular(args.file),
                                                            Path(args.file).stem))
    return 0, serialize_globular(cons.to_globular(_load_cat(args, args.file), args.n_max))


def _q(s):
    return '"' + str(s).replace('"', '\\"') + '"'


def export_dot(C: kernel.Presentation) -> str:
    lines = [f"digraph {_q(C.name)} {{", "  rankdir=LR;"]
    for g in sorted(C.generators):
        shape = "doublecircle" if C.gen_is_object(g) else "circle"
        lines.append(f"  {_q(g)} [shape={shape}];")
    for g in sorted(C.generators):
        if not C.gen_is_object(g):
            lines.append(f"  {_q(C.src[g])} -> {_q(C.tgt[g])} [label={_q(g)}];")
    for a, b in sorted(C.order):
        lines.append(f"  {_q(a)} -> {_q(b)} [style=dashed];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def export_cone_dot(d, c) -> str:
    C = d.target
    lines = [f"digraph {_q(d.base.name)} {{", "  rankdir=LR;"]
    nodes = sorted({str(c.vertex)} | {str(d.alpha(i)) for i in d.keys()})
    for n in nodes:
        shape = "doublecircle" if C.is_object(parse_elem(n)) else "circle"
        lines.append(f"  {_q(n)} [shape={shape}];")
    for i, e in c.legs:
        a, b = (c.vertex, d.alpha(i)) if c.orientation == limits.CONE else (d.alpha(i), c.vertex)
        lines.append(f"  {_q(a)} -> {_q(b)} [label={_q(e)}];")
    for g in d.arrows():
        s, t = d.alpha(d.index.src[g]), d.alpha(d.index.tgt[g])
        lines.append(f"  {_q(s)} -> {_q(t)} [label={_q(d.alpha(g))}, style=dotted];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def cmd_export_dot(args):
    if args.file.endswith(".gdiag"):
        d = load_diagram(args.file, _registry(args.cat))
        found = limits.find_limits(d)
        if not found:
            return 1, "NONE no limit cone to draw\n"
        return 0, export_cone_dot(d, found[0])
    return 0, export_dot(_load_cat(args, args.file))


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="gencat", description="Finite generalized categories.")
    p.add_argument("-o", "--output", help="write the report here instead of stdout")
    sub = p.add_subparsers(dest="command", metavar="command")
    sub.required = True

    def cat_cmd(name, fn, help_):
        s = sub.add_parser(name, help=help_)
        s.add_argument("file")
        s.add_argument("--mode", choices=[kernel.STRICT, kernel.LAX])
        s.add_argument("--idbound", type=int)
        s.set_defaults(fn=fn)
        return s

    s = cat_cmd("check", cmd_check, "check the axioms")
    s.add_argument("--profile", choices=[kernel.DEF_MAIN, kernel.DEF_ALT], default=kernel.DEF_MAIN)
    s = cat_cmd("homs", cmd_homs, "list a hom set")
    s.add_argument("source")
    s.add_argument("target")
    s = cat_cmd("classify", cmd_classify, "classify a category or one element")
    s.add_argument("element", nargs="?")
    cat_cmd("opposite", cmd_opposite, "print the opposite presentation")
    s = cat_cmd("flatten", cmd_flatten, "flatten to a one-category or a set")
    s.add_argument("--variant", choices=[cons.FLAT_CAT, cons.FLAT_ZERO], default=cons.FLAT_CAT)
    cat_cmd("quotient", cmd_quotient, "category of invertibles")
    s = cat_cmd("tree-cat", cmd_tree_cat, "tree category of a one-category")
    s.add_argument("--depth", type=int, default=2)
    s = cat_cmd("globular", cmd_globular, ".gcat to globular set, or .glob to .gcat")
    s.add_argument("--n-max", type=int, default=8)
    cat_cmd("export-dot", cmd_export_dot, "Graphviz DOT of a presentation or limit cone") \
        .add_argument("--cat", action="append", default=[])

    for name, fn, help_ in (("functor-check", cmd_functor_check, "check a .gfun"),
                            ("natural-check", cmd_natural_check, "check a .gnat"),
                            ("adjoint-check", cmd_adjoint_check, "check a .gadj")):
        s = sub.add_parser(name, help=help_)
        s.add_argument("file")
        s.add_argument("--cat", action="append", default=[], help="extra .gcat for name lookup")
        s.set_defaults(fn=fn)
        if name == "natural-check":
            s.add_argument("--morphism-only", action="store_true")

    s = sub.add_parser("equivalence", help="decide equivalence")
    s.add_argument("files", nargs="*")
    s.add_argument("--functor")
    s.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    s.set_defaults(fn=cmd_equivalence)

    for name, fn in (("limit", cmd_limit), ("construct-limit", cmd_construct_limit)):
        s = sub.add_parser(name, help=f"{name} of a .gdiag")
        s.add_argument("files", nargs="+", help="[C.gcat ...] D.gdiag")
        s.set_defaults(fn=fn)
        if name == "limit":
            s.add_argument("--colimit", action="store_true")

    s = sub.add_parser("exactness", help="exactness of a functor")
    s.add_argument("functor")
    s.add_argument("diagrams", nargs="*")
    s.add_argument("--cat", action="append", default=[])
    s.add_argument("--require", choices=["limits", "colimits", "all"], default="all")
    s.set_defaults(fn=cmd_exactness)

    s = sub.add_parser("from-graph", help="path category of a .ggraph")
    s.add_argument("file")
    s.add_argument("--max-len", type=int, default=3)
    s.set_defaults(fn=cmd_from_graph)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        code, text = args.fn(args)
    except (ParseError, _Usage) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (GencatError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
