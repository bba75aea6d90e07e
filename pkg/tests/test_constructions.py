import pytest
from hypothesis import given, settings, strategies as st

from gencat import fixtures as fx
from gencat.constructions import (FLAT_ZERO, ConstructionError, GenGraph,
                                  GlobularPresentation, cell_analysis, dim, flatten,
                                  flatten_functor, from_category, from_globular,
                                  graph_of, graph_path_category, is_tree_like,
                                  to_globular, tree_category, tree_str)
from gencat.kernel import (Elem, check_axioms, classify_category, hom_set,
                           is_one_category, make)
from gencat.limits import find_limits, make_standard_diagram, PRODUCT
from gencat.transform import check_functor, compose_functors, identity_functor, same_functor

from helpers import functor_fixtures, random_globular

E = Elem


def test_from_category_keeps_absorbed_forms():
    assert from_category(fx.P2()) == fx.P2()
    assert from_category(fx.Z3()) == fx.Z3()


def test_from_category_identifies_explicit_identity():
    C = make("G2", objects=["X"], arrows=[("e", "X", "X"), ("g", "X", "X")],
             comp={("e", "e"): "e", ("e", "g"): "g", ("g", "e"): "g", ("g", "g"): "e"},
             idbound=0)
    D = from_category(C)
    assert "e" not in D.generators
    assert D.comp == {("g", "g"): "X"}
    assert len(hom_set(D, E("X"), E("X"))) == len(hom_set(C, E("X"), E("X"))) - 1
    assert check_axioms(D).passed and is_one_category(D)


def test_from_category_rejects_non_one_category():
    with pytest.raises(ConstructionError):
        from_category(fx.T2())


def test_flatten_t0():
    F = flatten(fx.T0())
    assert F.generators == ("[a]",)


def test_flatten_t1_at_bound_one():
    F = flatten(fx.T1().with_(idbound=1))
    objs = {g for g in F.generators if F.gen_is_object(g)}
    assert objs == {"[a]", "[b]", "[idof(b)]"}
    assert F.src["(b)"] == "[a]" and F.tgt["(b)"] == "[b]"
    # the identity arrows (a) and (idof(b)) are the objects [a] and [b]
    assert set(F.generators) - objs == {"(b)"}


ALL = [fx.T0(), fx.T1(), fx.T2(), fx.P2(), fx.Z3(), fx.L4(), fx.L4_dup(), fx.cast("lax")]


@pytest.mark.parametrize("C", ALL, ids=lambda C: C.name)
def test_flatten_is_one_category(C):
    F = flatten(C)
    assert check_axioms(F).passed
    assert classify_category(F).is_one_category


@pytest.mark.parametrize("C", ALL, ids=lambda C: C.name)
def test_flat_zero_is_discrete(C):
    Z = flatten(C, FLAT_ZERO)
    assert classify_category(Z).is_zero_category
    assert len(Z.generators) == len(C.generators)


def test_flat_zero_names():
    assert flatten(fx.P2(), FLAT_ZERO).generators == ("(x)", "(y)", "[m]")


def test_flatten_respects_identity_and_composition():
    for F, G in functor_fixtures():
        GF = compose_functors(G, F)
        assert check_functor(flatten_functor(GF)).passed
        assert same_functor(flatten_functor(GF),
                            compose_functors(flatten_functor(G), flatten_functor(F)))
    C = fx.L4()
    assert same_functor(flatten_functor(identity_functor(C)), identity_functor(flatten(C)))


# -- generalized graphs -------------------------------------------------------


def span():
    return GenGraph(("a", "b", "c", "f", "g"),
                    {"a": "a", "b": "b", "c": "c", "f": "a", "g": "b"},
                    {"a": "a", "b": "b", "c": "c", "f": "b", "g": "c"})


def test_path_category_of_ordinary_graph():
    pc = graph_path_category(span(), 3)
    C = pc.presentation
    assert pc.is_one_dimensional and not pc.truncated
    assert C.comp == {("g", "f"): "g*f"}
    assert (C.src["g*f"], C.tgt["g*f"]) == ("a", "c")
    assert check_axioms(C).passed


def test_constant_graph():
    G = GenGraph(("e", "l"), {"e": "e", "l": "e"}, {"e": "e", "l": "e"})
    pc = graph_path_category(G, 2)
    C = pc.presentation
    assert [g for g in C.generators if C.gen_is_object(g)] == ["e"]
    assert all(C.src[g] == "e" == C.tgt[g] for g in C.generators)
    # loops have unbounded powers, so the fragment is truncated
    assert pc.truncated


def test_certificate_graph_composes_levelwise():
    # goods x, y; an exchange c between goods and a certificate d between c and c2
    G = GenGraph(("x", "y", "c", "c2", "d"),
                 {"x": "x", "y": "y", "c": "x", "c2": "x", "d": "c"},
                 {"x": "x", "y": "y", "c": "y", "c2": "y", "d": "c2"})
    pc = graph_path_category(G, 3)
    C = pc.presentation
    assert not pc.is_one_dimensional
    assert C.comp == {}
    assert check_axioms(C).passed


def test_zero_length_rejected():
    with pytest.raises(ConstructionError):
        graph_path_category(span(), 0)


def test_path_category_dimension_flag_matches_generators():
    for G in (span(), GenGraph(("e", "l"), {"e": "e", "l": "e"}, {"e": "e", "l": "e"})):
        pc = graph_path_category(G, 2)
        assert graph_of(pc.presentation).is_one_dimensional() == G.is_one_dimensional()


# -- trees ----------------------------------------------------------------------


def test_depth_one_trees_are_objects():
    T = tree_category(fx.P2(), 1)
    C = T.presentation
    assert set(C.generators) == {"x", "y", "m"}
    assert all(C.gen_is_object(g) for g in C.generators)


def test_tree_composition_root():
    T = tree_category(fx.P2(), 2)
    C = T.presentation
    g, f = "(m,y,x)", "(x,x,x)"
    assert f not in C.generators          # absorbed into the leaf x
    assert C.compose(E(g), E("x")) == E(g)
    assert tree_str(T.trees[g]) == "(m y x)"
    assert (C.src[g], C.tgt[g]) == ("x", "y")


@pytest.mark.parametrize("C", [fx.P2(), fx.L4(), fx.Z3()], ids=lambda C: C.name)
def test_tree_category_passes(C):
    T = tree_category(C, 2)
    P = T.presentation
    assert check_axioms(P).passed
    assert classify_category(P).is_sharp
    for g, t in T.trees.items():
        if len(t) == 3:
            u, left, right = t
            assert C.src[right[0]] == C.src[u] and C.tgt[left[0]] == C.tgt[u]


def test_tree_category_keeps_products():
    T = tree_category(fx.L4(), 2).presentation
    found = find_limits(make_standard_diagram(PRODUCT, T, [E("p"), E("q")]))
    assert [c.vertex for c in found] == [E("bot")]


def test_tree_category_rejects_bad_input():
    with pytest.raises(ConstructionError):
        tree_category(fx.T2(), 2)
    with pytest.raises(ConstructionError):
        tree_category(fx.P2(), 0)


# -- cells ------------------------------------------------------------------------


def test_cells():
    info = cell_analysis(fx.P2(), E("m"))
    assert info.dim == 1 and info.is_k_cell[1] and info.is_cellular_element
    assert dim(fx.T0(), E("a")) == 0
    with pytest.raises(ConstructionError):
        cell_analysis(fx.T2(), E("a"))


def test_identity_of_one_cell_is_two_cell():
    C = fx.P2().with_(idbound=1)
    info = cell_analysis(C, E("m", 1))
    assert info.dim == 2 and info.is_k_cell[2]


def test_to_globular_p2():
    G = to_globular(fx.P2(), 1)
    assert G.cells == {0: ("x", "y"), 1: ("m",)}
    assert G.sigma == {"m": "x"} and G.tau == {"m": "y"}


def test_from_globular_single_cell():
    G = GlobularPresentation({0: ("x",), 1: ("m",)}, {"m": "x"}, {"m": "x"})
    C = from_globular(G)
    assert C.comp == {} and C.src["m"] == "x"


def test_globularity_violation_rejected():
    G = GlobularPresentation({0: ("x", "y"), 1: ("u", "v"), 2: ("s",)},
                             {"u": "x", "v": "y", "s": "u"}, {"u": "y", "v": "x", "s": "v"})
    assert G.globularity_violations()
    with pytest.raises(ConstructionError):
        from_globular(G)


def test_to_globular_rejects_non_cellular():
    with pytest.raises(ConstructionError):
        to_globular(fx.T1(), 3)


@settings(max_examples=50, deadline=None)
@given(st.randoms(use_true_random=False))
def test_globular_round_trip(rng):
    G = random_globular(rng, 6)
    assert to_globular(from_globular(G), 6) == G


def test_tree_like():
    assert is_tree_like(fx.P2())
    assert not is_tree_like(fx.Z3())
    assert not is_tree_like(fx.T2())
