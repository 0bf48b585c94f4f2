from fractions import Fraction

import pytest

import lks


def test_graph_and_tree_roundtrip():
    g = lks.Graph(4, [(0, 1), (1, 2), (2, 3)])
    assert g.edge_count == 3 and g.has_edge(1, 2) and not g.has_edge(0, 3)
    assert lks.Graph.from_json(g.to_json()) == g
    t = lks.RootedTree.from_edges(5, [(0, 1), (0, 2), (0, 3), (0, 4)])
    assert t.small_class_size == 1
    assert lks.RootedTree.from_json(t.to_json()).n == 5


def test_rationals_in_every_form():
    for r in ("1/2", Fraction(1, 2)):
        g = lks.gen_extremal(7, r)
        assert g.n == 8
        assert lks.degree_profile(g) == {3: 5, 7: 3}
    with pytest.raises(ValueError, match="cannot parse"):
        lks.gen_extremal(7, "1/x")
    with pytest.raises(TypeError):
        lks.gen_extremal(7, 0.5)


def test_embedding_searches():
    p8 = lks.path_tree(8)
    g = lks.gen_extremal(7, "1/2")
    assert lks.brute_force_embed(p8, g) is None
    m = lks.brute_force_embed(lks.path_tree(7), g)
    assert m is not None and lks.validate_embedding(m, lks.path_tree(7), g)
    assert not lks.validate_embedding([0, 0, 1, 2, 3, 4, 5], lks.path_tree(7), g)
    t = lks.gen_tight_tree(9, "1/3")
    assert lks.brute_force_embed(t, lks.gen_extremal(9, "1/3")) is None


def test_fine_partition_is_verified():
    t = lks.path_tree(20)
    fp = lks.fine_partition(t, 5)
    assert fp["ell"] == 5
    assert lks.verify_fine_partition(t, fp) == []
    assert fp["stats"]["k"] == 19


def test_regularity():
    kb = lks.complete_bipartite(6, 6)
    v = lks.is_regular(kb, list(range(6)), list(range(6, 12)), "1/4")
    assert v["regular"]
    with pytest.raises(ValueError, match="positive"):
        lks.is_regular(kb, [0], [6], 0)


def test_oracle_checks():
    assert lks.bistar_check(7)
    p4 = lks.path_tree(4)
    assert lks.ramsey_check([p4, p4], 5)["forced"]
    four = lks.ramsey_check([p4, p4], 4)
    assert not four["forced"] and len(four["colouring"]) == 6
    rep = lks.conjecture_scan(4, "1/2", 6)
    assert rep["counterexamples"] == []


def test_case_fixture_end_to_end():
    f = lks.case_fixture("A", 1)
    assert lks.validate_lks(f["lks"]) == []
    tree = lks.RootedTree.from_json(f["tree"])
    w = lks.find_configuration(f["lks"], lks.fine_partition(tree, f["fine_partition"]["ell"])["stats"],
                               4 * Fraction(f["delta"]))
    assert w is not None
    rep = lks.embed(f["lks"], tree, f["fine_partition"], f["witness"], f["delta"])
    assert rep["valid"]


def test_library_errors_are_typed():
    with pytest.raises(lks.ParseError):
        lks.Graph.from_json({"n": 3})
    with pytest.raises(lks.BudgetExceeded):
        lks.reference_embed(lks.path_tree(12), lks.complete_bipartite(5, 7), 10)
