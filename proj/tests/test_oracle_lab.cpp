#include <doctest.h>

#include "lks/oracle_lab.hpp"

#include <algorithm>
#include <numeric>
#include <set>

using namespace lks;

namespace {

Graph relabel(const Graph& g, const std::vector<int>& perm) {
    Graph h(g.n());
    for (auto [u, v] : g.edges()) h.add_edge(perm[u], perm[v]);
    return h;
}

RootedTree relabel_tree(const RootedTree& t, const std::vector<int>& perm) {
    std::vector<std::pair<int, int>> e;
    for (int v = 0; v < t.n(); ++v)
        if (t.parent(v) >= 0) e.push_back({perm[v], perm[t.parent(v)]});
    return RootedTree::from_edges(t.n(), e, perm[t.root()]);
}

int max_degree(const Graph& g) {
    int m = 0;
    for (int v = 0; v < g.n(); ++v) m = std::max(m, g.degree(v));
    return m;
}

}  // namespace

TEST_CASE("brute force examples") {
    RootedTree p3 = path_tree(3);
    auto c = brute_force_embed(p3, complete_graph(3));
    REQUIRE(c);
    CHECK(validate_embedding(*c, p3, complete_graph(3)));

    RootedTree claw = RootedTree::from_edges(4, {{0, 1}, {0, 2}, {0, 3}});
    CHECK_FALSE(brute_force_embed(claw, cycle_graph(4)));
    CHECK_FALSE(reference_embed(claw, cycle_graph(4)));

    Graph k7 = complete_graph(7);
    for (int n = 1; n <= 7; ++n)
        for (const RootedTree& t : nonisomorphic_trees(n)) {
            auto e = brute_force_embed(t, k7);
            REQUIRE(e);
            CHECK(validate_embedding(*e, t, k7));
        }
}

TEST_CASE("search budget is enforced") {
    RootedTree t = path_tree(12);
    Graph g = complete_bipartite(5, 7);  // no P12: the 5 side is too small
    CHECK_THROWS_AS(reference_embed(t, g, 10), BudgetExceeded);
}

TEST_CASE("isomorphism class counts") {
    const int graphs[] = {1, 1, 2, 4, 11, 34, 156, 1044};
    for (int n = 1; n <= 7; ++n) CHECK(static_cast<int>(nonisomorphic_graphs(n).size()) == graphs[n]);
    const int trees[] = {0, 1, 1, 1, 2, 3, 6, 11, 23, 47, 106};
    for (int n = 1; n <= 10; ++n) CHECK(static_cast<int>(nonisomorphic_trees(n).size()) == trees[n]);
}

TEST_CASE("canonical codes are invariant under relabelling") {
    Rng rng(4);
    for (int trial = 0; trial < 200; ++trial) {
        int n = 2 + static_cast<int>(uniform_below(rng, 9));
        Graph g(n);
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b)
                if (bernoulli(rng, 1, 2)) g.add_edge(a, b);
        std::vector<int> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        shuffle_with(perm, rng);
        Graph h = relabel(g, perm);
        CHECK(canonical_code(g) == canonical_code(h));
        Graph back = graph_from_code(n, canonical_code(g));
        CHECK(canonical_code(back) == canonical_code(g));
        CHECK(back.edge_count() == g.edge_count());
    }
    // the two cubic graphs on 6 vertices differ
    Graph prism(6);
    for (auto [a, b] : std::vector<std::pair<int, int>>{{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}, {0, 3}, {1, 4}, {2, 5}})
        prism.add_edge(a, b);
    CHECK(canonical_code(prism) != canonical_code(complete_bipartite(3, 3)));
}

TEST_CASE("tree encodings are invariant under relabelling and rerooting") {
    Rng rng(6);
    for (int trial = 0; trial < 100; ++trial) {
        int n = 2 + static_cast<int>(uniform_below(rng, 20));
        RootedTree t = random_tree(n, rng);
        std::vector<int> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        shuffle_with(perm, rng);
        CHECK(tree_canonical(t) == tree_canonical(relabel_tree(t, perm)));
    }
    CHECK(tree_canonical(path_tree(5)) != tree_canonical(RootedTree::from_edges(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}})));
    CHECK(tree_diameter(path_tree(7)) == 6);
    CHECK(tree_diameter(bistar(3, 2)) == 3);
}

TEST_CASE("extremal construction for k = 7, r = 1/2") {
    Graph g = gen_extremal(7, Rational(1, 2));
    REQUIRE(g.n() == 8);
    // clique of 3, independent set of 5, everything between
    auto prof = degree_profile(g);
    CHECK(prof == std::map<int, int>{{3, 5}, {7, 3}});
    CHECK(g.edge_count() == 3 + 15);
    CHECK_FALSE(brute_force_embed(path_tree(8), g));
    CHECK_FALSE(reference_embed(path_tree(8), g));
    CHECK(brute_force_embed(path_tree(7), g));
}

TEST_CASE("extremal construction for k = 9, r = 1/3") {
    Graph g = gen_extremal(9, Rational(1, 3));
    REQUIRE(g.n() == 10);
    CHECK(degree_profile(g) == std::map<int, int>{{2, 8}, {9, 2}});
    CHECK_FALSE(brute_force_embed(path_tree(6), g));
    CHECK(brute_force_embed(path_tree(5), g));
    CHECK_THROWS_AS(gen_extremal(3, Rational(1, 3)), std::invalid_argument);
}

TEST_CASE("tight trees") {
    RootedTree p = gen_tight_tree(7, Rational(1, 2));
    CHECK(tree_canonical(p) == tree_canonical(path_tree(8)));

    RootedTree t = gen_tight_tree(9, Rational(1, 3));
    REQUIRE(t.n() == 10);
    CHECK(t.small_class_size() == 3);
    Graph tg = t.as_graph();
    CHECK(max_degree(tg) == 5);
    CHECK(tree_diameter(t) == 6);
    int leaves = 0;
    for (int v = 0; v < 10; ++v) leaves += tg.degree(v) == 1;
    CHECK(leaves == 5);
}

TEST_CASE("tight trees do not embed in the extremal graphs") {
    for (int k : {5, 7, 9, 11})
        for (Rational r : {Rational(1, 2), Rational(1, 3)}) {
            Graph g = gen_extremal(k, r, 2);
            RootedTree t = gen_tight_tree(k, r);
            CHECK(fits_vertex_skew(t, r));
            CHECK_FALSE(brute_force_embed(t, g));
            // every vertex of the clique has degree k
            CHECK(degree_profile(g).rbegin()->first == k);
        }
}

TEST_CASE("bistars") {
    CHECK(bistar_check(7));
    CHECK(bistar_check(9));
    CHECK_FALSE(reference_embed(bistar(3, 3), complete_bipartite(3, 7)));
    auto e = brute_force_embed(bistar(3, 3), complete_bipartite(4, 4));
    REQUIRE(e);
    CHECK(validate_embedding(*e, bistar(3, 3), complete_bipartite(4, 4)));
    CHECK_THROWS_AS(bistar_check(8), std::invalid_argument);
}

TEST_CASE("the two searches agree on small instances") {
    std::vector<RootedTree> trees;
    for (int n = 1; n <= 5; ++n)
        for (const auto& t : nonisomorphic_trees(n)) trees.push_back(t);
    int disagreements = 0, pairs = 0;
    for (int hn = 1; hn <= 6; ++hn)
        for (const Graph& g : nonisomorphic_graphs(hn))
            for (const RootedTree& t : trees) {
                auto a = brute_force_embed(t, g);
                auto b = reference_embed(t, g);
                ++pairs;
                disagreements += a.has_value() != b.has_value();
                if (a) CHECK(validate_embedding(*a, t, g));
                if (b) CHECK(validate_embedding(*b, t, g));
            }
    CHECK(disagreements == 0);
    CHECK(pairs > 0);
}

TEST_CASE("conjecture trees and the degree hypothesis") {
    auto trees = conjecture_trees(4, Rational(1, 2));
    std::set<std::string> seen;
    for (const auto& t : trees) {
        CHECK(t.n() >= 2);
        CHECK(t.n() <= 5);
        CHECK(Rational(t.small_class_size()) <= Rational(5, 2));
        CHECK(seen.insert(tree_canonical(t)).second);
    }
    // trees on 2..5 vertices: 1 + 1 + 2 + 3 = 7, all with a class of size <= 2
    CHECK(trees.size() == 7);

    CHECK(meets_degree_hypothesis(complete_graph(6), 4, Rational(1, 2)));
    CHECK_FALSE(meets_degree_hypothesis(cycle_graph(6), 4, Rational(1, 2)));
}

TEST_CASE("exhaustive scan at k = 4, n = 6") {
    ScanMode mode;
    ScanReport rep = conjecture_scan(4, Rational(1, 2), 6, mode);
    CHECK(rep.counterexamples.empty());
    CHECK(rep.oracle_disagreements.empty());
    CHECK(rep.hosts_generated == 156);
    CHECK(rep.instances_tried + rep.hosts_skipped == rep.hosts_generated);
    CHECK(rep.hosts_skipped > 0);
    CHECK(rep.pairs_checked == rep.instances_tried * rep.trees);
    Json j = scan_report_json(rep);
    CHECK(j["counterexamples"].size() == 0);
    CHECK_FALSE(j.contains("runtime_seconds"));
}

TEST_CASE("sampled scans are reproducible and independent of the job count") {
    ScanMode a{false, 7, 400, 1}, b{false, 7, 400, 3};
    ScanReport ra = conjecture_scan(6, Rational(1, 3), 9, a);
    ScanReport rb = conjecture_scan(6, Rational(1, 3), 9, b);
    CHECK(ra.counterexamples.empty());
    CHECK(scan_report_json(ra)["hosts_skipped"] == scan_report_json(rb)["hosts_skipped"]);
    CHECK(ra.instances_tried == rb.instances_tried);
    CHECK(ra.pairs_checked == rb.pairs_checked);
}

TEST_CASE("ramsey checks") {
    RootedTree p4 = path_tree(4);
    RamseyVerdict five = ramsey_check({p4, p4}, 5);
    CHECK(five.forced);
    CHECK_FALSE(five.inconclusive);

    RamseyVerdict four = ramsey_check({p4, p4}, 4);
    CHECK_FALSE(four.forced);
    REQUIRE(four.colouring.size() == 6);
    // neither colour class contains a P4, checked by the other search
    for (int c = 0; c < 2; ++c) CHECK_FALSE(reference_embed(p4, colour_class(4, four.colouring, c)));

    // one colour: forced iff the tree fits in K_n
    RootedTree s4 = RootedTree::from_edges(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}});
    for (int n = 2; n <= 6; ++n)
        CHECK(ramsey_check({s4}, n).forced == brute_force_embed(s4, complete_graph(n)).has_value());
}

TEST_CASE("pigeonhole colour") {
    // K_5 with colour 0 on a spanning star at 0 and the triangle 1-2-3, colour 1 elsewhere
    const int n = 5;
    std::vector<int> col;
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) col.push_back((a == 0 || (b <= 3 && a >= 1)) ? 0 : 1);
    PigeonholeStep st = pigeonhole_colour(n, col, {2, 2});
    // colour 0 degrees: 0 -> 4, 1,2,3 -> 3, 4 -> 1; colour 1 degrees: 4 -> 3, 1,2,3 -> 1
    CHECK(st.colour == 0);
    CHECK(st.vertices == 4);
    CHECK(st.meets_share);
}
