#include <doctest.h>

#include "lks/graph.hpp"
#include "lks/io.hpp"

#include <algorithm>
#include <set>

using namespace lks;

namespace {

// two-colouring by plain BFS over an edge list, no use of RootedTree internals
int smaller_class_by_bfs(const RootedTree& t) {
    Graph g = t.as_graph();
    std::vector<int> side(g.n(), -1);
    std::vector<int> queue{0};
    side[0] = 0;
    for (std::size_t i = 0; i < queue.size(); ++i)
        for (int w : g.neighbours(queue[i]))
            if (side[w] < 0) {
                side[w] = 1 - side[queue[i]];
                queue.push_back(w);
            }
    int ones = static_cast<int>(std::count(side.begin(), side.end(), 1));
    return std::min(ones, g.n() - ones);
}

bool connected_acyclic(const Graph& g) {
    if (g.edge_count() + 1 != static_cast<std::size_t>(g.n())) return false;
    std::vector<char> seen(g.n(), 0);
    std::vector<int> st{0};
    seen[0] = 1;
    int count = 1;
    while (!st.empty()) {
        int v = st.back();
        st.pop_back();
        for (int w : g.neighbours(v))
            if (!seen[w]) {
                seen[w] = 1;
                ++count;
                st.push_back(w);
            }
    }
    return count == g.n();
}

// double loop over pattern pairs
bool naive_embedding_check(const std::vector<int>& map, const Graph& pattern, const Graph& host) {
    for (int u = 0; u < pattern.n(); ++u) {
        if (map[u] < 0 || map[u] >= host.n()) return false;
        for (int v = u + 1; v < pattern.n(); ++v) {
            if (map[u] == map[v]) return false;
            if (pattern.has_edge(u, v) && !host.has_edge(map[u], map[v])) return false;
        }
    }
    return true;
}

EmbeddingCertificate cert_of(std::vector<int> map) {
    EmbeddingCertificate c(static_cast<int>(map.size()));
    c.map = std::move(map);
    return c;
}

}  // namespace

TEST_CASE("rationals render as p/q") {
    CHECK(to_string(Rational(2, 6)) == "1/3");
    CHECK(parse_rational("3/9") == Rational(1, 3));
    CHECK(parse_rational("0.25") == Rational(1, 4));
    CHECK(parse_rational("5") == Rational(5));
    CHECK(parse_rational("010/4") == Rational(5, 2));
    CHECK(parse_rational("-0.05") == Rational(-1, 20));
    CHECK_THROWS(parse_rational("-/3"));
}

TEST_CASE("validate_embedding trivial cases") {
    Graph tri = complete_graph(3);
    CHECK(validate_embedding(cert_of({0, 1, 2}), tri, tri));
    RootedTree p3 = RootedTree::from_edges(3, {{0, 1}, {1, 2}});
    Graph host(4);
    host.add_edge(0, 1);
    host.add_edge(2, 3);
    CHECK_FALSE(validate_embedding(cert_of({0, 0, 1}), p3, complete_graph(4)));
    CHECK_FALSE(validate_embedding(cert_of({0, 2, 1}), p3, host));  // 0 and 2 not adjacent
    CHECK(validate_embedding(cert_of({0, 1, 2}), p3, complete_graph(3)));
    CHECK_FALSE(validate_embedding(cert_of({0, 1, -1}), p3, complete_graph(3)));
}

TEST_CASE("validate_embedding agrees with a naive double loop") {
    Rng rng(11);
    for (int trial = 0; trial < 400; ++trial) {
        int n = 2 + static_cast<int>(uniform_below(rng, 6));
        int hn = n + static_cast<int>(uniform_below(rng, 4));
        RootedTree t = random_tree(n, rng);
        Graph host(hn);
        for (int a = 0; a < hn; ++a)
            for (int b = a + 1; b < hn; ++b)
                if (bernoulli(rng, 2, 3)) host.add_edge(a, b);
        std::vector<int> map(n);
        for (int& m : map) m = static_cast<int>(uniform_below(rng, hn));
        if (trial % 3 == 0) {
            std::vector<int> perm(hn);
            for (int i = 0; i < hn; ++i) perm[i] = i;
            shuffle_with(perm, rng);
            std::copy(perm.begin(), perm.begin() + n, map.begin());
        }
        Graph pattern = t.as_graph();
        CHECK(validate_embedding(cert_of(map), t, host) == naive_embedding_check(map, pattern, host));
    }
}

TEST_CASE("skew_of examples") {
    CHECK(skew_of(RootedTree::from_edges(2, {{0, 1}})) == Rational(1, 2));
    RootedTree star = generate_tree(8, TreeShape::star, Rational(1, 8));
    CHECK(skew_of(star) == Rational(1, 8));
    Rng rng(3);
    for (int i = 0; i < 20; ++i) {
        RootedTree t = random_tree(20, rng);
        CHECK(skew_of(t) == Rational(smaller_class_by_bfs(t), 20));
    }
}

TEST_CASE("skew conventions are exposed separately") {
    RootedTree p8 = generate_tree(8, TreeShape::path, Rational(1, 2));
    CHECK(fits_vertex_skew(p8, Rational(1, 2)));      // 4 <= 4
    CHECK_FALSE(fits_edge_skew(p8, Rational(1, 2)));  // 4 > 7/2
}

TEST_CASE("generate_tree examples") {
    RootedTree p = generate_tree(8, TreeShape::path, Rational(1, 2));
    CHECK(p.class_size(1) == 4);
    CHECK(p.class_size(2) == 4);
    int leaves = 0;
    for (int v = 0; v < 8; ++v) leaves += p.as_graph().degree(v) == 1;
    CHECK(leaves == 2);

    RootedTree s = generate_tree(8, TreeShape::star, Rational(1, 8));
    CHECK(s.small_class_size() == 1);
    CHECK(*std::max_element(s.colours().begin(), s.colours().end()) == 2);

    RootedTree a = generate_tree(30, TreeShape::random, Rational(1, 3), 42);
    RootedTree b = generate_tree(30, TreeShape::random, Rational(1, 3), 42);
    CHECK(a.parents() == b.parents());
    CHECK(smaller_class_by_bfs(a) <= 10);

    CHECK_THROWS_AS(generate_tree(8, TreeShape::path, Rational(1, 4)), UnreachableSkew);
}

TEST_CASE("generated trees are trees with proper colourings under the cap") {
    const TreeShape shapes[] = {TreeShape::path, TreeShape::star, TreeShape::caterpillar, TreeShape::random};
    const Rational caps[] = {Rational(1, 2), Rational(1, 3), Rational(1, 5)};
    for (TreeShape sh : shapes)
        for (const Rational& cap : caps)
            for (int n : {6, 15, 40}) {
                RootedTree t;
                try {
                    t = generate_tree(n, sh, cap, static_cast<std::uint64_t>(n));
                } catch (const UnreachableSkew&) {
                    continue;
                }
                Graph g = t.as_graph();
                CHECK(connected_acyclic(g));
                for (auto [u, v] : g.edges()) CHECK(t.colour(u) != t.colour(v));
                CHECK(skew_of(t) <= cap);
                CHECK(t.colour(t.root()) == 1);
            }
}

TEST_CASE("random_tree_with_classes hits the requested split") {
    Rng rng(5);
    for (int small = 1; small <= 10; ++small) {
        RootedTree t = random_tree_with_classes(21, small, rng);
        CHECK(connected_acyclic(t.as_graph()));
        CHECK(smaller_class_by_bfs(t) == small);
    }
}

TEST_CASE("tree queries") {
    RootedTree t = RootedTree::from_edges(6, {{0, 1}, {1, 2}, {1, 3}, {3, 4}, {0, 5}});
    CHECK(t.distance(2, 4) == 3);
    CHECK(t.lca(2, 4) == 1);
    CHECK(t.path(5, 4) == std::vector<int>{5, 0, 1, 3, 4});
    CHECK(t.depth(4) == 3);
}

TEST_CASE("edge list round trip") {
    Rng rng(9);
    std::vector<Graph> corpus = {Graph(1), complete_graph(5), complete_bipartite(3, 4), path_graph(7), cycle_graph(6)};
    for (int i = 0; i < 20; ++i) {
        Graph g(12);
        for (int a = 0; a < 12; ++a)
            for (int b = a + 1; b < 12; ++b)
                if (bernoulli(rng, 1, 3)) g.add_edge(a, b);
        corpus.push_back(g);
    }
    for (const Graph& g : corpus) {
        CHECK(parse_edge_list(render_edge_list(g)) == g);
        CHECK(graph_from_json(graph_to_json(g)) == g);
    }
}

TEST_CASE("edge list parse errors") {
    CHECK_THROWS_AS(parse_edge_list("3 2\n0 1\n"), ParseError);
    CHECK_THROWS_AS(parse_edge_list("3 1\n0 5\n"), ParseError);
    CHECK_THROWS_AS(parse_edge_list("3 1\n1 1\n"), ParseError);
    CHECK_THROWS_AS(parse_edge_list("x\n"), ParseError);
}

TEST_CASE("tree and certificate json round trip") {
    Rng rng(2);
    RootedTree t = random_tree(15, rng);
    Json j = tree_to_json(t);
    CHECK(j["n"] == 15);
    RootedTree back = tree_from_json(j);
    CHECK(back.parents() == t.parents());
    CHECK(back.colours() == t.colours());

    EmbeddingCertificate c = cert_of({3, 1, 2});
    c.provenance = {"a", "b", "greedy-leaf"};
    EmbeddingCertificate c2 = certificate_from_json(certificate_to_json(c));
    CHECK(c2.map == c.map);
    CHECK(c2.provenance == c.provenance);
}

TEST_CASE("graph basics") {
    Graph g(4);
    CHECK(g.add_edge(0, 1));
    CHECK_FALSE(g.add_edge(1, 0));
    CHECK_THROWS(g.add_edge(2, 2));
    CHECK(g.edge_count() == 1);
    CHECK(g.degree_into(0, {1, 2, 3}) == 1);
    CHECK(complete_bipartite(3, 4).edges_between({0, 1, 2}, {3, 4, 5, 6}) == 12);
    CHECK(g.remove_edge(0, 1));
    CHECK(g.edge_count() == 0);
}
