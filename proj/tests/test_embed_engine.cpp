#include <doctest.h>

#include "lks/embed_engine.hpp"
#include "lks/fixtures.hpp"
#include "lks/oracle_lab.hpp"

#include <algorithm>

using namespace lks;

namespace {

using Table = std::vector<std::vector<Rational>>;

LksParams params(std::int64_t k, Rational r) {
    LksParams p;
    p.k = k;
    p.eta = Rational(1, 10);
    p.eps = Rational(1, 5);
    p.d = Rational(1, 4);
    p.r = r;
    return p;
}

Table table(int n, const std::vector<std::pair<int, int>>& edges, Rational d) {
    Table t(n, std::vector<Rational>(n, Rational(0)));
    for (auto [a, b] : edges) t[a][b] = t[b][a] = d;
    return t;
}

AnchoredForest forest_of(const RootedTree& T, int anchor, const std::vector<VertexSet>& pieces) {
    AnchoredForest F;
    F.anchor_colour = T.colour(anchor);
    F.anchors = {anchor};
    F.tau = 100;
    for (const auto& p : pieces) {
        AnchoredComponent c;
        c.vertices = make_set(p);
        c.anchors = {anchor};
        for (int v : c.vertices) (T.colour(v) == F.anchor_colour ? c.class2 : c.class1)++;
        F.components.push_back(c);
    }
    return F;
}

// root 0 with pieces hanging off it; each piece a small tree whose class next to
// the root is no larger than the other class
RootedTree spider_of_pieces(int pieces, Rng& rng, std::vector<VertexSet>& out) {
    std::vector<int> parent{-1};
    for (int i = 0; i < pieces; ++i) {
        VertexSet piece;
        int top = static_cast<int>(parent.size());
        parent.push_back(0);
        piece.push_back(top);
        int kids = 1 + static_cast<int>(uniform_below(rng, 3));
        for (int j = 0; j < kids; ++j) {
            int c = static_cast<int>(parent.size());
            parent.push_back(top);
            piece.push_back(c);
            if (bernoulli(rng, 1, 3)) {
                // grandchild of the top's colour plus one below it to keep the balance
                int g = static_cast<int>(parent.size());
                parent.push_back(c);
                piece.push_back(g);
                int gg = static_cast<int>(parent.size());
                parent.push_back(g);
                piece.push_back(gg);
            }
        }
        out.push_back(piece);
    }
    return RootedTree(0, parent);
}

}  // namespace

TEST_CASE("empty forest leaves the context alone") {
    SkewLksGraph g = synthesize_lks(2, 1, 10, table(3, {{0, 1}, {0, 2}, {1, 2}}, 1), params(5, Rational(1, 2)), 1);
    RootedTree T = path_tree(3);
    EmbedContext ctx(g, T);
    AnchoredForest empty;
    embed_anchored_matching(ctx, empty, 0, {{1, 2}}, Rational(1, 10), {});
    Reservation W = embed_anchored_degrees_reserve(ctx, empty, 0, {1}, Rational(1, 10), {});
    embed_anchored_degrees_complete(ctx, empty, W, {1}, {}, {}, Rational(1, 10));
    embed_anchored_degrees_cfg2(ctx, empty, 0, {1}, Rational(1, 10), {});
    CHECK(W.cluster.empty());
    CHECK(reservation_vertices(ctx, W).empty());
    for (int v = 0; v < 3; ++v) CHECK_FALSE(ctx.mapped(v));
    CHECK(ctx.accounted() == 0);
}

TEST_CASE("P4 component over one complete matching edge") {
    // A = L0, matching edge (L1, S2), all blocks complete
    SkewLksGraph g = synthesize_lks(2, 1, 10, table(3, {{0, 1}, {0, 2}, {1, 2}}, 1), params(5, Rational(1, 2)), 1);
    RootedTree T = path_tree(5);
    EmbedContext ctx(g, T);
    ctx.place(0, g.L[0][0], "seed");
    AnchoredForest F = forest_of(T, 0, {{1, 2, 3, 4}});
    REQUIRE(F.components[0].class1 == 2);
    REQUIRE(F.components[0].class2 == 2);
    embed_anchored_matching(ctx, F, 0, {{1, 2}}, Rational(1, 10), {});
    REQUIRE(ctx.phi().complete());
    CHECK(validate_embedding(ctx.phi(), T, g.host));
    for (int v : {1, 3}) CHECK(ctx.cluster_of(ctx.image_of(v)) == 2);
    for (int v : {2, 4}) CHECK(ctx.cluster_of(ctx.image_of(v)) == 1);
    CHECK(ctx.invariant_failures.empty());
}

TEST_CASE("twenty components over a three edge matching") {
    // A = L0, matching edges (L1,S4), (L2,S5), (L3,S6); r = 1/3
    std::vector<std::pair<int, int>> e = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {2, 3}, {0, 4}, {0, 5}, {0, 6},
                                          {1, 4}, {2, 5}, {3, 6}};
    const Rational eta(1, 20);
    int ok = 0;
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
        SkewLksGraph g = synthesize_lks(4, 3, 80, table(7, e, Rational(1, 2)), params(30, Rational(1, 3)), seed);
        Rng rng(seed);
        std::vector<VertexSet> pieces;
        RootedTree T = spider_of_pieces(20, rng, pieces);
        EmbedContext ctx(g, T);
        VertexSet ut = ctx.ultratypical(0);
        REQUIRE_FALSE(ut.empty());
        ctx.place(0, ut.front(), "seed");
        AnchoredForest F = forest_of(T, 0, pieces);
        for (const auto& K : F.components) REQUIRE(K.class1 <= K.class2);
        try {
            embed_anchored_matching(ctx, F, 0, {{1, 4}, {2, 5}, {3, 6}}, eta, {});
        } catch (const std::exception& ex) {
            FAIL_CHECK("seed " << seed << ": " << ex.what());
            continue;
        }
        CHECK(ctx.phi().complete());
        CHECK(validate_embedding(ctx.phi(), T, g.host));
        CHECK(ctx.invariant_failures.empty());
        // class 1 on S-clusters of the matching, class 2 on its L-clusters
        for (int v = 1; v < T.n(); ++v) {
            int c = ctx.cluster_of(ctx.image_of(v));
            if (T.colour(v) == 2) CHECK((c >= 4 && c <= 6));
            else CHECK((c >= 1 && c <= 3));
        }
        ok += ctx.invariant_failures.empty();
    }
    CHECK(ok == 50);
}

TEST_CASE("degree precondition failure carries the ledger") {
    SkewLksGraph g = synthesize_lks(2, 1, 10, table(3, {{0, 1}, {0, 2}, {1, 2}}, 1), params(5, Rational(1, 2)), 1);
    Rng rng(3);
    std::vector<VertexSet> pieces;
    RootedTree T = spider_of_pieces(8, rng, pieces);
    EmbedContext ctx(g, T);
    ctx.place(0, g.L[0][0], "seed");
    AnchoredForest F = forest_of(T, 0, pieces);
    try {
        embed_anchored_matching(ctx, F, 0, {{1, 2}}, Rational(1, 10), {});
        FAIL("expected a precondition error");
    } catch (const PreconditionError& e) {
        CHECK_FALSE(e.ledger.empty());
        CHECK(std::string(e.what()).find("degbar(A,S_M)") != std::string::npos);
    }
}

TEST_CASE("reservation inside one complete cluster and completion") {
    // A = L0, B = {L1}, L2 for the rest; three complete L-clusters of 20
    SkewLksGraph g = synthesize_lks(3, 0, 20, table(3, {{0, 1}, {0, 2}, {1, 2}}, 1), params(10, Rational(1, 2)), 1);
    // 0 - 1 - 2 - {3, 4}: class 1 (other colour than the anchor) is {1, 3, 4}
    RootedTree T(0, {-1, 0, 1, 2, 2});
    EmbedContext ctx(g, T);
    ctx.place(0, g.L[0][0], "seed");
    AnchoredForest F = forest_of(T, 0, {{1, 2, 3, 4}});
    REQUIRE(F.components[0].class1 == 3);
    Reservation W = embed_anchored_degrees_reserve(ctx, F, 0, {1}, Rational(1, 10), {});
    REQUIRE(W.cluster.size() == 1);
    CHECK(W.cluster[0] == 1);
    VertexSet block = ctx.reserved_block(W.block[0]);
    CHECK(block.size() == 2);  // |F1 n K| - 1
    for (int h : block) CHECK(ctx.cluster_of(h) == 1);
    CHECK(ctx.cluster_of(ctx.image_of(1)) == 1);

    embed_anchored_degrees_complete(ctx, F, W, {1}, {}, {}, Rational(1, 10));
    REQUIRE(ctx.phi().complete());
    CHECK(validate_embedding(ctx.phi(), T, g.host));
    for (int v : {1, 3, 4}) CHECK(ctx.cluster_of(ctx.image_of(v)) == 1);
    CHECK(ctx.reserved_block(W.block[0]).empty());
}

TEST_CASE("starved completion is a precondition error") {
    SkewLksGraph g = synthesize_lks(3, 0, 20, table(3, {{0, 1}, {0, 2}, {1, 2}}, 1), params(10, Rational(1, 2)), 1);
    RootedTree T(0, {-1, 0, 1, 2, 2});
    EmbedContext ctx(g, T);
    ctx.place(0, g.L[0][0], "seed");
    AnchoredForest F = forest_of(T, 0, {{1, 2, 3, 4}});
    Reservation W = embed_anchored_degrees_reserve(ctx, F, 0, {1}, Rational(1, 10), {});
    // U~ takes all of L2 and most of L1
    VertexSet tilde = g.L[2];
    for (int i = 0; i < 15; ++i) tilde.push_back(g.L[1][i]);
    tilde = make_set(tilde);
    CHECK_THROWS_AS(embed_anchored_degrees_complete(ctx, F, W, {1}, {}, tilde, Rational(1, 10)), PreconditionError);
}

TEST_CASE("configuration 2 through a cluster set") {
    // A = L0 sees S3; S3 sees L1 and L2
    std::vector<std::pair<int, int>> e = {{0, 1}, {0, 2}, {1, 2}, {0, 3}, {1, 3}, {2, 3}};
    SkewLksGraph g = synthesize_lks(3, 1, 20, table(4, e, 1), params(10, Rational(1, 2)), 1);
    RootedTree T(0, {-1, 0, 1, 1, 0, 4, 4});
    EmbedContext ctx(g, T);
    ctx.place(0, g.L[0][0], "seed");
    AnchoredForest F = forest_of(T, 0, {{1, 2, 3}, {4, 5, 6}});
    embed_anchored_degrees_cfg2(ctx, F, 0, {3}, Rational(1, 10), {});
    REQUIRE(ctx.phi().complete());
    CHECK(validate_embedding(ctx.phi(), T, g.host));
    for (int v : {1, 4}) CHECK(ctx.cluster_of(ctx.image_of(v)) == 3);
    for (int v : {2, 3, 5, 6}) CHECK(ctx.cluster_of(ctx.image_of(v)) != 3);

    // B = {A, S3} with no edges leaving it; L1-L2 sit apart
    SkewLksGraph lone = synthesize_lks(3, 1, 20, table(4, {{0, 3}, {1, 2}}, 1), params(10, Rational(1, 2)), 1);
    EmbedContext c2(lone, T);
    c2.place(0, lone.L[0][0], "seed");
    CHECK_THROWS_AS(embed_anchored_degrees_cfg2(c2, F, 0, {0, 3}, Rational(1, 10), {}), PreconditionError);
}

TEST_CASE("strip_class1_leaves") {
    RootedTree T(0, {-1, 0, 1, 2, 1});  // 0-1-2-3, 1-4
    AnchoredForest F = forest_of(T, 0, {{1, 2, 3, 4}});
    std::vector<std::pair<int, int>> removed;
    AnchoredForest S = strip_class1_leaves(F, T, &removed);
    // anchor colour 1: class 1 = colour 2 = {1, 3}; 3 is a leaf
    CHECK(removed == std::vector<std::pair<int, int>>{{3, 2}});
    CHECK(S.components[0].vertices == VertexSet{1, 2, 4});
    CHECK(S.components[0].class1 == 1);
    CHECK(S.components[0].class2 == 2);
}

TEST_CASE("split_fgh caps") {
    Rng rng(2);
    std::vector<VertexSet> pieces;
    RootedTree T = spider_of_pieces(12, rng, pieces);
    AnchoredForest F = forest_of(T, 0, pieces);
    int smallest = 1 << 30, total = 0;
    for (const auto& K : F.components) {
        smallest = std::min(smallest, K.class2);
        total += K.class2;
    }
    SplitFGH a = split_fgh(F, T, SplitMode::byMatchingThenS1, Rational(smallest - 1), Rational(smallest - 1), true);
    CHECK(a.F.components.empty());
    CHECK(a.G.components.empty());
    CHECK(a.H.components.size() == F.components.size());
    SplitFGH b = split_fgh(F, T, SplitMode::byMatchingThenS1, Rational(total), Rational(0), true);
    CHECK(b.F.components.size() == F.components.size());
    CHECK(b.G.components.empty());
    CHECK(b.H.components.empty());
    SplitFGH c = split_fgh(F, T, SplitMode::byMatching, Rational(-1), Rational(0), false);
    CHECK(c.F.components.empty());
    CHECK(c.G.components.size() == F.components.size());
}

TEST_CASE("split_fgh prefixes are maximal and ordered by skew") {
    for (std::uint64_t seed = 1; seed <= 200; ++seed) {
        Rng rng(seed);
        std::vector<VertexSet> pieces;
        RootedTree T = spider_of_pieces(3 + static_cast<int>(uniform_below(rng, 15)), rng, pieces);
        AnchoredForest F = forest_of(T, 0, pieces);
        int total = F.class2_size();
        Rational capF(static_cast<std::int64_t>(uniform_below(rng, static_cast<std::uint64_t>(total) + 2)), 1);
        Rational capG(static_cast<std::int64_t>(uniform_below(rng, static_cast<std::uint64_t>(total) + 2)), 1);
        SplitFGH s = split_fgh(F, T, SplitMode::byMatchingThenS1, capF, capG, true);
        // linear rescan of the order
        const auto& comps = F.components;
        for (std::size_t i = 1; i < s.order.size(); ++i) {
            const auto& p = comps[s.order[i - 1]];
            const auto& q = comps[s.order[i]];
            CHECK(static_cast<std::int64_t>(p.class1) * q.class2 >= static_cast<std::int64_t>(q.class1) * p.class2);
        }
        std::size_t nf = s.F.components.size(), ng = s.G.components.size();
        std::int64_t f2 = 0, g2 = 0;
        for (std::size_t i = 0; i < nf; ++i) f2 += comps[s.order[i]].class2;
        for (std::size_t i = nf; i < nf + ng; ++i) g2 += comps[s.order[i]].class2;
        CHECK(Rational(f2) <= capF);
        if (nf < s.order.size()) CHECK(Rational(f2 + comps[s.order[nf]].class2) > capF);
        CHECK(Rational(g2) <= capG);
        if (nf + ng < s.order.size()) CHECK(Rational(g2 + comps[s.order[nf + ng]].class2) > capG);
        CHECK(nf + ng + s.H.components.size() == comps.size());
        CHECK(s.F2 == f2);
        CHECK(s.G2 == g2);
        for (const auto* part : {&s.Fp, &s.Gp})
            for (const auto& K : part->components) CHECK(K.class1 <= K.class2);
    }
}

TEST_CASE("case A fixture embeds end to end") {
    CaseFixture f = make_case_fixture('A', 1);
    REQUIRE(f.tree.n() == 61);
    MasterResult r = master_embed(f.g, f.tree, f.fp, f.w, f.plan.delta);
    CHECK(r.config == 'A');
    CHECK(validate_embedding(r.cert, f.tree, f.g.host));
    CHECK(r.invariant_failures.empty());
    for (const auto& p : r.cert.provenance) CHECK_FALSE(p.empty());
}

TEST_CASE("each case fixture embeds on a few seeds") {
    for (char c : {'B', 'C', 'D'})
        for (std::uint64_t seed = 1; seed <= 3; ++seed) {
            CaseFixture f = make_case_fixture(c, seed);
            MasterResult r = master_embed(f.g, f.tree, f.fp, f.w, f.plan.delta);
            CHECK(r.config == c);
            CHECK_MESSAGE(validate_embedding(r.cert, f.tree, f.g.host), "case " << c << " seed " << seed);
            CHECK(r.invariant_failures.empty());
        }
}

TEST_CASE("path into a complete bipartite L-pair") {
    SkewLksGraph g = synthesize_lks(2, 0, 100, table(2, {{0, 1}}, 1), params(60, Rational(1, 2)), 1);
    RootedTree T = path_tree(61);
    FinePartition fp = fine_partition(T, 10);
    ForestPair fpair = to_anchored_forests(fp, T);
    ClusterGraph cg = ClusterGraph::from_lks(g);
    const Rational delta(1, 10);
    ClusterMatching M = matching_max_cover(cg, s0_threshold(fpair.stats, cg.r(), 4 * delta));
    auto w = test_configuration(cg, fpair.stats, 4 * delta, M, 'C', 0, 1);
    REQUIRE(w);
    MasterResult r = master_embed(g, T, fp, *w, delta);
    CHECK(r.config == 'C');
    CHECK(validate_embedding(r.cert, T, g.host));
}

TEST_CASE("a rejected witness is a precondition error") {
    CaseFixture f = make_case_fixture('A', 2);
    ConfigWitness bad = f.w;
    bad.Y = bad.X;
    CHECK_THROWS_AS(master_embed(f.g, f.tree, f.fp, bad, f.plan.delta), PreconditionError);
    ConfigWitness tampered = f.w;
    tampered.inequalities[0].lhs += 1000;
    CHECK_THROWS_AS(master_embed(f.g, f.tree, f.fp, tampered, f.plan.delta), PreconditionError);
}

TEST_CASE("master embedding is deterministic") {
    CaseFixture f = make_case_fixture('B', 4);
    MasterResult a = master_embed(f.g, f.tree, f.fp, f.w, f.plan.delta);
    MasterResult b = master_embed(f.g, f.tree, f.fp, f.w, f.plan.delta);
    CHECK(a.cert.map == b.cert.map);
    CHECK(a.cert.provenance == b.cert.provenance);
    CHECK(certificate_report(a).dump() == certificate_report(b).dump());
    CaseFixture f2 = make_case_fixture('B', 4);
    CHECK(f2.tree.parents() == f.tree.parents());
    CHECK(f2.g.host == f.g.host);
}

TEST_CASE("small trees: pipeline and exhaustive search agree on existence") {
    // a 20-vertex path in a complete bipartite L-pair of side 30
    SkewLksGraph g = synthesize_lks(2, 0, 30, table(2, {{0, 1}}, 1), params(20, Rational(1, 2)), 1);
    for (int n : {8, 14, 21}) {
        RootedTree T = path_tree(n);
        FinePartition fp = fine_partition(T, 4);
        ForestPair fpair = to_anchored_forests(fp, T);
        ClusterGraph cg = ClusterGraph::from_lks(g);
        const Rational delta(1, 10);
        ClusterMatching M = matching_max_cover(cg, s0_threshold(fpair.stats, cg.r(), 4 * delta));
        auto w = test_configuration(cg, fpair.stats, 4 * delta, M, 'C', 0, 1);
        REQUIRE(w);
        MasterResult r = master_embed(g, T, fp, *w, delta);
        CHECK(validate_embedding(r.cert, T, g.host));
        auto oracle = brute_force_embed(T, g.host);
        REQUIRE(oracle);
        CHECK(validate_embedding(*oracle, T, g.host));
    }
}
