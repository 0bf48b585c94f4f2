#pragma once

// Random skew-LKS cluster graphs and matching oracles shared by the unit tests
// and the acceptance binary.

#include "lks/config_finder.hpp"
#include "lks/tree_decomp.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace lks::testing {

struct ClusterInstance {
    ClusterGraph cg;
    TreeStats stats;
    Rational eta;
    std::int64_t k = 0;
};

inline Rational pick_r(Rng& rng) {
    static const Rational rs[] = {Rational(1, 2), Rational(1, 3), Rational(1, 4), Rational(2, 5)};
    return rs[uniform_below(rng, 4)];
}

// Cluster graph with mL >= (1+eta) mS, no S-S edges, densities 0 or in [d,1],
// and k chosen so that every L-cluster has average degree at least (1+eta)k.
// Tree statistics come from a fine partition of a random tree with a small
// colour class of at most r k.
inline ClusterInstance random_cluster_instance(int clusters, std::uint64_t seed) {
    Rng rng(seed);
    const Rational eta(1, 10), d(1, 4);
    for (;;) {
        Rational r = pick_r(rng);
        int mS = static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(clusters / 2)));
        int mL = clusters - mS;
        if (Rational(mL) < (1 + eta) * mS) continue;
        std::int64_t lsize = 10 * (1 + static_cast<std::int64_t>(uniform_below(rng, 4)));
        Rational ssize = Rational(lsize) * (1 - r) / r;
        if (denominator(ssize) != 1) continue;
        std::vector<std::int64_t> sizes(clusters, lsize);
        for (int s = mL; s < clusters; ++s) sizes[s] = numerator(ssize).convert_to<std::int64_t>();
        std::vector<std::vector<Rational>> t(clusters, std::vector<Rational>(clusters, Rational(0)));
        static const Rational levels[] = {Rational(1, 4), Rational(1, 3), Rational(1, 2), Rational(3, 4), Rational(1)};
        const std::uint64_t p_edge = 1 + uniform_below(rng, 3);  // edge probability p_edge/4
        for (int a = 0; a < clusters; ++a)
            for (int b = a + 1; b < clusters; ++b) {
                if (a >= mL && b >= mL) continue;
                if (bernoulli(rng, p_edge, 4)) t[a][b] = t[b][a] = levels[uniform_below(rng, 5)];
            }
        ClusterGraph cg(mL, mS, sizes, t, r);
        Rational low = -1;
        for (int l : cg.L_set())
            if (low < 0 || cg.degbar(l) < low) low = cg.degbar(l);
        std::int64_t k = floor_int(low / (1 + eta));
        if (k < 8) continue;
        k = std::min<std::int64_t>(k, 400);
        // tree with k edges and small class at most r k
        std::int64_t cap = floor_int(r * k);
        if (cap < 1) continue;
        int small = 1 + static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(cap)));
        RootedTree tree = random_tree_with_classes(static_cast<int>(k) + 1, small, rng);
        int ell = std::max<int>(2, static_cast<int>(k / (2 + static_cast<std::int64_t>(uniform_below(rng, 8)))));
        if (ell >= k) ell = static_cast<int>(k) - 1;
        FinePartition fp = fine_partition(tree, ell);
        ForestPair f = to_anchored_forests(fp, tree);
        if (f.stats.a2 + f.stats.b1 == 0) continue;
        ClusterInstance inst{cg, f.stats, eta, k};
        return inst;
    }
}

// Minimum number of S0 clusters left uncovered, over every matching of H[L,S].
inline int brute_min_uncovered(const ClusterGraph& cg, const ClusterSet& S0) {
    std::vector<std::pair<int, int>> edges;
    for (int l : cg.L_set())
        for (int s : cg.S_set())
            if (cg.adjacent(l, s)) edges.emplace_back(l, s);
    std::vector<char> used(cg.size(), 0), is0(cg.size(), 0);
    for (int s : S0) is0[s] = 1;
    int best = static_cast<int>(S0.size());
    std::function<void(std::size_t, int)> go = [&](std::size_t i, int covered) {
        best = std::min(best, static_cast<int>(S0.size()) - covered);
        for (std::size_t j = i; j < edges.size(); ++j) {
            auto [l, s] = edges[j];
            if (used[l] || used[s]) continue;
            used[l] = used[s] = 1;
            go(j + 1, covered + is0[s]);
            used[l] = used[s] = 0;
        }
    };
    go(0, 0);
    return best;
}

// Largest matching in H[L,S] among those attaining the minimum above.
inline std::pair<int, int> brute_best_matching(const ClusterGraph& cg, const ClusterSet& S0) {
    std::vector<std::pair<int, int>> edges;
    for (int l : cg.L_set())
        for (int s : cg.S_set())
            if (cg.adjacent(l, s)) edges.emplace_back(l, s);
    std::vector<char> used(cg.size(), 0), is0(cg.size(), 0);
    for (int s : S0) is0[s] = 1;
    std::pair<int, int> best{0, 0};  // (covered S0, size)
    std::function<void(std::size_t, int, int)> go = [&](std::size_t i, int covered, int size) {
        best = std::max(best, std::make_pair(covered, size));
        for (std::size_t j = i; j < edges.size(); ++j) {
            auto [l, s] = edges[j];
            if (used[l] || used[s]) continue;
            used[l] = used[s] = 1;
            go(j + 1, covered + is0[s], size + 1);
            used[l] = used[s] = 0;
        }
    };
    go(0, 0, 0);
    return best;
}

// Matched clusters lying on some alternating path that starts at an uncovered
// S0 cluster, found by listing simple paths one step at a time.
inline ClusterSet naive_alternating_B(const ClusterGraph& cg, const ClusterMatching& M, const ClusterSet& S0) {
    std::vector<int> mate(cg.size(), -1);
    for (auto [l, s] : M) mate[l] = s, mate[s] = l;
    std::set<int> B;
    std::vector<char> on(cg.size(), 0);
    std::function<void(int)> from_s = [&](int s) {
        for (int l = 0; l < cg.size(); ++l) {
            if (!cg.is_L(l) || !cg.adjacent(s, l) || on[l] || mate[l] < 0 || mate[l] == s) continue;
            int t = mate[l];
            if (on[t]) continue;
            B.insert(l);
            B.insert(t);
            on[l] = on[t] = 1;
            from_s(t);
            on[l] = on[t] = 0;
        }
    };
    for (int s : S0)
        if (mate[s] < 0) {
            on[s] = 1;
            from_s(s);
            on[s] = 0;
        }
    return ClusterSet(B.begin(), B.end());
}

}  // namespace lks::testing
