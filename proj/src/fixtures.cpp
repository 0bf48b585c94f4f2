#include "lks/fixtures.hpp"

namespace lks {

namespace {

constexpr int kL = 7, kS = 4;

// symmetric table, L ids 0..6, S ids 7..10; pairs in `half` get density 1/2,
// pairs in `low` get low_density
std::vector<std::vector<Rational>> table(const std::vector<std::pair<int, int>>& half,
                                         const std::vector<std::pair<int, int>>& low = {},
                                         const Rational& low_density = Rational(1, 4)) {
    std::vector<std::vector<Rational>> t(kL + kS, std::vector<Rational>(kL + kS, Rational(0)));
    for (auto [a, b] : half) t[a][b] = t[b][a] = Rational(1, 2);
    for (auto [a, b] : low) t[a][b] = t[b][a] = low_density;
    return t;
}

}  // namespace

CasePlan case_plan(char config) {
    CasePlan p;
    p.config = config;
    p.mL = kL;
    p.mS = kS;
    p.cluster_size = 40;
    p.params.k = 60;
    p.params.eta = Rational(1, 10);
    // random blocks of 40 at 1/2 are not regular at 1/5: the sampled search
    // finds 8 by 8 sub-blocks a third away from the block density
    p.params.eps = Rational(3, 10);
    p.params.d = Rational(1, 4);
    p.params.r = Rational(1, 3);
    p.delta = Rational(1, 10);
    p.ell = 10;
    p.small_class = 20;
    std::vector<std::pair<int, int>> e, low;
    Rational low_density(1, 4);
    switch (config) {
    case 'A':
        // A = 0 sees two S-clusters; B = 1 sits in the L core
        e = {{0, 1}, {0, 2}, {1, 2}, {1, 3}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {4, 6}, {3, 5},
             {0, 7}, {0, 8}, {3, 7}, {4, 8}, {5, 9}, {6, 9}, {1, 10}, {2, 10}};
        p.X = 0;
        p.Y = 1;
        break;
    case 'B':
        // A = 0 sees S-cluster 7, matched to A itself, and S-cluster 10, which
        // 8 and 9 keep out of the matching; both at density 1/4 so that the
        // matching, S1 and L stages all take part
        e = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {4, 6}, {3, 5},
             {5, 8}, {6, 8}, {5, 9}, {6, 9}, {5, 10}, {6, 10}, {1, 4}, {2, 4}};
        low = {{0, 7}, {0, 10}};
        p.params.d = Rational(1, 8);
        p.X = 0;
        p.Y = 1;
        break;
    case 'C':
        // as B with the pairs at A down to 1/8, so that the L stage takes the
        // components the two S-clusters cannot
        e = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {4, 6}, {3, 5},
             {5, 8}, {6, 8}, {5, 9}, {6, 9}, {5, 10}, {6, 10}, {1, 4}, {2, 4}, {1, 3}};
        low = {{0, 7}, {0, 10}};
        low_density = Rational(1, 8);
        p.params.d = Rational(1, 16);
        p.X = 0;
        p.Y = 1;
        p.small_class = 19;
        break;
    case 'D':
        // no matching edge has both ends next to A = 0
        e = {{0, 1}, {0, 2}, {1, 5}, {2, 6}, {3, 4}, {3, 5}, {3, 6}, {4, 5}, {4, 6}, {5, 6}, {1, 2},
             {0, 7}, {3, 7}, {0, 8}, {4, 8}, {1, 9}, {5, 9}, {2, 10}, {6, 10}};
        p.X = 0;
        p.Y = 1;
        p.small_class = 19;
        break;
    default:
        throw std::invalid_argument("case must be one of A, B, C, D");
    }
    p.density = table(e, low, low_density);
    return p;
}

std::optional<ConfigWitness> case_witness(const CasePlan& plan, const ClusterGraph& cg, const RootedTree& tree,
                                          const FinePartition& fp) {
    ForestPair fpair = to_anchored_forests(fp, tree);
    const TreeStats& st = fpair.stats;
    const Rational eta = 4 * plan.delta;
    try {
        check_stats(st, cg.r());
    } catch (const InvalidStats&) {
        return std::nullopt;
    }
    ClusterMatching M = matching_max_cover(cg, s0_threshold(st, cg.r(), eta));
    auto w = test_configuration(cg, st, eta, M, plan.config, plan.X, plan.Y);
    if (!w) return std::nullopt;
    for (const auto& c : case_conditions(cg, st, *w, plan.delta))
        if (!c.holds()) return std::nullopt;
    return w;
}

CaseFixture make_case_fixture(char config, std::uint64_t seed, int max_tree_attempts) {
    CaseFixture f;
    f.plan = case_plan(config);
    f.seed = seed;
    f.g = synthesize_lks(f.plan.mL, f.plan.mS, f.plan.cluster_size, f.plan.density, f.plan.params, seed);
    ClusterGraph cg = ClusterGraph::from_lks(f.g);
    Rng rng(seed ^ 0x9e3779b97f4a7c15ULL);
    const int n = static_cast<int>(f.plan.params.k) + 1;
    for (int t = 1; t <= max_tree_attempts; ++t) {
        RootedTree tree = random_tree_with_classes(n, f.plan.small_class, rng);
        FinePartition fp = fine_partition(tree, f.plan.ell);
        auto w = case_witness(f.plan, cg, tree, fp);
        if (!w) continue;
        f.tree = tree;
        f.fp = fp;
        f.w = *w;
        f.tree_attempts = t;
        return f;
    }
    throw FixtureUnavailable(std::string("no tree satisfying case ") + config + " within " +
                             std::to_string(max_tree_attempts) + " draws");
}

}  // namespace lks
