#pragma once

#include "lks/cluster_model.hpp"
#include "lks/config_finder.hpp"
#include "lks/embed_engine.hpp"
#include "lks/tree_decomp.hpp"

#include <string>
#include <vector>

namespace lks {

// Hand-built cluster layouts, one per case: 7 L-clusters of 40 vertices and
// 4 S-clusters of 80 at density 1/2 (lower on a few pairs at A), r = 1/3, n = 600, k = 60.
struct CasePlan {
    char config = '?';
    int mL = 0, mS = 0, cluster_size = 0;
    std::vector<std::vector<Rational>> density;
    LksParams params;
    int X = -1, Y = -1;  // the pair the case is tested on
    Rational delta;
    int ell = 0;
    int small_class = 0;  // colour class size of the sampled trees
};

CasePlan case_plan(char config);

struct CaseFixture {
    CasePlan plan;
    SkewLksGraph g;
    RootedTree tree;
    FinePartition fp;
    ConfigWitness w;
    std::uint64_t seed = 0;
    int tree_attempts = 0;
};

struct FixtureUnavailable : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Realises the plan with the seed and draws trees from the same seed until the
// case holds on the plan's pair with margin delta k.
CaseFixture make_case_fixture(char config, std::uint64_t seed, int max_tree_attempts = 4000);

// Tests the case on the plan's pair for a given tree; empty when it fails.
std::optional<ConfigWitness> case_witness(const CasePlan& plan, const ClusterGraph& cg, const RootedTree& tree,
                                          const FinePartition& fp);

}  // namespace lks
