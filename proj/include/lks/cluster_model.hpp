#pragma once

#include "lks/graph.hpp"
#include "lks/io.hpp"
#include "lks/regularity.hpp"

#include <string>
#include <vector>

namespace lks {

struct LksParams {
    std::int64_t k = 0;
    Rational eta, eps, d, r;
};

// Clusters 0..mL-1 are the L-clusters, mL..mL+mS-1 the S-clusters.
struct SkewLksGraph {
    Graph host;
    std::vector<VertexSet> L, S;
    VertexSet garbage;
    LksParams params;

    int cluster_count() const { return static_cast<int>(L.size() + S.size()); }
    const VertexSet& cluster(int c) const { return c < static_cast<int>(L.size()) ? L[c] : S[c - L.size()]; }
    std::vector<VertexSet> clusters() const;
    // cluster id of each host vertex, -1 for garbage
    std::vector<int> cluster_of() const;
    int order() const;  // vertices outside the garbage set
};

using ClusterSet = std::vector<int>;  // sorted cluster ids

class ClusterGraph {
public:
    ClusterGraph() = default;
    // From explicit sizes and a symmetric density table.
    ClusterGraph(int mL, int mS, std::vector<std::int64_t> sizes, std::vector<std::vector<Rational>> density, Rational r);
    static ClusterGraph from_lks(const SkewLksGraph& g);

    int mL() const { return mL_; }
    int mS() const { return mS_; }
    int size() const { return mL_ + mS_; }
    bool is_L(int c) const { return c < mL_; }
    std::int64_t cluster_size(int c) const { return sizes_.at(c); }
    const Rational& density(int c, int d) const { return density_[c][d]; }
    bool adjacent(int c, int d) const { return c != d && density_[c][d] > 0; }
    const std::vector<int>& neighbours(int c) const { return nbrs_[c]; }
    const Rational& r() const { return r_; }

    // sum over D in set of d(C,D)|D|; unknown ids throw
    Rational degbar(int c, const ClusterSet& set) const;
    Rational degbar(int c) const;  // to all clusters
    ClusterSet L_set() const;
    ClusterSet S_set() const;
    ClusterSet all() const;

    std::int64_t total_order() const;

private:
    int mL_ = 0, mS_ = 0;
    std::vector<std::int64_t> sizes_;
    std::vector<std::vector<Rational>> density_;
    std::vector<std::vector<int>> nbrs_;
    Rational r_;
};

struct LksViolation {
    int item;  // 0 = not a partition, 1..6 the numbered properties
    std::string witness;
};

std::vector<LksViolation> validate_lks(const SkewLksGraph& g, const RegularityBudget& budget);

// Random bipartite blocks at the planned densities. L-clusters have cluster_size
// vertices, S-clusters cluster_size*(1-r)/r.
SkewLksGraph synthesize_lks(int mL, int mS, int cluster_size, const std::vector<std::vector<Rational>>& plan,
                            const LksParams& params, std::uint64_t seed);

struct InfeasiblePlan : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct SizeBoundReport {
    bool ok = true;
    std::vector<std::string> lines;  // one per cluster: size, bound, margin
};

SizeBoundReport cluster_size_bounds(const ClusterGraph& cg, std::int64_t n);

// deg(v, union S) >= degbar(C,S) - 2 q n / r with q the grid upper bound of sqrt(eps).
// Throws PreconditionError when v is not ultratypical.
bool ultratypical_degree_check(const SkewLksGraph& g, Vertex v, const ClusterSet& S, const Rational& eps);

struct BuildOptions {
    RegularityBudget budget = RegularityBudget::sampled(1, 60);
    int initial_parts = 8;
    int iteration_cap = 20;
};

struct BuildReport {
    std::int64_t s = 0, t = 0;  // r' = s/t
    Rational r_prime;
    int parts = 0;
    int iterations = 0;
    std::int64_t removed_low_degree = 0;
    std::int64_t erased_inside = 0, erased_irregular = 0, erased_sparse = 0, erased_ss = 0;
    std::int64_t irregular_pairs = 0;
    std::int64_t l_sets = 0, s_sets = 0;
    std::vector<std::string> notes;
};

struct PartitionFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// r' = s/t with r <= r' <= r(1 + eta rho q / 12), least t first, then least s.
std::pair<std::int64_t, std::int64_t> skew_approximation(const Rational& r, const Rational& eta, const Rational& q);

// Tries starting partitions in turn (parts aligned with runs of equal component
// and degree, largest part size first, then equal cuts by degree) and keeps the
// first output the sampled validator accepts; PartitionFailure when none does.
SkewLksGraph build_skew_lks(const Graph& G, std::int64_t k, const Rational& eta, const Rational& r_target,
                            const Rational& eps, const Rational& d, const BuildOptions& opt = {},
                            BuildReport* report = nullptr);

Json lks_to_json(const SkewLksGraph& g);
SkewLksGraph lks_from_json(const Json& j);
Json params_to_json(const LksParams& p);
LksParams params_from_json(const Json& j);

}  // namespace lks
