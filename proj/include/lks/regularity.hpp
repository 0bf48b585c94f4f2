#pragma once

#include "lks/graph.hpp"

#include <optional>
#include <string>
#include <vector>

namespace lks {

struct EmptySide : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct BudgetExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct PreconditionError : std::runtime_error {
    std::vector<std::string> ledger;
    PreconditionError(const std::string& what, std::vector<std::string> l)
        : std::runtime_error(what), ledger(std::move(l)) {}
};

VertexSet make_set(std::vector<int> v);  // sort + dedup
VertexSet set_minus(const VertexSet& a, const VertexSet& b);
VertexSet set_union(const VertexSet& a, const VertexSet& b);
VertexSet set_intersection(const VertexSet& a, const VertexSet& b);
bool set_contains(const VertexSet& s, Vertex v);

Rational density(const Graph& g, const VertexSet& X, const VertexSet& Y);

enum class RegMethod { exhaustive, sampled };

struct RegularityBudget {
    RegMethod method = RegMethod::exhaustive;
    std::uint64_t seed = 1;
    int trials = 2000;

    static RegularityBudget exhaustive() { return {}; }
    static RegularityBudget sampled(std::uint64_t seed, int trials) { return {RegMethod::sampled, seed, trials}; }
    std::string describe() const;
};

constexpr int kExhaustiveSideLimit = 16;

struct IrregularityWitness {
    VertexSet Xp, Yp;
    Rational gap;  // |d(X',Y') - d(X,Y)|
};

struct RegularityVerdict {
    Rational epsilon;
    bool regular = true;
    std::optional<IrregularityWitness> witness;
    RegularityBudget method;
};

// Exhaustive search needs min(|X|,|Y|) <= 16 and is exact there.
// Sampled search is one-sided: irregular only with a witness that re-checks.
RegularityVerdict is_regular(const Graph& g, const VertexSet& X, const VertexSet& Y, const Rational& eps,
                             const RegularityBudget& budget);

// Recomputes a witness from scratch.
bool witness_valid(const Graph& g, const VertexSet& X, const VertexSet& Y, const Rational& eps,
                   const IrregularityWitness& w);

// (Xp,Yp) is max(eps/alpha, 2 eps)-regular with density at least d(X,Y) - eps.
bool check_slicing(const Graph& g, const VertexSet& X, const VertexSet& Y, const VertexSet& Xp, const VertexSet& Yp,
                   const Rational& alpha, const Rational& eps, const RegularityBudget& budget);

// x in X with deg(x, Yp) >= (d(X,Y) - eps)|Yp|.
VertexSet typical_vertices(const Graph& g, const VertexSet& X, const VertexSet& Y, const VertexSet& Yp,
                           const Rational& eps);

// Vertices of clusters[j] typical to all but at most sqrt(eps) * N of the other clusters.
VertexSet ultratypical_vertices(const Graph& g, const std::vector<VertexSet>& clusters, int j, const Rational& eps);

struct PairEmbedOptions {
    Rational eps, alpha, d;
    bool strict = true;  // throw on violated hypotheses instead of tracing them
};

struct PairEmbedResult {
    bool ok = false;
    std::vector<int> map;  // pattern vertex -> host vertex, -1 if unplaced
    std::string failure;
    std::vector<std::string> trace;
    std::vector<std::string> violated;  // hypotheses that did not hold
};

// General form: a connected pattern with a side per vertex (0 -> Xp, 1 -> Yp),
// prescribed images for at most two side-0 vertices, disjoint working sets.
// X and Y are the full pair, used for typicality thresholds and hypothesis checks.
PairEmbedResult embed_tree_in_pair(const Graph& host, const Graph& pattern, const std::vector<int>& side,
                                   const VertexSet& X, const VertexSet& Y, const VertexSet& Xp, const VertexSet& Yp,
                                   const std::vector<std::pair<int, int>>& prescribed, const PairEmbedOptions& opt);

// Tree form: class f1_colour goes to Xp, the other class to Yp.
EmbeddingCertificate embed_in_pair(const RootedTree& tree, int f1_colour, const Graph& host, const VertexSet& X,
                                   const VertexSet& Y, const VertexSet& Xp, const VertexSet& Yp,
                                   const std::vector<std::pair<int, int>>& prescribed, const PairEmbedOptions& opt,
                                   std::vector<std::string>* trace = nullptr);

struct EmbeddingFailure : std::runtime_error {
    std::vector<std::string> trace;
    EmbeddingFailure(const std::string& what, std::vector<std::string> t)
        : std::runtime_error(what), trace(std::move(t)) {}
};

}  // namespace lks
