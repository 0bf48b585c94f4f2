#pragma once

#include "lks/graph.hpp"
#include "lks/io.hpp"
#include "lks/regularity.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace lks {

constexpr std::uint64_t kDefaultSearchBudget = 50'000'000;

// Backtracking over tree vertices in BFS order, host candidates ascending,
// pruned by degree and by the free room around the candidate. Complete: returns
// nullopt only when no embedding exists. Throws BudgetExceeded past the node cap.
std::optional<EmbeddingCertificate> brute_force_embed(const RootedTree& T, const Graph& G,
                                                      std::uint64_t budget = kDefaultSearchBudget);

// Second search written separately: depth-first from the highest-numbered tree
// vertex, host candidates descending, no pruning beyond adjacency and injectivity.
std::optional<EmbeddingCertificate> reference_embed(const RootedTree& T, const Graph& G,
                                                    std::uint64_t budget = kDefaultSearchBudget);

// Exact canonical code of a graph on at most 11 vertices: the least upper-triangle
// bit string over orderings that respect the colour-refinement cells.
std::uint64_t canonical_code(const Graph& g);
Graph graph_from_code(int n, std::uint64_t code);

// One representative per isomorphism class, by adding a vertex to each class on
// n-1 vertices. n <= 10.
std::vector<Graph> nonisomorphic_graphs(int n);

// Centre-rooted nested-parenthesis encoding; equal iff the trees are isomorphic.
std::string tree_canonical(const RootedTree& t);
std::vector<RootedTree> nonisomorphic_trees(int n);

int tree_diameter(const RootedTree& t);

// Disjoint union of `copies` blocks on k+1 vertices: a clique on floor(r(k+1))-1
// vertices, an independent set on the rest, all edges between the two.
Graph gen_extremal(int k, const Rational& r, int copies = 1);
// Path on 2 floor(r(k+1)) vertices with one end the centre of a star, k+1 vertices in all.
RootedTree gen_tight_tree(int k, const Rational& r);
// degree -> number of vertices
std::map<int, int> degree_profile(const Graph& g);

RootedTree path_tree(int n);
// Two adjacent centres with a and b leaves.
RootedTree bistar(int a, int b);

struct ScanMode {
    bool exhaustive = true;
    std::uint64_t seed = 0;
    std::uint64_t trials = 0;
    int jobs = 1;
};

struct ScanCategory {
    std::uint64_t pairs = 0;
    std::uint64_t counterexamples = 0;
};

struct ScanReport {
    int k = 0;
    Rational r;
    int n = 0;
    ScanMode mode;
    std::uint64_t hosts_generated = 0;
    std::uint64_t instances_tried = 0;  // hosts meeting the degree hypothesis
    std::uint64_t hosts_skipped = 0;
    std::uint64_t trees = 0;
    std::uint64_t pairs_checked = 0;
    std::map<std::string, ScanCategory> categories;  // "path", "diameter<=5", "other"
    std::vector<std::pair<Graph, RootedTree>> counterexamples;  // confirmed by both searches
    std::vector<std::string> oracle_disagreements;
    std::uint64_t budget_exceeded = 0;
    double runtime_seconds = 0;  // left out of the JSON
};

struct InfeasibleScan : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Hosts on n vertices with at least r n vertices of degree at least k, against
// every tree on at most k+1 vertices with a colour class of size at most r(k+1).
ScanReport conjecture_scan(int k, const Rational& r, int n, const ScanMode& mode);
Json scan_report_json(const ScanReport& rep);

bool meets_degree_hypothesis(const Graph& g, int k, const Rational& r);
// Trees of order 2..k+1 with min colour class <= r(k+1).
std::vector<RootedTree> conjecture_trees(int k, const Rational& r);

// True iff K_{(k-1)/2,k} contains no bistar B_{(k-1)/2,(k-1)/2}. k odd, k >= 7.
bool bistar_check(int k);

struct RamseyVerdict {
    bool forced = false;
    bool inconclusive = false;
    std::vector<int> colouring;  // edge colours of a non-forcing colouring, pairs in order (0,1),(0,2),..
    std::uint64_t nodes = 0;
};

// Does every colouring of K_n with trees.size() colours contain T_i in colour i
// for some i? Backtracks over edges and cuts a branch as soon as a colour class
// contains its tree.
RamseyVerdict ramsey_check(const std::vector<RootedTree>& trees, int n,
                           std::uint64_t budget = kDefaultSearchBudget);

struct PigeonholeStep {
    int colour = -1;
    int vertices = 0;  // vertices with at least k_colour edges of that colour
    bool meets_share = false;
};

// For a colouring of K_n with n >= 2 + sum(k_i - 1): the colour c maximising the
// number of vertices with at least k_c edges of colour c; meets_share when that
// number is at least n/m.
PigeonholeStep pigeonhole_colour(int n, const std::vector<int>& colouring, const std::vector<int>& ks);

Graph colour_class(int n, const std::vector<int>& colouring, int colour);

}  // namespace lks
