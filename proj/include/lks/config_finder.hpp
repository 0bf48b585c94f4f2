#pragma once

#include "lks/cluster_model.hpp"
#include "lks/tree_decomp.hpp"

#include <optional>
#include <string>
#include <vector>

namespace lks {

using ClusterMatching = std::vector<std::pair<int, int>>;  // (L cluster, S cluster), sorted

struct Inequality {
    std::string name;
    Rational lhs, rhs;
    bool strict = false;  // lhs > rhs instead of lhs >= rhs
    bool holds() const { return strict ? lhs > rhs : lhs >= rhs; }
};

struct ConfigWitness {
    char config = '?';  // 'A'..'D'
    int X = -1, Y = -1;
    ClusterMatching M;
    ClusterSet S_M, S_1, S_0, band;
    std::vector<Inequality> inequalities;
    std::vector<std::string> notes;
};

struct Reachability {
    ClusterSet A_side, B_side, L_A, L_B, S_A, S_B;
};

// Thresholds derived from the tree statistics.
Rational s0_threshold(const TreeStats& stats, const Rational& r_prime, const Rational& eta);  // (r~ + r'eta/2)k
Rational s1_threshold(const TreeStats& stats, const Rational& r_prime, const Rational& eta);  // (r~ + r'eta)k

ClusterSet low_degree_S(const ClusterGraph& cg, const Rational& threshold);  // deg-bar below threshold

// Matching in H[L,S] covering as many clusters of S0 as possible, extended to
// maximum cardinality without uncovering any S-cluster; ties go to the
// lexicographically smallest sorted edge list.
ClusterMatching matching_max_cover(const ClusterGraph& cg, const Rational& threshold);

int uncovered_count(const ClusterMatching& M, const ClusterSet& S0);

Reachability alternating_reachability(const ClusterGraph& cg, const ClusterMatching& M, const ClusterSet& S0);

struct ConfigSearch {
    bool found = false;
    ConfigWitness witness;
    Json candidate_report;  // filled when no configuration exists
};

struct InvalidStats : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

void check_stats(const TreeStats& stats, const Rational& r_prime);

ConfigSearch find_configuration(const ClusterGraph& cg, const TreeStats& stats, const Rational& eta);

// Tests one configuration on one ordered pair with a given matching.
std::optional<ConfigWitness> test_configuration(const ClusterGraph& cg, const TreeStats& stats, const Rational& eta,
                                                const ClusterMatching& M, char config, int X, int Y);

bool verify_witness(const ClusterGraph& cg, const TreeStats& stats, const ConfigWitness& w, const Rational& eta,
                    std::string* why = nullptr);

// Invariants that follow from the optimality of the matching.
std::vector<std::string> check_matching_claims(const ClusterGraph& cg, const ClusterMatching& M, const ClusterSet& S0,
                                               const Rational& threshold);

Json witness_to_json(const ConfigWitness& w);
ConfigWitness witness_from_json(const Json& j);
Json stats_to_json(const TreeStats& s);
TreeStats stats_from_json(const Json& j);

}  // namespace lks
