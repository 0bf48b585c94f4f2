#pragma once

#include "lks/graph.hpp"
#include "lks/io.hpp"

#include <string>
#include <vector>

namespace lks {

struct FinePartition {
    VertexSet WA, WB;
    std::vector<VertexSet> DA, DB;
    int ell = 0;
};

struct FineViolation {
    int item;  // 1..9, the numbered properties of an l-fine partition
    std::string witness;
};

struct InternalContractError : std::logic_error {
    std::vector<FineViolation> violations;
    InternalContractError(const std::string& what, std::vector<FineViolation> v)
        : std::logic_error(what), violations(std::move(v)) {}
};

// Seeds of the smaller colour class go to WA, the others to WB.
FinePartition fine_partition(const RootedTree& tree, int ell);

std::vector<FineViolation> verify_fine_partition(const RootedTree& tree, const FinePartition& fp);

Json fine_partition_to_json(const FinePartition& fp);
FinePartition fine_partition_from_json(const Json& j);

struct AnchoredComponent {
    VertexSet vertices;
    VertexSet anchors;  // one or two
    int class1 = 0;     // vertices outside the anchor colour
    int class2 = 0;     // vertices in the anchor colour
};

// Anchors lie in colour class anchor_colour ("class 2"); their neighbours in the
// forest form class 1. Size-one pieces of the fine partition are leaves hanging
// off an anchor; they are kept apart and placed last, greedily.
struct AnchoredForest {
    int anchor_colour = 1;
    VertexSet anchors;
    std::vector<AnchoredComponent> components;
    std::vector<std::pair<int, int>> deferred_leaves;  // (leaf, anchor)
    int tau = 0;

    int class1_size() const;  // over components only
    int class2_size() const;
    int leaf_count() const { return static_cast<int>(deferred_leaves.size()); }
};

struct AnchoredForestError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct TreeStats {
    std::int64_t a1 = 0, a2 = 0, b1 = 0, b2 = 0;
    Rational r_tilde;
    std::int64_t k = 0;
};

struct ForestPair {
    AnchoredForest FA, FB;
    TreeStats stats;
    int small_colour = 1;  // colour of T1
};

ForestPair to_anchored_forests(const FinePartition& fp, const RootedTree& tree);

// Contract of an anchored forest; returns problems found.
std::vector<std::string> check_anchored_forest(const AnchoredForest& f, const RootedTree& tree);

}  // namespace lks
