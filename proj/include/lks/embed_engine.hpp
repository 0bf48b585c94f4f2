#pragma once

#include "lks/cluster_model.hpp"
#include "lks/config_finder.hpp"
#include "lks/tree_decomp.hpp"

#include <string>
#include <vector>

namespace lks {

// Partial embedding of a tree into a skew-LKS graph with its bookkeeping.
class EmbedContext {
public:
    EmbedContext(const SkewLksGraph& g, const RootedTree& tree);

    const SkewLksGraph& g() const { return *g_; }
    const ClusterGraph& cg() const { return cg_; }
    const RootedTree& tree() const { return *tree_; }
    std::int64_t n() const { return n_; }  // order of the host outside the garbage set

    int cluster_of(Vertex h) const { return cluster_of_[h]; }
    const VertexSet& ultratypical(int c) const { return ultra_[c]; }
    bool is_ultratypical(Vertex h) const { return ultra_flag_[h] != 0; }

    bool occupied(Vertex h) const { return forbidden_[h] || reserved_[h] >= 0 || owner_[h] >= 0; }
    // Free vertices of a cluster, optionally only its ultratypical ones.
    VertexSet free_in(int c, bool ultra_only = false) const;
    std::int64_t free_count(int c) const;
    int free_degree(Vertex h, int c, bool ultra_only = false) const;

    void forbid(const VertexSet& hs);
    void place(Vertex t, Vertex h, const std::string& provenance);
    void reserve(Vertex h, int block);
    void release(int block);
    VertexSet reserved_block(int block) const;
    int new_block() { return next_block_++; }

    const EmbeddingCertificate& phi() const { return phi_; }
    bool mapped(Vertex t) const { return phi_.map[t] >= 0; }
    Vertex image_of(Vertex t) const { return phi_.map[t]; }
    VertexSet image(const VertexSet& tree_vertices) const;  // mapped ones only
    Vertex owner(Vertex h) const { return owner_[h]; }
    std::int64_t accounted() const;  // |U| + |W| + |phi|

    // |C \ (U u W u phi)| >= r eta/8 |C|; failures are recorded, not thrown.
    bool check_slack(int c, const Rational& eta, const std::string& step);

    std::vector<std::string> ledger;
    std::vector<std::string> invariant_failures;
    std::vector<std::string> reports;  // noted but not failures

private:
    const SkewLksGraph* g_;
    const RootedTree* tree_;
    ClusterGraph cg_;
    std::int64_t n_;
    std::vector<int> cluster_of_;
    std::vector<VertexSet> ultra_;
    std::vector<char> ultra_flag_;
    std::vector<char> forbidden_;
    std::vector<int> reserved_;
    std::vector<int> owner_;
    EmbeddingCertificate phi_;
    int next_block_ = 0;
};

// Reservation made for an anchored forest: per component the cluster holding the
// images of its anchor neighbours and the reserved block for the rest of class 1.
struct Reservation {
    std::vector<int> cluster;  // per component, -1 when the component was empty
    std::vector<int> block;    // block id in the context
};

VertexSet reservation_vertices(const EmbedContext& ctx, const Reservation& w);

// A component could not be placed; names the last cluster pair tried so the
// caller can report on its regularity.
struct StuckEmbedding : EmbeddingFailure {
    int xc = -1, yc = -1;
    StuckEmbedding(const std::string& what, std::vector<std::string> t, int x, int y)
        : EmbeddingFailure(what, std::move(t)), xc(x), yc(y) {}
};

// Ledger line for an exact inequality.
std::string ledger_line(const Inequality& i);

// Components of F in embedding order. The forest keeps its anchors; class 1 is
// the colour opposite to anchor_colour.
void embed_anchored_matching(EmbedContext& ctx, const AnchoredForest& F, int A, const ClusterMatching& M,
                             const Rational& eta, const VertexSet& U, const std::string& step = "matching");

Reservation embed_anchored_degrees_reserve(EmbedContext& ctx, const AnchoredForest& F, int A, const ClusterSet& B_set,
                                           const Rational& eta, const VertexSet& U,
                                           const std::string& step = "reserve");

void embed_anchored_degrees_complete(EmbedContext& ctx, const AnchoredForest& F, const Reservation& W,
                                     const ClusterSet& B_set, const VertexSet& U, const VertexSet& tilde_U,
                                     const Rational& eta, const std::string& step = "complete");

void embed_anchored_degrees_cfg2(EmbedContext& ctx, const AnchoredForest& F, int A, const ClusterSet& B_set,
                                 const Rational& eta, const VertexSet& U, const std::string& step = "cfg2");

struct SplitFGH {
    AnchoredForest F, G, H;   // whole components
    AnchoredForest Fp, Gp;    // with class-1 tree leaves removed
    std::vector<std::pair<int, int>> removed_leaves;  // (leaf, parent) taken out of F and G
    std::vector<int> order;   // component indices of the input in the order used
    std::int64_t F1 = 0, F2 = 0, G1 = 0, G2 = 0, H1 = 0, H2 = 0;
    std::vector<std::string> notes;
};

enum class SplitMode { byMatching, byMatchingThenS1 };

// Components sorted by |class 1| / |class 2| descending when skew_order is set,
// input order otherwise. F is the longest prefix with (F class 2) <= capF,
// G the next longest prefix with (G class 2) <= capG, H the rest. A negative cap
// gives an empty part. In byMatching mode G is the whole rest.
SplitFGH split_fgh(const AnchoredForest& DA, const RootedTree& tree, SplitMode mode, const Rational& capF,
                   const Rational& capG, bool skew_order);

// Removes class-1 vertices that are leaves of the tree.
AnchoredForest strip_class1_leaves(const AnchoredForest& F, const RootedTree& tree,
                                   std::vector<std::pair<int, int>>* removed);

struct MasterOptions {
    RegularityBudget report_budget = RegularityBudget::sampled(1, 40);
};

struct MasterResult {
    EmbeddingCertificate cert;
    char config = '?';
    std::vector<std::string> ledger;
    std::vector<std::string> invariant_failures;
    std::vector<std::string> reports;
};

// Side conditions of the case named by the witness, with margin delta k.
std::vector<Inequality> case_conditions(const ClusterGraph& cg, const TreeStats& stats, const ConfigWitness& w,
                                        const Rational& delta);

// Embeds the whole tree. The witness is checked with eta = 4 delta and the case
// conditions with delta. Failures carry the case and step in the message.
MasterResult master_embed(const SkewLksGraph& g, const RootedTree& T, const FinePartition& fp, const ConfigWitness& w,
                          const Rational& delta, const MasterOptions& opt = {});

Json certificate_report(const MasterResult& r);

}  // namespace lks
