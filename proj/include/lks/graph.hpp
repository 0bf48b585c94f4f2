#pragma once

#include "lks/rational.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace lks {

using Vertex = int;
using VertexSet = std::vector<Vertex>;  // sorted, duplicate free
using Rng = std::mt19937_64;

// Uniform integer in [0, bound). Fixed algorithm so runs replay across standard libraries.
std::uint64_t uniform_below(Rng& rng, std::uint64_t bound);

template <class T>
void shuffle_with(std::vector<T>& v, Rng& rng) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[uniform_below(rng, i)]);
}

// true with probability num/den
bool bernoulli(Rng& rng, std::uint64_t num, std::uint64_t den);

class Graph {
public:
    Graph() = default;
    explicit Graph(int n);

    int n() const { return n_; }
    std::size_t edge_count() const { return m_; }

    // Returns false if the edge was already present. Self loops are rejected.
    bool add_edge(Vertex u, Vertex v);
    bool remove_edge(Vertex u, Vertex v);
    bool has_edge(Vertex u, Vertex v) const {
        return (rows_[static_cast<std::size_t>(u) * words_ + (v >> 6)] >> (v & 63)) & 1ULL;
    }
    int degree(Vertex v) const { return static_cast<int>(adj_[v].size()); }
    const std::vector<Vertex>& neighbours(Vertex v) const { return adj_[v]; }
    std::vector<std::pair<Vertex, Vertex>> edges() const;

    // Number of neighbours of v inside a sorted set.
    int degree_into(Vertex v, const VertexSet& set) const;
    // Number of edges between two disjoint sets.
    std::int64_t edges_between(const VertexSet& a, const VertexSet& b) const;

    const std::vector<int>& labels() const { return labels_; }
    void set_labels(std::vector<int> labels);

    Graph induced(const VertexSet& vs) const;

    bool operator==(const Graph& other) const;

private:
    int n_ = 0;
    std::size_t m_ = 0;
    std::size_t words_ = 0;
    std::vector<std::vector<Vertex>> adj_;
    std::vector<std::uint64_t> rows_;
    std::vector<int> labels_;
};

Graph complete_graph(int n);
Graph complete_bipartite(int a, int b);  // sides 0..a-1 and a..a+b-1
Graph path_graph(int n);
Graph cycle_graph(int n);

class RootedTree {
public:
    RootedTree() = default;
    // parent[root] must be -1. Colours are derived: the root gets class 1.
    RootedTree(int root, std::vector<int> parent);
    static RootedTree from_edges(int n, const std::vector<std::pair<int, int>>& edges, int root = 0);

    int n() const { return static_cast<int>(parent_.size()); }
    int k() const { return n() - 1; }
    int root() const { return root_; }
    int parent(Vertex v) const { return parent_[v]; }
    const std::vector<int>& parents() const { return parent_; }
    int colour(Vertex v) const { return colour_[v]; }
    const std::vector<int>& colours() const { return colour_; }
    const std::vector<Vertex>& children(Vertex v) const { return children_[v]; }
    const std::vector<Vertex>& bfs_order() const { return order_; }
    int depth(Vertex v) const { return depth_[v]; }

    int class_size(int c) const;
    // Smaller colour class; on a tie, class 1.
    int small_class() const;
    int small_class_size() const { return class_size(small_class()); }

    Graph as_graph() const;
    int distance(Vertex a, Vertex b) const;
    Vertex lca(Vertex a, Vertex b) const;
    std::vector<Vertex> path(Vertex a, Vertex b) const;

private:
    int root_ = 0;
    std::vector<int> parent_;
    std::vector<int> colour_;
    std::vector<int> depth_;
    std::vector<std::vector<Vertex>> children_;
    std::vector<Vertex> order_;
};

// Smaller class over vertex count.
Rational skew_of(const RootedTree& t);
// |smaller class| <= r * n, the order-(k+1) convention.
bool fits_vertex_skew(const RootedTree& t, const Rational& r);
// |smaller class| <= r * k, the edge-count convention.
bool fits_edge_skew(const RootedTree& t, const Rational& r);

enum class TreeShape { path, star, caterpillar, random };

struct UnreachableSkew : std::runtime_error {
    using std::runtime_error::runtime_error;
};

RootedTree generate_tree(int n, TreeShape shape, const Rational& skew_cap, std::uint64_t seed = 0);
// Uniform random labelled tree (Prufer sequence), no skew control.
RootedTree random_tree(int n, Rng& rng);
// Random tree whose colour classes have sizes small and n - small exactly.
RootedTree random_tree_with_classes(int n, int small, Rng& rng);

struct EmbeddingCertificate {
    std::vector<int> map;  // -1 where undefined
    std::vector<std::string> provenance;

    EmbeddingCertificate() = default;
    explicit EmbeddingCertificate(int n) : map(n, -1), provenance(n) {}
    bool complete() const;
};

bool validate_embedding(const EmbeddingCertificate& cert, const RootedTree& pattern, const Graph& host);
bool validate_embedding(const EmbeddingCertificate& cert, const Graph& pattern, const Graph& host);

}  // namespace lks
