#include "lks/graph.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

namespace lks {

std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("uniform_below: empty range");
    // rejection on the top of the range
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t x;
    do x = rng();
    while (x >= limit);
    return x % bound;
}

bool bernoulli(Rng& rng, std::uint64_t num, std::uint64_t den) {
    return uniform_below(rng, den) < num;
}

Graph::Graph(int n) : n_(n), words_((static_cast<std::size_t>(n) + 63) / 64), adj_(n) {
    if (n < 0) throw std::invalid_argument("negative vertex count");
    rows_.assign(static_cast<std::size_t>(n) * words_, 0);
}

bool Graph::add_edge(Vertex u, Vertex v) {
    if (u < 0 || v < 0 || u >= n_ || v >= n_) throw std::out_of_range("edge endpoint out of range");
    if (u == v) throw std::invalid_argument("self loop");
    if (has_edge(u, v)) return false;
    rows_[static_cast<std::size_t>(u) * words_ + (v >> 6)] |= 1ULL << (v & 63);
    rows_[static_cast<std::size_t>(v) * words_ + (u >> 6)] |= 1ULL << (u & 63);
    adj_[u].insert(std::lower_bound(adj_[u].begin(), adj_[u].end(), v), v);
    adj_[v].insert(std::lower_bound(adj_[v].begin(), adj_[v].end(), u), u);
    ++m_;
    return true;
}

bool Graph::remove_edge(Vertex u, Vertex v) {
    if (u == v || !has_edge(u, v)) return false;
    rows_[static_cast<std::size_t>(u) * words_ + (v >> 6)] &= ~(1ULL << (v & 63));
    rows_[static_cast<std::size_t>(v) * words_ + (u >> 6)] &= ~(1ULL << (u & 63));
    adj_[u].erase(std::lower_bound(adj_[u].begin(), adj_[u].end(), v));
    adj_[v].erase(std::lower_bound(adj_[v].begin(), adj_[v].end(), u));
    --m_;
    return true;
}

std::vector<std::pair<Vertex, Vertex>> Graph::edges() const {
    std::vector<std::pair<Vertex, Vertex>> out;
    out.reserve(m_);
    for (Vertex u = 0; u < n_; ++u)
        for (Vertex v : adj_[u])
            if (u < v) out.emplace_back(u, v);
    return out;
}

int Graph::degree_into(Vertex v, const VertexSet& set) const {
    int c = 0;
    for (Vertex w : set) c += has_edge(v, w);
    return c;
}

std::int64_t Graph::edges_between(const VertexSet& a, const VertexSet& b) const {
    std::int64_t c = 0;
    for (Vertex u : a) c += degree_into(u, b);
    return c;
}

void Graph::set_labels(std::vector<int> labels) {
    if (!labels.empty() && static_cast<int>(labels.size()) != n_)
        throw std::invalid_argument("label vector size mismatch");
    labels_ = std::move(labels);
}

Graph Graph::induced(const VertexSet& vs) const {
    Graph g(static_cast<int>(vs.size()));
    for (std::size_t i = 0; i < vs.size(); ++i)
        for (std::size_t j = i + 1; j < vs.size(); ++j)
            if (has_edge(vs[i], vs[j])) g.add_edge(static_cast<int>(i), static_cast<int>(j));
    return g;
}

bool Graph::operator==(const Graph& other) const {
    return n_ == other.n_ && adj_ == other.adj_ && labels_ == other.labels_;
}

Graph complete_graph(int n) {
    Graph g(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) g.add_edge(i, j);
    return g;
}

Graph complete_bipartite(int a, int b) {
    Graph g(a + b);
    for (int i = 0; i < a; ++i)
        for (int j = 0; j < b; ++j) g.add_edge(i, a + j);
    return g;
}

Graph path_graph(int n) {
    Graph g(n);
    for (int i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
    return g;
}

Graph cycle_graph(int n) {
    Graph g = path_graph(n);
    if (n >= 3) g.add_edge(n - 1, 0);
    return g;
}

RootedTree::RootedTree(int root, std::vector<int> parent) : root_(root), parent_(std::move(parent)) {
    const int n = static_cast<int>(parent_.size());
    if (n == 0) throw std::invalid_argument("empty tree");
    if (root < 0 || root >= n || parent_[root] != -1) throw std::invalid_argument("bad root");
    children_.assign(n, {});
    for (int v = 0; v < n; ++v) {
        if (v == root) continue;
        if (parent_[v] < 0 || parent_[v] >= n || parent_[v] == v)
            throw std::invalid_argument("bad parent entry at vertex " + std::to_string(v));
        children_[parent_[v]].push_back(v);
    }
    colour_.assign(n, 0);
    depth_.assign(n, 0);
    order_.clear();
    order_.push_back(root);
    colour_[root] = 1;
    for (std::size_t i = 0; i < order_.size(); ++i) {
        Vertex u = order_[i];
        for (Vertex c : children_[u]) {
            colour_[c] = 3 - colour_[u];
            depth_[c] = depth_[u] + 1;
            order_.push_back(c);
        }
    }
    if (static_cast<int>(order_.size()) != n) throw std::invalid_argument("parent array has a cycle");
}

RootedTree RootedTree::from_edges(int n, const std::vector<std::pair<int, int>>& edges, int root) {
    if (static_cast<int>(edges.size()) != n - 1) throw std::invalid_argument("a tree on n vertices has n-1 edges");
    std::vector<std::vector<int>> adj(n);
    for (auto [u, v] : edges) {
        if (u < 0 || v < 0 || u >= n || v >= n || u == v) throw std::invalid_argument("bad edge");
        adj[u].push_back(v);
        adj[v].push_back(u);
    }
    for (auto& a : adj) std::sort(a.begin(), a.end());
    std::vector<int> parent(n, -2);
    parent[root] = -1;
    std::deque<int> q{root};
    while (!q.empty()) {
        int u = q.front();
        q.pop_front();
        for (int v : adj[u])
            if (parent[v] == -2) {
                parent[v] = u;
                q.push_back(v);
            }
    }
    for (int v = 0; v < n; ++v)
        if (parent[v] == -2) throw std::invalid_argument("edges do not form a connected tree");
    return RootedTree(root, std::move(parent));
}

int RootedTree::class_size(int c) const {
    return static_cast<int>(std::count(colour_.begin(), colour_.end(), c));
}

int RootedTree::small_class() const {
    return class_size(1) <= class_size(2) ? 1 : 2;
}

Graph RootedTree::as_graph() const {
    Graph g(n());
    for (int v = 0; v < n(); ++v)
        if (parent_[v] >= 0) g.add_edge(v, parent_[v]);
    return g;
}

Vertex RootedTree::lca(Vertex a, Vertex b) const {
    while (depth_[a] > depth_[b]) a = parent_[a];
    while (depth_[b] > depth_[a]) b = parent_[b];
    while (a != b) {
        a = parent_[a];
        b = parent_[b];
    }
    return a;
}

int RootedTree::distance(Vertex a, Vertex b) const {
    return depth_[a] + depth_[b] - 2 * depth_[lca(a, b)];
}

std::vector<Vertex> RootedTree::path(Vertex a, Vertex b) const {
    Vertex c = lca(a, b);
    std::vector<Vertex> up, down;
    for (Vertex x = a; x != c; x = parent_[x]) up.push_back(x);
    for (Vertex x = b; x != c; x = parent_[x]) down.push_back(x);
    up.push_back(c);
    up.insert(up.end(), down.rbegin(), down.rend());
    return up;
}

Rational skew_of(const RootedTree& t) {
    return make_rational(t.small_class_size(), t.n());
}

bool fits_vertex_skew(const RootedTree& t, const Rational& r) {
    return Rational(t.small_class_size()) <= r * t.n();
}

bool fits_edge_skew(const RootedTree& t, const Rational& r) {
    return Rational(t.small_class_size()) <= r * t.k();
}

RootedTree random_tree(int n, Rng& rng) {
    if (n == 1) return RootedTree(0, {-1});
    if (n == 2) return RootedTree(0, {-1, 0});
    std::vector<int> prufer(n - 2);
    for (int& x : prufer) x = static_cast<int>(uniform_below(rng, n));
    std::vector<int> deg(n, 1);
    for (int x : prufer) ++deg[x];
    std::vector<std::pair<int, int>> edges;
    // O(n^2) decode; trees here stay small
    for (int x : prufer) {
        int leaf = 0;
        while (deg[leaf] != 1) ++leaf;
        edges.emplace_back(leaf, x);
        --deg[leaf];
        --deg[x];
    }
    int u = -1, v = -1;
    for (int i = 0; i < n; ++i)
        if (deg[i] == 1) (u < 0 ? u : v) = i;
    edges.emplace_back(u, v);
    return RootedTree::from_edges(n, edges, 0);
}

RootedTree random_tree_with_classes(int n, int small, Rng& rng) {
    if (small < 1 || small > n - small) throw std::invalid_argument("class sizes out of range");
    // vertices 0..small-1 form one class; each later vertex hangs off a random
    // earlier vertex of the other class, in a random arrival order
    std::vector<int> cls(n);
    for (int i = 0; i < n; ++i) cls[i] = i < small ? 0 : 1;
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    shuffle_with(order, rng);
    // the first two arrivals must straddle the classes
    auto first_small = std::find_if(order.begin(), order.end(), [&](int v) { return cls[v] == 0; });
    auto first_big = std::find_if(order.begin(), order.end(), [&](int v) { return cls[v] == 1; });
    std::iter_swap(order.begin(), first_small);
    if (cls[order[1]] != 1) {
        first_big = std::find_if(order.begin() + 1, order.end(), [&](int v) { return cls[v] == 1; });
        std::iter_swap(order.begin() + 1, first_big);
    }
    std::vector<int> seen[2];
    std::vector<std::pair<int, int>> edges;
    seen[0].push_back(order[0]);
    seen[1].push_back(order[1]);
    edges.emplace_back(order[0], order[1]);
    for (int i = 2; i < n; ++i) {
        int v = order[i];
        auto& other = seen[1 - cls[v]];
        edges.emplace_back(v, other[uniform_below(rng, other.size())]);
        seen[cls[v]].push_back(v);
    }
    return RootedTree::from_edges(n, edges, 0);
}

RootedTree generate_tree(int n, TreeShape shape, const Rational& skew_cap, std::uint64_t seed) {
    if (n < 2) throw std::invalid_argument("generate_tree needs n >= 2");
    const std::int64_t cap = floor_int(skew_cap * n);  // largest admissible small class
    std::vector<int> parent(n, -1);
    switch (shape) {
    case TreeShape::path:
        if (cap < n / 2) throw UnreachableSkew("a path on " + std::to_string(n) + " vertices has skew " + to_string(make_rational(n / 2, n)));
        for (int i = 1; i < n; ++i) parent[i] = i - 1;
        return RootedTree(0, parent);
    case TreeShape::star:
        if (cap < 1) throw UnreachableSkew("skew cap below 1/n");
        for (int i = 1; i < n; ++i) parent[i] = 0;
        return RootedTree(0, parent);
    case TreeShape::caterpillar: {
        if (cap < 1) throw UnreachableSkew("skew cap below 1/n");
        // spine of p vertices, leaves on the even spine positions
        std::int64_t small = std::min<std::int64_t>(cap, n / 2);
        int p = static_cast<int>(std::min<std::int64_t>(2 * small - 1, n));
        for (int i = 1; i < p; ++i) parent[i] = i - 1;
        int hooks = (p + 1) / 2;
        for (int i = p, j = 0; i < n; ++i, ++j) parent[i] = 2 * (j % hooks);
        return RootedTree(0, parent);
    }
    case TreeShape::random: {
        if (cap < 1) throw UnreachableSkew("skew cap below 1/n");
        Rng rng(seed);
        int hi = static_cast<int>(std::min<std::int64_t>(cap, n / 2));
        int small = 1 + static_cast<int>(uniform_below(rng, hi));
        return random_tree_with_classes(n, small, rng);
    }
    }
    throw std::invalid_argument("unknown shape");
}

bool EmbeddingCertificate::complete() const {
    return std::all_of(map.begin(), map.end(), [](int x) { return x >= 0; });
}

bool validate_embedding(const EmbeddingCertificate& cert, const Graph& pattern, const Graph& host) {
    if (static_cast<int>(cert.map.size()) != pattern.n()) return false;
    std::vector<char> hit(host.n(), 0);
    for (int x : cert.map) {
        if (x < 0 || x >= host.n() || hit[x]) return false;
        hit[x] = 1;
    }
    for (auto [u, v] : pattern.edges())
        if (!host.has_edge(cert.map[u], cert.map[v])) return false;
    return true;
}

bool validate_embedding(const EmbeddingCertificate& cert, const RootedTree& pattern, const Graph& host) {
    if (static_cast<int>(cert.map.size()) != pattern.n()) return false;
    std::vector<char> hit(host.n(), 0);
    for (int x : cert.map) {
        if (x < 0 || x >= host.n() || hit[x]) return false;
        hit[x] = 1;
    }
    for (int v = 0; v < pattern.n(); ++v)
        if (pattern.parent(v) >= 0 && !host.has_edge(cert.map[v], cert.map[pattern.parent(v)])) return false;
    return true;
}

}  // namespace lks
