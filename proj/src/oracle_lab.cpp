#include "lks/oracle_lab.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <mutex>
#include <set>
#include <thread>
#include <tuple>

namespace lks {

namespace {

std::vector<int> subtree_sizes(const RootedTree& T) {
    std::vector<int> sz(T.n(), 1);
    const auto& ord = T.bfs_order();
    for (auto it = ord.rbegin(); it != ord.rend(); ++it)
        if (T.parent(*it) >= 0) sz[T.parent(*it)] += sz[*it];
    return sz;
}

struct PrunedSearch {
    const RootedTree& T;
    const Graph& G;
    std::uint64_t budget;
    std::uint64_t nodes = 0;
    std::vector<std::vector<Vertex>> hadj;
    std::vector<int> tdeg, sz;
    std::vector<int> img;
    std::vector<char> used;
    std::vector<int> seen;
    int stamp = 0;

    PrunedSearch(const RootedTree& t, const Graph& g, std::uint64_t b)
        : T(t), G(g), budget(b), hadj(g.n()), tdeg(t.n()), sz(subtree_sizes(t)), img(t.n(), -1), used(g.n(), 0),
          seen(g.n(), 0) {
        for (int h = 0; h < g.n(); ++h) {
            hadj[h] = g.neighbours(h);
            std::sort(hadj[h].begin(), hadj[h].end());
        }
        for (int v = 0; v < t.n(); ++v) tdeg[v] = static_cast<int>(t.children(v).size()) + (t.parent(v) >= 0);
    }

    // free vertices reachable from h through free vertices, h excluded, capped at need
    int room(Vertex h, int need) {
        ++stamp;
        std::vector<Vertex> stack{h};
        seen[h] = stamp;
        int count = 0;
        while (!stack.empty() && count < need) {
            Vertex x = stack.back();
            stack.pop_back();
            for (Vertex y : hadj[x])
                if (!used[y] && seen[y] != stamp) {
                    seen[y] = stamp;
                    ++count;
                    stack.push_back(y);
                }
        }
        return count;
    }

    bool fits(Vertex v, Vertex h) {
        if (used[h] || G.degree(h) < tdeg[v]) return false;
        const int kids = static_cast<int>(T.children(v).size());
        int freeN = 0;
        for (Vertex y : hadj[h]) freeN += !used[y];
        if (freeN < kids) return false;
        if (sz[v] - 1 > freeN && room(h, sz[v] - 1) < sz[v] - 1) return false;
        return true;
    }

    bool rec(std::size_t i) {
        const auto& ord = T.bfs_order();
        if (i == ord.size()) return true;
        if (++nodes > budget) throw BudgetExceeded("search budget of " + std::to_string(budget) + " nodes exceeded");
        Vertex v = ord[i];
        auto attempt = [&](Vertex h) {
            if (!fits(v, h)) return false;
            img[v] = h;
            used[h] = 1;
            if (rec(i + 1)) return true;
            used[h] = 0;
            img[v] = -1;
            return false;
        };
        if (T.parent(v) < 0) {
            for (Vertex h = 0; h < G.n(); ++h)
                if (attempt(h)) return true;
        } else {
            for (Vertex h : hadj[img[T.parent(v)]])
                if (attempt(h)) return true;
        }
        return false;
    }
};

struct PlainSearch {
    const Graph& G;
    std::uint64_t budget;
    std::uint64_t nodes = 0;
    std::vector<int> order, pred, img;
    std::vector<char> used;

    PlainSearch(const RootedTree& T, const Graph& g, std::uint64_t b) : G(g), budget(b) {
        const int n = T.n();
        std::vector<std::vector<int>> adj(n);
        for (int v = 0; v < n; ++v)
            if (T.parent(v) >= 0) {
                adj[v].push_back(T.parent(v));
                adj[T.parent(v)].push_back(v);
            }
        pred.assign(n, -1);
        img.assign(n, -1);
        used.assign(g.n(), 0);
        std::vector<char> vis(n, 0);
        std::vector<int> stack{n - 1};
        vis[n - 1] = 1;
        while (!stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            order.push_back(x);
            std::sort(adj[x].begin(), adj[x].end());
            for (int y : adj[x])  // pushed ascending, popped descending
                if (!vis[y]) {
                    vis[y] = 1;
                    pred[y] = x;
                    stack.push_back(y);
                }
        }
    }

    bool go(std::size_t i) {
        if (i == order.size()) return true;
        if (++nodes > budget) throw BudgetExceeded("search budget of " + std::to_string(budget) + " nodes exceeded");
        int v = order[i];
        for (int h = G.n() - 1; h >= 0; --h) {
            if (used[h]) continue;
            if (pred[v] >= 0 && !G.has_edge(img[pred[v]], h)) continue;
            img[v] = h;
            used[h] = 1;
            if (go(i + 1)) return true;
            used[h] = 0;
            img[v] = -1;
        }
        return false;
    }
};

}  // namespace

std::optional<EmbeddingCertificate> brute_force_embed(const RootedTree& T, const Graph& G, std::uint64_t budget) {
    if (T.n() > G.n()) return std::nullopt;
    PrunedSearch s(T, G, budget);
    if (!s.rec(0)) return std::nullopt;
    EmbeddingCertificate c(T.n());
    for (int v = 0; v < T.n(); ++v) {
        c.map[v] = s.img[v];
        c.provenance[v] = "oracle";
    }
    return c;
}

std::optional<EmbeddingCertificate> reference_embed(const RootedTree& T, const Graph& G, std::uint64_t budget) {
    if (T.n() > G.n()) return std::nullopt;
    PlainSearch s(T, G, budget);
    if (!s.go(0)) return std::nullopt;
    EmbeddingCertificate c(T.n());
    for (int v = 0; v < T.n(); ++v) {
        c.map[v] = s.img[v];
        c.provenance[v] = "reference";
    }
    return c;
}

std::uint64_t canonical_code(const Graph& g) {
    const int n = g.n();
    if (n > 11) throw std::invalid_argument("canonical_code supports at most 11 vertices");
    std::vector<int> col(n);
    for (int v = 0; v < n; ++v) col[v] = g.degree(v);
    int classes = -1;
    while (true) {
        std::vector<std::pair<int, std::vector<int>>> sig(n);
        for (int v = 0; v < n; ++v) {
            sig[v].first = col[v];
            for (Vertex u : g.neighbours(v)) sig[v].second.push_back(col[u]);
            std::sort(sig[v].second.begin(), sig[v].second.end());
        }
        auto uniq = sig;
        std::sort(uniq.begin(), uniq.end());
        uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
        for (int v = 0; v < n; ++v)
            col[v] = static_cast<int>(std::lower_bound(uniq.begin(), uniq.end(), sig[v]) - uniq.begin());
        if (static_cast<int>(uniq.size()) == classes) break;
        classes = static_cast<int>(uniq.size());
    }
    std::vector<std::vector<int>> cells(std::max(classes, 0));
    for (int v = 0; v < n; ++v) cells[col[v]].push_back(v);
    std::vector<int> perm;
    std::uint64_t best = ~0ULL;
    std::function<void(std::size_t)> rec = [&](std::size_t c) {
        if (c == cells.size()) {
            std::uint64_t code = 0;
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j) code = (code << 1) | static_cast<std::uint64_t>(g.has_edge(perm[i], perm[j]));
            best = std::min(best, code);
            return;
        }
        auto cell = cells[c];
        do {
            perm.insert(perm.end(), cell.begin(), cell.end());
            rec(c + 1);
            perm.resize(perm.size() - cell.size());
        } while (std::next_permutation(cell.begin(), cell.end()));
    };
    rec(0);
    return n < 2 ? 0 : best;
}

Graph graph_from_code(int n, std::uint64_t code) {
    Graph g(n);
    const int bits = n * (n - 1) / 2;
    int t = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j, ++t)
            if ((code >> (bits - 1 - t)) & 1ULL) g.add_edge(i, j);
    return g;
}

std::vector<Graph> nonisomorphic_graphs(int n) {
    if (n < 0 || n > 10) throw std::invalid_argument("graph enumeration supports 0..10 vertices");
    static std::mutex mu;
    static std::map<int, std::vector<std::uint64_t>> cache;
    std::lock_guard<std::mutex> lock(mu);
    std::function<const std::vector<std::uint64_t>&(int)> codes = [&](int m) -> const std::vector<std::uint64_t>& {
        auto it = cache.find(m);
        if (it != cache.end()) return it->second;
        std::vector<std::uint64_t> out;
        if (m <= 1) {
            out.push_back(0);
        } else {
            std::set<std::uint64_t> found;
            for (std::uint64_t c : codes(m - 1)) {
                Graph base = graph_from_code(m - 1, c);
                for (std::uint32_t mask = 0; mask < (1u << (m - 1)); ++mask) {
                    Graph h(m);
                    for (auto [a, b] : base.edges()) h.add_edge(a, b);
                    for (int v = 0; v < m - 1; ++v)
                        if (mask >> v & 1u) h.add_edge(v, m - 1);
                    found.insert(canonical_code(h));
                }
            }
            out.assign(found.begin(), found.end());
        }
        return cache[m] = out;
    };
    std::vector<Graph> gs;
    for (std::uint64_t c : codes(n)) gs.push_back(graph_from_code(n, c));
    return gs;
}

namespace {

std::vector<std::vector<int>> tree_adj(const RootedTree& t) {
    std::vector<std::vector<int>> adj(t.n());
    for (int v = 0; v < t.n(); ++v)
        if (t.parent(v) >= 0) {
            adj[v].push_back(t.parent(v));
            adj[t.parent(v)].push_back(v);
        }
    return adj;
}

std::string ahu(const std::vector<std::vector<int>>& adj, int v, int p) {
    std::vector<std::string> kids;
    for (int u : adj[v])
        if (u != p) kids.push_back(ahu(adj, u, v));
    std::sort(kids.begin(), kids.end());
    std::string s = "(";
    for (auto& k : kids) s += k;
    return s + ")";
}

std::vector<int> bfs_dist(const std::vector<std::vector<int>>& adj, int s) {
    std::vector<int> d(adj.size(), -1);
    std::vector<int> q{s};
    d[s] = 0;
    for (std::size_t i = 0; i < q.size(); ++i)
        for (int u : adj[q[i]])
            if (d[u] < 0) {
                d[u] = d[q[i]] + 1;
                q.push_back(u);
            }
    return d;
}

}  // namespace

std::string tree_canonical(const RootedTree& t) {
    auto adj = tree_adj(t);
    const int n = t.n();
    std::vector<int> deg(n), layer;
    for (int v = 0; v < n; ++v) {
        deg[v] = static_cast<int>(adj[v].size());
        if (deg[v] <= 1) layer.push_back(v);
    }
    int left = n;
    while (left > 2) {
        left -= static_cast<int>(layer.size());
        std::vector<int> next;
        for (int v : layer)
            for (int u : adj[v])
                if (--deg[u] == 1) next.push_back(u);
        layer = next;
    }
    std::string best;
    for (int c : layer) {
        auto s = ahu(adj, c, -1);
        if (best.empty() || s < best) best = s;
    }
    return best;
}

std::vector<RootedTree> nonisomorphic_trees(int n) {
    if (n < 1) throw std::invalid_argument("trees need at least one vertex");
    std::map<std::string, RootedTree> level;
    RootedTree one(0, {-1});
    level[tree_canonical(one)] = one;
    for (int m = 2; m <= n; ++m) {
        std::map<std::string, RootedTree> next;
        for (auto& [key, t] : level)
            for (int v = 0; v < t.n(); ++v) {
                std::vector<int> par = t.parents();
                par.push_back(v);
                RootedTree grown(t.root(), par);
                next.emplace(tree_canonical(grown), grown);
            }
        level = std::move(next);
    }
    std::vector<RootedTree> out;
    for (auto& [key, t] : level) out.push_back(t);
    return out;
}

int tree_diameter(const RootedTree& t) {
    auto adj = tree_adj(t);
    auto d0 = bfs_dist(adj, 0);
    int far = static_cast<int>(std::max_element(d0.begin(), d0.end()) - d0.begin());
    auto d1 = bfs_dist(adj, far);
    return *std::max_element(d1.begin(), d1.end());
}

Graph gen_extremal(int k, const Rational& r, int copies) {
    const std::int64_t s = floor_int(r * (k + 1));
    if (s < 2 || r > 1 || k < 1 || copies < 1)
        throw std::invalid_argument("degenerate parameters: floor(r(k+1)) must be at least 2");
    const int b = k + 1;
    Graph g(b * copies);
    for (int c = 0; c < copies; ++c) {
        const int base = c * b;
        for (int i = 0; i < s - 1; ++i)
            for (int j = i + 1; j < b; ++j) g.add_edge(base + i, base + j);
    }
    return g;
}

RootedTree gen_tight_tree(int k, const Rational& r) {
    const std::int64_t s = floor_int(r * (k + 1));
    const std::int64_t p = 2 * s;
    if (s < 1 || p > k + 1) throw std::invalid_argument("infeasible parameters for the tight tree");
    std::vector<int> par(k + 1, -1);
    for (int i = 1; i < p; ++i) par[i] = i - 1;
    for (int i = static_cast<int>(p); i <= k; ++i) par[i] = 0;
    RootedTree t(0, par);
    if (t.small_class_size() != s) throw std::logic_error("tight tree has the wrong smaller class");
    return t;
}

std::map<int, int> degree_profile(const Graph& g) {
    std::map<int, int> out;
    for (int v = 0; v < g.n(); ++v) ++out[g.degree(v)];
    return out;
}

RootedTree path_tree(int n) {
    std::vector<int> par(n);
    for (int i = 0; i < n; ++i) par[i] = i - 1;
    return RootedTree(0, par);
}

RootedTree bistar(int a, int b) {
    std::vector<int> par(a + b + 2, -1);
    par[1] = 0;
    for (int i = 0; i < a; ++i) par[2 + i] = 0;
    for (int i = 0; i < b; ++i) par[2 + a + i] = 1;
    return RootedTree(0, par);
}

bool meets_degree_hypothesis(const Graph& g, int k, const Rational& r) {
    std::int64_t big = 0;
    for (int v = 0; v < g.n(); ++v) big += g.degree(v) >= k;
    return Rational(big) >= r * g.n();
}

std::vector<RootedTree> conjecture_trees(int k, const Rational& r) {
    std::vector<RootedTree> out;
    const Rational cap = r * (k + 1);
    for (int m = 2; m <= k + 1; ++m)
        for (auto& t : nonisomorphic_trees(m))
            if (Rational(t.small_class_size()) <= cap) out.push_back(t);
    return out;
}

namespace {

std::string category_of(const RootedTree& t) {
    bool path = true;
    for (int v = 0; v < t.n(); ++v)
        path &= t.children(v).size() + (t.parent(v) >= 0) <= 2;
    if (path) return "path";
    return tree_diameter(t) <= 5 ? "diameter<=5" : "other";
}

struct PartialScan {
    std::uint64_t generated = 0, tried = 0, skipped = 0, pairs = 0, budget = 0;
    std::map<std::string, ScanCategory> cats;
    std::vector<std::tuple<std::uint64_t, Graph, RootedTree>> cex;
    std::vector<std::pair<std::uint64_t, std::string>> disagreements;
};

void scan_host(PartialScan& ps, std::uint64_t idx, const Graph& g, int k, const Rational& r,
               const std::vector<RootedTree>& trees, const std::vector<std::string>& cats) {
    ++ps.generated;
    if (!meets_degree_hypothesis(g, k, r)) {
        ++ps.skipped;
        return;
    }
    ++ps.tried;
    for (std::size_t i = 0; i < trees.size(); ++i) {
        const auto& t = trees[i];
        ++ps.pairs;
        auto& cat = ps.cats[cats[i]];
        ++cat.pairs;
        try {
            auto c = brute_force_embed(t, g);
            if (c) {
                if (!validate_embedding(*c, t, g))
                    ps.disagreements.emplace_back(idx, "host " + std::to_string(idx) + " tree " + tree_canonical(t) +
                                                           ": pruned search returned an invalid map");
                continue;
            }
            auto c2 = reference_embed(t, g);
            if (c2) {
                ps.disagreements.emplace_back(idx, "host " + std::to_string(idx) + " tree " + tree_canonical(t) +
                                                       ": reference search found an embedding the pruned search missed");
                continue;
            }
            ++cat.counterexamples;
            ps.cex.emplace_back(idx, g, t);
        } catch (const BudgetExceeded&) {
            ++ps.budget;
        }
    }
}

}  // namespace

ScanReport conjecture_scan(int k, const Rational& r, int n, const ScanMode& mode) {
    if (k < 1 || n < 1) throw InfeasibleScan("k and n must be positive");
    if (r <= 0 || r > 1) throw InfeasibleScan("r must lie in (0,1]");
    if (mode.exhaustive && n > 10) throw InfeasibleScan("exhaustive scans are limited to n <= 10");
    if (!mode.exhaustive && mode.trials == 0) throw InfeasibleScan("random scans need at least one trial");
    if (k + 1 > 14) throw InfeasibleScan("tree enumeration is limited to k + 1 <= 14");
    auto t0 = std::chrono::steady_clock::now();
    ScanReport rep;
    rep.k = k;
    rep.r = r;
    rep.n = n;
    rep.mode = mode;
    const auto trees = conjecture_trees(k, r);
    std::vector<std::string> cats;
    for (auto& t : trees) cats.push_back(category_of(t));
    rep.trees = trees.size();
    std::vector<Graph> hosts;
    if (mode.exhaustive) hosts = nonisomorphic_graphs(n);
    const std::uint64_t total = mode.exhaustive ? hosts.size() : mode.trials;
    const int jobs = std::max(1, mode.jobs);
    std::vector<PartialScan> parts(jobs);
    auto work = [&](int j) {
        for (std::uint64_t i = j; i < total; i += jobs) {
            if (mode.exhaustive) {
                scan_host(parts[j], i, hosts[i], k, r, trees, cats);
            } else {
                std::seed_seq seq{static_cast<std::uint32_t>(mode.seed), static_cast<std::uint32_t>(mode.seed >> 32),
                                  static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(i >> 32)};
                Rng rng(seq);
                const std::uint64_t p10 = 3 + uniform_below(rng, 7);
                Graph g(n);
                for (int a = 0; a < n; ++a)
                    for (int b = a + 1; b < n; ++b)
                        if (bernoulli(rng, p10, 10)) g.add_edge(a, b);
                scan_host(parts[j], i, g, k, r, trees, cats);
            }
        }
    };
    if (jobs == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (int j = 0; j < jobs; ++j) pool.emplace_back(work, j);
        for (auto& th : pool) th.join();
    }
    std::vector<std::tuple<std::uint64_t, Graph, RootedTree>> cex;
    std::vector<std::pair<std::uint64_t, std::string>> dis;
    for (auto& p : parts) {
        rep.hosts_generated += p.generated;
        rep.instances_tried += p.tried;
        rep.hosts_skipped += p.skipped;
        rep.pairs_checked += p.pairs;
        rep.budget_exceeded += p.budget;
        for (auto& [name, c] : p.cats) {
            rep.categories[name].pairs += c.pairs;
            rep.categories[name].counterexamples += c.counterexamples;
        }
        cex.insert(cex.end(), p.cex.begin(), p.cex.end());
        dis.insert(dis.end(), p.disagreements.begin(), p.disagreements.end());
    }
    std::stable_sort(cex.begin(), cex.end(), [](const auto& a, const auto& b) { return std::get<0>(a) < std::get<0>(b); });
    std::stable_sort(dis.begin(), dis.end());
    for (auto& [i, g, t] : cex) rep.counterexamples.emplace_back(g, t);
    for (auto& d : dis) rep.oracle_disagreements.push_back(d.second);
    rep.runtime_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

Json scan_report_json(const ScanReport& rep) {
    Json cats = Json::object();
    for (auto& [name, c] : rep.categories) cats[name] = {{"pairs", c.pairs}, {"counterexamples", c.counterexamples}};
    Json cex = Json::array();
    for (auto& [g, t] : rep.counterexamples) cex.push_back({{"host", graph_to_json(g)}, {"tree", tree_to_json(t)}});
    Json mode = rep.mode.exhaustive ? Json{{"kind", "exhaustive"}}
                                    : Json{{"kind", "random"}, {"seed", rep.mode.seed}, {"trials", rep.mode.trials}};
    return Json{{"parameters", {{"k", rep.k}, {"r", to_string(rep.r)}, {"n", rep.n}, {"mode", mode}}},
                {"hosts_generated", rep.hosts_generated},
                {"instances_tried", rep.instances_tried},
                {"hosts_skipped", rep.hosts_skipped},
                {"trees", rep.trees},
                {"pairs_checked", rep.pairs_checked},
                {"categories", cats},
                {"counterexamples", cex},
                {"oracle_disagreements", rep.oracle_disagreements},
                {"budget_exceeded", rep.budget_exceeded}};
}

bool bistar_check(int k) {
    if (k < 7 || k % 2 == 0) throw std::invalid_argument("bistar_check needs k odd and at least 7");
    const int a = (k - 1) / 2;
    return !brute_force_embed(bistar(a, a), complete_bipartite(a, k)).has_value();
}

Graph colour_class(int n, const std::vector<int>& colouring, int colour) {
    Graph g(n);
    std::size_t e = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j, ++e)
            if (e < colouring.size() && colouring[e] == colour) g.add_edge(i, j);
    return g;
}

RamseyVerdict ramsey_check(const std::vector<RootedTree>& trees, int n, std::uint64_t budget) {
    if (trees.empty()) throw std::invalid_argument("ramsey_check needs at least one tree");
    if (n < 1) throw std::invalid_argument("ramsey_check needs n >= 1");
    const int m = static_cast<int>(trees.size());
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
    std::vector<Graph> cls(m, Graph(n));
    RamseyVerdict v;
    for (int c = 0; c < m; ++c)
        if (brute_force_embed(trees[c], cls[c])) {
            v.forced = true;
            return v;
        }
    bool same = true;
    for (int c = 1; c < m; ++c) same &= tree_canonical(trees[c]) == tree_canonical(trees[0]);
    std::vector<int> col(pairs.size(), -1);
    std::function<bool(std::size_t)> rec = [&](std::size_t e) {
        if (e == pairs.size()) return true;
        if (++v.nodes > budget) throw BudgetExceeded("colouring search budget exceeded");
        for (int c = 0; c < m; ++c) {
            if (same && e == 0 && c > 0) break;  // colours are interchangeable
            auto [a, b] = pairs[e];
            cls[c].add_edge(a, b);
            if (!brute_force_embed(trees[c], cls[c])) {
                col[e] = c;
                if (rec(e + 1)) return true;
            }
            cls[c].remove_edge(a, b);
        }
        return false;
    };
    try {
        if (rec(0)) {
            v.forced = false;
            v.colouring = col;
        } else {
            v.forced = true;
        }
    } catch (const BudgetExceeded&) {
        v.inconclusive = true;
    }
    return v;
}

PigeonholeStep pigeonhole_colour(int n, const std::vector<int>& colouring, const std::vector<int>& ks) {
    const int m = static_cast<int>(ks.size());
    int need = 2;
    for (int k : ks) need += k - 1;
    if (n < need) throw std::invalid_argument("n is below 2 + sum(k_i - 1)");
    if (static_cast<int>(colouring.size()) != n * (n - 1) / 2) throw std::invalid_argument("colouring has the wrong length");
    std::vector<std::vector<int>> deg(m, std::vector<int>(n, 0));
    std::size_t e = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j, ++e) {
            int c = colouring[e];
            if (c < 0 || c >= m) throw std::invalid_argument("colour out of range");
            ++deg[c][i];
            ++deg[c][j];
        }
    PigeonholeStep best;
    for (int c = 0; c < m; ++c) {
        int cnt = 0;
        for (int v = 0; v < n; ++v) cnt += deg[c][v] >= ks[c];
        if (cnt > best.vertices) {
            best.colour = c;
            best.vertices = cnt;
        }
    }
    best.meets_share = static_cast<std::int64_t>(best.vertices) * m >= n;
    return best;
}

}  // namespace lks
