#include "lks/cluster_model.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <sstream>

namespace lks {

std::vector<VertexSet> SkewLksGraph::clusters() const {
    std::vector<VertexSet> out(L);
    out.insert(out.end(), S.begin(), S.end());
    return out;
}

std::vector<int> SkewLksGraph::cluster_of() const {
    std::vector<int> out(host.n(), -1);
    for (int c = 0; c < cluster_count(); ++c)
        for (Vertex v : cluster(c)) out[v] = c;
    return out;
}

int SkewLksGraph::order() const {
    int s = 0;
    for (int c = 0; c < cluster_count(); ++c) s += static_cast<int>(cluster(c).size());
    return s;
}

ClusterGraph::ClusterGraph(int mL, int mS, std::vector<std::int64_t> sizes, std::vector<std::vector<Rational>> density,
                           Rational r)
    : mL_(mL), mS_(mS), sizes_(std::move(sizes)), density_(std::move(density)), r_(std::move(r)) {
    const int N = mL + mS;
    if (static_cast<int>(sizes_.size()) != N || static_cast<int>(density_.size()) != N)
        throw std::invalid_argument("cluster graph: size table does not match cluster count");
    nbrs_.assign(N, {});
    for (int c = 0; c < N; ++c) {
        if (static_cast<int>(density_[c].size()) != N) throw std::invalid_argument("cluster graph: density table not square");
        for (int d = 0; d < N; ++d) {
            if (density_[c][d] != density_[d][c]) throw std::invalid_argument("cluster graph: density table not symmetric");
            if (density_[c][d] < 0 || density_[c][d] > 1) throw std::invalid_argument("cluster graph: density outside [0,1]");
            if (c != d && density_[c][d] > 0) nbrs_[c].push_back(d);
        }
    }
}

ClusterGraph ClusterGraph::from_lks(const SkewLksGraph& g) {
    const int N = g.cluster_count();
    std::vector<std::int64_t> sizes(N);
    std::vector<std::vector<Rational>> dens(N, std::vector<Rational>(N, Rational(0)));
    for (int c = 0; c < N; ++c) sizes[c] = static_cast<std::int64_t>(g.cluster(c).size());
    const int mL = static_cast<int>(g.L.size());
    for (int c = 0; c < N; ++c)
        for (int d = c + 1; d < N; ++d) {
            if (c >= mL && d >= mL) continue;  // S-S pairs carry no cluster edge
            if (g.cluster(c).empty() || g.cluster(d).empty()) continue;
            Rational x = lks::density(g.host, g.cluster(c), g.cluster(d));
            dens[c][d] = dens[d][c] = x;
        }
    return ClusterGraph(mL, static_cast<int>(g.S.size()), sizes, dens, g.params.r);
}

Rational ClusterGraph::degbar(int c, const ClusterSet& set) const {
    if (c < 0 || c >= size()) throw std::out_of_range("unknown cluster id " + std::to_string(c));
    Rational s = 0;
    for (int d : set) {
        if (d < 0 || d >= size()) throw std::out_of_range("unknown cluster id " + std::to_string(d));
        if (d != c) s += density_[c][d] * sizes_[d];
    }
    return s;
}

Rational ClusterGraph::degbar(int c) const { return degbar(c, all()); }

ClusterSet ClusterGraph::L_set() const {
    ClusterSet s(mL_);
    std::iota(s.begin(), s.end(), 0);
    return s;
}

ClusterSet ClusterGraph::S_set() const {
    ClusterSet s(mS_);
    std::iota(s.begin(), s.end(), mL_);
    return s;
}

ClusterSet ClusterGraph::all() const {
    ClusterSet s(size());
    std::iota(s.begin(), s.end(), 0);
    return s;
}

std::int64_t ClusterGraph::total_order() const {
    return std::accumulate(sizes_.begin(), sizes_.end(), std::int64_t{0});
}

std::vector<LksViolation> validate_lks(const SkewLksGraph& g, const RegularityBudget& budget) {
    std::vector<LksViolation> out;
    const auto& p = g.params;
    const int mL = static_cast<int>(g.L.size()), mS = static_cast<int>(g.S.size());
    const int N = mL + mS;

    std::vector<int> owner(g.host.n(), -2);
    for (Vertex v : g.garbage) owner[v] = -1;
    for (int c = 0; c < N; ++c) {
        if (g.cluster(c).empty()) out.push_back({0, "cluster " + std::to_string(c) + " is empty"});
        for (Vertex v : g.cluster(c)) {
            if (v < 0 || v >= g.host.n() || owner[v] != -2) {
                out.push_back({0, "vertex " + std::to_string(v) + " is claimed twice or out of range"});
                return out;
            }
            owner[v] = c;
        }
    }
    for (Vertex v = 0; v < g.host.n(); ++v)
        if (owner[v] == -2) {
            out.push_back({0, "vertex " + std::to_string(v) + " is in no cluster and not garbage"});
            return out;
        }

    if (Rational(mL) < (1 + p.eta) * mS)
        out.push_back({1, "m_L=" + std::to_string(mL) + " < (1+eta) m_S with m_S=" + std::to_string(mS)});

    for (int i = 1; i < mL; ++i)
        if (g.L[i].size() != g.L[0].size()) out.push_back({2, "L-cluster " + std::to_string(i) + " differs in size"});
    for (int j = 1; j < mS; ++j)
        if (g.S[j].size() != g.S[0].size())
            out.push_back({2, "S-cluster " + std::to_string(mL + j) + " differs in size"});

    if (mL > 0 && mS > 0) {
        Rational lhs = p.r * static_cast<std::int64_t>(g.S[0].size());
        Rational rhs = (1 - p.r) * static_cast<std::int64_t>(g.L[0].size());
        if (lhs != rhs)
            out.push_back({3, "r|S| = " + to_string(lhs) + " differs from (1-r)|L| = " + to_string(rhs)});
    }

    // item 4 over L-L and L-S pairs
    std::uint64_t pair_index = 0;
    for (int c = 0; c < mL; ++c)
        for (int d = c + 1; d < N; ++d, ++pair_index) {
            const auto& X = g.cluster(c);
            const auto& Y = g.cluster(d);
            if (X.empty() || Y.empty()) continue;
            Rational x = density(g.host, X, Y);
            if (x == 0) continue;
            if (x < p.d) {
                out.push_back({4, "pair (" + std::to_string(c) + "," + std::to_string(d) + ") has density " +
                                      to_string(x) + " strictly between 0 and d"});
                continue;
            }
            RegularityBudget b = budget;
            b.seed = budget.seed + 7919 * pair_index;
            auto verdict = is_regular(g.host, X, Y, p.eps, b);
            if (!verdict.regular)
                out.push_back({4, "pair (" + std::to_string(c) + "," + std::to_string(d) + ") is not eps-regular, gap " +
                                      to_string(verdict.witness->gap)});
        }

    int reported5 = 0;
    for (auto [u, v] : g.host.edges()) {
        int cu = owner[u], cv = owner[v];
        if (cu < 0 || cv < 0) continue;
        bool bad = (cu == cv) || (cu >= mL && cv >= mL);
        if (bad && reported5++ < 8)
            out.push_back({5, "edge " + std::to_string(u) + "-" + std::to_string(v) +
                                  (cu == cv ? " inside one cluster" : " joins two S-clusters")});
    }

    for (int c = 0; c < mL; ++c) {
        std::int64_t sum = 0;
        for (Vertex v : g.L[c])
            for (Vertex w : g.host.neighbours(v)) sum += owner[w] >= 0;
        Rational avg = g.L[c].empty() ? Rational(0) : Rational(sum) / static_cast<std::int64_t>(g.L[c].size());
        if (avg < (1 + p.eta) * p.k)
            out.push_back({6, "L-cluster " + std::to_string(c) + " has average degree " + to_string(avg) +
                                  " below (1+eta)k = " + to_string((1 + p.eta) * p.k)});
    }
    return out;
}

SkewLksGraph synthesize_lks(int mL, int mS, int cluster_size, const std::vector<std::vector<Rational>>& plan,
                            const LksParams& params, std::uint64_t seed) {
    const int N = mL + mS;
    if (mL < 0 || mS < 0 || cluster_size < 1) throw InfeasiblePlan("cluster counts and size must be positive");
    if (params.r <= 0 || params.r > Rational(1, 2)) throw InfeasiblePlan("r must lie in (0,1/2]");
    Rational s_size = Rational(cluster_size) * (1 - params.r) / params.r;
    if (denominator(s_size) != 1) throw InfeasiblePlan("S-cluster size " + to_string(s_size) + " is not an integer");
    const int ssz = static_cast<int>(floor_int(s_size));
    if (static_cast<int>(plan.size()) != N) throw InfeasiblePlan("density plan must be (mL+mS) x (mL+mS)");
    for (int c = 0; c < N; ++c) {
        if (static_cast<int>(plan[c].size()) != N) throw InfeasiblePlan("density plan is not square");
        if (plan[c][c] != 0) throw InfeasiblePlan("density plan has a nonzero diagonal entry");
        for (int d = 0; d < N; ++d) {
            const Rational& x = plan[c][d];
            if (x != plan[d][c]) throw InfeasiblePlan("density plan is not symmetric");
            if (x < 0 || x > 1) throw InfeasiblePlan("density outside [0,1]");
            if (c >= mL && d >= mL && x != 0) throw InfeasiblePlan("S-S densities must be zero");
            if (x > 0 && x < params.d) throw InfeasiblePlan("planned density below d");
        }
    }
    SkewLksGraph g;
    int n = mL * cluster_size + mS * ssz;
    g.host = Graph(n);
    g.params = params;
    int next = 0;
    for (int c = 0; c < mL; ++c) {
        VertexSet cl(cluster_size);
        std::iota(cl.begin(), cl.end(), next);
        next += cluster_size;
        g.L.push_back(cl);
    }
    for (int c = 0; c < mS; ++c) {
        VertexSet cl(ssz);
        std::iota(cl.begin(), cl.end(), next);
        next += ssz;
        g.S.push_back(cl);
    }
    Rng rng(seed);
    for (int c = 0; c < N; ++c)
        for (int d = c + 1; d < N; ++d) {
            const Rational& x = plan[c][d];
            if (x == 0) continue;
            auto num = numerator(x).convert_to<std::uint64_t>();
            auto den = denominator(x).convert_to<std::uint64_t>();
            for (Vertex u : g.cluster(c))
                for (Vertex v : g.cluster(d))
                    if (bernoulli(rng, num, den)) g.host.add_edge(u, v);
        }
    std::vector<int> labels(n);
    for (int c = 0; c < N; ++c)
        for (Vertex v : g.cluster(c)) labels[v] = c;
    g.host.set_labels(labels);
    return g;
}

SizeBoundReport cluster_size_bounds(const ClusterGraph& cg, std::int64_t n) {
    SizeBoundReport rep;
    const std::int64_t N = cg.size();
    if (N == 0) return rep;
    for (int c = 0; c < N; ++c) {
        Rational bound = cg.is_L(c) ? Rational(n, N) : Rational(n) / (cg.r() * N);
        Rational margin = bound - cg.cluster_size(c);
        if (margin < 0) rep.ok = false;
        std::ostringstream os;
        os << (cg.is_L(c) ? "L" : "S") << c << " size=" << cg.cluster_size(c) << " bound=" << to_string(bound)
           << " margin=" << to_string(margin);
        rep.lines.push_back(os.str());
    }
    return rep;
}

bool ultratypical_degree_check(const SkewLksGraph& g, Vertex v, const ClusterSet& S, const Rational& eps) {
    auto owner = g.cluster_of();
    int c = owner.at(v);
    if (c < 0) throw PreconditionError("vertex lies in the garbage set", {"v in a cluster"});
    auto clusters = g.clusters();
    auto ut = ultratypical_vertices(g.host, clusters, c, eps);
    if (!set_contains(ut, v)) throw PreconditionError("vertex " + std::to_string(v) + " is not ultratypical", {"ultratypical"});
    ClusterGraph cg = ClusterGraph::from_lks(g);
    VertexSet target;
    for (int d : S) target = set_union(target, clusters.at(d));
    Rational lhs = g.host.degree_into(v, target);
    Rational q = sqrt_upper(eps);
    Rational rhs = cg.degbar(c, S) - 2 * q * g.order() / g.params.r;
    return lhs >= rhs;
}

std::pair<std::int64_t, std::int64_t> skew_approximation(const Rational& r, const Rational& eta, const Rational& q) {
    if (r <= 0 || r > Rational(1, 2)) throw std::invalid_argument("skew must lie in (0,1/2]");
    if (r == Rational(1, 2)) return {1, 2};
    Rational rho = Rational(1, 2) - r;
    Rational hi = r * (1 + eta * rho * q / 12);
    for (std::int64_t t = 2;; ++t) {
        std::int64_t s = ceil_int(r * t);
        if (Rational(s, t) <= hi) return {s, t};
        if (t > 1000000) throw std::runtime_error("no rational skew approximation with small denominator");
    }
}

namespace {

std::vector<int> component_ids(const Graph& g, const std::vector<char>& active) {
    std::vector<int> comp(g.n(), -1);
    int next = 0;
    for (Vertex s = 0; s < g.n(); ++s) {
        if (!active[s] || comp[s] >= 0) continue;
        std::deque<Vertex> q{s};
        comp[s] = next;
        while (!q.empty()) {
            Vertex u = q.front();
            q.pop_front();
            for (Vertex w : g.neighbours(u))
                if (active[w] && comp[w] < 0) {
                    comp[w] = next;
                    q.push_back(w);
                }
        }
        ++next;
    }
    return comp;
}

}  // namespace

namespace {

// Refinement, erasures, classification and subdivision for one starting
// partition. Vertices outside P end up in the garbage set.
SkewLksGraph assemble(Graph H, std::vector<char> active, std::vector<VertexSet> P, std::int64_t k,
                      const Rational& eta, const Rational& eps, const Rational& d, std::int64_t s, std::int64_t t,
                      const BuildOptions& opt, BuildReport& rep) {
    const int n = H.n();
    const Rational q(k, n);
    auto halve = [](const std::vector<Vertex>& ord) {
        std::size_t sz = ord.size() / 2;
        return std::pair<VertexSet, VertexSet>{VertexSet(ord.begin(), ord.begin() + sz),
                                               VertexSet(ord.begin() + sz, ord.begin() + 2 * sz)};
    };

    // witness-driven refinement
    std::vector<std::pair<int, int>> irregular;
    for (int iter = 0; iter < opt.iteration_cap; ++iter) {
        rep.iterations = iter + 1;
        irregular.clear();
        std::vector<VertexSet> marks(P.size());
        for (std::size_t i = 0; i < P.size(); ++i)
            for (std::size_t j = i + 1; j < P.size(); ++j) {
                VertexSet a = make_set(P[i]), b = make_set(P[j]);
                if (H.edges_between(a, b) == 0) continue;
                RegularityBudget bud = opt.budget;
                bud.seed += 104729 * (i * P.size() + j);
                auto verdict = is_regular(H, a, b, eps, bud);
                if (!verdict.regular) {
                    irregular.emplace_back(static_cast<int>(i), static_cast<int>(j));
                    marks[i] = set_union(marks[i], verdict.witness->Xp);
                    marks[j] = set_union(marks[j], verdict.witness->Yp);
                }
            }
        const std::int64_t Np = static_cast<std::int64_t>(P.size());
        if (Rational(static_cast<std::int64_t>(irregular.size())) <= eps * Np * Np) break;
        if (P.front().size() < 4 * static_cast<std::size_t>(s * (t - s))) {
            rep.notes.push_back("refinement stopped: parts too small to split further");
            break;
        }
        if (iter + 1 == opt.iteration_cap) {
            rep.notes.push_back("refinement hit the iteration cap");
            break;
        }
        std::vector<VertexSet> next;
        for (std::size_t i = 0; i < P.size(); ++i) {
            std::vector<Vertex> ord = P[i];
            std::stable_partition(ord.begin(), ord.end(), [&](Vertex v) { return set_contains(marks[i], v); });
            auto [x, y] = halve(ord);
            next.push_back(x);
            next.push_back(y);
        }
        P = std::move(next);
    }
    rep.parts = static_cast<int>(P.size());
    rep.irregular_pairs = static_cast<std::int64_t>(irregular.size());

    std::vector<int> part_of(n, -1);
    for (std::size_t i = 0; i < P.size(); ++i)
        for (Vertex v : P[i]) part_of[v] = static_cast<int>(i);
    for (Vertex v = 0; v < n; ++v)
        if (part_of[v] < 0 && active[v]) {
            active[v] = 0;
            for (Vertex w : std::vector<Vertex>(H.neighbours(v))) H.remove_edge(v, w);
        }

    // erase inside parts, irregular pairs, sparse pairs
    std::vector<std::vector<char>> irr(P.size(), std::vector<char>(P.size(), 0));
    for (auto [i, j] : irregular) irr[i][j] = irr[j][i] = 1;
    std::vector<std::vector<std::int64_t>> e(P.size(), std::vector<std::int64_t>(P.size(), 0));
    for (auto [u, v] : H.edges()) {
        int a = part_of[u], b = part_of[v];
        if (a >= 0 && b >= 0) {
            ++e[a][b];
            if (a != b) ++e[b][a];
        }
    }
    for (auto [u, v] : H.edges()) {
        int a = part_of[u], b = part_of[v];
        if (a == b) {
            H.remove_edge(u, v);
            ++rep.erased_inside;
        } else if (irr[a][b]) {
            H.remove_edge(u, v);
            ++rep.erased_irregular;
        } else if (Rational(e[a][b], static_cast<std::int64_t>(P[a].size() * P[b].size())) < d) {
            H.remove_edge(u, v);
            ++rep.erased_sparse;
        }
    }

    // classify and subdivide
    const Rational l_threshold = (1 + eta * q / 4) * k;
    const std::int64_t unit = static_cast<std::int64_t>(P.front().size()) / (s * (t - s));
    if (unit == 0) throw PartitionFailure("parts of size " + std::to_string(P.front().size()) + " cannot hold s(t-s) = " +
                                          std::to_string(s * (t - s)) + " vertices");
    SkewLksGraph out;
    rep.l_sets = rep.s_sets = 0;
    for (std::size_t i = 0; i < P.size(); ++i) {
        std::int64_t sum = 0;
        for (Vertex v : P[i]) sum += H.degree(v);
        bool is_l = Rational(sum, static_cast<std::int64_t>(P[i].size())) >= l_threshold;
        (is_l ? rep.l_sets : rep.s_sets)++;
        std::vector<Vertex> ord = P[i];
        std::sort(ord.begin(), ord.end());
        const std::int64_t pieces = is_l ? t - s : s;
        const std::int64_t size = is_l ? s * unit : (t - s) * unit;
        std::size_t pos = 0;
        for (std::int64_t c = 0; c < pieces; ++c) {
            VertexSet cl(ord.begin() + pos, ord.begin() + pos + size);
            pos += size;
            (is_l ? out.L : out.S).push_back(cl);
        }
        for (; pos < ord.size(); ++pos) active[ord[pos]] = 0;
    }
    for (Vertex v = 0; v < n; ++v)
        if (!active[v]) {
            for (Vertex w : std::vector<Vertex>(H.neighbours(v))) H.remove_edge(v, w);
            out.garbage.push_back(v);
        }
    out.params = {k, eta * q / 100, eps * t, d / 2, Rational(s, t)};

    // no edges between S-clusters; sub-pairs that lost density or regularity are cleared
    std::vector<int> owner(n, -1);
    for (int c = 0; c < out.cluster_count(); ++c)
        for (Vertex v : out.cluster(c)) owner[v] = c;
    const int mL = static_cast<int>(out.L.size());
    for (auto [u, v] : H.edges())
        if (owner[u] >= mL && owner[v] >= mL) {
            H.remove_edge(u, v);
            ++rep.erased_ss;
        }
    const int N = out.cluster_count();
    for (int c = 0; c < mL; ++c)
        for (int dd = c + 1; dd < N; ++dd) {
            const auto& X = out.cluster(c);
            const auto& Y = out.cluster(dd);
            std::int64_t cnt = H.edges_between(X, Y);
            if (cnt == 0) continue;
            Rational x(cnt, static_cast<std::int64_t>(X.size() * Y.size()));
            bool clear = x < out.params.d;
            if (!clear) {
                RegularityBudget bud = opt.budget;
                bud.seed += 7919 * (static_cast<std::uint64_t>(c) * N + dd);
                clear = !is_regular(H, X, Y, out.params.eps, bud).regular;
                if (clear) ++rep.irregular_pairs;
            }
            if (clear) {
                for (Vertex u : X)
                    for (Vertex w : Y)
                        if (H.remove_edge(u, w)) ++(x < out.params.d ? rep.erased_sparse : rep.erased_irregular);
            }
        }
    std::vector<int> labels(n, -1);
    for (int c = 0; c < N; ++c)
        for (Vertex v : out.cluster(c)) labels[v] = c;
    H.set_labels(labels);
    out.host = std::move(H);
    return out;
}

}  // namespace

SkewLksGraph build_skew_lks(const Graph& G, std::int64_t k, const Rational& eta, const Rational& r_target,
                            const Rational& eps, const Rational& d, const BuildOptions& opt, BuildReport* report) {
    BuildReport base;
    const int n = G.n();
    if (n == 0 || k <= 0) throw std::invalid_argument("build_skew_lks needs a nonempty host and k > 0");
    const Rational q(k, n);
    const Rational high = (1 + eta) * k;

    int high_count = 0;
    for (Vertex v = 0; v < n; ++v) high_count += Rational(G.degree(v)) >= high;
    if (Rational(high_count) < r_target * n)
        throw PreconditionError("host has " + std::to_string(high_count) + " vertices of degree >= (1+eta)k, fewer than r n",
                                {"at least r n vertices of degree >= (1+eta)k"});

    // drop eta q n / 2 low degree vertices
    std::vector<char> active(n, 1);
    std::vector<Vertex> low;
    for (Vertex v = 0; v < n; ++v)
        if (Rational(G.degree(v)) < high) low.push_back(v);
    std::stable_sort(low.begin(), low.end(), [&](Vertex a, Vertex b) { return G.degree(a) < G.degree(b); });
    std::int64_t drop = std::min<std::int64_t>(floor_int(eta * q * n / 2), static_cast<std::int64_t>(low.size()));
    for (std::int64_t i = 0; i < drop; ++i) active[low[i]] = 0;
    base.removed_low_degree = drop;

    auto [s, t] = skew_approximation(r_target, eta, q);
    base.s = s;
    base.t = t;
    base.r_prime = Rational(s, t);

    Graph H = G;
    for (Vertex v = 0; v < n; ++v)
        if (!active[v])
            for (Vertex w : std::vector<Vertex>(H.neighbours(v))) H.remove_edge(v, w);

    // degree buckets: runs of equal (component, degree)
    auto comp = component_ids(H, active);
    std::vector<Vertex> order;
    for (Vertex v = 0; v < n; ++v)
        if (active[v]) order.push_back(v);
    std::stable_sort(order.begin(), order.end(), [&](Vertex a, Vertex b) {
        if (comp[a] != comp[b]) return comp[a] < comp[b];
        return H.degree(a) < H.degree(b);
    });
    std::vector<std::vector<Vertex>> buckets;
    for (std::size_t i = 0; i < order.size(); ++i) {
        if (i == 0 || comp[order[i]] != comp[order[i - 1]] || H.degree(order[i]) != H.degree(order[i - 1]))
            buckets.emplace_back();
        buckets.back().push_back(order[i]);
    }

    // starting partitions: bucket-aligned parts for every part size that is a
    // multiple of s(t-s) and leaves at most eps n vertices over, largest first;
    // then equal cuts of the (degree, component) order
    const std::int64_t step = s * (t - s);
    const std::int64_t active_count = static_cast<std::int64_t>(order.size());
    const int parts0 = std::max(1, std::min<int>(opt.initial_parts, static_cast<int>(active_count)));
    std::vector<std::pair<std::string, std::vector<VertexSet>>> starts;
    for (std::int64_t P = (active_count / parts0) / step * step; P >= step; P -= step) {
        std::int64_t left = 0;
        for (const auto& b : buckets) left += static_cast<std::int64_t>(b.size()) % P;
        if (Rational(left) > eps * n) continue;
        std::vector<VertexSet> parts;
        for (const auto& b : buckets)
            for (std::size_t i = 0; i + P <= b.size(); i += P) parts.emplace_back(b.begin() + i, b.begin() + i + P);
        if (!parts.empty()) starts.emplace_back("bucket-aligned parts of " + std::to_string(P), std::move(parts));
    }
    {
        std::vector<Vertex> by_degree = order;
        std::stable_sort(by_degree.begin(), by_degree.end(), [&](Vertex a, Vertex b) {
            if (H.degree(a) != H.degree(b)) return H.degree(a) < H.degree(b);
            return comp[a] < comp[b];
        });
        std::vector<VertexSet> parts(parts0);
        std::size_t sz = by_degree.size() / parts0;
        for (int i = 0; i < parts0; ++i) parts[i].assign(by_degree.begin() + i * sz, by_degree.begin() + (i + 1) * sz);
        starts.emplace_back(std::to_string(parts0) + " equal parts by degree", std::move(parts));
    }

    std::string last;
    std::vector<std::string> tried;
    for (auto& [name, parts] : starts) {
        BuildReport rep = base;
        try {
            SkewLksGraph out = assemble(H, active, parts, k, eta, eps, d, s, t, opt, rep);
            auto viol = validate_lks(out, opt.budget);
            if (viol.empty()) {
                rep.notes.insert(rep.notes.begin(), tried.begin(), tried.end());
                rep.notes.push_back("kept " + name);
                if (report) *report = rep;
                return out;
            }
            last = name + ": item " + std::to_string(viol.front().item) + ", " + viol.front().witness;
        } catch (const PartitionFailure& e) {
            last = name + ": " + e.what();
        }
        tried.push_back("rejected " + last);
    }
    if (report) {
        *report = base;
        report->notes = tried;
    }
    throw PartitionFailure("no starting partition gave a valid skew LKS graph; last attempt " + last);
}

Json params_to_json(const LksParams& p) {
    return Json{{"k", p.k}, {"eta", to_string(p.eta)}, {"eps", to_string(p.eps)}, {"d", to_string(p.d)}, {"r", to_string(p.r)}};
}

LksParams params_from_json(const Json& j) {
    try {
        LksParams p;
        p.k = j.at("k").get<std::int64_t>();
        p.eta = parse_rational(j.at("eta").get<std::string>());
        p.eps = parse_rational(j.at("eps").get<std::string>());
        p.d = parse_rational(j.at("d").get<std::string>());
        p.r = parse_rational(j.at("r").get<std::string>());
        return p;
    } catch (const Json::exception& e) {
        throw ParseError(std::string("params json: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw ParseError(std::string("params json: ") + e.what());
    }
}

Json lks_to_json(const SkewLksGraph& g) {
    return Json{{"host", graph_to_json(g.host)}, {"L", g.L}, {"S", g.S}, {"garbage", g.garbage},
                {"params", params_to_json(g.params)}};
}

SkewLksGraph lks_from_json(const Json& j) {
    try {
        SkewLksGraph g;
        g.host = graph_from_json(j.at("host"));
        for (const auto& c : j.at("L")) g.L.push_back(vertex_set_from_json(c));
        for (const auto& c : j.at("S")) g.S.push_back(vertex_set_from_json(c));
        if (j.contains("garbage")) g.garbage = vertex_set_from_json(j.at("garbage"));
        g.params = params_from_json(j.at("params"));
        for (int c = 0; c < g.cluster_count(); ++c)
            for (Vertex v : g.cluster(c))
                if (v < 0 || v >= g.host.n()) throw ParseError("cluster vertex out of range");
        return g;
    } catch (const Json::exception& e) {
        throw ParseError(std::string("lks json: ") + e.what());
    }
}

}  // namespace lks
