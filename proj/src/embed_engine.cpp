#include "lks/embed_engine.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>

namespace lks {

EmbedContext::EmbedContext(const SkewLksGraph& g, const RootedTree& tree)
    : g_(&g), tree_(&tree), cg_(ClusterGraph::from_lks(g)), n_(g.order()), cluster_of_(g.cluster_of()),
      phi_(tree.n()) {
    const int hn = g.host.n();
    auto cl = g.clusters();
    ultra_.resize(cl.size());
    ultra_flag_.assign(hn, 0);
    for (std::size_t c = 0; c < cl.size(); ++c) {
        ultra_[c] = ultratypical_vertices(g.host, cl, static_cast<int>(c), g.params.eps);
        for (Vertex h : ultra_[c]) ultra_flag_[h] = 1;
    }
    forbidden_.assign(hn, 0);
    reserved_.assign(hn, -1);
    owner_.assign(hn, -1);
}

VertexSet EmbedContext::free_in(int c, bool ultra_only) const {
    VertexSet out;
    for (Vertex h : g_->cluster(c))
        if (!occupied(h) && (!ultra_only || ultra_flag_[h])) out.push_back(h);
    return out;
}

std::int64_t EmbedContext::free_count(int c) const {
    std::int64_t s = 0;
    for (Vertex h : g_->cluster(c)) s += !occupied(h);
    return s;
}

int EmbedContext::free_degree(Vertex h, int c, bool ultra_only) const {
    int s = 0;
    for (Vertex x : g_->cluster(c))
        if (!occupied(x) && (!ultra_only || ultra_flag_[x]) && g_->host.has_edge(h, x)) ++s;
    return s;
}

void EmbedContext::forbid(const VertexSet& hs) {
    for (Vertex h : hs) forbidden_[h] = 1;
}

void EmbedContext::place(Vertex t, Vertex h, const std::string& provenance) {
    if (phi_.map[t] >= 0) throw std::logic_error("tree vertex " + std::to_string(t) + " placed twice");
    if (occupied(h)) throw std::logic_error("host vertex " + std::to_string(h) + " is not free");
    phi_.map[t] = h;
    phi_.provenance[t] = provenance;
    owner_[h] = t;
}

void EmbedContext::reserve(Vertex h, int block) {
    if (occupied(h)) throw std::logic_error("host vertex " + std::to_string(h) + " is not free to reserve");
    reserved_[h] = block;
}

void EmbedContext::release(int block) {
    for (auto& b : reserved_)
        if (b == block) b = -1;
}

VertexSet EmbedContext::reserved_block(int block) const {
    VertexSet out;
    for (int h = 0; h < static_cast<int>(reserved_.size()); ++h)
        if (reserved_[h] == block) out.push_back(h);
    return out;
}

VertexSet EmbedContext::image(const VertexSet& tree_vertices) const {
    VertexSet out;
    for (Vertex t : tree_vertices)
        if (phi_.map[t] >= 0) out.push_back(phi_.map[t]);
    return make_set(out);
}

std::int64_t EmbedContext::accounted() const {
    std::int64_t s = 0;
    for (std::size_t h = 0; h < owner_.size(); ++h) s += forbidden_[h] || reserved_[h] >= 0 || owner_[h] >= 0;
    return s;
}

bool EmbedContext::check_slack(int c, const Rational& eta, const std::string& step) {
    const auto size = static_cast<std::int64_t>(g_->cluster(c).size());
    Rational need = cg_.r() * eta / 8 * size;
    std::int64_t have = free_count(c);
    if (Rational(have) >= need) return true;
    invariant_failures.push_back(step + ": slack of cluster " + std::to_string(c) + " is " + std::to_string(have) +
                                 " < " + to_string(need));
    return false;
}

VertexSet reservation_vertices(const EmbedContext& ctx, const Reservation& w) {
    VertexSet out;
    for (int b : w.block)
        if (b >= 0) {
            auto v = ctx.reserved_block(b);
            out.insert(out.end(), v.begin(), v.end());
        }
    return make_set(out);
}

std::string ledger_line(const Inequality& i) {
    return i.name + ": " + to_string(i.lhs) + (i.strict ? " > " : " >= ") + to_string(i.rhs) +
           (i.holds() ? "  ok" : "  FAILS");
}

namespace {

std::vector<char> mark_of(const EmbedContext& ctx, const VertexSet& U) {
    std::vector<char> m(ctx.g().host.n(), 0);
    for (Vertex h : U) m[h] = 1;
    return m;
}

std::int64_t count_in(const EmbedContext& ctx, const std::vector<char>& mark, int c) {
    std::int64_t s = 0;
    for (Vertex h : ctx.g().cluster(c)) s += mark[h];
    return s;
}

Rational rho_of(const Rational& r) { return (1 - r) / r; }

// sum over matching edges CD (C in S) of max{|U n C|, (1-r)/r |U n D|}
Rational matching_load(const EmbedContext& ctx, const ClusterMatching& M, const std::vector<char>& mark) {
    const Rational rho = rho_of(ctx.cg().r());
    Rational s = 0;
    for (auto [l, c] : M) s += std::max(Rational(count_in(ctx, mark, c)), Rational(rho * count_in(ctx, mark, l)));
    return s;
}

std::int64_t union_load(const EmbedContext& ctx, const ClusterSet& B, const std::vector<char>& mark) {
    std::int64_t s = 0;
    for (int c : B) s += count_in(ctx, mark, c);
    return s;
}

void require(EmbedContext& ctx, const std::string& step, const std::vector<Inequality>& ineq,
             std::vector<std::string> extra = {}) {
    bool ok = true;
    std::vector<std::string> lines;
    for (const auto& i : ineq) {
        lines.push_back(step + ": " + ledger_line(i));
        ok &= i.holds();
    }
    for (auto& e : extra) lines.push_back(step + ": " + e);
    ctx.ledger.insert(ctx.ledger.end(), lines.begin(), lines.end());
    if (!ok || !extra.empty()) {
        std::string first;
        for (const auto& i : ineq)
            if (!i.holds()) {
                first = i.name;
                break;
            }
        if (first.empty() && !extra.empty()) first = extra.front();
        throw PreconditionError(step + ": precondition " + first + " fails", lines);
    }
}

std::vector<std::string> anchor_problems(const EmbedContext& ctx, const AnchoredForest& F, int A) {
    std::vector<std::string> out;
    for (const auto& K : F.components)
        for (Vertex x : K.anchors) {
            if (!ctx.mapped(x)) {
                out.push_back("anchor " + std::to_string(x) + " is not mapped");
                continue;
            }
            Vertex h = ctx.image_of(x);
            if (ctx.cluster_of(h) != A) out.push_back("anchor " + std::to_string(x) + " is not mapped into cluster " + std::to_string(A));
            else if (!ctx.is_ultratypical(h)) out.push_back("anchor " + std::to_string(x) + " image is not ultratypical");
        }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// The neighbour of anchor x inside component K.
Vertex anchor_neighbour(const RootedTree& T, const VertexSet& K, Vertex x) {
    if (T.parent(x) >= 0 && set_contains(K, T.parent(x))) return T.parent(x);
    for (Vertex c : T.children(x))
        if (set_contains(K, c)) return c;
    throw std::logic_error("anchor " + std::to_string(x) + " has no neighbour in its component");
}

std::string join_ids(const VertexSet& v) {
    std::string s = "{";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s + "}";
}

bool typical_to(const EmbedContext& ctx, Vertex h, int from, int c) {
    const auto& C = ctx.g().cluster(c);
    Rational need = (ctx.cg().density(from, c) - ctx.g().params.eps) * static_cast<std::int64_t>(C.size());
    return Rational(ctx.g().host.degree_into(h, C)) >= need;
}

// Places the component K into clusters (xc, yc): class 1 into xc, class 2 into yc.
// prescribed: (tree vertex, host vertex), the host vertices lie in xc and are
// either free or already the image of that tree vertex.
bool embed_piece(EmbedContext& ctx, const AnchoredComponent& K, int anchor_colour, int xc, int yc,
                 const std::vector<std::pair<Vertex, Vertex>>& prescribed, bool y_ultra, const Rational& alpha,
                 const std::string& tag, std::vector<std::string>& trace) {
    const RootedTree& T = ctx.tree();
    const Graph& host = ctx.g().host;
    const int m = static_cast<int>(K.vertices.size());
    std::map<Vertex, int> local;
    for (int i = 0; i < m; ++i) local[K.vertices[i]] = i;
    Graph pattern(m);
    std::vector<int> side(m);
    int need_y = 0;
    for (int i = 0; i < m; ++i) {
        Vertex v = K.vertices[i];
        side[i] = T.colour(v) == anchor_colour ? 1 : 0;
        need_y += side[i];
        if (T.parent(v) >= 0 && local.count(T.parent(v))) pattern.add_edge(i, local[T.parent(v)]);
    }
    VertexSet Xp = ctx.free_in(xc);
    std::vector<std::pair<int, int>> pre;
    for (auto [t, h] : prescribed) {
        pre.emplace_back(local.at(t), h);
        Xp.push_back(h);
    }
    Xp = make_set(Xp);
    VertexSet Yp = ctx.free_in(yc, y_ultra);
    if (y_ultra && static_cast<int>(Yp.size()) < need_y) {
        ctx.reports.push_back(tag + ": cluster " + std::to_string(yc) +
                              " has too few free ultratypical vertices, using all free vertices");
        Yp = ctx.free_in(yc);
    }
    PairEmbedOptions opt{ctx.g().params.eps, alpha, ctx.g().params.d, false};
    PairEmbedResult r =
        embed_tree_in_pair(host, pattern, side, ctx.g().cluster(xc), ctx.g().cluster(yc), Xp, Yp, pre, opt);
    if (!r.ok) {
        trace.push_back(tag + ": pair (" + std::to_string(xc) + "," + std::to_string(yc) + ") failed: " + r.failure);
        return false;
    }
    for (int i = 0; i < m; ++i) {
        Vertex t = K.vertices[i];
        if (ctx.mapped(t)) {
            if (ctx.image_of(t) != r.map[i]) throw std::logic_error(tag + ": prescribed image moved");
            continue;
        }
        ctx.place(t, r.map[i], tag);
        if (side[i] == 1 && y_ultra && !ctx.is_ultratypical(r.map[i]))
            ctx.reports.push_back(tag + ": class-2 vertex " + std::to_string(t) + " placed on a non-ultratypical vertex");
    }
    if (!r.violated.empty())
        ctx.reports.push_back(tag + ": pair lemma hypotheses not met at this scale (" + std::to_string(r.violated.size()) +
                              "), first: " + r.violated.front());
    return true;
}

// Free neighbours of u in cluster c, best first: ultratypical, then degree into
// target (if given), then id.
std::vector<Vertex> ranked_neighbours(const EmbedContext& ctx, Vertex u, int c, const VertexSet* target,
                                      bool ultra_only) {
    const Graph& host = ctx.g().host;
    std::vector<std::pair<std::pair<int, int>, Vertex>> cand;
    for (Vertex h : ctx.g().cluster(c)) {
        if (ctx.occupied(h) || !host.has_edge(u, h)) continue;
        if (ultra_only && !ctx.is_ultratypical(h)) continue;
        int deg = target ? host.degree_into(h, *target) : host.degree(h);
        cand.push_back({{-static_cast<int>(ctx.is_ultratypical(h)), -deg}, h});
    }
    std::sort(cand.begin(), cand.end());
    std::vector<Vertex> out;
    for (auto& c2 : cand) out.push_back(c2.second);
    return out;
}

// Distinct images for the anchor neighbours, one per anchor, or empty.
std::vector<Vertex> pick_anchor_images(const EmbedContext& ctx, const std::vector<Vertex>& anchor_images, int c,
                                       const VertexSet* target, bool ultra_only) {
    std::vector<Vertex> out;
    for (Vertex u : anchor_images) {
        Vertex got = -1;
        for (Vertex h : ranked_neighbours(ctx, u, c, target, ultra_only))
            if (std::find(out.begin(), out.end(), h) == out.end()) {
                got = h;
                break;
            }
        if (got < 0) return {};
        out.push_back(got);
    }
    return out;
}

std::vector<Vertex> anchor_images(const EmbedContext& ctx, const AnchoredComponent& K) {
    std::vector<Vertex> out;
    for (Vertex x : K.anchors) out.push_back(ctx.image_of(x));
    return out;
}

constexpr int kClusterTries = 8;

}  // namespace

void embed_anchored_matching(EmbedContext& ctx, const AnchoredForest& F, int A, const ClusterMatching& M,
                             const Rational& eta, const VertexSet& U, const std::string& step) {
    if (F.components.empty()) {
        ctx.ledger.push_back(step + ": empty forest");
        return;
    }
    const ClusterGraph& cg = ctx.cg();
    const RootedTree& T = ctx.tree();
    const Rational rho = rho_of(cg.r());
    const Rational etan = eta * ctx.n();
    ClusterSet SM;
    for (auto [l, s] : M) SM.push_back(s);
    SM = make_set(SM);
    auto markU = mark_of(ctx, U);
    const Rational lhs = cg.degbar(A, SM);
    const std::int64_t F2 = F.class2_size();
    require(ctx, step, {{"degbar(A,S_M) >= (1-r)/r |F2| + load(U) + eta n", lhs, rho * F2 + matching_load(ctx, M, markU) + etan}},
            anchor_problems(ctx, F, A));

    // U together with everything placed by this operation, anchors included
    auto markUU = markU;
    for (const auto& K : F.components)
        for (Vertex x : K.anchors) markUU[ctx.image_of(x)] = 1;
    std::int64_t placed2 = 0;
    const Rational alpha = 16 * ctx.g().params.eps / (eta * cg.r());
    for (std::size_t ki = 0; ki < F.components.size(); ++ki) {
        const auto& K = F.components[ki];
        auto us = anchor_images(ctx, K);
        struct Cand {
            Rational key;
            int l, s;
        };
        std::vector<Cand> cands;
        for (auto [l, s] : M) {
            bool typ = true;
            for (Vertex u : us) typ &= typical_to(ctx, u, A, s);
            if (!typ) continue;
            std::int64_t mind = -1;
            for (Vertex u : us) {
                std::int64_t d0 = ctx.g().host.degree_into(u, ctx.g().cluster(s));
                mind = mind < 0 ? d0 : std::min(mind, d0);
            }
            Rational load = std::max(Rational(count_in(ctx, markUU, s)), Rational(rho * count_in(ctx, markUU, l)));
            cands.push_back({Rational(mind) - load, l, s});
        }
        std::stable_sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) {
            if (a.key != b.key) return a.key > b.key;
            return a.s < b.s;
        });
        if (!cands.empty()) {
            Rational bound = 3 * etan / (4 * static_cast<std::int64_t>(cands.size()));
            ctx.ledger.push_back(step + ": component " + std::to_string(ki) + " typical matching edges " +
                                 std::to_string(cands.size()) + ", best slack " + to_string(cands.front().key) +
                                 (cands.front().key >= bound ? " >= " : " < ") + "averaging bound " + to_string(bound));
        }
        std::vector<std::string> trace;
        bool done = false;
        int tried = 0, lx = -1, ly = -1;
        for (const auto& c : cands) {
            if (tried++ >= kClusterTries) break;
            lx = c.s;
            ly = c.l;
            VertexSet Dp = ctx.free_in(c.l, true);
            auto imgs = pick_anchor_images(ctx, us, c.s, &Dp, false);
            if (imgs.empty()) {
                trace.push_back(step + ": no free neighbour of the anchors in cluster " + std::to_string(c.s));
                continue;
            }
            std::vector<std::pair<Vertex, Vertex>> pre;
            for (std::size_t i = 0; i < K.anchors.size(); ++i)
                pre.emplace_back(anchor_neighbour(T, K.vertices, K.anchors[i]), imgs[i]);
            if (embed_piece(ctx, K, F.anchor_colour, c.s, c.l, pre, true, alpha, step, trace)) {
                ctx.check_slack(c.s, eta, step);
                ctx.check_slack(c.l, eta, step);
                done = true;
                break;
            }
        }
        if (!done)
            throw StuckEmbedding(step + ": component " + std::to_string(ki) + " " + join_ids(K.vertices) +
                                     " could not be placed on any matching edge",
                                 trace, lx, ly);
        for (Vertex v : K.vertices) markUU[ctx.image_of(v)] = 1;
        placed2 += K.class2;
        Inequality run{"running bound after component " + std::to_string(ki), lhs,
                       rho * (F2 - placed2) + matching_load(ctx, M, markUU) + etan};
        ctx.ledger.push_back(step + ": " + ledger_line(run));
        if (!run.holds()) ctx.invariant_failures.push_back(step + ": " + ledger_line(run));
    }
}

Reservation embed_anchored_degrees_reserve(EmbedContext& ctx, const AnchoredForest& F, int A, const ClusterSet& B_set,
                                           const Rational& eta, const VertexSet& U, const std::string& step) {
    Reservation W;
    W.cluster.assign(F.components.size(), -1);
    W.block.assign(F.components.size(), -1);
    if (F.components.empty()) {
        ctx.ledger.push_back(step + ": empty forest");
        return W;
    }
    const ClusterGraph& cg = ctx.cg();
    const RootedTree& T = ctx.tree();
    auto markU = mark_of(ctx, U);
    require(ctx, step,
            {{"degbar(A,B) >= |F1| + |B n U| + eta n", cg.degbar(A, B_set),
              Rational(F.class1_size() + union_load(ctx, B_set, markU)) + eta * ctx.n()}},
            anchor_problems(ctx, F, A));
    for (std::size_t ki = 0; ki < F.components.size(); ++ki) {
        const auto& K = F.components[ki];
        auto us = anchor_images(ctx, K);
        const int k1 = K.class1;
        std::vector<std::pair<int, int>> cands;  // (-key, cluster)
        for (int b : B_set) {
            bool typ = true;
            for (Vertex u : us) typ &= typical_to(ctx, u, A, b);
            if (!typ) continue;
            if (ctx.free_count(b) < k1) continue;
            int key = -1;
            for (Vertex u : us) {
                int d0 = ctx.free_degree(u, b);
                key = key < 0 ? d0 : std::min(key, d0);
            }
            cands.push_back({-key, b});
        }
        std::sort(cands.begin(), cands.end());
        bool done = false;
        for (auto [negkey, b] : cands) {
            auto imgs = pick_anchor_images(ctx, us, b, nullptr, true);
            if (imgs.empty()) continue;
            std::vector<Vertex> nr;
            for (Vertex x : K.anchors) nr.push_back(anchor_neighbour(T, K.vertices, x));
            for (std::size_t i = 0; i < nr.size(); ++i) ctx.place(nr[i], imgs[i], step);
            int block = ctx.new_block();
            int want = k1 - static_cast<int>(nr.size());
            for (Vertex h : ctx.g().cluster(b)) {
                if (want <= 0) break;
                if (ctx.occupied(h)) continue;
                ctx.reserve(h, block);
                --want;
            }
            if (want > 0) throw std::logic_error(step + ": reservation ran short after the capacity check");
            W.cluster[ki] = b;
            W.block[ki] = block;
            ctx.check_slack(b, eta, step);
            ctx.ledger.push_back(step + ": component " + std::to_string(ki) + " anchored in cluster " +
                                 std::to_string(b) + ", reserved " + std::to_string(k1 - nr.size()) +
                                 ", free degree " + std::to_string(-negkey));
            done = true;
            break;
        }
        if (!done)
            throw StuckEmbedding(step + ": no cluster of B holds component " + std::to_string(ki) + " " +
                                     join_ids(K.vertices),
                                 {}, A, cands.empty() ? -1 : cands.front().second);
    }
    return W;
}

void embed_anchored_degrees_complete(EmbedContext& ctx, const AnchoredForest& F, const Reservation& W,
                                     const ClusterSet& B_set, const VertexSet& U, const VertexSet& tilde_U,
                                     const Rational& eta, const std::string& step) {
    if (F.components.empty()) {
        ctx.ledger.push_back(step + ": empty forest");
        return;
    }
    const ClusterGraph& cg = ctx.cg();
    const RootedTree& T = ctx.tree();
    const std::int64_t uu = static_cast<std::int64_t>(set_union(U, tilde_U).size());
    std::vector<Inequality> ineq;
    for (int b : B_set)
        ineq.push_back({"degbar(B" + std::to_string(b) + ") >= |F1| + |F2| + |U u U~| + eta n", cg.degbar(b),
                        Rational(F.class1_size() + F.class2_size() + uu) + eta * ctx.n()});
    // clusters meeting U~ keep their slack outside everything held so far
    std::vector<std::string> extra;
    auto markT = mark_of(ctx, tilde_U);
    for (int c = 0; c < cg.size(); ++c) {
        if (count_in(ctx, markT, c) == 0) continue;
        Rational need = cg.r() * eta / 8 * static_cast<std::int64_t>(ctx.g().cluster(c).size());
        if (Rational(ctx.free_count(c)) < need)
            extra.push_back("cluster " + std::to_string(c) + " meeting U~ has " + std::to_string(ctx.free_count(c)) +
                            " free < " + to_string(need));
    }
    require(ctx, step, ineq, extra);
    const Rational alpha = 32 * ctx.g().params.eps / (cg.r() * eta);
    for (std::size_t ki = 0; ki < F.components.size(); ++ki) {
        const auto& K = F.components[ki];
        const int b = W.cluster.at(ki);
        if (b < 0) continue;
        ctx.release(W.block[ki]);
        std::vector<std::pair<Vertex, Vertex>> pre;
        for (Vertex x : K.anchors) {
            Vertex v = anchor_neighbour(T, K.vertices, x);
            pre.emplace_back(v, ctx.image_of(v));
        }
        std::vector<std::pair<int, int>> cands;
        for (int dcl : cg.neighbours(b)) {
            if (ctx.free_count(dcl) < K.class2) continue;
            int key = -1;
            for (auto [v, h] : pre) {
                int d0 = ctx.free_degree(h, dcl);
                key = key < 0 ? d0 : std::min(key, d0);
            }
            cands.push_back({-key, dcl});
        }
        std::sort(cands.begin(), cands.end());
        std::vector<std::string> trace;
        bool done = false;
        int tried = 0, ly = -1;
        for (auto [negkey, dcl] : cands) {
            if (tried++ >= kClusterTries) break;
            ly = dcl;
            if (embed_piece(ctx, K, F.anchor_colour, b, dcl, pre, false, alpha, step, trace)) {
                ctx.check_slack(b, eta, step);
                ctx.check_slack(dcl, eta, step);
                done = true;
                break;
            }
        }
        if (!done)
            throw StuckEmbedding(step + ": component " + std::to_string(ki) + " " + join_ids(K.vertices) +
                                     " could not be completed from cluster " + std::to_string(b),
                                 trace, b, ly);
    }
}

void embed_anchored_degrees_cfg2(EmbedContext& ctx, const AnchoredForest& F, int A, const ClusterSet& B_set,
                                 const Rational& eta, const VertexSet& U, const std::string& step) {
    if (F.components.empty()) {
        ctx.ledger.push_back(step + ": empty forest");
        return;
    }
    const ClusterGraph& cg = ctx.cg();
    const RootedTree& T = ctx.tree();
    auto markU = mark_of(ctx, U);
    const Rational etan = eta * ctx.n();
    ClusterSet outside = set_minus(cg.all(), B_set);
    std::vector<Inequality> ineq{{"degbar(A,B) >= |F1| + |B n U| + eta n", cg.degbar(A, B_set),
                                  Rational(F.class1_size() + union_load(ctx, B_set, markU)) + etan}};
    for (int b : B_set)
        ineq.push_back({"degbar(B" + std::to_string(b) + ", V minus B) >= |F2| + |U| + eta n", cg.degbar(b, outside),
                        Rational(F.class2_size() + static_cast<std::int64_t>(U.size())) + etan});
    require(ctx, step, ineq, anchor_problems(ctx, F, A));
    const Rational alpha = 32 * ctx.g().params.eps / (cg.r() * eta);
    for (std::size_t ki = 0; ki < F.components.size(); ++ki) {
        const auto& K = F.components[ki];
        auto us = anchor_images(ctx, K);
        std::vector<std::pair<int, int>> bc;
        for (int b : B_set) {
            bool typ = true;
            for (Vertex u : us) typ &= typical_to(ctx, u, A, b);
            if (!typ || ctx.free_count(b) < K.class1) continue;
            int key = -1;
            for (Vertex u : us) {
                int d0 = ctx.free_degree(u, b);
                key = key < 0 ? d0 : std::min(key, d0);
            }
            bc.push_back({-key, b});
        }
        std::sort(bc.begin(), bc.end());
        std::vector<std::string> trace;
        bool done = false;
        int tb = 0, lx = -1, ly = -1;
        for (auto [nk, b] : bc) {
            if (done || tb++ >= kClusterTries) break;
            lx = b;
            std::vector<std::pair<Rational, int>> dc;
            for (int dcl : cg.neighbours(b)) {
                if (set_contains(B_set, dcl)) continue;
                auto fu = static_cast<std::int64_t>(ctx.free_in(dcl, true).size());
                if (fu < K.class2) continue;
                dc.push_back({-(cg.density(b, dcl) * fu), dcl});
            }
            std::sort(dc.begin(), dc.end());
            int td = 0;
            for (auto [nd, dcl] : dc) {
                if (td++ >= kClusterTries) break;
                ly = dcl;
                VertexSet Dp = ctx.free_in(dcl, true);
                auto imgs = pick_anchor_images(ctx, us, b, &Dp, false);
                if (imgs.empty()) break;
                std::vector<std::pair<Vertex, Vertex>> pre;
                for (std::size_t i = 0; i < K.anchors.size(); ++i)
                    pre.emplace_back(anchor_neighbour(T, K.vertices, K.anchors[i]), imgs[i]);
                if (embed_piece(ctx, K, F.anchor_colour, b, dcl, pre, true, alpha, step, trace)) {
                    ctx.check_slack(b, eta, step);
                    ctx.check_slack(dcl, eta, step);
                    done = true;
                    break;
                }
            }
        }
        if (!done)
            throw StuckEmbedding(step + ": component " + std::to_string(ki) + " " + join_ids(K.vertices) +
                                     " could not be placed through B",
                                 trace, lx, ly);
    }
}

AnchoredForest strip_class1_leaves(const AnchoredForest& F, const RootedTree& tree,
                                   std::vector<std::pair<int, int>>* removed) {
    AnchoredForest out = F;
    out.deferred_leaves.clear();
    out.components.clear();
    for (const auto& K : F.components) {
        AnchoredComponent c;
        c.anchors = K.anchors;
        for (Vertex v : K.vertices) {
            bool leaf = v != tree.root() && tree.children(v).empty();
            if (leaf && tree.colour(v) != F.anchor_colour) {
                if (removed) removed->emplace_back(v, tree.parent(v));
                continue;
            }
            c.vertices.push_back(v);
            (tree.colour(v) == F.anchor_colour ? c.class2 : c.class1)++;
        }
        out.components.push_back(std::move(c));
    }
    return out;
}

SplitFGH split_fgh(const AnchoredForest& DA, const RootedTree& tree, SplitMode mode, const Rational& capF,
                   const Rational& capG, bool skew_order) {
    SplitFGH s;
    const auto& comps = DA.components;
    s.order.resize(comps.size());
    std::iota(s.order.begin(), s.order.end(), 0);
    if (skew_order)
        std::stable_sort(s.order.begin(), s.order.end(), [&](int a, int b) {
            return static_cast<std::int64_t>(comps[a].class1) * comps[b].class2 >
                   static_cast<std::int64_t>(comps[b].class1) * comps[a].class2;
        });
    for (auto* part : {&s.F, &s.G, &s.H}) {
        part->anchor_colour = DA.anchor_colour;
        part->tau = DA.tau;
    }
    std::size_t i = 0;
    auto take = [&](AnchoredForest& part, std::int64_t& c1, std::int64_t& c2, const Rational* cap) {
        while (i < s.order.size()) {
            const auto& K = comps[s.order[i]];
            if (cap && Rational(c2 + K.class2) > *cap) break;
            part.components.push_back(K);
            c1 += K.class1;
            c2 += K.class2;
            ++i;
        }
    };
    take(s.F, s.F1, s.F2, &capF);
    if (mode == SplitMode::byMatching) {
        take(s.G, s.G1, s.G2, nullptr);
    } else {
        take(s.G, s.G1, s.G2, &capG);
        take(s.H, s.H1, s.H2, nullptr);
    }
    for (auto* part : {&s.F, &s.G, &s.H}) {
        VertexSet a;
        for (const auto& K : part->components) a.insert(a.end(), K.anchors.begin(), K.anchors.end());
        part->anchors = make_set(a);
    }
    s.Fp = strip_class1_leaves(s.F, tree, &s.removed_leaves);
    s.Gp = strip_class1_leaves(s.G, tree, &s.removed_leaves);
    for (const auto* part : {&s.Fp, &s.Gp})
        for (const auto& K : part->components)
            if (K.class1 > K.class2)
                s.notes.push_back("component " + join_ids(K.vertices) + " keeps " + std::to_string(K.class1) +
                                  " class-1 vertices against " + std::to_string(K.class2) + " in class 2");
    return s;
}

std::vector<Inequality> case_conditions(const ClusterGraph& cg, const TreeStats& st, const ConfigWitness& w,
                                        const Rational& delta) {
    const Rational& rt = st.r_tilde;
    const std::int64_t k = st.k;
    const Rational a1(st.a1), a2(st.a2), b1(st.b1);
    const ClusterSet L = cg.L_set();
    const int A = w.X, B = w.Y;
    std::vector<Inequality> out;
    switch (w.config) {
    case 'A':
        out.push_back({"A: degbar(A,S1 u SM) >= (1-r~)/r~ a2 + delta k", cg.degbar(A, set_union(w.S_1, w.S_M)),
                       (st.a2 == 0 ? Rational(0) : (1 - rt) / rt * a2) + delta * k});
        out.push_back({"A: degbar(B,L) >= (r~ + delta) k", cg.degbar(B, L), (rt + delta) * k});
        break;
    case 'B':
        out.push_back({"B: r~ a1 >= (1-r~) a2", rt * a1, (1 - rt) * a2});
        out.push_back({"B: degbar(A,S1 u SM u L) >= (1 + delta) k", cg.degbar(A, set_union(set_union(w.S_1, w.S_M), L)),
                       (1 + delta) * k});
        out.push_back({"B: degbar(B,L) >= (r~ + delta) k", cg.degbar(B, L), (rt + delta) * k});
        break;
    case 'C':
        out.push_back({"C: (1-r~) a2 >= r~ a1", (1 - rt) * a2, rt * a1});
        out.push_back({"C: degbar(A,S1 u SM u L) >= (1 + delta) k", cg.degbar(A, set_union(set_union(w.S_1, w.S_M), L)),
                       (1 + delta) * k});
        out.push_back({"C: degbar(B,L) >= b1 + delta k", cg.degbar(B, L), b1 + delta * k});
        break;
    case 'D': {
        out.push_back({"D: degbar(A,SM u L) >= (1 + delta) k", cg.degbar(A, set_union(w.S_M, L)), (1 + delta) * k});
        out.push_back({"D: degbar(B,L) >= b1 + delta k", cg.degbar(B, L), b1 + delta * k});
        out.push_back({"D: r~ a1 >= (1-r~) a2", rt * a1, (1 - rt) * a2});
        if (rt < 1) out.push_back({"D: r~^2 k/(1-r~) >= b1", rt * rt * k / (1 - rt), b1});
        else out.push_back({"D: r~ < 1", rt, Rational(1), true});
        int both = 0;
        for (auto [l, s] : w.M)
            if (cg.density(A, l) > 0 && cg.density(A, s) > 0) ++both;
        out.push_back({"D: matching edges with both ends seen from A", Rational(0), Rational(both)});
        break;
    }
    default:
        throw std::invalid_argument("unknown configuration");
    }
    return out;
}

namespace {

// W_A into ultratypical vertices of A, W_B into those of B, through a tree on
// the seeds that contains every tree edge between them.
void seed_anchors(EmbedContext& ctx, const VertexSet& WA, const VertexSet& WB, int A, int B, const std::string& step) {
    const RootedTree& T = ctx.tree();
    VertexSet all = set_union(WA, WB);
    const int m = static_cast<int>(all.size());
    if (m == 0) return;
    std::map<Vertex, int> local;
    for (int i = 0; i < m; ++i) local[all[i]] = i;
    std::vector<int> comp(m);
    std::iota(comp.begin(), comp.end(), 0);
    std::function<int(int)> find = [&](int x) { return comp[x] == x ? x : comp[x] = find(comp[x]); };
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < m; ++i) {
        Vertex p = T.parent(all[i]);
        if (p >= 0 && local.count(p)) {
            edges.emplace_back(i, local[p]);
            comp[find(i)] = find(local[p]);
        }
    }
    std::vector<int> side(m);
    for (int i = 0; i < m; ++i) side[i] = set_contains(WA, all[i]) ? 0 : 1;
    // join components with auxiliary edges between the two sides while possible
    bool changed = true;
    int aux = 0;
    while (changed) {
        changed = false;
        for (int i = 0; i < m && !changed; ++i)
            for (int j = 0; j < m && !changed; ++j)
                if (side[i] == 0 && side[j] == 1 && find(i) != find(j)) {
                    edges.emplace_back(i, j);
                    comp[find(i)] = find(j);
                    ++aux;
                    changed = true;
                }
    }
    std::map<int, std::vector<int>> groups;
    for (int i = 0; i < m; ++i) groups[find(i)].push_back(i);
    ctx.ledger.push_back(step + ": " + std::to_string(WA.size()) + " seeds into cluster " + std::to_string(A) + ", " +
                         std::to_string(WB.size()) + " into cluster " + std::to_string(B) + ", " + std::to_string(aux) +
                         " auxiliary edges, " + std::to_string(groups.size()) + " pieces");
    const auto& g = ctx.g();
    PairEmbedOptions opt{g.params.eps, 5 * g.params.eps, g.params.d, false};
    for (auto& [root, members] : groups) {
        std::map<int, int> li;
        for (std::size_t t = 0; t < members.size(); ++t) li[members[t]] = static_cast<int>(t);
        Graph pattern(static_cast<int>(members.size()));
        std::vector<int> ps(members.size());
        for (std::size_t t = 0; t < members.size(); ++t) ps[t] = side[members[t]];
        for (auto [a, b] : edges)
            if (li.count(a) && li.count(b)) pattern.add_edge(li[a], li[b]);
        VertexSet Xp = ctx.free_in(A, true), Yp = ctx.free_in(B, true);
        auto r = embed_tree_in_pair(g.host, pattern, ps, g.cluster(A), g.cluster(B), Xp, Yp, {}, opt);
        if (!r.ok) throw StuckEmbedding(step + ": seeds could not be placed: " + r.failure, r.trace, A, B);
        for (std::size_t t = 0; t < members.size(); ++t)
            ctx.place(all[members[t]], r.map[t], ps[t] == 0 ? "seed:A" : "seed:B");
    }
}

void greedy_leaves(EmbedContext& ctx, const std::vector<std::pair<int, int>>& leaves, const std::string& step) {
    std::map<Vertex, std::vector<Vertex>> by_parent;
    for (auto [leaf, parent] : leaves) by_parent[parent].push_back(leaf);
    const auto& g = ctx.g();
    const Rational q = sqrt_upper(g.params.eps);
    for (auto& [p, ls] : by_parent) {
        if (!ctx.mapped(p)) throw std::logic_error(step + ": parent " + std::to_string(p) + " of a leaf is unplaced");
        Vertex h = ctx.image_of(p);
        std::vector<Vertex> freeN;
        for (Vertex x : g.host.neighbours(h))
            if (!ctx.occupied(x)) freeN.push_back(x);
        std::string bound;
        int c = ctx.cluster_of(h);
        if (c >= 0 && ctx.is_ultratypical(h))
            bound = ", ultratypical bound " + to_string(ctx.cg().degbar(c) - 2 * q * ctx.n() / ctx.cg().r());
        ctx.ledger.push_back(step + ": parent " + std::to_string(p) + " free degree " + std::to_string(freeN.size()) +
                             ", leaves " + std::to_string(ls.size()) + bound);
        if (freeN.size() < ls.size())
            throw EmbeddingFailure(step + ": parent " + std::to_string(p) + " has " + std::to_string(freeN.size()) +
                                       " free neighbours for " + std::to_string(ls.size()) + " leaves",
                                   {});
        for (std::size_t i = 0; i < ls.size(); ++i) ctx.place(ls[i], freeN[i], step);
    }
}

VertexSet all_vertices(const AnchoredForest& F) {
    VertexSet out;
    for (const auto& K : F.components) out.insert(out.end(), K.vertices.begin(), K.vertices.end());
    return make_set(out);
}

VertexSet class_vertices(const AnchoredForest& F, const RootedTree& T, bool class2) {
    VertexSet out;
    for (const auto& K : F.components)
        for (Vertex v : K.vertices)
            if ((T.colour(v) == F.anchor_colour) == class2) out.push_back(v);
    return make_set(out);
}

VertexSet anchor_neighbours(const AnchoredForest& F, const RootedTree& T) {
    VertexSet out;
    for (const auto& K : F.components)
        for (Vertex x : K.anchors) out.push_back(anchor_neighbour(T, K.vertices, x));
    return make_set(out);
}

VertexSet unite(std::initializer_list<VertexSet> parts) {
    VertexSet out;
    for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
    return make_set(out);
}

}  // namespace

MasterResult master_embed(const SkewLksGraph& g, const RootedTree& T, const FinePartition& fp, const ConfigWitness& w,
                          const Rational& delta, const MasterOptions& opt) {
    auto bad = verify_fine_partition(T, fp);
    if (!bad.empty()) {
        std::vector<std::string> l;
        for (auto& b : bad) l.push_back("item " + std::to_string(b.item) + ": " + b.witness);
        throw PreconditionError("fine partition fails item " + std::to_string(bad.front().item), l);
    }
    ClusterGraph cg = ClusterGraph::from_lks(g);
    ForestPair fpair = to_anchored_forests(fp, T);
    const TreeStats& st = fpair.stats;
    std::string why;
    if (!verify_witness(cg, st, w, 4 * delta, &why))
        throw PreconditionError("configuration witness rejected: " + why, {why});
    if (!fp.WA.empty() && T.colour(fp.WA.front()) != fpair.small_colour)
        throw PreconditionError("W_A must lie in the smaller colour class", {});
    {
        auto conds = case_conditions(cg, st, w, delta);
        std::vector<std::string> lines;
        bool ok = true;
        for (auto& c : conds) {
            lines.push_back(ledger_line(c));
            ok &= c.holds();
        }
        if (!ok) throw PreconditionError(std::string("case ") + w.config + " side conditions fail", lines);
    }

    EmbedContext ctx(g, T);
    for (auto& c : case_conditions(cg, st, w, delta)) ctx.ledger.push_back("case: " + ledger_line(c));
    const int A = w.X, B = w.Y;
    const std::int64_t k = T.k();
    const Rational q = make_rational(k, ctx.n());
    const Rational rp = cg.r();
    const Rational rho = rho_of(rp);
    const Rational kr = rp / (1 - rp);
    const ClusterSet L = cg.L_set();
    const AnchoredForest& DA = fpair.FA;
    const AnchoredForest& DB = fpair.FB;
    auto eta = [&](int num, int den) { return delta * q * num / den; };
    std::string where;
    auto stage = [&](const std::string& s) {
        where = std::string("case ") + w.config + " " + s;
        return where;
    };
    auto check_ledger = [&]() {
        if (ctx.accounted() > g.host.n()) ctx.invariant_failures.push_back(where + ": accounting exceeds the host order");
    };

    std::vector<std::pair<int, int>> leaves;  // greedy at the end
    leaves.insert(leaves.end(), DA.deferred_leaves.begin(), DA.deferred_leaves.end());
    leaves.insert(leaves.end(), DB.deferred_leaves.begin(), DB.deferred_leaves.end());

    auto capF = [&](const ClusterMatching& M, const VertexSet& U, const Rational& margin) {
        return kr * (cg.degbar(A, w.S_M) - matching_load(ctx, M, mark_of(ctx, U)) - margin);
    };
    auto capG = [&](const VertexSet& U, const Rational& margin) {
        return kr * (cg.degbar(A, w.S_1) - Rational(union_load(ctx, w.S_1, mark_of(ctx, U))) - margin);
    };

    try {
        seed_anchors(ctx, fp.WA, fp.WB, A, B, stage("seed"));
        const VertexSet WAB = set_union(fp.WA, fp.WB);
        const VertexSet U0 = ctx.image(WAB);
        switch (w.config) {
        case 'A': {
            auto s = split_fgh(DA, T, SplitMode::byMatching, capF(w.M, U0, delta * k / 2), 0, false);
            for (auto& nt : s.notes) ctx.reports.push_back("split: " + nt);
            ctx.ledger.push_back("split: |F| components " + std::to_string(s.F.components.size()) + ", |G| " +
                                 std::to_string(s.G.components.size()));
            leaves.insert(leaves.end(), s.removed_leaves.begin(), s.removed_leaves.end());
            embed_anchored_matching(ctx, s.Fp, A, w.M, eta(1, 4), U0, stage("step 1 matching"));
            check_ledger();
            VertexSet Fp2 = class_vertices(s.Fp, T, true);
            embed_anchored_degrees_cfg2(ctx, s.Gp, A, w.S_1, eta(1, 4), ctx.image(unite({Fp2, WAB})),
                                        stage("step 1 S1"));
            check_ledger();
            VertexSet U2 = ctx.image(unite({all_vertices(s.Fp), all_vertices(s.Gp), WAB}));
            auto res = embed_anchored_degrees_reserve(ctx, DB, B, L, eta(1, 2), U2, stage("step 2 reserve"));
            embed_anchored_degrees_complete(ctx, DB, res, L, U2, {}, eta(1, 2), stage("step 2 complete"));
            check_ledger();
            break;
        }
        case 'B': {
            auto s = split_fgh(DA, T, SplitMode::byMatchingThenS1, capF(w.M, U0, delta * k / 3),
                               capG(U0, delta * k / 3), true);
            for (auto& nt : s.notes) ctx.reports.push_back("split: " + nt);
            ctx.ledger.push_back("split: F " + std::to_string(s.F.components.size()) + ", G " +
                                 std::to_string(s.G.components.size()) + ", H " + std::to_string(s.H.components.size()));
            leaves.insert(leaves.end(), s.removed_leaves.begin(), s.removed_leaves.end());
            embed_anchored_matching(ctx, s.Fp, A, w.M, eta(1, 4), U0, stage("step 1 matching"));
            VertexSet Fp2 = class_vertices(s.Fp, T, true), Gp2 = class_vertices(s.Gp, T, true);
            embed_anchored_degrees_cfg2(ctx, s.Gp, A, w.S_1, eta(1, 4), ctx.image(unite({Fp2, WAB})),
                                        stage("step 1 S1"));
            check_ledger();
            VertexSet U2 = ctx.image(unite({WAB, Fp2, Gp2}));
            auto resB = embed_anchored_degrees_reserve(ctx, DB, B, L, eta(1, 20), U2, stage("step 2 reserve"));
            VertexSet Up = set_union(ctx.image(anchor_neighbours(DB, T)), reservation_vertices(ctx, resB));
            VertexSet U3 = set_union(ctx.image(unite({WAB, all_vertices(s.Fp), all_vertices(s.Gp)})), Up);
            auto resH = embed_anchored_degrees_reserve(ctx, s.H, A, L, eta(1, 4), U3, stage("step 3 reserve"));
            embed_anchored_degrees_complete(ctx, s.H, resH, L, U3, {}, eta(1, 4), stage("step 3 complete"));
            check_ledger();
            embed_anchored_degrees_complete(ctx, DB, resB, L, U2, ctx.image(all_vertices(s.H)), eta(1, 20),
                                            stage("step 4 complete"));
            check_ledger();
            break;
        }
        case 'C': {
            auto resB = embed_anchored_degrees_reserve(ctx, DB, B, L, eta(1, 20), U0, stage("step 1 reserve"));
            VertexSet Up = set_union(ctx.image(anchor_neighbours(DB, T)), reservation_vertices(ctx, resB));
            VertexSet U1 = set_union(U0, Up);
            auto s = split_fgh(DA, T, SplitMode::byMatchingThenS1, capF(w.M, U1, delta * k / 3),
                               capG(U1, delta * k / 3), true);
            for (auto& nt : s.notes) ctx.reports.push_back("split: " + nt);
            ctx.ledger.push_back("split: F " + std::to_string(s.F.components.size()) + ", G " +
                                 std::to_string(s.G.components.size()) + ", H " + std::to_string(s.H.components.size()));
            leaves.insert(leaves.end(), s.removed_leaves.begin(), s.removed_leaves.end());
            embed_anchored_matching(ctx, s.Fp, A, w.M, eta(1, 4), U1, stage("step 2 matching"));
            VertexSet Fp2 = class_vertices(s.Fp, T, true);
            embed_anchored_degrees_cfg2(ctx, s.Gp, A, w.S_1, eta(1, 4), set_union(ctx.image(unite({Fp2, WAB})), Up),
                                        stage("step 2 S1"));
            check_ledger();
            VertexSet U3 = set_union(ctx.image(unite({WAB, all_vertices(s.Fp), all_vertices(s.Gp)})), Up);
            auto resH = embed_anchored_degrees_reserve(ctx, s.H, A, L, eta(1, 8), U3, stage("step 3 reserve"));
            embed_anchored_degrees_complete(ctx, s.H, resH, L, U3, {}, eta(1, 8), stage("step 3 complete"));
            check_ledger();
            VertexSet tU = ctx.image(unite({all_vertices(s.Fp), all_vertices(s.Gp), all_vertices(s.H)}));
            embed_anchored_degrees_complete(ctx, DB, resB, L, U0, tU, eta(1, 20), stage("step 3 finish D_B"));
            check_ledger();
            break;
        }
        case 'D': {
            auto resB = embed_anchored_degrees_reserve(ctx, DB, B, L, eta(1, 20), U0, stage("step 1 reserve"));
            VertexSet Up = set_union(ctx.image(anchor_neighbours(DB, T)), reservation_vertices(ctx, resB));
            VertexSet Up1, Up2;
            for (Vertex h : Up) {
                int c = ctx.cluster_of(h);
                (c >= 0 && cg.density(A, c) > 0 ? Up1 : Up2).push_back(h);
            }
            ClusterMatching MA;
            for (auto [l, sc] : w.M)
                if (cg.density(A, sc) > 0) MA.emplace_back(l, sc);
            ctx.ledger.push_back("step 1: U' split " + std::to_string(Up1.size()) + " seen from A, " +
                                 std::to_string(Up2.size()) + " not; matching edges usable " + std::to_string(MA.size()));
            VertexSet UF = set_union(U0, Up2);
            auto s = split_fgh(DA, T, SplitMode::byMatching, capF(MA, UF, delta * k / 2), 0, true);
            for (auto& nt : s.notes) ctx.reports.push_back("split: " + nt);
            ctx.ledger.push_back("split: F " + std::to_string(s.F.components.size()) + ", G " +
                                 std::to_string(s.G.components.size()));
            std::vector<std::pair<int, int>> fl;
            AnchoredForest Fp = strip_class1_leaves(s.F, T, &fl);
            leaves.insert(leaves.end(), fl.begin(), fl.end());
            embed_anchored_matching(ctx, Fp, A, MA, eta(1, 3), UF, stage("step 2 matching"));
            check_ledger();
            ClusterSet LA;
            for (int c : L)
                if (cg.density(A, c) > 0) LA.push_back(c);
            VertexSet U2 = set_union(ctx.image(unite({WAB, all_vertices(Fp)})), Up);
            auto resG = embed_anchored_degrees_reserve(ctx, s.G, A, LA, eta(1, 4), U2, stage("step 3 reserve"));
            embed_anchored_degrees_complete(ctx, s.G, resG, LA, U2, {}, eta(1, 4), stage("step 3 complete"));
            check_ledger();
            VertexSet tU = ctx.image(unite({all_vertices(Fp), all_vertices(s.G)}));
            embed_anchored_degrees_complete(ctx, DB, resB, L, U0, tU, eta(1, 20), stage("step 3 finish D_B"));
            check_ledger();
            break;
        }
        default:
            throw PreconditionError("unknown configuration", {});
        }
        greedy_leaves(ctx, leaves, stage("greedy leaves"));
        check_ledger();
    } catch (const StuckEmbedding& e) {
        std::vector<std::string> t = ctx.ledger;
        t.insert(t.end(), e.trace.begin(), e.trace.end());
        if (e.xc >= 0 && e.yc >= 0 && e.xc != e.yc) {
            auto v = is_regular(g.host, g.cluster(e.xc), g.cluster(e.yc), g.params.eps, opt.report_budget);
            t.push_back("regularity of pair (" + std::to_string(e.xc) + "," + std::to_string(e.yc) + ") at eps " +
                        to_string(g.params.eps) + ": " + (v.regular ? "no witness found" : "irregular, gap " +
                        to_string(v.witness->gap)) + " [" + v.method.describe() + "]");
        }
        throw EmbeddingFailure(where + ": " + e.what(), t);
    } catch (const PreconditionError& e) {
        std::vector<std::string> t = ctx.ledger;
        for (const auto& line : e.ledger)
            if (t.empty() || t.back() != line) t.push_back(line);
        throw PreconditionError(std::string(e.what()), t);
    } catch (const EmbeddingFailure& e) {
        std::vector<std::string> t = ctx.ledger;
        t.insert(t.end(), e.trace.begin(), e.trace.end());
        throw EmbeddingFailure(where + ": " + e.what(), t);
    }

    MasterResult out;
    out.cert = ctx.phi();
    out.config = w.config;
    if (!out.cert.complete() || !validate_embedding(out.cert, T, g.host))
        throw std::logic_error("master embedding produced an invalid certificate");
    out.ledger = ctx.ledger;
    out.invariant_failures = ctx.invariant_failures;
    out.reports = ctx.reports;
    return out;
}

Json certificate_report(const MasterResult& r) {
    return Json{{"config", std::string(1, r.config)},
                {"certificate", certificate_to_json(r.cert)},
                {"ledger", r.ledger},
                {"invariant_failures", r.invariant_failures},
                {"reports", r.reports}};
}

}  // namespace lks
