#include "lks/regularity.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <numeric>
#include <sstream>

namespace lks {

namespace {

using i128 = __int128;

// eps as a machine fraction; every epsilon in practice has small terms
struct Frac {
    i128 p, q;
};

Frac small_frac(const Rational& r) {
    const auto& num = numerator(r);
    const auto& den = denominator(r);
    if (abs(num) > BigInt(INT64_MAX) || den > BigInt(INT64_MAX))
        throw std::invalid_argument("rational parameter too large for the fast path: " + to_string(r));
    return {num.convert_to<std::int64_t>(), den.convert_to<std::int64_t>()};
}

std::int64_t ceil_mul(const Rational& eps, std::size_t size) {
    return ceil_int(eps * static_cast<std::int64_t>(size));
}

// |sum/(s*m) - e/(a*b)| > p/q
bool gap_exceeds(i128 sum, i128 s, i128 m, i128 e, i128 a, i128 b, const Frac& eps) {
    i128 diff = sum * a * b - e * s * m;
    if (diff < 0) diff = -diff;
    return eps.q * diff > eps.p * s * m * a * b;
}

Rational gap_of(const Graph& g, const VertexSet& X, const VertexSet& Y, const VertexSet& Xp, const VertexSet& Yp) {
    Rational diff = density(g, Xp, Yp) - density(g, X, Y);
    return diff < 0 ? Rational(-diff) : diff;
}

}  // namespace

VertexSet make_set(std::vector<int> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

VertexSet set_minus(const VertexSet& a, const VertexSet& b) {
    VertexSet out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

VertexSet set_union(const VertexSet& a, const VertexSet& b) {
    VertexSet out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

VertexSet set_intersection(const VertexSet& a, const VertexSet& b) {
    VertexSet out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

bool set_contains(const VertexSet& s, Vertex v) { return std::binary_search(s.begin(), s.end(), v); }

Rational density(const Graph& g, const VertexSet& X, const VertexSet& Y) {
    if (X.empty() || Y.empty()) throw EmptySide("density of a pair with an empty side");
    return Rational(BigInt(g.edges_between(X, Y)), BigInt(static_cast<std::int64_t>(X.size() * Y.size())));
}

std::string RegularityBudget::describe() const {
    if (method == RegMethod::exhaustive) return "exhaustive";
    return "sampled(seed=" + std::to_string(seed) + ",trials=" + std::to_string(trials) + ")";
}

bool witness_valid(const Graph& g, const VertexSet& X, const VertexSet& Y, const Rational& eps,
                   const IrregularityWitness& w) {
    if (w.Xp.empty() || w.Yp.empty()) return false;
    if (!std::includes(X.begin(), X.end(), w.Xp.begin(), w.Xp.end())) return false;
    if (!std::includes(Y.begin(), Y.end(), w.Yp.begin(), w.Yp.end())) return false;
    if (Rational(static_cast<std::int64_t>(w.Xp.size())) < eps * static_cast<std::int64_t>(X.size())) return false;
    if (Rational(static_cast<std::int64_t>(w.Yp.size())) < eps * static_cast<std::int64_t>(Y.size())) return false;
    Rational gap = gap_of(g, X, Y, w.Xp, w.Yp);
    return gap > eps && gap == w.gap;
}

namespace {

struct Best {
    bool found = false;
    IrregularityWitness w;
};

void offer(Best& best, const Graph& g, const VertexSet& X, const VertexSet& Y, VertexSet Xp, VertexSet Yp) {
    std::sort(Xp.begin(), Xp.end());
    std::sort(Yp.begin(), Yp.end());
    Rational gap = gap_of(g, X, Y, Xp, Yp);
    if (!best.found || gap > best.w.gap) {
        best.found = true;
        best.w = {std::move(Xp), std::move(Yp), gap};
    }
}

// Exact search: every subset of the small side A; the best B' of each size is a
// prefix of B sorted by degree into A'.
Best exhaustive_search(const Graph& g, const VertexSet& A, const VertexSet& B, bool a_is_x, const Rational& eps,
                       const VertexSet& X, const VertexSet& Y) {
    const int a = static_cast<int>(A.size());
    const int b = static_cast<int>(B.size());
    const Frac fe = small_frac(eps);
    const i128 e = g.edges_between(A, B);
    std::vector<std::uint32_t> nb(b, 0);
    for (int j = 0; j < b; ++j)
        for (int i = 0; i < a; ++i)
            if (g.has_edge(B[j], A[i])) nb[j] |= 1u << i;
    const int min_a = static_cast<int>(std::max<std::int64_t>(1, ceil_mul(eps, a)));
    const int min_b = static_cast<int>(std::max<std::int64_t>(1, ceil_mul(eps, b)));
    Best best;
    std::uint32_t best_mask = 0;
    int best_m = 0;
    bool best_top = true;
    bool found = false;
    i128 best_num = 0, best_den = 1;
    std::vector<int> bucket(a + 1);
    for (std::uint32_t mask = 1; mask < (1u << a); ++mask) {
        const int s = std::popcount(mask);
        if (s < min_a) continue;
        std::fill(bucket.begin(), bucket.end(), 0);
        for (int j = 0; j < b; ++j) ++bucket[std::popcount(nb[j] & mask)];
        // top-m and bottom-m sums for every m, read off the degree buckets
        for (int dir = 0; dir < 2; ++dir) {
            const bool top = dir == 0;
            i128 sum = 0;
            int dgr = top ? s : 0, left = bucket[dgr];
            for (int m = 1; m <= b; ++m) {
                while (left == 0) left = bucket[top ? --dgr : ++dgr];
                sum += dgr;
                --left;
                if (m < min_b || !gap_exceeds(sum, s, m, e, a, b, fe)) continue;
                i128 num = sum * a * b - e * s * m, den = static_cast<i128>(s) * m * a * b;
                if (num < 0) num = -num;
                if (!found || num * best_den > best_num * den) {
                    found = true;
                    best_num = num;
                    best_den = den;
                    best_mask = mask;
                    best_m = m;
                    best_top = top;
                }
            }
        }
    }
    if (!found) return best;
    VertexSet Ap;
    for (int i = 0; i < a; ++i)
        if (best_mask >> i & 1u) Ap.push_back(A[i]);
    std::vector<int> idx(b);
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](int l, int r) {
        int dl = std::popcount(nb[l] & best_mask), dr = std::popcount(nb[r] & best_mask);
        return best_top ? dl > dr : dl < dr;
    });
    VertexSet Bp;
    for (int i = 0; i < best_m; ++i) Bp.push_back(B[idx[i]]);
    if (a_is_x) offer(best, g, X, Y, Ap, Bp);
    else offer(best, g, X, Y, Bp, Ap);
    return best;
}

VertexSet random_subset(const VertexSet& s, std::size_t size, Rng& rng) {
    VertexSet v = s;
    for (std::size_t i = 0; i < size; ++i) std::swap(v[i], v[i + uniform_below(rng, v.size() - i)]);
    v.resize(size);
    std::sort(v.begin(), v.end());
    return v;
}

Best sampled_search(const Graph& g, const VertexSet& X, const VertexSet& Y, const Rational& eps, std::uint64_t seed,
                    int trials) {
    Rng rng(seed);
    Best best;
    const Frac fe = small_frac(eps);
    const i128 a = X.size(), b = Y.size();
    const i128 e = g.edges_between(X, Y);
    for (int t = 0; t < trials; ++t) {
        const bool x_random = (t % 2 == 0);
        const VertexSet& P = x_random ? X : Y;
        const VertexSet& Q = x_random ? Y : X;
        std::size_t small = static_cast<std::size_t>(std::max<std::int64_t>(1, ceil_mul(eps, P.size())));
        // the full side is deterministic, so it is only drawn on the first two trials
        std::size_t size = (t < 2) ? P.size() : small;
        VertexSet Pp = random_subset(P, size, rng);
        std::vector<std::pair<int, int>> deg;  // (degree into Pp, vertex)
        deg.reserve(Q.size());
        for (Vertex q : Q) deg.emplace_back(g.degree_into(q, Pp), q);
        std::stable_sort(deg.begin(), deg.end(), [](auto& l, auto& r) { return l.first > r.first; });
        std::size_t qsmall = static_cast<std::size_t>(std::max<std::int64_t>(1, ceil_mul(eps, Q.size())));
        std::vector<VertexSet> cands;
        VertexSet top, bottom;
        for (std::size_t i = 0; i < qsmall; ++i) {
            top.push_back(deg[i].second);
            bottom.push_back(deg[deg.size() - 1 - i].second);
        }
        cands.push_back(top);
        cands.push_back(bottom);
        cands.push_back(random_subset(Q, qsmall, rng));
        if (t < 2) cands.push_back(Q);
        for (auto& Qp : cands) {
            std::sort(Qp.begin(), Qp.end());
            i128 sum = g.edges_between(Pp, Qp);
            i128 s = x_random ? static_cast<i128>(Pp.size()) : static_cast<i128>(Qp.size());
            i128 m = x_random ? static_cast<i128>(Qp.size()) : static_cast<i128>(Pp.size());
            if (gap_exceeds(sum, s, m, e, a, b, fe)) {
                if (x_random) offer(best, g, X, Y, Pp, Qp);
                else offer(best, g, X, Y, Qp, Pp);
            }
        }
    }
    return best;
}

}  // namespace

RegularityVerdict is_regular(const Graph& g, const VertexSet& X, const VertexSet& Y, const Rational& eps,
                             const RegularityBudget& budget) {
    if (X.empty() || Y.empty()) throw EmptySide("regularity of a pair with an empty side");
    if (eps <= 0) throw std::invalid_argument("epsilon must be positive");
    RegularityVerdict v;
    v.epsilon = eps;
    v.method = budget;
    if (eps >= 1) return v;  // only X' = X and Y' = Y are large enough
    Best best;
    if (budget.method == RegMethod::exhaustive) {
        const bool x_small = X.size() <= Y.size();
        const VertexSet& A = x_small ? X : Y;
        if (A.size() > static_cast<std::size_t>(kExhaustiveSideLimit))
            throw BudgetExceeded("exhaustive regularity needs a side of at most 16 vertices, smaller side has " +
                                 std::to_string(A.size()));
        best = exhaustive_search(g, A, x_small ? Y : X, x_small, eps, X, Y);
    } else {
        best = sampled_search(g, X, Y, eps, budget.seed, budget.trials);
    }
    if (best.found) {
        v.regular = false;
        v.witness = best.w;
    }
    return v;
}

bool check_slicing(const Graph& g, const VertexSet& X, const VertexSet& Y, const VertexSet& Xp, const VertexSet& Yp,
                   const Rational& alpha, const Rational& eps, const RegularityBudget& budget) {
    if (Rational(static_cast<std::int64_t>(Xp.size())) < alpha * static_cast<std::int64_t>(X.size()) ||
        Rational(static_cast<std::int64_t>(Yp.size())) < alpha * static_cast<std::int64_t>(Y.size()))
        throw std::invalid_argument("slices smaller than alpha times the sides");
    Rational eps2 = std::max(Rational(eps / alpha), Rational(2 * eps));
    if (density(g, Xp, Yp) < density(g, X, Y) - eps) return false;
    if (eps2 >= 1) return true;  // every pair is 1-regular
    return is_regular(g, Xp, Yp, eps2, budget).regular;
}

VertexSet typical_vertices(const Graph& g, const VertexSet& X, const VertexSet& Y, const VertexSet& Yp,
                           const Rational& eps) {
    const Frac fe = small_frac(eps);
    const i128 e = g.edges_between(X, Y);
    const i128 xy = static_cast<i128>(X.size()) * static_cast<i128>(Y.size());
    const i128 yp = Yp.size();
    VertexSet out;
    // deg >= (e/xy - p/q) * yp  <=>  deg * xy * q >= (e q - p xy) * yp
    const i128 rhs = (e * fe.q - fe.p * xy) * yp;
    for (Vertex x : X) {
        i128 dgr = g.degree_into(x, Yp);
        if (dgr * xy * fe.q >= rhs) out.push_back(x);
    }
    return out;
}

VertexSet ultratypical_vertices(const Graph& g, const std::vector<VertexSet>& clusters, int j, const Rational& eps) {
    const Frac fe = small_frac(eps);
    const VertexSet& X = clusters.at(j);
    const i128 N = clusters.size();
    std::vector<int> bad(X.size(), 0);
    for (std::size_t i = 0; i < clusters.size(); ++i) {
        if (static_cast<int>(i) == j || clusters[i].empty() || X.empty()) continue;
        VertexSet typ = typical_vertices(g, X, clusters[i], clusters[i], eps);
        for (std::size_t t = 0; t < X.size(); ++t)
            if (!set_contains(typ, X[t])) ++bad[t];
    }
    VertexSet out;
    // bad <= sqrt(eps) N  <=>  bad^2 q <= p N^2
    for (std::size_t t = 0; t < X.size(); ++t) {
        i128 c = bad[t];
        if (c * c * fe.q <= fe.p * N * N) out.push_back(X[t]);
    }
    return out;
}

namespace {

struct PairEmbedder {
    const Graph& host;
    const Graph& pattern;
    const std::vector<int>& side;
    const VertexSet &Xp, &Yp;
    std::vector<char> in_side[2];
    std::vector<char> typ[2];
    std::vector<int> score;  // degree into the opposite typical set
    std::vector<char> used;
    PairEmbedResult res;

    PairEmbedder(const Graph& h, const Graph& p, const std::vector<int>& s, const VertexSet& xp, const VertexSet& yp)
        : host(h), pattern(p), side(s), Xp(xp), Yp(yp) {}

    bool ok_host(Vertex h, int sd, bool need_typical) const {
        return in_side[sd][h] && !used[h] && (!need_typical || typ[sd][h]);
    }

    bool better(Vertex a, Vertex b) const {  // true if a precedes b
        if (score[a] != score[b]) return score[a] > score[b];
        return a < b;
    }

    // best unused host neighbour of anchor on side sd; anchor < 0 means anywhere on that side
    int pick(Vertex anchor, int sd, bool need_typical, Vertex avoid = -1) const {
        int best = -1;
        auto consider = [&](Vertex h) {
            if (h == avoid || !ok_host(h, sd, need_typical)) return;
            if (best < 0 || better(h, best)) best = h;
        };
        if (anchor < 0) {
            for (Vertex h : (sd == 0 ? Xp : Yp)) consider(h);
        } else {
            for (Vertex h : host.neighbours(anchor)) consider(h);
        }
        return best;
    }

    std::vector<int> ranked(Vertex anchor, int sd, bool need_typical) const {
        std::vector<int> out;
        for (Vertex h : host.neighbours(anchor))
            if (ok_host(h, sd, need_typical)) out.push_back(h);
        std::sort(out.begin(), out.end(), [&](int a, int b) { return better(a, b); });
        return out;
    }

    void place(int v, Vertex h, const char* how) {
        res.map[v] = h;
        used[h] = 1;
        if (how) res.trace.push_back(std::string(how) + ": pattern " + std::to_string(v) + " -> host " + std::to_string(h));
    }

    bool place_near(int v, Vertex anchor) {
        int sd = side[v];
        int h = pick(anchor, sd, true);
        if (h >= 0) {
            place(v, h, nullptr);
            return true;
        }
        h = pick(anchor, sd, false);
        if (h >= 0) {
            place(v, h, "non-typical fallback");
            return true;
        }
        int free_typ = 0, free_all = 0;
        for (Vertex w : host.neighbours(anchor)) {
            if (in_side[sd][w] && !used[w]) {
                ++free_all;
                free_typ += typ[sd][w];
            }
        }
        std::ostringstream os;
        os << "stuck at pattern vertex " << v << " (side " << (sd == 0 ? "X'" : "Y'") << "): host " << anchor
           << " has " << free_all << " unused neighbours in the working set, " << free_typ << " typical; |X'|="
           << Xp.size() << " |Y'|=" << Yp.size();
        res.failure = os.str();
        return false;
    }
};

}  // namespace

PairEmbedResult embed_tree_in_pair(const Graph& host, const Graph& pattern, const std::vector<int>& side,
                                   const VertexSet& X, const VertexSet& Y, const VertexSet& Xp, const VertexSet& Yp,
                                   const std::vector<std::pair<int, int>>& prescribed, const PairEmbedOptions& opt) {
    const int pn = pattern.n();
    if (static_cast<int>(side.size()) != pn) throw std::invalid_argument("side vector length differs from pattern");
    PairEmbedder E(host, pattern, side, Xp, Yp);
    E.res.map.assign(pn, -1);

    // hypotheses
    std::vector<std::string> bad;
    std::int64_t f1 = std::count(side.begin(), side.end(), 0), f2 = pn - f1;
    auto xs = static_cast<std::int64_t>(X.size()), ys = static_cast<std::int64_t>(Y.size());
    const Rational& eps = opt.eps;
    const Rational& alpha = opt.alpha;
    if (prescribed.size() > 2) bad.push_back("|R| <= 2");
    for (auto [v, h] : prescribed) {
        if (side.at(v) != 0) bad.push_back("R subset of F1 (pattern " + std::to_string(v) + ")");
        if (!set_contains(Xp, h)) bad.push_back("prescribed image in X' (host " + std::to_string(h) + ")");
        else if (Rational(host.degree_into(h, Yp)) <= 3 * eps * ys)
            bad.push_back("prescribed image degree > 3 eps |Y| into Y' (host " + std::to_string(h) + ")");
    }
    if (prescribed.size() == 2) {
        int u = prescribed[0].first, v = prescribed[1].first;
        for (int w : pattern.neighbours(u))
            if (pattern.has_edge(w, v)) bad.push_back("prescribed vertices share a neighbour");
    }
    if (!(alpha > 2 * eps)) bad.push_back("alpha > 2 eps");
    Rational dxy = (X.empty() || Y.empty()) ? Rational(0) : density(host, X, Y);
    if (dxy < opt.d) bad.push_back("d(X,Y) >= d");
    if (!(opt.d > 3 * alpha)) bad.push_back("d > 3 alpha");
    if (Rational(f1) > eps * xs) bad.push_back("|F1| <= eps |X|");
    if (Rational(f2) > eps * ys) bad.push_back("|F2| <= eps |Y|");
    if (!(Rational(static_cast<std::int64_t>(Xp.size())) > 2 * (eps / alpha) * xs)) bad.push_back("|X'| > 2 (eps/alpha) |X|");
    if (!(Rational(static_cast<std::int64_t>(Yp.size())) > 2 * (eps / alpha) * ys)) bad.push_back("|Y'| > 2 (eps/alpha) |Y|");
    E.res.violated = bad;
    if (!bad.empty()) {
        if (opt.strict) throw PreconditionError("embedding hypotheses violated: " + bad.front(), bad);
        for (auto& b : bad) E.res.trace.push_back("hypothesis not met: " + b);
    }

    for (int s = 0; s < 2; ++s) {
        E.in_side[s].assign(host.n(), 0);
        E.typ[s].assign(host.n(), 0);
    }
    for (Vertex h : Xp) E.in_side[0][h] = 1;
    for (Vertex h : Yp) E.in_side[1][h] = 1;
    E.used.assign(host.n(), 0);
    E.score.assign(host.n(), 0);
    if (!Xp.empty() && !Yp.empty() && !X.empty() && !Y.empty()) {
        for (Vertex h : typical_vertices(host, X, Y, Yp, eps))
            if (E.in_side[0][h]) E.typ[0][h] = 1;
        for (Vertex h : typical_vertices(host, Y, X, Xp, eps))
            if (E.in_side[1][h]) E.typ[1][h] = 1;
        VertexSet tx, ty;
        for (Vertex h : Xp)
            if (E.typ[0][h]) tx.push_back(h);
        for (Vertex h : Yp)
            if (E.typ[1][h]) ty.push_back(h);
        for (Vertex h : Xp) E.score[h] = host.degree_into(h, ty);
        for (Vertex h : Yp) E.score[h] = host.degree_into(h, tx);
    }

    for (auto [v, h] : prescribed) {
        if (E.used[h]) {
            E.res.failure = "two prescribed vertices share host " + std::to_string(h);
            return E.res;
        }
        E.place(v, h, "prescribed");
    }

    if (pn == 0) {
        E.res.ok = true;
        return E.res;
    }

    if (prescribed.empty()) {
        int root = 0;
        int h = E.pick(-1, side[root], true);
        if (h < 0) h = E.pick(-1, side[root], false);
        if (h < 0) {
            E.res.failure = "no free host vertex for the first pattern vertex";
            return E.res;
        }
        E.place(root, h, nullptr);
    }

    if (prescribed.size() == 2) {
        // connect the two prescribed vertices first
        int u = prescribed[0].first, v = prescribed[1].first;
        std::vector<int> prev(pn, -1);
        std::deque<int> q{u};
        prev[u] = u;
        while (!q.empty()) {
            int a = q.front();
            q.pop_front();
            for (int b : pattern.neighbours(a))
                if (prev[b] < 0) {
                    prev[b] = a;
                    q.push_back(b);
                }
        }
        if (prev[v] < 0) {
            E.res.failure = "prescribed vertices lie in different components";
            return E.res;
        }
        std::vector<int> path{v};
        while (path.back() != u) path.push_back(prev[path.back()]);
        std::reverse(path.begin(), path.end());
        const int m = static_cast<int>(path.size()) - 1;
        const Vertex hv = E.res.map[v];
        if (m % 2 == 1) {
            E.res.failure = "prescribed vertices lie in different colour classes";
            return E.res;
        }
        if (m == 2) {
            int w = path[1];
            int best = -1;
            for (int pass = 0; pass < 2 && best < 0; ++pass)
                for (Vertex c : host.neighbours(E.res.map[u]))
                    if (host.has_edge(c, hv) && E.ok_host(c, side[w], pass == 0) && (best < 0 || E.better(c, best))) best = c;
            if (best < 0) {
                E.res.failure = "no common host neighbour for prescribed vertices at distance 2";
                return E.res;
            }
            E.place(w, best, "common neighbour");
        } else {
            // greedy along the path except the last two internal vertices
            for (int i = 1; i <= m - 4; ++i)
                if (!E.place_near(path[i], E.res.map[path[i - 1]])) return E.res;
            const int last_greedy = path[m - 3];
            const int px = path[m - 2], py = path[m - 1];
            bool closed = false;
            std::vector<int> cand_last = E.ranked(E.res.map[path[m - 4]], side[last_greedy], true);
            auto nontyp = E.ranked(E.res.map[path[m - 4]], side[last_greedy], false);
            for (int h : nontyp)
                if (std::find(cand_last.begin(), cand_last.end(), h) == cand_last.end()) cand_last.push_back(h);
            for (std::size_t ci = 0; ci < cand_last.size() && !closed; ++ci) {
                Vertex hu = cand_last[ci];
                E.used[hu] = 1;
                for (int pass = 0; pass < 2 && !closed; ++pass) {
                    auto xs2 = E.ranked(hu, side[px], pass == 0);
                    auto ys2 = E.ranked(hv, side[py], pass == 0);
                    for (Vertex x : xs2) {
                        for (Vertex y : ys2)
                            if (host.has_edge(x, y)) {
                                E.used[hu] = 0;
                                E.place(last_greedy, hu, ci == 0 ? nullptr : "path retry");
                                E.place(px, x, pass == 0 ? nullptr : "non-typical closure");
                                E.place(py, y, pass == 0 ? nullptr : "non-typical closure");
                                closed = true;
                                break;
                            }
                        if (closed) break;
                    }
                }
                if (!closed) E.used[hu] = 0;
            }
            if (!closed) {
                E.res.failure = "no edge closes the path between prescribed vertices " + std::to_string(u) + " and " +
                                std::to_string(v) + " (length " + std::to_string(m) + ")";
                return E.res;
            }
        }
    }

    // breadth first from everything already placed
    std::deque<int> q;
    for (int v = 0; v < pn; ++v)
        if (E.res.map[v] >= 0) q.push_back(v);
    while (!q.empty()) {
        int a = q.front();
        q.pop_front();
        for (int b : pattern.neighbours(a)) {
            if (E.res.map[b] >= 0) continue;
            if (side[b] == side[a]) {
                E.res.failure = "pattern edge inside one side at " + std::to_string(a) + "-" + std::to_string(b);
                return E.res;
            }
            if (!E.place_near(b, E.res.map[a])) return E.res;
            q.push_back(b);
        }
    }
    for (int v = 0; v < pn; ++v)
        if (E.res.map[v] < 0) {
            E.res.failure = "pattern is disconnected at vertex " + std::to_string(v);
            return E.res;
        }
    E.res.ok = true;
    return E.res;
}

EmbeddingCertificate embed_in_pair(const RootedTree& tree, int f1_colour, const Graph& host, const VertexSet& X,
                                   const VertexSet& Y, const VertexSet& Xp, const VertexSet& Yp,
                                   const std::vector<std::pair<int, int>>& prescribed, const PairEmbedOptions& opt,
                                   std::vector<std::string>* trace) {
    std::vector<int> side(tree.n());
    for (int v = 0; v < tree.n(); ++v) side[v] = tree.colour(v) == f1_colour ? 0 : 1;
    PairEmbedResult r = embed_tree_in_pair(host, tree.as_graph(), side, X, Y, Xp, Yp, prescribed, opt);
    if (trace) trace->insert(trace->end(), r.trace.begin(), r.trace.end());
    if (!r.ok) throw EmbeddingFailure("pair embedding failed: " + r.failure, r.trace);
    EmbeddingCertificate c(tree.n());
    c.map = r.map;
    for (int v = 0; v < tree.n(); ++v) c.provenance[v] = "Lemma4";
    for (auto [v, h] : prescribed) c.provenance[v] = "prescribed";
    return c;
}

}  // namespace lks
