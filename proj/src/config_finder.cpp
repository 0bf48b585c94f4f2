#include "lks/config_finder.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <set>

namespace lks {

Rational s0_threshold(const TreeStats& stats, const Rational& r_prime, const Rational& eta) {
    return (stats.r_tilde + r_prime * eta / 2) * stats.k;
}

Rational s1_threshold(const TreeStats& stats, const Rational& r_prime, const Rational& eta) {
    return (stats.r_tilde + r_prime * eta) * stats.k;
}

ClusterSet low_degree_S(const ClusterGraph& cg, const Rational& threshold) {
    ClusterSet out;
    for (int s : cg.S_set())
        if (cg.degbar(s) < threshold) out.push_back(s);
    return out;
}

namespace {

// Kuhn augmenting paths over L-S cluster edges. S-clusters are processed in the
// given priority order; an S-cluster once matched stays matched.
struct Kuhn {
    const ClusterGraph& cg;
    std::vector<char> allowed_l, allowed_s;
    std::vector<int> match;  // cluster -> partner, -1 if free
    std::vector<int> seen;
    int stamp = 0;

    explicit Kuhn(const ClusterGraph& g) : cg(g), allowed_l(g.size(), 1), allowed_s(g.size(), 1), match(g.size(), -1), seen(g.size(), 0) {}

    bool augment(int s) {
        for (int l : cg.neighbours(s)) {
            if (!cg.is_L(l) || !allowed_l[l] || seen[l] == stamp) continue;
            seen[l] = stamp;
            if (match[l] < 0 || augment(match[l])) {
                match[l] = s;
                match[s] = l;
                return true;
            }
        }
        return false;
    }

    // returns (S0 clusters matched, total matched)
    std::pair<int, int> run(const std::vector<int>& order, const std::vector<char>& in_s0) {
        int c0 = 0, all = 0;
        for (int s : order) {
            if (!allowed_s[s]) continue;
            if (match[s] >= 0) {
                ++all;
                c0 += in_s0[s];
                continue;
            }
            ++stamp;
            if (augment(s)) {
                ++all;
                c0 += in_s0[s];
            }
        }
        return {c0, all};
    }
};

}  // namespace

ClusterMatching matching_max_cover(const ClusterGraph& cg, const Rational& threshold) {
    ClusterSet S0 = low_degree_S(cg, threshold);
    std::vector<char> in_s0(cg.size(), 0);
    for (int s : S0) in_s0[s] = 1;
    std::vector<int> order(S0);
    for (int s : cg.S_set())
        if (!in_s0[s]) order.push_back(s);

    auto optimum = [&](const std::vector<std::pair<int, int>>& fixed) {
        Kuhn k(cg);
        int c0 = 0, all = 0;
        for (auto [l, s] : fixed) {
            k.allowed_l[l] = 0;
            k.allowed_s[s] = 0;
            c0 += in_s0[s];
            ++all;
        }
        auto [a, b] = k.run(order, in_s0);
        return std::make_pair(c0 + a, all + b);
    };
    const auto target = optimum({});

    // lexicographically smallest optimal edge list, one edge at a time
    std::vector<std::pair<int, int>> edges;
    for (int l : cg.L_set())
        for (int s : cg.neighbours(l))
            if (!cg.is_L(s)) edges.emplace_back(l, s);
    std::sort(edges.begin(), edges.end());
    ClusterMatching chosen;
    std::vector<char> busy(cg.size(), 0);
    for (auto e : edges) {
        if (static_cast<int>(chosen.size()) == target.second) break;
        if (busy[e.first] || busy[e.second]) continue;
        chosen.push_back(e);
        if (optimum(chosen) == target) {
            busy[e.first] = busy[e.second] = 1;
        } else {
            chosen.pop_back();
        }
    }
    return chosen;
}

int uncovered_count(const ClusterMatching& M, const ClusterSet& S0) {
    int c = 0;
    for (int s : S0) {
        bool hit = false;
        for (auto [l, t] : M) hit |= (t == s);
        c += !hit;
    }
    return c;
}

Reachability alternating_reachability(const ClusterGraph& cg, const ClusterMatching& M, const ClusterSet& S0) {
    std::vector<int> mate(cg.size(), -1);
    for (auto [l, s] : M) {
        mate[l] = s;
        mate[s] = l;
    }
    std::vector<char> inB(cg.size(), 0), visited(cg.size(), 0);
    std::deque<int> q;
    for (int s : S0)
        if (mate[s] < 0) {
            visited[s] = 1;
            q.push_back(s);
        }
    while (!q.empty()) {
        int s = q.front();
        q.pop_front();
        for (int l : cg.neighbours(s)) {
            if (!cg.is_L(l) || mate[l] < 0 || inB[l]) continue;
            inB[l] = 1;
            int t = mate[l];
            inB[t] = 1;
            if (!visited[t]) {
                visited[t] = 1;
                q.push_back(t);
            }
        }
    }
    Reachability r;
    for (int c = 0; c < cg.size(); ++c) {
        bool matched = mate[c] >= 0;
        if (inB[c]) {
            r.B_side.push_back(c);
            (cg.is_L(c) ? r.L_B : r.S_B).push_back(c);
        } else if (matched) {
            r.A_side.push_back(c);
            if (!cg.is_L(c)) r.S_A.push_back(c);
        }
        if (cg.is_L(c) && !inB[c]) r.L_A.push_back(c);
    }
    return r;
}

std::vector<std::string> check_matching_claims(const ClusterGraph& cg, const ClusterMatching& M, const ClusterSet& S0,
                                               const Rational& threshold) {
    std::vector<std::string> out;
    auto reach = alternating_reachability(cg, M, S0);
    for (int x : reach.S_B)
        if (cg.degbar(x) >= threshold) out.push_back("S_B cluster " + std::to_string(x) + " is not below the S0 threshold");
    ClusterSet uncovered;
    for (int s : S0) {
        bool hit = false;
        for (auto [l, t] : M) hit |= (t == s);
        if (!hit) uncovered.push_back(s);
    }
    ClusterSet blocked = set_union(uncovered, reach.S_B);
    for (int l : reach.L_A)
        for (int s : blocked)
            if (cg.adjacent(l, s))
                out.push_back("edge between L_A cluster " + std::to_string(l) + " and cluster " + std::to_string(s));
    return out;
}

void check_stats(const TreeStats& stats, const Rational& r_prime) {
    if (stats.a1 < 0 || stats.a2 < 0 || stats.b1 < 0 || stats.b2 < 0 || stats.k <= 0)
        throw InvalidStats("tree statistics must be nonnegative with k > 0");
    if (Rational(stats.a2 + stats.b1) != stats.r_tilde * stats.k)
        throw InvalidStats("a2 + b1 = " + std::to_string(stats.a2 + stats.b1) + " differs from r~ k = " +
                           to_string(stats.r_tilde * stats.k));
    if (stats.r_tilde > r_prime) throw InvalidStats("r~ = " + to_string(stats.r_tilde) + " exceeds r' = " + to_string(r_prime));
}

namespace {

struct Derived {
    ClusterSet S_M, S_1, S_0, band, L;
};

Derived derive(const ClusterGraph& cg, const TreeStats& stats, const Rational& eta, const ClusterMatching& M) {
    Derived d;
    for (auto [l, s] : M) d.S_M.push_back(s);
    d.S_M = make_set(d.S_M);
    const Rational t0 = s0_threshold(stats, cg.r(), eta), t1 = s1_threshold(stats, cg.r(), eta);
    for (int s : cg.S_set()) {
        Rational deg = cg.degbar(s);
        if (deg < t0) d.S_0.push_back(s);
        if (set_contains(d.S_M, s)) continue;
        if (deg >= t1) d.S_1.push_back(s);
        else if (deg >= t0) d.band.push_back(s);
    }
    d.L = cg.L_set();
    return d;
}

Rational a2_term(const TreeStats& st) {
    if (st.a2 == 0) return 0;
    return Rational(st.a2) * (1 - st.r_tilde) / st.r_tilde;
}

}  // namespace

std::optional<ConfigWitness> test_configuration(const ClusterGraph& cg, const TreeStats& st, const Rational& eta,
                                                const ClusterMatching& M, char config, int X, int Y) {
    if (!cg.adjacent(X, Y)) return std::nullopt;
    Derived d = derive(cg, st, eta, M);
    const Rational& rt = st.r_tilde;
    const Rational& rp = cg.r();
    const std::int64_t k = st.k;
    const Rational a1(st.a1), a2(st.a2), b1(st.b1);
    std::vector<Inequality> ineq;
    const ClusterSet s1sm = set_union(d.S_1, d.S_M);
    const ClusterSet all3 = set_union(s1sm, d.L);
    switch (config) {
    case 'A':
        ineq.push_back({"A.degX", cg.degbar(X, s1sm), a2_term(st) + eta * k / 4});
        ineq.push_back({"A.degY", cg.degbar(Y, d.L), rt * k + eta * k / 4});
        break;
    case 'B':
        ineq.push_back({"B.skew", rt * a1, (1 - rt) * a2, true});
        ineq.push_back({"B.degX", cg.degbar(X, all3), k + eta * k / 4});
        ineq.push_back({"B.degY", cg.degbar(Y, d.L), rt * k + eta * rp * k / 4});
        break;
    case 'C':
        ineq.push_back({"C.skew", (1 - rt) * a2, rt * a1});
        ineq.push_back({"C.degX", cg.degbar(X, all3), k + eta * k / 4});
        ineq.push_back({"C.degY", cg.degbar(Y, d.L), b1 + eta * rp * k / 4});
        break;
    case 'D': {
        ineq.push_back({"D.skew", rt * a1, (1 - rt) * a2});
        if (rt == 1) return std::nullopt;
        ineq.push_back({"D.b1", rt * rt * k / (1 - rt), b1});
        ineq.push_back({"D.degX", cg.degbar(X, set_union(d.S_M, d.L)), k + eta * k / 4});
        ineq.push_back({"D.degY", cg.degbar(Y, d.L), b1 + eta * k / 4});
        int both = 0;
        for (auto [l, s] : M)
            if (cg.density(X, l) > 0 && cg.density(X, s) > 0) ++both;
        ineq.push_back({"D.matching_edges_with_both_ends_in_N(X)", 0, both});
        break;
    }
    default:
        throw std::invalid_argument("configuration must be one of A, B, C, D");
    }
    for (const auto& i : ineq)
        if (!i.holds()) return std::nullopt;
    ConfigWitness w;
    w.config = config;
    w.X = X;
    w.Y = Y;
    w.M = M;
    w.S_M = d.S_M;
    w.S_1 = d.S_1;
    w.S_0 = d.S_0;
    w.band = d.band;
    w.inequalities = ineq;
    w.notes.push_back("matching: maximum cover of S0, then maximum cardinality");
    if (!d.band.empty()) w.notes.push_back("band clusters (between the S0 and S1 thresholds, unmatched): " + std::to_string(d.band.size()));
    return w;
}

ConfigSearch find_configuration(const ClusterGraph& cg, const TreeStats& stats, const Rational& eta) {
    check_stats(stats, cg.r());
    const Rational t0 = s0_threshold(stats, cg.r(), eta);
    ClusterMatching M = matching_max_cover(cg, t0);
    ConfigSearch out;
    for (char config : {'A', 'B', 'C', 'D'})
        for (int X = 0; X < cg.size(); ++X)
            for (int Y : cg.neighbours(X)) {
                auto w = test_configuration(cg, stats, eta, M, config, X, Y);
                if (w) {
                    out.found = true;
                    out.witness = *w;
                    return out;
                }
            }
    Derived d = derive(cg, stats, eta, M);
    Json m = Json::array();
    for (auto [l, s] : M) m.push_back({l, s});
    out.candidate_report = Json{{"status", "no configuration found"},
                                {"clusters", cg.size()},
                                {"mL", cg.mL()},
                                {"mS", cg.mS()},
                                {"stats", stats_to_json(stats)},
                                {"eta", to_string(eta)},
                                {"M", m},
                                {"S_0", d.S_0},
                                {"S_1", d.S_1},
                                {"band", d.band}};
    return out;
}

bool verify_witness(const ClusterGraph& cg, const TreeStats& stats, const ConfigWitness& w, const Rational& eta,
                    std::string* why) {
    auto fail = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    try {
        check_stats(stats, cg.r());
    } catch (const InvalidStats& e) {
        return fail(e.what());
    }
    if (w.X < 0 || w.Y < 0 || w.X >= cg.size() || w.Y >= cg.size()) return fail("cluster id out of range");
    if (!cg.adjacent(w.X, w.Y)) return fail("X and Y are not adjacent");
    std::vector<char> busy(cg.size(), 0);
    for (auto [l, s] : w.M) {
        if (l < 0 || s < 0 || l >= cg.size() || s >= cg.size()) return fail("matching edge out of range");
        if (!cg.is_L(l) || cg.is_L(s)) return fail("matching edge is not an L-S pair");
        if (!cg.adjacent(l, s)) return fail("matching edge is not a cluster edge");
        if (busy[l] || busy[s]) return fail("matching edges share a cluster");
        busy[l] = busy[s] = 1;
    }
    Derived d = derive(cg, stats, eta, w.M);
    if (d.S_M != w.S_M || d.S_1 != w.S_1 || d.S_0 != w.S_0) return fail("derived cluster sets disagree");
    auto again = test_configuration(cg, stats, eta, w.M, w.config, w.X, w.Y);
    if (!again) return fail(std::string("configuration ") + w.config + " does not hold");
    if (again->inequalities.size() != w.inequalities.size()) return fail("inequality ledger length differs");
    for (std::size_t i = 0; i < w.inequalities.size(); ++i) {
        const auto& a = again->inequalities[i];
        const auto& b = w.inequalities[i];
        if (a.name != b.name || a.lhs != b.lhs || a.rhs != b.rhs) return fail("inequality " + b.name + " differs on recomputation");
    }
    return true;
}

Json stats_to_json(const TreeStats& s) {
    return Json{{"a1", s.a1}, {"a2", s.a2}, {"b1", s.b1}, {"b2", s.b2}, {"k", s.k}, {"r_tilde", to_string(s.r_tilde)}};
}

TreeStats stats_from_json(const Json& j) {
    try {
        TreeStats s;
        s.a1 = j.at("a1").get<std::int64_t>();
        s.a2 = j.at("a2").get<std::int64_t>();
        s.b1 = j.at("b1").get<std::int64_t>();
        s.b2 = j.at("b2").get<std::int64_t>();
        s.k = j.at("k").get<std::int64_t>();
        s.r_tilde = j.contains("r_tilde") ? parse_rational(j.at("r_tilde").get<std::string>())
                                          : make_rational(s.a2 + s.b1, s.k);
        return s;
    } catch (const Json::exception& e) {
        throw ParseError(std::string("stats json: ") + e.what());
    }
}

Json witness_to_json(const ConfigWitness& w) {
    Json ineq = Json::array();
    for (const auto& i : w.inequalities)
        ineq.push_back({{"name", i.name}, {"lhs", to_string(i.lhs)}, {"rhs", to_string(i.rhs)}, {"strict", i.strict}});
    Json m = Json::array();
    for (auto [l, s] : w.M) m.push_back({l, s});
    return Json{{"config", std::string(1, w.config)},
                {"X", w.X},
                {"Y", w.Y},
                {"M", m},
                {"S_M", w.S_M},
                {"S_1", w.S_1},
                {"S_0", w.S_0},
                {"band", w.band},
                {"inequalities", ineq},
                {"notes", w.notes}};
}

ConfigWitness witness_from_json(const Json& j) {
    try {
        ConfigWitness w;
        w.config = j.at("config").get<std::string>().at(0);
        w.X = j.at("X").get<int>();
        w.Y = j.at("Y").get<int>();
        for (const auto& e : j.at("M")) w.M.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
        w.S_M = j.at("S_M").get<ClusterSet>();
        w.S_1 = j.at("S_1").get<ClusterSet>();
        w.S_0 = j.at("S_0").get<ClusterSet>();
        if (j.contains("band")) w.band = j.at("band").get<ClusterSet>();
        for (const auto& i : j.at("inequalities"))
            w.inequalities.push_back({i.at("name").get<std::string>(), parse_rational(i.at("lhs").get<std::string>()),
                                      parse_rational(i.at("rhs").get<std::string>()), i.value("strict", false)});
        if (j.contains("notes")) w.notes = j.at("notes").get<std::vector<std::string>>();
        return w;
    } catch (const Json::exception& e) {
        throw ParseError(std::string("witness json: ") + e.what());
    }
}

}  // namespace lks
