#include "lks/tree_decomp.hpp"

#include "lks/regularity.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace lks {

namespace {

// connected pieces of T minus the seeds, listed by their top vertex in BFS order
std::vector<VertexSet> components_without(const RootedTree& t, const std::vector<char>& seed) {
    std::vector<int> comp(t.n(), -1);
    std::vector<VertexSet> out;
    for (Vertex v : t.bfs_order()) {
        if (seed[v]) continue;
        int p = t.parent(v);
        if (p >= 0 && !seed[p]) {
            comp[v] = comp[p];
        } else {
            comp[v] = static_cast<int>(out.size());
            out.emplace_back();
        }
        out[comp[v]].push_back(v);
    }
    for (auto& c : out) std::sort(c.begin(), c.end());
    return out;
}

VertexSet outside_neighbours(const RootedTree& t, const VertexSet& piece) {
    VertexSet out;
    for (Vertex v : piece) {
        if (t.parent(v) >= 0 && !set_contains(piece, t.parent(v))) out.push_back(t.parent(v));
        for (Vertex c : t.children(v))
            if (!set_contains(piece, c)) out.push_back(c);
    }
    return make_set(out);
}

std::string join(const VertexSet& s) {
    std::ostringstream os;
    os << '{';
    for (std::size_t i = 0; i < s.size(); ++i) os << (i ? "," : "") << s[i];
    os << '}';
    return os.str();
}

}  // namespace

FinePartition fine_partition(const RootedTree& tree, int ell) {
    const int k = tree.k();
    if (ell < 1 || ell >= k) throw std::invalid_argument("fine partition needs 1 <= ell < k");
    const int n = tree.n();
    std::vector<char> seed(n, 0);

    // peel: a vertex whose unclaimed subtree exceeds ell becomes a seed
    std::vector<int> residual(n, 0);
    const auto& order = tree.bfs_order();
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        Vertex v = *it;
        int r = 1;
        for (Vertex c : tree.children(v))
            if (!seed[c]) r += residual[c];
        if (r > ell) {
            seed[v] = 1;
            r = 0;
        }
        residual[v] = r;
    }
    seed[tree.root()] = 1;

    // close under pairwise lowest common ancestors so no piece has two seeds below it
    for (bool changed = true; changed;) {
        changed = false;
        std::vector<Vertex> pre;
        std::vector<Vertex> stack{tree.root()};
        while (!stack.empty()) {
            Vertex v = stack.back();
            stack.pop_back();
            if (seed[v]) pre.push_back(v);
            const auto& ch = tree.children(v);
            for (auto c = ch.rbegin(); c != ch.rend(); ++c) stack.push_back(*c);
        }
        for (std::size_t i = 0; i + 1 < pre.size(); ++i) {
            Vertex a = tree.lca(pre[i], pre[i + 1]);
            if (!seed[a]) {
                seed[a] = 1;
                changed = true;
            }
        }
    }

    // repair pieces whose two seeds are too close or of opposite colour
    for (bool changed = true; changed;) {
        changed = false;
        for (const VertexSet& piece : components_without(tree, seed)) {
            VertexSet below;
            Vertex top = -1;
            for (Vertex v : piece) {
                if (tree.parent(v) >= 0 && seed[tree.parent(v)]) top = tree.parent(v);
                for (Vertex c : tree.children(v))
                    if (seed[c]) below.push_back(c);
            }
            if (below.size() > 1)
                throw InternalContractError("lca closure left a piece with two lower seeds", {{8, join(piece)}});
            if (below.empty()) continue;
            Vertex s = below.front();
            int d = tree.distance(top, s);
            if (d < 6) {
                auto path = tree.path(top, s);
                for (std::size_t i = 1; i + 1 < path.size(); ++i) seed[path[i]] = 1;
                changed = true;
            } else if (d % 2 == 1) {
                seed[tree.parent(s)] = 1;
                changed = true;
            }
        }
    }

    FinePartition fp;
    fp.ell = ell;
    const int small = tree.small_class();
    for (Vertex v = 0; v < n; ++v)
        if (seed[v]) (tree.colour(v) == small ? fp.WA : fp.WB).push_back(v);
    for (const VertexSet& piece : components_without(tree, seed)) {
        VertexSet nb = outside_neighbours(tree, piece);
        bool to_a = !nb.empty() && tree.colour(nb.front()) == small;
        (to_a ? fp.DA : fp.DB).push_back(piece);
    }
    auto bad = verify_fine_partition(tree, fp);
    if (!bad.empty())
        throw InternalContractError("fine partition violates item " + std::to_string(bad.front().item) + ": " +
                                        bad.front().witness,
                                    bad);
    return fp;
}

std::vector<FineViolation> verify_fine_partition(const RootedTree& tree, const FinePartition& fp) {
    std::vector<FineViolation> out;
    const int n = tree.n();
    const int k = tree.k();
    std::vector<int> owner(n, -1);  // 0 WA, 1 WB, 2 DA, 3 DB
    bool partition_ok = true;
    auto claim = [&](Vertex v, int who) {
        if (v < 0 || v >= n) {
            out.push_back({1, "vertex " + std::to_string(v) + " out of range"});
            partition_ok = false;
            return;
        }
        if (owner[v] != -1) {
            out.push_back({1, "vertex " + std::to_string(v) + " appears twice"});
            partition_ok = false;
        }
        owner[v] = who;
    };
    for (Vertex v : fp.WA) claim(v, 0);
    for (Vertex v : fp.WB) claim(v, 1);
    for (const auto& p : fp.DA)
        for (Vertex v : p) claim(v, 2);
    for (const auto& p : fp.DB)
        for (Vertex v : p) claim(v, 3);
    for (Vertex v = 0; v < n; ++v)
        if (owner[v] == -1) {
            out.push_back({1, "vertex " + std::to_string(v) + " is not covered"});
            partition_ok = false;
        }
    std::vector<const VertexSet*> pieces;
    for (const auto& p : fp.DA) pieces.push_back(&p);
    for (const auto& p : fp.DB) pieces.push_back(&p);
    for (const VertexSet* p : pieces) {
        if (p->empty()) {
            out.push_back({1, "empty subtree"});
            continue;
        }
        // a subtree: exactly one member whose parent lies outside
        VertexSet s = make_set(*p);
        int tops = 0;
        for (Vertex v : s)
            if (v >= 0 && v < n && (tree.parent(v) < 0 || !set_contains(s, tree.parent(v)))) ++tops;
        if (tops != 1) out.push_back({1, "piece " + join(s) + " is not connected"});
    }
    if (!partition_ok) return out;

    if (owner[tree.root()] > 1) out.push_back({2, "root " + std::to_string(tree.root()) + " is not a seed"});

    std::int64_t wmax = static_cast<std::int64_t>(std::max(fp.WA.size(), fp.WB.size()));
    if (fp.ell <= 0 || wmax * fp.ell > 336LL * k)
        out.push_back({3, "max seed set size " + std::to_string(wmax) + " exceeds 336k/ell with k=" + std::to_string(k) +
                              ", ell=" + std::to_string(fp.ell)});

    // all pairwise distances have the right parity iff each seed set is monochromatic
    // and, when both are nonempty, they use different colours
    auto mono = [&](const VertexSet& w, const char* name) {
        for (Vertex v : w)
            if (tree.colour(v) != tree.colour(w.front())) {
                out.push_back({4, std::string(name) + " seeds " + std::to_string(w.front()) + " and " +
                                      std::to_string(v) + " are at odd distance"});
                return false;
            }
        return true;
    };
    if (!fp.WA.empty() && !fp.WB.empty() && mono(fp.WA, "WA") && mono(fp.WB, "WB")) {
        if (tree.colour(fp.WA.front()) == tree.colour(fp.WB.front()))
            out.push_back({4, "seeds " + std::to_string(fp.WA.front()) + " in WA and " + std::to_string(fp.WB.front()) +
                                  " in WB are at even distance"});
    } else if (fp.WA.empty() != fp.WB.empty()) {
        mono(fp.WA.empty() ? fp.WB : fp.WA, fp.WA.empty() ? "WB" : "WA");
    }

    for (const VertexSet* p : pieces)
        if (static_cast<int>(p->size()) > fp.ell)
            out.push_back({5, "piece " + join(make_set(*p)) + " has " + std::to_string(p->size()) + " > ell vertices"});

    auto touches = [&](const VertexSet& piece, int who) {
        for (Vertex v : piece) {
            if (tree.parent(v) >= 0 && owner[tree.parent(v)] == who) return tree.parent(v);
            for (Vertex c : tree.children(v))
                if (owner[c] == who) return c;
        }
        return -1;
    };
    for (const auto& p : fp.DA) {
        int w = touches(make_set(p), 1);
        if (w >= 0) out.push_back({6, "DA piece " + join(make_set(p)) + " meets N(" + std::to_string(w) + "), a WB seed"});
    }
    for (const auto& p : fp.DB) {
        int w = touches(make_set(p), 0);
        if (w >= 0) out.push_back({6, "DB piece " + join(make_set(p)) + " meets N(" + std::to_string(w) + "), a WA seed"});
    }

    for (const VertexSet* p : pieces) {
        VertexSet s = make_set(*p);
        VertexSet nb = outside_neighbours(tree, s);
        VertexSet seeds;
        for (Vertex w : nb) {
            if (owner[w] > 1) out.push_back({7, "piece " + join(s) + " has non-seed neighbour " + std::to_string(w)});
            else seeds.push_back(w);
        }
        if (seeds.size() > 2) out.push_back({8, "piece " + join(s) + " touches seeds " + join(seeds)});
        for (std::size_t i = 0; i < seeds.size(); ++i)
            for (std::size_t j = i + 1; j < seeds.size(); ++j)
                if (tree.distance(seeds[i], seeds[j]) < 6)
                    out.push_back({9, "piece " + join(s) + " touches seeds " + std::to_string(seeds[i]) + " and " +
                                          std::to_string(seeds[j]) + " at distance " +
                                          std::to_string(tree.distance(seeds[i], seeds[j]))});
    }
    return out;
}

Json fine_partition_to_json(const FinePartition& fp) {
    return Json{{"WA", fp.WA}, {"WB", fp.WB}, {"DA", fp.DA}, {"DB", fp.DB}, {"ell", fp.ell}};
}

FinePartition fine_partition_from_json(const Json& j) {
    try {
        FinePartition fp;
        fp.WA = vertex_set_from_json(j.at("WA"));
        fp.WB = vertex_set_from_json(j.at("WB"));
        for (const auto& p : j.at("DA")) fp.DA.push_back(p.get<VertexSet>());
        for (const auto& p : j.at("DB")) fp.DB.push_back(p.get<VertexSet>());
        fp.ell = j.at("ell").get<int>();
        return fp;
    } catch (const Json::exception& e) {
        throw ParseError(std::string("fine partition json: ") + e.what());
    }
}

int AnchoredForest::class1_size() const {
    int s = 0;
    for (const auto& c : components) s += c.class1;
    return s;
}

int AnchoredForest::class2_size() const {
    int s = 0;
    for (const auto& c : components) s += c.class2;
    return s;
}

namespace {

AnchoredForest build_forest(const std::vector<VertexSet>& pieces, const VertexSet& seeds, int anchor_colour,
                            const RootedTree& tree, int tau) {
    AnchoredForest f;
    f.anchor_colour = anchor_colour;
    f.tau = tau;
    VertexSet used_anchors;
    for (const auto& raw : pieces) {
        VertexSet p = make_set(raw);
        VertexSet nb = outside_neighbours(tree, p);
        for (Vertex w : nb)
            if (!set_contains(seeds, w))
                throw AnchoredForestError("piece " + join(p) + " touches a vertex outside its anchor set");
        if (p.size() == 1) {
            if (nb.size() != 1) throw AnchoredForestError("single-vertex piece " + join(p) + " is not a leaf of one seed");
            f.deferred_leaves.emplace_back(p.front(), nb.front());
            used_anchors.push_back(nb.front());
            continue;
        }
        AnchoredComponent c;
        c.vertices = p;
        c.anchors = nb;
        for (Vertex v : p) (tree.colour(v) == anchor_colour ? c.class2 : c.class1)++;
        used_anchors.insert(used_anchors.end(), nb.begin(), nb.end());
        f.components.push_back(std::move(c));
    }
    f.anchors = make_set(used_anchors);
    return f;
}

}  // namespace

ForestPair to_anchored_forests(const FinePartition& fp, const RootedTree& tree) {
    auto bad = verify_fine_partition(tree, fp);
    if (!bad.empty()) throw std::invalid_argument("fine partition fails item " + std::to_string(bad.front().item));
    ForestPair out;
    out.small_colour = tree.small_class();
    const int t1 = out.small_colour, t2 = 3 - t1;
    int colour_a = fp.WA.empty() ? t1 : tree.colour(fp.WA.front());
    int colour_b = fp.WB.empty() ? 3 - colour_a : tree.colour(fp.WB.front());
    out.FA = build_forest(fp.DA, fp.WA, colour_a, tree, fp.ell);
    out.FB = build_forest(fp.DB, fp.WB, colour_b, tree, fp.ell);
    auto count = [&](const std::vector<VertexSet>& pieces, int colour) {
        std::int64_t c = 0;
        for (const auto& p : pieces)
            for (Vertex v : p) c += tree.colour(v) == colour;
        return c;
    };
    out.stats.a1 = count(fp.DA, t2);
    out.stats.a2 = count(fp.DA, t1);
    out.stats.b1 = count(fp.DB, t1);
    out.stats.b2 = count(fp.DB, t2);
    out.stats.k = tree.k();
    out.stats.r_tilde = make_rational(out.stats.a2 + out.stats.b1, tree.k());
    for (const auto* f : {&out.FA, &out.FB}) {
        auto problems = check_anchored_forest(*f, tree);
        if (!problems.empty()) throw AnchoredForestError(problems.front());
    }
    return out;
}

std::vector<std::string> check_anchored_forest(const AnchoredForest& f, const RootedTree& tree) {
    std::vector<std::string> out;
    for (Vertex a : f.anchors)
        if (tree.colour(a) != f.anchor_colour) out.push_back("anchor " + std::to_string(a) + " has the wrong colour");
    for (const auto& c : f.components) {
        if (c.vertices.size() < 2 || static_cast<int>(c.vertices.size()) > f.tau)
            out.push_back("component " + join(c.vertices) + " has size outside [2, tau]");
        if (c.anchors.empty() || c.anchors.size() > 2)
            out.push_back("component " + join(c.vertices) + " has " + std::to_string(c.anchors.size()) + " anchors");
        if (c.anchors.size() == 2 && tree.distance(c.anchors[0], c.anchors[1]) < 4)
            out.push_back("anchors " + join(c.anchors) + " closer than 4");
    }
    return out;
}

}  // namespace lks
