#include "lks/cluster_model.hpp"
#include "lks/config_finder.hpp"
#include "lks/embed_engine.hpp"
#include "lks/fixtures.hpp"
#include "lks/io.hpp"
#include "lks/oracle_lab.hpp"
#include "lks/tree_decomp.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <iostream>
#include <set>

using namespace lks;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Common {
    std::uint64_t seed = 1;
    std::string out;
    bool json = false;
    bool trace = false;
    int verbosity = 0;
    std::string budget = "sampled:1:40";
};

std::uint64_t default_seed() {
    if (const char* s = std::getenv("LKS_SEED")) {
        try {
            return std::stoull(s);
        } catch (const std::exception&) {
            throw UsageError(std::string("LKS_SEED is not a number: ") + s);
        }
    }
    return 1;
}

RegularityBudget parse_budget(const std::string& s) {
    if (s == "exhaustive") return RegularityBudget::exhaustive();
    if (s.rfind("sampled:", 0) == 0) {
        auto rest = s.substr(8);
        auto colon = rest.find(':');
        if (colon != std::string::npos) {
            try {
                return RegularityBudget::sampled(std::stoull(rest.substr(0, colon)), std::stoi(rest.substr(colon + 1)));
            } catch (const std::exception&) {
            }
        }
    }
    throw UsageError("budget must be 'exhaustive' or 'sampled:SEED:TRIALS', got " + s);
}

Rational rational_arg(const std::string& s, const std::string& what) {
    try {
        return parse_rational(s);
    } catch (const std::exception&) {
        throw UsageError(what + " must be a rational p/q, got " + s);
    }
}

Json parse_json_text(const std::string& text, const std::string& what) {
    try {
        return Json::parse(text);
    } catch (const Json::exception& e) {
        throw ParseError(what + ": " + e.what());
    }
}

RootedTree tree_from_text(const std::string& text) {
    auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') {
        Json j = parse_json_text(text, "tree json");
        if (j.contains("tree")) j = j.at("tree");
        try {
            return tree_from_json(j);
        } catch (const ParseError&) {
            throw;
        } catch (const std::exception& e) {
            throw ParseError(std::string("tree json: ") + e.what());
        }
    }
    Graph g = parse_edge_list(text);
    if (g.n() == 0 || static_cast<int>(g.edge_count()) != g.n() - 1) throw ParseError("edge list is not a tree");
    try {
        RootedTree t = RootedTree::from_edges(g.n(), g.edges(), 0);
        if (t.n() != g.n()) throw ParseError("edge list is not a tree");
        return t;
    } catch (const ParseError&) {
        throw;
    } catch (const std::exception& e) {
        throw ParseError(std::string("edge list is not a tree: ") + e.what());
    }
}

RootedTree load_tree(const std::string& path) { return tree_from_text(read_file(path)); }

// P<n> path, S<n> star on n vertices, B<a>.<b> bistar, otherwise a file
RootedTree tree_token(const std::string& tok) {
    try {
        if (tok.size() > 1 && tok[0] == 'P') return path_tree(std::stoi(tok.substr(1)));
        if (tok.size() > 1 && tok[0] == 'S') return RootedTree::from_edges(std::stoi(tok.substr(1)), [&] {
                std::vector<std::pair<int, int>> e;
                for (int i = 1; i < std::stoi(tok.substr(1)); ++i) e.emplace_back(0, i);
                return e;
            }(), 0);
        if (tok.size() > 1 && tok[0] == 'B') {
            auto dot = tok.find('.');
            if (dot != std::string::npos) return bistar(std::stoi(tok.substr(1, dot - 1)), std::stoi(tok.substr(dot + 1)));
        }
    } catch (const std::invalid_argument&) {
        throw UsageError("bad tree token " + tok);
    }
    return load_tree(tok);
}

struct Bundle {
    SkewLksGraph g;
    std::optional<RootedTree> tree;
    Json hint;
};

Bundle load_bundle(const std::string& path) {
    Json j = parse_json_text(read_file(path), "bundle");
    Bundle b;
    b.g = lks_from_json(j.contains("lks") ? j.at("lks") : j);
    if (j.contains("tree")) b.tree = tree_from_json(j.at("tree"));
    if (j.contains("hint")) b.hint = j.at("hint");
    return b;
}

std::string now_utc() {
    std::time_t t = std::time(nullptr);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    return buf;
}

Json run_config(const CLI::App& sub, const Common& c) {
    Json args = Json::object();
    for (const CLI::Option* o : sub.get_options()) {
        if (o->get_lnames().empty() || o->get_lnames().front() == "help") continue;
        const std::string name = o->get_lnames().front();
        if (o->count() > 0) {
            auto r = o->results();
            if (o->get_type_size() == 0) args[name] = true;
            else if (r.size() == 1) args[name] = r.front();
            else args[name] = r;
        } else if (!o->get_default_str().empty()) {
            args[name] = o->get_default_str();
        }
    }
    return Json{{"subcommand", sub.get_name()}, {"args", args},          {"seed", c.seed},
                {"output", c.out},              {"verbosity", c.verbosity}, {"regularity_budget", c.budget}};
}

void emit(const Common& c, const CLI::App& sub, Json body, const std::string& summary) {
    body["run_config"] = run_config(sub, c);
    body["timestamp"] = now_utc();
    const std::string text = body.dump(2) + "\n";
    if (!c.out.empty()) write_file(c.out, text);
    if (c.json) std::cout << text;
    else std::cout << summary << "\n";
}

void trace_lines(const Common& c, const std::vector<std::string>& lines) {
    if (!c.trace) return;
    for (const auto& l : lines) std::cerr << l << "\n";
}

// Adds flags from a JSON object for keys not already on the command line.
std::vector<std::string> merge_config_file(std::vector<std::string> args) {
    std::string path;
    std::vector<std::string> kept;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config-file" && i + 1 < args.size()) {
            path = args[++i];
            continue;
        }
        if (args[i].rfind("--config-file=", 0) == 0) {
            path = args[i].substr(14);
            continue;
        }
        kept.push_back(args[i]);
    }
    if (path.empty()) return kept;
    Json j = parse_json_text(read_file(path), "config file");
    if (!j.is_object()) throw ParseError("config file must hold a JSON object");
    std::set<std::string> given;
    for (const auto& a : kept)
        if (a.rfind("--", 0) == 0) given.insert(a.substr(2, a.find('=') == std::string::npos ? std::string::npos : a.find('=') - 2));
    for (auto& [key, val] : j.items()) {
        if (given.count(key)) continue;
        if (val.is_boolean()) {
            if (val.get<bool>()) kept.push_back("--" + key);
        } else if (val.is_array()) {
            for (const auto& v : val) {
                kept.push_back("--" + key);
                kept.push_back(v.is_string() ? v.get<std::string>() : v.dump());
            }
        } else {
            kept.push_back("--" + key);
            kept.push_back(val.is_string() ? val.get<std::string>() : val.dump());
        }
    }
    return kept;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"skewed tree embedding toolkit"};
    app.require_subcommand(1);
    app.fallthrough();
    Common c;
    c.seed = 1;
    app.add_option("--seed", c.seed, "random seed (default from LKS_SEED, else 1)");
    app.add_option("--out", c.out, "write the JSON report here");
    app.add_flag("--json", c.json, "print the JSON report instead of the summary");
    app.add_flag("--trace", c.trace, "print ledgers to stderr");
    app.add_option("-v,--verbosity", c.verbosity);
    app.add_option("--budget", c.budget, "regularity budget: exhaustive or sampled:SEED:TRIALS");
    app.add_option("--config-file", "JSON object mirroring the flags")->expected(1);

    // fine-partition
    auto* fpc = app.add_subcommand("fine-partition", "fine partition of a tree with its verifier report");
    std::string tree_path;
    int ell = 0;
    fpc->add_option("--tree", tree_path, "tree file (JSON or edge list)")->required();
    fpc->add_option("--ell", ell)->required();

    // find-config
    auto* fcc = app.add_subcommand("find-config", "configuration witness on a cluster graph");
    std::string bundle_path;
    std::string eta_s, rt_s;
    std::int64_t a1 = -1, a2 = -1, b1 = -1, b2 = -1, kk = -1;
    fcc->add_option("--bundle", bundle_path)->required();
    fcc->add_option("--tree", tree_path, "derive the statistics from this tree");
    fcc->add_option("--ell", ell, "fine partition parameter when --tree is given");
    fcc->add_option("--a1", a1);
    fcc->add_option("--a2", a2);
    fcc->add_option("--b1", b1);
    fcc->add_option("--b2", b2);
    fcc->add_option("--k", kk);
    fcc->add_option("--r-tilde", rt_s);
    fcc->add_option("--eta", eta_s, "default 4 delta from the bundle hint, else 2/5");

    // embed
    auto* emc = app.add_subcommand("embed", "embed a tree through one of the four cases");
    std::string delta_s, config_s;
    int X = -1, Y = -1;
    emc->add_option("--bundle", bundle_path)->required();
    emc->add_option("--tree", tree_path);
    emc->add_option("--ell", ell);
    emc->add_option("--delta", delta_s);
    emc->add_option("--case", config_s, "pin the case (A-D); needs --x and --y");
    emc->add_option("--x", X);
    emc->add_option("--y", Y);

    // scan
    auto* scc = app.add_subcommand("scan", "small-scale conjecture scan");
    int sk = 0, sn = 0;
    std::string sr = "1/2";
    bool exhaustive = false;
    std::uint64_t trials = 0;
    int jobs = 1;
    std::string dump_dir;
    scc->add_option("--k", sk)->required();
    scc->add_option("--r", sr, "skew, default 1/2")->capture_default_str();
    scc->add_option("--n", sn)->required();
    scc->add_flag("--exhaustive", exhaustive);
    scc->add_option("--trials", trials);
    scc->add_option("--jobs", jobs);
    scc->add_option("--dump", dump_dir, "directory for counterexample bundles");

    // extremal
    auto* exc = app.add_subcommand("extremal", "extremal construction and its non-containment checks");
    int ek = 0, copies = 1;
    std::string er;
    bool check_path = false, check_tree = false;
    exc->add_option("--k", ek)->required();
    exc->add_option("--r", er)->required();
    exc->add_option("--copies", copies);
    exc->add_flag("--check-path", check_path);
    exc->add_flag("--check-tree", check_tree);

    // bistar
    auto* bsc = app.add_subcommand("bistar", "bistar against K_{(k-1)/2,k}");
    int bk = 0;
    bsc->add_option("--k", bk)->required();

    // ramsey
    auto* rmc = app.add_subcommand("ramsey", "monochromatic tree forcing in colourings of K_n");
    std::vector<std::string> tree_toks;
    int rn = 0;
    std::uint64_t nodes = kDefaultSearchBudget;
    rmc->add_option("--trees", tree_toks, "comma separated: P<n>, S<n>, B<a>.<b> or files")->required()->delimiter(',');
    rmc->add_option("--n", rn)->required();
    rmc->add_option("--nodes", nodes, "search node budget");

    // synthesize
    auto* syc = app.add_subcommand("synthesize", "random skew-LKS graph from a plan or a case fixture");
    std::string fixture, plan_path;
    syc->add_option("--fixture", fixture, "A, B, C or D");
    syc->add_option("--plan", plan_path, "JSON plan: mL, mS, cluster_size, density, params");

    // validate-lks
    auto* vlc = app.add_subcommand("validate-lks", "check the six skew-LKS properties");
    vlc->add_option("--bundle", bundle_path)->required();

    std::vector<std::string> args(argv + 1, argv + argc);
    try {
        c.seed = default_seed();
        args = merge_config_file(args);
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        parse_budget(c.budget);
        if (*fpc) {
            RootedTree t = load_tree(tree_path);
            if (ell < 1 || ell >= t.k()) throw UsageError("--ell must satisfy 1 <= ell < k = " + std::to_string(t.k()));
            std::vector<FineViolation> bad;
            FinePartition fp;
            try {
                fp = fine_partition(t, ell);
            } catch (const InternalContractError& e) {
                bad = e.violations;
            }
            Json viol = Json::array();
            for (auto& v : bad) viol.push_back({{"item", v.item}, {"witness", v.witness}});
            Json body{{"violations", viol}};
            if (bad.empty()) {
                body["partition"] = fine_partition_to_json(fp);
                body["stats"] = stats_to_json(to_anchored_forests(fp, t).stats);
            }
            emit(c, *fpc, body, "violations: " + viol.dump());
            return bad.empty() ? 0 : 1;
        }
        if (*fcc) {
            Bundle b = load_bundle(bundle_path);
            ClusterGraph cg = ClusterGraph::from_lks(b.g);
            TreeStats st;
            if (!tree_path.empty() || (b.tree && a1 < 0)) {
                RootedTree t = tree_path.empty() ? *b.tree : load_tree(tree_path);
                int l = ell > 0 ? ell : b.hint.value("ell", 0);
                if (l < 1 || l >= t.k()) throw UsageError("--ell must satisfy 1 <= ell < k");
                st = to_anchored_forests(fine_partition(t, l), t).stats;
            } else {
                if (a1 < 0 || a2 < 0 || b1 < 0 || b2 < 0 || kk <= 0)
                    throw UsageError("give --tree or all of --a1 --a2 --b1 --b2 --k");
                st.a1 = a1;
                st.a2 = a2;
                st.b1 = b1;
                st.b2 = b2;
                st.k = kk;
                st.r_tilde = rt_s.empty() ? make_rational(a2 + b1, kk) : rational_arg(rt_s, "--r-tilde");
            }
            Rational eta = !eta_s.empty()            ? rational_arg(eta_s, "--eta")
                           : b.hint.contains("delta") ? 4 * parse_rational(b.hint.at("delta").get<std::string>())
                                                      : Rational(2, 5);
            try {
                check_stats(st, cg.r());
            } catch (const InvalidStats& e) {
                throw UsageError(e.what());
            }
            ConfigSearch s = find_configuration(cg, st, eta);
            Json body{{"stats", stats_to_json(st)}, {"eta", to_string(eta)}, {"found", s.found}};
            if (s.found) {
                body["witness"] = witness_to_json(s.witness);
                trace_lines(c, [&] {
                    std::vector<std::string> l;
                    for (auto& i : s.witness.inequalities) l.push_back(ledger_line(i));
                    return l;
                }());
                emit(c, *fcc, body,
                     std::string("config ") + s.witness.config + " at (" + std::to_string(s.witness.X) + "," +
                         std::to_string(s.witness.Y) + ")");
                return 0;
            }
            body["candidate_report"] = s.candidate_report;
            emit(c, *fcc, body, "no configuration found: counterexample candidate");
            return 1;
        }
        if (*emc) {
            Bundle b = load_bundle(bundle_path);
            if (tree_path.empty() && !b.tree) throw UsageError("embed needs --tree or a bundle with a tree");
            RootedTree t = tree_path.empty() ? *b.tree : load_tree(tree_path);
            int l = ell > 0 ? ell : b.hint.value("ell", 10);
            if (l < 1 || l >= t.k()) throw UsageError("--ell must satisfy 1 <= ell < k");
            Rational delta = !delta_s.empty()            ? rational_arg(delta_s, "--delta")
                             : b.hint.contains("delta") ? parse_rational(b.hint.at("delta").get<std::string>())
                                                        : Rational(1, 10);
            std::string cs = config_s;
            int x = X, y = Y;
            if (cs.empty() && b.hint.contains("config")) {
                cs = b.hint.at("config").get<std::string>();
                x = b.hint.at("X").get<int>();
                y = b.hint.at("Y").get<int>();
            }
            FinePartition fp = fine_partition(t, l);
            ClusterGraph cg = ClusterGraph::from_lks(b.g);
            TreeStats st = to_anchored_forests(fp, t).stats;
            ConfigWitness w;
            if (!cs.empty()) {
                if (cs.size() != 1 || cs[0] < 'A' || cs[0] > 'D') throw UsageError("--case must be A, B, C or D");
                if (x < 0 || y < 0 || x >= cg.size() || y >= cg.size()) throw UsageError("--case needs valid --x and --y");
                ClusterMatching M = matching_max_cover(cg, s0_threshold(st, cg.r(), 4 * delta));
                auto got = test_configuration(cg, st, 4 * delta, M, cs[0], x, y);
                if (!got) {
                    Json body{{"status", "precondition failure"},
                              {"error", std::string("case ") + cs + " does not hold on (" + std::to_string(x) + "," +
                                            std::to_string(y) + ")"},
                              {"stats", stats_to_json(st)}};
                    emit(c, *emc, body, body["error"].get<std::string>());
                    return 1;
                }
                w = *got;
            } else {
                ConfigSearch s = find_configuration(cg, st, 4 * delta);
                if (!s.found) {
                    Json body{{"status", "no configuration"}, {"candidate_report", s.candidate_report}};
                    emit(c, *emc, body, "no configuration found: counterexample candidate");
                    return 1;
                }
                w = s.witness;
            }
            MasterOptions opt;
            opt.report_budget = parse_budget(c.budget);
            try {
                MasterResult r = master_embed(b.g, t, fp, w, delta, opt);
                trace_lines(c, r.ledger);
                Json body = certificate_report(r);
                body["witness"] = witness_to_json(w);
                body["valid"] = validate_embedding(r.cert, t, b.g.host);
                emit(c, *emc, body,
                     std::string("case ") + r.config + ": certificate validates, " +
                         std::to_string(r.invariant_failures.size()) + " invariant failures");
                return r.invariant_failures.empty() ? 0 : 1;
            } catch (const PreconditionError& e) {
                for (auto& line : e.ledger) std::cerr << line << "\n";
                Json body{{"status", "precondition failure"}, {"error", e.what()}, {"ledger", e.ledger}};
                emit(c, *emc, body, std::string("precondition failure: ") + e.what());
                return 1;
            } catch (const EmbeddingFailure& e) {
                for (auto& line : e.trace) std::cerr << line << "\n";
                Json body{{"status", "embedding failure"}, {"error", e.what()}, {"ledger", e.trace}};
                emit(c, *emc, body, std::string("embedding failure: ") + e.what());
                return 1;
            }
        }
        if (*scc) {
            ScanMode mode;
            mode.exhaustive = exhaustive;
            mode.seed = c.seed;
            mode.trials = trials;
            mode.jobs = jobs;
            if (!exhaustive && trials == 0) throw UsageError("scan needs --exhaustive or --trials");
            ScanReport rep;
            try {
                rep = conjecture_scan(sk, rational_arg(sr, "--r"), sn, mode);
            } catch (const InfeasibleScan& e) {
                throw UsageError(e.what());
            }
            if (!dump_dir.empty()) {
                std::filesystem::create_directories(dump_dir);
                for (std::size_t i = 0; i < rep.counterexamples.size(); ++i) {
                    auto& [g, t] = rep.counterexamples[i];
                    write_file(dump_dir + "/cex_" + std::to_string(i) + ".json",
                               Json{{"host", graph_to_json(g)}, {"tree", tree_to_json(t)}}.dump(2) + "\n");
                }
            }
            std::string summary = std::to_string(rep.counterexamples.size()) + " counterexamples";
            if (!rep.oracle_disagreements.empty())
                summary += ", " + std::to_string(rep.oracle_disagreements.size()) + " oracle disagreements";
            if (rep.budget_exceeded) summary += ", " + std::to_string(rep.budget_exceeded) + " searches over budget";
            emit(c, *scc, scan_report_json(rep), summary);
            return rep.counterexamples.empty() && rep.oracle_disagreements.empty() && rep.budget_exceeded == 0 ? 0 : 1;
        }
        if (*exc) {
            Rational r = rational_arg(er, "--r");
            Graph g = gen_extremal(ek, r, copies);
            const std::int64_t s = floor_int(r * (ek + 1));
            Json prof = Json::object();
            for (auto [d, cnt] : degree_profile(g)) prof[std::to_string(d)] = cnt;
            Json body{{"order", g.n()}, {"clique", s - 1}, {"degree_profile", prof}};
            std::string summary = "block: clique " + std::to_string(s - 1) + " + independent " +
                                  std::to_string(ek + 1 - (s - 1));
            bool ok = true;
            if (check_path) {
                bool found = brute_force_embed(path_tree(static_cast<int>(2 * s)), g).has_value();
                body["path_found"] = found;
                summary += "\nno P" + std::to_string(2 * s) + ": " + (found ? "REFUTED" : "confirmed");
                ok &= !found;
            }
            if (check_tree) {
                RootedTree t = gen_tight_tree(ek, r);
                bool found = brute_force_embed(t, g).has_value();
                body["tight_tree_found"] = found;
                body["tight_tree"] = tree_to_json(t);
                summary += std::string("\nno tight tree: ") + (found ? "REFUTED" : "confirmed");
                ok &= !found;
            }
            emit(c, *exc, body, summary);
            return ok ? 0 : 1;
        }
        if (*bsc) {
            bool ok;
            try {
                ok = bistar_check(bk);
            } catch (const std::invalid_argument& e) {
                throw UsageError(e.what());
            }
            const int a = (bk - 1) / 2;
            std::string name = "B_{" + std::to_string(a) + "," + std::to_string(a) + "} in K_{" + std::to_string(a) +
                               "," + std::to_string(bk) + "}";
            emit(c, *bsc, Json{{"k", bk}, {"not_contained", ok}}, "no " + name + ": " + (ok ? "confirmed" : "REFUTED"));
            return ok ? 0 : 1;
        }
        if (*rmc) {
            std::vector<RootedTree> ts;
            for (auto& tok : tree_toks) ts.push_back(tree_token(tok));
            RamseyVerdict v = ramsey_check(ts, rn, nodes);
            Json body{{"n", rn}, {"forced", v.forced}, {"inconclusive", v.inconclusive}, {"nodes", v.nodes}};
            std::string summary = v.inconclusive ? "inconclusive: node budget exceeded" : v.forced ? "forced" : "not forced";
            if (!v.forced && !v.inconclusive) {
                body["colouring"] = v.colouring;
                summary += ", witness colouring " + Json(v.colouring).dump();
            }
            emit(c, *rmc, body, summary);
            return v.forced ? 0 : 1;
        }
        if (*syc) {
            if (!fixture.empty()) {
                if (fixture.size() != 1) throw UsageError("--fixture must be A, B, C or D");
                CaseFixture f = make_case_fixture(fixture[0], c.seed);
                Json body{{"lks", lks_to_json(f.g)},
                          {"tree", tree_to_json(f.tree)},
                          {"hint",
                           {{"config", fixture},
                            {"X", f.plan.X},
                            {"Y", f.plan.Y},
                            {"delta", to_string(f.plan.delta)},
                            {"ell", f.plan.ell}}}};
                emit(c, *syc, body, "case " + fixture + " fixture, n = " + std::to_string(f.g.order()));
                return 0;
            }
            if (plan_path.empty()) throw UsageError("synthesize needs --fixture or --plan");
            Json p = parse_json_text(read_file(plan_path), "plan");
            std::vector<std::vector<Rational>> dens;
            try {
                for (const auto& row : p.at("density")) {
                    dens.emplace_back();
                    for (const auto& x : row) dens.back().push_back(parse_rational(x.is_string() ? x.get<std::string>() : x.dump()));
                }
                SkewLksGraph g = synthesize_lks(p.at("mL").get<int>(), p.at("mS").get<int>(), p.at("cluster_size").get<int>(),
                                                dens, params_from_json(p.at("params")), c.seed);
                emit(c, *syc, Json{{"lks", lks_to_json(g)}}, "synthesized n = " + std::to_string(g.order()));
            } catch (const Json::exception& e) {
                throw ParseError(std::string("plan: ") + e.what());
            } catch (const InfeasiblePlan& e) {
                throw UsageError(e.what());
            }
            return 0;
        }
        if (*vlc) {
            Bundle b = load_bundle(bundle_path);
            auto bad = validate_lks(b.g, parse_budget(c.budget));
            Json viol = Json::array();
            for (auto& v : bad) viol.push_back({{"item", v.item}, {"witness", v.witness}});
            emit(c, *vlc, Json{{"violations", viol}},
                 bad.empty() ? "skew-LKS: all properties hold" : std::to_string(bad.size()) + " violations");
            return bad.empty() ? 0 : 1;
        }
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const PreconditionError& e) {
        for (auto& line : e.ledger) std::cerr << line << "\n";
        std::cerr << "precondition failure: " << e.what() << "\n";
        return 1;
    } catch (const FixtureUnavailable& e) {
        std::cerr << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
