#include "lks/cluster_model.hpp"
#include "lks/config_finder.hpp"
#include "lks/embed_engine.hpp"
#include "lks/fixtures.hpp"
#include "lks/io.hpp"
#include "lks/oracle_lab.hpp"
#include "lks/regularity.hpp"
#include "lks/tree_decomp.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace lks;

namespace {

// int, str "p/q" or anything with numerator and denominator (Fraction)
Rational to_rational(const py::handle& x) {
    if (py::isinstance<py::str>(x)) return parse_rational(x.cast<std::string>());
    if (py::isinstance<py::int_>(x)) return parse_rational(py::str(x).cast<std::string>());
    if (py::hasattr(x, "numerator") && py::hasattr(x, "denominator"))
        return parse_rational(py::str(x.attr("numerator")).cast<std::string>() + "/" +
                              py::str(x.attr("denominator")).cast<std::string>());
    throw py::type_error("expected an int, a 'p/q' string or a Fraction");
}

py::object to_fraction(const Rational& r) {
    return py::module_::import("fractions").attr("Fraction")(to_string(r));
}

// JSON crosses the boundary as text and comes back through the json module
py::object to_py(const Json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

Json from_py(const py::handle& obj) {
    return Json::parse(py::module_::import("json").attr("dumps")(obj).cast<std::string>());
}

py::object certificate_or_none(const std::optional<EmbeddingCertificate>& c) {
    if (!c) return py::none();
    return py::cast(c->map);
}

EmbeddingCertificate cert_of(const std::vector<int>& map) {
    EmbeddingCertificate c(static_cast<int>(map.size()));
    c.map = map;
    return c;
}

}  // namespace

PYBIND11_MODULE(_lks, m) {
    m.doc() = "tree embedding toolkit for skewed host graphs";

    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_RuntimeError);
    py::register_exception<EmbeddingFailure>(m, "EmbeddingFailure", PyExc_RuntimeError);
    py::register_exception<BudgetExceeded>(m, "BudgetExceeded", PyExc_RuntimeError);
    py::register_exception<InternalContractError>(m, "InternalContractError", PyExc_AssertionError);

    py::class_<Graph>(m, "Graph")
        .def(py::init<int>(), py::arg("n"))
        .def(py::init([](int n, const std::vector<std::pair<int, int>>& edges) {
                 Graph g(n);
                 for (auto [u, v] : edges) g.add_edge(u, v);
                 return g;
             }),
             py::arg("n"), py::arg("edges"))
        .def_property_readonly("n", &Graph::n)
        .def_property_readonly("edge_count", &Graph::edge_count)
        .def("add_edge", &Graph::add_edge)
        .def("has_edge", &Graph::has_edge)
        .def("degree", &Graph::degree)
        .def("neighbours", &Graph::neighbours)
        .def("edges", &Graph::edges)
        .def("to_json", [](const Graph& g) { return to_py(graph_to_json(g)); })
        .def_static("from_json", [](const py::object& j) { return graph_from_json(from_py(j)); })
        .def("__eq__", &Graph::operator==)
        .def("__repr__", [](const Graph& g) {
            return "<Graph n=" + std::to_string(g.n()) + " m=" + std::to_string(g.edge_count()) + ">";
        });

    m.def("complete_graph", &complete_graph);
    m.def("complete_bipartite", &complete_bipartite);
    m.def("path_graph", &path_graph);
    m.def("cycle_graph", &cycle_graph);

    py::class_<RootedTree>(m, "RootedTree")
        .def_static("from_edges", &RootedTree::from_edges, py::arg("n"), py::arg("edges"), py::arg("root") = 0)
        .def_property_readonly("n", &RootedTree::n)
        .def_property_readonly("k", &RootedTree::k)
        .def_property_readonly("root", &RootedTree::root)
        .def("parent", &RootedTree::parent)
        .def("colour", &RootedTree::colour)
        .def("class_size", &RootedTree::class_size)
        .def_property_readonly("small_class_size", &RootedTree::small_class_size)
        .def("as_graph", &RootedTree::as_graph)
        .def("to_json", [](const RootedTree& t) { return to_py(tree_to_json(t)); })
        .def_static("from_json", [](const py::object& j) { return tree_from_json(from_py(j)); })
        .def("__repr__", [](const RootedTree& t) { return "<RootedTree n=" + std::to_string(t.n()) + ">"; });

    m.def("path_tree", &path_tree);
    m.def("bistar", &bistar);
    m.def("random_tree", [](int n, std::uint64_t seed) {
        Rng rng(seed);
        return random_tree(n, rng);
    });
    m.def("skew_of", [](const RootedTree& t) { return to_fraction(skew_of(t)); });

    m.def("validate_embedding",
          [](const std::vector<int>& map, const RootedTree& t, const Graph& g) {
              return validate_embedding(cert_of(map), t, g);
          },
          py::arg("map"), py::arg("tree"), py::arg("host"));
    m.def("brute_force_embed",
          [](const RootedTree& t, const Graph& g, std::uint64_t budget) {
              return certificate_or_none(brute_force_embed(t, g, budget));
          },
          py::arg("tree"), py::arg("host"), py::arg("budget") = kDefaultSearchBudget);
    m.def("reference_embed",
          [](const RootedTree& t, const Graph& g, std::uint64_t budget) {
              return certificate_or_none(reference_embed(t, g, budget));
          },
          py::arg("tree"), py::arg("host"), py::arg("budget") = kDefaultSearchBudget);

    m.def("fine_partition",
          [](const RootedTree& t, int ell) {
              FinePartition fp = fine_partition(t, ell);
              Json j = fine_partition_to_json(fp);
              j["stats"] = stats_to_json(to_anchored_forests(fp, t).stats);
              return to_py(j);
          },
          py::arg("tree"), py::arg("ell"));
    m.def("verify_fine_partition", [](const RootedTree& t, const py::object& fp) {
        std::vector<std::pair<int, std::string>> out;
        for (auto& v : verify_fine_partition(t, fine_partition_from_json(from_py(fp)))) out.emplace_back(v.item, v.witness);
        return out;
    });

    m.def("is_regular",
          [](const Graph& g, const VertexSet& X, const VertexSet& Y, const py::object& eps, int trials,
             std::uint64_t seed) {
              RegularityBudget b = trials > 0 ? RegularityBudget::sampled(seed, trials) : RegularityBudget::exhaustive();
              auto v = is_regular(g, make_set(X), make_set(Y), to_rational(eps), b);
              py::dict d;
              d["regular"] = v.regular;
              if (v.witness) {
                  d["X"] = v.witness->Xp;
                  d["Y"] = v.witness->Yp;
                  d["gap"] = to_fraction(v.witness->gap);
              }
              return d;
          },
          py::arg("host"), py::arg("X"), py::arg("Y"), py::arg("eps"), py::arg("trials") = 0, py::arg("seed") = 1,
          "trials = 0 runs the exhaustive search");

    m.def("gen_extremal", [](int k, const py::object& r, int copies) { return gen_extremal(k, to_rational(r), copies); },
          py::arg("k"), py::arg("r"), py::arg("copies") = 1);
    m.def("gen_tight_tree", [](int k, const py::object& r) { return gen_tight_tree(k, to_rational(r)); });
    m.def("degree_profile", &degree_profile);
    m.def("bistar_check", &bistar_check);
    m.def("ramsey_check",
          [](const std::vector<RootedTree>& trees, int n) {
              RamseyVerdict v = ramsey_check(trees, n);
              py::dict d;
              d["forced"] = v.forced;
              d["inconclusive"] = v.inconclusive;
              d["colouring"] = v.colouring;
              return d;
          },
          py::arg("trees"), py::arg("n"));
    m.def("conjecture_scan",
          [](int k, const py::object& r, int n, bool exhaustive, std::uint64_t trials, std::uint64_t seed, int jobs) {
              ScanMode mode{exhaustive, seed, trials, jobs};
              return to_py(scan_report_json(conjecture_scan(k, to_rational(r), n, mode)));
          },
          py::arg("k"), py::arg("r"), py::arg("n"), py::arg("exhaustive") = true, py::arg("trials") = 0,
          py::arg("seed") = 0, py::arg("jobs") = 1);

    m.def("case_fixture",
          [](char config, std::uint64_t seed) {
              CaseFixture f = make_case_fixture(config, seed);
              Json j{{"config", std::string(1, f.w.config)},
                     {"lks", lks_to_json(f.g)},
                     {"tree", tree_to_json(f.tree)},
                     {"fine_partition", fine_partition_to_json(f.fp)},
                     {"witness", witness_to_json(f.w)},
                     {"delta", to_string(f.plan.delta)}};
              return to_py(j);
          },
          py::arg("config"), py::arg("seed") = 1);
    m.def("validate_lks",
          [](const py::object& lks, int trials, std::uint64_t seed) {
              std::vector<std::pair<int, std::string>> out;
              for (auto& v : validate_lks(lks_from_json(from_py(lks)), RegularityBudget::sampled(seed, trials)))
                  out.emplace_back(v.item, v.witness);
              return out;
          },
          py::arg("lks"), py::arg("trials") = 60, py::arg("seed") = 1);
    m.def("find_configuration",
          [](const py::object& lks, const py::object& stats, const py::object& eta) {
              ClusterGraph cg = ClusterGraph::from_lks(lks_from_json(from_py(lks)));
              ConfigSearch s = find_configuration(cg, stats_from_json(from_py(stats)), to_rational(eta));
              if (!s.found) return py::object(py::none());
              return to_py(witness_to_json(s.witness));
          },
          py::arg("lks"), py::arg("stats"), py::arg("eta"));
    m.def("embed",
          [](const py::object& lks, const RootedTree& t, const py::object& fine, const py::object& witness,
             const py::object& delta) {
              SkewLksGraph g = lks_from_json(from_py(lks));
              FinePartition fp = fine_partition_from_json(from_py(fine));
              MasterResult r = master_embed(g, t, fp, witness_from_json(from_py(witness)), to_rational(delta));
              Json j = certificate_report(r);
              j["valid"] = validate_embedding(r.cert, t, g.host);
              return to_py(j);
          },
          py::arg("lks"), py::arg("tree"), py::arg("fine_partition"), py::arg("witness"), py::arg("delta"));
}
