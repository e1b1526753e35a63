#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "gmatch/bench.hpp"
#include "gmatch/centrality.hpp"
#include "gmatch/contraction.hpp"
#include "gmatch/dataset.hpp"
#include "gmatch/edit_distance.hpp"
#include "gmatch/error.hpp"
#include "gmatch/geometric.hpp"
#include "gmatch/graph.hpp"
#include "gmatch/lsap.hpp"

namespace py = pybind11;
using namespace gmatch;

namespace {

CentralityMeasure measure_of(const std::string &name) {
  auto m = parse_measure(name);
  if (!m) throw InvalidArgument("unknown centrality measure '" + name + "'");
  return *m;
}

GedOptions ged_options(std::optional<std::size_t> beam_width, bool lower_bound) {
  GedOptions o;
  o.beam_width = beam_width;
  o.lower_bound = lower_bound;
  return o;
}

Graph graph_from(std::size_t n, const std::vector<std::pair<VertexId, VertexId>> &edges,
                 const std::optional<std::vector<Label>> &labels) {
  Graph g;
  for (std::size_t v = 0; v < n; ++v) g.add_vertex(labels ? labels->at(v) : Label{});
  for (auto [u, v] : edges) g.add_edge(u, v);
  return g;
}

py::dict contraction_dict(const ContractionResult &r) {
  py::dict d;
  d["graph"] = r.graph;
  d["kept"] = r.report.kept;
  d["removed"] = r.report.removed;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Graph edit distance, node contraction, centrality and geometric graph matching.";

  auto error = py::register_exception<Error>(m, "GmatchError", PyExc_RuntimeError);
  py::register_exception<InvalidArgument>(m, "InvalidArgument", PyExc_ValueError);
  py::register_exception<ParseError>(m, "ParseError", error.ptr());

  py::class_<Graph>(m, "Graph")
      .def(py::init<>())
      .def(py::init(&graph_from), py::arg("n"), py::arg("edges") = std::vector<std::pair<VertexId, VertexId>>{},
           py::arg("labels") = std::nullopt)
      .def("add_vertex", &Graph::add_vertex, py::arg("label") = py::none(), py::arg("name") = "")
      .def("add_edge", &Graph::add_edge, py::arg("u"), py::arg("v"), py::arg("label") = py::none())
      .def("order", &Graph::order)
      .def("size", &Graph::size)
      .def("degree", &Graph::degree)
      .def("has_edge", &Graph::has_edge)
      .def("vertex_label", &Graph::vertex_label)
      .def("edges", [](const Graph &g) {
        std::vector<std::pair<VertexId, VertexId>> out;
        for (const auto &e : g.edges()) out.emplace_back(e.u, e.v);
        return out;
      })
      .def("__eq__", [](const Graph &a, const Graph &b) { return a == b; })
      .def("__repr__", [](const Graph &g) {
        return "<Graph order=" + std::to_string(g.order()) + " size=" + std::to_string(g.size()) + ">";
      });

  py::class_<GeometricGraph>(m, "GeometricGraph")
      .def(py::init([](const std::vector<std::pair<double, double>> &coords,
                       const std::vector<std::pair<VertexId, VertexId>> &edges) {
             Graph g(coords.size());
             for (auto [u, v] : edges) g.add_edge(u, v);
             std::vector<Point> pts;
             for (auto [x, y] : coords) pts.push_back({x, y});
             return GeometricGraph(std::move(g), std::move(pts));
           }),
           py::arg("coords"), py::arg("edges") = std::vector<std::pair<VertexId, VertexId>>{})
      .def("order", &GeometricGraph::order)
      .def("size", &GeometricGraph::size)
      .def_property_readonly("graph", &GeometricGraph::graph)
      .def("coords", [](const GeometricGraph &g) {
        std::vector<std::pair<double, double>> out;
        for (auto p : g.coords()) out.emplace_back(p.x, p.y);
        return out;
      });

  py::class_<EditCostParams>(m, "EditCostParams")
      .def(py::init([](double x_node, double y_node, double x_edge, double y_edge, double z_path) {
             EditCostParams p{x_node, y_node, x_edge, y_edge, z_path};
             p.validate();
             return p;
           }),
           py::arg("x_node") = 1.0, py::arg("y_node") = 1.0, py::arg("x_edge") = 1.0, py::arg("y_edge") = 1.0,
           py::arg("z_path") = 1.0)
      .def_readwrite("x_node", &EditCostParams::x_node)
      .def_readwrite("y_node", &EditCostParams::y_node)
      .def_readwrite("x_edge", &EditCostParams::x_edge)
      .def_readwrite("y_edge", &EditCostParams::y_edge)
      .def_readwrite("z_path", &EditCostParams::z_path);

  py::class_<EditPath>(m, "EditPath")
      .def_readonly("total_cost", &EditPath::total_cost)
      .def_readonly("complete", &EditPath::complete)
      .def_readonly("node_map", &EditPath::node_map)
      .def_readonly("preprocessing_cost", &EditPath::preprocessing_cost)
      .def_property_readonly("operations", [](const EditPath &p) {
        py::list out;
        for (const auto &op : p.ops) out.append(py::make_tuple(to_string(op.kind), op.source, op.target, op.cost));
        return out;
      });

  const auto g1 = py::arg("g1"), g2 = py::arg("g2");
  const auto params = py::arg("params") = EditCostParams{};
  const auto beam = py::arg("beam_width") = std::optional<std::size_t>{};
  const auto lb = py::arg("lower_bound") = false;

  m.def("ged", [](const Graph &a, const Graph &b, const EditCostParams &p, std::optional<std::size_t> w,
                  bool l) { return ged(a, b, p, ged_options(w, l)); },
        g1, g2, params, beam, lb, "Exact A* edit distance, or beam search when beam_width is given.");
  m.def("ged_bipartite", [](const Graph &a, const Graph &b, const EditCostParams &p) { return ged_bipartite(a, b, p); },
        g1, g2, params);
  m.def("hged", [](const Graph &a, const Graph &b, const EditCostParams &p, std::optional<std::size_t> w,
                   bool l) { return hged(a, b, p, ged_options(w, l)); },
        g1, g2, params, beam, lb);
  m.def("k_star_ged", [](const Graph &a, const Graph &b, std::size_t k, const EditCostParams &p,
                         std::optional<std::size_t> w, bool l) { return k_star_ged(a, b, k, p, ged_options(w, l)); },
        g1, g2, py::arg("k"), params, beam, lb);
  m.def("r_centrality_ged",
        [](const Graph &a, const Graph &b, double r, const std::string &measure, const EditCostParams &p,
           std::optional<std::size_t> w) { return r_centrality_ged(a, b, r, measure_of(measure), p, ged_options(w, false)); },
        g1, g2, py::arg("r"), py::arg("measure") = "degree", params, beam);
  m.def("t_centrality_ged",
        [](const Graph &a, const Graph &b, std::size_t t, const std::string &measure, const EditCostParams &p,
           std::optional<std::size_t> w) { return t_centrality_ged(a, b, t, measure_of(measure), p, ged_options(w, false)); },
        g1, g2, py::arg("t"), py::arg("measure") = "degree", params, beam);

  m.def("solve_lsap", [](const std::vector<std::vector<double>> &rows) {
    auto a = solve_lsap(CostMatrix::from_rows(rows));
    return py::make_tuple(a.mapping, a.total_cost);
  }, py::arg("cost"), "Minimum-cost assignment; returns (row -> column mapping, total cost).");

  m.def("cut_vertices", &cut_vertices, py::arg("g"));
  m.def("component_count", &component_count, py::arg("g"));
  m.def("path_contract", [](const Graph &g) { return contraction_dict(path_contract(g)); }, py::arg("g"));
  m.def("k_star_node_contraction", [](const Graph &g, std::size_t k) {
    return contraction_dict(k_star_node_contraction(g, k));
  }, py::arg("g"), py::arg("k"));
  m.def("k_star_node_deletion", [](const Graph &g, std::size_t k) {
    return contraction_dict(k_star_node_deletion(g, k));
  }, py::arg("g"), py::arg("k"));
  m.def("r_centrality_node_contraction", [](const Graph &g, double r, const std::string &measure) {
    return contraction_dict(r_centrality_node_contraction(g, r, measure_of(measure)));
  }, py::arg("g"), py::arg("r"), py::arg("measure") = "degree");
  m.def("t_centrality_node_contraction", [](const Graph &g, std::size_t t, const std::string &measure) {
    return contraction_dict(t_centrality_node_contraction(g, t, measure_of(measure)));
  }, py::arg("g"), py::arg("t"), py::arg("measure") = "degree");

  m.def("centrality", [](const Graph &g, const std::string &measure) {
    return centrality(g, measure_of(measure)).scores;
  }, py::arg("g"), py::arg("measure"), "Scores for 'degree', 'betweenness', 'eigenvector' or 'pagerank'.");

  m.def("vertex_distance", &vertex_distance, g1, g2);
  m.def("edge_distance", &edge_distance, g1, g2);
  m.def("edge_distance_metric", &edge_distance_metric, g1, g2);
  m.def("graph_distance", &graph_distance, g1, g2);
  m.def("graph_distance_metric", &graph_distance_metric, g1, g2);
  m.def("pad_to_equal", &pad_to_equal, g1, g2);
  m.def("graph_alignment", [](const GeometricGraph &a, const GeometricGraph &b) { return graph_alignment(a, b); }, g1, g2,
        "g2 moved by the similarity that best lines its edges up with g1.");
  m.def("geometric_graph_distance",
        [](const GeometricGraph &a, const GeometricGraph &b, std::tuple<double, double, double, double> w, bool align) {
          auto [w1, w2, w3, w4] = w;
          return geometric_graph_distance(a, b, DistanceWeights{w1, w2, w3, w4}, align);
        },
        g1, g2, py::arg("weights") = std::make_tuple(1.0, 1.0, 1.0, 1.0), py::arg("align") = false);
  m.def("geometric_graph_isomorphism", [](const GeometricGraph &a, const GeometricGraph &b, double t) {
    auto r = geometric_graph_isomorphism(a, b, t);
    return py::make_tuple(std::string(to_string(r.verdict)), r.gd);
  }, g1, g2, py::arg("t") = 0.0, "Returns (verdict, graph distance).");

  py::class_<GraphRecord>(m, "GraphRecord")
      .def_readonly("graph", &GraphRecord::graph)
      .def_readonly("id", &GraphRecord::id)
      .def("geometric", &GraphRecord::as_geometric);
  m.def("read_gxl", [](const std::filesystem::path &file, const std::string &profile) {
    GxlOptions o;
    o.profile = parse_profile(profile);
    return read_gxl(file, o);
  }, py::arg("file"), py::arg("profile") = "generic");

  m.def("classify",
        [](const std::filesystem::path &train, const std::filesystem::path &test, const std::string &method,
           std::size_t k, const std::string &profile, std::size_t jobs) {
          GxlOptions o;
          o.profile = parse_profile(profile);
          auto tr = load_dataset(train, train.parent_path(), o, SplitName::kTrain);
          auto te = load_dataset(test, test.parent_path(), o, SplitName::kTest);
          KnnOptions ko;
          ko.k = k;
          ko.jobs = jobs;
          auto r = knn_classify(tr.split, te.split, parse_matcher(method), ko);
          py::dict d;
          d["method"] = r.method;
          d["mean_accuracy"] = r.mean_accuracy;
          d["per_class_accuracy"] = r.per_class_accuracy;
          d["mean_time_ms"] = r.mean_time_ms;
          d["failed_pairs"] = r.failed_pairs;
          d["load_errors"] = tr.errors.size() + te.errors.size();
          return d;
        },
        py::arg("train"), py::arg("test"), py::arg("method") = "geometric", py::arg("k") = 1,
        py::arg("profile") = "letter", py::arg("jobs") = 1,
        "k-NN classification of the test index against the training index.");

  m.def("synthesize", [](const std::filesystem::path &out, const std::string &kind, std::uint64_t seed) {
    SynthSpec spec = kind == "molecule" ? molecule_like(seed) : kind == "letter" ? letter_like(seed)
                                                                                 : throw InvalidArgument("kind must be letter or molecule");
    for (auto s : {SplitName::kTrain, SplitName::kValidation, SplitName::kTest})
      save_dataset(synthesize_corpus(spec, s), out, std::string(to_string(s)) + ".cxl");
  }, py::arg("out"), py::arg("kind") = "letter", py::arg("seed") = 1,
     "Writes train/validation/test indexes and their GXL files under `out`.");
}
