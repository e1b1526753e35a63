// Command-line front end: classify, bench, contract, isocheck, tune, synth.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>

#include "gmatch/bench.hpp"
#include "gmatch/centrality.hpp"
#include "gmatch/contraction.hpp"
#include "gmatch/dataset.hpp"
#include "gmatch/error.hpp"
#include "gmatch/geometric.hpp"

namespace fs = std::filesystem;
using namespace gmatch;

namespace {

constexpr int kErrorExit = 3;

struct CostFlags {
  EditCostParams p;
  void add(CLI::App *app) {
    app->add_option("--x-node", p.x_node, "Node insertion/deletion cost")->capture_default_str();
    app->add_option("--y-node", p.y_node, "Node substitution cost per unit label distance")->capture_default_str();
    app->add_option("--x-edge", p.x_edge, "Edge insertion/deletion cost")->capture_default_str();
    app->add_option("--y-edge", p.y_edge, "Edge substitution cost per unit label distance")->capture_default_str();
    app->add_option("--z-path", p.z_path, "Path contraction cost per unit label distance")->capture_default_str();
  }
};

GxlOptions gxl(const std::string &profile) {
  GxlOptions o;
  o.profile = parse_profile(profile);
  return o;
}

DatasetSplit load_or_die(const std::string &index, const std::string &data, const std::string &profile) {
  auto r = load_dataset(index, data.empty() ? fs::path(index).parent_path() : fs::path(data), gxl(profile));
  for (const auto &e : r.errors) std::cerr << "warning: " << e.file << ": " << e.message << "\n";
  std::cerr << "loaded " << r.split.size() << " graphs from " << index;
  if (!r.errors.empty()) std::cerr << " (" << r.errors.size() << " skipped)";
  std::cerr << "\n";
  return r.split;
}

std::ofstream open_out(const std::string &path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out.precision(10);
  return out;
}

// Quotes a CSV field when it holds a comma or quote.
std::string csv(const std::string &s) {
  if (s.find_first_of(",\"") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
  return q + "\"";
}

std::vector<std::string> comma_list(const std::string &s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s + ",") {
    if (c == ',') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  return out;
}

// Comma-separated matcher specs; a piece starting with a digit continues the
// previous spec's weight list ("geometric:0.35,0.23,0.11,0.31").
std::vector<std::string> method_list(const std::string &s) {
  std::vector<std::string> out;
  for (auto &piece : comma_list(s)) {
    bool continues = !out.empty() && (std::isdigit(static_cast<unsigned char>(piece[0])) || piece[0] == '.');
    if (continues) out.back() += "," + piece;
    else out.push_back(piece);
  }
  return out;
}

// "synth:letter:N[:SEED]" or "synth:molecule:N[:SEED]": N pairs of random
// distinct instances of a synthetic corpus.
std::vector<GraphPair> synth_pairs(const std::string &spec) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  for (std::size_t pos; (pos = spec.find(':', start)) != std::string::npos; start = pos + 1) {
    parts.push_back(spec.substr(start, pos - start));
  }
  parts.push_back(spec.substr(start));
  if (parts.size() < 3 || parts.size() > 4) throw InvalidArgument("pair spec must be synth:KIND:N[:SEED]");
  std::uint64_t seed = parts.size() == 4 ? std::stoull(parts[3]) : 1;
  SynthSpec s;
  if (parts[1] == "letter") s = letter_like(seed);
  else if (parts[1] == "molecule") s = molecule_like(seed);
  else throw InvalidArgument("unknown synthetic corpus '" + parts[1] + "'");
  auto corpus = synthesize_corpus(s);
  std::size_t n = std::stoul(parts[2]);
  std::mt19937_64 rng(seed);
  std::vector<GraphPair> pairs;
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t a = rng() % corpus.size(), b = rng() % (corpus.size() - 1);
    if (b >= a) ++b;
    pairs.emplace_back(corpus.instances[a].record, corpus.instances[b].record);
  }
  return pairs;
}

int run_classify(const std::string &train_idx, const std::string &test_idx, const std::string &data,
                 const std::string &profile, const std::string &method, std::size_t knn,
                 std::size_t jobs, bool audit, const EditCostParams &cost, const std::string &out_path) {
  auto train = load_or_die(train_idx, data, profile);
  auto test = load_or_die(test_idx, data, profile);
  MatcherSpec m = parse_matcher(method);
  m.cost_params = cost;
  KnnOptions o;
  o.k = knn;
  o.jobs = jobs;
  o.keep_distances = audit;
  auto r = knn_classify(train, test, m, o);
  std::cout << r.method << ": mean accuracy " << r.mean_accuracy << "%, " << r.mean_time_ms
            << " ms per pair, " << r.failed_pairs << " failed pairs\n";
  if (!out_path.empty()) {
    auto out = open_out(out_path);
    out << "method,class,accuracy,mean_accuracy,mean_time_ms,pair_count,failed_pairs\n";
    for (const auto &[cls, acc] : r.per_class_accuracy) {
      out << csv(r.method) << "," << csv(cls) << "," << acc << "," << r.mean_accuracy << "," << r.mean_time_ms
          << "," << r.pair_count << "," << r.failed_pairs << "\n";
    }
  }
  if (audit) {
    double check = audit_accuracy(r.distances, train, test, knn);
    bool ok = check == r.mean_accuracy;
    std::cout << "audit: recomputed accuracy " << check << "% " << (ok ? "matches" : "DIFFERS") << "\n";
    if (!ok) return 4;
  }
  return 0;
}

int run_bench(const std::string &pairs_spec, const std::string &data, const std::string &profile,
              std::size_t limit, const std::string &methods, std::size_t reps,
              const EditCostParams &cost, const std::string &out_path) {
  std::vector<GraphPair> pairs;
  if (pairs_spec.starts_with("synth:")) {
    pairs = synth_pairs(pairs_spec);
  } else {
    auto split = load_or_die(pairs_spec, data, profile);
    std::size_t n = std::min(limit, split.size());
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        pairs.emplace_back(split.instances[i].record, split.instances[j].record);
  }
  std::ofstream file;
  std::ostream *out = &std::cout;
  if (!out_path.empty()) {
    file = open_out(out_path);
    out = &file;
  }
  *out << "method,pair_count,mean_ms,median_ms,min_ms\n";
  for (const auto &name : method_list(methods)) {
    MatcherSpec m = parse_matcher(name);
    m.cost_params = cost;
    auto s = benchmark(pairs, m, reps);
    *out << csv(s.method) << "," << s.pair_count << "," << s.mean_ms << "," << s.median_ms << "," << s.min_ms << "\n";
    if (s.failed_pairs) std::cerr << "warning: " << s.method << ": " << s.failed_pairs << " pairs failed\n";
  }
  return 0;
}

int run_contract(const std::string &in, const std::string &profile, const std::string &mode, std::size_t k,
                 double r, std::size_t t, const std::string &measure, const std::string &out_path) {
  GraphRecord rec = read_gxl(in, gxl(profile));
  auto m = parse_measure(measure);
  if (!m) throw InvalidArgument("unknown centrality measure '" + measure + "'");
  ContractionResult res;
  if (mode == "kstar") res = k_star_node_contraction(rec.graph, k);
  else if (mode == "rcentrality") res = r_centrality_node_contraction(rec.graph, r, *m);
  else if (mode == "tcentrality") res = t_centrality_node_contraction(rec.graph, t, *m);
  else if (mode == "path") res = path_contract(rec.graph);
  else throw InvalidArgument("unknown mode '" + mode + "'");
  GraphRecord outrec;
  outrec.id = rec.id;
  outrec.graph = res.graph;
  if (rec.coords) outrec.coords = restrict_coordinates(rec.as_geometric(), res).coords();
  std::cout << mode << ": " << res.report.before_n << " -> " << res.report.after_n << " vertices, "
            << res.report.components_before << " -> " << res.report.components_after << " components\n";
  auto out = open_out(out_path);
  out << write_gxl(outrec);
  return 0;
}

int run_isocheck(const std::string &g1, const std::string &g2, const std::string &profile, double tol) {
  auto a = read_gxl(g1, gxl(profile)).as_geometric();
  auto b = read_gxl(g2, gxl(profile)).as_geometric();
  auto r = geometric_graph_isomorphism(a, b, tol);
  std::cout << to_string(r.verdict) << " gd=" << r.gd << "\n";
  switch (r.verdict) {
    case IsoVerdict::kIsomorphic: return 0;
    case IsoVerdict::kTolerant: return 1;
    case IsoVerdict::kDistance: return 2;
  }
  return 2;
}

int run_tune(const std::string &train_idx, const std::string &val_idx, const std::string &data,
             const std::string &profile, double delta, const std::string &start, bool align,
             std::size_t jobs, const std::string &out_path) {
  auto train = load_or_die(train_idx, data, profile);
  auto val = load_or_die(val_idx, data, profile);
  auto ws = comma_list(start);
  if (ws.size() != 4) throw InvalidArgument("--start needs four comma-separated weights");
  DistanceWeights w{std::stod(ws[0]), std::stod(ws[1]), std::stod(ws[2]), std::stod(ws[3])};
  TuneOptions o;
  o.delta = delta;
  o.align = align;
  o.jobs = jobs;
  auto r = tune_weights(train, val, w, o);
  nlohmann::json j{{"w1", r.weights.w1},         {"w2", r.weights.w2},
                   {"w3", r.weights.w3},         {"w4", r.weights.w4},
                   {"accuracy", r.accuracy},     {"start_accuracy", r.start_accuracy},
                   {"steps", r.steps},           {"delta", delta},
                   {"align", align}};
  std::cout << j.dump(2) << "\n";
  if (!out_path.empty()) open_out(out_path) << j.dump(2) << "\n";
  return 0;
}

int run_synth(const SynthSpec &spec, const std::string &splits, const std::string &out_dir) {
  for (const auto &name : comma_list(splits)) {
    SplitName s;
    if (name == "train") s = SplitName::kTrain;
    else if (name == "validation") s = SplitName::kValidation;
    else if (name == "test") s = SplitName::kTest;
    else throw InvalidArgument("unknown split '" + name + "'");
    auto split = synthesize_corpus(spec, s);
    save_dataset(split, out_dir, name + ".cxl");
    std::cout << "wrote " << split.size() << " graphs to " << (fs::path(out_dir) / (name + ".cxl")).string() << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Graph matching toolkit: edit distance, contraction, centrality and geometric matching"};
  app.require_subcommand(1);

  // classify
  auto *classify = app.add_subcommand("classify", "k-NN classification of a test split");
  std::string train, test, data, profile = "letter", method = "geometric", out;
  std::size_t knn = 1, jobs = 1;
  bool audit = false;
  CostFlags cost;
  classify->add_option("--train", train, "Training index (CXL)")->required();
  classify->add_option("--test", test, "Test index (CXL)")->required();
  classify->add_option("--data", data, "Directory holding the GXL files (default: index directory)");
  classify->add_option("--profile", profile, "letter, molecule or generic")->capture_default_str();
  classify->add_option("--method", method, "Matcher spec, e.g. ged, ged-beam:10, kstar-ged:2, geometric:0.35,0.23,0.11,0.31")
      ->capture_default_str();
  classify->add_option("--knn", knn, "Number of neighbors")->capture_default_str();
  classify->add_option("--jobs", jobs, "Worker threads")->capture_default_str();
  classify->add_flag("--audit", audit, "Recheck the accuracy from the distance matrix");
  classify->add_option("--out", out, "CSV output");
  cost.add(classify);

  // bench
  auto *bench = app.add_subcommand("bench", "Time matchers on a pair list");
  std::string pairs = "synth:letter:50", methods = "ged,kstar-ged:1,kstar-ged:2";
  std::size_t reps = 3, limit = 20;
  bench->add_option("--pairs", pairs, "synth:letter|molecule:N[:SEED], or a CXL index")->capture_default_str();
  bench->add_option("--data", data, "Directory holding the GXL files");
  bench->add_option("--profile", profile, "Profile for CXL input")->capture_default_str();
  bench->add_option("--limit", limit, "Use pairs among the first N graphs of a CXL index")->capture_default_str();
  bench->add_option("--methods", methods, "Comma-separated matcher specs")->capture_default_str();
  bench->add_option("--reps", reps, "Repetitions per pair")->capture_default_str();
  bench->add_option("--out", out, "CSV output (default: stdout)");
  cost.add(bench);

  // contract
  auto *contract = app.add_subcommand("contract", "Contract one graph");
  std::string in, mode, measure = "degree";
  std::size_t k = 1, t = 1;
  double r = 0.1;
  contract->add_option("--in", in, "Input GXL")->required();
  contract->add_option("--profile", profile, "letter, molecule or generic")->capture_default_str();
  contract->add_option("--mode", mode, "kstar, rcentrality, tcentrality or path")->required();
  contract->add_option("--k", k, "Degree bound for kstar")->capture_default_str();
  contract->add_option("--r", r, "Fraction for rcentrality")->capture_default_str();
  contract->add_option("--t", t, "Count for tcentrality")->capture_default_str();
  contract->add_option("--measure", measure, "degree, betweenness, eigenvector or pagerank")->capture_default_str();
  contract->add_option("--out", out, "Output GXL")->required();

  // isocheck
  auto *iso = app.add_subcommand("isocheck", "Geometric isomorphism test; exit 0 isomorphic, 1 t-tolerant, 2 distance");
  std::string g1, g2;
  double tol = 0.0;
  iso->add_option("--g1", g1, "First GXL")->required();
  iso->add_option("--g2", g2, "Second GXL")->required();
  iso->add_option("--profile", profile, "letter, molecule or generic")->capture_default_str();
  iso->add_option("--tolerance", tol, "Per-axis coordinate tolerance")->capture_default_str();

  // tune
  auto *tune = app.add_subcommand("tune", "Hill-climb the geometric distance weights");
  std::string validation, start = "0.25,0.25,0.25,0.25";
  double delta = 0.02;
  bool align = false;
  tune->add_option("--train", train, "Training index (CXL)")->required();
  tune->add_option("--validation", validation, "Validation index (CXL)")->required();
  tune->add_option("--data", data, "Directory holding the GXL files");
  tune->add_option("--profile", profile, "letter, molecule or generic")->capture_default_str();
  tune->add_option("--delta", delta, "Step size")->capture_default_str();
  tune->add_option("--start", start, "Starting weights w1,w2,w3,w4")->capture_default_str();
  tune->add_flag("--align", align, "Align graphs before measuring");
  tune->add_option("--jobs", jobs, "Worker threads")->capture_default_str();
  tune->add_option("--out", out, "JSON output");

  // synth
  auto *synth = app.add_subcommand("synth", "Write a synthetic corpus");
  SynthSpec spec;
  std::string splits = "train,validation,test";
  synth->add_option("--classes", spec.classes, "Number of classes")->capture_default_str();
  synth->add_option("--per-class", spec.per_class, "Graphs per class and split")->capture_default_str();
  synth->add_option("--prototypes", spec.prototypes_per_class, "Prototypes per class")->capture_default_str();
  synth->add_option("--sigma", spec.sigma, "Coordinate jitter")->capture_default_str();
  synth->add_option("--seed", spec.seed, "Random seed")->capture_default_str();
  synth->add_option("--n-min", spec.n_min, "Smallest prototype")->capture_default_str();
  synth->add_option("--n-max", spec.n_max, "Largest prototype")->capture_default_str();
  synth->add_option("--p", spec.p, "Edge probability")->capture_default_str();
  synth->add_option("--splits", splits, "Splits to write")->capture_default_str();
  synth->add_option("--out", out, "Output directory")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*classify) return run_classify(train, test, data, profile, method, knn, jobs, audit, cost.p, out);
    if (*bench) return run_bench(pairs, data, profile, limit, methods, reps, cost.p, out);
    if (*contract) return run_contract(in, profile, mode, k, r, t, measure, out);
    if (*iso) return run_isocheck(g1, g2, profile, tol);
    if (*tune) return run_tune(train, validation, data, profile, delta, start, align, jobs, out);
    if (*synth) return run_synth(spec, splits, out);
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kErrorExit;
  }
  return 0;
}
