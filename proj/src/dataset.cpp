#include "gmatch/dataset.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include "gmatch/error.hpp"

namespace gmatch {

namespace pt = boost::property_tree;

const char *to_string(GxlProfile p) {
  switch (p) {
    case GxlProfile::kLetter: return "letter";
    case GxlProfile::kMolecule: return "molecule";
    case GxlProfile::kGeneric: return "generic";
  }
  return "?";
}

GxlProfile parse_profile(std::string_view name) {
  if (name == "letter") return GxlProfile::kLetter;
  if (name == "molecule") return GxlProfile::kMolecule;
  if (name == "generic") return GxlProfile::kGeneric;
  throw InvalidArgument("unknown profile '" + std::string(name) +
                        "' (expected letter, molecule or generic)");
}

const char *to_string(SplitName s) {
  switch (s) {
    case SplitName::kTrain: return "train";
    case SplitName::kValidation: return "validation";
    case SplitName::kTest: return "test";
  }
  return "?";
}

GeometricGraph GraphRecord::as_geometric() const {
  if (!coords) {
    throw InvalidArgument("graph '" + id + "' has no vertex coordinates");
  }
  return {graph, *coords};
}

std::vector<std::string> DatasetSplit::classes() const {
  std::vector<std::string> out;
  for (const auto &inst : instances) {
    if (std::find(out.begin(), out.end(), inst.class_label) == out.end()) {
      out.push_back(inst.class_label);
    }
  }
  return out;
}

namespace {

[[noreturn]] void malformed(const std::string &what) {
  throw ParseError(ParseErrorKind::kMalformedDocument, what);
}

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

double to_number(std::string_view text) {
  std::string t = trim(text);
  double v = 0;
  auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || ptr != t.data() + t.size() || !std::isfinite(v)) {
    malformed("not a number: '" + t + "'");
  }
  return v;
}

std::string format_number(double v) {
  std::array<char, 32> buf;
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), ptr);
}

pt::ptree read_tree(std::string_view content) {
  pt::ptree tree;
  std::istringstream in{std::string(content)};
  try {
    pt::read_xml(in, tree);
  } catch (const pt::xml_parser_error &e) {
    malformed(std::string("invalid XML: ") + e.what());
  }
  return tree;
}

// The typed value inside an <attr> element.
struct AttrValue {
  std::string type;  // float, int, string, bool, tup
  const pt::ptree *node = nullptr;
};

std::map<std::string, AttrValue> attributes(const pt::ptree &element) {
  std::map<std::string, AttrValue> out;
  for (const auto &[key, child] : element) {
    if (key != "attr") continue;
    auto name = child.get_optional<std::string>("<xmlattr>.name");
    if (!name) malformed("attr element without a name");
    for (const auto &[type, value] : child) {
      if (type == "<xmlattr>") continue;
      out[*name] = {type, &value};
      break;
    }
  }
  return out;
}

std::optional<double> numeric(const std::map<std::string, AttrValue> &attrs, const std::string &name) {
  auto it = attrs.find(name);
  if (it == attrs.end()) return std::nullopt;
  if (it->second.type != "float" && it->second.type != "int" && it->second.type != "double") {
    malformed("attribute '" + name + "' is not numeric");
  }
  return to_number(it->second.node->data());
}

std::string symbol_text(const AttrValue &v) {
  if (v.type == "tup") malformed("expected a scalar attribute value");
  return trim(v.node->data());
}

Label generic_label(const std::map<std::string, AttrValue> &attrs) {
  auto it = attrs.find("label");
  if (it == attrs.end()) return {};
  const AttrValue &v = it->second;
  if (v.type == "string") return trim(v.node->data());
  if (v.type == "float" || v.type == "int") return std::vector<double>{to_number(v.node->data())};
  if (v.type == "tup") {
    std::vector<double> out;
    for (const auto &[k, c] : *v.node) {
      if (k == "<xmlattr>") continue;
      if (k != "float" && k != "int") malformed("label tuples must hold numbers");
      out.push_back(to_number(c.data()));
    }
    return out;
  }
  malformed("unsupported label type '" + v.type + "'");
}

}  // namespace

GraphRecord parse_gxl(std::string_view content, const GxlOptions &opts) {
  pt::ptree tree = read_tree(content);
  auto root = tree.get_child_optional("gxl");
  if (!root) malformed("missing <gxl> root element");
  const pt::ptree *graph_el = nullptr;
  for (const auto &[key, child] : *root) {
    if (key != "graph") continue;
    if (graph_el != nullptr) malformed("more than one <graph> element");
    graph_el = &child;
  }
  if (graph_el == nullptr) malformed("missing <graph> element");

  GraphRecord rec;
  rec.id = graph_el->get("<xmlattr>.id", std::string());
  std::map<std::string, VertexId> index;
  std::vector<std::optional<Point>> points;
  try {
    for (const auto &[key, node] : *graph_el) {
      if (key != "node") continue;
      auto id = node.get_optional<std::string>("<xmlattr>.id");
      if (!id) malformed("node without an id");
      if (index.count(*id)) malformed("duplicate node id '" + *id + "'");
      auto attrs = attributes(node);
      auto x = numeric(attrs, opts.x_attribute);
      auto y = numeric(attrs, opts.y_attribute);
      std::optional<Point> p;
      if (x && y) p = Point{*x, *y};
      Label label;
      switch (opts.profile) {
        case GxlProfile::kLetter:
          if (!p) {
            throw ParseError(ParseErrorKind::kMissingCoordinate,
                             "node '" + *id + "' lacks its " + opts.x_attribute + "/" +
                                 opts.y_attribute + " coordinate");
          }
          label = std::vector<double>{p->x, p->y};
          break;
        case GxlProfile::kMolecule:
          for (const auto &name : opts.symbol_attributes) {
            auto it = attrs.find(name);
            if (it != attrs.end()) {
              label = symbol_text(it->second);
              break;
            }
          }
          break;
        case GxlProfile::kGeneric:
          label = generic_label(attrs);
          break;
      }
      index[*id] = rec.graph.add_vertex(std::move(label), *id);
      points.push_back(p);
    }
    for (const auto &[key, edge] : *graph_el) {
      if (key != "edge") continue;
      auto from = edge.get_optional<std::string>("<xmlattr>.from");
      auto to = edge.get_optional<std::string>("<xmlattr>.to");
      if (!from || !to) malformed("edge without from/to");
      auto a = index.find(*from), b = index.find(*to);
      if (a == index.end() || b == index.end()) {
        throw ParseError(ParseErrorKind::kDanglingEdge,
                         "edge " + *from + "-" + *to + " names an unknown node");
      }
      if (a->second == b->second) malformed("self-loop on node '" + *from + "'");
      // Some files list an undirected edge in both directions.
      if (rec.graph.has_edge(a->second, b->second)) continue;
      auto attrs = attributes(edge);
      Label label;
      if (opts.profile == GxlProfile::kGeneric) {
        label = generic_label(attrs);
      } else if (opts.profile == GxlProfile::kMolecule) {
        auto it = attrs.find(opts.edge_label_attribute);
        if (it != attrs.end()) label = symbol_text(it->second);
      }
      rec.graph.add_edge(a->second, b->second, std::move(label));
    }
  } catch (const InvalidArgument &e) {
    malformed(e.what());
  }
  if (std::all_of(points.begin(), points.end(), [](auto &p) { return p.has_value(); })) {
    std::vector<Point> coords;
    for (auto &p : points) coords.push_back(*p);
    rec.coords = std::move(coords);
  }
  return rec;
}

GraphRecord read_gxl(const std::filesystem::path &file, const GxlOptions &opts) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw ParseError(ParseErrorKind::kUnreadableFile, "cannot read " + file.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_gxl(ss.str(), opts);
}

namespace {

void put_number(pt::ptree &parent, const char *type, double v) {
  parent.add(type, format_number(v));
}

void put_label(pt::ptree &element, const Label &label) {
  if (std::holds_alternative<std::monostate>(label)) return;
  pt::ptree &attr = element.add("attr", "");
  attr.put("<xmlattr>.name", "label");
  if (const auto *s = std::get_if<std::string>(&label)) {
    attr.add("string", *s);
  } else {
    pt::ptree &tup = attr.add("tup", "");
    for (double v : std::get<std::vector<double>>(label)) put_number(tup, "float", v);
  }
}

}  // namespace

std::string write_gxl(const GraphRecord &record) {
  const Graph &g = record.graph;
  if (record.coords && record.coords->size() != g.order()) {
    throw InvalidArgument("coordinate count differs from vertex count");
  }
  std::set<std::string> names;
  bool use_names = true;
  for (VertexId v = 0; v < g.order() && use_names; ++v) {
    use_names = !g.vertex_name(v).empty() && names.insert(g.vertex_name(v)).second;
  }
  auto node_id = [&](VertexId v) {
    return use_names ? g.vertex_name(v) : "_" + std::to_string(v);
  };

  pt::ptree tree;
  pt::ptree &graph = tree.put("gxl.graph", "");
  graph.put("<xmlattr>.id", record.id);
  graph.put("<xmlattr>.edgeids", "false");
  graph.put("<xmlattr>.edgemode", "undirected");
  for (VertexId v = 0; v < g.order(); ++v) {
    pt::ptree &node = graph.add("node", "");
    node.put("<xmlattr>.id", node_id(v));
    if (record.coords) {
      const Point &p = (*record.coords)[v];
      for (auto [name, val] : {std::pair{"x", p.x}, std::pair{"y", p.y}}) {
        pt::ptree &attr = node.add("attr", "");
        attr.put("<xmlattr>.name", name);
        put_number(attr, "float", val);
      }
    }
    put_label(node, g.vertex_label(v));
  }
  for (const Edge &e : g.edges()) {
    pt::ptree &edge = graph.add("edge", "");
    edge.put("<xmlattr>.from", node_id(e.u));
    edge.put("<xmlattr>.to", node_id(e.v));
    put_label(edge, e.label);
  }
  std::ostringstream out;
  pt::write_xml(out, tree, pt::xml_writer_make_settings<std::string>(' ', 1));
  return out.str();
}

namespace {

// <print> elements may sit at any depth (fingerprints, activity, ...).
void collect_prints(const pt::ptree &t, std::vector<IndexEntry> &out) {
  for (const auto &[key, child] : t) {
    if (key == "<xmlattr>") continue;
    if (key != "print") {
      collect_prints(child, out);
      continue;
    }
    auto file = child.get_optional<std::string>("<xmlattr>.file");
    auto cls = child.get_optional<std::string>("<xmlattr>.class");
    if (!file || !cls) malformed("<print> needs file and class attributes");
    if (trim(*cls).empty()) malformed("empty class label for " + *file);
    out.push_back({trim(*file), trim(*cls)});
  }
}

}  // namespace

std::vector<IndexEntry> parse_cxl(std::string_view content) {
  std::vector<IndexEntry> out;
  collect_prints(read_tree(content), out);
  return out;
}

std::string write_cxl(const std::vector<IndexEntry> &entries) {
  pt::ptree tree;
  pt::ptree &fp = tree.put("GraphCollection.fingerprints", "");
  fp.put("<xmlattr>.count", entries.size());
  for (const auto &e : entries) {
    pt::ptree &p = fp.add("print", "");
    p.put("<xmlattr>.file", e.file);
    p.put("<xmlattr>.class", e.class_label);
  }
  std::ostringstream out;
  pt::write_xml(out, tree, pt::xml_writer_make_settings<std::string>(' ', 1));
  return out.str();
}

namespace {

SplitName guess_split(const std::filesystem::path &index) {
  std::string name = index.filename().string();
  std::transform(name.begin(), name.end(), name.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (name.find("train") != std::string::npos) return SplitName::kTrain;
  if (name.find("valid") != std::string::npos) return SplitName::kValidation;
  return SplitName::kTest;
}

}  // namespace

LoadResult load_dataset(const std::filesystem::path &index, const std::filesystem::path &data_dir,
                        const GxlOptions &opts, std::optional<SplitName> name) {
  std::ifstream in(index, std::ios::binary);
  if (!in) throw ParseError(ParseErrorKind::kUnreadableFile, "cannot read index " + index.string());
  std::stringstream ss;
  ss << in.rdbuf();
  std::vector<IndexEntry> entries = parse_cxl(ss.str());

  LoadResult out;
  out.split.name = name.value_or(guess_split(index));
  std::set<std::string> seen;
  for (const auto &e : entries) {
    std::string id = std::filesystem::path(e.file).stem().string();
    if (!seen.insert(id).second) {
      out.errors.push_back({e.file, "listed more than once"});
      continue;
    }
    try {
      out.split.instances.push_back({read_gxl(data_dir / e.file, opts), e.class_label, id});
    } catch (const Error &err) {
      out.errors.push_back({e.file, err.what()});
    }
  }
  return out;
}

void save_dataset(const DatasetSplit &split, const std::filesystem::path &dir,
                  const std::string &index_name) {
  std::filesystem::create_directories(dir);
  std::vector<IndexEntry> entries;
  auto write = [](const std::filesystem::path &path, const std::string &text) {
    std::ofstream out(path, std::ios::binary);
    if (!(out << text)) throw Error("cannot write " + path.string());
  };
  for (const auto &inst : split.instances) {
    std::string file = inst.source_id + ".gxl";
    write(dir / file, write_gxl(inst.record));
    entries.push_back({file, inst.class_label});
  }
  write(dir / index_name, write_cxl(entries));
}

void SynthSpec::validate() const {
  if (n_min == 0 || n_min > n_max) throw InvalidArgument("need 1 <= n_min <= n_max");
  if (!(p >= 0 && p <= 1)) throw InvalidArgument("edge probability must lie in [0, 1]");
  if (classes == 0) throw InvalidArgument("need at least one class");
  if (per_class == 0) throw InvalidArgument("per_class must be at least 1");
  if (prototypes_per_class == 0) throw InvalidArgument("need at least one prototype per class");
  if (!(sigma >= 0) || !std::isfinite(sigma)) throw InvalidArgument("sigma must be finite and >= 0");
}

namespace {

// Portable uniform draw in [0, 1).
double unit(std::mt19937_64 &rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::mt19937_64 stream(std::uint64_t seed, std::uint32_t tag, std::uint64_t a, std::uint64_t b) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), tag,
                    static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b)};
  return std::mt19937_64(seq);
}

std::string padded(std::size_t v, std::size_t max) {
  std::string s = std::to_string(v);
  std::size_t width = std::to_string(max == 0 ? 0 : max - 1).size();
  return std::string(width - std::min(width, s.size()), '0') + s;
}

}  // namespace

DatasetSplit synthesize_corpus(const SynthSpec &spec, SplitName name) {
  spec.validate();
  DatasetSplit split;
  split.name = name;
  for (std::size_t c = 0; c < spec.classes; ++c) {
    std::vector<GeometricGraph> protos;
    for (std::size_t q = 0; q < spec.prototypes_per_class; ++q) {
      auto rng = stream(spec.seed, 1, c, q);
      std::size_t n = spec.n_min + rng() % (spec.n_max - spec.n_min + 1);
      Graph g = random_graph(n, spec.p, rng());
      std::vector<Point> pts;
      for (std::size_t i = 0; i < n; ++i) {
        double x = unit(rng);
        pts.push_back({x, unit(rng)});
      }
      protos.emplace_back(std::move(g), std::move(pts));
    }
    std::string cls = "c" + padded(c, spec.classes);
    auto rng = stream(spec.seed, 2, static_cast<std::uint64_t>(name), c);
    for (std::size_t i = 0; i < spec.per_class; ++i) {
      const GeometricGraph &proto = protos[i % protos.size()];
      GraphRecord rec;
      rec.id = std::string(to_string(name)) + "_" + cls + "_" + padded(i, spec.per_class);
      std::vector<Point> pts;
      for (Point p : proto.coords()) {
        double dx = spec.sigma * (2 * unit(rng) - 1);
        double dy = spec.sigma * (2 * unit(rng) - 1);
        pts.push_back({p.x + dx, p.y + dy});
      }
      for (VertexId v = 0; v < proto.order(); ++v) {
        rec.graph.add_vertex(std::vector<double>{pts[v].x, pts[v].y});
      }
      for (const Edge &e : proto.graph().edges()) rec.graph.add_edge(e.u, e.v);
      rec.coords = std::move(pts);
      split.instances.push_back({std::move(rec), cls, ""});
      split.instances.back().source_id = split.instances.back().record.id;
    }
  }
  return split;
}

SynthSpec letter_like(std::uint64_t seed, double sigma) {
  SynthSpec s;
  s.n_min = 3;
  s.n_max = 9;
  s.p = 0.3;
  s.classes = 15;
  s.per_class = 50;
  s.sigma = sigma;
  s.seed = seed;
  return s;
}

SynthSpec molecule_like(std::uint64_t seed, double sigma) {
  SynthSpec s;
  s.n_min = 12;
  s.n_max = 20;
  s.p = 0.13;
  s.classes = 2;
  s.per_class = 50;
  s.prototypes_per_class = 5;
  s.sigma = sigma;
  s.seed = seed;
  return s;
}

}  // namespace gmatch
