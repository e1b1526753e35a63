#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gmatch/graph.hpp"

namespace gmatch {

enum class GxlProfile { kLetter, kMolecule, kGeneric };

const char *to_string(GxlProfile p);
/// "letter", "molecule" or "generic"; throws InvalidArgument otherwise.
GxlProfile parse_profile(std::string_view name);

struct GxlOptions {
  GxlProfile profile = GxlProfile::kGeneric;
  std::string x_attribute = "x";
  std::string y_attribute = "y";
  /// Molecule profile: the first of these present on a node is its symbol.
  std::vector<std::string> symbol_attributes{"symbol", "chem"};
  /// Molecule profile: edge attribute kept as a symbolic edge label.
  std::string edge_label_attribute = "valence";
};

/// A graph read from one GXL document. Coordinates are present when every
/// node carries both coordinate attributes (always, for the letter profile).
struct GraphRecord {
  Graph graph;
  std::optional<std::vector<Point>> coords;
  std::string id;

  bool geometric() const noexcept { return coords.has_value(); }
  /// Throws InvalidArgument when the graph has no coordinates.
  GeometricGraph as_geometric() const;
};

/// Letter: x/y floats become coordinates and 2-vector labels; edges are
/// unlabeled. Molecule: symbolic labels from the symbol attributes,
/// coordinates when present. Generic: "label" attributes (string, number or
/// tuple of numbers) on nodes and edges, coordinates when present.
///
/// Throws ParseError: kMalformedDocument for bad XML or structure,
/// kMissingCoordinate for a letter node without x/y, kDanglingEdge for an
/// edge naming an unknown node.
GraphRecord parse_gxl(std::string_view content, const GxlOptions &opts = {});
GraphRecord read_gxl(const std::filesystem::path &file, const GxlOptions &opts = {});

/// Serializes in the generic layout, which parse_gxl reads back unchanged.
std::string write_gxl(const GraphRecord &record);

struct LabeledInstance {
  GraphRecord record;
  std::string class_label;
  std::string source_id;
};

enum class SplitName { kTrain, kValidation, kTest };

const char *to_string(SplitName s);

struct DatasetSplit {
  SplitName name = SplitName::kTest;
  std::vector<LabeledInstance> instances;

  std::size_t size() const noexcept { return instances.size(); }
  bool empty() const noexcept { return instances.empty(); }
  /// Class labels in first-seen order.
  std::vector<std::string> classes() const;
};

struct FileError {
  std::string file;
  std::string message;
};

struct LoadResult {
  DatasetSplit split;
  std::vector<FileError> errors;
};

struct IndexEntry {
  std::string file;
  std::string class_label;
};

/// Every <print file=".." class=".."/> element, in document order.
std::vector<IndexEntry> parse_cxl(std::string_view content);
std::string write_cxl(const std::vector<IndexEntry> &entries);

/// Reads an index and the GXL files it lists (relative to data_dir).
/// An unreadable or malformed index throws ParseError; a failing graph file
/// or a repeated file name is recorded in `errors` and skipped. The split
/// name is guessed from the index file name unless given.
LoadResult load_dataset(const std::filesystem::path &index, const std::filesystem::path &data_dir,
                        const GxlOptions &opts = {}, std::optional<SplitName> name = {});

/// Writes each instance as <source_id>.gxl plus an index file.
void save_dataset(const DatasetSplit &split, const std::filesystem::path &dir,
                  const std::string &index_name);

struct SynthSpec {
  std::size_t n_min = 3;
  std::size_t n_max = 9;
  double p = 0.3;
  std::size_t classes = 15;
  std::size_t per_class = 50;
  std::size_t prototypes_per_class = 1;
  double sigma = 0.1;
  std::uint64_t seed = 1;

  void validate() const;
};

/// Per class, prototypes_per_class random geometric prototypes (G(n, p)
/// topology, coordinates uniform in [0,1]^2, n uniform in [n_min, n_max])
/// and per_class jittered copies, copy i drawn from prototype
/// i mod prototypes_per_class with every coordinate moved uniformly in
/// [-sigma, sigma]. Vertex labels are the coordinates. Prototypes depend
/// only on the seed; the jitter also depends on the split name, so splits
/// of one spec share their prototypes.
DatasetSplit synthesize_corpus(const SynthSpec &spec, SplitName name = SplitName::kTest);

/// Stand-in for the letter data: 15 classes, 3 to 9 vertices, sparse.
SynthSpec letter_like(std::uint64_t seed = 1, double sigma = 0.1);
/// Stand-in for the molecule data: 2 classes with several prototypes each,
/// 12 to 20 vertices, about one edge per vertex.
SynthSpec molecule_like(std::uint64_t seed = 1, double sigma = 0.05);

}  // namespace gmatch
