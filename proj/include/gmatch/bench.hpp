#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gmatch/centrality.hpp"
#include "gmatch/dataset.hpp"
#include "gmatch/edit_distance.hpp"
#include "gmatch/geometric.hpp"

namespace gmatch {

enum class Method { kGed, kGedBeam, kBipartite, kHged, kKStarGed, kRGed, kTGed, kGeometric };

/// A distance function and its parameters.
///
/// Text form: "ged", "ged-beam:W", "bipartite", "hged", "kstar-ged:K",
/// "r-ged:R:MEASURE", "t-ged:T:MEASURE", "geometric[:W1,W2,W3,W4][:align]".
/// hged, kstar-ged, r-ged and t-ged accept a trailing ":beam=W" to run the
/// search on the contracted graphs as a beam search.
struct MatcherSpec {
  Method method = Method::kGed;
  std::optional<std::size_t> beam_width;
  std::size_t k = 0;  // kstar-ged
  double r = 0.0;     // r-ged
  std::size_t t = 0;  // t-ged
  CentralityMeasure measure = CentralityMeasure::kDegree;
  DistanceWeights weights;
  bool align = false;
  EditCostParams cost_params;

  /// Throws InvalidArgument when a parameter is out of range.
  void validate() const;
  bool geometric() const noexcept { return method == Method::kGeometric; }
};

/// Throws InvalidArgument on an unknown or malformed spec.
MatcherSpec parse_matcher(std::string_view text);
std::string to_string(const MatcherSpec &m);

/// The matcher's distance. Geometric matchers need coordinates on both
/// graphs; edit distance matchers use the labeled graphs.
double match_distance(const MatcherSpec &m, const GraphRecord &a, const GraphRecord &b);

struct KnnOptions {
  std::size_t k = 1;
  std::size_t jobs = 1;
  /// Keep the full test x train distance matrix in the result.
  bool keep_distances = false;
};

struct BenchResult {
  std::string method;
  std::map<std::string, double> per_class_accuracy;  // percent
  double mean_accuracy = 0.0;                        // percent over all test instances
  double mean_time_ms = 0.0;                         // successful pairs only
  std::size_t pair_count = 0;
  std::size_t failed_pairs = 0;
  std::vector<std::string> predicted;  // per test instance; empty when a pair failed
  /// distances[i][j]: test i vs train j; NaN for a failed pair.
  std::vector<std::vector<double>> distances;
};

/// k-nearest-neighbor classification of every test instance against the
/// training split. The k nearest are taken by (distance, training index);
/// the vote goes to the most frequent class, ties to the smallest summed
/// distance, then to the lexicographically first class. A test instance
/// with any failed pair counts as misclassified.
BenchResult knn_classify(const DatasetSplit &train, const DatasetSplit &test,
                         const MatcherSpec &matcher, const KnnOptions &opts = {});

/// Accuracy (percent) recomputed from a distance matrix by straightforward
/// counting, as an independent check of knn_classify.
double audit_accuracy(const std::vector<std::vector<double>> &distances,
                      const DatasetSplit &train, const DatasetSplit &test, std::size_t k);

struct TimingSummary {
  std::string method;
  std::size_t pair_count = 0;
  double mean_ms = 0.0;
  double median_ms = 0.0;
  double min_ms = 0.0;
  std::size_t failed_pairs = 0;
  /// Distance per pair from the first repetition; NaN for a failed pair.
  std::vector<double> distances;
  /// Mean time per pair over the repetitions; NaN for a failed pair.
  std::vector<double> pair_ms;
};

using GraphPair = std::pair<GraphRecord, GraphRecord>;

/// Times every pair `repetitions` times, single-threaded, without warmup.
/// Mean, median and min are taken over all successful samples.
TimingSummary benchmark(const std::vector<GraphPair> &pairs, const MatcherSpec &matcher,
                        std::size_t repetitions = 3);

struct TuneOptions {
  double delta = 0.02;
  bool align = false;
  std::size_t max_steps = 1000;
  std::size_t jobs = 1;
};

struct TuneResult {
  DistanceWeights weights;
  double accuracy = 0.0;        // validation 1-NN accuracy at `weights`
  double start_accuracy = 0.0;  // at the normalized start
  std::size_t steps = 0;
};

/// Steepest ascent on validation 1-NN accuracy over normalized weights:
/// each step tries every single-weight move by +-delta (clamped at 0,
/// renormalized) and takes the best strict improvement, the earliest move
/// on ties. Stops when no move improves.
TuneResult tune_weights(const DatasetSplit &train, const DatasetSplit &validation,
                        const DistanceWeights &start, const TuneOptions &opts = {});

}  // namespace gmatch
