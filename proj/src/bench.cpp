#include "gmatch/bench.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <thread>

#include "gmatch/contraction.hpp"
#include "gmatch/error.hpp"

namespace gmatch {

namespace {

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

double parse_real(std::string_view s, std::string_view what) {
  double v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw InvalidArgument("bad " + std::string(what) + " '" + std::string(s) + "'");
  }
  return v;
}

std::size_t parse_count(std::string_view s, std::string_view what) {
  std::size_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw InvalidArgument("bad " + std::string(what) + " '" + std::string(s) + "'");
  }
  return v;
}

std::string num(double v) {
  std::array<char, 32> buf;
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), ptr);
}

CentralityMeasure measure_arg(std::string_view s) {
  auto m = parse_measure(s);
  if (!m) throw InvalidArgument("unknown centrality measure '" + std::string(s) + "'");
  return *m;
}

}  // namespace

void MatcherSpec::validate() const {
  cost_params.validate();
  weights.validate();
  if (beam_width && *beam_width == 0) throw InvalidArgument("beam width must be at least 1");
  if (method == Method::kGedBeam && !beam_width) throw InvalidArgument("ged-beam needs a width");
  if (!(r >= 0 && r <= 1)) throw InvalidArgument("r must lie in [0, 1]");
}

MatcherSpec parse_matcher(std::string_view text) {
  auto parts = split(text, ':');
  MatcherSpec m;
  std::string_view name = parts[0];
  std::size_t used = 1;
  auto need = [&](std::size_t n) {
    if (parts.size() < n) throw InvalidArgument("matcher '" + std::string(text) + "' is missing parameters");
  };
  if (name == "ged") {
    m.method = Method::kGed;
  } else if (name == "ged-beam") {
    need(2);
    m.method = Method::kGedBeam;
    m.beam_width = parse_count(parts[1], "beam width");
    used = 2;
  } else if (name == "bipartite") {
    m.method = Method::kBipartite;
  } else if (name == "hged") {
    m.method = Method::kHged;
  } else if (name == "kstar-ged") {
    need(2);
    m.method = Method::kKStarGed;
    m.k = parse_count(parts[1], "k");
    used = 2;
  } else if (name == "r-ged") {
    need(3);
    m.method = Method::kRGed;
    m.r = parse_real(parts[1], "r");
    m.measure = measure_arg(parts[2]);
    used = 3;
  } else if (name == "t-ged") {
    need(3);
    m.method = Method::kTGed;
    m.t = parse_count(parts[1], "t");
    m.measure = measure_arg(parts[2]);
    used = 3;
  } else if (name == "geometric") {
    m.method = Method::kGeometric;
    for (; used < parts.size(); ++used) {
      if (parts[used] == "align") {
        m.align = true;
      } else if (parts[used] == "noalign") {
        m.align = false;
      } else {
        auto ws = split(parts[used], ',');
        if (ws.size() != 4) throw InvalidArgument("geometric weights need four values");
        m.weights = {parse_real(ws[0], "weight"), parse_real(ws[1], "weight"),
                     parse_real(ws[2], "weight"), parse_real(ws[3], "weight")};
      }
    }
  } else {
    throw InvalidArgument("unknown matcher '" + std::string(name) + "'");
  }
  for (; used < parts.size(); ++used) {
    bool contracted = m.method == Method::kHged || m.method == Method::kKStarGed ||
                      m.method == Method::kRGed || m.method == Method::kTGed;
    if (contracted && parts[used].starts_with("beam=")) {
      m.beam_width = parse_count(parts[used].substr(5), "beam width");
    } else {
      throw InvalidArgument("unexpected matcher parameter '" + std::string(parts[used]) + "'");
    }
  }
  m.validate();
  return m;
}

std::string to_string(const MatcherSpec &m) {
  std::string beam = m.beam_width ? ":beam=" + std::to_string(*m.beam_width) : "";
  switch (m.method) {
    case Method::kGed: return "ged";
    case Method::kGedBeam: return "ged-beam:" + std::to_string(m.beam_width.value_or(0));
    case Method::kBipartite: return "bipartite";
    case Method::kHged: return "hged" + beam;
    case Method::kKStarGed: return "kstar-ged:" + std::to_string(m.k) + beam;
    case Method::kRGed: return "r-ged:" + num(m.r) + ":" + to_string(m.measure) + beam;
    case Method::kTGed: return "t-ged:" + std::to_string(m.t) + ":" + to_string(m.measure) + beam;
    case Method::kGeometric: {
      const auto &w = m.weights;
      return "geometric:" + num(w.w1) + "," + num(w.w2) + "," + num(w.w3) + "," + num(w.w4) +
             (m.align ? ":align" : "");
    }
  }
  return "?";
}

namespace {

double graph_distance_of(const MatcherSpec &m, const Graph &a, const Graph &b) {
  GedOptions opts;
  opts.beam_width = m.beam_width;
  switch (m.method) {
    case Method::kGed:
    case Method::kGedBeam: return ged(a, b, m.cost_params, opts).total_cost;
    case Method::kBipartite: return ged_bipartite(a, b, m.cost_params);
    case Method::kHged: return hged(a, b, m.cost_params, opts).total_cost;
    case Method::kKStarGed: return k_star_ged(a, b, m.k, m.cost_params, opts).total_cost;
    case Method::kRGed: return r_centrality_ged(a, b, m.r, m.measure, m.cost_params, opts).total_cost;
    case Method::kTGed: return t_centrality_ged(a, b, m.t, m.measure, m.cost_params, opts).total_cost;
    case Method::kGeometric: break;
  }
  throw InvalidArgument("not an edit distance matcher");
}

// A record with its geometric form built once.
struct Prepared {
  const GraphRecord *record;
  std::optional<GeometricGraph> geo;
};

std::vector<Prepared> prepare(const DatasetSplit &s, const MatcherSpec &m) {
  std::vector<Prepared> out;
  out.reserve(s.size());
  for (const auto &inst : s.instances) {
    Prepared p{&inst.record, std::nullopt};
    if (m.geometric() && inst.record.coords) p.geo = inst.record.as_geometric();
    out.push_back(std::move(p));
  }
  return out;
}

double prepared_distance(const MatcherSpec &m, const Prepared &a, const Prepared &b) {
  if (!m.geometric()) return graph_distance_of(m, a.record->graph, b.record->graph);
  if (!a.geo || !b.geo) {
    throw InvalidArgument("geometric matcher needs coordinates on both graphs");
  }
  return geometric_graph_distance(*a.geo, *b.geo, m.weights, m.align);
}

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point since) {
  return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
}

// Indices of the k nearest by (distance, index), then the vote.
std::string vote(const std::vector<double> &row, const DatasetSplit &train, std::size_t k) {
  std::vector<std::size_t> idx(row.size());
  std::iota(idx.begin(), idx.end(), 0);
  k = std::min(k, idx.size());
  std::partial_sort(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(k), idx.end(),
                    [&](std::size_t a, std::size_t b) {
                      return row[a] != row[b] ? row[a] < row[b] : a < b;
                    });
  std::map<std::string, std::pair<std::size_t, double>> tally;  // class -> (votes, summed distance)
  for (std::size_t i = 0; i < k; ++i) {
    auto &t = tally[train.instances[idx[i]].class_label];
    ++t.first;
    t.second += row[idx[i]];
  }
  const std::string *best = nullptr;
  std::pair<std::size_t, double> best_t{0, 0};
  // std::map iterates classes lexicographically, so the first of equals wins.
  for (const auto &[cls, t] : tally) {
    if (best == nullptr || t.first > best_t.first ||
        (t.first == best_t.first && t.second < best_t.second)) {
      best = &cls;
      best_t = t;
    }
  }
  return best ? *best : std::string();
}

}  // namespace

double match_distance(const MatcherSpec &m, const GraphRecord &a, const GraphRecord &b) {
  m.validate();
  if (!m.geometric()) return graph_distance_of(m, a.graph, b.graph);
  return geometric_graph_distance(a.as_geometric(), b.as_geometric(), m.weights, m.align);
}

BenchResult knn_classify(const DatasetSplit &train, const DatasetSplit &test,
                         const MatcherSpec &matcher, const KnnOptions &opts) {
  matcher.validate();
  if (opts.k == 0) throw InvalidArgument("k must be at least 1");
  if (train.empty() || test.empty()) throw InvalidArgument("training and test splits must be nonempty");
  const auto tr = prepare(train, matcher);
  const auto te = prepare(test, matcher);

  const std::size_t nt = te.size(), nr = tr.size();
  std::vector<std::vector<double>> dist(nt, std::vector<double>(nr));
  std::vector<double> row_ms(nt, 0.0);
  std::vector<std::size_t> row_ok(nt, 0), row_failed(nt, 0);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i; (i = next++) < nt;) {
      for (std::size_t j = 0; j < nr; ++j) {
        auto start = Clock::now();
        try {
          dist[i][j] = prepared_distance(matcher, te[i], tr[j]);
          row_ms[i] += elapsed_ms(start);
          ++row_ok[i];
        } catch (const Error &) {
          dist[i][j] = std::numeric_limits<double>::quiet_NaN();
          ++row_failed[i];
        }
      }
    }
  };
  std::size_t jobs = std::max<std::size_t>(1, std::min(opts.jobs, nt));
  if (jobs == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < jobs; ++w) pool.emplace_back(work);
    for (auto &t : pool) t.join();
  }

  BenchResult res;
  res.method = to_string(matcher);
  res.pair_count = nt * nr;
  std::map<std::string, std::pair<std::size_t, std::size_t>> per_class;  // correct, total
  std::size_t correct = 0, ok_pairs = 0;
  double total_ms = 0;
  for (std::size_t i = 0; i < nt; ++i) {
    total_ms += row_ms[i];
    ok_pairs += row_ok[i];
    res.failed_pairs += row_failed[i];
    const std::string &truth = test.instances[i].class_label;
    std::string pred = row_failed[i] == 0 ? vote(dist[i], train, opts.k) : std::string();
    auto &pc = per_class[truth];
    ++pc.second;
    if (!pred.empty() && pred == truth) {
      ++pc.first;
      ++correct;
    }
    res.predicted.push_back(std::move(pred));
  }
  for (const auto &[cls, pc] : per_class) {
    res.per_class_accuracy[cls] = 100.0 * static_cast<double>(pc.first) / static_cast<double>(pc.second);
  }
  res.mean_accuracy = 100.0 * static_cast<double>(correct) / static_cast<double>(nt);
  res.mean_time_ms = ok_pairs ? total_ms / static_cast<double>(ok_pairs) : 0.0;
  if (opts.keep_distances) res.distances = std::move(dist);
  return res;
}

double audit_accuracy(const std::vector<std::vector<double>> &distances,
                      const DatasetSplit &train, const DatasetSplit &test, std::size_t k) {
  if (distances.size() != test.size()) throw InvalidArgument("distance matrix has the wrong row count");
  std::size_t correct = 0;
  for (std::size_t i = 0; i < test.size(); ++i) {
    const auto &row = distances[i];
    if (row.size() != train.size()) throw InvalidArgument("distance matrix has the wrong column count");
    if (std::any_of(row.begin(), row.end(), [](double d) { return std::isnan(d); })) continue;
    // Repeatedly take the smallest remaining entry.
    std::vector<bool> taken(row.size(), false);
    std::vector<std::pair<std::string, double>> nearest;
    for (std::size_t r = 0; r < std::min(k, row.size()); ++r) {
      std::size_t best = row.size();
      for (std::size_t j = 0; j < row.size(); ++j) {
        if (!taken[j] && (best == row.size() || row[j] < row[best])) best = j;
      }
      taken[best] = true;
      nearest.emplace_back(train.instances[best].class_label, row[best]);
    }
    std::vector<std::string> classes;
    for (auto &[c, d] : nearest) classes.push_back(c);
    std::sort(classes.begin(), classes.end());
    classes.erase(std::unique(classes.begin(), classes.end()), classes.end());
    std::string winner;
    std::size_t wv = 0;
    double ws = 0;
    for (const auto &c : classes) {
      std::size_t v = 0;
      double s = 0;
      for (auto &[nc, d] : nearest) {
        if (nc == c) {
          ++v;
          s += d;
        }
      }
      if (winner.empty() || v > wv || (v == wv && s < ws)) {
        winner = c;
        wv = v;
        ws = s;
      }
    }
    if (winner == test.instances[i].class_label) ++correct;
  }
  return test.empty() ? 0.0 : 100.0 * static_cast<double>(correct) / static_cast<double>(test.size());
}

TimingSummary benchmark(const std::vector<GraphPair> &pairs, const MatcherSpec &matcher,
                        std::size_t repetitions) {
  matcher.validate();
  if (repetitions == 0) throw InvalidArgument("repetitions must be at least 1");
  TimingSummary s;
  s.method = to_string(matcher);
  s.pair_count = pairs.size();
  if (pairs.empty()) return s;

  std::vector<std::optional<GeometricGraph>> ga(pairs.size()), gb(pairs.size());
  if (matcher.geometric()) {
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      if (pairs[i].first.coords) ga[i] = pairs[i].first.as_geometric();
      if (pairs[i].second.coords) gb[i] = pairs[i].second.as_geometric();
    }
  }
  const double nan = std::numeric_limits<double>::quiet_NaN();
  s.distances.assign(pairs.size(), nan);
  s.pair_ms.assign(pairs.size(), nan);
  std::vector<bool> failed(pairs.size(), false);
  std::vector<double> samples;
  std::vector<double> sums(pairs.size(), 0.0);
  for (std::size_t rep = 0; rep < repetitions; ++rep) {
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      if (failed[i]) continue;
      Prepared a{&pairs[i].first, ga[i]}, b{&pairs[i].second, gb[i]};
      auto start = Clock::now();
      double d;
      try {
        d = prepared_distance(matcher, a, b);
      } catch (const Error &) {
        failed[i] = true;
        continue;
      }
      double ms = elapsed_ms(start);
      samples.push_back(ms);
      sums[i] += ms;
      if (rep == 0) s.distances[i] = d;
    }
  }
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (failed[i]) {
      ++s.failed_pairs;
      s.distances[i] = nan;
    } else {
      s.pair_ms[i] = sums[i] / static_cast<double>(repetitions);
    }
  }
  if (samples.empty()) return s;
  std::sort(samples.begin(), samples.end());
  s.mean_ms = std::accumulate(samples.begin(), samples.end(), 0.0) / static_cast<double>(samples.size());
  std::size_t mid = samples.size() / 2;
  s.median_ms = samples.size() % 2 ? samples[mid] : 0.5 * (samples[mid - 1] + samples[mid]);
  s.min_ms = samples.front();
  return s;
}

TuneResult tune_weights(const DatasetSplit &train, const DatasetSplit &validation,
                        const DistanceWeights &start, const TuneOptions &opts) {
  if (!(opts.delta > 0) || !std::isfinite(opts.delta)) throw InvalidArgument("delta must be positive");
  MatcherSpec m;
  m.method = Method::kGeometric;
  m.align = opts.align;
  KnnOptions ko;
  ko.jobs = opts.jobs;
  auto accuracy = [&](const DistanceWeights &w) {
    m.weights = w;
    return knn_classify(train, validation, m, ko).mean_accuracy;
  };

  TuneResult res;
  res.weights = start.normalized();
  res.accuracy = res.start_accuracy = accuracy(res.weights);
  while (res.steps < opts.max_steps) {
    std::optional<DistanceWeights> best;
    double best_acc = res.accuracy;
    for (int coord = 0; coord < 4; ++coord) {
      for (double sign : {1.0, -1.0}) {
        DistanceWeights w = res.weights;
        double *slot[] = {&w.w1, &w.w2, &w.w3, &w.w4};
        *slot[coord] = std::max(0.0, *slot[coord] + sign * opts.delta);
        if (w.w1 + w.w2 + w.w3 + w.w4 <= 0) continue;
        w = w.normalized();
        if (w == res.weights) continue;
        double acc = accuracy(w);
        if (acc > best_acc) {
          best_acc = acc;
          best = w;
        }
      }
    }
    if (!best) break;
    res.weights = *best;
    res.accuracy = best_acc;
    ++res.steps;
  }
  return res;
}

}  // namespace gmatch
