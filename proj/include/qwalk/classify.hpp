//
// qwalk - quantum-walk graph similarity toolkit
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "qwalk/error.hpp"
#include "qwalk/graph.hpp"
#include "qwalk/parallel.hpp"
#include "qwalk/qjsd.hpp"
#include "qwalk/random.hpp"

namespace qwalk {

namespace detail {

template <class PairFn>
double padded_upper_sum(const Graph &g1, const Graph &g2, PairFn &&fn) {
  const std::size_t n = std::max(g1.size(), g2.size());
  auto w = [](const Graph &g, std::size_t i, std::size_t j) {
    return i < g.size() && j < g.size() ? g.weight(i, j) : 0.0;
  };
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      sum += fn(w(g1, i, j), w(g2, i, j));
  return sum;
}

inline double pair_count(const Graph &g1, const Graph &g2) {
  const auto n = static_cast<double>(std::max(g1.size(), g2.size()));
  return n * (n - 1.0) / 2.0;
}

} // namespace detail

/// Number of node pairs whose binarized edge state differs once both graphs
/// are zero-padded to the larger node count. A metric on graphs: padding to
/// any larger frame adds only matching pairs.
inline std::size_t xor_mismatch_count(const Graph &g1, const Graph &g2) {
  return static_cast<std::size_t>(detail::padded_upper_sum(
      g1, g2, [](double a, double b) { return (a > 0.0) != (b > 0.0) ? 1.0 : 0.0; }));
}

/// Normalized Hamming distance between binarized adjacency structures.
///
/// Both weight matrices are zero-padded to the larger node count, the strict
/// upper triangles are compared entrywise (edge present iff weight > 0), and
/// the number of mismatches is divided by n_max (n_max - 1) / 2. The
/// normalizer depends on the pair, so the triangle inequality is only
/// guaranteed among graphs of equal size; xor_mismatch_count is the
/// size-independent metric.
inline double xor_distance(const Graph &g1, const Graph &g2) {
  const double pairs = detail::pair_count(g1, g2);
  if (pairs == 0.0)
    return 0.0;
  return static_cast<double>(xor_mismatch_count(g1, g2)) / pairs;
}

/// Weighted variant: mean absolute weight difference over the padded pairs.
/// Not bounded by 1 when weights exceed 1.
inline double weighted_distance(const Graph &g1, const Graph &g2) {
  const double pairs = detail::pair_count(g1, g2);
  if (pairs == 0.0)
    return 0.0;
  return detail::padded_upper_sum(g1, g2, [](double a, double b) { return std::abs(a - b); }) /
         pairs;
}

enum class DistanceMetric {
  Xor,
  Weighted,
  Qjsd, ///< 1 - graph_qjsd; isomorphic graphs are at distance 0
};

struct DistanceConfig {
  DistanceMetric metric = DistanceMetric::Xor;
  WalkConfig walk{};
  Horizon horizon = Horizon::infinite();
  std::size_t threads = 1; ///< 0 = resolve_threads()
};

inline double graph_distance(const Graph &g1, const Graph &g2, const DistanceConfig &config = {}) {
  switch (config.metric) {
  case DistanceMetric::Xor:
    return xor_distance(g1, g2);
  case DistanceMetric::Weighted:
    return weighted_distance(g1, g2);
  case DistanceMetric::Qjsd:
    return 1.0 - graph_qjsd(g1, g2, config.horizon, config.walk).value;
  }
  return 0.0;
}

struct LabeledGraph {
  Graph graph;
  std::string label;
};

struct Dataset {
  std::string name;
  std::vector<LabeledGraph> items;

  Dataset() = default;
  Dataset(std::string name, std::vector<LabeledGraph> items)
      : name(std::move(name)), items(std::move(items)) {
    validate();
  }

  void validate() const {
    if (items.empty())
      throw DomainError("dataset '" + name + "' is empty");
    for (const auto &it : items)
      if (it.label.empty())
        throw DomainError("dataset '" + name + "' has an unlabeled item");
  }

  std::vector<std::string> labels() const {
    std::vector<std::string> out;
    for (const auto &it : items)
      out.push_back(it.label);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }
};

namespace detail {

/// Modal label among distance-sorted neighbours; ties go to the smaller mean
/// distance, then to the lexicographically smaller label.
inline std::string vote(const std::vector<std::pair<double, const std::string *>> &nearest) {
  std::map<std::string, std::pair<std::size_t, double>> tally;
  for (const auto &[d, label] : nearest) {
    auto &t = tally[*label];
    ++t.first;
    t.second += d;
  }
  const std::string *best = nullptr;
  std::size_t best_count = 0;
  double best_mean = 0.0;
  for (const auto &[label, t] : tally) { // map order = lexicographic
    const double mean = t.second / static_cast<double>(t.first);
    if (!best || t.first > best_count || (t.first == best_count && mean < best_mean)) {
      best = &label;
      best_count = t.first;
      best_mean = mean;
    }
  }
  return *best;
}

inline std::string knn_from_distances(const std::vector<LabeledGraph> &train,
                                      const std::vector<double> &distances, std::size_t k) {
  std::vector<std::pair<double, const std::string *>> ranked;
  ranked.reserve(train.size());
  for (std::size_t i = 0; i < train.size(); ++i)
    ranked.emplace_back(distances[i], &train[i].label);
  // Ordering on (distance, label) keeps the result independent of training order.
  auto by_distance_then_label = [](const auto &a, const auto &b) {
    return a.first != b.first ? a.first < b.first : *a.second < *b.second;
  };
  std::partial_sort(ranked.begin(), ranked.begin() + static_cast<std::ptrdiff_t>(k), ranked.end(),
                    by_distance_then_label);
  ranked.resize(k);
  return vote(ranked);
}

inline void check_k(std::size_t k, std::size_t train_size) {
  if (train_size == 0)
    throw DomainError("training set is empty");
  if (k < 1 || k > train_size)
    throw ParameterError("k = " + std::to_string(k) + " must lie in [1, " +
                         std::to_string(train_size) + "]");
}

} // namespace detail

inline std::string knn_classify(const std::vector<LabeledGraph> &train, const Graph &query,
                                std::size_t k, const DistanceConfig &config = {}) {
  detail::check_k(k, train.size());
  std::vector<double> d(train.size());
  for (std::size_t i = 0; i < train.size(); ++i)
    d[i] = graph_distance(query, train[i].graph, config);
  return detail::knn_from_distances(train, d, k);
}

inline std::string knn_classify(const Dataset &train, const Graph &query, std::size_t k,
                                const DistanceConfig &config = {}) {
  return knn_classify(train.items, query, k, config);
}

struct EvaluationReport {
  double accuracy = 0.0;
  std::vector<std::string> labels; ///< row/column order of the confusion matrix
  /// confusion[true][predicted]
  std::vector<std::vector<std::size_t>> confusion;
  std::size_t k = 1;
  std::uint64_t seed = 0;
  double split_fraction = 0.5;
  std::size_t train_size = 0;
  std::size_t test_size = 0;
  bool stratified = true;
  std::vector<std::string> warnings;
};

/// Index sets of a seeded train/test split. split_fraction is the training share.
struct Split {
  std::vector<std::size_t> train;
  std::vector<std::size_t> test;
  bool stratified = true;
  std::vector<std::string> warnings;
};

inline Split split_dataset(const Dataset &data, double split_fraction, std::uint64_t seed) {
  if (!(split_fraction > 0.0 && split_fraction < 1.0))
    throw ParameterError("split fraction must lie in (0, 1)");
  if (data.items.size() < 2)
    throw ParameterError("need at least two items to split into train and test");

  auto take = [&](std::size_t count) {
    const auto want = static_cast<std::size_t>(std::llround(split_fraction * static_cast<double>(count)));
    return std::clamp<std::size_t>(want, 1, count - 1);
  };

  std::map<std::string, std::vector<std::size_t>> by_label;
  for (std::size_t i = 0; i < data.items.size(); ++i)
    by_label[data.items[i].label].push_back(i);

  Split s;
  for (const auto &[label, idx] : by_label)
    if (idx.size() < 2) {
      s.stratified = false;
      s.warnings.push_back("class '" + label +
                           "' has fewer than 2 items; falling back to an unstratified split");
    }

  Rng rng = make_rng(split_seed(seed, {0x5b11}));
  if (s.stratified) {
    for (auto &[label, idx] : by_label) {
      shuffle(idx.begin(), idx.end(), rng);
      const std::size_t n_train = take(idx.size());
      s.train.insert(s.train.end(), idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(n_train));
      s.test.insert(s.test.end(), idx.begin() + static_cast<std::ptrdiff_t>(n_train), idx.end());
    }
  } else {
    std::vector<std::size_t> idx(data.items.size());
    for (std::size_t i = 0; i < idx.size(); ++i)
      idx[i] = i;
    shuffle(idx.begin(), idx.end(), rng);
    const std::size_t n_train = take(idx.size());
    s.train.assign(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(n_train));
    s.test.assign(idx.begin() + static_cast<std::ptrdiff_t>(n_train), idx.end());
  }
  return s;
}

/// Seeded split, kNN on every test item, confusion matrix and accuracy.
inline EvaluationReport evaluate(const Dataset &data, double split_fraction, std::size_t k,
                                 std::uint64_t seed, const DistanceConfig &config = {}) {
  data.validate();
  const Split split = split_dataset(data, split_fraction, seed);
  std::vector<LabeledGraph> train;
  train.reserve(split.train.size());
  for (auto i : split.train)
    train.push_back(data.items[i]);
  detail::check_k(k, train.size());

  std::vector<std::string> predicted(split.test.size());
  parallel_for(split.test.size(), resolve_threads(config.threads), [&](std::size_t t) {
    const Graph &query = data.items[split.test[t]].graph;
    std::vector<double> d(train.size());
    for (std::size_t i = 0; i < train.size(); ++i)
      d[i] = graph_distance(query, train[i].graph, config);
    predicted[t] = detail::knn_from_distances(train, d, k);
  });

  EvaluationReport r;
  r.labels = data.labels();
  r.confusion.assign(r.labels.size(), std::vector<std::size_t>(r.labels.size(), 0));
  auto pos = [&](const std::string &label) {
    return static_cast<std::size_t>(
        std::lower_bound(r.labels.begin(), r.labels.end(), label) - r.labels.begin());
  };
  std::size_t correct = 0;
  for (std::size_t t = 0; t < split.test.size(); ++t) {
    const auto &truth = data.items[split.test[t]].label;
    ++r.confusion[pos(truth)][pos(predicted[t])];
    correct += truth == predicted[t] ? 1 : 0;
  }
  r.accuracy = static_cast<double>(correct) / static_cast<double>(split.test.size());
  r.k = k;
  r.seed = seed;
  r.split_fraction = split_fraction;
  r.train_size = split.train.size();
  r.test_size = split.test.size();
  r.stratified = split.stratified;
  r.warnings = split.warnings;
  return r;
}

} // namespace qwalk
