//
// qwalk - quantum-walk graph similarity toolkit
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <charconv>
#include <ostream>
#include <string>

#include <json.hpp>

#include "qwalk/classify.hpp"
#include "qwalk/matching.hpp"
#include "qwalk/qjsd.hpp"

namespace qwalk {

using Json = nlohmann::ordered_json;

/// 12 significant digits, '.' separator, independent of the global locale.
inline std::string format_number(double x) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 12);
  return std::string(buf, ptr);
}

inline Json horizon_json(const std::optional<Horizon> &h) {
  if (!h)
    return nullptr;
  if (h->is_infinite())
    return "infinite";
  return Json{{"T", h->time()}};
}

inline Json to_json(const DivergenceReport &r) {
  return Json{{"value", r.value},
              {"entropy_mixture", r.entropy_mixture},
              {"entropy_rho", r.entropy_rho},
              {"entropy_sigma", r.entropy_sigma},
              {"time_horizon", horizon_json(r.horizon)}};
}

inline Json to_json(const Assignment &a) {
  Json pairs = Json::array();
  for (const auto &[u, v] : a.pairs)
    pairs.push_back({u, v});
  return Json{{"pairs", pairs},
              {"total_cost", a.total_cost},
              {"unmatched_left", a.unmatched_left},
              {"unmatched_right", a.unmatched_right}};
}

inline Json to_json(const Matrix &m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Json to_json(const EvaluationReport &r) {
  return Json{{"accuracy", r.accuracy},
              {"labels", r.labels},
              {"confusion", r.confusion},
              {"k", r.k},
              {"seed", r.seed},
              {"split_fraction", r.split_fraction},
              {"train_size", r.train_size},
              {"test_size", r.test_size},
              {"stratified", r.stratified},
              {"warnings", r.warnings}};
}

inline void write_matrix_csv(std::ostream &out, const Matrix &m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      out << (j ? "," : "") << format_number(m(i, j));
    out << '\n';
  }
}

/// Header row "true\predicted,<labels...>", then one row per true label.
inline void write_confusion_csv(std::ostream &out, const EvaluationReport &r) {
  out << "true\\predicted";
  for (const auto &l : r.labels)
    out << ',' << l;
  out << '\n';
  for (std::size_t i = 0; i < r.labels.size(); ++i) {
    out << r.labels[i];
    for (auto c : r.confusion[i])
      out << ',' << c;
    out << '\n';
  }
}

} // namespace qwalk
