//
// qwalk - quantum-walk graph similarity toolkit
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <charconv>
#include <cmath>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "qwalk/error.hpp"
#include "qwalk/graph.hpp"

namespace qwalk {

/// Plain-text graph encodings.
///
/// EdgeList: first data line is the node count N, then one "u v [w]" line per
/// undirected edge (0-based, w defaults to 1). Matrix: N comma-separated rows
/// of N reals. In both, blank lines and lines starting with '#' are skipped.
enum class GraphFormat { EdgeList, Matrix };

namespace io_detail {

inline std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos)
    return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

inline bool skippable(std::string_view line) {
  line = trim(line);
  return line.empty() || line.front() == '#';
}

inline std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r'))
      ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t' && s[j] != '\r')
      ++j;
    if (j > i)
      out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

inline std::vector<std::string_view> split_char(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos)
      break;
    start = pos + 1;
  }
  return out;
}

inline double parse_real(std::string_view tok, std::size_t line) {
  if (!tok.empty() && tok.front() == '+')
    tok.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc{} || ptr != tok.data() + tok.size())
    throw ParseError("expected a real number, got '" + std::string(tok) + "'", line);
  if (!std::isfinite(value))
    throw FormatError("non-finite value '" + std::string(tok) + "'", line);
  return value;
}

inline std::size_t parse_index(std::string_view tok, std::size_t line) {
  std::size_t value = 0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc{} || ptr != tok.data() + tok.size())
    throw ParseError("expected a non-negative integer, got '" + std::string(tok) + "'", line);
  return value;
}

inline std::string format_real(double x) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

} // namespace io_detail

inline Graph load_edgelist(std::istream &in) {
  using namespace io_detail;
  std::string raw;
  std::size_t line_no = 0;
  std::optional<std::size_t> n;
  Matrix w;
  std::vector<bool> seen;
  while (std::getline(in, raw)) {
    ++line_no;
    if (skippable(raw))
      continue;
    const auto toks = split_ws(trim(raw));
    if (!n) {
      if (toks.size() != 1)
        throw ParseError("first line must hold the node count", line_no);
      n = parse_index(toks[0], line_no);
      const auto m = static_cast<Eigen::Index>(*n);
      w = Matrix::Zero(m, m);
      seen.assign(*n * *n, false);
      continue;
    }
    if (toks.size() != 2 && toks.size() != 3)
      throw ParseError("expected 'u v [w]'", line_no);
    const auto u = parse_index(toks[0], line_no);
    const auto v = parse_index(toks[1], line_no);
    const double weight = toks.size() == 3 ? parse_real(toks[2], line_no) : 1.0;
    if (u >= *n || v >= *n)
      throw FormatError("node index out of range for " + std::to_string(*n) + " nodes", line_no);
    if (u == v)
      throw FormatError("self-loop on node " + std::to_string(u), line_no);
    if (weight < 0.0)
      throw FormatError("negative weight", line_no);
    if (seen[u * *n + v])
      throw FormatError("duplicate edge (" + std::to_string(u) + "," + std::to_string(v) + ")",
                        line_no);
    seen[u * *n + v] = seen[v * *n + u] = true;
    w(static_cast<Eigen::Index>(u), static_cast<Eigen::Index>(v)) = weight;
    w(static_cast<Eigen::Index>(v), static_cast<Eigen::Index>(u)) = weight;
  }
  if (!n)
    throw ParseError("missing node count", line_no);
  return Graph(std::move(w));
}

inline Graph load_matrix(std::istream &in) {
  using namespace io_detail;
  std::string raw;
  std::size_t line_no = 0;
  std::vector<std::vector<double>> rows;
  std::vector<std::size_t> row_lines;
  while (std::getline(in, raw)) {
    ++line_no;
    if (skippable(raw))
      continue;
    std::vector<double> row;
    for (auto tok : split_char(trim(raw), ','))
      row.push_back(parse_real(tok, line_no));
    if (!rows.empty() && row.size() != rows.front().size())
      throw ParseError("row has " + std::to_string(row.size()) + " entries, expected " +
                           std::to_string(rows.front().size()),
                       line_no);
    rows.push_back(std::move(row));
    row_lines.push_back(line_no);
  }
  const std::size_t n = rows.size();
  if (n > 0 && rows.front().size() != n)
    throw FormatError("matrix is " + std::to_string(n) + "x" + std::to_string(rows.front().size()) +
                          ", expected square",
                      row_lines.back());
  const auto m = static_cast<Eigen::Index>(n);
  Matrix w(m, m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const double x = rows[i][j];
      if (x < 0.0)
        throw FormatError("negative weight", row_lines[i]);
      if (i == j && x != 0.0)
        throw FormatError("self-loop on node " + std::to_string(i), row_lines[i]);
      if (x != rows[j][i])
        throw FormatError("matrix is not symmetric at (" + std::to_string(i) + "," +
                              std::to_string(j) + ")",
                          row_lines[std::max(i, j)]);
      w(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = x;
    }
  return Graph(std::move(w));
}

inline Graph load_graph(std::istream &in, GraphFormat format) {
  return format == GraphFormat::Matrix ? load_matrix(in) : load_edgelist(in);
}

/// Attribute sidecar: one "u a1 ... ad" line per node, every node exactly once.
inline Matrix load_attributes(std::istream &in, std::size_t n) {
  using namespace io_detail;
  std::string raw;
  std::size_t line_no = 0;
  std::optional<std::size_t> dim;
  std::vector<bool> seen(n, false);
  Matrix attrs;
  while (std::getline(in, raw)) {
    ++line_no;
    if (skippable(raw))
      continue;
    const auto toks = split_ws(trim(raw));
    if (toks.size() < 2)
      throw ParseError("expected 'u a1 ... ad'", line_no);
    const auto u = parse_index(toks[0], line_no);
    if (u >= n)
      throw FormatError("node index out of range for " + std::to_string(n) + " nodes", line_no);
    if (!dim) {
      dim = toks.size() - 1;
      attrs = Matrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(*dim));
    } else if (toks.size() - 1 != *dim) {
      throw FormatError("attribute vector has dimension " + std::to_string(toks.size() - 1) +
                            ", expected " + std::to_string(*dim),
                        line_no);
    }
    if (seen[u])
      throw FormatError("duplicate attributes for node " + std::to_string(u), line_no);
    seen[u] = true;
    for (std::size_t k = 1; k < toks.size(); ++k)
      attrs(static_cast<Eigen::Index>(u), static_cast<Eigen::Index>(k - 1)) =
          parse_real(toks[k], line_no);
  }
  for (std::size_t u = 0; u < n; ++u)
    if (!seen[u])
      throw FormatError("missing attributes for node " + std::to_string(u), line_no);
  if (!dim)
    return Matrix::Zero(0, 0);
  return attrs;
}

/// ".csv" and ".mat" files are matrices, everything else an edge list.
inline GraphFormat format_for_path(const std::filesystem::path &path) {
  const auto ext = path.extension().string();
  return ext == ".csv" || ext == ".mat" ? GraphFormat::Matrix : GraphFormat::EdgeList;
}

inline std::ifstream open_input(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in)
    throw IoError("cannot open '" + path.string() + "'");
  return in;
}

/// Parse errors are rethrown with the file name prefixed.
template <class Fn>
auto with_source(const std::filesystem::path &path, Fn &&fn) {
  try {
    return fn();
  } catch (const FormatError &e) {
    throw FormatError(path.string() + ": " + e.what());
  } catch (const ParseError &e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

inline Graph load_graph_file(const std::filesystem::path &path,
                             std::optional<GraphFormat> format = std::nullopt) {
  auto in = open_input(path);
  return with_source(path, [&] { return load_graph(in, format.value_or(format_for_path(path))); });
}

inline Matrix load_attributes_file(const std::filesystem::path &path, std::size_t n) {
  auto in = open_input(path);
  return with_source(path, [&] { return load_attributes(in, n); });
}

inline void write_edgelist(std::ostream &out, const Graph &g) {
  out << g.size() << '\n';
  for (const auto &e : g.edges())
    out << e.u << ' ' << e.v << ' ' << io_detail::format_real(e.weight) << '\n';
}

inline void write_attributes(std::ostream &out, const Graph &g) {
  if (!g.has_attributes())
    return;
  const auto &a = *g.attributes();
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    out << i;
    for (Eigen::Index k = 0; k < a.cols(); ++k)
      out << ' ' << io_detail::format_real(a(i, k));
    out << '\n';
  }
}

struct ManifestEntry {
  std::filesystem::path path;
  std::string label;
  std::size_t line = 0; ///< 1-based source line, 0 when built in memory
};

/// CSV with header "path,label". Relative paths are resolved against base_dir.
inline std::vector<ManifestEntry> read_manifest(std::istream &in,
                                                const std::filesystem::path &base_dir = {}) {
  using namespace io_detail;
  std::string raw;
  std::size_t line_no = 0;
  bool header = false;
  std::vector<ManifestEntry> out;
  while (std::getline(in, raw)) {
    ++line_no;
    if (skippable(raw))
      continue;
    const auto cells = split_char(trim(raw), ',');
    if (!header) {
      if (cells.size() != 2 || cells[0] != "path" || cells[1] != "label")
        throw ParseError("manifest header must be 'path,label'", line_no);
      header = true;
      continue;
    }
    if (cells.size() != 2 || cells[0].empty() || cells[1].empty())
      throw ParseError("expected 'path,label'", line_no);
    std::filesystem::path p{std::string(cells[0])};
    if (p.is_relative() && !base_dir.empty())
      p = base_dir / p;
    out.push_back({std::move(p), std::string(cells[1]), line_no});
  }
  if (!header)
    throw ParseError("empty manifest", line_no);
  return out;
}

inline void write_manifest(std::ostream &out, const std::vector<ManifestEntry> &entries) {
  out << "path,label\n";
  for (const auto &e : entries)
    out << e.path.generic_string() << ',' << e.label << '\n';
}

} // namespace qwalk
