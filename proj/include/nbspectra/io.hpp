// Copyright 2026 The nbspectra Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Text formats: edge lists, label files, operator dumps, spectrum CSV.

#ifndef NBSPECTRA_IO_HPP
#define NBSPECTRA_IO_HPP

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "nbspectra/error.hpp"
#include "nbspectra/graph.hpp"
#include "nbspectra/sparse.hpp"
#include "nbspectra/spectra.hpp"

namespace nbspectra::io {

/// 17 significant digits, enough to round-trip any double.
inline std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x == 0.0 ? 0.0 : x);
  return buf;
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::IoError, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw Error(Errc::IoError, "read failed: " + path.string());
  return ss.str();
}

/// Writes to a sibling temporary file and renames it over the target.
inline void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(Errc::IoError, "cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw Error(Errc::IoError, "write failed: " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw Error(Errc::IoError, "cannot rename into " + path.string());
  }
}

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

inline std::vector<std::string_view> fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

inline std::size_t parse_index(std::string_view s, std::size_t line_no) {
  std::size_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw Error(Errc::ParseError, "line " + std::to_string(line_no) + ": not a nonnegative integer: '" +
                                      std::string(s) + "'");
  }
  return v;
}

template <class F>
void for_each_line(std::string_view text, F&& f) {
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    f(trim(line), ++line_no);
  }
}

}  // namespace detail

// --- edge lists ------------------------------------------------------------

/// "# n=<count>" header, then one "u<TAB>v" line per edge.
inline std::string format_edge_list(const SimpleGraph& g) {
  std::string out = "# n=" + std::to_string(g.node_count()) + "\n";
  for (const Edge& e : g.edges()) out += std::to_string(e.u) + "\t" + std::to_string(e.v) + "\n";
  return out;
}

/// Parses an edge list. The "# n=" header is required; other lines starting
/// with '#' and blank lines are ignored. Structural problems (self-loops,
/// duplicates, out-of-range nodes) are reported as ParseError.
inline SimpleGraph parse_edge_list(std::string_view text) {
  std::optional<std::size_t> n;
  std::vector<Edge> edges;
  detail::for_each_line(text, [&](std::string_view line, std::size_t no) {
    if (line.empty()) return;
    if (line.front() == '#') {
      std::string_view body = detail::trim(line.substr(1));
      if (body.starts_with("n=")) {
        if (n) throw Error(Errc::ParseError, "line " + std::to_string(no) + ": repeated n= header");
        n = detail::parse_index(detail::trim(body.substr(2)), no);
      }
      return;
    }
    const auto f = detail::fields(line);
    if (f.size() != 2) {
      throw Error(Errc::ParseError, "line " + std::to_string(no) + ": expected two node ids");
    }
    edges.push_back({detail::parse_index(f[0], no), detail::parse_index(f[1], no)});
  });
  if (!n) throw Error(Errc::ParseError, "missing '# n=<count>' header");
  try {
    return SimpleGraph::from_edge_list(edges, *n);
  } catch (const Error& e) {
    throw Error(Errc::ParseError, std::string("invalid graph: ") + e.what());
  }
}

inline SimpleGraph read_edge_list(const std::filesystem::path& path) {
  return parse_edge_list(read_file(path));
}

// --- labels ----------------------------------------------------------------

/// One "node<TAB>label" line per node.
inline std::string format_labels(const std::vector<std::size_t>& labels) {
  std::string out;
  for (std::size_t j = 0; j < labels.size(); ++j) out += std::to_string(j) + "\t" + std::to_string(labels[j]) + "\n";
  return out;
}

/// Every node 0..n-1 must appear exactly once.
inline std::vector<std::size_t> parse_labels(std::string_view text, std::size_t n) {
  std::vector<std::size_t> labels(n, 0);
  std::vector<bool> seen(n, false);
  detail::for_each_line(text, [&](std::string_view line, std::size_t no) {
    if (line.empty() || line.front() == '#') return;
    const auto f = detail::fields(line);
    if (f.size() != 2) throw Error(Errc::ParseError, "line " + std::to_string(no) + ": expected node and label");
    const std::size_t j = detail::parse_index(f[0], no);
    if (j >= n) throw Error(Errc::ParseError, "line " + std::to_string(no) + ": node out of range");
    if (seen[j]) throw Error(Errc::ParseError, "line " + std::to_string(no) + ": repeated node");
    seen[j] = true;
    labels[j] = detail::parse_index(f[1], no);
  });
  for (std::size_t j = 0; j < n; ++j) {
    if (!seen[j]) throw Error(Errc::ParseError, "no label for node " + std::to_string(j));
  }
  return labels;
}

inline std::vector<std::size_t> read_labels(const std::filesystem::path& path, std::size_t n) {
  return parse_labels(read_file(path), n);
}

// --- operators and spectra ---------------------------------------------------

/// "row col value" per stored entry, row-major.
inline std::string format_operator(const SparseOperator& m) {
  std::string out;
  m.for_each([&](std::size_t i, std::size_t j, double v) {
    out += std::to_string(i) + " " + std::to_string(j) + " " + format_double(v) + "\n";
  });
  return out;
}

/// "re,im,class" header and one row per eigenvalue.
inline std::string format_spectrum_csv(const Spectrum& s) {
  std::string out = "re,im,class\n";
  for (std::size_t i = 0; i < s.size(); ++i) {
    out += format_double(s.values[i].real()) + "," + format_double(s.values[i].imag()) + "," +
           (s.classes.empty() ? "unclassified" : to_string(s.classes[i])) + "\n";
  }
  return out;
}

}  // namespace nbspectra::io

#endif  // NBSPECTRA_IO_HPP
