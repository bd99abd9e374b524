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

#include <gtest/gtest.h>

#include <random>

#include "nbspectra/io.hpp"
#include "nbspectra/nbmat.hpp"
#include "support/graphs.hpp"

namespace nbspectra {
namespace {

Errc code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return Errc::BadParameter;
}

TEST(EdgeList, RoundTrip) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    SimpleGraph g = two_core(testing::random_two_core(30, seed)).graph;
    EXPECT_EQ(io::parse_edge_list(io::format_edge_list(g)), g);
  }
}

TEST(EdgeList, HeaderKeepsIsolatedNodes) {
  SimpleGraph g = io::parse_edge_list("# n=5\n0\t1\n1\t2\n0\t2\n");
  EXPECT_EQ(g.node_count(), 5u);
  EXPECT_EQ(g.edge_count(), 3u);
  EXPECT_EQ(io::format_edge_list(g), "# n=5\n0\t1\n0\t2\n1\t2\n");
}

TEST(EdgeList, CommentsBlanksAndSpaces) {
  SimpleGraph g = io::parse_edge_list("# generated\n# n=3\n\n0 1\r\n  1\t2  \n# tail\n");
  EXPECT_EQ(g.edge_count(), 2u);
}

TEST(EdgeList, Errors) {
  EXPECT_EQ(code_of([] { io::parse_edge_list("0\t1\n"); }), Errc::ParseError);
  EXPECT_EQ(code_of([] { io::parse_edge_list("# n=3\n0\tx\n"); }), Errc::ParseError);
  EXPECT_EQ(code_of([] { io::parse_edge_list("# n=3\n0\t1\t2\n"); }), Errc::ParseError);
  EXPECT_EQ(code_of([] { io::parse_edge_list("# n=3\n-1\t2\n"); }), Errc::ParseError);
  EXPECT_EQ(code_of([] { io::parse_edge_list("# n=3\n1\t1\n"); }), Errc::ParseError);
  EXPECT_EQ(code_of([] { io::parse_edge_list("# n=3\n0\t1\n1\t0\n"); }), Errc::ParseError);
  EXPECT_EQ(code_of([] { io::parse_edge_list("# n=3\n0\t3\n"); }), Errc::ParseError);
  EXPECT_EQ(code_of([] { io::parse_edge_list("# n=3\n# n=4\n"); }), Errc::ParseError);
}

TEST(Labels, RoundTripAndErrors) {
  std::vector<std::size_t> labels{1, 0, 2, 2};
  EXPECT_EQ(io::format_labels(labels), "0\t1\n1\t0\n2\t2\n3\t2\n");
  EXPECT_EQ(io::parse_labels(io::format_labels(labels), 4), labels);
  EXPECT_EQ(code_of([] { io::parse_labels("0\t1\n", 2); }), Errc::ParseError);
  EXPECT_EQ(code_of([] { io::parse_labels("0\t1\n0\t1\n", 1); }), Errc::ParseError);
  EXPECT_EQ(code_of([] { io::parse_labels("5\t1\n", 1); }), Errc::ParseError);
}

TEST(Format, DoubleRoundTrips) {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 1000; ++i) {
    const double x = std::ldexp(static_cast<double>(rng() >> 11), static_cast<int>(rng() % 200) - 150);
    EXPECT_EQ(std::stod(io::format_double(x)), x);
  }
  EXPECT_EQ(io::format_double(-0.0), "0");
  EXPECT_EQ(io::format_double(0.5), "0.5");
}

TEST(Format, OperatorDump) {
  OrientedEdgeIndex idx = oriented_edges(testing::complete(4));
  const std::string dump = io::format_operator(build_B(idx));
  EXPECT_EQ(std::count(dump.begin(), dump.end(), '\n'), 24);
  EXPECT_EQ(dump.substr(0, dump.find('\n')), "0 3 1");  // (0,1) feeds (1,2)
  const std::string t = io::format_operator(build_T(oriented_edges(testing::complete_bipartite(2, 3))));
  EXPECT_NE(t.find(" 0.5\n"), std::string::npos);
}

TEST(Format, SpectrumCsv) {
  Spectrum s;
  s.values = {cplx(2.0, 0.0), cplx(-0.5, 1.25)};
  EXPECT_EQ(io::format_spectrum_csv(s), "re,im,class\n2,0,unclassified\n-0.5,1.25,unclassified\n");
  s.classes = {EigenClass::perron, EigenClass::complex_bulk};
  EXPECT_EQ(io::format_spectrum_csv(s), "re,im,class\n2,0,perron\n-0.5,1.25,complex_bulk\n");
}

TEST(Files, AtomicWriteAndRead) {
  const auto dir = std::filesystem::temp_directory_path() / "nbspectra_io_test";
  std::filesystem::create_directories(dir);
  const auto path = dir / "g.tsv";
  io::write_file_atomic(path, "# n=2\n0\t1\n");
  EXPECT_EQ(io::read_file(path), "# n=2\n0\t1\n");
  EXPECT_FALSE(std::filesystem::exists(dir / "g.tsv.tmp"));
  EXPECT_EQ(io::read_edge_list(path).edge_count(), 1u);
  EXPECT_EQ(code_of([&] { io::read_file(dir / "missing.tsv"); }), Errc::IoError);
  EXPECT_EQ(code_of([&] { io::write_file_atomic(dir / "no" / "such" / "dir.txt", "x"); }), Errc::IoError);
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace nbspectra
