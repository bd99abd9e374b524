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


// nbspectra command-line tool. Exit status: 0 success, 1 verification
// failure, 2 parameter or domain error, 3 I/O or parse error, 4 numerical
// failure.

#include <charconv>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "nbspectra/cluster.hpp"
#include "nbspectra/io.hpp"
#include "nbspectra/nbmat.hpp"
#include "nbspectra/perturb.hpp"
#include "nbspectra/report.hpp"
#include "nbspectra/sbm.hpp"
#include "nbspectra/spectra.hpp"
#include "nbspectra/verify.hpp"

namespace fs = std::filesystem;
using namespace nbspectra;

namespace {

enum Exit { kOk = 0, kVerifyFailed = 1, kParam = 2, kIo = 3, kNumerical = 4 };

int exit_code(const Error& e) {
  if (e.code() == Errc::ParseError || e.code() == Errc::IoError) return kIo;
  if (e.is_numerical()) return kNumerical;
  return kParam;
}

/// Flag, then NBSPECTRA_SEED, then 0.
std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
  if (flag) return *flag;
  const char* env = std::getenv("NBSPECTRA_SEED");
  if (env == nullptr || *env == '\0') return 0;
  std::uint64_t v = 0;
  const std::string s(env);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw Error(Errc::BadParameter, "NBSPECTRA_SEED is not an unsigned 64-bit integer: '" + s + "'");
  }
  return v;
}

/// Output paths are checked before any work starts.
void require_writable_dir(const fs::path& target) {
  const fs::path dir = target.parent_path().empty() ? fs::path(".") : target.parent_path();
  if (!fs::is_directory(dir)) throw Error(Errc::IoError, "output directory does not exist: " + dir.string());
}

void emit(const std::string& out_path, const std::string& content) {
  if (out_path.empty()) {
    std::cout << content;
  } else {
    io::write_file_atomic(out_path, content);
  }
}

EigenMode parse_eigen_mode(const std::string& s) { return s == "iterative" ? EigenMode::iterative : EigenMode::dense; }

std::optional<EigenMode> parse_auto_mode(const std::string& s) {
  if (s == "auto") return std::nullopt;
  return parse_eigen_mode(s);
}

EmbeddingVariant parse_variant(const std::string& s) {
  if (s == "raw_z") return EmbeddingVariant::raw_z;
  if (s == "drow_invsqrt") return EmbeddingVariant::drow_invsqrt;
  return EmbeddingVariant::drow_sqrt;
}

struct Common {
  std::optional<std::uint64_t> seed;
  std::string out;
};

// --- gen ---------------------------------------------------------------------

struct GenArgs {
  SbmParams p;
  std::string prefix;
};

int run_gen(const GenArgs& a, const Common& c) {
  SbmParams p = a.p;
  p.seed = resolve_seed(c.seed);
  validate(p);
  const fs::path graph = a.prefix + ".graph.tsv", labels = a.prefix + ".labels.tsv", meta = a.prefix + ".meta.json";
  require_writable_dir(graph);
  const SbmSample s = sample(p);
  io::write_file_atomic(graph, io::format_edge_list(s.graph));
  io::write_file_atomic(labels, io::format_labels(s.labels));
  io::write_file_atomic(meta, report::dump(report::sbm_meta(p, s.meta)));
  return kOk;
}

// --- spectrum ----------------------------------------------------------------

struct SpectrumArgs {
  std::string graph;
  std::string matrix = "B";
  std::string mode = "dense";
  std::size_t k = 2;
  double delta = 0.05;
};

int run_spectrum(const SpectrumArgs& a, const Common& c) {
  if (!c.out.empty()) require_writable_dir(c.out);
  const std::uint64_t seed = resolve_seed(c.seed);
  const SimpleGraph g = io::read_edge_list(a.graph);
  const OrientedEdgeIndex idx = oriented_edges(g);
  SparseOperator m;
  MatrixTag tag = MatrixTag::B;
  if (a.matrix == "B") {
    m = build_B(idx);
  } else if (a.matrix == "T") {
    m = build_T(idx);
    tag = MatrixTag::T;
  } else if (a.matrix == "L") {
    m = build_L(idx);
    tag = MatrixTag::L;
  } else {
    m = build_BV(idx);
    tag = MatrixTag::BV;
  }
  Spectrum s;
  if (a.mode == "dense") {
    s = dense_eigendecomposition(m, false, tag).spectrum;
  } else {
    if (tag != MatrixTag::B && tag != MatrixTag::T) {
      throw Error(Errc::BadParameter, "iterative mode supports B and T only");
    }
    IterativeOptions it;
    it.seed = seed;
    if (tag == MatrixTag::T) it.inner = build_D_row(idx);
    s = leading_real_eigenpairs(m, a.k, it).spectrum;
    s.tag = tag;
  }
  const double avg = g.node_count() == 0 ? 0.0 : 2.0 * static_cast<double>(g.edge_count()) / static_cast<double>(g.node_count());
  // BV is symmetric with spectrum {d_j - 1} and -1; the bulk picture does not apply.
  if (avg > 1.0 && tag != MatrixTag::BV) {
    ClassifyOptions co;
    co.delta = a.delta;
    s = classify_spectrum(std::move(s), avg, co);
  }
  emit(c.out, io::format_spectrum_csv(s));
  return kOk;
}

// --- verify ------------------------------------------------------------------

struct VerifyArgs {
  std::string graph;
  std::vector<std::string> suites;
  double tol = 1e-8;
  std::size_t k = 2;
};

int run_verify(const VerifyArgs& a, const Common& c) {
  if (!c.out.empty()) require_writable_dir(c.out);
  const SimpleGraph g = io::read_edge_list(a.graph);
  VerifyOptions opt;
  opt.suites = a.suites;
  opt.tol = a.tol;
  opt.k = a.k;
  const VerifyReport r = verify(g, opt);
  emit(c.out, report::dump(report::verify(r, g, a.tol)));
  return r.ok() ? kOk : kVerifyFailed;
}

// --- bound -------------------------------------------------------------------

struct BoundArgs {
  std::string graph;
  std::size_t k = 2;
  std::string mode = "auto";
  std::size_t dense_limit = 1000;
};

int run_bound(const BoundArgs& a, const Common& c) {
  if (!c.out.empty()) require_writable_dir(c.out);
  const std::uint64_t seed = resolve_seed(c.seed);
  const SimpleGraph g = io::read_edge_list(a.graph);
  const OrientedEdgeIndex idx = oriented_edges(g);
  const EigenMode mode =
      parse_auto_mode(a.mode).value_or(idx.oriented_count() <= a.dense_limit ? EigenMode::dense : EigenMode::iterative);
  BoundOptions opt;
  opt.mode = mode;
  opt.basis.mode = mode;
  opt.basis.dense.seed = seed;
  opt.basis.iterative.seed = seed;
  opt.b_iterative.seed = seed;
  opt.power.seed = seed;
  const BoundReport r = bound_report(idx, a.k, opt);
  emit(c.out, report::dump(report::bound(r)));
  return kOk;
}

// --- cluster and pipeline ----------------------------------------------------

struct ClusterArgs {
  std::string graph;
  std::string truth;
  std::size_t k = 2;
  std::string mode = "edge_vote";
  std::string variant = "drow_sqrt";
  std::string weighting = "drow";
  std::string eigen = "auto";
  SbmParams sbm;  // pipeline without --graph
};

PipelineOptions pipeline_options(const ClusterArgs& a, std::uint64_t seed) {
  PipelineOptions o;
  o.k = a.k;
  o.mode = a.mode == "deflate" ? ClusterMode::deflate : ClusterMode::edge_vote;
  o.variant = parse_variant(a.variant);
  o.weighting = a.weighting == "uniform" ? Weighting::uniform : Weighting::drow;
  o.eigen_mode = parse_auto_mode(a.eigen);
  o.seed = seed;
  return o;
}

/// Writes "<prefix>.assign.tsv" (input node ids) and "<prefix>.report.json",
/// or prints the report when no prefix is given.
void emit_clustering(const PipelineReport& r, const std::string& prefix) {
  const std::string json = report::dump(report::pipeline(r));
  if (prefix.empty()) {
    std::cout << json;
    return;
  }
  std::string assign;
  for (std::size_t j = 0; j < r.labels.size(); ++j) {
    assign += std::to_string(r.original_ids[j]) + "\t" + std::to_string(r.labels[j]) + "\n";
  }
  io::write_file_atomic(prefix + ".assign.tsv", assign);
  io::write_file_atomic(prefix + ".report.json", json);
}

int run_cluster(const ClusterArgs& a, const Common& c) {
  if (!c.out.empty()) require_writable_dir(c.out + ".report.json");
  const std::uint64_t seed = resolve_seed(c.seed);
  const SimpleGraph g = io::read_edge_list(a.graph);
  std::optional<std::vector<std::size_t>> truth;
  if (!a.truth.empty()) truth = io::read_labels(a.truth, g.node_count());
  const PipelineReport r = pipeline(g, pipeline_options(a, seed), truth ? &*truth : nullptr);
  emit_clustering(r, c.out);
  return kOk;
}

int run_pipeline(const ClusterArgs& a, const Common& c) {
  if (!a.graph.empty()) return run_cluster(a, c);
  if (!c.out.empty()) require_writable_dir(c.out + ".report.json");
  const std::uint64_t seed = resolve_seed(c.seed);
  SbmParams p = a.sbm;
  p.k = a.k;
  p.seed = seed;
  const SbmSample s = sample(p);
  const PipelineReport r = pipeline(s.graph, pipeline_options(a, seed), &s.labels);
  emit_clustering(r, c.out);
  return kOk;
}

void add_common(CLI::App* cmd, Common& c, const std::string& out_help) {
  cmd->add_option("--seed", c.seed, "64-bit seed (overrides NBSPECTRA_SEED; default 0)");
  cmd->add_option("--out", c.out, out_help);
}

void add_sbm(CLI::App* cmd, SbmParams& p, std::size_t& k, bool required) {
  auto* n = cmd->add_option("--n", p.n, "node count");
  auto* a = cmd->add_option("--a", p.a, "within-block rate (probability a/n)");
  auto* b = cmd->add_option("--b", p.b, "between-block rate (probability b/n)");
  cmd->add_option("--k", k, "block count")->capture_default_str();
  cmd->add_option("--proportions", p.proportions, "block fractions (default equal)");
  if (required) {
    n->required();
    a->required();
    b->required();
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectra of non-backtracking operators, SBM generation and spectral clustering"};
  app.require_subcommand(1);

  Common common;
  GenArgs gen;
  SpectrumArgs spec;
  VerifyArgs ver;
  BoundArgs bnd;
  ClusterArgs clu;

  auto* g = app.add_subcommand("gen", "sample a stochastic block model; writes PREFIX.{graph.tsv,labels.tsv,meta.json}");
  add_sbm(g, gen.p, gen.p.k, true);
  g->add_option("--seed", common.seed, "64-bit seed (overrides NBSPECTRA_SEED; default 0)");
  g->add_option("--out", gen.prefix, "output prefix")->required();

  auto* s = app.add_subcommand("spectrum", "eigenvalues of B, T, L or BV as CSV");
  s->add_option("--graph", spec.graph, "edge list")->required();
  s->add_option("--matrix", spec.matrix)->check(CLI::IsMember({"B", "T", "L", "BV"}))->capture_default_str();
  s->add_option("--mode", spec.mode)->check(CLI::IsMember({"dense", "iterative"}))->capture_default_str();
  s->add_option("--k", spec.k, "eigenvalue count in iterative mode")->capture_default_str();
  s->add_option("--delta", spec.delta, "classification margin")->check(CLI::NonNegativeNumber)->capture_default_str();
  add_common(s, common, "CSV path (default stdout)");

  auto* v = app.add_subcommand("verify", "run invariant suites; exit 1 when a check fails");
  v->add_option("--graph", ver.graph, "edge list")->required();
  v->add_option("--suites", ver.suites, "comma-separated subset of pt,stochastic,svd,sums,theorem1,bipartite,components")
      ->delimiter(',');
  v->add_option("--tol", ver.tol)->check(CLI::PositiveNumber)->capture_default_str();
  v->add_option("--k", ver.k, "basis size for theorem1")->capture_default_str();
  add_common(v, common, "JSON path (default stdout)");

  auto* b = app.add_subcommand("bound", "closeness of T and B eigenvalues");
  b->add_option("--graph", bnd.graph, "edge list")->required();
  b->add_option("--k", bnd.k)->capture_default_str();
  b->add_option("--mode", bnd.mode)->check(CLI::IsMember({"auto", "dense", "iterative"}))->capture_default_str();
  add_common(b, common, "JSON path (default stdout)");

  auto add_cluster_flags = [&](CLI::App* cmd) {
    cmd->add_option("--mode", clu.mode)->check(CLI::IsMember({"edge_vote", "deflate"}))->capture_default_str();
    cmd->add_option("--variant", clu.variant)
        ->check(CLI::IsMember({"raw_z", "drow_sqrt", "drow_invsqrt"}))
        ->capture_default_str();
    cmd->add_option("--weighting", clu.weighting)->check(CLI::IsMember({"uniform", "drow"}))->capture_default_str();
    cmd->add_option("--eigen", clu.eigen)->check(CLI::IsMember({"auto", "dense", "iterative"}))->capture_default_str();
    cmd->add_option("--truth", clu.truth, "planted labels file");
    add_common(cmd, common, "output prefix for .assign.tsv and .report.json (default: report to stdout)");
  };
  auto* cl = app.add_subcommand("cluster", "spectral clustering of a graph file");
  cl->add_option("--graph", clu.graph, "edge list")->required();
  cl->add_option("--k", clu.k)->capture_default_str();
  add_cluster_flags(cl);

  auto* pl = app.add_subcommand("pipeline", "sample an SBM (or read --graph) and cluster it against the truth");
  pl->add_option("--graph", clu.graph, "edge list instead of sampling");
  add_sbm(pl, clu.sbm, clu.k, false);
  add_cluster_flags(pl);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kParam;
  }

  try {
    if (g->parsed()) return run_gen(gen, common);
    if (s->parsed()) return run_spectrum(spec, common);
    if (v->parsed()) return run_verify(ver, common);
    if (b->parsed()) return run_bound(bnd, common);
    if (cl->parsed()) return run_cluster(clu, common);
    if (pl->parsed()) {
      if (clu.graph.empty() && (clu.sbm.n == 0)) throw Error(Errc::BadParameter, "pipeline needs --graph or --n/--a/--b");
      return run_pipeline(clu, common);
    }
  } catch (const Error& e) {
    std::cerr << "nbspectra: " << e.what() << "\n";
    return exit_code(e);
  } catch (const std::exception& e) {
    std::cerr << "nbspectra: internal error: " << e.what() << "\n";
    return kNumerical;
  }
  return kParam;
}
