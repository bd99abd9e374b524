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


// JSON forms of the reports. Keys keep insertion order; doubles print as the
// shortest decimal that round-trips, which is deterministic.

#ifndef NBSPECTRA_REPORT_HPP
#define NBSPECTRA_REPORT_HPP

#include <string>

#include <json.hpp>

#include "nbspectra/cluster.hpp"
#include "nbspectra/perturb.hpp"
#include "nbspectra/sbm.hpp"
#include "nbspectra/verify.hpp"

namespace nbspectra::report {

using Json = nlohmann::ordered_json;

inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

template <class T>
Json optional_value(const std::optional<T>& v) {
  return v ? Json(*v) : Json(nullptr);
}

inline Json sbm_meta(const SbmParams& p, const SbmMeta& m) {
  Json params;
  params["n"] = p.n;
  params["k"] = p.k;
  params["a"] = p.a;
  params["b"] = p.b;
  params["proportions"] = block_fractions(p);
  params["seed"] = p.seed;
  Json expected;
  expected["c"] = m.expected.c;
  expected["mu"] = m.expected.mu;
  expected["snr"] = m.expected.snr;
  expected["detectable"] = m.expected.detectable;
  Json sampled;
  sampled["n_sampled"] = m.n_sampled;
  sampled["m_sampled"] = m.m_sampled;
  sampled["n"] = m.n;
  sampled["m"] = m.m;
  sampled["empirical_mean_degree"] = m.empirical_mean_degree;
  sampled["core_mean_degree"] = m.core_mean_degree;
  sampled["surviving_fraction"] = m.surviving_fraction;
  sampled["max_degree_deviation"] = m.max_degree_deviation;
  Json out;
  out["params"] = std::move(params);
  out["expected"] = std::move(expected);
  out["sampled"] = std::move(sampled);
  return out;
}

inline Json bound(const BoundReport& r) {
  Json out;
  out["k"] = r.k;
  out["kappa_numeric"] = r.kappa_numeric;
  out["kappa_bound_ratio"] = r.kappa_bound_ratio;
  out["kappa_bound_gap"] = r.kappa_bound_gap;
  out["R_numeric"] = r.R_numeric;
  out["R_paper"] = r.R_paper.closed_form;
  Json matches = Json::array();
  for (const auto& m : r.match.matches) {
    Json e;
    e["lambda"] = m.lambda;
    e["mu_ratio"] = m.mu_ratio;
    e["deviation"] = m.deviation;
    e["within_R"] = m.within_R;
    matches.push_back(std::move(e));
  }
  out["matches"] = std::move(matches);
  Json d;
  d["lambdas"] = r.lambdas;
  d["mus"] = r.mus;
  d["R_paper_raw"] = r.R_paper.raw;
  d["perturbation_norm"] = r.perturbation_norm;
  d["lambda_kplus1"] = r.lambda_kplus1;
  d["lambda_kplus1_measured"] = r.lambda_kplus1_measured;
  d["w_norm"] = r.w_norm;
  d["w_norm_bound"] = r.w_norm_bound;
  d["min_lambda"] = r.min_lambda;
  d["gap_assumption_holds"] = r.gap_assumption_holds;
  d["kappa_within_bounds"] = r.kappa_within_bounds;
  d["perron_in_range"] = r.match.perron_in_range;
  d["c"] = r.c;
  d["d_min"] = r.d_min;
  d["d_max"] = r.d_max;
  out["diagnostics"] = std::move(d);
  return out;
}

inline Json pipeline(const PipelineReport& r) {
  Json out;
  out["lambda"] = r.lambda;
  out["mu"] = r.mu;
  out["R_paper"] = r.R_paper;
  out["R_numeric"] = optional_value(r.R_numeric);
  out["objective"] = r.objective;
  out["overlap"] = optional_value(r.overlap);
  out["mode"] = to_string(r.mode);
  out["fallback"] = r.fallback;
  Json seeds;
  seeds["seed"] = r.seeds.seed;
  seeds["eigen"] = r.seeds.eigen;
  seeds["kmeans"] = r.seeds.kmeans;
  out["seeds"] = std::move(seeds);
  return out;
}

inline Json verify(const VerifyReport& r, const SimpleGraph& g, double tol) {
  Json out;
  out["n"] = g.node_count();
  out["m"] = g.edge_count();
  out["tol"] = tol;
  out["passed"] = r.ok();
  Json checks = Json::array();
  for (const auto& f : r.findings) {
    Json c;
    c["suite"] = f.suite;
    c["check"] = f.check;
    c["status"] = to_string(f.status);
    c["measured"] = f.measured;
    c["tolerance"] = f.tolerance;
    c["note"] = f.note;
    checks.push_back(std::move(c));
  }
  out["checks"] = std::move(checks);
  return out;
}

}  // namespace nbspectra::report

#endif  // NBSPECTRA_REPORT_HPP
