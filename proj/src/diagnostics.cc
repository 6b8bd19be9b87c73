// Copyright 2026 The mapens Authors.
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

#include "mapens/diagnostics.h"

#include <cmath>
#include <cstdio>

#include <boost/math/distributions/students_t.hpp>

#include "mapens/errors.h"
#include "mapens/kernels.h"

namespace mapens {
namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

nlohmann::json compactness_json(const CompactnessStats& s) {
  return {{"min_pp", s.min_pp}, {"mean_pp", s.mean_pp}};
}

CompactnessStats compactness_from(const nlohmann::json& j) {
  return {j.at("min_pp").get<double>(), j.at("mean_pp").get<double>()};
}

}  // namespace

TraceMatrix::TraceMatrix(std::size_t chains, std::size_t length,
                         std::vector<double> data)
    : chains_(chains), length_(length), data_(std::move(data)) {
  if (data_.size() != chains_ * length_) {
    throw ContractError("trace matrix data does not match its shape");
  }
}

TraceMatrix TraceMatrix::from_traces(std::span<const EntropyTrace> traces) {
  const std::size_t n = traces.empty() ? 0 : traces.front().values.size();
  std::vector<double> data;
  data.reserve(traces.size() * n);
  for (const auto& t : traces) {
    if (t.values.size() != n) {
      throw ContractError("traces have different lengths");
    }
    data.insert(data.end(), t.values.begin(), t.values.end());
  }
  return TraceMatrix(traces.size(), n, std::move(data));
}

GelmanRubin gelman_rubin(const TraceMatrix& x) {
  const std::size_t m = x.chains();
  const std::size_t n = x.length();
  if (m < 2 || n < 2) {
    throw ContractError("Gelman-Rubin needs at least two chains of length two");
  }
  std::vector<double> means(m);
  double within_ss = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    means[i] = kernels::sum(x.row(i)) / static_cast<double>(n);
    within_ss += kernels::sum_sq_dev(x.row(i), means[i]);
  }
  GelmanRubin g;
  g.within = within_ss / (static_cast<double>(m) * static_cast<double>(n - 1));
  if (!(g.within > 0.0)) {
    throw DegenerateVarianceError("every chain is constant; W = 0");
  }
  const double grand = kernels::sum(means) / static_cast<double>(m);
  const double between =
      kernels::sum_sq_dev(means, grand) / static_cast<double>(m - 1);
  g.pooled = g.within * static_cast<double>(n - 1) / static_cast<double>(n) +
             between;
  g.r_hat = g.pooled / g.within;
  g.sqrt_r_hat = std::sqrt(g.r_hat);
  return g;
}

TTest one_sample_t_test(std::span<const double> values, double baseline) {
  const std::size_t n = values.size();
  if (n < 2) throw ContractError("t-test needs at least two values");
  TTest r;
  r.mean = kernels::sum(values) / static_cast<double>(n);
  r.sd = std::sqrt(kernels::sum_sq_dev(values, r.mean) /
                   static_cast<double>(n - 1));
  if (!(r.sd > 0.0)) {
    throw DegenerateVarianceError("t-test sample has zero variance");
  }
  r.df = static_cast<double>(n - 1);
  r.t = (r.mean - baseline) / (r.sd / std::sqrt(static_cast<double>(n)));
  const boost::math::students_t dist(r.df);
  r.p = std::min(1.0, 2.0 * boost::math::cdf(boost::math::complement(
                                dist, std::abs(r.t))));
  return r;
}

std::string format_p_value(double p) {
  if (p < kPValueFloor) return "<2.2e-16";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", p);
  return buf;
}

double machine_p_value(double p) { return p < kPValueFloor ? 0.0 : p; }

nlohmann::json EnsembleReport::to_json() const {
  nlohmann::json j = {{"region", region},
                      {"baseline", baseline},
                      {"ensemble_mean", ensemble_mean},
                      {"abs_difference", abs_difference},
                      {"t_value", t_value},
                      {"p_value", machine_p_value(p_value)},
                      {"p_value_display", format_p_value(p_value)},
                      {"n_samples", n_samples},
                      {"n_steps", n_steps},
                      {"chain_means", chain_means},
                      {"acceptance_rates", acceptance_rates},
                      {"warnings", warnings}};
  if (r_hat) {
    j["r_hat"] = r_hat->r_hat;
    j["sqrt_r_hat"] = r_hat->sqrt_r_hat;
    j["within_variance"] = r_hat->within;
    j["pooled_variance"] = r_hat->pooled;
    j["converged"] = r_hat->converged();
  } else {
    j["r_hat"] = nullptr;
  }
  if (compactness) {
    j["compactness"] = {{"seed", compactness_json(compactness->seed)},
                        {"end", compactness_json(compactness->end)},
                        {"pass", compactness->pass}};
  } else {
    j["compactness"] = nullptr;
  }
  return j;
}

EnsembleReport EnsembleReport::from_json(const nlohmann::json& j) {
  EnsembleReport r;
  r.region = j.at("region").get<std::string>();
  r.baseline = j.at("baseline").get<double>();
  r.ensemble_mean = j.at("ensemble_mean").get<double>();
  r.abs_difference = j.at("abs_difference").get<double>();
  r.t_value = j.at("t_value").get<double>();
  r.p_value = j.at("p_value").get<double>();
  r.n_samples = j.at("n_samples").get<std::size_t>();
  r.n_steps = j.at("n_steps").get<std::uint64_t>();
  r.chain_means = j.at("chain_means").get<std::vector<double>>();
  r.acceptance_rates = j.at("acceptance_rates").get<std::vector<double>>();
  r.warnings = j.at("warnings").get<std::vector<std::string>>();
  if (!j.at("r_hat").is_null()) {
    GelmanRubin g;
    g.r_hat = j.at("r_hat").get<double>();
    g.sqrt_r_hat = j.at("sqrt_r_hat").get<double>();
    g.within = j.at("within_variance").get<double>();
    g.pooled = j.at("pooled_variance").get<double>();
    r.r_hat = g;
  }
  if (!j.at("compactness").is_null()) {
    const auto& c = j.at("compactness");
    r.compactness = CompactnessAudit{compactness_from(c.at("seed")),
                                     compactness_from(c.at("end")),
                                     c.at("pass").get<bool>()};
  }
  return r;
}

EnsembleReport summarize(std::span<const EntropyTrace> traces, double baseline,
                         std::optional<CompactnessAudit> compactness,
                         std::string region) {
  if (traces.empty()) throw ContractError("summarize needs at least one trace");
  EnsembleReport r;
  r.region = std::move(region);
  r.baseline = baseline;
  r.compactness = compactness;

  std::vector<double> pooled;
  for (const auto& t : traces) {
    pooled.insert(pooled.end(), t.values.begin(), t.values.end());
    r.chain_means.push_back(
        t.values.empty() ? 0.0
                         : kernels::sum(t.values) /
                               static_cast<double>(t.values.size()));
    r.acceptance_rates.push_back(t.acceptance_rate());
    r.n_steps += t.accept_count + t.reject_count;
  }
  r.n_samples = pooled.size();
  const TTest tt = one_sample_t_test(pooled, baseline);
  r.ensemble_mean = tt.mean;
  r.abs_difference = std::abs(baseline - tt.mean);
  r.t_value = tt.t;
  r.p_value = tt.p;

  if (traces.size() < 2) {
    r.warnings.push_back("R-hat omitted: needs at least two chains");
  } else {
    try {
      r.r_hat = gelman_rubin(TraceMatrix::from_traces(traces));
    } catch (const DegenerateVarianceError& e) {
      r.warnings.push_back(std::string("R-hat omitted: ") + e.what());
    }
  }
  return r;
}

void write_report_csv(std::ostream& out, std::span<const EnsembleReport> rows) {
  out << "region,baseline,mean,abs_difference,t_value,p_value\n";
  for (const auto& r : rows) {
    out << r.region << ',' << num(r.baseline) << ',' << num(r.ensemble_mean)
        << ',' << num(r.abs_difference) << ',' << num(r.t_value) << ','
        << num(machine_p_value(r.p_value)) << '\n';
  }
}

void write_rhat_csv(std::ostream& out, std::span<const EnsembleReport> rows) {
  out << "region,r_hat,sqrt_r_hat,converged\n";
  for (const auto& r : rows) {
    out << r.region << ',';
    if (r.r_hat) {
      out << num(r.r_hat->r_hat) << ',' << num(r.r_hat->sqrt_r_hat) << ','
          << (r.r_hat->converged() ? "true" : "false") << '\n';
    } else {
      out << ",,\n";
    }
  }
}

void print_report(std::ostream& out, const EnsembleReport& r) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "%-14s %9s %9s %9s %10s %10s\n", "Region",
                "Baseline", "Mean", "AD", "t", "Pr>=|t|");
  out << buf;
  std::snprintf(buf, sizeof buf, "%-14s %9.3f %9.3f %9.3f %10.1f %10s\n",
                r.region.empty() ? "-" : r.region.c_str(), r.baseline,
                r.ensemble_mean, r.abs_difference, r.t_value,
                format_p_value(r.p_value).c_str());
  out << buf;
  if (r.r_hat) {
    std::snprintf(buf, sizeof buf, "R-hat %.3f (sqrt %.3f)%s\n", r.r_hat->r_hat,
                  r.r_hat->sqrt_r_hat,
                  r.r_hat->converged() ? ", converged" : ", not converged");
    out << buf;
  }
  if (r.compactness) {
    std::snprintf(buf, sizeof buf,
                  "Polsby-Popper min/mean: seed %.3f/%.3f, end %.3f/%.3f, %s\n",
                  r.compactness->seed.min_pp, r.compactness->seed.mean_pp,
                  r.compactness->end.min_pp, r.compactness->end.mean_pp,
                  r.compactness->pass ? "pass" : "FAIL");
    out << buf;
  }
  for (const auto& w : r.warnings) out << "warning: " << w << '\n';
}

}  // namespace mapens
