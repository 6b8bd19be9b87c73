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

#ifndef MAPENS_DIAGNOSTICS_H_
#define MAPENS_DIAGNOSTICS_H_

#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "mapens/chain.h"
#include "mapens/metrics.h"

namespace mapens {

// Smallest p-value reported as a number in human-readable output.
inline constexpr double kPValueFloor = 2.2e-16;
inline constexpr double kRHatConvergedBelow = 1.2;

// m chains by n retained observations, row-major.
class TraceMatrix {
 public:
  TraceMatrix(std::size_t chains, std::size_t length, std::vector<double> data);
  // Throws ContractError if the traces differ in length.
  static TraceMatrix from_traces(std::span<const EntropyTrace> traces);

  std::size_t chains() const { return chains_; }
  std::size_t length() const { return length_; }
  std::span<const double> row(std::size_t i) const {
    return {data_.data() + i * length_, length_};
  }

 private:
  std::size_t chains_;
  std::size_t length_;
  std::vector<double> data_;
};

struct GelmanRubin {
  double within = 0.0;       // W
  double pooled = 0.0;       // V-hat
  double r_hat = 0.0;        // V-hat / W, no square root
  double sqrt_r_hat = 0.0;
  bool converged() const { return r_hat < kRHatConvergedBelow; }
};

// W is the mean within-chain sample variance, V-hat = W(n-1)/n plus the
// sample variance of the chain means, R = V-hat / W. Needs m, n >= 2
// (ContractError) and W > 0 (DegenerateVarianceError).
GelmanRubin gelman_rubin(const TraceMatrix& x);

struct TTest {
  double t = 0.0;
  double p = 1.0;
  double df = 0.0;
  double mean = 0.0;
  double sd = 0.0;
};

// Two-sided one-sample t-test of mean(values) against `baseline`.
TTest one_sample_t_test(std::span<const double> values, double baseline);

// "<2.2e-16" below the floor, otherwise a short decimal.
std::string format_p_value(double p);
// 0.0 below the floor, otherwise p unchanged.
double machine_p_value(double p);

struct CompactnessAudit {
  CompactnessStats seed;
  CompactnessStats end;  // worst chain end state: min of mins, mean of means
  bool pass = true;      // every chain's end state passed
};

struct EnsembleReport {
  std::string region;
  double baseline = 0.0;
  double ensemble_mean = 0.0;
  double abs_difference = 0.0;
  double t_value = 0.0;
  double p_value = 1.0;
  std::optional<GelmanRubin> r_hat;
  std::size_t n_samples = 0;
  std::uint64_t n_steps = 0;  // proposals run across all chains
  std::vector<double> chain_means;
  std::vector<double> acceptance_rates;
  std::optional<CompactnessAudit> compactness;
  std::vector<std::string> warnings;

  nlohmann::json to_json() const;
  static EnsembleReport from_json(const nlohmann::json& j);
};

// Pools every chain's values for the mean and t-test; R-hat uses the chains
// as rows and is omitted, with a warning, for a single chain.
EnsembleReport summarize(std::span<const EntropyTrace> traces, double baseline,
                         std::optional<CompactnessAudit> compactness,
                         std::string region = {});

// region,baseline,mean,abs_difference,t_value,p_value
void write_report_csv(std::ostream& out, std::span<const EnsembleReport> rows);
// region,r_hat,sqrt_r_hat,converged
void write_rhat_csv(std::ostream& out, std::span<const EnsembleReport> rows);
// Fixed-width table for terminals.
void print_report(std::ostream& out, const EnsembleReport& report);

}  // namespace mapens

#endif  // MAPENS_DIAGNOSTICS_H_
