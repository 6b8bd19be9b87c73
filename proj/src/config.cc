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

#include "mapens/config.h"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "mapens/errors.h"

namespace mapens {
namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

template <typename T>
T parse_number(const std::string& key, const std::string& value) {
  T out{};
  const auto* end = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc() || ptr != end) {
    throw IngestError("config: bad value '" + value + "' for " + key);
  }
  return out;
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true") return true;
  if (value == "false") return false;
  throw IngestError("config: " + key + " must be true or false");
}

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::vector<std::string> EngineConfig::keys() {
  return {"metrics.groups",
          "metrics.weighting",
          "proposal.max_chunk_size",
          "proposal.enforce_contiguity",
          "proposal.contiguity_attempts",
          "validators.min_population",
          "validators.std_lower_factor",
          "validators.std_upper_factor",
          "validators.std_divisor",
          "chain.steps",
          "chain.burn_in_fraction",
          "chain.thinning",
          "chain.n_chains",
          "chain.base_seed",
          "chain.max_consecutive_rejects",
          "placebo.replicates",
          "placebo.shared_shuffle"};
}

void EngineConfig::set(const std::string& key, const std::string& value) {
  if (key == "metrics.groups") {
    GroupSchema s;
    std::stringstream in(value);
    std::string item;
    while (std::getline(in, item, ',')) s.labels.push_back(trim(item));
    schema = std::move(s);
  } else if (key == "metrics.weighting") {
    try {
      chain.weighting = parse_weighting(value);
    } catch (const ContractError& e) {
      throw IngestError(std::string("config: ") + e.what());
    }
  } else if (key == "proposal.max_chunk_size") {
    proposal.max_chunk_size = parse_number<int>(key, value);
  } else if (key == "proposal.enforce_contiguity") {
    proposal.enforce_contiguity = parse_bool(key, value);
  } else if (key == "proposal.contiguity_attempts") {
    proposal.contiguity_attempts = parse_number<int>(key, value);
  } else if (key == "validators.min_population") {
    validators.min_population = parse_number<std::int64_t>(key, value);
  } else if (key == "validators.std_lower_factor") {
    validators.std_lower_factor = parse_number<double>(key, value);
  } else if (key == "validators.std_upper_factor") {
    validators.std_upper_factor = parse_number<double>(key, value);
  } else if (key == "validators.std_divisor") {
    if (value == "sample") {
      validators.divisor = StdDivisor::kSample;
    } else if (value == "population") {
      validators.divisor = StdDivisor::kPopulation;
    } else {
      throw IngestError("config: validators.std_divisor must be sample or population");
    }
  } else if (key == "chain.steps") {
    chain.steps = parse_number<std::uint64_t>(key, value);
  } else if (key == "chain.burn_in_fraction") {
    chain.burn_in_fraction = parse_number<double>(key, value);
  } else if (key == "chain.thinning") {
    chain.thinning = parse_number<std::uint64_t>(key, value);
  } else if (key == "chain.n_chains") {
    chain.n_chains = parse_number<int>(key, value);
  } else if (key == "chain.base_seed") {
    chain.base_seed = parse_number<std::uint64_t>(key, value);
  } else if (key == "chain.max_consecutive_rejects") {
    chain.max_consecutive_rejects = parse_number<std::uint64_t>(key, value);
  } else if (key == "placebo.replicates") {
    placebo_replicates = parse_number<int>(key, value);
  } else if (key == "placebo.shared_shuffle") {
    placebo_shared_shuffle = parse_bool(key, value);
  } else {
    throw IngestError("config: unknown key '" + key + "'");
  }
}

void EngineConfig::check() const {
  try {
    schema.check();
    proposal.check();
    chain.check();
    ValidatorConfig v = validators;
    v.s0 = 1.0;
    v.check();
  } catch (const ContractError& e) {
    throw IngestError(std::string("config: ") + e.what());
  }
  if (placebo_replicates < 0) {
    throw IngestError("config: placebo.replicates must be >= 0");
  }
}

std::string EngineConfig::canonical() const {
  std::ostringstream out;
  std::string groups;
  for (std::size_t i = 0; i < schema.labels.size(); ++i) {
    groups += (i ? "," : "") + schema.labels[i];
  }
  out << "metrics.groups = " << groups << '\n'
      << "metrics.weighting = " << to_string(chain.weighting) << '\n'
      << "proposal.max_chunk_size = " << proposal.max_chunk_size << '\n'
      << "proposal.enforce_contiguity = "
      << (proposal.enforce_contiguity ? "true" : "false") << '\n'
      << "proposal.contiguity_attempts = " << proposal.contiguity_attempts << '\n'
      << "validators.min_population = " << validators.min_population << '\n'
      << "validators.std_lower_factor = " << fmt_double(validators.std_lower_factor)
      << '\n'
      << "validators.std_upper_factor = " << fmt_double(validators.std_upper_factor)
      << '\n'
      << "validators.std_divisor = "
      << (validators.divisor == StdDivisor::kSample ? "sample" : "population")
      << '\n'
      << "chain.steps = " << chain.steps << '\n'
      << "chain.burn_in_fraction = " << fmt_double(chain.burn_in_fraction) << '\n'
      << "chain.thinning = " << chain.thinning << '\n'
      << "chain.n_chains = " << chain.n_chains << '\n'
      << "chain.base_seed = " << chain.base_seed << '\n'
      << "chain.max_consecutive_rejects = " << chain.max_consecutive_rejects
      << '\n'
      << "placebo.replicates = " << placebo_replicates << '\n'
      << "placebo.shared_shuffle = "
      << (placebo_shared_shuffle ? "true" : "false") << '\n';
  return out.str();
}

std::string EngineConfig::hash() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : canonical()) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

EngineConfig EngineConfig::parse(std::istream& in) {
  EngineConfig cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw IngestError("config line " + std::to_string(lineno) +
                        ": expected key = value");
    }
    cfg.set(trim(std::string_view(t).substr(0, eq)),
            trim(std::string_view(t).substr(eq + 1)));
  }
  return cfg;
}

EngineConfig EngineConfig::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IngestError("cannot open config " + path.string());
  return parse(in);
}

}  // namespace mapens
