#pragma once

#include <cstdint>
#include <vector>

#include "oraclelab/oracles/grover.hpp"
#include "oraclelab/qsim/rng.hpp"

namespace oraclelab {

/// floor(pi/4 sqrt(2^n)), at least 1.
int grover_iterations(int n);

/// First register after `iterations` rounds of oracle + diffusion for fixed y, in the
/// computational frame (a measurement here yields the candidate string).
PureState grover_amplify(const GroverStandardOracle& oracle, std::uint64_t y, int iterations);

struct SearchResult {
  std::uint64_t candidate = 0;
  bool found = false;
  std::uint64_t queries = 0;
  int attempts = 0;
};

/// Repeat amplify, measure, verify with one query until the secret verifies.
SearchResult grover_search(const GroverStandardOracle& oracle, std::uint64_t y, Rng& rng, int max_attempts = 64);

/// Probe distinct strings in random order, one query each, until one verifies.
SearchResult classical_search(const GroverStandardOracle& oracle, std::uint64_t y, Rng& rng);

struct ScalingRow {
  int n = 0;
  double quantum_median = 0;
  double classical_median = 0;
  int trials = 0;
  int quantum_failures = 0;
};

ScalingRow grover_scaling_row(int n, int trials, std::uint64_t seed, bool conjugated = true);
std::vector<ScalingRow> grover_query_scaling(const std::vector<int>& ns, int trials, std::uint64_t seed, bool conjugated = true);

double median(std::vector<double> values);

}  // namespace oraclelab
