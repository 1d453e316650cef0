#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "oraclelab/qsim/circuit.hpp"
#include "oraclelab/qsim/serialize.hpp"
#include "oraclelab/qsim/state.hpp"

namespace oraclelab {

/// Every circuit of length 0..max_len over `gates` on `width` qubits, ordered
/// by length, then lexicographically by (gate kind rank, target tuple).
std::vector<Circuit> enumerate_circuits(const GateSet& gates, int width, int max_len);

/// All single-gate placements in enumeration order.
std::vector<GateOp> gate_placements(const GateSet& gates, int width);

/// Lazy version of enumerate_circuits starting at `min_len`, unbounded in length.
class CircuitStream {
 public:
  CircuitStream(const GateSet& gates, int width, int min_len);

  Circuit next();
  std::uint64_t emitted() const { return emitted_; }

 private:
  int width_;
  std::vector<GateOp> placements_;
  std::vector<std::size_t> digits_;
  std::uint64_t emitted_ = 0;
};

struct EnumerationConfig {
  int n = 1;
  int f = 1;
  double epsilon = 0.5;
  GateSet gate_set = default_gate_set();
  std::uint64_t index = 0;
  std::uint64_t budget = 100000;

  void validate() const;
  /// Register width for the avoided-marginal seed: max(n, min(c f, 3n)).
  int seed_width() const;
};

struct HardStateRecord {
  std::uint64_t index = 0;
  Circuit witness{1};
  PureState state = PureState::zero(1);
  /// Largest fidelity with any avoided marginal or earlier hard state.
  double certificate = 0;
};

struct StateDiagResult {
  std::optional<HardStateRecord> record;
  /// Hard states for indices 0..i-1 accumulated on the way.
  std::vector<HardStateRecord> earlier;
  std::uint64_t circuits_examined = 0;
  int seed_width = 0;
  std::size_t distinct_marginals = 0;

  bool budget_exhausted() const { return !record.has_value(); }
};

/// Distinct n-qubit marginals (first n qubits) of all circuits with at most f
/// gates on cfg.seed_width() qubits. `examined` receives the circuit count.
std::vector<DensityOperator> avoided_marginals(const EnumerationConfig& cfg, std::uint64_t* examined = nullptr);

StateDiagResult state_diag(const EnumerationConfig& cfg);

/// floor((1-eps)^(1-2^n) - r), clamped at 0 and saturated at 2^64-1.
std::uint64_t min_hard_state_count(int n, double epsilon, double r);

/// max(0, 1 - r (1-eps)^(2^n - 1)).
double random_avoidance_probability(int n, double epsilon, double r);

Json config_to_json(const EnumerationConfig& cfg);
Json hard_state_to_json(const HardStateRecord& record, const EnumerationConfig& cfg);

}  // namespace oraclelab
