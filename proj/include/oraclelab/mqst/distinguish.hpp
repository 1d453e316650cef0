#pragma once

#include <span>
#include <variant>
#include <vector>

#include "oraclelab/oracles/marked.hpp"
#include "oraclelab/qsim/circuit.hpp"
#include "oraclelab/qsim/rng.hpp"
#include "oraclelab/qsim/state.hpp"

namespace oraclelab {

/// 1 - 2 sum_j F(rho, psi_j), rho the marginal of phi on `targets` (ascending).
/// The marked states must be mutually orthogonal.
double overlap_after_phase_flip(const PureState& phi, const std::vector<PureState>& marked, std::span<const int> targets);

struct IndistBound {
  double radicand = 0;  // 2 sqrt(2 k eps) + 4 k eps - 2 (2 k eps)^(3/2)
  double raw = 0;       // sqrt(radicand); NaN when the radicand is negative
  double clamped = 0;   // min(1, raw), and 1 outside k eps < 1/2
  bool in_regime = true;
};

IndistBound indist_bound(int k, double epsilon);

/// Leading-order form 3 (k eps)^(1/4).
double indist_bound_leading(int k, double epsilon);

/// A strategy step is a gate circuit or a dense unitary on the whole register.
using StrategyStep = std::variant<Circuit, ComplexMatrix>;

/// T_1 .. T_{k+1} on `width` qubits; the oracle acts on qubits 0..n-1 between steps.
struct Strategy {
  int width = 1;
  std::vector<StrategyStep> steps;
  std::string name = "custom";

  int queries() const { return static_cast<int>(steps.size()) - 1; }
};

struct DistinguishRun {
  int k = 0;
  double epsilon = 0;             // max over prefixes of the measured marked fidelity
  double distance_at_query = 0;   // after the k-th query, before T_{k+1}
  double distance = 0;            // after T_{k+1}
  double marginal_distance = 0;   // after T_{k+1}, on the oracle qubits only
  IndistBound bound;
  bool violated = false;
};

/// Simulates T_{k+1} U T_k ... U T_1 |0> with U = identity and U = the oracle.
DistinguishRun run_mqst_distinguish(const Strategy& strategy, const MarkedStateOracle& oracle);

Strategy random_strategy(int width, int k, int depth, Rng& rng, const GateSet& gates = default_gate_set());

/// Unitary on the full register whose first column is `target`.
ComplexMatrix unitary_with_first_column(const Amplitudes& target);

/// T_1 prepares sqrt(eps) |psi>|0..> + sqrt(1-eps) |gamma> with gamma orthogonal to
/// psi on the oracle qubits; every later step is the identity.
Strategy near_marked_strategy(const PureState& marked, int width, int k, double epsilon, Rng& rng);

/// As near_marked_strategy, but T_2..T_k reflect about the prepared state, so the
/// identity branch stays put while the flipped branch rotates toward the marked state.
Strategy amplifying_strategy(const PureState& marked, int width, int k, double epsilon, Rng& rng);

}  // namespace oraclelab
