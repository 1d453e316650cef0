#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "oraclelab/oracles/bitstring.hpp"
#include "oraclelab/qsim/circuit.hpp"
#include "oraclelab/qsim/rng.hpp"
#include "oraclelab/qsim/state.hpp"

namespace oraclelab {

/// Number of binary digits retained from each oracle entry, 1..64.
struct PrecisionBits {
  int p = 32;

  explicit PrecisionBits(int bits);
};

/// ceil(1 / eps).
int p_of_epsilon(double epsilon);

/// Control register on qubits 0..p-1 (most significant digit first), target on
/// qubit p. Maps |b>|0> to |b>(cos(pi 0.b / 2)|0> + sin(pi 0.b / 2)|1>).
Circuit build_crot(PrecisionBits bits);

/// Phase exp(2 pi i 0.b) on the p-qubit register |b>.
Circuit build_cph(PrecisionBits bits);

struct Preparation {
  PureState state;
  std::uint64_t queries = 0;
  /// Largest ancilla norm left after any uncompute step; exact arithmetic gives 0.
  double max_ancilla_residual = 0;
};

/// Amplitude cascade then phase pass, each digit fetched by a coherent oracle query
/// on the branch superposition and uncomputed afterwards. Uses 2p(n+1) queries.
Preparation prepare_via_oracle(const BitStringOracle& oracle, PrecisionBits bits);

/// Same routine on an explicit qubit register of width n + p + max(1, ceil(log2 p)),
/// with build_crot / build_cph style gates. Limited by the register cap.
Preparation prepare_via_oracle_dense(const BitStringOracle& oracle, PrecisionBits bits);

/// Walks the prefix tree reading alpha digits until the branch is decided (at most p
/// per level). One query per digit.
std::uint64_t classical_z_sample(const BitStringOracle& oracle, PrecisionBits bits, Rng& rng);

/// Law of classical_z_sample, from the stored table without queries.
std::vector<double> z_sampler_distribution(const BitStringOracle& oracle, PrecisionBits bits);

/// |<z| H^n |psi>|^2 for every z.
std::vector<double> rotated_probabilities(const PureState& psi);

/// Mean of |<z_j| H^n |psi>|^2 (or |<z_j|psi>|^2 when rotate is false) over distinct samples.
double rxhog_score(const PureState& reference, const std::vector<std::uint64_t>& samples, bool rotate = true);

enum class RxhogStrategy { Quantum, ZSampler, PhaseProbe, PhaseProbeAdaptive, TableOnly };

std::string_view to_string(RxhogStrategy s);
RxhogStrategy rxhog_strategy_from_string(std::string_view name);

struct ClassicalStrategy {
  RxhogStrategy kind = RxhogStrategy::ZSampler;
  /// |S_ph| for phase-probe; the adaptive variant reads its first half at full precision.
  int probes = 0;
  /// Oracle query budget; 0 picks a default that fits the strategy.
  std::uint64_t budget = 0;
};

struct RxhogRun {
  int n = 0;
  int k = 0;
  int precision = 0;
  RxhogStrategy strategy = RxhogStrategy::Quantum;
  std::vector<std::uint64_t> samples;
  double score = 0;
  /// Score averaged over the solver's own randomness for this reference; equal to
  /// score for deterministic solvers, NaN where not computed (randomized, k > 1).
  double expected_score = 0;
  std::uint64_t queries = 0;
  std::vector<std::uint64_t> probed;  // S_ph
  /// Quantum solver only: |<prepared|reference>|^2 and the preparation's ancilla residual.
  double preparation_overlap = 0;
  double ancilla_residual = 0;
};

/// Draws until k distinct values are seen; throws BudgetExceeded after 100 k draws.
template <typename Draw>
std::vector<std::uint64_t> distinct_draws(int k, Draw&& draw);

RxhogRun quantum_rxhog_solver(const BitStringOracle& oracle, int k, PrecisionBits bits, Rng& rng);

/// table holds |<b|psi>|^2 for every b. Phases come only from oracle queries.
RxhogRun classical_rxhog_solver(const ClassicalStrategy& strategy, const BitStringOracle& oracle,
                                const std::vector<double>& table, int k, PrecisionBits bits, Rng& rng);

/// Known-phase component sum_{l in S} |beta_l| e^{2 pi i phi_l} |l>, unnormalized.
Amplitudes known_component(const std::vector<double>& table, const std::vector<std::uint64_t>& probed,
                           const std::vector<double>& phases);

/// Triangle-inequality ceiling (sum_{l in S} |beta_l|)^2 / 2^n on |<z|H^n|eta>|^2.
double concentration_ceiling(const std::vector<double>& table, const std::vector<std::uint64_t>& probed);

/// 1/2^n + n^4 / 2^(2n).
double classical_ceiling(int n);

struct RxhogTrialConfig {
  int n = 6;
  int k = 1;
  int precision = 32;
  int probes = -1;  // -1 means n^2
  std::uint64_t budget = 0;
  std::uint64_t seed = 0;

  void validate() const;
  int probe_count() const { return probes < 0 ? n * n : probes; }
};

/// One Haar reference per trial index, shared by every strategy at that index.
PureState rxhog_reference(const RxhogTrialConfig& cfg, int trial);
RxhogRun run_rxhog_trial(const RxhogTrialConfig& cfg, RxhogStrategy strategy, int trial);

// ---------------------------------------------------------------------------

template <typename Draw>
std::vector<std::uint64_t> distinct_draws(int k, Draw&& draw) {
  std::vector<std::uint64_t> out;
  const long cap = 100L * k;
  for (long d = 0; static_cast<int>(out.size()) < k; ++d) {
    if (d >= cap) throw BudgetExceeded("no " + std::to_string(k) + " distinct samples within " + std::to_string(cap) + " draws");
    const std::uint64_t z = draw();
    bool seen = false;
    for (std::uint64_t s : out) seen = seen || s == z;
    if (!seen) out.push_back(z);
  }
  return out;
}

}  // namespace oraclelab
