#pragma once

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "oraclelab/oracles/marked.hpp"
#include "oraclelab/qsim/rng.hpp"
#include "oraclelab/qsim/state.hpp"

namespace oraclelab {

/// n blocks of n qubits each plus the answer qubit, as separate factors.
struct ProductBlocks {
  std::vector<PureState> blocks;
  PureState answer;
};

/// Channel input: a product of blocks, or a general state on n^2 + 1 qubits
/// (blocks first, answer qubit last).
using ChannelInput = std::variant<ProductBlocks, PureState>;

enum class ChannelReply { ClassicalBit, Qubit };

struct ChannelOutcome {
  std::vector<bool> tests;  // swap-test results, true = pass
  int passes = 0;
  bool flipped = false;                // X was applied to the answer register
  std::optional<bool> bit;             // ClassicalBit reply
  std::optional<DensityOperator> qubit;  // Qubit reply
};

/// Swap-test threshold ceil(kappa * n).
int channel_threshold(double kappa, int n);

/// Single-use channel: swap-tests each input block against its marked state and,
/// if at least ceil(kappa n) pass and the language bit is set, applies X to the
/// answer qubit. The classical-bit reply replaces the answer by |0> and reports
/// the measured output.
class ChannelOracle {
 public:
  ChannelOracle(std::vector<PureState> marked, double kappa, bool language_bit, Rng rng,
                ChannelReply reply = ChannelReply::ClassicalBit);

  ChannelOracle(const ChannelOracle&) = delete;
  ChannelOracle& operator=(const ChannelOracle&) = delete;
  ChannelOracle(ChannelOracle&&) = default;
  ChannelOracle& operator=(ChannelOracle&&) = default;

  int n() const { return static_cast<int>(marked_.size()); }
  double kappa() const { return kappa_; }
  int threshold() const { return channel_threshold(kappa_, n()); }
  bool language_bit() const { return language_bit_; }
  bool consumed() const { return consumed_; }
  ChannelReply reply() const { return reply_; }
  const std::vector<PureState>& marked() const { return marked_; }

  /// Consumes the input and the oracle; a second call throws ConsumedError.
  ChannelOutcome apply(ChannelInput input);

 private:
  std::vector<PureState> marked_;
  double kappa_;
  bool language_bit_;
  Rng rng_;
  ChannelReply reply_;
  bool consumed_ = false;
};

/// Exact probability that the channel applies X, for the given input.
double channel_flip_probability(const std::vector<PureState>& marked, double kappa, bool language_bit,
                                const ChannelInput& input);

/// Exact probability that the returned answer qubit reads 1 (qubit reply).
double channel_output_one_probability(const std::vector<PureState>& marked, double kappa, bool language_bit,
                                      const ChannelInput& input);

/// P(at least t successes) for independent Bernoulli(q_j).
double poisson_binomial_tail(const std::vector<double>& q, int t);

/// Answer-qubit density produced by the six-step emulation of the channel with one
/// query to a marked-state oracle over the n^2 block qubits. Exact, branch-factored.
DensityOperator emulate_channel_output(const MarkedStateOracle& oracle, const PureState& sigma);

/// Same emulation on the literal 2n^2 + 2 qubit register (n^2 <= 6).
DensityOperator emulate_channel_output_literal(const MarkedStateOracle& oracle, const PureState& sigma);

/// Runs the emulation and measures the output qubit.
bool emulate_channel_with_marked_oracle(const MarkedStateOracle& oracle, const PureState& sigma, Rng& rng);

/// Kronecker product of a list of states, first entry leading.
PureState kron_all(const std::vector<PureState>& parts);

}  // namespace oraclelab
