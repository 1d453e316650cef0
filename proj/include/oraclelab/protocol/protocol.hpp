#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "oraclelab/oracles/channel.hpp"
#include "oraclelab/protocol/messages.hpp"
#include "oraclelab/qsim/circuit.hpp"
#include "oraclelab/qsim/rng.hpp"

namespace oraclelab {

/// Server-side instance: for each j a random circuit c_j on 2n qubits, the outcome
/// m_j of measuring its first n qubits, and the resulting state of the last n.
struct ServerRecord {
  int n = 1;
  int depth = 1;
  double kappa = 5.0 / 6.0;
  std::vector<Circuit> circuits;
  std::vector<std::uint64_t> outcomes;
  std::vector<PureState> marked;
  bool language_bit = false;
};

ServerRecord server_generate(int n, int depth, double kappa, Rng& rng, std::optional<bool> force_language_bit = {});

/// Last n qubits of a 2n-qubit state after projecting the first n onto `outcome`.
PureState conditional_half(const PureState& full, std::uint64_t outcome);

/// Classical information Merlin and Arthur see.
struct BroadcastInfo {
  int n = 1;
  std::vector<Circuit> circuits;
  std::vector<std::uint64_t> outcomes;
};

/// {"n", "pairs": [{"circuit", "outcome"}]}; nothing else.
Json broadcast(const ServerRecord& record);
/// Validates the broadcast schema; rejects any extra field.
BroadcastInfo parse_broadcast(const Json& payload);

struct HonestMerlinResult {
  std::optional<QuantumTransfer> transfer;
  std::vector<std::uint64_t> attempts;  // per block; the failing block holds its partial count
  std::uint64_t shots = 0;
  bool budget_exhausted = false;
};

/// Rejection sampling: rerun c_j and measure until the outcome is m_j. The budget
/// bounds the total number of runs over all blocks.
HonestMerlinResult merlin_honest(const BroadcastInfo& info, std::uint64_t shot_budget, Rng& rng);

enum class MerlinKind { Honest, Haar, Vacuum, Permuted };
std::string_view to_string(MerlinKind kind);
MerlinKind merlin_kind_from_string(std::string_view name);

/// Haar: independent Haar blocks. Vacuum: |0..0> blocks. Permuted: honest copies
/// shifted cyclically by one position (falls back to failure if sampling fails).
HonestMerlinResult merlin_dishonest(MerlinKind kind, const BroadcastInfo& info, std::uint64_t shot_budget, Rng& rng);

struct ProtocolConfig {
  int n = 6;
  int depth = 64;
  double kappa = 5.0 / 6.0;
  MerlinKind merlin = MerlinKind::Honest;
  std::uint64_t seed = 0;
  std::uint64_t trial = 0;
  std::uint64_t shot_budget = 1000000;
  /// Per block, with this probability the transmitted block is replaced by a state
  /// orthogonal to the one sent, so the pass probability becomes 1 - noise/2.
  double noise = 0;
  ChannelReply reply = ChannelReply::ClassicalBit;
  std::optional<bool> force_language_bit;

  void validate() const;
};

struct ProtocolTranscript {
  Json header;
  std::vector<Json> messages;
  bool accept = false;
  bool language_bit = false;
  std::string failure;
  std::vector<std::uint64_t> merlin_attempts;
  std::uint64_t merlin_shots = 0;
  int tests = 0;
  int passes = 0;
  std::size_t quantum_transfers = 0;
  /// Exact acceptance probability for the blocks that reached the oracle.
  double exact_accept = 0;
};

ProtocolTranscript run_protocol(const ProtocolConfig& cfg);

/// Header line followed by one line per message.
std::string transcript_to_jsonl(const ProtocolTranscript& t);

}  // namespace oraclelab
