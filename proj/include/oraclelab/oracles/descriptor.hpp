#pragma once

#include <cstdint>
#include <string>
#include <variant>

#include "oraclelab/oracles/bitstring.hpp"
#include "oraclelab/oracles/channel.hpp"
#include "oraclelab/oracles/grover.hpp"
#include "oraclelab/oracles/marked.hpp"
#include "oraclelab/qsim/serialize.hpp"

namespace oraclelab {

enum class OracleKind { Marked, Mqso, Grover, Channel, BitString };

std::string to_string(OracleKind kind);
OracleKind oracle_kind_from_string(const std::string& name);

/// Seeded recipe for one oracle instance.
struct OracleDescriptor {
  OracleKind kind = OracleKind::Marked;
  int n = 1;
  std::uint64_t seed = 0;
  double kappa = 5.0 / 6.0;          // channel only
  std::uint64_t language_seed = 0;   // MQSO, Grover, channel
  bool active = true;                // marked only
  bool conjugated = false;           // Grover only

  friend bool operator==(const OracleDescriptor&, const OracleDescriptor&) = default;
};

Json descriptor_to_json(const OracleDescriptor& d);
OracleDescriptor descriptor_from_json(const Json& j);

using OracleInstance = std::variant<MarkedStateOracle, MqsoOracle, GroverStandardOracle, ChannelOracle, BitStringOracle>;

/// Builds the oracle; hidden data (marked states, secret, language) is drawn from the seeds.
OracleInstance make_oracle(const OracleDescriptor& d);

}  // namespace oraclelab
