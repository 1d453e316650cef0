#include "oraclelab/oracles/descriptor.hpp"

#include <array>

#include "oraclelab/qsim/random.hpp"

namespace oraclelab {

namespace {

constexpr std::array<std::pair<OracleKind, const char*>, 5> kNames = {{{OracleKind::Marked, "marked"},
                                                                       {OracleKind::Mqso, "mqso"},
                                                                       {OracleKind::Grover, "grover"},
                                                                       {OracleKind::Channel, "channel"},
                                                                       {OracleKind::BitString, "bitstring"}}};

}  // namespace

std::string to_string(OracleKind kind) {
  for (const auto& [k, name] : kNames)
    if (k == kind) return name;
  return "?";
}

OracleKind oracle_kind_from_string(const std::string& name) {
  for (const auto& [k, label] : kNames)
    if (name == label) return k;
  throw InvalidInput("unknown oracle kind '" + name + "'");
}

Json descriptor_to_json(const OracleDescriptor& d) {
  Json j = {{"kind", to_string(d.kind)}, {"n", d.n}, {"seed", d.seed}};
  switch (d.kind) {
    case OracleKind::Marked: j["active"] = d.active; break;
    case OracleKind::Mqso: j["language_seed"] = d.language_seed; break;
    case OracleKind::Grover:
      j["language_seed"] = d.language_seed;
      j["conjugated"] = d.conjugated;
      break;
    case OracleKind::Channel:
      j["language_seed"] = d.language_seed;
      j["kappa"] = d.kappa;
      break;
    case OracleKind::BitString: break;
  }
  return j;
}

OracleDescriptor descriptor_from_json(const Json& j) {
  detail::require(j.is_object(), "oracle descriptor must be an object");
  OracleDescriptor d;
  for (const auto& [key, value] : j.items()) {
    if (key == "kind") d.kind = oracle_kind_from_string(value.get<std::string>());
    else if (key == "n") d.n = value.get<int>();
    else if (key == "seed") d.seed = value.get<std::uint64_t>();
    else if (key == "kappa") d.kappa = value.get<double>();
    else if (key == "language_seed") d.language_seed = value.get<std::uint64_t>();
    else if (key == "active") d.active = value.get<bool>();
    else if (key == "conjugated") d.conjugated = value.get<bool>();
    else throw InvalidInput("unknown oracle descriptor field '" + key + "'");
  }
  detail::require(j.contains("kind") && j.contains("n") && j.contains("seed"), "oracle descriptor needs kind, n and seed");
  return d;
}

OracleInstance make_oracle(const OracleDescriptor& d) {
  check_width(d.n);
  Rng rng = Rng::derive(d.seed, 0, "oracle");
  switch (d.kind) {
    case OracleKind::Marked: return MarkedStateOracle(haar_random_state(d.n, rng), d.active);
    case OracleKind::Mqso:
      return MqsoOracle(haar_random_state(d.n, rng), LanguageTable::random({d.n}, d.language_seed));
    case OracleKind::Grover: {
      const std::uint64_t secret = rng.below(std::uint64_t{1} << d.n);
      return GroverStandardOracle(d.n, secret, LanguageTable::random({d.n}, d.language_seed), d.conjugated);
    }
    case OracleKind::Channel: {
      std::vector<PureState> marked;
      for (int j = 0; j < d.n; ++j) marked.push_back(haar_random_state(d.n, rng));
      const bool bit = Rng::derive(d.language_seed, static_cast<std::uint64_t>(d.n), "unary-language").coin();
      return ChannelOracle(std::move(marked), d.kappa, bit, rng.split("channel"));
    }
    case OracleKind::BitString: return BitStringOracle(haar_random_state(d.n, rng));
  }
  throw InvalidInput("unknown oracle kind");
}

}  // namespace oraclelab
