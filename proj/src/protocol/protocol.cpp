#include "oraclelab/protocol/protocol.hpp"

#include <cmath>

#include "oraclelab/qsim/apply.hpp"
#include "oraclelab/qsim/measurement.hpp"
#include "oraclelab/qsim/random.hpp"

namespace oraclelab {

namespace {

Eigen::VectorXd first_half_distribution(const PureState& full) {
  const auto first = qubit_range(0, full.n_qubits() / 2);
  return outcome_distribution(full, std::span<const int>(first));
}

PureState orthogonal_replacement(const PureState& block, Rng& rng) {
  auto g = haar_random_state(block.n_qubits(), rng).release();
  g -= block.amplitudes().dot(g) * block.amplitudes();
  return PureState::normalized(std::move(g));
}

}  // namespace

PureState conditional_half(const PureState& full, std::uint64_t outcome) {
  const int n = full.n_qubits() / 2;
  detail::require(full.n_qubits() == 2 * n, "register must have an even number of qubits");
  const Eigen::Index half = Eigen::Index{1} << n;
  detail::require(outcome < static_cast<std::uint64_t>(half), "outcome out of range");
  return PureState::normalized(full.amplitudes().segment(static_cast<Eigen::Index>(outcome) * half, half));
}

ServerRecord server_generate(int n, int depth, double kappa, Rng& rng, std::optional<bool> force_language_bit) {
  detail::require(n >= 1, "n must be positive");
  detail::require(depth >= 1, "depth must be positive");
  check_width(2 * n);
  channel_threshold(kappa, n);
  ServerRecord rec;
  rec.n = n;
  rec.depth = depth;
  rec.kappa = kappa;
  for (int j = 0; j < n; ++j) {
    Circuit c = random_circuit(2 * n, depth, rng);
    const auto full = apply_circuit(PureState::zero(2 * n), c);
    const std::uint64_t m = sample_index(first_half_distribution(full), rng);
    rec.marked.push_back(conditional_half(full, m));
    rec.circuits.push_back(std::move(c));
    rec.outcomes.push_back(m);
  }
  rec.language_bit = force_language_bit ? *force_language_bit : rng.coin();
  return rec;
}

Json broadcast(const ServerRecord& record) {
  Json pairs = Json::array();
  for (std::size_t j = 0; j < record.circuits.size(); ++j) {
    pairs.push_back({{"circuit", circuit_to_json(record.circuits[j])},
                     {"outcome", index_to_bits(record.outcomes[j], record.n)}});
  }
  return {{"n", record.n}, {"pairs", pairs}};
}

BroadcastInfo parse_broadcast(const Json& payload) {
  detail::require(payload.is_object(), "broadcast must be an object");
  for (const auto& [key, _] : payload.items())
    detail::require(key == "n" || key == "pairs", "unexpected broadcast field '" + key + "'");
  BroadcastInfo info;
  info.n = payload.at("n").get<int>();
  detail::require(info.n >= 1, "broadcast n must be positive");
  check_width(2 * info.n);
  const auto& pairs = payload.at("pairs");
  detail::require(pairs.is_array() && pairs.size() == static_cast<std::size_t>(info.n), "broadcast needs n pairs");
  for (const auto& p : pairs) {
    for (const auto& [key, _] : p.items())
      detail::require(key == "circuit" || key == "outcome", "unexpected broadcast pair field '" + key + "'");
    info.circuits.push_back(circuit_from_json(p.at("circuit"), 2 * info.n));
    const auto bits = p.at("outcome").get<std::string>();
    detail::require(static_cast<int>(bits.size()) == info.n, "outcome must have n bits");
    info.outcomes.push_back(bits_to_index(bits));
  }
  return info;
}

HonestMerlinResult merlin_honest(const BroadcastInfo& info, std::uint64_t shot_budget, Rng& rng) {
  HonestMerlinResult res;
  ProductBlocks copies{{}, PureState::zero(1)};
  for (int j = 0; j < info.n; ++j) {
    // Every run of c_j produces the same pre-measurement state; each shot is a fresh measurement.
    const auto full = apply_circuit(PureState::zero(2 * info.n), info.circuits[static_cast<std::size_t>(j)]);
    const auto dist = first_half_distribution(full);
    const std::uint64_t want = info.outcomes[static_cast<std::size_t>(j)];
    std::uint64_t attempts = 0;
    bool hit = false;
    while (!hit && res.shots < shot_budget) {
      ++attempts;
      ++res.shots;
      hit = sample_index(dist, rng) == want;
    }
    res.attempts.push_back(attempts);
    if (!hit) {
      res.budget_exhausted = true;
      return res;
    }
    copies.blocks.push_back(conditional_half(full, want));
  }
  res.transfer.emplace(std::move(copies));
  return res;
}

std::string_view to_string(MerlinKind kind) {
  switch (kind) {
    case MerlinKind::Honest: return "honest";
    case MerlinKind::Haar: return "haar";
    case MerlinKind::Vacuum: return "vacuum";
    case MerlinKind::Permuted: return "permuted";
  }
  return "?";
}

MerlinKind merlin_kind_from_string(std::string_view name) {
  for (MerlinKind k : {MerlinKind::Honest, MerlinKind::Haar, MerlinKind::Vacuum, MerlinKind::Permuted})
    if (to_string(k) == name) return k;
  throw InvalidInput("unknown merlin kind '" + std::string(name) + "'");
}

HonestMerlinResult merlin_dishonest(MerlinKind kind, const BroadcastInfo& info, std::uint64_t shot_budget, Rng& rng) {
  if (kind == MerlinKind::Honest) return merlin_honest(info, shot_budget, rng);
  if (kind == MerlinKind::Permuted) {
    auto res = merlin_honest(info, shot_budget, rng);
    if (!res.transfer) return res;
    auto blocks = res.transfer->take();
    std::rotate(blocks.blocks.begin(), blocks.blocks.begin() + 1, blocks.blocks.end());
    res.transfer.emplace(std::move(blocks));
    return res;
  }
  ProductBlocks blocks{{}, PureState::zero(1)};
  for (int j = 0; j < info.n; ++j)
    blocks.blocks.push_back(kind == MerlinKind::Haar ? haar_random_state(info.n, rng) : PureState::zero(info.n));
  HonestMerlinResult res;
  res.transfer.emplace(std::move(blocks));
  return res;
}

void ProtocolConfig::validate() const {
  detail::require(n >= 1, "n must be positive");
  check_width(2 * n);
  detail::require(depth >= 1, "depth must be positive");
  channel_threshold(kappa, n);
  detail::require(noise >= 0 && noise <= 1, "noise must lie in [0, 1]");
}

ProtocolTranscript run_protocol(const ProtocolConfig& cfg) {
  cfg.validate();
  Rng root = Rng::derive(cfg.seed, cfg.trial, "protocol");
  Rng server_rng = root.split("server");
  Rng merlin_rng = root.split("merlin");
  Rng link_rng = root.split("link");
  Rng oracle_rng = root.split("oracle");
  Rng arthur_rng = root.split("arthur");

  ProtocolTranscript t;
  t.header = {{"record", "header"},          {"n", cfg.n},
              {"kappa", cfg.kappa},          {"depth", cfg.depth},
              {"merlin_kind", std::string(to_string(cfg.merlin))},
              {"seed", cfg.seed},            {"trial", cfg.trial},
              {"noise", cfg.noise},          {"shot_budget", cfg.shot_budget},
              {"reply", cfg.reply == ChannelReply::ClassicalBit ? "bit" : "qubit"}};
  MessageQueue wire;
  auto post = [&](ProtocolMessage m) {
    t.messages.push_back(message_record(m));
    if (m.kind == MessageKind::QuantumTransfer) ++t.quantum_transfers;
    wire.send(std::move(m));
  };

  // Server / oracle side.
  const ServerRecord record = server_generate(cfg.n, cfg.depth, cfg.kappa, server_rng, cfg.force_language_bit);
  t.language_bit = record.language_bit;
  post({MessageKind::ClassicalBroadcast, Role::Server, Role::Everyone, broadcast(record), std::nullopt});
  post({MessageKind::ProblemInstance, Role::Server, Role::Arthur, {{"n", record.n}}, std::nullopt});

  // Merlin.
  const BroadcastInfo merlin_view = parse_broadcast(wire.receive(Role::Merlin, MessageKind::ClassicalBroadcast).payload);
  auto merlin = merlin_dishonest(cfg.merlin, merlin_view, cfg.shot_budget, merlin_rng);
  t.merlin_attempts = merlin.attempts;
  t.merlin_shots = merlin.shots;
  if (merlin.transfer) {
    Json shape = {{"blocks", merlin.transfer->blocks()}, {"block_qubits", cfg.n}, {"answer_qubits", 1}};
    post({MessageKind::QuantumTransfer, Role::Merlin, Role::Arthur, shape, std::move(merlin.transfer)});
  }

  // Arthur.
  const int n = wire.receive(Role::Arthur, MessageKind::ProblemInstance).payload.at("n").get<int>();
  const BroadcastInfo arthur_view = parse_broadcast(wire.receive(Role::Arthur, MessageKind::ClassicalBroadcast).payload);
  detail::require(arthur_view.n == n, "broadcast and instance disagree on n");
  auto decide = [&](bool accept, std::string failure) {
    t.accept = accept;
    t.failure = std::move(failure);
    Json payload = {{"accept", accept}};
    if (!t.failure.empty()) payload["failure"] = t.failure;
    post({MessageKind::Decision, Role::Arthur, Role::Everyone, payload, std::nullopt});
    return t;
  };
  if (t.quantum_transfers == 0) return decide(false, "merlin shot budget exhausted");
  ProductBlocks state = wire.receive(Role::Arthur, MessageKind::QuantumTransfer).quantum->take();
  for (auto& block : state.blocks)
    if (cfg.noise > 0 && link_rng.bernoulli(cfg.noise)) block = orthogonal_replacement(block, link_rng);
  {
    Json shape = {{"blocks", static_cast<int>(state.blocks.size())}, {"block_qubits", n}, {"answer_qubits", 1}};
    post({MessageKind::QuantumTransfer, Role::Arthur, Role::Oracle, shape, QuantumTransfer(std::move(state))});
  }

  // Oracle.
  {
    ProductBlocks input = wire.receive(Role::Oracle, MessageKind::QuantumTransfer).quantum->take();
    t.exact_accept = channel_output_one_probability(record.marked, record.kappa, record.language_bit, input);
    ChannelOracle oracle(record.marked, record.kappa, record.language_bit, std::move(oracle_rng), cfg.reply);
    const ChannelOutcome out = oracle.apply(std::move(input));
    t.tests = static_cast<int>(out.tests.size());
    t.passes = out.passes;
    Json reply;
    if (out.bit) {
      reply = {{"bit", *out.bit}};
    } else {
      const auto& m = out.qubit->matrix();
      reply = {{"qubit", {{m(0, 0).real(), m(0, 0).imag(), m(0, 1).real(), m(0, 1).imag()},
                          {m(1, 0).real(), m(1, 0).imag(), m(1, 1).real(), m(1, 1).imag()}}}};
    }
    post({MessageKind::OracleReply, Role::Oracle, Role::Arthur, reply, std::nullopt});
  }

  // Arthur returns the oracle's answer.
  const Json reply = wire.receive(Role::Arthur, MessageKind::OracleReply).payload;
  bool accept = false;
  if (reply.contains("bit")) {
    accept = reply.at("bit").get<bool>();
  } else {
    const double p1 = reply.at("qubit").at(1).at(2).get<double>();
    accept = arthur_rng.bernoulli(std::clamp(p1, 0.0, 1.0));
  }
  return decide(accept, "");
}

std::string transcript_to_jsonl(const ProtocolTranscript& t) {
  std::string out = t.header.dump() + "\n";
  for (const auto& m : t.messages) out += m.dump() + "\n";
  return out;
}

}  // namespace oraclelab
