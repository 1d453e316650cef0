#include "oraclelab/protocol/messages.hpp"

namespace oraclelab {

std::string_view to_string(Role role) {
  switch (role) {
    case Role::Server: return "server";
    case Role::Merlin: return "merlin";
    case Role::Arthur: return "arthur";
    case Role::Oracle: return "oracle";
    case Role::Everyone: return "everyone";
  }
  return "?";
}

std::string_view to_string(MessageKind kind) {
  switch (kind) {
    case MessageKind::ClassicalBroadcast: return "classical_broadcast";
    case MessageKind::ProblemInstance: return "problem_instance";
    case MessageKind::QuantumTransfer: return "quantum_transfer";
    case MessageKind::OracleReply: return "oracle_reply";
    case MessageKind::Decision: return "decision";
  }
  return "?";
}

int QuantumTransfer::blocks() const {
  if (!state_) throw ConsumedError("quantum transfer already taken");
  return static_cast<int>(state_->blocks.size());
}

ProductBlocks QuantumTransfer::take() {
  if (!state_) throw ConsumedError("quantum transfer already taken");
  ProductBlocks out = std::move(*state_);
  state_.reset();
  return out;
}

Json message_record(const ProtocolMessage& m) {
  Json j = {{"record", "message"},
            {"kind", std::string(to_string(m.kind))},
            {"from", std::string(to_string(m.from))},
            {"to", std::string(to_string(m.to))},
            {"payload", m.payload}};
  if (m.quantum) j["quantum"] = {{"taken", m.quantum->taken()}};
  return j;
}

void MessageQueue::send(ProtocolMessage m) {
  detail::require(!(m.quantum && m.to == Role::Everyone), "quantum payloads cannot be broadcast");
  detail::require(!m.quantum || m.kind == MessageKind::QuantumTransfer, "only quantum transfers carry quantum payloads");
  if (m.to != Role::Everyone) {
    queue_.push_back({m.kind, m.from, m.to, m.payload.dump(), std::move(m.quantum)});
    return;
  }
  const std::string text = m.payload.dump();
  for (Role r : {Role::Server, Role::Merlin, Role::Arthur, Role::Oracle}) {
    if (r != m.from) queue_.push_back({m.kind, m.from, r, text, std::nullopt});
  }
}

ProtocolMessage MessageQueue::receive(Role to) {
  for (auto it = queue_.begin(); it != queue_.end(); ++it) {
    if (it->to != to) continue;
    ProtocolMessage m{it->kind, it->from, it->to, Json::parse(it->text), std::move(it->quantum)};
    queue_.erase(it);
    return m;
  }
  throw InvalidInput("no message waiting for " + std::string(to_string(to)));
}

ProtocolMessage MessageQueue::receive(Role to, MessageKind kind) {
  for (auto it = queue_.begin(); it != queue_.end(); ++it) {
    if (it->to != to || it->kind != kind) continue;
    ProtocolMessage m{it->kind, it->from, it->to, Json::parse(it->text), std::move(it->quantum)};
    queue_.erase(it);
    return m;
  }
  throw InvalidInput("no " + std::string(to_string(kind)) + " waiting for " + std::string(to_string(to)));
}

}  // namespace oraclelab
