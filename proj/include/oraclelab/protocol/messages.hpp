#pragma once

#include <deque>
#include <optional>
#include <string>
#include <string_view>

#include "oraclelab/oracles/channel.hpp"
#include "oraclelab/qsim/serialize.hpp"

namespace oraclelab {

enum class Role { Server, Merlin, Arthur, Oracle, Everyone };
enum class MessageKind { ClassicalBroadcast, ProblemInstance, QuantumTransfer, OracleReply, Decision };

std::string_view to_string(Role role);
std::string_view to_string(MessageKind kind);

/// Quantum register in flight. Move-only; the state can be taken exactly once.
class QuantumTransfer {
 public:
  explicit QuantumTransfer(ProductBlocks state) : state_(std::move(state)) {}
  QuantumTransfer(const QuantumTransfer&) = delete;
  QuantumTransfer& operator=(const QuantumTransfer&) = delete;
  QuantumTransfer(QuantumTransfer&&) = default;
  QuantumTransfer& operator=(QuantumTransfer&&) = default;

  bool taken() const { return !state_.has_value(); }
  int blocks() const;
  /// Throws ConsumedError on the second call.
  ProductBlocks take();

 private:
  std::optional<ProductBlocks> state_;
};

struct ProtocolMessage {
  MessageKind kind = MessageKind::Decision;
  Role from = Role::Server;
  Role to = Role::Everyone;
  Json payload = Json::object();
  std::optional<QuantumTransfer> quantum;
};

/// Transcript line for a message: tags and classical payload. Quantum payloads are
/// described by their shape only.
Json message_record(const ProtocolMessage& m);

/// Ordered in-process transport. Classical payloads cross as serialized text.
class MessageQueue {
 public:
  void send(ProtocolMessage m);
  /// Next message addressed to `to` (or to everyone), in send order.
  ProtocolMessage receive(Role to);
  /// Next message of `kind` addressed to `to`.
  ProtocolMessage receive(Role to, MessageKind kind);
  bool empty() const { return queue_.empty(); }

 private:
  struct Wire {
    MessageKind kind;
    Role from;
    Role to;
    std::string text;
    std::optional<QuantumTransfer> quantum;
  };
  std::deque<Wire> queue_;
};

}  // namespace oraclelab
