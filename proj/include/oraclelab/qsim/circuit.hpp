#pragma once

#include <algorithm>
#include <array>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "oraclelab/qsim/errors.hpp"

namespace oraclelab {

/// Gate kinds. CRotBit(j) rotates its target by pi/2^(j+1) when the control
/// is set; CPhaseBit(j) multiplies |1> by exp(2 pi i / 2^j); CSwapBlock swaps
/// two equal-length qubit blocks when its first target is set.
enum class GateKind { H, T, CNOT, X, Z, CRotBit, CPhaseBit, CSwapBlock };

inline constexpr std::array<GateKind, 8> kAllGateKinds = {GateKind::H,     GateKind::T,       GateKind::CNOT,
                                                          GateKind::X,     GateKind::Z,       GateKind::CRotBit,
                                                          GateKind::CPhaseBit, GateKind::CSwapBlock};

inline std::string_view to_string(GateKind kind) {
  switch (kind) {
    case GateKind::H: return "H";
    case GateKind::T: return "T";
    case GateKind::CNOT: return "CNOT";
    case GateKind::X: return "X";
    case GateKind::Z: return "Z";
    case GateKind::CRotBit: return "CROT";
    case GateKind::CPhaseBit: return "CPHASE";
    case GateKind::CSwapBlock: return "CSWAP";
  }
  return "?";
}

inline GateKind gate_kind_from_string(std::string_view name) {
  for (GateKind k : kAllGateKinds) {
    if (to_string(k) == name) return k;
  }
  throw InvalidInput("unknown gate kind '" + std::string(name) + "'");
}

/// Fixed target count, or 0 for the variable-width CSwapBlock.
inline int arity(GateKind kind) {
  switch (kind) {
    case GateKind::H:
    case GateKind::T:
    case GateKind::X:
    case GateKind::Z:
    case GateKind::CPhaseBit: return 1;
    case GateKind::CNOT:
    case GateKind::CRotBit: return 2;
    case GateKind::CSwapBlock: return 0;
  }
  return 0;
}

/// Kinds without a bit-index parameter; usable for random and enumerated circuits.
inline bool is_parameter_free(GateKind kind) {
  return kind != GateKind::CRotBit && kind != GateKind::CPhaseBit && kind != GateKind::CSwapBlock;
}

using GateSet = std::vector<GateKind>;

inline GateSet default_gate_set() { return {GateKind::H, GateKind::T, GateKind::CNOT}; }

inline int max_arity(const GateSet& gates) {
  int c = 0;
  for (GateKind k : gates) c = std::max(c, arity(k));
  return c;
}

struct GateOp {
  GateKind kind = GateKind::H;
  std::vector<int> targets;
  int bit = 0;  // CRotBit / CPhaseBit only

  friend bool operator==(const GateOp&, const GateOp&) = default;
};

inline GateOp h(int q) { return {GateKind::H, {q}}; }
inline GateOp t(int q) { return {GateKind::T, {q}}; }
inline GateOp x(int q) { return {GateKind::X, {q}}; }
inline GateOp z(int q) { return {GateKind::Z, {q}}; }
inline GateOp cnot(int control, int target) { return {GateKind::CNOT, {control, target}}; }
inline GateOp crot_bit(int j, int control, int target) { return {GateKind::CRotBit, {control, target}, j}; }
inline GateOp cphase_bit(int j, int q) { return {GateKind::CPhaseBit, {q}, j}; }

/// Controlled swap of block_a[i] <-> block_b[i].
inline GateOp cswap_block(int control, const std::vector<int>& block_a, const std::vector<int>& block_b) {
  GateOp op{GateKind::CSwapBlock, {control}};
  op.targets.insert(op.targets.end(), block_a.begin(), block_a.end());
  op.targets.insert(op.targets.end(), block_b.begin(), block_b.end());
  return op;
}

inline void validate(const GateOp& op, int width) {
  const auto& tg = op.targets;
  const int a = arity(op.kind);
  if (a > 0) {
    detail::require(static_cast<int>(tg.size()) == a,
                    std::string(to_string(op.kind)) + " expects " + std::to_string(a) + " target(s)");
  } else {
    detail::require(tg.size() >= 3 && tg.size() % 2 == 1, "CSWAP expects a control and two equal blocks");
  }
  for (std::size_t i = 0; i < tg.size(); ++i) {
    detail::require(tg[i] >= 0 && tg[i] < width, "gate target out of range for register width");
    for (std::size_t j = i + 1; j < tg.size(); ++j) detail::require(tg[i] != tg[j], "gate targets must be distinct");
  }
  if (op.kind == GateKind::CRotBit || op.kind == GateKind::CPhaseBit) {
    detail::require(op.bit >= 1 && op.bit <= 64, "bit index must lie in 1..64");
  }
}

/// Ordered gate sequence on a fixed-width register.
class Circuit {
 public:
  explicit Circuit(int width, std::vector<GateOp> ops = {}) : width_(width), ops_(std::move(ops)) {
    detail::require(width >= 1, "circuit width must be positive");
    for (const auto& op : ops_) validate(op, width_);
  }

  void push_back(GateOp op) {
    validate(op, width_);
    ops_.push_back(std::move(op));
  }

  void append(const Circuit& other) {
    detail::require(other.width_ == width_, "cannot append circuits of different widths");
    ops_.insert(ops_.end(), other.ops_.begin(), other.ops_.end());
  }

  int width() const { return width_; }
  std::size_t size() const { return ops_.size(); }
  bool empty() const { return ops_.empty(); }
  const std::vector<GateOp>& ops() const { return ops_; }

  friend bool operator==(const Circuit&, const Circuit&) = default;

 private:
  int width_;
  std::vector<GateOp> ops_;
};

}  // namespace oraclelab
