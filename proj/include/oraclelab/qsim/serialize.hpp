#pragma once

#include <string>

#include "json.hpp"

#include "oraclelab/qsim/circuit.hpp"
#include "oraclelab/qsim/state.hpp"

namespace oraclelab {

using Json = nlohmann::json;

/// [{"kind": "H", "targets": [0]}, {"kind": "CROT", "targets": [0, 3], "bit": 2}, ...]
inline Json circuit_to_json(const Circuit& circuit) {
  Json ops = Json::array();
  for (const auto& op : circuit.ops()) {
    Json j = {{"kind", std::string(to_string(op.kind))}, {"targets", op.targets}};
    if (op.kind == GateKind::CRotBit || op.kind == GateKind::CPhaseBit) j["bit"] = op.bit;
    ops.push_back(std::move(j));
  }
  return ops;
}

inline Circuit circuit_from_json(const Json& ops, int width) {
  detail::require(ops.is_array(), "circuit JSON must be an array");
  Circuit circuit(width);
  for (const auto& j : ops) {
    detail::require(j.is_object() && j.contains("kind") && j.contains("targets"), "gate entry needs kind and targets");
    GateOp op{gate_kind_from_string(j.at("kind").get<std::string>()), j.at("targets").get<std::vector<int>>()};
    if (j.contains("bit")) op.bit = j.at("bit").get<int>();
    circuit.push_back(std::move(op));
  }
  return circuit;
}

/// Interleaved [re0, im0, re1, im1, ...].
inline Json amplitudes_to_json(const PureState& state) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < state.dim(); ++i) {
    a.push_back(state.amplitudes()(i).real());
    a.push_back(state.amplitudes()(i).imag());
  }
  return a;
}

inline PureState amplitudes_from_json(const Json& a) {
  detail::require(a.is_array() && a.size() % 2 == 0, "amplitudes must be an interleaved real/imag array");
  Amplitudes v(static_cast<Eigen::Index>(a.size() / 2));
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    v(i) = {a.at(static_cast<std::size_t>(2 * i)).get<double>(), a.at(static_cast<std::size_t>(2 * i + 1)).get<double>()};
  }
  return PureState::from_amplitudes(std::move(v));
}

}  // namespace oraclelab
