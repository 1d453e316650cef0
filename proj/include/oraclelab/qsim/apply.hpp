#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "oraclelab/qsim/circuit.hpp"
#include "oraclelab/qsim/state.hpp"

namespace oraclelab {

namespace kernels {

template <typename Vector>
using scalar_of = typename Vector::Scalar;

template <typename Vector>
using real_of = typename scalar_of<Vector>::value_type;

/// 2x2 operator [[m00, m01], [m10, m11]] on qubit q.
template <typename Vector, typename S = scalar_of<Vector>>
void apply_1q(Vector& v, int n, int q, S m00, S m01, S m10, S m11) {
  const std::uint64_t mask = qubit_mask(n, q);
  const auto dim = static_cast<std::uint64_t>(v.size());
  for (std::uint64_t i = 0; i < dim; ++i) {
    if (i & mask) continue;
    const auto i0 = static_cast<Eigen::Index>(i);
    const auto i1 = static_cast<Eigen::Index>(i | mask);
    const S a = v(i0);
    const S b = v(i1);
    v(i0) = m00 * a + m01 * b;
    v(i1) = m10 * a + m11 * b;
  }
}

/// Same as apply_1q, restricted to indices with the control qubit set.
template <typename Vector, typename S = scalar_of<Vector>>
void apply_controlled_1q(Vector& v, int n, int control, int q, S m00, S m01, S m10, S m11) {
  const std::uint64_t cmask = qubit_mask(n, control);
  const std::uint64_t mask = qubit_mask(n, q);
  const auto dim = static_cast<std::uint64_t>(v.size());
  for (std::uint64_t i = 0; i < dim; ++i) {
    if ((i & mask) || !(i & cmask)) continue;
    const auto i0 = static_cast<Eigen::Index>(i);
    const auto i1 = static_cast<Eigen::Index>(i | mask);
    const S a = v(i0);
    const S b = v(i1);
    v(i0) = m00 * a + m01 * b;
    v(i1) = m10 * a + m11 * b;
  }
}

template <typename Vector>
void apply_h(Vector& v, int n, int q) {
  using S = scalar_of<Vector>;
  const S r(std::numbers::sqrt2_v<real_of<Vector>> / 2);
  apply_1q(v, n, q, r, r, r, -r);
}

template <typename Vector>
void apply_phase(Vector& v, int n, int q, scalar_of<Vector> phase) {
  const std::uint64_t mask = qubit_mask(n, q);
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (static_cast<std::uint64_t>(i) & mask) v(i) *= phase;
  }
}

template <typename Vector>
void apply_x(Vector& v, int n, int q) {
  const std::uint64_t mask = qubit_mask(n, q);
  for (std::uint64_t i = 0; i < static_cast<std::uint64_t>(v.size()); ++i) {
    if (!(i & mask)) std::swap(v(static_cast<Eigen::Index>(i)), v(static_cast<Eigen::Index>(i | mask)));
  }
}

template <typename Vector>
void apply_cnot(Vector& v, int n, int control, int target) {
  const std::uint64_t cmask = qubit_mask(n, control);
  const std::uint64_t tmask = qubit_mask(n, target);
  for (std::uint64_t i = 0; i < static_cast<std::uint64_t>(v.size()); ++i) {
    if ((i & cmask) && !(i & tmask)) std::swap(v(static_cast<Eigen::Index>(i)), v(static_cast<Eigen::Index>(i | tmask)));
  }
}

/// Controlled exchange of block_a[i] with block_b[i] for every i.
template <typename Vector>
void apply_cswap_block(Vector& v, int n, int control, std::span<const int> block_a, std::span<const int> block_b) {
  const std::uint64_t cmask = qubit_mask(n, control);
  for (std::uint64_t i = 0; i < static_cast<std::uint64_t>(v.size()); ++i) {
    if (!(i & cmask)) continue;
    std::uint64_t j = i;
    for (std::size_t k = 0; k < block_a.size(); ++k) {
      const std::uint64_t ma = qubit_mask(n, block_a[k]);
      const std::uint64_t mb = qubit_mask(n, block_b[k]);
      const bool ba = (i & ma) != 0;
      const bool bb = (i & mb) != 0;
      if (ba != bb) j ^= (ma | mb);
    }
    if (j > i) std::swap(v(static_cast<Eigen::Index>(i)), v(static_cast<Eigen::Index>(j)));
  }
}

/// Dense 2^k x 2^k operator on the listed qubits; qubits[0] is the most
/// significant bit of the local index.
template <typename Vector, typename Matrix>
void apply_matrix(Vector& v, int n, std::span<const int> qubits, const Matrix& op) {
  const int k = static_cast<int>(qubits.size());
  const Eigen::Index local = Eigen::Index{1} << k;
  std::vector<std::uint64_t> offsets(static_cast<std::size_t>(local), 0);
  std::uint64_t all = 0;
  for (Eigen::Index a = 0; a < local; ++a) {
    std::uint64_t off = 0;
    for (int b = 0; b < k; ++b) {
      if (a & (Eigen::Index{1} << (k - 1 - b))) off |= qubit_mask(n, qubits[static_cast<std::size_t>(b)]);
    }
    offsets[static_cast<std::size_t>(a)] = off;
  }
  for (int q : qubits) all |= qubit_mask(n, q);
  Vector in(local);
  for (std::uint64_t base = 0; base < static_cast<std::uint64_t>(v.size()); ++base) {
    if (base & all) continue;
    for (Eigen::Index a = 0; a < local; ++a) in(a) = v(static_cast<Eigen::Index>(base | offsets[static_cast<std::size_t>(a)]));
    Vector out = op * in;
    for (Eigen::Index a = 0; a < local; ++a) v(static_cast<Eigen::Index>(base | offsets[static_cast<std::size_t>(a)])) = out(a);
  }
}

template <typename Vector>
void apply_gate(Vector& v, int n, const GateOp& op) {
  using S = scalar_of<Vector>;
  using R = real_of<Vector>;
  const auto& tg = op.targets;
  switch (op.kind) {
    case GateKind::H: apply_h(v, n, tg[0]); break;
    case GateKind::T: apply_phase(v, n, tg[0], std::polar(R(1), std::numbers::pi_v<R> / 4)); break;
    case GateKind::X: apply_x(v, n, tg[0]); break;
    case GateKind::Z: apply_phase(v, n, tg[0], S(-1)); break;
    case GateKind::CNOT: apply_cnot(v, n, tg[0], tg[1]); break;
    case GateKind::CRotBit: {
      const R theta = std::numbers::pi_v<R> * std::ldexp(R(1), -(op.bit + 1));
      const S c(std::cos(theta));
      const S s(std::sin(theta));
      apply_controlled_1q(v, n, tg[0], tg[1], c, -s, s, c);
      break;
    }
    case GateKind::CPhaseBit:
      apply_phase(v, n, tg[0], std::polar(R(1), 2 * std::numbers::pi_v<R> * std::ldexp(R(1), -op.bit)));
      break;
    case GateKind::CSwapBlock: {
      const std::size_t m = (tg.size() - 1) / 2;
      std::span<const int> all(tg);
      apply_cswap_block(v, n, tg[0], all.subspan(1, m), all.subspan(1 + m, m));
      break;
    }
  }
}

template <typename Vector>
void apply_ops(Vector& v, int n, const Circuit& circuit) {
  for (const auto& op : circuit.ops()) apply_gate(v, n, op);
}

/// H on each qubit in [first, first + count).
template <typename Vector>
void apply_hadamard_block(Vector& v, int n, int first, int count) {
  for (int q = first; q < first + count; ++q) apply_h(v, n, q);
}

}  // namespace kernels

/// Unitary image of state under circuit.
template <typename Real>
BasicPureState<Real> apply_circuit(BasicPureState<Real> state, const Circuit& circuit) {
  detail::require(circuit.width() == state.n_qubits(), "circuit width " + std::to_string(circuit.width()) +
                                                           " does not match state width " +
                                                           std::to_string(state.n_qubits()));
  const int n = state.n_qubits();
  auto v = std::move(state).release();
  kernels::apply_ops(v, n, circuit);
  return BasicPureState<Real>::unchecked(n, std::move(v));
}

template <typename Real>
BasicPureState<Real> apply_gate(BasicPureState<Real> state, const GateOp& op) {
  validate(op, state.n_qubits());
  const int n = state.n_qubits();
  auto v = std::move(state).release();
  kernels::apply_gate(v, n, op);
  return BasicPureState<Real>::unchecked(n, std::move(v));
}

/// Applies a unitary matrix to the listed qubits. The matrix is not checked for unitarity.
template <typename Real, typename Matrix>
BasicPureState<Real> apply_unitary(BasicPureState<Real> state, std::span<const int> qubits, const Matrix& op) {
  detail::require(op.rows() == (Eigen::Index{1} << qubits.size()) && op.cols() == op.rows(),
                  "operator size does not match qubit count");
  for (int q : qubits) detail::require(q >= 0 && q < state.n_qubits(), "qubit index out of range");
  const int n = state.n_qubits();
  auto v = std::move(state).release();
  kernels::apply_matrix(v, n, qubits, op);
  return BasicPureState<Real>::unchecked(n, std::move(v));
}

template <typename Real>
BasicPureState<Real> hadamard_all(BasicPureState<Real> state) {
  const int n = state.n_qubits();
  auto v = std::move(state).release();
  kernels::apply_hadamard_block(v, n, 0, n);
  return BasicPureState<Real>::unchecked(n, std::move(v));
}

}  // namespace oraclelab
