#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "oraclelab/qsim/apply.hpp"
#include "oraclelab/qsim/measures.hpp"
#include "oraclelab/qsim/rng.hpp"
#include "oraclelab/qsim/state.hpp"

namespace oraclelab {

template <typename Real>
Eigen::Matrix<Real, Eigen::Dynamic, 1> born_probabilities(const BasicPureState<Real>& state) {
  return state.amplitudes().cwiseAbs2();
}

/// Index drawn from a (possibly unnormalized) probability vector.
template <typename Derived>
std::uint64_t sample_index(const Eigen::MatrixBase<Derived>& probabilities, Rng& rng) {
  const double total = static_cast<double>(probabilities.sum());
  double u = rng.uniform() * total;
  const auto size = probabilities.size();
  for (Eigen::Index i = 0; i < size; ++i) {
    u -= static_cast<double>(probabilities(i));
    if (u < 0) return static_cast<std::uint64_t>(i);
  }
  // Rounding left u >= 0: return the last index with non-zero weight.
  for (Eigen::Index i = size - 1; i >= 0; --i) {
    if (probabilities(i) > 0) return static_cast<std::uint64_t>(i);
  }
  return 0;
}

template <typename Real>
struct BasicMeasurement {
  std::string bits;               // outcome on the measured qubits, in the order given
  BasicPureState<Real> post;      // renormalized post-measurement state (full width)
  Real probability;               // Born probability of `bits`
};

using Measurement = BasicMeasurement<double>;

namespace detail {

inline std::vector<std::uint64_t> masks_for(int n, std::span<const int> indices) {
  std::vector<std::uint64_t> masks;
  masks.reserve(indices.size());
  for (std::size_t i = 0; i < indices.size(); ++i) {
    require(indices[i] >= 0 && indices[i] < n, "measured qubit index out of range");
    for (std::size_t j = i + 1; j < indices.size(); ++j) require(indices[i] != indices[j], "measured qubits must be distinct");
    masks.push_back(qubit_mask(n, indices[i]));
  }
  return masks;
}

inline std::uint64_t outcome_key(std::uint64_t idx, const std::vector<std::uint64_t>& masks) {
  std::uint64_t key = 0;
  for (auto m : masks) key = (key << 1) | static_cast<std::uint64_t>((idx & m) != 0);
  return key;
}

}  // namespace detail

/// Distribution of outcomes on `indices`, keyed by the outcome read in index order.
template <typename Real>
Eigen::Matrix<Real, Eigen::Dynamic, 1> outcome_distribution(const BasicPureState<Real>& state,
                                                            std::span<const int> indices) {
  const auto masks = detail::masks_for(state.n_qubits(), indices);
  Eigen::Matrix<Real, Eigen::Dynamic, 1> p = Eigen::Matrix<Real, Eigen::Dynamic, 1>::Zero(Eigen::Index{1} << masks.size());
  for (std::uint64_t idx = 0; idx < static_cast<std::uint64_t>(state.dim()); ++idx) {
    p(static_cast<Eigen::Index>(detail::outcome_key(idx, masks))) += std::norm(state[idx]);
  }
  return p;
}

/// Projects onto `bits` on `indices` and renormalizes; the outcome must have
/// non-zero probability.
template <typename Real>
BasicPureState<Real> postselect(const BasicPureState<Real>& state, std::span<const int> indices, const std::string& bits) {
  detail::require(bits.size() == indices.size(), "outcome length does not match measured qubit count");
  const auto masks = detail::masks_for(state.n_qubits(), indices);
  const std::uint64_t want = bits_to_index(bits);
  auto v = state.amplitudes();
  for (std::uint64_t idx = 0; idx < static_cast<std::uint64_t>(state.dim()); ++idx) {
    if (detail::outcome_key(idx, masks) != want) v(static_cast<Eigen::Index>(idx)) = 0;
  }
  detail::require(v.norm() > 0, "post-selected outcome has zero probability");
  return BasicPureState<Real>::normalized(std::move(v));
}

/// Born-rule measurement of `indices` in the computational basis.
template <typename Real>
BasicMeasurement<Real> measure_qubits(const BasicPureState<Real>& state, std::span<const int> indices, Rng& rng) {
  const auto dist = outcome_distribution(state, indices);
  const std::uint64_t key = sample_index(dist, rng);
  const std::string bits = index_to_bits(key, static_cast<int>(indices.size()));
  return {bits, postselect(state, indices, bits), dist(static_cast<Eigen::Index>(key))};
}

template <typename Real>
BasicMeasurement<Real> measure_qubits(const BasicPureState<Real>& state, std::initializer_list<int> indices, Rng& rng) {
  return measure_qubits(state, std::span<const int>(indices.begin(), indices.size()), rng);
}

/// Swap-test circuit on 2n+1 qubits: ancilla 0, blocks 1..n and n+1..2n.
inline Circuit swap_test_circuit(int n) {
  Circuit c(2 * n + 1);
  c.push_back(h(0));
  c.push_back(cswap_block(0, qubit_range(1, n), qubit_range(n + 1, n)));
  c.push_back(h(0));
  return c;
}

/// Probability that the swap test passes (ancilla reads 0), by exact simulation of the circuit.
template <typename Real>
Real swap_test_pass_probability(const BasicPureState<Real>& a, const BasicPureState<Real>& b) {
  detail::require(a.n_qubits() == b.n_qubits(), "swap test of states with different widths");
  const int n = a.n_qubits();
  const auto out = apply_circuit(kron(BasicPureState<Real>::zero(1), kron(a, b)), swap_test_circuit(n));
  const std::uint64_t anc = qubit_mask(2 * n + 1, 0);
  Real p0 = 0;
  for (std::uint64_t i = 0; i < static_cast<std::uint64_t>(out.dim()); ++i) {
    if (!(i & anc)) p0 += std::norm(out[i]);
  }
  return p0;
}

/// Runs the swap test once. Returns true (bit 1) when the ancilla reads 0,
/// which happens with probability (1 + |<a|b>|^2) / 2.
template <typename Real>
bool swap_test(const BasicPureState<Real>& a, const BasicPureState<Real>& b, Rng& rng) {
  return rng.uniform() < static_cast<double>(swap_test_pass_probability(a, b));
}

}  // namespace oraclelab
