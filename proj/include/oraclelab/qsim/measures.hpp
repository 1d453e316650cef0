#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "oraclelab/qsim/state.hpp"

namespace oraclelab {

/// Squared fidelity |<a|b>|^2 of two pure states.
template <typename Real>
Real fidelity(const BasicPureState<Real>& a, const BasicPureState<Real>& b) {
  detail::require(a.n_qubits() == b.n_qubits(), "fidelity of states with different widths");
  return std::norm(a.amplitudes().dot(b.amplitudes()));
}

/// <psi|rho|psi>.
template <typename Real>
Real fidelity(const BasicPureState<Real>& psi, const BasicDensityOperator<Real>& rho) {
  detail::require(psi.n_qubits() == rho.n_qubits(), "fidelity of operands with different widths");
  return std::real(psi.amplitudes().dot(rho.matrix() * psi.amplitudes()));
}

template <typename Real>
Real fidelity(const BasicDensityOperator<Real>& rho, const BasicPureState<Real>& psi) {
  return fidelity(psi, rho);
}

namespace detail {

template <typename Matrix>
Matrix psd_sqrt(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> eig(m);
  using R = typename Matrix::RealScalar;
  const auto vals = eig.eigenvalues().cwiseMax(R(0)).cwiseSqrt().template cast<typename Matrix::Scalar>().eval();
  return eig.eigenvectors() * vals.asDiagonal() * eig.eigenvectors().adjoint();
}

}  // namespace detail

/// F(rho, sigma) = ||sqrt(rho) sqrt(sigma)||_1^2.
template <typename Real>
Real fidelity(const BasicDensityOperator<Real>& rho, const BasicDensityOperator<Real>& sigma) {
  using Matrix = typename BasicDensityOperator<Real>::Matrix;
  detail::require(rho.n_qubits() == sigma.n_qubits(), "fidelity of operands with different widths");
  const Matrix root = detail::psd_sqrt(rho.matrix());
  Matrix inner = root * sigma.matrix() * root;
  inner = (inner + inner.adjoint()).eval() / Real(2);
  Eigen::SelfAdjointEigenSolver<Matrix> eig(inner, Eigen::EigenvaluesOnly);
  const Real s = eig.eigenvalues().cwiseMax(Real(0)).cwiseSqrt().sum();
  return std::min(Real(1), s * s);
}

/// Fuchs-van de Graaf for pure states: sqrt(1 - |<a|b>|^2).
template <typename Real>
Real trace_distance_pure(const BasicPureState<Real>& a, const BasicPureState<Real>& b) {
  return std::sqrt(std::max(Real(0), Real(1) - fidelity(a, b)));
}

/// (1/2)||A - B||_1 for Hermitian A, B, from the spectrum of the difference.
template <typename Matrix>
typename Matrix::RealScalar trace_distance_matrix(const Matrix& a, const Matrix& b) {
  Matrix d = a - b;
  d = (d + d.adjoint()).eval() / typename Matrix::RealScalar(2);
  Eigen::SelfAdjointEigenSolver<Matrix> eig(d, Eigen::EigenvaluesOnly);
  return eig.eigenvalues().cwiseAbs().sum() / 2;
}

template <typename Real>
Real trace_distance(const BasicDensityOperator<Real>& rho, const BasicDensityOperator<Real>& sigma) {
  detail::require(rho.n_qubits() == sigma.n_qubits(), "trace distance of operands with different widths");
  return trace_distance_matrix(rho.matrix(), sigma.matrix());
}

namespace detail {

inline std::vector<int> sorted_keep(std::span<const int> keep, int n) {
  std::vector<int> k(keep.begin(), keep.end());
  std::sort(k.begin(), k.end());
  require(!k.empty(), "partial trace needs a non-empty set of kept qubits");
  require(std::adjacent_find(k.begin(), k.end()) == k.end(), "kept qubits must be distinct");
  require(k.front() >= 0 && k.back() < n, "kept qubit index out of range");
  return k;
}

}  // namespace detail

/// Reduced density operator on `keep` (ascending qubit order).
template <typename Real>
BasicDensityOperator<Real> partial_trace(const BasicPureState<Real>& state, std::span<const int> keep) {
  using Matrix = typename BasicDensityOperator<Real>::Matrix;
  const int n = state.n_qubits();
  const std::vector<int> kept = detail::sorted_keep(keep, n);
  const int nk = static_cast<int>(kept.size());
  std::vector<bool> is_kept(static_cast<std::size_t>(n), false);
  for (int q : kept) is_kept[static_cast<std::size_t>(q)] = true;

  // Rows indexed by kept bits, columns by traced bits: rho = M M^dagger.
  Matrix m = Matrix::Zero(Eigen::Index{1} << nk, Eigen::Index{1} << (n - nk));
  for (std::uint64_t idx = 0; idx < static_cast<std::uint64_t>(state.dim()); ++idx) {
    std::uint64_t ik = 0;
    std::uint64_t it = 0;
    for (int q = 0; q < n; ++q) {
      const std::uint64_t bit = (idx & qubit_mask(n, q)) ? 1 : 0;
      if (is_kept[static_cast<std::size_t>(q)]) ik = (ik << 1) | bit;
      else it = (it << 1) | bit;
    }
    m(static_cast<Eigen::Index>(ik), static_cast<Eigen::Index>(it)) = state[idx];
  }
  Matrix rho = m * m.adjoint();
  return BasicDensityOperator<Real>::unchecked(nk, std::move(rho));
}

template <typename Real>
BasicDensityOperator<Real> partial_trace(const BasicPureState<Real>& state, std::initializer_list<int> keep) {
  return partial_trace(state, std::span<const int>(keep.begin(), keep.size()));
}

/// Qubits first..first+count-1.
inline std::vector<int> qubit_range(int first, int count) {
  std::vector<int> q(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) q[static_cast<std::size_t>(i)] = first + i;
  return q;
}

}  // namespace oraclelab
