#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "oraclelab/qsim/circuit.hpp"
#include "oraclelab/qsim/rng.hpp"
#include "oraclelab/qsim/state.hpp"

namespace oraclelab {

/// Haar-random pure state: i.i.d. standard complex Gaussians, normalized.
template <typename Real = double>
BasicPureState<Real> haar_random_state(int n, Rng& rng) {
  check_width(n);
  using Vector = typename BasicPureState<Real>::Vector;
  Vector v(Eigen::Index{1} << n);
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const Real re = rng.normal<Real>();
    const Real im = rng.normal<Real>();
    v(i) = {re, im};
  }
  return BasicPureState<Real>::normalized(std::move(v));
}

/// Haar-random unitary of dimension dim: QR of a complex Gaussian matrix with
/// the phases of R's diagonal moved into Q.
template <typename Real = double>
Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic> haar_random_unitary(Eigen::Index dim, Rng& rng) {
  using Matrix = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;
  detail::require(dim >= 1, "unitary dimension must be positive");
  Matrix a(dim, dim);
  for (Eigen::Index j = 0; j < dim; ++j) {
    for (Eigen::Index i = 0; i < dim; ++i) {
      const Real re = rng.normal<Real>();
      const Real im = rng.normal<Real>();
      a(i, j) = {re, im};
    }
  }
  Eigen::HouseholderQR<Matrix> qr(a);
  Matrix q = qr.householderQ();
  const Matrix& r = qr.matrixQR();
  for (Eigen::Index j = 0; j < dim; ++j) {
    const std::complex<Real> d = r(j, j);
    const Real mag = std::abs(d);
    if (mag > Real(0)) q.col(j) *= d / mag;
  }
  return q;
}

/// `depth` gates drawn uniformly from `gates`, each on uniformly chosen distinct targets.
inline Circuit random_circuit(int n, int depth, Rng& rng, const GateSet& gates = default_gate_set()) {
  detail::require(n >= 1, "random circuit width must be positive");
  detail::require(depth >= 0, "random circuit depth must be non-negative");
  detail::require(!gates.empty(), "gate set is empty");
  for (GateKind k : gates) {
    detail::require(is_parameter_free(k), "random circuits only draw parameter-free gates");
    detail::require(arity(k) <= n, "gate arity exceeds register width");
  }
  Circuit circuit(n);
  std::vector<int> pool(static_cast<std::size_t>(n));
  for (int d = 0; d < depth; ++d) {
    const GateKind kind = gates[rng.below(gates.size())];
    for (int q = 0; q < n; ++q) pool[static_cast<std::size_t>(q)] = q;
    GateOp op{kind, {}};
    for (int a = 0; a < arity(kind); ++a) {
      const auto pick = static_cast<std::size_t>(a) + rng.below(static_cast<std::uint64_t>(n - a));
      std::swap(pool[static_cast<std::size_t>(a)], pool[pick]);
      op.targets.push_back(pool[static_cast<std::size_t>(a)]);
    }
    circuit.push_back(std::move(op));
  }
  return circuit;
}

}  // namespace oraclelab
