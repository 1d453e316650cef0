#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>

#include <Eigen/Dense>

#include "oraclelab/qsim/errors.hpp"

namespace oraclelab {

/// Largest register simulated as a dense statevector.
inline constexpr int kMaxQubits = 14;

/// Tolerance for normalization, hermiticity and other exact identities.
inline constexpr double kTolerance = 1e-10;

// Qubit q of an n-qubit register is bit (n - 1 - q) of the basis index, so
// qubit 0 is the most significant bit and kron(a, b) puts a on the leading
// qubits. Bit strings read left to right from qubit 0.

inline std::uint64_t qubit_mask(int n, int q) { return std::uint64_t{1} << (n - 1 - q); }

inline void check_width(int n) {
  if (n < 1) throw InvalidInput("qubit count must be positive, got " + std::to_string(n));
  if (n > kMaxQubits) {
    throw CapacityError("statevector of " + std::to_string(n) + " qubits exceeds the cap of " +
                        std::to_string(kMaxQubits));
  }
}

inline std::string index_to_bits(std::uint64_t index, int n) {
  std::string bits(static_cast<std::size_t>(n), '0');
  for (int q = 0; q < n; ++q) {
    if (index & qubit_mask(n, q)) bits[static_cast<std::size_t>(q)] = '1';
  }
  return bits;
}

inline std::uint64_t bits_to_index(std::string_view bits) {
  std::uint64_t index = 0;
  for (char c : bits) {
    if (c != '0' && c != '1') throw InvalidInput("bit string may only contain 0 and 1");
    index = (index << 1) | static_cast<std::uint64_t>(c == '1');
  }
  return index;
}

/// Normalized amplitude vector over n qubits.
template <typename Real>
class BasicPureState {
 public:
  using RealScalar = Real;
  using Scalar = std::complex<Real>;
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  /// |0...0> on n qubits.
  static BasicPureState zero(int n) { return basis(n, 0); }

  static BasicPureState basis(int n, std::uint64_t index) {
    check_width(n);
    detail::require(index < (std::uint64_t{1} << n), "basis index out of range");
    Vector v = Vector::Zero(Eigen::Index{1} << n);
    v(static_cast<Eigen::Index>(index)) = Scalar(1);
    return BasicPureState(n, std::move(v));
  }

  static BasicPureState from_bits(std::string_view bits) {
    return basis(static_cast<int>(bits.size()), bits_to_index(bits));
  }

  /// Validates length 2^n and unit norm within kTolerance.
  static BasicPureState from_amplitudes(Vector amplitudes) {
    const int n = width_of(amplitudes.size());
    const Real norm2 = amplitudes.squaredNorm();
    if (std::abs(norm2 - Real(1)) > Real(kTolerance)) {
      throw InvalidInput("amplitudes are not normalized (|v|^2 = " + std::to_string(double(norm2)) + ")");
    }
    return BasicPureState(n, std::move(amplitudes));
  }

  /// Rescales to unit norm; rejects the zero vector.
  static BasicPureState normalized(Vector amplitudes) {
    const int n = width_of(amplitudes.size());
    const Real norm = amplitudes.norm();
    detail::require(norm > Real(0), "cannot normalize the zero vector");
    amplitudes /= norm;
    return BasicPureState(n, std::move(amplitudes));
  }

  /// No normalization check; for kernels that provably preserve the norm.
  static BasicPureState unchecked(int n, Vector amplitudes) {
    return BasicPureState(n, std::move(amplitudes));
  }

  int n_qubits() const { return n_; }
  Eigen::Index dim() const { return amplitudes_.size(); }
  const Vector& amplitudes() const { return amplitudes_; }
  Scalar operator[](std::uint64_t index) const { return amplitudes_(static_cast<Eigen::Index>(index)); }

  Vector release() && { return std::move(amplitudes_); }

  Real norm_deviation() const { return std::abs(amplitudes_.norm() - Real(1)); }

 private:
  BasicPureState(int n, Vector v) : n_(n), amplitudes_(std::move(v)) {}

  static int width_of(Eigen::Index size) {
    detail::require(size >= 2 && (size & (size - 1)) == 0, "amplitude count must be a power of two >= 2");
    int n = 0;
    while ((Eigen::Index{1} << n) < size) ++n;
    check_width(n);
    return n;
  }

  int n_;
  Vector amplitudes_;
};

/// Hermitian, positive semidefinite, unit-trace matrix over n qubits.
template <typename Real>
class BasicDensityOperator {
 public:
  using Scalar = std::complex<Real>;
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

  static BasicDensityOperator from_matrix(Matrix m) {
    const Eigen::Index d = m.rows();
    detail::require(d == m.cols() && d >= 2 && (d & (d - 1)) == 0, "density matrix must be square of size 2^n");
    int n = 0;
    while ((Eigen::Index{1} << n) < d) ++n;
    check_width(n);
    const Real tol(kTolerance);
    detail::require((m - m.adjoint()).cwiseAbs().maxCoeff() <= tol, "density matrix is not Hermitian");
    detail::require(std::abs(m.trace() - Scalar(1)) <= tol, "density matrix trace is not 1");
    Eigen::SelfAdjointEigenSolver<Matrix> eig(m, Eigen::EigenvaluesOnly);
    detail::require(eig.eigenvalues().minCoeff() >= -tol, "density matrix has a negative eigenvalue");
    return BasicDensityOperator(n, std::move(m));
  }

  static BasicDensityOperator from_pure(const BasicPureState<Real>& psi) {
    return BasicDensityOperator(psi.n_qubits(), psi.amplitudes() * psi.amplitudes().adjoint());
  }

  static BasicDensityOperator maximally_mixed(int n) {
    check_width(n);
    const Eigen::Index d = Eigen::Index{1} << n;
    return BasicDensityOperator(n, Matrix::Identity(d, d) / Real(d));
  }

  static BasicDensityOperator unchecked(int n, Matrix m) { return BasicDensityOperator(n, std::move(m)); }

  int n_qubits() const { return n_; }
  const Matrix& matrix() const { return matrix_; }

 private:
  BasicDensityOperator(int n, Matrix m) : n_(n), matrix_(std::move(m)) {}

  int n_;
  Matrix matrix_;
};

using PureState = BasicPureState<double>;
using DensityOperator = BasicDensityOperator<double>;
using Amplitudes = PureState::Vector;
using ComplexMatrix = DensityOperator::Matrix;

/// <a|b>.
template <typename Real>
std::complex<Real> inner(const BasicPureState<Real>& a, const BasicPureState<Real>& b) {
  detail::require(a.n_qubits() == b.n_qubits(), "inner product of states with different widths");
  return a.amplitudes().dot(b.amplitudes());
}

/// a (x) b, with a on the leading qubits.
template <typename Real>
BasicPureState<Real> kron(const BasicPureState<Real>& a, const BasicPureState<Real>& b) {
  check_width(a.n_qubits() + b.n_qubits());
  using Vector = typename BasicPureState<Real>::Vector;
  Vector v(a.dim() * b.dim());
  for (Eigen::Index i = 0; i < a.dim(); ++i) v.segment(i * b.dim(), b.dim()) = a.amplitudes()(i) * b.amplitudes();
  return BasicPureState<Real>::unchecked(a.n_qubits() + b.n_qubits(), std::move(v));
}

}  // namespace oraclelab
