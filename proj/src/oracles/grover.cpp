#include "oraclelab/oracles/grover.hpp"

#include <bit>
#include <cmath>
#include <string>

namespace oraclelab {

namespace {

double hadamard_sign(std::uint64_t a, std::uint64_t x) { return (std::popcount(a & x) & 1) ? -1.0 : 1.0; }

}  // namespace

GroverStandardOracle::GroverStandardOracle(int n, std::uint64_t secret, LanguageTable language, bool conjugated)
    : n_(n), secret_(secret), language_(std::move(language)), conjugated_(conjugated) {
  detail::require(n >= 1, "Grover oracle needs n >= 1");
  detail::require(secret < (std::uint64_t{1} << n), "secret string out of range");
  detail::require(language_.has_length(n), "language has no table for length " + std::to_string(n));
}

PureState GroverStandardOracle::apply(PureState state) const {
  const int width = 2 * n_ + 1;
  detail::require(state.n_qubits() == width, "Grover oracle acts on " + std::to_string(width) + " qubits, got " +
                                                  std::to_string(state.n_qubits()));
  counter_.add();
  auto v = std::move(state).release();
  const std::uint64_t ny = std::uint64_t{1} << n_;
  auto at = [&](std::uint64_t z, std::uint64_t y, std::uint64_t b) -> Amplitudes::Scalar& {
    return v(static_cast<Eigen::Index>((z << (n_ + 1)) | (y << 1) | b));
  };
  for (std::uint64_t y = 0; y < ny; ++y) {
    if (!language_.contains(n_, y)) continue;
    if (!conjugated_) {
      std::swap(at(secret_, y, 0), at(secret_, y, 1));
      continue;
    }
    // U = 1 - |h><h| (x) Pi_L (x) (1 - X), h = H^n |secret>.
    const double norm = std::pow(2.0, -0.5 * n_);
    Amplitudes::Scalar d0 = 0, d1 = 0;
    for (std::uint64_t a = 0; a < ny; ++a) {
      const double h = hadamard_sign(a, secret_) * norm;
      d0 += h * at(a, y, 0);
      d1 += h * at(a, y, 1);
    }
    const auto e0 = d0 - d1;
    for (std::uint64_t a = 0; a < ny; ++a) {
      const double h = hadamard_sign(a, secret_) * norm;
      at(a, y, 0) -= h * e0;
      at(a, y, 1) += h * e0;
    }
  }
  return PureState::unchecked(width, std::move(v));
}

bool GroverStandardOracle::query_classical(std::uint64_t z, std::uint64_t y, bool b) const {
  detail::require(!conjugated_, "the conjugated oracle is not a classical function");
  detail::require(z < (std::uint64_t{1} << n_) && y < (std::uint64_t{1} << n_), "query string out of range");
  counter_.add();
  return b != (z == secret_ && language_.contains(n_, y));
}

bool GroverStandardOracle::query_in_frame(std::uint64_t z, std::uint64_t y, bool b) const {
  detail::require(z < (std::uint64_t{1} << n_) && y < (std::uint64_t{1} << n_), "query string out of range");
  counter_.add();
  return b != (z == secret_ && language_.contains(n_, y));
}

PureState GroverStandardOracle::apply_kickback(PureState first_register, std::uint64_t y) const {
  detail::require(first_register.n_qubits() == n_, "kickback register must have n qubits");
  detail::require(y < (std::uint64_t{1} << n_), "y out of range");
  counter_.add();
  if (!language_.contains(n_, y)) return first_register;
  auto v = std::move(first_register).release();
  if (!conjugated_) {
    v(static_cast<Eigen::Index>(secret_)) *= -1.0;
  } else {
    const double norm = std::pow(2.0, -0.5 * n_);
    Amplitudes::Scalar c = 0;
    for (Eigen::Index a = 0; a < v.size(); ++a) c += hadamard_sign(static_cast<std::uint64_t>(a), secret_) * norm * v(a);
    for (Eigen::Index a = 0; a < v.size(); ++a) v(a) -= 2.0 * c * hadamard_sign(static_cast<std::uint64_t>(a), secret_) * norm;
  }
  return PureState::unchecked(n_, std::move(v));
}

}  // namespace oraclelab
