#pragma once

// Independent reference computations used only by tests. Nothing here calls
// the statevector kernels it is used to check.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <vector>

#include <Eigen/Dense>

#include "oraclelab/qsim/circuit.hpp"

namespace oraclelab::testing {

using Cd = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

inline Mat kron_mat(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

/// I (x) ... (x) m (x) ... (x) I with m on qubit q (qubit 0 leftmost).
inline Mat embed_1q(const Mat& m, int n, int q) {
  Mat out = Mat::Identity(1, 1);
  for (int k = 0; k < n; ++k) out = kron_mat(out, k == q ? m : Mat(Mat::Identity(2, 2)));
  return out;
}

inline Mat projector_on(int n, int q, int value) {
  Mat p = Mat::Zero(2, 2);
  p(value, value) = 1;
  return embed_1q(p, n, q);
}

/// Full 2^n x 2^n matrix of a gate, assembled from Kronecker products of its
/// defining 2x2 blocks.
inline Mat dense_gate(const GateOp& op, int n) {
  const double r = 1.0 / std::sqrt(2.0);
  Mat hm(2, 2);
  hm << r, r, r, -r;
  Mat xm(2, 2);
  xm << 0, 1, 1, 0;
  const auto& tg = op.targets;
  const Mat id = Mat::Identity(Eigen::Index{1} << n, Eigen::Index{1} << n);
  switch (op.kind) {
    case GateKind::H: return embed_1q(hm, n, tg[0]);
    case GateKind::X: return embed_1q(xm, n, tg[0]);
    case GateKind::Z: {
      Mat zm = Mat::Identity(2, 2);
      zm(1, 1) = -1;
      return embed_1q(zm, n, tg[0]);
    }
    case GateKind::T: {
      Mat tm = Mat::Identity(2, 2);
      tm(1, 1) = std::polar(1.0, std::numbers::pi / 4);
      return embed_1q(tm, n, tg[0]);
    }
    case GateKind::CPhaseBit: {
      Mat pm = Mat::Identity(2, 2);
      pm(1, 1) = std::polar(1.0, 2 * std::numbers::pi / std::pow(2.0, op.bit));
      return embed_1q(pm, n, tg[0]);
    }
    case GateKind::CNOT:
      return projector_on(n, tg[0], 0) + projector_on(n, tg[0], 1) * embed_1q(xm, n, tg[1]);
    case GateKind::CRotBit: {
      const double th = std::numbers::pi / std::pow(2.0, op.bit + 1);
      Mat rm(2, 2);
      rm << std::cos(th), -std::sin(th), std::sin(th), std::cos(th);
      return projector_on(n, tg[0], 0) + projector_on(n, tg[0], 1) * embed_1q(rm, n, tg[1]);
    }
    case GateKind::CSwapBlock: {
      // SWAP(a, b) = (I + X_a X_b + Y_a Y_b + Z_a Z_b) / 2, multiplied over pairs.
      Mat ym(2, 2);
      ym << 0, Cd(0, -1), Cd(0, 1), 0;
      Mat zm = Mat::Identity(2, 2);
      zm(1, 1) = -1;
      const std::size_t m = (tg.size() - 1) / 2;
      Mat swaps = id;
      for (std::size_t k = 0; k < m; ++k) {
        const int a = tg[1 + k];
        const int b = tg[1 + m + k];
        Mat s = (id + embed_1q(xm, n, a) * embed_1q(xm, n, b) + embed_1q(ym, n, a) * embed_1q(ym, n, b) +
                 embed_1q(zm, n, a) * embed_1q(zm, n, b)) /
                2.0;
        swaps = s * swaps;
      }
      return projector_on(n, tg[0], 0) + projector_on(n, tg[0], 1) * swaps;
    }
  }
  return id;
}

inline Mat dense_circuit(const Circuit& c) {
  Mat u = Mat::Identity(Eigen::Index{1} << c.width(), Eigen::Index{1} << c.width());
  for (const auto& op : c.ops()) u = dense_gate(op, c.width()) * u;
  return u;
}

/// Reduced density matrix by explicit summation over the full density matrix.
inline Mat dense_partial_trace(const Vec& psi, int n, const std::vector<int>& keep_sorted) {
  const Mat rho = psi * psi.adjoint();
  const int nk = static_cast<int>(keep_sorted.size());
  std::vector<int> traced;
  for (int q = 0; q < n; ++q)
    if (std::find(keep_sorted.begin(), keep_sorted.end(), q) == keep_sorted.end()) traced.push_back(q);
  auto compose = [&](std::uint64_t a, std::uint64_t t) {
    std::uint64_t idx = 0;
    for (int i = 0; i < nk; ++i)
      if (a >> (nk - 1 - i) & 1) idx |= std::uint64_t{1} << (n - 1 - keep_sorted[static_cast<std::size_t>(i)]);
    const int nt = static_cast<int>(traced.size());
    for (int i = 0; i < nt; ++i)
      if (t >> (nt - 1 - i) & 1) idx |= std::uint64_t{1} << (n - 1 - traced[static_cast<std::size_t>(i)]);
    return static_cast<Eigen::Index>(idx);
  };
  const std::uint64_t dk = std::uint64_t{1} << nk;
  const std::uint64_t dt = std::uint64_t{1} << traced.size();
  Mat out = Mat::Zero(static_cast<Eigen::Index>(dk), static_cast<Eigen::Index>(dk));
  for (std::uint64_t a = 0; a < dk; ++a)
    for (std::uint64_t b = 0; b < dk; ++b)
      for (std::uint64_t t = 0; t < dt; ++t)
        out(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) += rho(compose(a, t), compose(b, t));
  return out;
}

/// C(n, k) as a double, by the multiplicative formula.
inline double binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  double c = 1;
  for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
  return c;
}

/// P(Bin(n, p) >= k), by direct summation.
inline double binomial_tail(int n, double p, int k) {
  double s = 0;
  for (int j = std::max(k, 0); j <= n; ++j) s += binomial(n, j) * std::pow(p, j) * std::pow(1 - p, n - j);
  return s;
}

/// P(sum of independent Bernoulli(q_j) >= k), by enumerating all 2^m outcome patterns.
inline double poisson_binomial_tail_enumerated(const std::vector<double>& q, int k) {
  const std::size_t m = q.size();
  double total = 0;
  for (std::uint64_t pattern = 0; pattern < (std::uint64_t{1} << m); ++pattern) {
    double p = 1;
    int ones = 0;
    for (std::size_t j = 0; j < m; ++j) {
      const bool one = (pattern >> j) & 1;
      ones += one;
      p *= one ? q[j] : 1 - q[j];
    }
    if (ones >= k) total += p;
  }
  return total;
}

/// Two-sided Kolmogorov-Smirnov statistic of samples against a CDF.
template <typename Cdf>
double ks_statistic(std::vector<double> samples, Cdf cdf) {
  std::sort(samples.begin(), samples.end());
  const double m = static_cast<double>(samples.size());
  double d = 0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = cdf(samples[i]);
    d = std::max({d, (static_cast<double>(i) + 1) / m - f, f - static_cast<double>(i) / m});
  }
  return d;
}

}  // namespace oraclelab::testing
