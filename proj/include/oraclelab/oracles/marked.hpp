#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "oraclelab/oracles/language.hpp"
#include "oraclelab/oracles/query_counter.hpp"
#include "oraclelab/qsim/rng.hpp"
#include "oraclelab/qsim/state.hpp"

namespace oraclelab {

namespace kernels {

/// v -= 2 (|psi><psi| (x) 1) v with psi on `targets` (targets[0] is psi's leading qubit),
/// restricted to basis indices accepted by `active_rest` (called with the index
/// with target bits cleared).
template <typename Vector, typename Pred>
void reflect_marked(Vector& v, int width, std::span<const int> targets, const Vector& psi, Pred active_rest) {
  const int k = static_cast<int>(targets.size());
  const auto local = static_cast<std::size_t>(std::uint64_t{1} << k);
  std::vector<std::uint64_t> offsets(local, 0);
  std::uint64_t all = 0;
  for (std::size_t a = 0; a < local; ++a) {
    for (int b = 0; b < k; ++b)
      if (a >> (k - 1 - b) & 1) offsets[a] |= qubit_mask(width, targets[static_cast<std::size_t>(b)]);
  }
  for (int q : targets) all |= qubit_mask(width, q);
  for (std::uint64_t base = 0; base < static_cast<std::uint64_t>(v.size()); ++base) {
    if ((base & all) || !active_rest(base)) continue;
    typename Vector::Scalar c(0);
    for (std::size_t a = 0; a < local; ++a)
      c += std::conj(psi(static_cast<Eigen::Index>(a))) * v(static_cast<Eigen::Index>(base | offsets[a]));
    c *= 2;
    for (std::size_t a = 0; a < local; ++a) v(static_cast<Eigen::Index>(base | offsets[a])) -= c * psi(static_cast<Eigen::Index>(a));
  }
}

}  // namespace kernels

/// Phase-flip oracle V = 1 - 2|psi><psi| when active, identity otherwise.
class MarkedStateOracle {
 public:
  MarkedStateOracle(PureState marked, bool active) : marked_(std::move(marked)), active_(active) {}

  int n() const { return marked_.n_qubits(); }
  const PureState& marked() const { return marked_; }
  bool active() const { return active_; }
  std::uint64_t queries() const { return counter_.value(); }

  /// One query on the n qubits `targets` of `state`; identity elsewhere.
  PureState apply(PureState state, std::span<const int> targets) const;
  /// One query on qubits first..first+n-1.
  PureState apply(PureState state, int first = 0) const;

 private:
  PureState marked_;
  bool active_;
  QueryCounter counter_;
};

inline PureState apply_marked(const MarkedStateOracle& oracle, PureState state, std::span<const int> targets) {
  return oracle.apply(std::move(state), targets);
}

/// A unit vector orthogonal to c, built from the basis vector where |c| is smallest.
PureState orthogonal_partner(const PureState& candidate);

/// Probability that one-query verification of `candidate` accepts.
double verify_case_one_probability(const MarkedStateOracle& oracle, const PureState& candidate);

/// Prepares (c + g)/sqrt2 with g orthogonal to c, queries once, and measures in the
/// {(c + g)/sqrt2, (c - g)/sqrt2} frame; accepts on the second outcome.
bool verify_case_one(const MarkedStateOracle& oracle, const PureState& candidate, Rng& rng);

/// U|psi_n>|x> = (-1)^L(x) |psi_n>|x>, identity on psi_n's orthogonal complement, on 2n qubits.
class MqsoOracle {
 public:
  MqsoOracle(PureState marked, LanguageTable language);

  int n() const { return marked_.n_qubits(); }
  const PureState& marked() const { return marked_; }
  const LanguageTable& language() const { return language_; }
  std::uint64_t queries() const { return counter_.value(); }

  PureState apply(PureState state) const;

 private:
  PureState marked_;
  LanguageTable language_;
  QueryCounter counter_;
};

inline PureState apply_mqso(const MqsoOracle& oracle, PureState state) { return oracle.apply(std::move(state)); }

}  // namespace oraclelab
