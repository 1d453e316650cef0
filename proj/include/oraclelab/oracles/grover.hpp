#pragma once

#include <cstdint>

#include "oraclelab/oracles/language.hpp"
#include "oraclelab/oracles/query_counter.hpp"
#include "oraclelab/qsim/state.hpp"

namespace oraclelab {

/// Standard oracle on 2n+1 qubits |z>|y>|b>: flips b iff z = secret and y is in L.
/// The conjugated form is (H^n (x) 1) O (H^n (x) 1).
class GroverStandardOracle {
 public:
  GroverStandardOracle(int n, std::uint64_t secret, LanguageTable language, bool conjugated = false);

  int n() const { return n_; }
  std::uint64_t secret() const { return secret_; }
  bool conjugated() const { return conjugated_; }
  const LanguageTable& language() const { return language_; }
  std::uint64_t queries() const { return counter_.value(); }

  PureState apply(PureState state) const;

  /// One classical query on basis input z, y, b; returns the output bit. Unconjugated only.
  bool query_classical(std::uint64_t z, std::uint64_t y, bool b) const;

  /// One query on a basis input of the oracle's own frame (H^n|z> for the
  /// conjugated form): the output is again a frame basis state, so the answer bit
  /// is deterministic. Equals query_classical when unconjugated.
  bool query_in_frame(std::uint64_t z, std::uint64_t y, bool b) const;

  /// One query on |phi>|y>|->: the last two registers are left unchanged, so only
  /// the n-qubit first register is tracked. Reflects phi about the marked vector
  /// (|secret>, or H^n|secret> when conjugated) iff y is in L.
  PureState apply_kickback(PureState first_register, std::uint64_t y) const;

 private:
  int n_;
  std::uint64_t secret_;
  LanguageTable language_;
  bool conjugated_;
  QueryCounter counter_;
};

inline PureState apply_grover(const GroverStandardOracle& oracle, PureState state) {
  return oracle.apply(std::move(state));
}

}  // namespace oraclelab
