#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "oraclelab/oracles/query_counter.hpp"
#include "oraclelab/qsim/state.hpp"

namespace oraclelab {

enum class Symbol : std::uint8_t { Zero, One, Sep };

using SymbolString = std::vector<Symbol>;

/// Accepts '0', '1', and '#' or U+25A1 for the separator.
SymbolString parse_symbols(std::string_view text);
/// Renders the separator as U+25A1, or '#' when ascii is set.
std::string to_text(const SymbolString& s, bool ascii = false);

/// Sparse superposition over symbol strings.
using SymbolSuperposition = std::map<SymbolString, std::complex<double>>;

/// Qubit placement of one formatted query b [] p [] a on a register; separators are
/// classical and not stored. b_qubits has length k (0 <= k <= n), p_qubits holds p
/// in binary, most significant first.
struct QueryLayout {
  std::vector<int> b_qubits;
  std::vector<int> p_qubits;
  int a_qubit = 0;
};

/// Standard state-preparation oracle. Stores, for every prefix b_1..b_k (k < n),
/// the conditional branch angle alpha = 2 asin(sqrt(P(b_1..b_k 1) / P(b_1..b_k))) / pi,
/// and for every full string b the phase fraction arg<b|psi> / 2pi mod 1, both as
/// 64-digit binary fractions.
class BitStringOracle {
 public:
  static constexpr int kDigits = 64;

  explicit BitStringOracle(PureState reference);

  int n() const { return reference_.n_qubits(); }
  const PureState& reference() const { return reference_; }
  std::uint64_t queries() const { return counter_.value(); }

  /// Binary digits of alpha for a k-bit prefix; digit p is bit (63 - p).
  std::uint64_t alpha_fraction(int k, std::uint64_t prefix) const;
  std::uint64_t phase_fraction(std::uint64_t b) const;
  double alpha(int k, std::uint64_t prefix) const;
  double phase(std::uint64_t b) const;

  /// Digit p of a stored fraction; digits at p >= 64 read 0.
  static int digit(std::uint64_t fraction, std::uint64_t p);
  /// 0.d_0 d_1 ... d_{bits-1} of a stored fraction.
  static double truncated(std::uint64_t fraction, int bits);

  /// Classical query. Strings not of the form b [] p [] a with |b| <= n map to themselves.
  SymbolString query(const SymbolString& s) const;
  std::string query(std::string_view text) const;

  /// Coherent query on a superposition of strings sharing separator positions.
  SymbolSuperposition query(const SymbolSuperposition& s) const;

  /// Coherent query on qubits: flips a_qubit on basis states where the addressed digit is 1.
  PureState query_register(PureState state, const QueryLayout& layout) const;

  /// Final bit of query(b [] p [] 0), as one classical query.
  int query_alpha_bit(int k, std::uint64_t prefix, std::uint64_t p) const;
  int query_phase_bit(std::uint64_t b, std::uint64_t p) const;

 private:
  std::uint64_t table_entry(int k, std::uint64_t b) const;

  PureState reference_;
  std::vector<std::vector<std::uint64_t>> alpha_;  // alpha_[k][prefix], k < n
  std::vector<std::uint64_t> phase_;
  QueryCounter counter_;
};

}  // namespace oraclelab
