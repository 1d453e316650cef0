#include "oraclelab/oracles/bitstring.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace oraclelab {

namespace {

constexpr std::string_view kBoxUtf8 = "\xE2\x96\xA1";

// Amplitudes arrive in double precision, so digits past 2^-48 carry rounding noise.
// Fractions are rounded to the nearest multiple of 2^-48; a value that rounds up to 1
// is stored as 0.111...
std::uint64_t to_fraction(long double x, bool saturate_at_one) {
  constexpr long double scale = 281474976710656.0L;  // 2^48
  auto q = static_cast<std::uint64_t>(std::llround(x * scale));
  if (q >= (std::uint64_t{1} << 48)) return saturate_at_one ? std::numeric_limits<std::uint64_t>::max() : 0;
  return q << 16;
}

struct Parsed {
  bool ok = false;
  std::size_t k = 0;
  std::uint64_t b = 0;
  std::uint64_t p = 0;  // saturates at 64
  std::size_t a_pos = 0;
};

Parsed parse_format(const SymbolString& s, int n) {
  Parsed out;
  std::vector<std::size_t> seps;
  for (std::size_t i = 0; i < s.size(); ++i)
    if (s[i] == Symbol::Sep) seps.push_back(i);
  if (seps.size() != 2) return out;
  const std::size_t k = seps[0];
  if (k > static_cast<std::size_t>(n)) return out;
  if (seps[1] == seps[0] + 1) return out;        // empty p
  if (seps[1] + 2 != s.size()) return out;       // exactly one symbol for a
  for (std::size_t i = 0; i < k; ++i) out.b = (out.b << 1) | (s[i] == Symbol::One);
  for (std::size_t i = seps[0] + 1; i < seps[1]; ++i) {
    const std::uint64_t bit = s[i] == Symbol::One;
    out.p = out.p >= 64 ? 64 : std::min<std::uint64_t>((out.p << 1) | bit, 64);
  }
  out.k = k;
  out.a_pos = s.size() - 1;
  out.ok = true;
  return out;
}

}  // namespace

SymbolString parse_symbols(std::string_view text) {
  SymbolString out;
  for (std::size_t i = 0; i < text.size();) {
    if (text[i] == '0' || text[i] == '1') {
      out.push_back(text[i] == '1' ? Symbol::One : Symbol::Zero);
      ++i;
    } else if (text[i] == '#') {
      out.push_back(Symbol::Sep);
      ++i;
    } else if (text.substr(i, kBoxUtf8.size()) == kBoxUtf8) {
      out.push_back(Symbol::Sep);
      i += kBoxUtf8.size();
    } else {
      throw InvalidInput("symbol strings may only contain 0, 1 and the separator");
    }
  }
  return out;
}

std::string to_text(const SymbolString& s, bool ascii) {
  std::string out;
  for (Symbol c : s) {
    if (c == Symbol::Sep) out += ascii ? std::string_view("#") : kBoxUtf8;
    else out += c == Symbol::One ? '1' : '0';
  }
  return out;
}

BitStringOracle::BitStringOracle(PureState reference) : reference_(std::move(reference)) {
  const int n = reference_.n_qubits();
  // probability[k][prefix], accumulated bottom-up in extended precision.
  std::vector<std::vector<long double>> probability(static_cast<std::size_t>(n + 1));
  probability[static_cast<std::size_t>(n)].resize(static_cast<std::size_t>(reference_.dim()));
  phase_.resize(static_cast<std::size_t>(reference_.dim()));
  for (std::uint64_t b = 0; b < static_cast<std::uint64_t>(reference_.dim()); ++b) {
    const std::complex<long double> amp(reference_[b].real(), reference_[b].imag());
    probability[static_cast<std::size_t>(n)][b] = std::norm(amp);
    if (amp == std::complex<long double>(0)) {
      phase_[b] = 0;
    } else {
      long double f = std::arg(amp) / (2 * std::numbers::pi_v<long double>);
      if (f < 0) f += 1;
      phase_[b] = to_fraction(f, false);
    }
  }
  for (int k = n - 1; k >= 0; --k) {
    auto& level = probability[static_cast<std::size_t>(k)];
    const auto& next = probability[static_cast<std::size_t>(k + 1)];
    level.resize(std::size_t{1} << k);
    for (std::size_t prefix = 0; prefix < level.size(); ++prefix) level[prefix] = next[2 * prefix] + next[2 * prefix + 1];
  }
  alpha_.resize(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    auto& row = alpha_[static_cast<std::size_t>(k)];
    const auto& level = probability[static_cast<std::size_t>(k)];
    const auto& next = probability[static_cast<std::size_t>(k + 1)];
    row.resize(level.size());
    for (std::size_t prefix = 0; prefix < level.size(); ++prefix) {
      if (level[prefix] <= 0) {
        row[prefix] = 0;
        continue;
      }
      const long double ratio = std::clamp(next[2 * prefix + 1] / level[prefix], 0.0L, 1.0L);
      row[prefix] = to_fraction(2 * std::asin(std::sqrt(ratio)) / std::numbers::pi_v<long double>, true);
    }
  }
}

std::uint64_t BitStringOracle::alpha_fraction(int k, std::uint64_t prefix) const {
  detail::require(k >= 0 && k < n(), "prefix length must lie in 0..n-1");
  detail::require(prefix < (std::uint64_t{1} << k), "prefix out of range");
  return alpha_[static_cast<std::size_t>(k)][prefix];
}

std::uint64_t BitStringOracle::phase_fraction(std::uint64_t b) const {
  detail::require(b < phase_.size(), "string out of range");
  return phase_[b];
}

double BitStringOracle::alpha(int k, std::uint64_t prefix) const {
  const std::uint64_t f = alpha_fraction(k, prefix);
  return f == std::numeric_limits<std::uint64_t>::max() ? 1.0 : std::ldexp(static_cast<double>(f), -64);
}

double BitStringOracle::phase(std::uint64_t b) const { return std::ldexp(static_cast<double>(phase_fraction(b)), -64); }

int BitStringOracle::digit(std::uint64_t fraction, std::uint64_t p) {
  if (p >= static_cast<std::uint64_t>(kDigits)) return 0;
  return static_cast<int>((fraction >> (63 - p)) & 1);
}

double BitStringOracle::truncated(std::uint64_t fraction, int bits) {
  detail::require(bits >= 0 && bits <= kDigits, "digit count must lie in 0..64");
  if (bits == 0) return 0;
  const std::uint64_t kept = bits == 64 ? fraction : fraction >> (64 - bits);
  return std::ldexp(static_cast<double>(kept), -bits);
}

std::uint64_t BitStringOracle::table_entry(int k, std::uint64_t b) const {
  return k == n() ? phase_[b] : alpha_[static_cast<std::size_t>(k)][b];
}

SymbolString BitStringOracle::query(const SymbolString& s) const {
  counter_.add();
  const Parsed f = parse_format(s, n());
  SymbolString out = s;
  if (!f.ok) return out;
  if (digit(table_entry(static_cast<int>(f.k), f.b), f.p)) {
    out[f.a_pos] = out[f.a_pos] == Symbol::One ? Symbol::Zero : Symbol::One;
  }
  return out;
}

std::string BitStringOracle::query(std::string_view text) const {
  const bool ascii = text.find('#') != std::string_view::npos;
  return to_text(query(parse_symbols(text)), ascii);
}

SymbolSuperposition BitStringOracle::query(const SymbolSuperposition& s) const {
  const SymbolString* first = nullptr;
  for (const auto& [str, amp] : s) {
    if (amp == std::complex<double>(0)) continue;
    if (!first) {
      first = &str;
      continue;
    }
    bool same = str.size() == first->size();
    for (std::size_t i = 0; same && i < str.size(); ++i) same = (str[i] == Symbol::Sep) == ((*first)[i] == Symbol::Sep);
    detail::require(same, "superposed strings must share separator positions");
  }
  counter_.add();
  SymbolSuperposition out;
  for (const auto& [str, amp] : s) {
    const Parsed f = parse_format(str, n());
    SymbolString image = str;
    if (f.ok && digit(table_entry(static_cast<int>(f.k), f.b), f.p)) {
      image[f.a_pos] = image[f.a_pos] == Symbol::One ? Symbol::Zero : Symbol::One;
    }
    out[image] += amp;
  }
  return out;
}

PureState BitStringOracle::query_register(PureState state, const QueryLayout& layout) const {
  const int width = state.n_qubits();
  const int k = static_cast<int>(layout.b_qubits.size());
  detail::require(k <= n(), "query register addresses more than n string bits");
  detail::require(!layout.p_qubits.empty(), "query register needs at least one p qubit");
  std::vector<int> all = layout.b_qubits;
  all.insert(all.end(), layout.p_qubits.begin(), layout.p_qubits.end());
  all.push_back(layout.a_qubit);
  for (std::size_t i = 0; i < all.size(); ++i) {
    detail::require(all[i] >= 0 && all[i] < width, "query register qubit out of range");
    for (std::size_t j = i + 1; j < all.size(); ++j) detail::require(all[i] != all[j], "query register qubits must be distinct");
  }
  counter_.add();
  const std::uint64_t amask = qubit_mask(width, layout.a_qubit);
  auto v = std::move(state).release();
  for (std::uint64_t idx = 0; idx < static_cast<std::uint64_t>(v.size()); ++idx) {
    if (idx & amask) continue;
    std::uint64_t b = 0, p = 0;
    for (int q : layout.b_qubits) b = (b << 1) | ((idx & qubit_mask(width, q)) != 0);
    for (int q : layout.p_qubits) p = std::min<std::uint64_t>((p << 1) | ((idx & qubit_mask(width, q)) != 0), 64);
    if (digit(table_entry(k, b), p)) std::swap(v(static_cast<Eigen::Index>(idx)), v(static_cast<Eigen::Index>(idx | amask)));
  }
  return PureState::unchecked(width, std::move(v));
}

int BitStringOracle::query_alpha_bit(int k, std::uint64_t prefix, std::uint64_t p) const {
  const std::uint64_t f = alpha_fraction(k, prefix);
  counter_.add();
  return digit(f, p);
}

int BitStringOracle::query_phase_bit(std::uint64_t b, std::uint64_t p) const {
  const std::uint64_t f = phase_fraction(b);
  counter_.add();
  return digit(f, p);
}

}  // namespace oraclelab
