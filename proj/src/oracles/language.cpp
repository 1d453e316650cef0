#include "oraclelab/oracles/language.hpp"

#include <numeric>
#include <string>

#include "oraclelab/qsim/rng.hpp"
#include "oraclelab/qsim/state.hpp"

namespace oraclelab {

LanguageTable LanguageTable::random(const std::vector<int>& lengths, std::uint64_t seed) {
  LanguageTable table;
  for (int n : lengths) {
    detail::require(n >= 1 && n <= 20, "language string length must lie in 1..20");
    const std::uint64_t size = std::uint64_t{1} << n;
    std::vector<std::uint64_t> pool(size);
    std::iota(pool.begin(), pool.end(), std::uint64_t{0});
    Rng rng = Rng::derive(seed, static_cast<std::uint64_t>(n), "language");
    const std::uint64_t pick = size / 2;
    for (std::uint64_t i = 0; i < pick; ++i) std::swap(pool[i], pool[i + rng.below(size - i)]);
    pool.resize(pick);
    table.set_members(n, std::move(pool));
  }
  return table;
}

void LanguageTable::set_members(int n, std::vector<std::uint64_t> members) {
  detail::require(n >= 1 && n <= 20, "language string length must lie in 1..20");
  const std::uint64_t size = std::uint64_t{1} << n;
  std::vector<bool> bits(size, false);
  for (auto x : members) {
    detail::require(x < size, "language member out of range for its length");
    detail::require(!bits[x], "language members must be distinct");
    bits[x] = true;
  }
  detail::require(members.size() == size / 2,
                  "a length-" + std::to_string(n) + " language set needs exactly " + std::to_string(size / 2) + " members");
  membership_[n] = std::move(bits);
}

bool LanguageTable::contains(int n, std::uint64_t x) const {
  const auto it = membership_.find(n);
  detail::require(it != membership_.end(), "language has no table for length " + std::to_string(n));
  detail::require(x < it->second.size(), "string out of range for its length");
  return it->second[x];
}

bool LanguageTable::contains(std::string_view bits) const {
  return contains(static_cast<int>(bits.size()), bits_to_index(bits));
}

std::vector<std::uint64_t> LanguageTable::members(int n) const {
  std::vector<std::uint64_t> out;
  const auto it = membership_.find(n);
  if (it == membership_.end()) return out;
  for (std::uint64_t x = 0; x < it->second.size(); ++x)
    if (it->second[x]) out.push_back(x);
  return out;
}

std::vector<int> LanguageTable::lengths() const {
  std::vector<int> out;
  for (const auto& [n, _] : membership_) out.push_back(n);
  return out;
}

}  // namespace oraclelab
