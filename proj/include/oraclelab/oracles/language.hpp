#pragma once

#include <cstdint>
#include <map>
#include <string_view>
#include <vector>

namespace oraclelab {

/// Binary language given by explicit membership sets, one per string length.
/// Each length n holds exactly floor(2^n / 2) members.
class LanguageTable {
 public:
  LanguageTable() = default;

  /// Seeded sampling without replacement, independently per length.
  static LanguageTable random(const std::vector<int>& lengths, std::uint64_t seed);

  /// Explicit members for one length; the count must be floor(2^n / 2).
  void set_members(int n, std::vector<std::uint64_t> members);

  bool has_length(int n) const { return membership_.count(n) != 0; }
  bool contains(int n, std::uint64_t x) const;
  bool contains(std::string_view bits) const;
  /// Sorted members of length n.
  std::vector<std::uint64_t> members(int n) const;
  std::vector<int> lengths() const;

 private:
  std::map<int, std::vector<bool>> membership_;
};

}  // namespace oraclelab
