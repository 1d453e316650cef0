#include "oraclelab/mqst/grover_search.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "oraclelab/qsim/apply.hpp"
#include "oraclelab/qsim/measurement.hpp"

namespace oraclelab {

namespace {

// 2|0><0| - 1
PureState reflect_about_zero(PureState state) {
  const int n = state.n_qubits();
  auto v = std::move(state).release();
  v.tail(v.size() - 1) *= -1.0;
  return PureState::unchecked(n, std::move(v));
}

}  // namespace

int grover_iterations(int n) {
  detail::require(n >= 1 && n <= 30, "n must lie in 1..30");
  return std::max(1, static_cast<int>(std::floor(std::numbers::pi / 4 * std::sqrt(std::ldexp(1.0, n)))));
}

PureState grover_amplify(const GroverStandardOracle& oracle, std::uint64_t y, int iterations) {
  detail::require(iterations >= 0, "iteration count must be non-negative");
  const int n = oracle.n();
  // The conjugated oracle reflects about H|x>, so the natural start is |0> and the
  // diffusion reflects about |0>; the unconjugated one needs the Hadamard frame.
  const bool conj = oracle.conjugated();
  PureState state = conj ? PureState::zero(n) : hadamard_all(PureState::zero(n));
  for (int i = 0; i < iterations; ++i) {
    state = oracle.apply_kickback(std::move(state), y);
    if (conj) {
      state = reflect_about_zero(std::move(state));
    } else {
      state = hadamard_all(reflect_about_zero(hadamard_all(std::move(state))));
    }
  }
  return conj ? hadamard_all(std::move(state)) : state;
}

SearchResult grover_search(const GroverStandardOracle& oracle, std::uint64_t y, Rng& rng, int max_attempts) {
  const std::uint64_t start = oracle.queries();
  const int iters = grover_iterations(oracle.n());
  SearchResult r;
  while (r.attempts < max_attempts && !r.found) {
    ++r.attempts;
    const auto state = grover_amplify(oracle, y, iters);
    r.candidate = sample_index(born_probabilities(state), rng);
    r.found = oracle.query_in_frame(r.candidate, y, false);
  }
  r.queries = oracle.queries() - start;
  return r;
}

SearchResult classical_search(const GroverStandardOracle& oracle, std::uint64_t y, Rng& rng) {
  const std::uint64_t dim = std::uint64_t{1} << oracle.n();
  std::vector<std::uint64_t> order(dim);
  std::iota(order.begin(), order.end(), std::uint64_t{0});
  SearchResult r;
  for (std::uint64_t i = 0; i < dim && !r.found; ++i) {
    std::swap(order[i], order[i + rng.below(dim - i)]);
    r.candidate = order[i];
    ++r.queries;
    r.found = oracle.query_in_frame(r.candidate, y, false);
  }
  r.attempts = 1;
  return r;
}

double median(std::vector<double> values) {
  detail::require(!values.empty(), "median of an empty sample");
  std::sort(values.begin(), values.end());
  const std::size_t m = values.size() / 2;
  return values.size() % 2 ? values[m] : (values[m - 1] + values[m]) / 2;
}

ScalingRow grover_scaling_row(int n, int trials, std::uint64_t seed, bool conjugated) {
  detail::require(n >= 1 && n <= 12, "n must lie in 1..12");
  detail::require(trials >= 1, "trials must be positive");
  ScalingRow row{n, 0, 0, trials, 0};
  std::vector<double> quantum, classical;
  for (int t = 0; t < trials; ++t) {
    Rng rng = Rng::derive(seed, static_cast<std::uint64_t>(t), "grover/" + std::to_string(n));
    const auto language = LanguageTable::random({n}, rng.split("language").below(~std::uint64_t{0}));
    const std::uint64_t secret = rng.below(std::uint64_t{1} << n);
    const auto members = language.members(n);
    const std::uint64_t y = members[rng.below(members.size())];
    const GroverStandardOracle oracle(n, secret, language, conjugated);
    Rng qrng = rng.split("quantum");
    const auto q = grover_search(oracle, y, qrng);
    row.quantum_failures += !q.found;
    quantum.push_back(static_cast<double>(q.queries));
    Rng crng = rng.split("classical");
    classical.push_back(static_cast<double>(classical_search(oracle, y, crng).queries));
  }
  row.quantum_median = median(quantum);
  row.classical_median = median(classical);
  return row;
}

std::vector<ScalingRow> grover_query_scaling(const std::vector<int>& ns, int trials, std::uint64_t seed, bool conjugated) {
  std::vector<ScalingRow> out;
  for (int n : ns) out.push_back(grover_scaling_row(n, trials, seed, conjugated));
  return out;
}

}  // namespace oraclelab
