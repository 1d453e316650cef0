#include "oraclelab/mqst/fidelity_law.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "oraclelab/qsim/measures.hpp"
#include "oraclelab/qsim/random.hpp"

namespace oraclelab {

double haar_fidelity_cdf(int n, double epsilon) {
  detail::require(n >= 1 && n <= 30, "n must lie in 1..30");
  const double e = std::clamp(epsilon, 0.0, 1.0);
  return 1 - std::pow(1 - e, std::ldexp(1.0, n) - 1);
}

std::vector<double> sample_haar_fidelities(int n, int count, Rng& rng) {
  detail::require(count >= 0, "count must be non-negative");
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    const auto a = haar_random_state(n, rng);
    const auto b = haar_random_state(n, rng);
    out.push_back(fidelity(a, b));
  }
  return out;
}

double haar_fidelity_ks(int n, std::vector<double> samples) {
  detail::require(!samples.empty(), "no samples");
  std::sort(samples.begin(), samples.end());
  const double m = static_cast<double>(samples.size());
  double d = 0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = haar_fidelity_cdf(n, samples[i]);
    d = std::max({d, static_cast<double>(i + 1) / m - f, f - static_cast<double>(i) / m});
  }
  return d;
}

MeanEstimate mean_with_error(const std::vector<double>& values) {
  detail::require(values.size() >= 2, "need at least two values");
  const double m = static_cast<double>(values.size());
  const double mean = std::accumulate(values.begin(), values.end(), 0.0) / m;
  double ss = 0;
  for (double v : values) ss += (v - mean) * (v - mean);
  return {mean, std::sqrt(ss / (m - 1) / m)};
}

}  // namespace oraclelab
