#pragma once

#include <vector>

#include "oraclelab/qsim/rng.hpp"

namespace oraclelab {

/// P(F < eps) = 1 - (1-eps)^(N-1) for Haar pairs in dimension N = 2^n.
double haar_fidelity_cdf(int n, double epsilon);

/// |<a|b>|^2 for `count` independent Haar pairs.
std::vector<double> sample_haar_fidelities(int n, int count, Rng& rng);

/// Two-sided Kolmogorov-Smirnov distance of samples to the Haar fidelity law.
double haar_fidelity_ks(int n, std::vector<double> samples);

struct MeanEstimate {
  double mean = 0;
  double standard_error = 0;
};

MeanEstimate mean_with_error(const std::vector<double>& values);

}  // namespace oraclelab
