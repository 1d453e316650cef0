#include "oraclelab/mqst/distinguish.hpp"

#include <cmath>
#include <limits>

#include "oraclelab/qsim/apply.hpp"
#include "oraclelab/qsim/measures.hpp"
#include "oraclelab/qsim/random.hpp"

namespace oraclelab {

namespace {

PureState apply_step(PureState state, const StrategyStep& step) {
  if (const auto* c = std::get_if<Circuit>(&step)) {
    detail::require(c->width() == state.n_qubits(), "strategy circuit width does not match the register");
    return apply_circuit(std::move(state), *c);
  }
  const auto& u = std::get<ComplexMatrix>(step);
  detail::require(u.rows() == state.dim() && u.cols() == state.dim(), "strategy unitary does not match the register");
  return PureState::from_amplitudes(u * state.amplitudes());
}

// psi (x) |0...0> padded to `width` qubits, and a unit vector orthogonal to psi on the leading qubits.
std::pair<Amplitudes, Amplitudes> anchored_pair(const PureState& marked, int width, Rng& rng) {
  const int n = marked.n_qubits();
  detail::require(width >= n, "register narrower than the marked state");
  const Eigen::Index rest = Eigen::Index{1} << (width - n);
  Amplitudes anchor = Amplitudes::Zero(Eigen::Index{1} << width);
  for (Eigen::Index i = 0; i < marked.dim(); ++i) anchor(i * rest) = marked[static_cast<std::uint64_t>(i)];
  auto g = haar_random_state(width, rng).release();
  Eigen::Map<Eigen::Matrix<std::complex<double>, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> gm(g.data(), marked.dim(), rest);
  const Eigen::RowVectorXcd proj = marked.amplitudes().adjoint() * gm;
  gm -= marked.amplitudes() * proj;
  g.normalize();
  return {anchor, g};
}

}  // namespace

double overlap_after_phase_flip(const PureState& phi, const std::vector<PureState>& marked, std::span<const int> targets) {
  detail::require(!marked.empty(), "marked set is empty");
  detail::require(std::is_sorted(targets.begin(), targets.end()) &&
                      std::adjacent_find(targets.begin(), targets.end()) == targets.end(),
                  "targets must be strictly ascending");
  for (std::size_t i = 0; i < marked.size(); ++i) {
    detail::require(marked[i].n_qubits() == static_cast<int>(targets.size()), "marked state width does not match targets");
    for (std::size_t j = i + 1; j < marked.size(); ++j)
      detail::require(std::abs(inner(marked[i], marked[j])) <= kTolerance, "marked states must be mutually orthogonal");
  }
  const auto rho = partial_trace(phi, targets);
  double f = 0;
  for (const auto& psi : marked) f += fidelity(psi, rho);
  return 1 - 2 * f;
}

IndistBound indist_bound(int k, double epsilon) {
  detail::require(k >= 0, "query count must be non-negative");
  detail::require(epsilon >= 0 && std::isfinite(epsilon), "epsilon must be a non-negative number");
  IndistBound b;
  const double x = 2.0 * k * epsilon;
  b.radicand = 2 * std::sqrt(x) + 2 * x - 2 * std::pow(x, 1.5);
  b.raw = b.radicand >= 0 ? std::sqrt(b.radicand) : std::numeric_limits<double>::quiet_NaN();
  b.in_regime = k * epsilon < 0.5;
  b.clamped = b.in_regime ? std::min(1.0, b.raw) : 1.0;
  return b;
}

double indist_bound_leading(int k, double epsilon) {
  detail::require(k >= 0 && epsilon >= 0, "arguments must be non-negative");
  return 3 * std::pow(k * epsilon, 0.25);
}

DistinguishRun run_mqst_distinguish(const Strategy& strategy, const MarkedStateOracle& oracle) {
  const int n = oracle.marked().n_qubits();
  detail::require(!strategy.steps.empty(), "strategy needs at least one step");
  detail::require(strategy.width >= n, "register narrower than the oracle");
  const auto keep = qubit_range(0, n);
  DistinguishRun run;
  run.k = strategy.queries();
  PureState same = PureState::zero(strategy.width);
  PureState flipped = same;
  for (int l = 0; l < run.k; ++l) {
    same = apply_step(std::move(same), strategy.steps[static_cast<std::size_t>(l)]);
    flipped = apply_step(std::move(flipped), strategy.steps[static_cast<std::size_t>(l)]);
    run.epsilon = std::max(run.epsilon, fidelity(oracle.marked(), partial_trace(same, keep)));
    flipped = oracle.apply(std::move(flipped), 0);
  }
  run.distance_at_query = trace_distance_pure(same, flipped);
  same = apply_step(std::move(same), strategy.steps.back());
  flipped = apply_step(std::move(flipped), strategy.steps.back());
  run.distance = trace_distance_pure(same, flipped);
  run.marginal_distance = trace_distance(partial_trace(same, keep), partial_trace(flipped, keep));
  run.bound = indist_bound(run.k, run.epsilon);
  run.violated = run.distance_at_query > run.bound.clamped + 1e-8;
  return run;
}

Strategy random_strategy(int width, int k, int depth, Rng& rng, const GateSet& gates) {
  detail::require(k >= 0, "query count must be non-negative");
  Strategy s{width, {}, "random"};
  for (int l = 0; l <= k; ++l) s.steps.emplace_back(random_circuit(width, depth, rng, gates));
  return s;
}

ComplexMatrix unitary_with_first_column(const Amplitudes& target) {
  const Eigen::Index dim = target.size();
  detail::require(std::abs(target.norm() - 1) <= kTolerance, "target column must be normalized");
  const double phase = std::arg(target(0));
  const std::complex<double> rot = std::polar(1.0, phase);
  // Householder reflection taking e_0 to conj(rot) * target, then the global phase.
  Amplitudes u = -target / rot;
  u(0) += 1.0;
  const double un = u.norm();
  ComplexMatrix h = ComplexMatrix::Identity(dim, dim);
  if (un > 1e-14) {
    u /= un;
    h -= 2.0 * u * u.adjoint();
  }
  return rot * h;
}

Strategy near_marked_strategy(const PureState& marked, int width, int k, double epsilon, Rng& rng) {
  detail::require(epsilon >= 0 && epsilon <= 1, "epsilon must lie in [0, 1]");
  detail::require(k >= 1, "strategy needs at least one query");
  const auto [anchor, gamma] = anchored_pair(marked, width, rng);
  const Amplitudes probe = std::sqrt(epsilon) * anchor + std::sqrt(1 - epsilon) * gamma;
  Strategy s{width, {}, "near-marked"};
  s.steps.emplace_back(unitary_with_first_column(probe));
  for (int l = 1; l <= k; ++l) s.steps.emplace_back(Circuit(width));
  return s;
}

Strategy amplifying_strategy(const PureState& marked, int width, int k, double epsilon, Rng& rng) {
  Strategy s = near_marked_strategy(marked, width, k, epsilon, rng);
  s.name = "amplifying";
  const Amplitudes probe = std::get<ComplexMatrix>(s.steps.front()).col(0);
  const ComplexMatrix reflect = 2.0 * probe * probe.adjoint() - ComplexMatrix::Identity(probe.size(), probe.size());
  for (int l = 1; l < k; ++l) s.steps[static_cast<std::size_t>(l)] = reflect;
  return s;
}

}  // namespace oraclelab
