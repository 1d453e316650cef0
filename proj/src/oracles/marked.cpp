#include "oraclelab/oracles/marked.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "oraclelab/qsim/measures.hpp"

namespace oraclelab {

PureState MarkedStateOracle::apply(PureState state, std::span<const int> targets) const {
  const int width = state.n_qubits();
  detail::require(static_cast<int>(targets.size()) == n(), "marked oracle needs exactly " + std::to_string(n()) +
                                                               " target qubits, got " + std::to_string(targets.size()));
  for (std::size_t i = 0; i < targets.size(); ++i) {
    detail::require(targets[i] >= 0 && targets[i] < width, "marked oracle target out of range");
    for (std::size_t j = i + 1; j < targets.size(); ++j) detail::require(targets[i] != targets[j], "marked oracle targets must be distinct");
  }
  counter_.add();
  if (!active_) return state;
  auto v = std::move(state).release();
  kernels::reflect_marked(v, width, targets, marked_.amplitudes(), [](std::uint64_t) { return true; });
  return PureState::unchecked(width, std::move(v));
}

PureState MarkedStateOracle::apply(PureState state, int first) const {
  detail::require(first >= 0 && first + n() <= state.n_qubits(), "marked oracle span exceeds the register");
  const auto targets = qubit_range(first, n());
  return apply(std::move(state), targets);
}

PureState orthogonal_partner(const PureState& candidate) {
  Eigen::Index k = 0;
  candidate.amplitudes().cwiseAbs().minCoeff(&k);
  // e_k - <c|e_k> c
  Amplitudes g = -std::conj(candidate.amplitudes()(k)) * candidate.amplitudes();
  g(k) += 1.0;
  return PureState::normalized(std::move(g));
}

namespace {

struct VerifyFrame {
  PureState probe;
  Amplitudes accept_vector;
};

VerifyFrame verify_frame(const MarkedStateOracle& oracle, const PureState& candidate) {
  detail::require(candidate.n_qubits() == oracle.n(), "candidate width does not match the marked oracle");
  const PureState g = orthogonal_partner(candidate);
  const double r = std::numbers::sqrt2 / 2;
  return {PureState::unchecked(candidate.n_qubits(), r * (candidate.amplitudes() + g.amplitudes())),
          r * (candidate.amplitudes() - g.amplitudes())};
}

}  // namespace

double verify_case_one_probability(const MarkedStateOracle& oracle, const PureState& candidate) {
  auto frame = verify_frame(oracle, candidate);
  const PureState out = oracle.apply(std::move(frame.probe), 0);
  return std::norm(frame.accept_vector.dot(out.amplitudes()));
}

bool verify_case_one(const MarkedStateOracle& oracle, const PureState& candidate, Rng& rng) {
  return rng.uniform() < verify_case_one_probability(oracle, candidate);
}

MqsoOracle::MqsoOracle(PureState marked, LanguageTable language)
    : marked_(std::move(marked)), language_(std::move(language)) {
  detail::require(language_.has_length(marked_.n_qubits()), "language has no table for the marked-state width");
  check_width(2 * marked_.n_qubits());
}

PureState MqsoOracle::apply(PureState state) const {
  const int m = n();
  detail::require(state.n_qubits() == 2 * m, "MQSO acts on " + std::to_string(2 * m) + " qubits, got " +
                                                  std::to_string(state.n_qubits()));
  counter_.add();
  auto v = std::move(state).release();
  const auto targets = qubit_range(0, m);
  const std::uint64_t low = (std::uint64_t{1} << m) - 1;
  kernels::reflect_marked(v, 2 * m, targets, marked_.amplitudes(),
                          [&](std::uint64_t rest) { return language_.contains(m, rest & low); });
  return PureState::unchecked(2 * m, std::move(v));
}

}  // namespace oraclelab
