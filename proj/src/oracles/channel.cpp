#include "oraclelab/oracles/channel.hpp"

#include <bit>
#include <cmath>
#include <string>

#include "oraclelab/qsim/apply.hpp"
#include "oraclelab/qsim/measurement.hpp"
#include "oraclelab/qsim/measures.hpp"

namespace oraclelab {

int channel_threshold(double kappa, int n) {
  detail::require(kappa > 0 && kappa < 1, "kappa must lie in (0, 1)");
  // Guard against kappa * n landing a rounding step above an integer.
  const int t = static_cast<int>(std::ceil(kappa * n - 1e-9));
  return std::max(t, 1);
}

PureState kron_all(const std::vector<PureState>& parts) {
  detail::require(!parts.empty(), "nothing to tensor together");
  PureState out = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) out = kron(out, parts[i]);
  return out;
}

ChannelOracle::ChannelOracle(std::vector<PureState> marked, double kappa, bool language_bit, Rng rng, ChannelReply reply)
    : marked_(std::move(marked)), kappa_(kappa), language_bit_(language_bit), rng_(std::move(rng)), reply_(reply) {
  const int n = static_cast<int>(marked_.size());
  detail::require(n >= 1, "channel needs at least one marked state");
  for (const auto& m : marked_) detail::require(m.n_qubits() == n, "each marked state must have n qubits");
  channel_threshold(kappa_, n);
}

namespace {

void check_input_shape(const std::vector<PureState>& marked, const ChannelInput& input) {
  const int n = static_cast<int>(marked.size());
  if (const auto* p = std::get_if<ProductBlocks>(&input)) {
    detail::require(static_cast<int>(p->blocks.size()) == n, "channel input needs " + std::to_string(n) + " blocks");
    for (const auto& b : p->blocks) detail::require(b.n_qubits() == n, "each input block must have n qubits");
    detail::require(p->answer.n_qubits() == 1, "answer register must be one qubit");
  } else {
    const auto& s = std::get<PureState>(input);
    detail::require(s.n_qubits() == n * n + 1, "channel input must have n^2 + 1 qubits");
  }
}

DensityOperator flip_if(const DensityOperator& rho, bool flip) {
  if (!flip) return rho;
  ComplexMatrix m = rho.matrix();
  ComplexMatrix out(2, 2);
  out << m(1, 1), m(1, 0), m(0, 1), m(0, 0);
  return DensityOperator::unchecked(1, std::move(out));
}

// (prod_j E_j^{s_j}) v with E^1 = (1 + P_j)/2, E^0 = (1 - P_j)/2, P_j the projector
// onto marked[j] on block j.
Amplitudes apply_test_effects(const std::vector<PureState>& marked, const Amplitudes& sigma, std::uint64_t pattern) {
  const int n = static_cast<int>(marked.size());
  const int width = n * n + 1;
  Amplitudes w = sigma;
  for (int j = 0; j < n; ++j) {
    Amplitudes reflected = w;
    const auto targets = qubit_range(j * n, n);
    kernels::reflect_marked(reflected, width, targets, marked[static_cast<std::size_t>(j)].amplitudes(),
                            [](std::uint64_t) { return true; });
    const Amplitudes proj = (w - reflected) / 2.0;
    const bool pass = (pattern >> j) & 1;
    w = pass ? ((w + proj) / 2.0).eval() : ((w - proj) / 2.0).eval();
  }
  return w;
}

}  // namespace

ChannelOutcome ChannelOracle::apply(ChannelInput input) {
  if (consumed_) throw ConsumedError("channel oracle has already been used");
  check_input_shape(marked_, input);
  consumed_ = true;
  const int n = this->n();
  ChannelOutcome out;
  DensityOperator answer = DensityOperator::maximally_mixed(1);

  if (auto* p = std::get_if<ProductBlocks>(&input)) {
    for (int j = 0; j < n; ++j) {
      out.tests.push_back(swap_test(p->blocks[static_cast<std::size_t>(j)], marked_[static_cast<std::size_t>(j)], rng_));
    }
    answer = DensityOperator::from_pure(p->answer);
  } else {
    PureState sigma = std::move(std::get<PureState>(input));
    const int width = n * n + 1;
    const int joint = 1 + width + n;
    if (joint > kMaxQubits) {
      throw CapacityError("entangled channel input at n = " + std::to_string(n) + " needs " + std::to_string(joint) +
                          " qubits for its swap tests");
    }
    // Ancilla 0, input 1..width, reference copy width+1..width+n.
    std::vector<int> measured = {0};
    for (int q = 0; q < n; ++q) measured.push_back(width + 1 + q);
    for (int j = 0; j < n; ++j) {
      Circuit c(joint);
      c.push_back(h(0));
      c.push_back(cswap_block(0, qubit_range(1 + j * n, n), qubit_range(width + 1, n)));
      c.push_back(h(0));
      const PureState full = apply_circuit(kron(PureState::zero(1), kron(sigma, marked_[static_cast<std::size_t>(j)])), c);
      // Reading the reference copy and discarding it unravels the partial trace.
      const Measurement m = measure_qubits(full, measured, rng_);
      out.tests.push_back(m.bits[0] == '0');
      const std::uint64_t anc = m.bits[0] == '1';
      const std::uint64_t ref = bits_to_index(std::string_view(m.bits).substr(1));
      Amplitudes slice(Eigen::Index{1} << width);
      for (Eigen::Index s = 0; s < slice.size(); ++s) {
        const std::uint64_t idx = (anc << (width + n)) | (static_cast<std::uint64_t>(s) << n) | ref;
        slice(s) = m.post[idx];
      }
      sigma = PureState::normalized(std::move(slice));
    }
    answer = partial_trace(sigma, {width - 1});
  }

  for (bool t : out.tests) out.passes += t;
  out.flipped = language_bit_ && out.passes >= threshold();
  if (reply_ == ChannelReply::ClassicalBit) {
    out.bit = out.flipped;
  } else {
    out.qubit = flip_if(answer, out.flipped);
  }
  return out;
}

double poisson_binomial_tail(const std::vector<double>& q, int t) {
  std::vector<double> dist(q.size() + 1, 0.0);
  dist[0] = 1.0;
  for (std::size_t j = 0; j < q.size(); ++j) {
    for (std::size_t c = j + 1; c > 0; --c) dist[c] = dist[c] * (1 - q[j]) + dist[c - 1] * q[j];
    dist[0] *= 1 - q[j];
  }
  double tail = 0;
  for (std::size_t c = static_cast<std::size_t>(std::max(t, 0)); c < dist.size(); ++c) tail += dist[c];
  return tail;
}

namespace {

struct ExactSplit {
  double flip = 0;        // P(threshold reached)
  double one_if_flip = 0;  // P(threshold reached, answer reads 0)
  double one_if_keep = 0;  // P(threshold missed, answer reads 1)
};

ExactSplit exact_split(const std::vector<PureState>& marked, double kappa, const ChannelInput& input) {
  check_input_shape(marked, input);
  const int n = static_cast<int>(marked.size());
  const int t = channel_threshold(kappa, n);
  ExactSplit s;
  if (const auto* p = std::get_if<ProductBlocks>(&input)) {
    std::vector<double> q;
    for (int j = 0; j < n; ++j) q.push_back((1 + fidelity(p->blocks[static_cast<std::size_t>(j)], marked[static_cast<std::size_t>(j)])) / 2);
    s.flip = poisson_binomial_tail(q, t);
    const double p1 = std::norm(p->answer[1]);
    s.one_if_flip = s.flip * (1 - p1);
    s.one_if_keep = (1 - s.flip) * p1;
    return s;
  }
  const Amplitudes& sigma = std::get<PureState>(input).amplitudes();
  for (std::uint64_t pattern = 0; pattern < (std::uint64_t{1} << n); ++pattern) {
    const int passes = std::popcount(pattern);
    const Amplitudes w = apply_test_effects(marked, sigma, pattern);
    double a0 = 0, a1 = 0;
    for (Eigen::Index i = 0; i < w.size(); ++i) {
      const double c = std::real(std::conj(sigma(i)) * w(i));
      (i & 1 ? a1 : a0) += c;
    }
    if (passes >= t) {
      s.flip += a0 + a1;
      s.one_if_flip += a0;
    } else {
      s.one_if_keep += a1;
    }
  }
  return s;
}

}  // namespace

double channel_flip_probability(const std::vector<PureState>& marked, double kappa, bool language_bit,
                                const ChannelInput& input) {
  const ExactSplit s = exact_split(marked, kappa, input);
  return language_bit ? s.flip : 0.0;
}

double channel_output_one_probability(const std::vector<PureState>& marked, double kappa, bool language_bit,
                                      const ChannelInput& input) {
  check_input_shape(marked, input);
  if (!language_bit) {
    if (const auto* p = std::get_if<ProductBlocks>(&input)) return std::norm(p->answer[1]);
    const Amplitudes& sigma = std::get<PureState>(input).amplitudes();
    double p1 = 0;
    for (Eigen::Index i = 1; i < sigma.size(); i += 2) p1 += std::norm(sigma(i));
    return p1;
  }
  const ExactSplit s = exact_split(marked, kappa, input);
  return s.one_if_flip + s.one_if_keep;
}

namespace {

// R(i, j) = sum_k x(2k + i) conj(y(2k + j)): trace over all but the last qubit of |x><y|.
ComplexMatrix last_qubit_contraction(const Amplitudes& x, const Amplitudes& y) {
  ComplexMatrix r = ComplexMatrix::Zero(2, 2);
  for (Eigen::Index k = 0; k < x.size() / 2; ++k)
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) r(i, j) += x(2 * k + i) * std::conj(y(2 * k + j));
  return r;
}

}  // namespace

DensityOperator emulate_channel_output(const MarkedStateOracle& oracle, const PureState& sigma) {
  const int m = oracle.n();
  detail::require(sigma.n_qubits() == m + 1, "emulation input must have n^2 + 1 qubits");
  check_width(m + 2);
  // One query on (sigma (x) |0>_f + |0^m>|0>|1>_f)/sqrt2 yields U sigma and U|0^m> as its flag branches.
  const PureState stacked = PureState::unchecked(
      m + 2, (kron(sigma, PureState::zero(1)).amplitudes() + PureState::basis(m + 2, 1).amplitudes()) / std::sqrt(2.0));
  const PureState queried = oracle.apply(stacked, 0);
  Amplitudes a(Eigen::Index{1} << (m + 1));
  Amplitudes a1(Eigen::Index{1} << m);
  for (Eigen::Index i = 0; i < a.size(); ++i) a(i) = queried[static_cast<std::uint64_t>(2 * i)] * std::sqrt(2.0);
  for (Eigen::Index i = 0; i < a1.size(); ++i) a1(i) = queried[static_cast<std::uint64_t>(4 * i + 1)] * std::sqrt(2.0);
  const Amplitudes& b = sigma.amplitudes();
  // After the second controlled swap: (U sigma |0^m>|0>_c + sigma U|0^m> |1>_c)/sqrt2.
  // H on the control, CNOT onto the answer, trace the rest.
  const auto overlap = std::conj(a1(0));  // <U 0^m | 0^m>
  const ComplexMatrix raa = last_qubit_contraction(a, a);
  const ComplexMatrix rbb = last_qubit_contraction(b, b);
  const ComplexMatrix rab = last_qubit_contraction(a, b) * overlap;
  const ComplexMatrix rba = last_qubit_contraction(b, a) * std::conj(overlap);
  const ComplexMatrix plus = raa + rbb + rab + rba;
  const ComplexMatrix minus = raa + rbb - rab - rba;
  ComplexMatrix xm(2, 2);
  xm << 0, 1, 1, 0;
  ComplexMatrix rho = (plus + xm * minus * xm) / 4.0;
  rho = (rho + rho.adjoint()).eval() / 2.0;
  return DensityOperator::unchecked(1, std::move(rho));
}

DensityOperator emulate_channel_output_literal(const MarkedStateOracle& oracle, const PureState& sigma) {
  const int m = oracle.n();
  detail::require(sigma.n_qubits() == m + 1, "emulation input must have n^2 + 1 qubits");
  const int width = 2 * m + 2;
  check_width(width);
  // Qubits: 0..m-1 blocks, m answer, m+1..2m scratch, 2m+1 control.
  const int control = 2 * m + 1;
  PureState state = kron(sigma, PureState::zero(m + 1));
  state = apply_gate(std::move(state), h(control));
  const GateOp swap = cswap_block(control, qubit_range(0, m), qubit_range(m + 1, m));
  state = apply_gate(std::move(state), swap);
  state = oracle.apply(std::move(state), 0);
  state = apply_gate(std::move(state), swap);
  state = apply_gate(std::move(state), h(control));
  state = apply_gate(std::move(state), cnot(control, m));
  return partial_trace(state, {m});
}

bool emulate_channel_with_marked_oracle(const MarkedStateOracle& oracle, const PureState& sigma, Rng& rng) {
  const DensityOperator out = emulate_channel_output(oracle, sigma);
  return rng.uniform() < std::real(out.matrix()(1, 1));
}

}  // namespace oraclelab
