#include "oraclelab/rxhog/rxhog.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "oraclelab/qsim/apply.hpp"
#include "oraclelab/qsim/measurement.hpp"
#include "oraclelab/qsim/random.hpp"

namespace oraclelab {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double sin2_half_turn(double alpha) {
  const double s = std::sin(kPi * alpha / 2);
  return s * s;
}

int p_register_width(int p) { return std::max(1, static_cast<int>(std::bit_width(static_cast<unsigned>(p - 1)))); }

SymbolString formatted(std::uint64_t b, int k, std::uint64_t p, int p_width, Symbol a) {
  SymbolString s;
  for (int i = k - 1; i >= 0; --i) s.push_back((b >> i) & 1 ? Symbol::One : Symbol::Zero);
  s.push_back(Symbol::Sep);
  for (int i = p_width - 1; i >= 0; --i) s.push_back((p >> i) & 1 ? Symbol::One : Symbol::Zero);
  s.push_back(Symbol::Sep);
  s.push_back(a);
  return s;
}

std::uint64_t b_of(const SymbolString& s, int k) {
  std::uint64_t b = 0;
  for (int i = 0; i < k; ++i) b = (b << 1) | (s[static_cast<std::size_t>(i)] == Symbol::One);
  return b;
}

// Fetches digits 0..p-1 of the k-level table for every branch in `branches` with one
// coherent query per digit, then uncomputes them with a second query per digit.
// Returns the digit registers per branch and records the ancilla residual.
std::vector<std::uint64_t> fetch_digits(const BitStringOracle& oracle, int k, const std::vector<std::uint64_t>& branches,
                                        const Amplitudes& amps, int p, double& residual) {
  const int pw = p_register_width(p);
  std::vector<std::uint64_t> digits(branches.size(), 0);
  std::vector<SymbolSuperposition> answers(static_cast<std::size_t>(p));
  for (int d = 0; d < p; ++d) {
    SymbolSuperposition in;
    for (std::size_t i = 0; i < branches.size(); ++i) {
      in[formatted(branches[i], k, static_cast<std::uint64_t>(d), pw, Symbol::Zero)] = amps(static_cast<Eigen::Index>(i));
    }
    answers[static_cast<std::size_t>(d)] = oracle.query(in);
  }
  // Read the answer registers branch by branch.
  for (int d = 0; d < p; ++d) {
    for (const auto& [s, amp] : answers[static_cast<std::size_t>(d)]) {
      if (s.back() != Symbol::One) continue;
      const std::uint64_t b = b_of(s, k);
      const auto it = std::lower_bound(branches.begin(), branches.end(), b);
      digits[static_cast<std::size_t>(it - branches.begin())] |= std::uint64_t{1} << (63 - d);
    }
  }
  for (int d = 0; d < p; ++d) {
    const SymbolSuperposition back = oracle.query(answers[static_cast<std::size_t>(d)]);
    double left = 0;
    for (const auto& [s, amp] : back)
      if (s.back() == Symbol::One) left += std::norm(amp);
    residual = std::max(residual, std::sqrt(left));
  }
  return digits;
}

}  // namespace

PrecisionBits::PrecisionBits(int bits) : p(bits) {
  detail::require(bits >= 1 && bits <= 64, "precision must lie in 1..64 bits");
}

int p_of_epsilon(double epsilon) {
  detail::require(epsilon > 0 && epsilon <= 1, "epsilon must lie in (0, 1]");
  return static_cast<int>(std::ceil(1.0 / epsilon));
}

Circuit build_crot(PrecisionBits bits) {
  check_width(bits.p + 1);
  Circuit c(bits.p + 1);
  for (int j = 1; j <= bits.p; ++j) c.push_back(crot_bit(j, j - 1, bits.p));
  return c;
}

Circuit build_cph(PrecisionBits bits) {
  check_width(bits.p);
  Circuit c(bits.p);
  for (int j = 1; j <= bits.p; ++j) c.push_back(cphase_bit(j, j - 1));
  return c;
}

Preparation prepare_via_oracle(const BitStringOracle& oracle, PrecisionBits bits) {
  const int n = oracle.n();
  const int p = bits.p;
  const std::uint64_t before = oracle.queries();
  double residual = 0;

  // Branch k holds the amplitude of each k-bit prefix.
  std::vector<std::uint64_t> branches{0};
  Amplitudes amps = Amplitudes::Ones(1);
  for (int k = 0; k < n; ++k) {
    const auto digits = fetch_digits(oracle, k, branches, amps, p, residual);
    std::vector<std::uint64_t> next;
    std::vector<std::complex<double>> next_amps;
    for (std::size_t i = 0; i < branches.size(); ++i) {
      const double theta = kPi * BitStringOracle::truncated(digits[i], p) / 2;
      const auto a = amps(static_cast<Eigen::Index>(i));
      next.push_back(2 * branches[i]);
      next_amps.push_back(a * std::cos(theta));
      next.push_back(2 * branches[i] + 1);
      next_amps.push_back(a * std::sin(theta));
    }
    branches = std::move(next);
    amps = Eigen::Map<Amplitudes>(next_amps.data(), static_cast<Eigen::Index>(next_amps.size()));
  }
  const auto phases = fetch_digits(oracle, n, branches, amps, p, residual);
  for (std::size_t i = 0; i < branches.size(); ++i) {
    amps(static_cast<Eigen::Index>(i)) *= std::polar(1.0, 2 * kPi * BitStringOracle::truncated(phases[i], p));
  }
  return {PureState::unchecked(n, std::move(amps)), oracle.queries() - before, residual};
}

Preparation prepare_via_oracle_dense(const BitStringOracle& oracle, PrecisionBits bits) {
  const int n = oracle.n();
  const int p = bits.p;
  const int pw = p_register_width(p);
  const int width = n + p + pw;
  check_width(width);
  const std::uint64_t before = oracle.queries();
  const int answer0 = n;
  const int preg0 = n + p;
  std::vector<int> p_qubits(static_cast<std::size_t>(pw));
  std::iota(p_qubits.begin(), p_qubits.end(), preg0);

  auto set_p = [&](PureState s, int d) {
    for (int i = 0; i < pw; ++i)
      if ((d >> (pw - 1 - i)) & 1) s = apply_gate(std::move(s), x(preg0 + i));
    return s;
  };
  auto query_all = [&](PureState s, int k) {
    QueryLayout layout{qubit_range(0, k), p_qubits, 0};
    for (int d = 0; d < p; ++d) {
      layout.a_qubit = answer0 + d;
      s = set_p(std::move(s), d);
      s = oracle.query_register(std::move(s), layout);
      s = set_p(std::move(s), d);
    }
    return s;
  };
  const std::uint64_t ancilla_mask = (std::uint64_t{1} << (p + pw)) - 1;
  auto residual_of = [&](const PureState& s) {
    double left = 0;
    for (std::uint64_t i = 0; i < static_cast<std::uint64_t>(s.dim()); ++i)
      if (i & ancilla_mask) left += std::norm(s[i]);
    return std::sqrt(left);
  };

  double residual = 0;
  PureState s = PureState::zero(width);
  for (int k = 0; k < n; ++k) {
    s = query_all(std::move(s), k);
    for (int d = 0; d < p; ++d) s = apply_gate(std::move(s), crot_bit(d + 1, answer0 + d, k));
    s = query_all(std::move(s), k);
    residual = std::max(residual, residual_of(s));
  }
  s = query_all(std::move(s), n);
  for (int d = 0; d < p; ++d) s = apply_gate(std::move(s), cphase_bit(d + 1, answer0 + d));
  s = query_all(std::move(s), n);
  residual = std::max(residual, residual_of(s));

  Amplitudes out(Eigen::Index{1} << n);
  for (Eigen::Index b = 0; b < out.size(); ++b) out(b) = s[static_cast<std::uint64_t>(b) << (p + pw)];
  return {PureState::unchecked(n, std::move(out)), oracle.queries() - before, residual};
}

std::uint64_t classical_z_sample(const BitStringOracle& oracle, PrecisionBits bits, Rng& rng) {
  std::uint64_t prefix = 0;
  for (int k = 0; k < oracle.n(); ++k) {
    const double u = rng.uniform();
    double lo = 0;
    int choice = -1;
    for (int d = 0; d < bits.p && choice < 0; ++d) {
      lo += std::ldexp(oracle.query_alpha_bit(k, prefix, static_cast<std::uint64_t>(d)), -(d + 1));
      const double hi = lo + std::ldexp(1.0, -(d + 1));
      if (u < sin2_half_turn(lo)) choice = 1;
      else if (u >= sin2_half_turn(hi)) choice = 0;
    }
    if (choice < 0) choice = u < sin2_half_turn(lo) ? 1 : 0;
    prefix = 2 * prefix + static_cast<std::uint64_t>(choice);
  }
  return prefix;
}

std::vector<double> z_sampler_distribution(const BitStringOracle& oracle, PrecisionBits bits) {
  std::vector<double> level{1.0};
  for (int k = 0; k < oracle.n(); ++k) {
    std::vector<double> next(2 * level.size());
    for (std::size_t b = 0; b < level.size(); ++b) {
      const double s = sin2_half_turn(BitStringOracle::truncated(oracle.alpha_fraction(k, b), bits.p));
      next[2 * b] = level[b] * (1 - s);
      next[2 * b + 1] = level[b] * s;
    }
    level = std::move(next);
  }
  return level;
}

std::vector<double> rotated_probabilities(const PureState& psi) {
  Amplitudes v = psi.amplitudes();
  kernels::apply_hadamard_block(v, psi.n_qubits(), 0, psi.n_qubits());
  std::vector<double> out(static_cast<std::size_t>(v.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) out[static_cast<std::size_t>(i)] = std::norm(v(i));
  return out;
}

double rxhog_score(const PureState& reference, const std::vector<std::uint64_t>& samples, bool rotate) {
  detail::require(!samples.empty(), "score needs at least one sample");
  std::vector<std::uint64_t> sorted = samples;
  std::sort(sorted.begin(), sorted.end());
  detail::require(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end(), "samples must be distinct");
  detail::require(sorted.back() < static_cast<std::uint64_t>(reference.dim()), "sample out of range");
  double total = 0;
  if (rotate) {
    const auto q = rotated_probabilities(reference);
    for (std::uint64_t z : samples) total += q[z];
  } else {
    for (std::uint64_t z : samples) total += std::norm(reference[z]);
  }
  return total / static_cast<double>(samples.size());
}

std::string_view to_string(RxhogStrategy s) {
  switch (s) {
    case RxhogStrategy::Quantum: return "quantum";
    case RxhogStrategy::ZSampler: return "z-sampler";
    case RxhogStrategy::PhaseProbe: return "phase-probe";
    case RxhogStrategy::PhaseProbeAdaptive: return "phase-probe-adaptive";
    case RxhogStrategy::TableOnly: return "table-only";
  }
  return "?";
}

RxhogStrategy rxhog_strategy_from_string(std::string_view name) {
  for (auto s : {RxhogStrategy::Quantum, RxhogStrategy::ZSampler, RxhogStrategy::PhaseProbe,
                 RxhogStrategy::PhaseProbeAdaptive, RxhogStrategy::TableOnly}) {
    if (to_string(s) == name) return s;
  }
  throw InvalidInput("unknown rxhog strategy '" + std::string(name) + "'");
}

namespace {

void check_k(int k, int n) {
  detail::require(k >= 1, "k must be positive");
  detail::require(static_cast<std::uint64_t>(k) <= (std::uint64_t{1} << n), "k exceeds the number of strings");
}

std::vector<std::uint64_t> top_k(const std::vector<double>& weights, int k) {
  std::vector<std::uint64_t> idx(weights.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](std::uint64_t a, std::uint64_t b) { return weights[a] > weights[b]; });
  idx.resize(static_cast<std::size_t>(k));
  return idx;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

RxhogRun finish(RxhogRun run, const PureState& reference) {
  run.score = rxhog_score(reference, run.samples);
  return run;
}

}  // namespace

RxhogRun quantum_rxhog_solver(const BitStringOracle& oracle, int k, PrecisionBits bits, Rng& rng) {
  const int n = oracle.n();
  check_k(k, n);
  const Preparation prep = prepare_via_oracle(oracle, bits);
  const auto prepared = rotated_probabilities(prep.state);
  const Eigen::Map<const Eigen::VectorXd> probs(prepared.data(), static_cast<Eigen::Index>(prepared.size()));
  RxhogRun run{n, k, bits.p, RxhogStrategy::Quantum};
  run.samples = distinct_draws(k, [&] { return sample_index(probs, rng); });
  run.queries = prep.queries;
  run.preparation_overlap = std::norm(inner(prep.state, oracle.reference()));
  run.ancilla_residual = prep.max_ancilla_residual;
  run.expected_score = k == 1 ? dot(prepared, rotated_probabilities(oracle.reference())) : kNaN;
  return finish(std::move(run), oracle.reference());
}

Amplitudes known_component(const std::vector<double>& table, const std::vector<std::uint64_t>& probed,
                           const std::vector<double>& phases) {
  detail::require(probed.size() == phases.size(), "one phase per probed string");
  Amplitudes eta = Amplitudes::Zero(static_cast<Eigen::Index>(table.size()));
  for (std::size_t i = 0; i < probed.size(); ++i) {
    eta(static_cast<Eigen::Index>(probed[i])) = std::polar(std::sqrt(table[probed[i]]), 2 * kPi * phases[i]);
  }
  return eta;
}

double concentration_ceiling(const std::vector<double>& table, const std::vector<std::uint64_t>& probed) {
  double s = 0;
  for (std::uint64_t l : probed) s += std::sqrt(table[l]);
  return s * s / static_cast<double>(table.size());
}

double classical_ceiling(int n) {
  const double dim = std::ldexp(1.0, n);
  return 1 / dim + std::pow(n, 4) / (dim * dim);
}

RxhogRun classical_rxhog_solver(const ClassicalStrategy& strategy, const BitStringOracle& oracle,
                                const std::vector<double>& table, int k, PrecisionBits bits, Rng& rng) {
  const int n = oracle.n();
  const auto dim = static_cast<std::size_t>(std::uint64_t{1} << n);
  check_k(k, n);
  detail::require(table.size() == dim, "coefficient table size must be 2^n");
  const int p = bits.p;
  RxhogRun run{n, k, p, strategy.kind};
  const std::uint64_t before = oracle.queries();
  auto spent = [&] { return oracle.queries() - before; };

  switch (strategy.kind) {
    case RxhogStrategy::Quantum: throw InvalidInput("quantum is not a classical strategy");
    case RxhogStrategy::ZSampler: {
      const std::uint64_t budget =
          strategy.budget ? strategy.budget : 100ULL * static_cast<std::uint64_t>(k) * static_cast<std::uint64_t>(n * p);
      run.samples = distinct_draws(k, [&] {
        if (spent() + static_cast<std::uint64_t>(n * p) > budget) throw BudgetExceeded("z-sampler query budget exhausted");
        return classical_z_sample(oracle, bits, rng);
      });
      run.expected_score =
          k == 1 ? dot(z_sampler_distribution(oracle, bits), rotated_probabilities(oracle.reference())) : kNaN;
      break;
    }
    case RxhogStrategy::TableOnly: {
      run.samples = top_k(table, k);
      run.expected_score = kNaN;
      break;
    }
    case RxhogStrategy::PhaseProbe:
    case RxhogStrategy::PhaseProbeAdaptive: {
      detail::require(strategy.probes >= 0, "probe count must be non-negative");
      const auto probes = std::min<std::size_t>(static_cast<std::size_t>(strategy.probes), dim);
      const std::uint64_t budget = strategy.budget ? strategy.budget : static_cast<std::uint64_t>(probes) * p;
      if (static_cast<std::uint64_t>(probes) * static_cast<std::uint64_t>(p) > budget) {
        throw BudgetExceeded("phase-probe needs " + std::to_string(probes * static_cast<std::size_t>(p)) +
                             " queries, budget is " + std::to_string(budget));
      }
      const auto order = top_k(table, static_cast<int>(dim));
      std::vector<double> phases;
      auto read = [&](std::uint64_t l, int from, int to, double& value) {
        for (int d = from; d < to; ++d) value += std::ldexp(oracle.query_phase_bit(l, static_cast<std::uint64_t>(d)), -(d + 1));
      };
      const std::size_t full =
          strategy.kind == RxhogStrategy::PhaseProbe ? probes : probes / 2;
      for (std::size_t i = 0; i < full; ++i) {
        double v = 0;
        read(order[i], 0, p, v);
        run.probed.push_back(order[i]);
        phases.push_back(v);
      }
      if (strategy.kind == RxhogStrategy::PhaseProbeAdaptive) {
        // Two leading digits per further string; the rest only when the coarse phase
        // adds constructively to the current best rotated amplitude.
        const int coarse = std::min(2, p);
        for (std::size_t i = full; i < dim && spent() + static_cast<std::uint64_t>(coarse) <= budget; ++i) {
          Amplitudes eta = known_component(table, run.probed, phases);
          kernels::apply_hadamard_block(eta, n, 0, n);
          Eigen::Index best = 0;
          eta.cwiseAbs2().maxCoeff(&best);
          const std::uint64_t l = order[i];
          double v = 0;
          read(l, 0, coarse, v);
          const double mid = v + (coarse < p ? std::ldexp(1.0, -(coarse + 1)) : 0.0);
          const double sign = std::popcount(static_cast<std::uint64_t>(best) & l) % 2 ? -1.0 : 1.0;
          const auto contribution = sign * std::polar(1.0, 2 * kPi * mid);
          if (coarse < p && (std::conj(eta(best)) * contribution).real() > 0 &&
              spent() + static_cast<std::uint64_t>(p - coarse) <= budget) {
            read(l, coarse, p, v);
            phases.push_back(v);
          } else {
            phases.push_back(mid);
          }
          run.probed.push_back(l);
        }
      }
      Amplitudes eta = known_component(table, run.probed, phases);
      kernels::apply_hadamard_block(eta, n, 0, n);
      std::vector<double> objective(dim);
      for (std::size_t z = 0; z < dim; ++z) objective[z] = std::norm(eta(static_cast<Eigen::Index>(z)));
      run.samples = top_k(objective, k);
      run.expected_score = kNaN;
      break;
    }
  }
  run.queries = spent();
  run = finish(std::move(run), oracle.reference());
  if (std::isnan(run.expected_score) && strategy.kind != RxhogStrategy::ZSampler) run.expected_score = run.score;
  return run;
}

void RxhogTrialConfig::validate() const {
  check_width(n);
  check_k(k, n);
  (void)PrecisionBits(precision);
  detail::require(probes >= -1, "probe count must be non-negative");
}

PureState rxhog_reference(const RxhogTrialConfig& cfg, int trial) {
  Rng rng = Rng::derive(cfg.seed, static_cast<std::uint64_t>(trial), "rxhog/reference");
  return haar_random_state(cfg.n, rng);
}

RxhogRun run_rxhog_trial(const RxhogTrialConfig& cfg, RxhogStrategy strategy, int trial) {
  cfg.validate();
  const PureState reference = rxhog_reference(cfg, trial);
  const BitStringOracle oracle(reference);
  Rng rng = Rng::derive(cfg.seed, static_cast<std::uint64_t>(trial), "rxhog/" + std::string(to_string(strategy)));
  const PrecisionBits bits(cfg.precision);
  if (strategy == RxhogStrategy::Quantum) return quantum_rxhog_solver(oracle, cfg.k, bits, rng);
  std::vector<double> table(static_cast<std::size_t>(reference.dim()));
  for (std::uint64_t b = 0; b < table.size(); ++b) table[b] = std::norm(reference[b]);
  return classical_rxhog_solver({strategy, cfg.probe_count(), cfg.budget}, oracle, table, cfg.k, bits, rng);
}

}  // namespace oraclelab
