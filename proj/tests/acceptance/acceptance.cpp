// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "oracles.hpp"
#include "oraclelab/mqst/distinguish.hpp"
#include "oraclelab/mqst/fidelity_law.hpp"
#include "oraclelab/mqst/grover_search.hpp"
#include "oraclelab/oracles.hpp"
#include "oraclelab/protocol/protocol.hpp"
#include "oraclelab/qsim.hpp"
#include "oraclelab/rxhog/rxhog.hpp"
#include "oraclelab/statediag/state_diag.hpp"

using namespace oraclelab;
using oraclelab::testing::Mat;
using oraclelab::testing::Vec;

namespace {

constexpr std::uint64_t kSeed = 20240611;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(5);
  s << v;
  return s.str();
}

Rng stream(std::uint64_t trial, const std::string& site) { return Rng::derive(kSeed, trial, "acceptance/" + site); }

// Local index of `i` on the ascending `targets` of an n-qubit register.
std::uint64_t local_index(std::uint64_t i, int n, const std::vector<int>& targets) {
  std::uint64_t a = 0;
  for (int q : targets) a = (a << 1) | ((i >> (n - 1 - q)) & 1);
  return a;
}

// ---------------------------------------------------------------------------

Outcome fidelity_law() {
  Outcome o{true, ""};
  for (int n : {1, 2, 3}) {
    Rng rng = stream(static_cast<std::uint64_t>(n), "fidelity");
    const auto f = sample_haar_fidelities(n, 100000, rng);
    const double dim = std::pow(2.0, n);
    const double ks = testing::ks_statistic(f, [&](double e) { return 1 - std::pow(1 - e, dim - 1); });
    o.pass = o.pass && ks < 0.01;
    o.detail += "n=" + std::to_string(n) + " KS=" + fmt(ks) + " ";
  }
  return o;
}

Outcome mean_overlap_law() {
  Outcome o{true, ""};
  const int m = 100000;
  for (int n : {1, 2, 3}) {
    Rng rng = stream(static_cast<std::uint64_t>(n), "mean-overlap");
    double sum = 0;
    for (int i = 0; i < m; ++i) {
      const auto a = haar_random_state(n, rng);
      const auto b = haar_random_state(n, rng);
      sum += std::norm(a.amplitudes().dot(b.amplitudes()));
    }
    const double dim = std::pow(2.0, n);
    const double mean = sum / m;
    // F ~ Beta(1, N-1).
    const double sigma = std::sqrt((dim - 1) / (dim * dim * (dim + 1)) / m);
    const double z = (mean - 1 / dim) / sigma;
    o.pass = o.pass && std::abs(z) <= 3;
    o.detail += "n=" + std::to_string(n) + " mean=" + fmt(mean) + " z=" + fmt(z) + " ";
  }
  return o;
}

Outcome phase_flip_identity() {
  double worst = 0;
  for (int t = 0; t < 1000; ++t) {
    Rng rng = stream(static_cast<std::uint64_t>(t), "phase-flip");
    const int n = 1 + static_cast<int>(rng.below(6));
    const int m = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
    std::vector<int> pool(static_cast<std::size_t>(n));
    for (int q = 0; q < n; ++q) pool[static_cast<std::size_t>(q)] = q;
    for (int a = 0; a < m; ++a) std::swap(pool[static_cast<std::size_t>(a)], pool[a + rng.below(static_cast<std::uint64_t>(n - a))]);
    std::vector<int> targets(pool.begin(), pool.begin() + m);
    std::sort(targets.begin(), targets.end());
    const int r = 1 + static_cast<int>(rng.below(std::min<std::uint64_t>(3, std::uint64_t{1} << m)));
    const Mat u = haar_random_unitary<double>(Eigen::Index{1} << m, rng);
    std::vector<PureState> marked;
    for (int j = 0; j < r; ++j) marked.push_back(PureState::normalized(u.col(j)));
    const auto phi = haar_random_state(n, rng);

    // <phi| (1 - 2 P) (x) 1 |phi> summed entrywise.
    Mat p = Mat::Zero(u.rows(), u.rows());
    for (const auto& s : marked) p += s.amplitudes() * s.amplitudes().adjoint();
    const Vec& v = phi.amplitudes();
    std::complex<double> direct = 0;
    for (std::uint64_t i = 0; i < static_cast<std::uint64_t>(v.size()); ++i) {
      direct += std::norm(v(static_cast<Eigen::Index>(i)));
      const std::uint64_t ai = local_index(i, n, targets);
      for (std::uint64_t j = 0; j < static_cast<std::uint64_t>(v.size()); ++j) {
        // Same index outside the targets.
        bool same_rest = true;
        for (int q = 0; q < n && same_rest; ++q) {
          if (std::binary_search(targets.begin(), targets.end(), q)) continue;
          same_rest = ((i ^ j) >> (n - 1 - q) & 1) == 0;
        }
        if (!same_rest) continue;
        direct -= 2.0 * std::conj(v(static_cast<Eigen::Index>(i))) *
                  p(static_cast<Eigen::Index>(ai), static_cast<Eigen::Index>(local_index(j, n, targets))) *
                  v(static_cast<Eigen::Index>(j));
      }
    }
    const Mat rho = testing::dense_partial_trace(v, n, targets);
    double sum_f = 0;
    for (const auto& s : marked) sum_f += std::real(s.amplitudes().dot(rho * s.amplitudes()));
    const double closed = 1 - 2 * sum_f;
    const double lib = overlap_after_phase_flip(phi, marked, targets);
    worst = std::max({worst, std::abs(direct.real() - closed), std::abs(direct.imag()), std::abs(lib - closed)});
    if (r == 1) {
      const auto flipped = MarkedStateOracle(marked[0], true).apply(phi, targets);
      worst = std::max(worst, std::abs(v.dot(flipped.amplitudes()) - closed));
    }
  }
  return {worst <= 1e-10, "1000 instances, max deviation " + fmt(worst)};
}

Outcome fuchs_van_de_graaf() {
  double worst = 0;
  for (int t = 0; t < 1000; ++t) {
    Rng rng = stream(static_cast<std::uint64_t>(t), "fvdg");
    const int n = 1 + static_cast<int>(rng.below(6));
    const auto psi = haar_random_state(n, rng);
    PureState phi = haar_random_state(n, rng);
    if (t % 2) {
      // Spread the overlap over [0, 1].
      const double a = rng.uniform();
      Vec perp = haar_random_state(n, rng).amplitudes();
      perp -= psi.amplitudes().dot(perp) * psi.amplitudes();
      perp.normalize();
      phi = PureState::normalized(std::sqrt(a) * psi.amplitudes() + std::sqrt(1 - a) * perp);
    }
    const auto vphi = MarkedStateOracle(psi, true).apply(phi);
    const Mat diff = vphi.amplitudes() * vphi.amplitudes().adjoint() - phi.amplitudes() * phi.amplitudes().adjoint();
    const Eigen::SelfAdjointEigenSolver<Mat> es(diff, Eigen::EigenvaluesOnly);
    const double td = 0.5 * es.eigenvalues().cwiseAbs().sum();
    const double c = std::abs(psi.amplitudes().dot(phi.amplitudes()));
    worst = std::max(worst, std::abs(td - 2 * c * std::sqrt(std::max(0.0, 1 - c * c))));
  }
  return {worst <= 1e-10, "1000 instances, max deviation " + fmt(worst)};
}

double closed_form_bound(int k, double eps) {
  const double x = 2 * k * eps;
  if (x >= 1) return 1;
  const double rad = 2 * std::sqrt(x) + 2 * x - 2 * std::pow(x, 1.5);
  return rad < 0 ? 1 : std::min(1.0, std::sqrt(rad));
}

// Pure-state distance and max marked fidelity of a strategy, by dense matrices.
std::pair<double, double> dense_distinguish(const Strategy& s, const PureState& psi) {
  const int w = s.width;
  const Eigen::Index dim = Eigen::Index{1} << w;
  const Mat v = Mat::Identity(dim, dim) - 2.0 * psi.amplitudes() * psi.amplitudes().adjoint();
  Vec same = Vec::Zero(dim);
  same(0) = 1;
  Vec flipped = same;
  double eps = 0;
  for (std::size_t l = 0; l < s.steps.size(); ++l) {
    const Mat u = std::holds_alternative<Circuit>(s.steps[l]) ? testing::dense_circuit(std::get<Circuit>(s.steps[l]))
                                                              : std::get<ComplexMatrix>(s.steps[l]);
    same = u * same;
    flipped = u * flipped;
    if (l + 1 < s.steps.size()) {
      eps = std::max(eps, std::norm(psi.amplitudes().dot(same)));
      flipped = v * flipped;
    }
  }
  return {std::sqrt(std::max(0.0, 1 - std::norm(same.dot(flipped)))), eps};
}

Outcome indistinguishability() {
  const int n = 6;
  int violations = 0;
  double tightest = -1;
  for (int t = 0; t < 1000; ++t) {
    Rng rng = stream(static_cast<std::uint64_t>(t), "indist");
    const auto psi = haar_random_state(n, rng);
    const int k = 1 + static_cast<int>(rng.below(8));
    Strategy s;
    if (t % 2 == 0) {
      s = random_strategy(n, k, 4 + static_cast<int>(rng.below(29)), rng);
    } else {
      // Probes near the marked state, eps log-uniform in [1e-5, 1/(2k)).
      const double eps = std::exp(std::log(1e-5) + rng.uniform() * (std::log(0.5 / k) - std::log(1e-5)));
      s = near_marked_strategy(psi, n, k, eps, rng);
    }
    const auto [distance, eps] = dense_distinguish(s, psi);
    const double bound = closed_form_bound(k, eps);
    violations += distance > bound + 1e-8;
    tightest = std::max(tightest, distance - bound);
    const auto lib = run_mqst_distinguish(s, MarkedStateOracle(psi, true));
    if (std::abs(lib.distance - distance) > 1e-7 || std::abs(lib.epsilon - eps) > 1e-10) ++violations;
  }
  return {violations == 0, "n=6, 1000 strategies, violations " + std::to_string(violations) + ", max(distance - bound) " +
                               fmt(tightest)};
}

void all_sequences(const GateSet& gates, int width, int max_len, std::vector<GateOp>& prefix,
                   std::vector<std::vector<GateOp>>& out) {
  out.push_back(prefix);
  if (static_cast<int>(prefix.size()) == max_len) return;
  for (GateKind k : gates) {
    for (int a = 0; a < width; ++a) {
      if (arity(k) == 1) {
        prefix.push_back(GateOp{k, {a}});
        all_sequences(gates, width, max_len, prefix, out);
        prefix.pop_back();
        continue;
      }
      for (int b = 0; b < width; ++b) {
        if (a == b) continue;
        prefix.push_back(GateOp{k, {a, b}});
        all_sequences(gates, width, max_len, prefix, out);
        prefix.pop_back();
      }
    }
  }
}

Outcome state_diag_certificates() {
  struct Case {
    int n, f;
    double eps;
    int indices;
  };
  int checked = 0, bad = 0;
  for (const Case c : {Case{1, 1, 0.5, 3}, Case{1, 2, 0.6, 3}, Case{2, 1, 0.3, 3}, Case{2, 2, 0.5, 2}}) {
    EnumerationConfig cfg;
    cfg.n = c.n;
    cfg.f = c.f;
    cfg.epsilon = c.eps;
    cfg.budget = 20000;
    cfg.index = static_cast<std::uint64_t>(c.indices - 1);
    const auto first = state_diag(cfg);
    const auto second = state_diag(cfg);
    if (first.budget_exhausted() != second.budget_exhausted() || first.earlier.size() != second.earlier.size()) ++bad;

    std::vector<Mat> marginals;
    std::vector<std::vector<GateOp>> seqs;
    std::vector<GateOp> prefix;
    const int w = cfg.seed_width();
    all_sequences(cfg.gate_set, w, cfg.f, prefix, seqs);
    std::vector<int> keep;
    for (int q = 0; q < cfg.n; ++q) keep.push_back(q);
    for (const auto& s : seqs) {
      Vec zero = Vec::Zero(Eigen::Index{1} << w);
      zero(0) = 1;
      marginals.push_back(testing::dense_partial_trace(testing::dense_circuit(Circuit(w, s)) * zero, w, keep));
    }

    std::vector<PureState> found;
    for (const auto& r : first.earlier) found.push_back(r.state);
    if (first.record) found.push_back(first.record->state);
    std::vector<PureState> again;
    for (const auto& r : second.earlier) again.push_back(r.state);
    if (second.record) again.push_back(second.record->state);
    if (found.size() != again.size()) ++bad;
    for (std::size_t i = 0; i < found.size() && i < again.size(); ++i) bad += found[i].amplitudes() != again[i].amplitudes();

    for (std::size_t i = 0; i < found.size(); ++i) {
      ++checked;
      const Vec& v = found[i].amplitudes();
      double worst = 0;
      for (const auto& rho : marginals) worst = std::max(worst, std::real(v.dot(rho * v)));
      bad += !(worst < cfg.epsilon);
      for (std::size_t j = 0; j < i; ++j) bad += !(std::norm(found[j].amplitudes().dot(v)) < cfg.epsilon);
    }
  }
  return {bad == 0 && checked > 0, std::to_string(checked) + " hard states re-verified, " + std::to_string(bad) + " failures"};
}

Outcome counting_formulas() {
  int mismatches = 0;
  for (int n = 1; n <= 4; ++n)
    for (double eps : {0.05, 0.1, 0.25, 0.5, 0.9})
      for (double r : {0.0, 1.0, 3.0, 10.0}) {
        const double dim = std::pow(2.0, n);
        const double count = std::max(0.0, std::floor(std::pow(1 - eps, 1 - dim) - r));
        mismatches += static_cast<double>(min_hard_state_count(n, eps, r)) != count;
        const double prob = std::max(0.0, 1 - r * std::pow(1 - eps, dim - 1));
        mismatches += std::abs(random_avoidance_probability(n, eps, r) - prob) > 1e-12;
      }

  const int n = 3, r = 4, m = 100000;
  const double eps = 0.5;
  Rng rng = stream(0, "avoidance");
  std::vector<PureState> fixed;
  for (int j = 0; j < r; ++j) fixed.push_back(haar_random_state(n, rng));
  int avoided = 0;
  for (int i = 0; i < m; ++i) {
    const auto psi = haar_random_state(n, rng);
    bool ok = true;
    for (const auto& s : fixed) ok = ok && std::norm(s.amplitudes().dot(psi.amplitudes())) < eps;
    avoided += ok;
  }
  const double bound = random_avoidance_probability(n, eps, r);
  const double freq = static_cast<double>(avoided) / m;
  const double slack = 3 * std::sqrt(bound * (1 - bound) / m);
  return {mismatches == 0 && freq >= bound - slack, std::to_string(mismatches) + " grid mismatches; MC frequency " +
                                                        fmt(freq) + " vs bound " + fmt(bound)};
}

Outcome grover_scaling() {
  const auto rows = grover_query_scaling({4, 6, 8, 10, 12}, 101, kSeed);
  bool pass = true;
  std::string q = "quantum ratios", c = " classical ratios";
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double rq = rows[i].quantum_median / rows[i - 1].quantum_median;
    const double rc = rows[i].classical_median / rows[i - 1].classical_median;
    pass = pass && std::abs(rq - 2) <= 0.5 && std::abs(rc - 4) <= 1;
    q += " " + fmt(rq);
    c += " " + fmt(rc);
  }
  return {pass, q + c};
}

Outcome protocol_gap() {
  const int m = 1000;
  int yes_accept = 0, no_reject = 0, haar_accept = 0;
  for (int t = 0; t < m; ++t) {
    ProtocolConfig cfg;
    cfg.n = 6;
    cfg.kappa = 5.0 / 6.0;
    cfg.seed = kSeed;
    cfg.trial = static_cast<std::uint64_t>(t);
    cfg.force_language_bit = true;
    yes_accept += run_protocol(cfg).accept;
    cfg.merlin = MerlinKind::Haar;
    haar_accept += run_protocol(cfg).accept;
    cfg.merlin = MerlinKind::Honest;
    cfg.force_language_bit = false;
    no_reject += !run_protocol(cfg).accept;
  }
  const double honest = static_cast<double>(yes_accept) / m;
  const double no = static_cast<double>(no_reject) / m;
  const double haar = static_cast<double>(haar_accept) / m;
  return {honest == 1.0 && no == 1.0 && haar < 0.25 && honest - haar >= 0.5,
          "honest accept " + fmt(honest) + ", no-instance reject " + fmt(no) + ", Haar accept " + fmt(haar) + ", gap " +
              fmt(honest - haar)};
}

Outcome channel_emulation() {
  const int n = 3;
  const double kappa = 5.0 / 6.0;
  double worst = 0, total = 0;
  for (int t = 0; t < 100; ++t) {
    Rng rng = stream(static_cast<std::uint64_t>(t), "emulation");
    std::vector<PureState> marked;
    for (int b = 0; b < n; ++b) marked.push_back(haar_random_state(n, rng));
    const bool bit = rng.coin();
    const auto product = kron_all(marked);
    const PureState sigma = t < 50 ? kron(product, haar_random_state(1, rng)) : haar_random_state(n * n + 1, rng);
    const double direct = channel_output_one_probability(marked, kappa, bit, sigma);
    const double emulated = std::real(emulate_channel_output(MarkedStateOracle(product, bit), sigma).matrix()(1, 1));
    worst = std::max(worst, std::abs(direct - emulated));
    total += std::abs(direct - emulated);
  }
  return {worst < 0.1, "n=3, 100 inputs, max TV " + fmt(worst) + ", mean TV " + fmt(total / 100)};
}

Outcome preparation_fidelity() {
  double worst_overlap = 1, worst_residual = 0;
  for (int n = 1; n <= 8; ++n)
    for (int t = 0; t < 3; ++t) {
      Rng rng = stream(static_cast<std::uint64_t>(10 * n + t), "preparation");
      const auto ref = haar_random_state(n, rng);
      const auto prep = prepare_via_oracle(BitStringOracle(ref), PrecisionBits(32));
      worst_overlap = std::min(worst_overlap, std::norm(ref.amplitudes().dot(prep.state.amplitudes())));
      worst_residual = std::max(worst_residual, prep.max_ancilla_residual);
    }
  return {worst_overlap >= 1 - 1e-6 && worst_residual <= 1e-10,
          "n=1..8, p=32: min overlap 1-" + fmt(1 - worst_overlap) + ", max residual " + fmt(worst_residual)};
}

// Walsh-Hadamard probabilities |<z|H^n|v>|^2, written out directly.
std::vector<double> rotated(const Vec& v) {
  std::vector<std::complex<double>> a(v.data(), v.data() + v.size());
  for (std::size_t h = 1; h < a.size(); h <<= 1)
    for (std::size_t i = 0; i < a.size(); i += 2 * h)
      for (std::size_t j = i; j < i + h; ++j) {
        const auto x = a[j], y = a[j + h];
        a[j] = x + y;
        a[j + h] = x - y;
      }
  std::vector<double> out;
  for (const auto& x : a) out.push_back(std::norm(x) / static_cast<double>(a.size()));
  return out;
}

Outcome rxhog_gap() {
  RxhogTrialConfig cfg;
  cfg.n = 6;
  cfg.k = 1;
  cfg.precision = 32;
  cfg.seed = kSeed;
  const int trials = 200;
  const std::vector<RxhogStrategy> all = {RxhogStrategy::Quantum, RxhogStrategy::ZSampler, RxhogStrategy::PhaseProbe,
                                          RxhogStrategy::PhaseProbeAdaptive, RxhogStrategy::TableOnly};
  std::vector<double> mean(all.size(), 0.0);
  double check_q = 0, check_z = 0;
  for (int t = 0; t < trials; ++t) {
    for (std::size_t s = 0; s < all.size(); ++s) mean[s] += run_rxhog_trial(cfg, all[s], t).expected_score / trials;
    // Independent estimands: Born sampling in the rotated basis and in the computational basis.
    const Vec ref = rxhog_reference(cfg, t).amplitudes();
    const auto q = rotated(ref);
    for (std::size_t z = 0; z < q.size(); ++z) {
      check_q += q[z] * q[z] / trials;
      check_z += std::norm(ref(static_cast<Eigen::Index>(z))) * q[z] / trials;
    }
  }
  const double dim = 64;
  const double ratio = mean[0] / mean[1];
  const double ceiling = 2 * (1 / dim + std::pow(6.0, 4) / (dim * dim));
  bool pass = ratio >= 1.8 && ratio <= 2.2 && std::abs(mean[0] - 2 / dim) <= 0.05 * 2 / dim;
  pass = pass && std::abs(mean[0] - check_q) <= 1e-5 && std::abs(mean[1] - check_z) <= 1e-5;
  std::string detail = "ratio " + fmt(ratio) + ", quantum " + fmt(mean[0]) + " (2/N " + fmt(2 / dim) + ")";
  for (std::size_t s = 1; s < all.size(); ++s) {
    pass = pass && mean[s] <= ceiling;
    detail += ", " + std::string(to_string(all[s])) + " " + fmt(mean[s]);
  }
  return {pass, detail + ", ceiling " + fmt(ceiling) + ", cross-check " + fmt(check_q) + "/" + fmt(check_z)};
}

void amplifying_note() {
  Rng rng = stream(0, "amplifying");
  const auto psi = haar_random_state(3, rng);
  const auto run = run_mqst_distinguish(amplifying_strategy(psi, 4, 8, 2e-3, rng), MarkedStateOracle(psi, true));
  std::cout << "INFO  amplifying fixture k=8 eps=2e-3: distance " << fmt(run.distance_at_query) << " vs bound "
            << fmt(run.bound.clamped) << (run.violated ? " (exceeds)" : "") << "\n";
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    double limit_seconds;  // 0 means no time limit
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {"fidelity-law", 30, fidelity_law},
      {"mean-overlap-law", 0, mean_overlap_law},
      {"phase-flip-identity", 10, phase_flip_identity},
      {"fuchs-van-de-graaf", 0, fuchs_van_de_graaf},
      {"indistinguishability-bound", 120, indistinguishability},
      {"state-diag-certificates", 0, state_diag_certificates},
      {"counting-formulas", 0, counting_formulas},
      {"grover-scaling", 120, grover_scaling},
      {"protocol-completeness-soundness", 180, protocol_gap},
      {"channel-emulation", 0, channel_emulation},
      {"preparation-fidelity", 0, preparation_fidelity},
      {"rxhog-gap", 300, rxhog_gap},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto& c = criteria[i];
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.limit_seconds > 0 && sec >= c.limit_seconds) {
      o.pass = false;
      o.detail += " [over the " + fmt(c.limit_seconds) + " s limit]";
    }
    failures += !o.pass;
    std::cout << (o.pass ? "PASS " : "FAIL ") << i + 1 << " " << c.name << ": " << o.detail << " (" << fmt(sec) << " s)\n"
              << std::flush;
    if (i == 4) amplifying_note();
  }
  std::cout << (failures ? "FAILED " : "ALL PASSED ") << criteria.size() - static_cast<std::size_t>(failures) << "/"
            << criteria.size() << "\n";
  return failures ? 1 : 0;
}
