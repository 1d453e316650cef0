#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <set>
#include <vector>

#include "doctest.h"

#include "oracles.hpp"
#include "oraclelab/qsim.hpp"
#include "oraclelab/rxhog/rxhog.hpp"

using namespace oraclelab;
using oraclelab::testing::Mat;
using oraclelab::testing::Vec;

namespace {

constexpr double kPi = std::numbers::pi;

Mat hadamard_all(int n) {
  Mat h1(2, 2);
  h1 << 1, 1, 1, -1;
  h1 /= std::sqrt(2.0);
  Mat out = Mat::Identity(1, 1);
  for (int q = 0; q < n; ++q) out = testing::kron_mat(out, h1);
  return out;
}

Vec basis_vec(int n, std::uint64_t idx) {
  Vec v = Vec::Zero(Eigen::Index{1} << n);
  v(static_cast<Eigen::Index>(idx)) = 1;
  return v;
}

double fraction_of(std::uint64_t b, int bits) { return static_cast<double>(b) / std::ldexp(1.0, bits); }

double overlap(const PureState& a, const PureState& b) { return std::norm(a.amplitudes().dot(b.amplitudes())); }

std::vector<double> born(const PureState& s) {
  std::vector<double> out(static_cast<std::size_t>(s.dim()));
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::norm(s[i]);
  return out;
}

struct MeanSe {
  double mean = 0;
  double se = 0;
};

MeanSe mean_se(const std::vector<double>& x) {
  double m = 0;
  for (double v : x) m += v;
  m /= static_cast<double>(x.size());
  double s2 = 0;
  for (double v : x) s2 += (v - m) * (v - m);
  s2 /= static_cast<double>(x.size() - 1);
  return {m, std::sqrt(s2 / static_cast<double>(x.size()))};
}

}  // namespace

TEST_CASE("precision bits and p(eps)") {
  CHECK_THROWS_AS(PrecisionBits(0), InvalidInput);
  CHECK_THROWS_AS(PrecisionBits(65), InvalidInput);
  CHECK(PrecisionBits(64).p == 64);
  CHECK(p_of_epsilon(0.1) == 10);
  CHECK(p_of_epsilon(0.3) == 4);
  CHECK(p_of_epsilon(1.0) == 1);
  CHECK_THROWS_AS(p_of_epsilon(0.0), InvalidInput);
}

TEST_CASE("controlled rotation register") {
  for (int p = 1; p <= 4; ++p) {
    const Mat u = testing::dense_circuit(build_crot(PrecisionBits(p)));
    for (std::uint64_t b = 0; b < (std::uint64_t{1} << p); ++b) {
      const Vec out = u * basis_vec(p + 1, b << 1);
      const double th = kPi * fraction_of(b, p) / 2;
      CHECK(std::abs(out(static_cast<Eigen::Index>(b << 1)) - std::cos(th)) < 1e-12);
      CHECK(std::abs(out(static_cast<Eigen::Index>((b << 1) | 1)) - std::sin(th)) < 1e-12);
      CHECK(std::abs(out.norm() - 1) < 1e-12);
    }
  }
  SUBCASE("single digit gives pi/4") {
    const Vec out = testing::dense_circuit(build_crot(PrecisionBits(1))) * basis_vec(2, 0b10);
    CHECK(std::abs(out(2) - std::cos(kPi / 4)) < 1e-12);
    CHECK(std::abs(out(3) - std::sin(kPi / 4)) < 1e-12);
  }
  SUBCASE("additivity over split registers") {
    // Rotating by the first r digits then by the remaining ones equals one rotation by the whole fraction.
    const int p = 5;
    const Mat u = testing::dense_circuit(build_crot(PrecisionBits(p)));
    for (std::uint64_t b = 0; b < 32; ++b) {
      for (int r = 1; r < p; ++r) {
        const double first = fraction_of(b >> (p - r), r);
        const double rest = fraction_of(b & ((1u << (p - r)) - 1), p - r) * std::ldexp(1.0, -r);
        auto rot = [](double a) {
          Mat m(2, 2);
          m << std::cos(kPi * a / 2), -std::sin(kPi * a / 2), std::sin(kPi * a / 2), std::cos(kPi * a / 2);
          return m;
        };
        const Mat combined = rot(rest) * rot(first);
        const Vec out = u * basis_vec(p + 1, b << 1);
        CHECK(std::abs(out(static_cast<Eigen::Index>(b << 1)) - combined(0, 0)) < 1e-10);
        CHECK(std::abs(out(static_cast<Eigen::Index>((b << 1) | 1)) - combined(1, 0)) < 1e-10);
      }
    }
  }
}

TEST_CASE("controlled phase register") {
  auto phase_of = [](int p, std::uint64_t b) {
    const Vec out = testing::dense_circuit(build_cph(PrecisionBits(p))) * basis_vec(p, b);
    return out(static_cast<Eigen::Index>(b));
  };
  CHECK(std::abs(phase_of(1, 1) - std::complex<double>(-1, 0)) < 1e-12);
  CHECK(std::abs(phase_of(2, 0) - std::complex<double>(1, 0)) < 1e-12);
  CHECK(std::abs(phase_of(2, 0b01) - std::complex<double>(0, 1)) < 1e-12);
  for (std::uint64_t b = 0; b < 32; ++b) {
    CHECK(std::abs(phase_of(5, b) - std::polar(1.0, 2 * kPi * fraction_of(b, 5))) < 1e-12);
  }
}

TEST_CASE("oracle-driven preparation") {
  SUBCASE("all-zero reference is reproduced exactly") {
    const BitStringOracle oracle(PureState::zero(3));
    const auto prep = prepare_via_oracle(oracle, PrecisionBits(8));
    CHECK((prep.state.amplitudes() - PureState::zero(3).amplitudes()).norm() == 0);
    CHECK(prep.queries == 2u * 8u * 4u);
  }
  SUBCASE("plus state at 32 digits") {
    Amplitudes v = Amplitudes::Constant(4, 0.5);
    const BitStringOracle oracle(PureState::from_amplitudes(v));
    const auto prep = prepare_via_oracle(oracle, PrecisionBits(32));
    CHECK(overlap(prep.state, oracle.reference()) >= 1 - 1e-6);
  }
  SUBCASE("precision sweep on random 4-qubit references") {
    Rng rng(404);
    for (int t = 0; t < 10; ++t) {
      const BitStringOracle oracle(haar_random_state(4, rng));
      const double f32 = overlap(prepare_via_oracle(oracle, PrecisionBits(32)).state, oracle.reference());
      const double f4 = overlap(prepare_via_oracle(oracle, PrecisionBits(4)).state, oracle.reference());
      CHECK(f32 >= 1 - 1e-6);
      CHECK(f4 < f32);
      MESSAGE("p=4 overlap " << f4 << ", p=32 overlap " << f32);
    }
  }
  SUBCASE("fidelity ceiling 1 - 64 n 2^-p") {
    Rng rng(405);
    for (int n : {2, 4, 6, 8}) {
      for (int p : {8, 16, 32}) {
        const BitStringOracle oracle(haar_random_state(n, rng));
        const auto prep = prepare_via_oracle(oracle, PrecisionBits(p));
        CHECK(overlap(prep.state, oracle.reference()) >= 1 - 64.0 * n * std::ldexp(1.0, -p));
        CHECK(prep.queries == 2u * static_cast<unsigned>(p * (n + 1)));
        CHECK(prep.max_ancilla_residual <= 1e-10);
        CHECK(std::abs(prep.state.amplitudes().norm() - 1) < 1e-10);
        if (p == 32) CHECK(overlap(prep.state, oracle.reference()) >= 1 - 1e-6);
      }
    }
  }
  SUBCASE("branch representation agrees with the explicit register") {
    Rng rng(406);
    for (int n : {1, 2}) {
      for (int p : {1, 3, 8}) {
        const BitStringOracle oracle(haar_random_state(n, rng));
        const auto branched = prepare_via_oracle(oracle, PrecisionBits(p));
        const auto dense = prepare_via_oracle_dense(oracle, PrecisionBits(p));
        CHECK((branched.state.amplitudes() - dense.state.amplitudes()).norm() < 1e-10);
        CHECK(dense.queries == branched.queries);
        CHECK(dense.max_ancilla_residual <= 1e-10);
        CHECK(std::abs(dense.state.amplitudes().norm() - 1) < 1e-10);
      }
    }
    CHECK_THROWS_AS(prepare_via_oracle_dense(BitStringOracle(PureState::zero(4)), PrecisionBits(16)), CapacityError);
  }
}

TEST_CASE("classical z sampler") {
  Rng rng(71);
  {
    const BitStringOracle one(PureState::from_bits("1"));
    for (int i = 0; i < 100; ++i) CHECK(classical_z_sample(one, PrecisionBits(32), rng) == 1);
  }
  {
    Amplitudes v = Amplitudes::Constant(2, 1 / std::sqrt(2.0));
    const BitStringOracle plus(PureState::from_amplitudes(v));
    const int draws = 10000;
    int ones = 0;
    for (int i = 0; i < draws; ++i) ones += static_cast<int>(classical_z_sample(plus, PrecisionBits(32), rng));
    CHECK(std::abs(ones - draws / 2.0) <= 3 * std::sqrt(draws * 0.25));
  }
  {
    const BitStringOracle oracle(haar_random_state(4, rng));
    const auto target = born(oracle.reference());
    const int draws = 100000;
    std::vector<double> counts(16, 0);
    const auto q0 = oracle.queries();
    for (int i = 0; i < draws; ++i) counts[classical_z_sample(oracle, PrecisionBits(32), rng)] += 1;
    double tv = 0;
    for (std::size_t b = 0; b < 16; ++b) tv += std::abs(counts[b] / draws - target[b]) / 2;
    CHECK(tv < 0.02);
    // Lazy digit reading stops well short of p digits per level on average.
    CHECK(static_cast<double>(oracle.queries() - q0) / draws < 4 * 32);
    const auto law = z_sampler_distribution(oracle, PrecisionBits(32));
    for (std::size_t b = 0; b < 16; ++b) CHECK(std::abs(law[b] - target[b]) < 1e-8);
  }
}

TEST_CASE("rotated probabilities and scores") {
  Rng rng(81);
  const auto psi = haar_random_state(5, rng);
  const Vec rotated = hadamard_all(5) * psi.amplitudes();
  const auto q = rotated_probabilities(psi);
  for (std::size_t z = 0; z < q.size(); ++z) CHECK(std::abs(q[z] - std::norm(rotated(static_cast<Eigen::Index>(z)))) < 1e-12);

  std::vector<std::uint64_t> all(32);
  for (std::uint64_t z = 0; z < 32; ++z) all[z] = z;
  CHECK(std::abs(rxhog_score(psi, all) - 1.0 / 32) < 1e-12);
  CHECK(std::abs(rxhog_score(psi, all, false) - 1.0 / 32) < 1e-12);

  const auto p = born(psi);
  const auto argmax = static_cast<std::uint64_t>(std::max_element(p.begin(), p.end()) - p.begin());
  CHECK(rxhog_score(psi, {argmax}, false) >= 1.0 / 32);

  CHECK_THROWS_AS(rxhog_score(psi, {3, 4, 3}), InvalidInput);
  CHECK_THROWS_AS(rxhog_score(psi, {32}), InvalidInput);
  CHECK_THROWS_AS(rxhog_score(psi, {}), InvalidInput);
}

TEST_CASE("quantum solver") {
  SUBCASE("one qubit plus state") {
    Amplitudes v = Amplitudes::Constant(2, 1 / std::sqrt(2.0));
    const BitStringOracle oracle(PureState::from_amplitudes(v));
    Rng rng(1);
    const auto run = quantum_rxhog_solver(oracle, 1, PrecisionBits(32), rng);
    REQUIRE(run.samples.size() == 1);
    CHECK(run.samples[0] == 0);
    CHECK(std::abs(run.score - 1) < 1e-12);
    CHECK_THROWS_AS(quantum_rxhog_solver(oracle, 3, PrecisionBits(32), rng), InvalidInput);
    // The second string has zero probability, so distinct resampling hits its cap.
    CHECK_THROWS_AS(quantum_rxhog_solver(oracle, 2, PrecisionBits(32), rng), BudgetExceeded);
  }
  SUBCASE("samples are distinct") {
    RxhogTrialConfig cfg;
    cfg.n = 4;
    cfg.k = 12;
    cfg.seed = 5;
    for (int t = 0; t < 30; ++t) {
      const auto run = run_rxhog_trial(cfg, RxhogStrategy::Quantum, t);
      std::set<std::uint64_t> seen(run.samples.begin(), run.samples.end());
      CHECK(seen.size() == 12);
    }
  }
  SUBCASE("k = 1 mean score over Haar references") {
    // Haar average of sum_z q_z^2 is 2 / (N + 1).
    RxhogTrialConfig cfg;
    cfg.n = 6;
    cfg.seed = 2024;
    std::vector<double> expected, sampled;
    for (int t = 0; t < 200; ++t) {
      const auto run = run_rxhog_trial(cfg, RxhogStrategy::Quantum, t);
      const auto q = rotated_probabilities(rxhog_reference(cfg, t));
      double sq = 0;
      for (double v : q) sq += v * v;
      CHECK(std::abs(run.expected_score - sq) < 1e-6);
      expected.push_back(run.expected_score);
      sampled.push_back(run.score);
    }
    const auto e = mean_se(expected);
    const auto s = mean_se(sampled);
    CHECK(std::abs(e.mean - 2.0 / 65) < 4 * e.se);
    CHECK(std::abs(s.mean - 2.0 / 65) < 4 * s.se);
    MESSAGE("quantum k=1: expected " << e.mean * 64 << "/64, sampled " << s.mean * 64 << "/64");
  }
  SUBCASE("k = 10 mean score against an independent distinct sampler") {
    // Distinct sampling favors lighter strings as k grows, pulling the mean below 2/N.
    RxhogTrialConfig cfg;
    cfg.n = 6;
    cfg.k = 10;
    cfg.seed = 2025;
    std::mt19937_64 gen(99);
    std::vector<double> solver, reference;
    for (int t = 0; t < 200; ++t) {
      solver.push_back(run_rxhog_trial(cfg, RxhogStrategy::Quantum, t).score);
      const Vec rotated = hadamard_all(6) * rxhog_reference(cfg, t).amplitudes();
      std::vector<double> q(64);
      for (int z = 0; z < 64; ++z) q[static_cast<std::size_t>(z)] = std::norm(rotated(z));
      std::discrete_distribution<int> dist(q.begin(), q.end());
      double acc = 0;
      const int reps = 50;
      for (int r = 0; r < reps; ++r) {
        std::set<int> got;
        while (got.size() < 10) got.insert(dist(gen));
        double s = 0;
        for (int z : got) s += q[static_cast<std::size_t>(z)];
        acc += s / 10;
      }
      reference.push_back(acc / reps);
    }
    const auto a = mean_se(solver);
    const auto b = mean_se(reference);
    CHECK(std::abs(a.mean - b.mean) < 4 * std::hypot(a.se, b.se));
    MESSAGE("quantum k=10: solver " << a.mean * 64 << "/64, independent " << b.mean * 64 << "/64");
  }
}

TEST_CASE("classical solvers") {
  SUBCASE("z-sampler mean score is 1/N") {
    RxhogTrialConfig cfg;
    cfg.n = 6;
    cfg.seed = 77;
    std::vector<double> expected;
    for (int t = 0; t < 200; ++t) {
      const auto run = run_rxhog_trial(cfg, RxhogStrategy::ZSampler, t);
      const auto ref = rxhog_reference(cfg, t);
      const Vec rotated = hadamard_all(6) * ref.amplitudes();
      double direct = 0;
      for (int z = 0; z < 64; ++z) direct += std::norm(ref[static_cast<std::uint64_t>(z)]) * std::norm(rotated(z));
      CHECK(std::abs(run.expected_score - direct) < 1e-6);
      expected.push_back(run.expected_score);
    }
    const auto e = mean_se(expected);
    CHECK(std::abs(e.mean - 1.0 / 64) < 4 * e.se);
  }
  SUBCASE("table-only over all strings scores exactly 1/N") {
    RxhogTrialConfig cfg;
    cfg.n = 5;
    cfg.k = 32;
    cfg.seed = 3;
    const auto run = run_rxhog_trial(cfg, RxhogStrategy::TableOnly, 0);
    CHECK(std::abs(run.score - 1.0 / 32) < 1e-12);
    CHECK(run.queries == 0);
  }
  SUBCASE("phase-probe budget accounting") {
    Rng rng(8);
    const auto psi = haar_random_state(5, rng);
    const BitStringOracle oracle(psi);
    const auto table = born(psi);
    const auto run = classical_rxhog_solver({RxhogStrategy::PhaseProbe, 10, 0}, oracle, table, 3, PrecisionBits(12), rng);
    CHECK(run.queries == 120);
    CHECK(run.probed.size() == 10);
    CHECK(run.probed.size() <= run.queries);
    CHECK_THROWS_AS(classical_rxhog_solver({RxhogStrategy::PhaseProbe, 10, 119}, oracle, table, 3, PrecisionBits(12), rng),
                    BudgetExceeded);
    const auto adaptive =
        classical_rxhog_solver({RxhogStrategy::PhaseProbeAdaptive, 10, 120}, oracle, table, 3, PrecisionBits(12), rng);
    CHECK(adaptive.queries <= 120);
    CHECK(adaptive.probed.size() >= 5);
    CHECK(adaptive.probed.size() <= adaptive.queries);
    std::set<std::uint64_t> uniq(adaptive.samples.begin(), adaptive.samples.end());
    CHECK(uniq.size() == 3);
  }
  SUBCASE("phase-probe picks the best guess of its known component") {
    // With every phase known the best guess is the argmax of the rotated distribution.
    Rng rng(9);
    const auto psi = haar_random_state(4, rng);
    const BitStringOracle oracle(psi);
    const auto run = classical_rxhog_solver({RxhogStrategy::PhaseProbe, 16, 0}, oracle, born(psi), 1, PrecisionBits(40), rng);
    const Vec rotated = hadamard_all(4) * psi.amplitudes();
    Eigen::Index best = 0;
    rotated.cwiseAbs2().maxCoeff(&best);
    CHECK(run.samples[0] == static_cast<std::uint64_t>(best));
  }
  SUBCASE("phase-probe with n^2 probes at n = 8 stays under twice the ceiling") {
    RxhogTrialConfig cfg;
    cfg.n = 8;
    cfg.seed = 808;
    for (auto kind : {RxhogStrategy::PhaseProbe, RxhogStrategy::PhaseProbeAdaptive}) {
      std::vector<double> scores;
      for (int t = 0; t < 40; ++t) {
        const auto run = run_rxhog_trial(cfg, kind, t);
        CHECK(run.queries <= 64u * 32u);
        CHECK(run.probed.size() <= run.queries);
        if (kind == RxhogStrategy::PhaseProbe) CHECK(run.probed.size() == 64);
        scores.push_back(run.score);
      }
      const auto m = mean_se(scores);
      const double dim = 256;
      CHECK(m.mean <= 2 * classical_ceiling(8));
      MESSAGE(to_string(kind) << ": mean " << m.mean << ", fitted c " << (m.mean - 1 / dim) * dim * dim / std::pow(8, 4));
    }
  }
}

TEST_CASE("rotated concentration of the known component") {
  Rng rng(91);
  for (int n : {4, 6, 8}) {
    const auto psi = haar_random_state(n, rng);
    const auto table = born(psi);
    std::vector<std::uint64_t> order(table.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return table[a] > table[b]; });
    for (std::size_t s : {std::size_t{1}, static_cast<std::size_t>(n), static_cast<std::size_t>(n * n) / 2}) {
      const std::vector<std::uint64_t> probed(order.begin(), order.begin() + static_cast<long>(s));
      std::vector<double> phases;
      for (auto l : probed) phases.push_back(std::arg(psi[l]) / (2 * kPi));
      const Vec rotated = hadamard_all(n) * known_component(table, probed, phases);
      const double ceiling = concentration_ceiling(table, probed);
      double direct = 0;
      for (auto l : probed) direct += std::sqrt(table[l]);
      CHECK(std::abs(ceiling - direct * direct / std::ldexp(1.0, n)) < 1e-15);
      CHECK(rotated.cwiseAbs2().maxCoeff() <= ceiling + 1e-12);
      const double beta_max = table[order[0]];
      CHECK(ceiling <= static_cast<double>(s * s) * beta_max / std::ldexp(1.0, n) + 1e-15);
      MESSAGE("n=" << n << " |S|=" << s << " max rotated " << rotated.cwiseAbs2().maxCoeff() << " ceiling " << ceiling
                   << " |S|^2 n / N^2 " << static_cast<double>(s * s) * n / std::ldexp(1.0, 2 * n));
    }
  }
}
