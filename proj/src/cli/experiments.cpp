#include "oraclelab/cli/experiments.hpp"

#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>

#include "oraclelab/mqst/distinguish.hpp"
#include "oraclelab/mqst/fidelity_law.hpp"
#include "oraclelab/mqst/grover_search.hpp"
#include "oraclelab/protocol/protocol.hpp"
#include "oraclelab/qsim.hpp"
#include "oraclelab/rxhog/rxhog.hpp"
#include "oraclelab/statediag/state_diag.hpp"

namespace oraclelab::cli {

namespace {

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(8);
  s << v;
  return s.str();
}

Json number_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

template <typename T>
T get(const Json& cfg, const char* key) {
  return cfg.at(key).get<T>();
}

int trials_of(const Json& cfg) { return get<int>(cfg, "trials"); }
int workers_of(const Json& cfg) { return get<int>(cfg, "workers"); }

// ---------------------------------------------------------------------------

Report fidelity_dist(const Json& cfg) {
  const int n = get<int>(cfg, "n");
  const auto seed = get<std::uint64_t>(cfg, "seed");
  const int m = trials_of(cfg);
  const auto fids = parallel_trials<double>(m, workers_of(cfg), [&](int t) {
    Rng rng = Rng::derive(seed, static_cast<std::uint64_t>(t), "fidelity-dist/pair");
    const auto a = haar_random_state(n, rng);
    const auto b = haar_random_state(n, rng);
    return std::norm(inner(a, b));
  });
  Report r{"fidelity-dist", cfg};
  r.columns = {"trial", "fidelity"};
  for (int t = 0; t < m; ++t) r.rows.push_back(Json::array({t, fids[static_cast<std::size_t>(t)]}));
  const double ks = haar_fidelity_ks(n, fids);
  const double ks_limit = std::max(0.01, 1.628 / std::sqrt(static_cast<double>(m)));
  const auto mean = mean_with_error(fids);
  const double expected = std::ldexp(1.0, -n);
  r.aggregates = {{"ks_statistic", ks},
                  {"ks_limit", ks_limit},
                  {"mean_fidelity", mean.mean},
                  {"standard_error", mean.standard_error},
                  {"expected_mean", expected}};
  r.verdicts.push_back({"fidelity-law", ks < ks_limit, "KS " + fmt(ks) + " vs limit " + fmt(ks_limit)});
  r.verdicts.push_back({"mean-overlap-law", std::abs(mean.mean - expected) <= 3 * mean.standard_error,
                        "mean " + fmt(mean.mean) + " vs 1/2^n = " + fmt(expected) + " (3 se = " +
                            fmt(3 * mean.standard_error) + ")"});
  return r;
}

// ---------------------------------------------------------------------------

GateSet parse_gate_set(const std::string& text) {
  GateSet out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(gate_kind_from_string(item));
    } catch (const InvalidInput& e) {
      throw ConfigError("config.gate_set", e.what());
    }
  }
  if (out.empty()) throw ConfigError("config.gate_set", "gate set is empty");
  return out;
}

Report state_diag_experiment(const Json& cfg) {
  EnumerationConfig ec;
  ec.n = get<int>(cfg, "n");
  ec.f = get<int>(cfg, "f");
  ec.epsilon = get<double>(cfg, "epsilon");
  ec.index = get<std::uint64_t>(cfg, "index");
  ec.budget = get<std::uint64_t>(cfg, "budget");
  ec.gate_set = parse_gate_set(get<std::string>(cfg, "gate_set"));
  ec.validate();
  const auto result = state_diag(ec);

  Report r{"state-diag", cfg};
  r.columns = {"index", "certificate", "witness_length"};
  r.aggregates = {{"circuits_examined", result.circuits_examined},
                  {"seed_width", result.seed_width},
                  {"distinct_marginals", result.distinct_marginals},
                  {"budget_exhausted", result.budget_exhausted()}};
  if (!result.record) {
    r.verdicts.push_back({"state-diag-certificate", false,
                          "budget exhausted after " + std::to_string(result.circuits_examined) + " circuits"});
    return r;
  }
  std::vector<HardStateRecord> all = result.earlier;
  all.push_back(*result.record);
  for (const auto& h : all) r.rows.push_back(Json::array({h.index, h.certificate, h.witness.size()}));
  r.aggregates["hard_state"] = hard_state_to_json(*result.record, ec);

  // Independent re-check against a fresh enumeration of the avoided marginals.
  const auto marginals = avoided_marginals(ec);
  double worst = 0;
  for (const auto& rho : marginals) worst = std::max(worst, fidelity(result.record->state, rho));
  double pairwise = 0;
  for (std::size_t i = 0; i < all.size(); ++i)
    for (std::size_t j = i + 1; j < all.size(); ++j) pairwise = std::max(pairwise, fidelity(all[i].state, all[j].state));
  r.verdicts.push_back({"state-diag-certificate", worst < ec.epsilon,
                        "max fidelity with " + std::to_string(marginals.size()) + " avoided marginals " + fmt(worst)});
  r.verdicts.push_back({"state-diag-pairwise-separation", pairwise < ec.epsilon,
                        "max fidelity between indices 0.." + std::to_string(ec.index) + " is " + fmt(pairwise)});
  return r;
}

// ---------------------------------------------------------------------------

Report mqst_experiment(const Json& cfg) {
  const int n = get<int>(cfg, "n");
  const int width = n + get<int>(cfg, "ancillas");
  check_width(width);
  const int k = get<int>(cfg, "k");
  const int depth = get<int>(cfg, "depth");
  const auto seed = get<std::uint64_t>(cfg, "seed");
  const auto runs = parallel_trials<DistinguishRun>(trials_of(cfg), workers_of(cfg), [&](int t) {
    Rng rng = Rng::derive(seed, static_cast<std::uint64_t>(t), "mqst/strategy");
    const MarkedStateOracle oracle(haar_random_state(n, rng), true);
    return run_mqst_distinguish(random_strategy(width, k, depth, rng), oracle);
  });
  Report r{"mqst", cfg};
  r.columns = {"trial", "k", "epsilon", "distance_at_query", "distance", "bound", "violated"};
  double max_eps = 0, max_dist = 0, max_bound = 0;
  int violations = 0;
  for (std::size_t t = 0; t < runs.size(); ++t) {
    const auto& run = runs[t];
    r.rows.push_back(Json::array({t, run.k, run.epsilon, run.distance_at_query, run.distance, run.bound.clamped, run.violated}));
    max_eps = std::max(max_eps, run.epsilon);
    max_dist = std::max(max_dist, run.distance_at_query);
    max_bound = std::max(max_bound, run.bound.clamped);
    violations += run.violated;
  }
  r.aggregates = {{"max_epsilon", max_eps},
                  {"max_distance", max_dist},
                  {"max_bound", max_bound},
                  {"bound_at_max_epsilon", indist_bound(k, max_eps).clamped},
                  {"violations", violations}};
  r.verdicts.push_back({"indistinguishability-bound", violations == 0,
                        std::to_string(violations) + " of " + std::to_string(runs.size()) + " strategies exceed the bound"});
  return r;
}

// ---------------------------------------------------------------------------

Report grover_experiment(const Json& cfg) {
  const int n_max = get<int>(cfg, "n");
  const int n_min = get<int>(cfg, "n_min");
  if (n_min > n_max) throw ConfigError("config.n_min", "must not exceed n");
  std::vector<int> ns;
  for (int n = n_min; n <= n_max; n += 2) ns.push_back(n);
  const int trials = trials_of(cfg);
  const auto seed = get<std::uint64_t>(cfg, "seed");
  const bool conjugated = get<bool>(cfg, "conjugated");
  const auto rows = parallel_trials<ScalingRow>(static_cast<int>(ns.size()), workers_of(cfg), [&](int i) {
    return grover_scaling_row(ns[static_cast<std::size_t>(i)], trials, seed, conjugated);
  });
  Report r{"grover", cfg};
  r.columns = {"n", "quantum_median", "classical_median", "trials", "quantum_failures"};
  Json qr = Json::array(), cr = Json::array();
  bool q_ok = true, c_ok = true;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& row = rows[i];
    r.rows.push_back(Json::array({row.n, row.quantum_median, row.classical_median, row.trials, row.quantum_failures}));
    if (i == 0) continue;
    const double q = row.quantum_median / rows[i - 1].quantum_median;
    const double c = row.classical_median / rows[i - 1].classical_median;
    qr.push_back(q);
    cr.push_back(c);
    q_ok = q_ok && std::abs(q - 2) <= 0.5;
    c_ok = c_ok && std::abs(c - 4) <= 1.0;
  }
  r.aggregates = {{"quantum_ratio_per_two_bits", qr}, {"classical_ratio_per_two_bits", cr}};
  if (rows.size() >= 2) {
    r.verdicts.push_back({"grover-quadratic-scaling", q_ok, "quantum median ratios " + qr.dump() + " vs 2 +- 25%"});
    r.verdicts.push_back({"classical-linear-scaling", c_ok, "classical median ratios " + cr.dump() + " vs 4 +- 25%"});
  }
  return r;
}

// ---------------------------------------------------------------------------

Report protocol_experiment(const Json& cfg) {
  ProtocolConfig base;
  base.n = get<int>(cfg, "n");
  base.kappa = get<double>(cfg, "kappa");
  base.depth = get<int>(cfg, "depth");
  base.seed = get<std::uint64_t>(cfg, "seed");
  base.shot_budget = get<std::uint64_t>(cfg, "shot_budget");
  base.noise = get<double>(cfg, "noise");
  try {
    base.merlin = merlin_kind_from_string(get<std::string>(cfg, "merlin"));
  } catch (const InvalidInput& e) {
    throw ConfigError("config.merlin", e.what());
  }
  const auto reply = get<std::string>(cfg, "reply");
  if (reply == "bit") base.reply = ChannelReply::ClassicalBit;
  else if (reply == "qubit") base.reply = ChannelReply::Qubit;
  else throw ConfigError("config.reply", "expected bit or qubit");
  const auto language = get<std::string>(cfg, "language");
  if (language == "yes") base.force_language_bit = true;
  else if (language == "no") base.force_language_bit = false;
  else if (language != "random") throw ConfigError("config.language", "expected random, yes or no");
  try {
    base.validate();
  } catch (const InvalidInput& e) {
    throw ConfigError("config", e.what());
  }

  const auto transcripts = parallel_trials<ProtocolTranscript>(trials_of(cfg), workers_of(cfg), [&](int t) {
    ProtocolConfig c = base;
    c.trial = static_cast<std::uint64_t>(t);
    return run_protocol(c);
  });
  if (cfg.contains("transcript_out")) {
    std::ofstream out(get<std::string>(cfg, "transcript_out"), std::ios::binary);
    if (!out) throw ConfigError("config.transcript_out", "cannot open for writing");
    for (const auto& t : transcripts) out << transcript_to_jsonl(t);
  }

  Report r{"protocol", cfg};
  r.columns = {"trial", "language_bit", "accept", "tests", "passes", "merlin_shots", "quantum_transfers", "exact_accept", "failure"};
  int yes = 0, yes_accept = 0, no = 0, no_reject = 0;
  double exact_sum = 0;
  for (std::size_t t = 0; t < transcripts.size(); ++t) {
    const auto& tr = transcripts[t];
    r.rows.push_back(Json::array({t, tr.language_bit, tr.accept, tr.tests, tr.passes, tr.merlin_shots, tr.quantum_transfers,
                                  tr.exact_accept, tr.failure}));
    if (tr.language_bit) {
      ++yes;
      yes_accept += tr.accept;
      exact_sum += tr.exact_accept;
    } else {
      ++no;
      no_reject += !tr.accept;
    }
  }
  const double accept_rate = yes ? static_cast<double>(yes_accept) / yes : std::nan("");
  r.aggregates = {{"yes_instances", yes},
                  {"yes_accept_rate", number_or_null(accept_rate)},
                  {"yes_mean_exact_accept", number_or_null(yes ? exact_sum / yes : std::nan(""))},
                  {"no_instances", no},
                  {"no_reject_rate", number_or_null(no ? static_cast<double>(no_reject) / no : std::nan(""))}};
  if (no) {
    r.verdicts.push_back({"protocol-no-instance-rejection", no_reject == no,
                          std::to_string(no_reject) + " of " + std::to_string(no) + " no-instances rejected"});
  }
  if (yes && base.merlin == MerlinKind::Honest && base.noise == 0) {
    r.verdicts.push_back({"protocol-completeness", yes_accept == yes,
                          std::to_string(yes_accept) + " of " + std::to_string(yes) + " yes-instances accepted"});
  }
  if (yes && base.merlin != MerlinKind::Honest) {
    r.verdicts.push_back({"protocol-soundness", accept_rate < 0.25,
                          std::string(to_string(base.merlin)) + " Merlin accepted at rate " + fmt(accept_rate) + " (limit 0.25)"});
  }
  return r;
}

// ---------------------------------------------------------------------------

Report rxhog_experiment(const Json& cfg) {
  RxhogTrialConfig rc;
  rc.n = get<int>(cfg, "n");
  rc.k = get<int>(cfg, "k");
  rc.precision = get<int>(cfg, "precision");
  rc.probes = get<int>(cfg, "probes");
  rc.budget = get<std::uint64_t>(cfg, "budget");
  rc.seed = get<std::uint64_t>(cfg, "seed");
  try {
    rc.validate();
  } catch (const InvalidInput& e) {
    throw ConfigError("config", e.what());
  }
  const std::vector<RxhogStrategy> strategies = {RxhogStrategy::Quantum, RxhogStrategy::ZSampler, RxhogStrategy::PhaseProbe,
                                                 RxhogStrategy::PhaseProbeAdaptive, RxhogStrategy::TableOnly};
  const int trials = trials_of(cfg);
  const auto runs = parallel_trials<std::vector<RxhogRun>>(trials, workers_of(cfg), [&](int t) {
    std::vector<RxhogRun> out;
    for (auto s : strategies) out.push_back(run_rxhog_trial(rc, s, t));
    return out;
  });

  Report r{"rxhog", cfg};
  r.columns = {"trial", "n", "k", "p", "strategy", "score", "expected_score", "queries", "probed"};
  for (int t = 0; t < trials; ++t) {
    for (const auto& run : runs[static_cast<std::size_t>(t)]) {
      r.rows.push_back(Json::array({t, run.n, run.k, run.precision, std::string(to_string(run.strategy)), run.score,
                                    number_or_null(run.expected_score), run.queries, run.probed.size()}));
    }
  }
  const double dim = std::ldexp(1.0, rc.n);
  // Expected scores average out the solver's coins exactly; they exist for every run at k = 1.
  std::vector<double> headline(strategies.size());
  Json per = Json::object();
  double min_overlap = 1, max_residual = 0;
  for (std::size_t s = 0; s < strategies.size(); ++s) {
    std::vector<double> sampled, expected;
    double queries = 0;
    bool exact = true;
    for (const auto& trial : runs) {
      const auto& run = trial[s];
      sampled.push_back(run.score);
      expected.push_back(run.expected_score);
      exact = exact && std::isfinite(run.expected_score);
      queries += static_cast<double>(run.queries);
      if (run.strategy == RxhogStrategy::Quantum) {
        min_overlap = std::min(min_overlap, run.preparation_overlap);
        max_residual = std::max(max_residual, run.ancilla_residual);
      }
    }
    const auto ms = mean_with_error(sampled);
    Json entry = {{"mean_score", ms.mean},
                  {"ci95_half_width", 1.96 * ms.standard_error},
                  {"mean_queries", queries / trials}};
    if (exact) {
      const auto me = mean_with_error(expected);
      entry["mean_expected_score"] = me.mean;
      entry["expected_ci95_half_width"] = 1.96 * me.standard_error;
      headline[s] = me.mean;
    } else {
      entry["mean_expected_score"] = nullptr;
      headline[s] = ms.mean;
    }
    per[std::string(to_string(strategies[s]))] = entry;
  }
  const double ratio = headline[0] / headline[1];
  const double ceiling = classical_ceiling(rc.n);
  r.aggregates = {{"strategies", per},
                  {"quantum_over_z_sampler", ratio},
                  {"two_over_dim", 2 / dim},
                  {"classical_ceiling", ceiling},
                  {"min_preparation_overlap", min_overlap},
                  {"max_ancilla_residual", max_residual}};
  r.verdicts.push_back({"rxhog-quantum-classical-gap", ratio >= 1.8 && ratio <= 2.2, "ratio " + fmt(ratio) + " vs [1.8, 2.2]"});
  r.verdicts.push_back({"rxhog-quantum-mean", std::abs(headline[0] - 2 / dim) <= 0.05 * 2 / dim,
                        "quantum mean " + fmt(headline[0]) + " vs 2/2^n = " + fmt(2 / dim) + " +- 5%"});
  double worst = 0;
  for (std::size_t s = 1; s < strategies.size(); ++s) worst = std::max(worst, headline[s]);
  r.verdicts.push_back({"rxhog-classical-ceiling", worst <= 2 * ceiling,
                        "largest classical mean " + fmt(worst) + " vs 2 (1/2^n + n^4/2^2n) = " + fmt(2 * ceiling)});
  const double prep_floor = 1 - 64.0 * rc.n * std::ldexp(1.0, -rc.precision);
  r.verdicts.push_back({"preparation-fidelity", min_overlap >= prep_floor,
                        "min overlap " + fmt(min_overlap) + " vs 1 - 64 n 2^-p = " + fmt(prep_floor)});
  r.verdicts.push_back({"ancilla-disentanglement", max_residual <= 1e-10, "max residual " + fmt(max_residual)});
  return r;
}

Report dispatch(const std::string& name, const Json& config) {
  if (name == "fidelity-dist") return fidelity_dist(config);
  if (name == "state-diag") return state_diag_experiment(config);
  if (name == "mqst") return mqst_experiment(config);
  if (name == "grover") return grover_experiment(config);
  if (name == "protocol") return protocol_experiment(config);
  if (name == "rxhog") return rxhog_experiment(config);
  throw ConfigError("experiment", "unknown experiment '" + name + "'");
}

}  // namespace

Report run_experiment(const std::string& name, const Json& config) {
  Report r = dispatch(name, config);
  // Output locations and the worker count do not affect results and stay out of the echo.
  for (const char* key : {"workers", "out", "transcript_out"}) r.config.erase(key);
  return r;
}

}  // namespace oraclelab::cli
