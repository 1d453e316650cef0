#include "oraclelab/statediag/state_diag.hpp"

#include <cmath>
#include <limits>

#include "oraclelab/qsim/apply.hpp"
#include "oraclelab/qsim/measures.hpp"

namespace oraclelab {

namespace {

void ordered_tuples(int width, int arity, std::vector<int>& prefix, std::vector<std::vector<int>>& out) {
  if (static_cast<int>(prefix.size()) == arity) {
    out.push_back(prefix);
    return;
  }
  for (int q = 0; q < width; ++q) {
    if (std::find(prefix.begin(), prefix.end(), q) != prefix.end()) continue;
    prefix.push_back(q);
    ordered_tuples(width, arity, prefix, out);
    prefix.pop_back();
  }
}

GateSet ranked(GateSet gates) {
  std::sort(gates.begin(), gates.end());
  gates.erase(std::unique(gates.begin(), gates.end()), gates.end());
  return gates;
}

double max_fidelity(const PureState& psi, const std::vector<DensityOperator>& avoid) {
  double best = 0;
  for (const auto& rho : avoid) best = std::max(best, fidelity(psi, rho));
  return best;
}

}  // namespace

std::vector<GateOp> gate_placements(const GateSet& gates, int width) {
  detail::require(!gates.empty(), "gate set is empty");
  std::vector<GateOp> out;
  for (GateKind kind : ranked(gates)) {
    detail::require(is_parameter_free(kind), "enumeration only supports parameter-free gates");
    if (arity(kind) > width) continue;
    std::vector<std::vector<int>> tuples;
    std::vector<int> prefix;
    ordered_tuples(width, arity(kind), prefix, tuples);
    for (auto& tg : tuples) out.push_back(GateOp{kind, std::move(tg)});
  }
  detail::require(!out.empty(), "no gate in the set fits the register width");
  return out;
}

CircuitStream::CircuitStream(const GateSet& gates, int width, int min_len)
    : width_(width), placements_(gate_placements(gates, width)), digits_(static_cast<std::size_t>(min_len), 0) {
  detail::require(min_len >= 0, "minimum circuit length must be non-negative");
}

Circuit CircuitStream::next() {
  std::vector<GateOp> ops;
  ops.reserve(digits_.size());
  for (auto d : digits_) ops.push_back(placements_[d]);
  Circuit out(width_, std::move(ops));
  ++emitted_;
  // Odometer increment; the last position varies fastest.
  std::size_t pos = digits_.size();
  while (pos > 0) {
    --pos;
    if (++digits_[pos] < placements_.size()) return out;
    digits_[pos] = 0;
  }
  digits_.assign(digits_.size() + 1, 0);
  return out;
}

std::vector<Circuit> enumerate_circuits(const GateSet& gates, int width, int max_len) {
  detail::require(max_len >= 0, "max_len must be non-negative");
  CircuitStream stream(gates, width, 0);
  std::vector<Circuit> out;
  while (true) {
    Circuit c = stream.next();
    if (static_cast<int>(c.size()) > max_len) break;
    out.push_back(std::move(c));
  }
  return out;
}

void EnumerationConfig::validate() const {
  detail::require(n >= 1, "n must be positive");
  check_width(n);
  detail::require(f >= 0, "f must be non-negative");
  detail::require(epsilon > 0 && epsilon <= 1, "epsilon must lie in (0, 1]");
  detail::require(budget > 0, "budget must be positive");
  detail::require(!gate_set.empty(), "gate set is empty");
  check_width(seed_width());
}

int EnumerationConfig::seed_width() const { return std::max(n, std::min(max_arity(gate_set) * f, 3 * n)); }

std::vector<DensityOperator> avoided_marginals(const EnumerationConfig& cfg, std::uint64_t* examined) {
  cfg.validate();
  const int w = cfg.seed_width();
  const auto keep = qubit_range(0, cfg.n);
  CircuitStream stream(cfg.gate_set, w, 0);
  std::vector<DensityOperator> out;
  while (true) {
    Circuit c = stream.next();
    if (static_cast<int>(c.size()) > cfg.f) break;
    const auto out_state = apply_circuit(PureState::zero(w), c);
    auto rho = partial_trace(out_state, keep);
    bool seen = false;
    for (const auto& r : out) {
      if ((r.matrix() - rho.matrix()).norm() < 1e-12) {
        seen = true;
        break;
      }
    }
    if (!seen) out.push_back(std::move(rho));
  }
  if (examined) *examined = stream.emitted() - 1;
  return out;
}

StateDiagResult state_diag(const EnumerationConfig& cfg) {
  cfg.validate();
  StateDiagResult result;
  result.seed_width = cfg.seed_width();
  std::uint64_t examined = 0;
  auto avoid = avoided_marginals(cfg, &examined);
  result.distinct_marginals = avoid.size();
  result.circuits_examined = examined;
  if (examined >= cfg.budget) return result;

  CircuitStream stream(cfg.gate_set, cfg.n, cfg.f + 1);
  std::uint64_t l = 0;
  while (result.circuits_examined < cfg.budget) {
    Circuit c = stream.next();
    ++result.circuits_examined;
    auto psi = apply_circuit(PureState::zero(cfg.n), c);
    const double cert = max_fidelity(psi, avoid);
    if (cert >= cfg.epsilon) continue;
    HardStateRecord rec{l, c, psi, cert};
    if (l == cfg.index) {
      result.record = std::move(rec);
      return result;
    }
    avoid.push_back(DensityOperator::from_pure(psi));
    result.earlier.push_back(std::move(rec));
    ++l;
  }
  return result;
}

std::uint64_t min_hard_state_count(int n, double epsilon, double r) {
  detail::require(n >= 1 && n <= 62, "n must lie in 1..62");
  detail::require(epsilon > 0 && epsilon < 1, "epsilon must lie in (0, 1)");
  detail::require(r >= 0, "r must be non-negative");
  const long double dim = std::ldexp(1.0L, n);
  const long double count = std::floor(std::pow(1.0L - epsilon, 1.0L - dim) - r);
  if (!(count > 0)) return 0;
  if (count >= static_cast<long double>(std::numeric_limits<std::uint64_t>::max())) return std::numeric_limits<std::uint64_t>::max();
  return static_cast<std::uint64_t>(count);
}

double random_avoidance_probability(int n, double epsilon, double r) {
  detail::require(n >= 1 && n <= 62, "n must lie in 1..62");
  detail::require(epsilon > 0 && epsilon <= 1, "epsilon must lie in (0, 1]");
  detail::require(r >= 0, "r must be non-negative");
  const double dim = std::ldexp(1.0, n);
  return std::max(0.0, 1.0 - r * std::pow(1.0 - epsilon, dim - 1));
}

Json config_to_json(const EnumerationConfig& cfg) {
  Json gates = Json::array();
  for (GateKind k : cfg.gate_set) gates.push_back(std::string(to_string(k)));
  return {{"n", cfg.n},          {"f", cfg.f},           {"epsilon", cfg.epsilon}, {"gate_set", gates},
          {"index", cfg.index},  {"budget", cfg.budget}, {"seed_width", cfg.seed_width()}};
}

Json hard_state_to_json(const HardStateRecord& record, const EnumerationConfig& cfg) {
  return {{"index", record.index},
          {"circuit", circuit_to_json(record.witness)},
          {"amplitudes", amplitudes_to_json(record.state)},
          {"certificate", record.certificate},
          {"config", config_to_json(cfg)}};
}

}  // namespace oraclelab
