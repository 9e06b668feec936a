#include "qclone/machine.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "qclone/errors.hpp"
#include "qclone/simplex.hpp"

namespace qclone {

namespace {

constexpr double kPairOverlapTol = 1e-10;
constexpr int kMaxRedraws = 100;

StateVector gaussian_vector(std::size_t dim, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<Complex> a(dim);
  const double scale = 1.0 / std::sqrt(2.0);
  for (auto& v : a) {
    const double re = normal(rng);
    const double im = normal(rng);
    v = Complex(re * scale, im * scale);
  }
  return StateVector(std::move(a));
}

StateVector ideal_output(const StateVector& s, const CopyScenario& scenario) {
  return tensor(tensor_power(s, scenario.copy_slots()), StateVector::basis(scenario.d_x, 0));
}

// Redraws until the second vector is not parallel to the first.
template <typename FirstFn>
OutputPair draw_pair(const CopyScenario& scenario, std::uint64_t seed, FirstFn first) {
  scenario.validate();
  auto rng = make_rng(seed);
  const std::size_t dim = scenario.output_dim();
  for (int attempt = 0; attempt < kMaxRedraws; ++attempt) {
    StateVector raw1 = first(rng, dim);
    StateVector raw2 = gaussian_vector(dim, rng);
    try {
      return make_output_pair(scenario, raw1, raw2);
    } catch (const NormError&) {
      continue;
    }
  }
  throw NormError("degenerate draws: no usable output pair after " + std::to_string(kMaxRedraws) +
                  " attempts");
}

std::vector<double> to_params(const StateVector& a, const StateVector& b) {
  std::vector<double> p;
  p.reserve(2 * (a.dim() + b.dim()));
  for (const auto* v : {&a, &b}) {
    for (const auto& c : v->amplitudes()) {
      p.push_back(c.real());
      p.push_back(c.imag());
    }
  }
  return p;
}

std::pair<StateVector, StateVector> from_params(std::span<const double> p, std::size_t dim) {
  std::vector<Complex> a(dim), b(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    a[i] = Complex(p[2 * i], p[2 * i + 1]);
    b[i] = Complex(p[2 * (dim + i)], p[2 * (dim + i) + 1]);
  }
  return {StateVector(std::move(a)), StateVector(std::move(b))};
}

struct StartOutcome {
  std::vector<double> params;
  double value = std::numeric_limits<double>::infinity();
  bool converged = false;
  long evaluations = 0;
  double max_drift = 0.0;
};

StartOutcome run_start(const CopyScenario& scenario, const Objective& objective,
                       const OptimizeOptions& opts, int start) {
  const std::size_t dim = scenario.output_dim();
  auto rng = make_rng(opts.seed, static_cast<std::uint64_t>(start));
  const StateVector raw1 = gaussian_vector(dim, rng).normalized();
  const StateVector raw2 = gaussian_vector(dim, rng).normalized();

  StartOutcome out;
  auto f = [&](std::span<const double> p) {
    auto [a, b] = from_params(p, dim);
    try {
      const OutputPair pair = make_output_pair(scenario, a, b);
      out.max_drift = std::max(out.max_drift, std::abs(inner(pair.psi1, pair.psi2) - scenario.z));
      return objective(evaluate_machine(pair));
    } catch (const NormError&) {
      return std::numeric_limits<double>::infinity();
    }
  };

  opt::NelderMeadOptions nm;
  nm.max_evals = opts.max_iters;
  nm.ftol = opts.ftol;
  const auto res = opt::nelder_mead(f, to_params(raw1, raw2), nm);
  out.params = res.x;
  out.value = res.fx;
  out.converged = res.converged;
  out.evaluations = res.evaluations;
  return out;
}

}  // namespace

InputPair canonical_inputs(const CopyScenario& scenario) {
  scenario.validate();
  StateVector s1 = StateVector::basis(scenario.d_in, 0);
  StateVector s2 = Complex(scenario.z) * s1 +
                   Complex(std::sqrt(1.0 - scenario.z * scenario.z)) *
                       StateVector::basis(scenario.d_in, 1);
  return {std::move(s1), std::move(s2)};
}

void OutputPair::validate() const {
  scenario.validate();
  if (psi1.dim() != scenario.output_dim() || psi2.dim() != scenario.output_dim()) {
    throw DimensionError("output pair dimension does not match scenario");
  }
  if (!psi1.is_unit() || !psi2.is_unit()) throw NormError("output pair vectors must be unit");
  if (std::abs(inner(psi1, psi2) - scenario.z) > kPairOverlapTol) {
    throw DomainError("output pair overlap differs from z");
  }
}

std::mt19937_64 make_rng(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  return std::mt19937_64(seq);
}

OutputPair make_output_pair(const CopyScenario& scenario, const StateVector& raw1,
                            const StateVector& raw2) {
  scenario.validate();
  if (raw1.dim() != scenario.output_dim() || raw2.dim() != scenario.output_dim()) {
    throw DimensionError("raw vectors must have the scenario output dimension");
  }
  StateVector psi1 = raw1.normalized();
  const double z = scenario.z;
  if (z == 1.0) return OutputPair{psi1, psi1, scenario};

  StateVector perp = raw2 - inner(psi1, raw2) * psi1;
  // Second Gram-Schmidt pass keeps <psi1|w> at roundoff level.
  perp -= inner(psi1, perp) * psi1;
  if (perp.norm() < 1e-8 * raw2.norm() || perp.norm() == 0.0) {
    throw NormError("second vector is numerically parallel to the first");
  }
  const StateVector w = perp.normalized();
  StateVector psi2 = Complex(z) * psi1 + Complex(std::sqrt(1.0 - z * z)) * w;
  return OutputPair{std::move(psi1), std::move(psi2), scenario};
}

OutputPair sample_pair(const CopyScenario& scenario, std::uint64_t seed) {
  return draw_pair(scenario, seed,
                   [](std::mt19937_64& rng, std::size_t dim) { return gaussian_vector(dim, rng); });
}

OutputPair sample_pair_pinned(const CopyScenario& scenario, std::uint64_t seed) {
  const StateVector ideal = ideal_output(canonical_inputs(scenario).s1, scenario);
  return draw_pair(scenario, seed, [&](std::mt19937_64&, std::size_t) { return ideal; });
}

PairAnalysis analyze_pair(const OutputPair& pair) {
  const auto inputs = canonical_inputs(pair.scenario);
  Decomposition d1 = decompose(pair.psi1, inputs.s1, pair.scenario);
  Decomposition d2 = decompose(pair.psi2, inputs.s2, pair.scenario);
  const Complex eta12 = inner(d1.q, d2.q);
  const ErrorPair errors{std::min(d1.x, 1.0), std::min(d2.x, 1.0)};
  return PairAnalysis{std::move(d1), std::move(d2), eta12, errors};
}

ErrorPair evaluate_machine(const OutputPair& pair) {
  const auto inputs = canonical_inputs(pair.scenario);
  const double x1 = decompose(pair.psi1, inputs.s1, pair.scenario).x;
  const double x2 = decompose(pair.psi2, inputs.s2, pair.scenario).x;
  return {std::min(x1, 1.0), std::min(x2, 1.0)};
}

void Objective::validate() const {
  if (kind == Kind::weighted && (!(w1 >= 0.0 && w2 >= 0.0) || !(w1 + w2 > 0.0))) {
    throw DomainError("weighted objective needs nonnegative weights with positive sum");
  }
}

double Objective::operator()(const ErrorPair& e) const {
  switch (kind) {
    case Kind::sum: return e.x1 + e.x2;
    case Kind::max: return std::max(e.x1, e.x2);
    case Kind::weighted: return w1 * e.x1 + w2 * e.x2;
  }
  return std::numeric_limits<double>::quiet_NaN();
}

std::string_view to_string(Objective::Kind kind) noexcept {
  switch (kind) {
    case Objective::Kind::sum: return "sum";
    case Objective::Kind::max: return "max";
    case Objective::Kind::weighted: return "weighted";
  }
  return "unknown";
}

Objective::Kind parse_objective_kind(std::string_view name) {
  for (auto k : {Objective::Kind::sum, Objective::Kind::max, Objective::Kind::weighted}) {
    if (to_string(k) == name) return k;
  }
  throw DomainError("unknown objective '" + std::string(name) + "'");
}

double objective_bound(const Objective& objective, double z, int n) {
  objective.validate();
  switch (objective.kind) {
    case Objective::Kind::sum: return sum_min(z, n);
    case Objective::Kind::max: return n == 1 ? x_equal_min_exact(z) : x_equal_min_simplified(z, n);
    case Objective::Kind::weighted: return weighted_sum_min(z, n, objective.w1, objective.w2);
  }
  throw DomainError("unknown objective");
}

MachineResult optimize_machine(const CopyScenario& scenario, const Objective& objective,
                               const OptimizeOptions& opts) {
  scenario.validate();
  objective.validate();
  if (opts.starts < 1) throw DomainError("optimizer needs at least one start");
  if (opts.max_iters < 1 || !(opts.ftol >= 0.0)) throw DomainError("invalid optimizer options");

  const double bound = objective_bound(objective, scenario.z, scenario.n);

  if (scenario.z == 1.0) {
    // Identical inputs: the ideal copier is exact.
    const auto ideal = ideal_output(canonical_inputs(scenario).s1, scenario);
    OutputPair pair{ideal, ideal, scenario};
    const ErrorPair errors = evaluate_machine(pair);
    const double value = objective(errors);
    return MachineResult{std::move(pair), errors, value, bound, value - bound, opts.starts, true, 0,
                         0, 0.0};
  }

  std::vector<StartOutcome> outcomes(static_cast<std::size_t>(opts.starts));
  if (opts.parallel && opts.starts > 1) {
    std::vector<std::future<StartOutcome>> futures;
    futures.reserve(outcomes.size());
    for (int k = 0; k < opts.starts; ++k) {
      futures.push_back(std::async(std::launch::async, run_start, std::cref(scenario),
                                   std::cref(objective), std::cref(opts), k));
    }
    for (std::size_t k = 0; k < futures.size(); ++k) outcomes[k] = futures[k].get();
  } else {
    for (int k = 0; k < opts.starts; ++k) outcomes[static_cast<std::size_t>(k)] =
        run_start(scenario, objective, opts, k);
  }

  std::size_t best = 0;
  long evaluations = 0;
  double drift = 0.0;
  for (std::size_t k = 0; k < outcomes.size(); ++k) {
    evaluations += outcomes[k].evaluations;
    drift = std::max(drift, outcomes[k].max_drift);
    if (outcomes[k].value < outcomes[best].value) best = k;
  }

  const auto& win = outcomes[best];
  auto [a, b] = from_params(win.params, scenario.output_dim());
  OutputPair pair = make_output_pair(scenario, a, b);
  const ErrorPair errors = evaluate_machine(pair);
  const double value = objective(errors);
  const double gap = value - bound;
  if (gap < -kSolverTol) {
    throw BoundViolation("optimizer found objective " + std::to_string(value) +
                         " below the lower bound " + std::to_string(bound));
  }
  return MachineResult{std::move(pair), errors, value,     bound,       gap,  opts.starts,
                       win.converged,   static_cast<int>(best), evaluations, drift};
}

}  // namespace qclone
