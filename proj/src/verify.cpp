#include "qclone/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

#include "qclone/bounds.hpp"
#include "qclone/errors.hpp"

namespace qclone::verify {

namespace {

constexpr double kOracleTol = 1e-9;
constexpr int kMonotoneGrid = 201;
constexpr int kDenseGrid = 1000001;

// The right-hand sides below are written out independently of bounds.cpp so
// the oracles do not share an evaluation path with the closed forms.

double rhs_equal_full(double z, int n, double x) {
  const double w = std::pow(z, n + 1);
  const double c2 = 1.0 - x * x;
  return w * c2 + x * x + 2.0 * x * std::sqrt(std::max(0.0, (1.0 - w * w) * c2));
}

double rhs_equal_relaxed(double z, int n, double x) {
  return std::pow(z, n + 1) * (1.0 - x * x) + 2.0 * x + x * x;
}

double rhs_perfect_first(double z, int n, double x2) {
  const double w = std::pow(z, n + 1);
  return w * std::sqrt(std::max(0.0, 1.0 - x2 * x2)) + std::sqrt(std::max(0.0, 1.0 - w * w)) * x2;
}

double smallest_feasible(const std::function<double(double)>& rhs, double z) {
  if (!(z >= 0.0 && z <= 1.0)) throw DomainError("overlap z must lie in [0, 1]");
  if (z <= rhs(0.0)) return 0.0;

  std::vector<double> vals(kMonotoneGrid);
  int first = -1;
  for (int k = 0; k < kMonotoneGrid; ++k) {
    vals[k] = rhs(static_cast<double>(k) / (kMonotoneGrid - 1));
    if (vals[k] >= z) {
      first = k;
      break;
    }
  }
  if (first < 1) throw std::logic_error("no feasible error value in [0, 1]");

  bool monotone = true;
  for (int k = 0; k < first; ++k) monotone = monotone && vals[k + 1] >= vals[k] - 1e-15;

  if (monotone) {
    double lo = static_cast<double>(first - 1) / (kMonotoneGrid - 1);
    double hi = static_cast<double>(first) / (kMonotoneGrid - 1);
    while (hi - lo > 1e-13) {
      const double mid = 0.5 * (lo + hi);
      (rhs(mid) >= z ? hi : lo) = mid;
    }
    return hi;
  }
  for (int k = 1; k < kDenseGrid; ++k) {
    const double x = static_cast<double>(k) / (kDenseGrid - 1);
    if (rhs(x) >= z) return x;
  }
  throw std::logic_error("no feasible error value in [0, 1]");
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

class Recorder {
 public:
  explicit Recorder(SuiteReport& report) : report_(report) {}

  void set_context(double z, int n, std::size_t d_x, std::uint64_t seed) {
    z_ = z;
    n_ = n;
    d_x_ = d_x;
    seed_ = seed;
  }

  void record(const std::string& check, double residual, double tol) {
    if (std::isnan(residual)) residual = std::numeric_limits<double>::infinity();
    auto [it, inserted] = report_.max_residuals.try_emplace(check, residual);
    if (!inserted) it->second = std::max(it->second, residual);
    if (residual > tol) report_.violations.push_back({check, z_, n_, d_x_, seed_, residual});
  }

 private:
  SuiteReport& report_;
  double z_ = 0.0;
  int n_ = 1;
  std::size_t d_x_ = 1;
  std::uint64_t seed_ = 0;
};

double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

void check_pair(const OutputPair& pair, Mutation mutation, bool pinned, Recorder& rec) {
  const double z = pair.scenario.z;
  const int n = pair.scenario.n;
  const double scale = mutation == Mutation::scale_bound ? 1.5 : 1.0;

  rec.record("pair_overlap", std::abs(inner(pair.psi1, pair.psi2) - z), kIdentityTol);
  rec.record("pythagoras", check_pythagoras(pair), kIdentityTol);
  rec.record("orthogonality", check_orthogonality(pair), kIdentityTol);
  rec.record("unitarity_identity", check_unitarity_identity(pair), kIdentityTol);
  rec.record("gamma_prime_norm", check_gamma_prime(pair), kIdentityTol);
  const auto cross = check_cross_schwarz(pair);
  rec.record("cross_schwarz", -std::min(cross.phi2_gamma1, cross.phi1_gamma2), kIdentityTol);
  rec.record("machine_schwarz", -check_machine_schwarz(pair), kIdentityTol);

  const auto a = analyze_pair(pair);
  const double eta11 = clamp01(a.d1.eta), eta22 = clamp01(a.d2.eta);
  const double eta12 = std::min(std::abs(a.eta12), std::sqrt(eta11 * eta22));
  rec.record("region", -region_slack(z, eta11, eta22, eta12, n), kIdentityTol);

  const ErrorPair e = a.errors;
  double slack = feasibility_slack(z, n, e);
  if (mutation == Mutation::drop_cross_term) {
    const double w = std::pow(z, n + 1);
    const double c1 = std::sqrt(1.0 - e.x1 * e.x1), c2 = std::sqrt(1.0 - e.x2 * e.x2);
    slack -= std::sqrt(1.0 - w * w) * (e.x1 * c2 + e.x2 * c1);
  }
  rec.record("no_violation", -slack, kIdentityTol);
  rec.record("sum_dominance", scale * sum_min(z, n) - (e.x1 + e.x2), kIdentityTol);
  if (pinned) {
    rec.record("perfect_first_dominance", scale * x2_min_perfect(z, n) - e.x2, kIdentityTol);
  }
}

void check_oracles(double z, int n, Mutation mutation, Recorder& rec) {
  const double scale = mutation == Mutation::scale_bound ? 1.5 : 1.0;
  rec.record("oracle_equal_simplified",
             std::abs(scale * x_equal_min_simplified(z, n) - oracle_bisect_equal_error(z, n, false)),
             kOracleTol);
  rec.record("oracle_perfect_first",
             std::abs(scale * x2_min_perfect(z, n) - oracle_bisect_perfect_first(z, n)), kOracleTol);
  if (n == 1) {
    rec.record("oracle_equal_exact",
               std::abs(scale * x_equal_min_exact(z) - oracle_bisect_equal_error(z, 1, true)),
               kOracleTol);
  }
}

}  // namespace

double check_unitarity_identity(const OutputPair& pair) {
  const auto a = analyze_pair(pair);
  const double z = pair.scenario.z;
  const Complex rhs = std::pow(z, pair.scenario.n + 1) * a.eta12 + inner(a.d1.gamma, a.d2.phi) +
                      inner(a.d1.phi, a.d2.gamma) + inner(a.d1.phi, a.d2.phi);
  return std::abs(Complex(z) - rhs);
}

double check_pythagoras(const OutputPair& pair) {
  const auto a = analyze_pair(pair);
  return std::max(std::abs(a.d1.eta + a.d1.x * a.d1.x - 1.0),
                  std::abs(a.d2.eta + a.d2.x * a.d2.x - 1.0));
}

double check_orthogonality(const OutputPair& pair) {
  const auto a = analyze_pair(pair);
  return std::max(std::abs(inner(a.d1.gamma, a.d1.phi)), std::abs(inner(a.d2.gamma, a.d2.phi)));
}

double check_gamma_prime(const OutputPair& pair) {
  const auto in = canonical_inputs(pair.scenario);
  const auto a = analyze_pair(pair);
  const auto& sc = pair.scenario;
  const double g1 = gamma_prime(pair.psi1, in.s1, in.s2, sc).norm;
  const double g2 = gamma_prime(pair.psi2, in.s2, in.s1, sc).norm;
  return std::max(std::abs(g1 - gamma_prime_norm_closed_form(a.d1.eta, sc.z, sc.n)),
                  std::abs(g2 - gamma_prime_norm_closed_form(a.d2.eta, sc.z, sc.n)));
}

CrossSchwarzSlacks check_cross_schwarz(const OutputPair& pair) {
  const auto a = analyze_pair(pair);
  const auto& sc = pair.scenario;
  const double tail = 1.0 - std::pow(sc.z, 2.0 * (sc.n + 1));
  const double rhs1 = std::sqrt(std::max(0.0, 1.0 - a.d2.eta)) * std::sqrt(std::max(0.0, a.d1.eta * tail));
  const double rhs2 = std::sqrt(std::max(0.0, 1.0 - a.d1.eta)) * std::sqrt(std::max(0.0, a.d2.eta * tail));
  return {rhs1 - std::abs(inner(a.d2.phi, a.d1.gamma)), rhs2 - std::abs(inner(a.d1.phi, a.d2.gamma))};
}

double check_machine_schwarz(const OutputPair& pair) {
  const auto a = analyze_pair(pair);
  return std::sqrt(a.d1.eta * a.d2.eta) - std::abs(a.eta12);
}

double oracle_bisect_equal_error(double z, int n, bool use_exact_rhs) {
  if (n < 1) throw DomainError("copy count n must be >= 1");
  if (use_exact_rhs) return smallest_feasible([&](double x) { return rhs_equal_full(z, n, x); }, z);
  return smallest_feasible([&](double x) { return rhs_equal_relaxed(z, n, x); }, z);
}

double oracle_bisect_perfect_first(double z, int n) {
  if (n < 1) throw DomainError("copy count n must be >= 1");
  return smallest_feasible([&](double x) { return rhs_perfect_first(z, n, x); }, z);
}

std::uint64_t sample_seed(std::uint64_t seed, std::uint64_t cell, std::uint64_t sample) {
  return splitmix64(splitmix64(splitmix64(seed) ^ cell) ^ sample);
}

SuiteReport run_suite(const SuiteConfig& config) {
  if (config.z_grid.empty() || config.n_list.empty() || config.dx_list.empty()) {
    throw DomainError("suite grids must be nonempty");
  }
  if (config.samples_per_cell < 1) throw DomainError("samples_per_cell must be >= 1");

  SuiteReport report;
  Recorder rec(report);
  std::uint64_t cell = 0;
  for (const double z : config.z_grid) {
    for (const int n : config.n_list) {
      rec.set_context(z, n, 0, config.seed);
      check_oracles(z, n, config.mutation, rec);
      ++report.cases_run;
      for (const std::size_t d_x : config.dx_list) {
        const CopyScenario scenario{z, n, config.d_in, d_x};
        scenario.validate();
        for (int s = 0; s < config.samples_per_cell; ++s) {
          const auto us = static_cast<std::uint64_t>(s);
          const std::uint64_t random_seed = sample_seed(config.seed, cell, 2 * us);
          rec.set_context(z, n, d_x, random_seed);
          check_pair(sample_pair(scenario, random_seed), config.mutation, false, rec);

          const std::uint64_t pinned_seed = sample_seed(config.seed, cell, 2 * us + 1);
          rec.set_context(z, n, d_x, pinned_seed);
          check_pair(sample_pair_pinned(scenario, pinned_seed), config.mutation, true, rec);
          report.cases_run += 2;
        }
        ++cell;
      }
    }
  }
  report.passed = report.violations.empty();
  return report;
}

}  // namespace qclone::verify
