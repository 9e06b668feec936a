#include "qclone/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qclone/errors.hpp"

namespace qclone {

namespace {

constexpr double kClampTol = 1e-12;

void require_z(double z) {
  if (!(z >= 0.0 && z <= 1.0)) throw DomainError("overlap z must lie in [0, 1], got " + std::to_string(z));
}

void require_n(int n) {
  if (n < 1) throw DomainError("copy count n must be >= 1, got " + std::to_string(n));
}

void require_unit_interval(double v, const char* what) {
  if (!(v >= 0.0 && v <= 1.0)) throw DomainError(std::string(what) + " must lie in [0, 1]");
}

// Roundoff below zero is clamped; anything larger is a misuse of a formula.
double clamped_sqrt(double radicand) {
  if (radicand >= 0.0) return std::sqrt(radicand);
  if (radicand >= -kClampTol) return 0.0;
  throw DomainError("negative radicand " + std::to_string(radicand));
}

double comp(double x) { return clamped_sqrt(1.0 - x * x); }

}  // namespace

void ErrorPair::validate() const {
  require_unit_interval(x1, "error x1");
  require_unit_interval(x2, "error x2");
}

std::string_view to_string(BoundKind kind) noexcept {
  switch (kind) {
    case BoundKind::equal_error_exact: return "equal-exact";
    case BoundKind::equal_error_simplified: return "equal-simplified";
    case BoundKind::perfect_first: return "perfect-first";
    case BoundKind::sum: return "sum";
  }
  return "unknown";
}

BoundKind parse_bound_kind(std::string_view name) {
  for (auto kind : {BoundKind::equal_error_exact, BoundKind::equal_error_simplified,
                    BoundKind::perfect_first, BoundKind::sum}) {
    if (to_string(kind) == name) return kind;
  }
  throw DomainError("unknown bound kind '" + std::string(name) + "'");
}

EqualErrorCoefficients EqualErrorCoefficients::at(double z) {
  require_z(z);
  const double z2 = z * z, z3 = z2 * z, z4 = z3 * z, z5 = z4 * z, z6 = z5 * z;
  return {2.0 + 3.0 * z + 2.0 * z2 + z3,
          1.0 + 3.0 * z + 3.0 * z2 + 4.0 * z3 + 3.0 * z4 + z5 + z6,
          5.0 + 5.0 * z + 3.0 * z2 + 3.0 * z3};
}

double rhs_general(double z, int n, const ErrorPair& e) {
  require_z(z);
  require_n(n);
  e.validate();
  const double w = std::pow(z, n + 1);
  const double c1 = comp(e.x1), c2 = comp(e.x2);
  return w * c1 * c2 + e.x1 * e.x2 + clamped_sqrt(1.0 - w * w) * (e.x1 * c2 + e.x2 * c1);
}

double feasibility_slack(double z, int n, const ErrorPair& e) { return rhs_general(z, n, e) - z; }

bool feasible(double z, int n, const ErrorPair& e) { return feasibility_slack(z, n, e) >= -1e-12; }

double region_slack(double z, double eta11, double eta22, double eta12_abs, int n) {
  require_z(z);
  require_n(n);
  require_unit_interval(eta11, "eta11");
  require_unit_interval(eta22, "eta22");
  require_unit_interval(eta12_abs, "|eta12|");
  if (eta12_abs > std::sqrt(eta11 * eta22) + 1e-12) {
    throw SchwarzViolation("|eta12| exceeds sqrt(eta11 * eta22)");
  }
  const double w = std::pow(z, n + 1);
  const double rhs = w * eta12_abs + std::sqrt((1.0 - eta11) * (1.0 - eta22)) +
                     clamped_sqrt(1.0 - w * w) * (std::sqrt(eta11 * (1.0 - eta22)) +
                                                  std::sqrt(eta22 * (1.0 - eta11)));
  return rhs - z;
}

bool region_feasible(double z, double eta11, double eta22, double eta12_abs, int n) {
  return region_slack(z, eta11, eta22, eta12_abs, n) >= -1e-12;
}

double x2_min_perfect(double z, int n) {
  require_z(z);
  require_n(n);
  return std::max(0.0, std::sin(std::asin(z) - std::asin(std::pow(z, n + 1))));
}

double x_equal_min_exact(double z) {
  const auto r = EqualErrorCoefficients::at(z);
  return clamped_sqrt((r.r1 - 2.0 * std::sqrt(r.r2)) / r.r3);
}

double x_equal_min_simplified(double z, int n) {
  require_z(z);
  require_n(n);
  if (z == 1.0) return 0.0;
  const double w = std::pow(z, n + 1);
  // [sqrt(1 + (1-w)(z-w)) - 1] / (1-w), rationalized.
  return (z - w) / (std::sqrt(1.0 + (1.0 - w) * (z - w)) + 1.0);
}

double sum_min(double z, int n) {
  require_z(z);
  require_n(n);
  return 2.0 * (std::sqrt(1.0 + z - std::pow(z, n + 1)) - 1.0);
}

Peak sum_min_peak(int n) {
  require_n(n);
  const double nd = static_cast<double>(n);
  const double z_star = std::pow(nd + 1.0, -1.0 / nd);
  const double value = 2.0 * (std::sqrt(1.0 + z_star * (nd / (nd + 1.0))) - 1.0);
  return {z_star, value};
}

double weighted_sum_min(double z, int n, double w1, double w2) {
  require_z(z);
  require_n(n);
  if (!(w1 >= 0.0 && w2 >= 0.0) || !(w1 + w2 > 0.0)) {
    throw DomainError("weights must be nonnegative with positive sum");
  }
  // X2 >= (d - X1)/(1 + X1) for X1 <= d; the weighted sum is convex in X1.
  const double d = z - std::pow(z, n + 1);
  if (w1 == 0.0 || w2 == 0.0) return 0.0;
  const double x1 = std::clamp(std::sqrt(w2 * (1.0 + d) / w1) - 1.0, 0.0, d);
  return w1 * x1 + w2 * ((1.0 + d) / (1.0 + x1) - 1.0);
}

double evaluate_bound(BoundKind kind, double z, int n) {
  switch (kind) {
    case BoundKind::equal_error_exact:
      if (n != 1) throw DomainError("equal-exact bound is only defined for n = 1");
      return x_equal_min_exact(z);
    case BoundKind::equal_error_simplified: return x_equal_min_simplified(z, n);
    case BoundKind::perfect_first: return x2_min_perfect(z, n);
    case BoundKind::sum: return sum_min(z, n);
  }
  throw DomainError("unknown bound kind");
}

Peak maximize_over_z(BoundKind kind, int n, double tol, int grid_points) {
  if (!(tol > 0.0)) throw DomainError("tolerance must be positive");
  const int points = std::max(grid_points, 1001);
  auto f = [&](double z) { return evaluate_bound(kind, z, n); };

  int best = 0;
  double best_value = f(0.0);
  for (int i = 1; i < points; ++i) {
    const double v = f(static_cast<double>(i) / (points - 1));
    if (v > best_value) {
      best = i;
      best_value = v;
    }
  }
  double lo = static_cast<double>(std::max(best - 1, 0)) / (points - 1);
  double hi = static_cast<double>(std::min(best + 1, points - 1)) / (points - 1);

  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = hi - inv_phi * (hi - lo);
  double b = lo + inv_phi * (hi - lo);
  double fa = f(a), fb = f(b);
  while (hi - lo > tol) {
    if (fa >= fb) {
      hi = b;
      b = a;
      fb = fa;
      a = hi - inv_phi * (hi - lo);
      fa = f(a);
    } else {
      lo = a;
      a = b;
      fa = fb;
      b = lo + inv_phi * (hi - lo);
      fb = f(b);
    }
  }
  const double z = 0.5 * (lo + hi);
  const double v = f(z);
  if (v >= best_value) return {z, v};
  return {static_cast<double>(best) / (points - 1), best_value};
}

double asymptotic_small(double eps, int n) {
  require_n(n);
  return eps / 2.0;
}

double asymptotic_near_one(double eps, int n) {
  require_n(n);
  return n * eps / 2.0;
}

}  // namespace qclone
