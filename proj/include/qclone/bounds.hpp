#pragma once

#include <string_view>

namespace qclone {

/// Copying errors X_j = ||Phi_j|| for the two inputs.
struct ErrorPair {
  double x1 = 0.0;
  double x2 = 0.0;

  void validate() const;  // both in [0, 1]
};

enum class BoundKind { equal_error_exact, equal_error_simplified, perfect_first, sum };

// "equal-exact", "equal-simplified", "perfect-first", "sum".
std::string_view to_string(BoundKind kind) noexcept;
BoundKind parse_bound_kind(std::string_view name);

struct EqualErrorCoefficients {
  double r1;
  double r2;
  double r3;

  static EqualErrorCoefficients at(double z);
};

struct BoundSample {
  double z;
  int n;
  double value;
  BoundKind kind;
};

struct Peak {
  double z_star;
  double value;
};

/// Right-hand side of the unitarity inequality for n copies:
///   z^{n+1} c1 c2 + x1 x2 + sqrt(1 - z^{2(n+1)}) (x1 c2 + x2 c1),
/// with c_j = sqrt(1 - x_j^2). A pair is admissible iff z <= rhs.
double rhs_general(double z, int n, const ErrorPair& e);

// rhs_general - z; negative means no unitary copier realizes e.
double feasibility_slack(double z, int n, const ErrorPair& e);
bool feasible(double z, int n, const ErrorPair& e);

/// Constraint on the machine-state overlaps before the Schwarz step:
///   z <= z^{n+1}|eta12| + sqrt((1-eta11)(1-eta22))
///        + sqrt(1 - z^{2(n+1)}) [sqrt(eta11 (1-eta22)) + sqrt(eta22 (1-eta11))].
/// Throws SchwarzViolation when |eta12| > sqrt(eta11 eta22) + 1e-12.
double region_slack(double z, double eta11, double eta22, double eta12_abs, int n = 1);
bool region_feasible(double z, double eta11, double eta22, double eta12_abs, int n = 1);

// Smallest admissible X2 when the first input is copied perfectly:
// sin(asin z - asin z^{n+1}).
double x2_min_perfect(double z, int n);

// Equal-error minimum from the full two-copy constraint, via r1, r2, r3.
double x_equal_min_exact(double z);

// Equal-error minimum from the relaxed n-copy constraint. 0 at z = 1.
double x_equal_min_simplified(double z, int n);

// Minimum of X1 + X2 under the relaxed constraint: 2(sqrt(1 + z - z^{n+1}) - 1).
double sum_min(double z, int n);

// Maximizer (n+1)^{-1/n} of sum_min over z and its value.
Peak sum_min_peak(int n);

/// Minimum of w1 X1 + w2 X2 under the relaxed constraint
/// z <= z^{n+1} + X1 + X2 + X1 X2. Reduces to sum_min for w1 = w2 = 1.
double weighted_sum_min(double z, int n, double w1, double w2);

// Dispatch by kind. equal_error_exact is only defined for n = 1.
double evaluate_bound(BoundKind kind, double z, int n);

/// Global maximum over z in [0, 1]: coarse scan on max(grid_points, 1001)
/// points, then golden-section refinement of the best bracket down to tol.
Peak maximize_over_z(BoundKind kind, int n, double tol = 1e-10, int grid_points = 1001);

// First-order behaviour of x_equal_min_simplified at z = eps and z = 1 - eps.
double asymptotic_small(double eps, int n);
double asymptotic_near_one(double eps, int n);

}  // namespace qclone
