#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "qclone/machine.hpp"

namespace qclone::verify {

// |z - (z^{n+1} eta12 + <G1|F2> + <F1|G2> + <F1|F2>)|
double check_unitarity_identity(const OutputPair& pair);

// max_j |eta_jj + x_j^2 - 1|
double check_pythagoras(const OutputPair& pair);

// max_j |<Gamma_j|Phi_j>|
double check_orthogonality(const OutputPair& pair);

// max_j | ||Gamma'_j|| - sqrt(eta_jj (1 - z^{2(n+1)})) |
double check_gamma_prime(const OutputPair& pair);

/// Slacks of |<Phi2|Gamma1>| <= (1-eta22)^{1/2} [eta11 (1 - z^{2(n+1)})]^{1/2}
/// and the partner with 1 and 2 exchanged. Nonnegative when they hold.
struct CrossSchwarzSlacks {
  double phi2_gamma1;
  double phi1_gamma2;
};
CrossSchwarzSlacks check_cross_schwarz(const OutputPair& pair);

// sqrt(eta11 eta22) - |eta12|
double check_machine_schwarz(const OutputPair& pair);

/// Smallest X in [0, 1] with z <= RHS(X), for X1 = X2 = X. use_exact_rhs
/// selects the full unitarity inequality (the two-copy equal-error form
/// when n = 1); otherwise the relaxed one with X1 + X2 + X1 X2.
/// RHS is monotone only up to the crossing, so monotonicity is checked on a
/// 201-point grid up to the first feasible node before bisecting; failing
/// that, a dense scan is used.
double oracle_bisect_equal_error(double z, int n, bool use_exact_rhs);

// Smallest X2 with z <= RHS(X1 = 0, X2), same strategy.
double oracle_bisect_perfect_first(double z, int n);

// Seeded faults used to prove the suite can fail.
enum class Mutation { none, scale_bound, drop_cross_term };

struct SuiteConfig {
  std::vector<double> z_grid;
  std::vector<int> n_list;
  std::vector<std::size_t> dx_list{2};
  std::size_t d_in = 2;
  int samples_per_cell = 100;  // random pairs; as many pinned pairs again
  std::uint64_t seed = 0;
  Mutation mutation = Mutation::none;
};

struct Violation {
  std::string check;
  double z;
  int n;
  std::size_t d_x;
  std::uint64_t seed;  // replay with sample_pair / sample_pair_pinned
  double residual;
};

/// Residuals are violation amounts: |identity error| for identities and
/// -slack for inequalities, so a check passes while residual <= tolerance.
struct SuiteReport {
  long cases_run = 0;
  std::vector<Violation> violations;
  std::map<std::string, double> max_residuals;
  bool passed = true;
};

SuiteReport run_suite(const SuiteConfig& config);

// Per-sample seed used by run_suite for (base seed, cell, sample).
std::uint64_t sample_seed(std::uint64_t seed, std::uint64_t cell, std::uint64_t sample);

}  // namespace qclone::verify
