#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string_view>

#include "qclone/bounds.hpp"
#include "qclone/hilbert.hpp"

namespace qclone {

struct InputPair {
  StateVector s1;
  StateVector s2;
};

// s1 = e0, s2 = z e0 + sqrt(1 - z^2) e1 in the input mode.
InputPair canonical_inputs(const CopyScenario& scenario);

/// Images of the two inputs under a copying transformation.
///
/// For two inputs, a unitary realizing the pair exists iff both outputs are
/// unit and <psi1|psi2> = <s1|s2><Q|Q> = z, so the pair is the whole machine.
struct OutputPair {
  StateVector psi1;
  StateVector psi2;
  CopyScenario scenario;

  // Throws on dimension, norm or overlap (beyond 1e-10) violations.
  void validate() const;
};

// Deterministic 64-bit engine for (seed, stream).
std::mt19937_64 make_rng(std::uint64_t seed, std::uint64_t stream = 0);

// Builds psi1 = raw1/||raw1||, psi2 = z psi1 + sqrt(1-z^2) w with w the
// normalized component of raw2 orthogonal to psi1. Throws NormError when raw2
// is numerically parallel to psi1 (only possible with z < 1).
OutputPair make_output_pair(const CopyScenario& scenario, const StateVector& raw1,
                            const StateVector& raw2);

// psi1 from i.i.d. standard complex Gaussians; psi2 from a second draw.
OutputPair sample_pair(const CopyScenario& scenario, std::uint64_t seed);

// psi1 pinned to the ideal output s1^{⊗(n+1)} ⊗ e0 (X1 = 0), psi2 random.
OutputPair sample_pair_pinned(const CopyScenario& scenario, std::uint64_t seed);

/// Everything the derivation chain needs from one machine.
struct PairAnalysis {
  Decomposition d1;
  Decomposition d2;
  Complex eta12;  // <Q1|Q2>
  ErrorPair errors;
};

PairAnalysis analyze_pair(const OutputPair& pair);
ErrorPair evaluate_machine(const OutputPair& pair);

struct Objective {
  enum class Kind { sum, max, weighted };
  Kind kind = Kind::sum;
  double w1 = 1.0;
  double w2 = 1.0;

  static Objective sum() { return {Kind::sum, 1.0, 1.0}; }
  static Objective max() { return {Kind::max, 1.0, 1.0}; }
  static Objective weighted(double w1, double w2) { return {Kind::weighted, w1, w2}; }

  void validate() const;
  double operator()(const ErrorPair& e) const;
};

std::string_view to_string(Objective::Kind kind) noexcept;
Objective::Kind parse_objective_kind(std::string_view name);

// Lower bound on the objective: sum_min for sum, the equal-error minimum for
// max (exact at n = 1, relaxed otherwise), weighted_sum_min for weighted.
double objective_bound(const Objective& objective, double z, int n);

struct OptimizeOptions {
  int starts = 16;
  int max_iters = 200000;  // objective evaluations per start
  double ftol = 1e-12;
  std::uint64_t seed = 0;
  bool parallel = true;
};

struct MachineResult {
  OutputPair pair;
  ErrorPair errors;
  double objective_value;
  double bound_value;
  double gap;
  int starts;
  bool converged;
  int best_start;
  long evaluations;
  double max_constraint_drift;  // max |<psi1|psi2> - z| over all evaluations
};

/// Multi-start simplex search over admissible output pairs. Start k draws
/// its initial pair from make_rng(seed, k); the best objective wins, ties
/// go to the lowest start index. Throws BoundViolation if the result beats
/// the matching lower bound by more than 1e-9.
MachineResult optimize_machine(const CopyScenario& scenario, const Objective& objective,
                               const OptimizeOptions& opts = {});

}  // namespace qclone
