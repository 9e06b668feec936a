#pragma once

#include <functional>
#include <span>
#include <vector>

namespace qclone::opt {

struct NelderMeadOptions {
  int max_evals = 200000;
  // Stop when max - min of the simplex values is at most ftol.
  double ftol = 1e-12;
  // Initial simplex edge length along each coordinate axis.
  double initial_step = 0.1;
  // Rebuild the simplex around the best vertex after convergence, at most
  // this many times, to escape collapsed simplices.
  int max_restarts = 8;
};

struct NelderMeadResult {
  std::vector<double> x;
  double fx = 0.0;
  long evaluations = 0;
  int restarts = 0;
  bool converged = false;
};

/// Derivative-free simplex minimizer with dimension-adaptive coefficients
/// (reflection 1, expansion 1 + 2/d, contraction 0.75 - 1/(2d),
/// shrink 1 - 1/d), which behave better than the classic ones for d > 10.
NelderMeadResult nelder_mead(const std::function<double(std::span<const double>)>& f,
                             std::vector<double> start, const NelderMeadOptions& opts = {});

}  // namespace qclone::opt
