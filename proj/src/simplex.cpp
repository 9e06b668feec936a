#include "qclone/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "qclone/errors.hpp"

namespace qclone::opt {

namespace {

struct Simplex {
  std::vector<std::vector<double>> pts;
  std::vector<double> vals;
};

class Minimizer {
 public:
  Minimizer(const std::function<double(std::span<const double>)>& f, const NelderMeadOptions& opts)
      : f_(f), opts_(opts) {}

  double eval(const std::vector<double>& x) {
    ++evals_;
    const double v = f_(x);
    return std::isnan(v) ? std::numeric_limits<double>::infinity() : v;
  }

  Simplex build(const std::vector<double>& center, double center_value) {
    const std::size_t d = center.size();
    Simplex s;
    s.pts.push_back(center);
    s.vals.push_back(center_value);
    for (std::size_t i = 0; i < d; ++i) {
      auto p = center;
      p[i] += opts_.initial_step;
      s.vals.push_back(eval(p));
      s.pts.push_back(std::move(p));
    }
    return s;
  }

  // Returns true when the value spread fell below ftol.
  bool run(Simplex& s) {
    const std::size_t d = s.pts.size() - 1;
    const double dd = static_cast<double>(d);
    const double alpha = 1.0;
    const double gamma = 1.0 + 2.0 / dd;
    const double rho = 0.75 - 1.0 / (2.0 * dd);
    const double sigma = 1.0 - 1.0 / dd;

    std::vector<std::size_t> order(d + 1);
    std::vector<double> centroid(d), trial(d), trial2(d);
    auto point = [&](double t, std::vector<double>& out) {
      const auto& worst = s.pts[order[d]];
      for (std::size_t k = 0; k < d; ++k) out[k] = centroid[k] + t * (centroid[k] - worst[k]);
    };

    while (evals_ < opts_.max_evals) {
      std::iota(order.begin(), order.end(), std::size_t{0});
      std::stable_sort(order.begin(), order.end(),
                       [&](std::size_t a, std::size_t b) { return s.vals[a] < s.vals[b]; });
      const double best = s.vals[order[0]];
      const double worst = s.vals[order[d]];
      if (worst - best <= opts_.ftol) return true;

      std::fill(centroid.begin(), centroid.end(), 0.0);
      for (std::size_t i = 0; i < d; ++i) {
        const auto& p = s.pts[order[i]];
        for (std::size_t k = 0; k < d; ++k) centroid[k] += p[k];
      }
      for (auto& c : centroid) c /= dd;

      const std::size_t w = order[d];
      const double second_worst = s.vals[order[d - 1]];
      point(alpha, trial);
      const double fr = eval(trial);
      if (fr < best) {
        point(alpha * gamma, trial2);
        const double fe = eval(trial2);
        if (fe < fr) {
          s.pts[w] = trial2;
          s.vals[w] = fe;
        } else {
          s.pts[w] = trial;
          s.vals[w] = fr;
        }
        continue;
      }
      if (fr < second_worst) {
        s.pts[w] = trial;
        s.vals[w] = fr;
        continue;
      }
      // Outside or inside contraction.
      const bool outside = fr < worst;
      point(outside ? alpha * rho : -rho, trial2);
      const double fc = eval(trial2);
      if (fc < (outside ? fr : worst)) {
        s.pts[w] = trial2;
        s.vals[w] = fc;
        continue;
      }
      const auto& bp = s.pts[order[0]];
      for (std::size_t i = 1; i <= d; ++i) {
        auto& p = s.pts[order[i]];
        for (std::size_t k = 0; k < d; ++k) p[k] = bp[k] + sigma * (p[k] - bp[k]);
        s.vals[order[i]] = eval(p);
      }
    }
    return false;
  }

  long evaluations() const { return evals_; }

 private:
  const std::function<double(std::span<const double>)>& f_;
  NelderMeadOptions opts_;
  long evals_ = 0;
};

}  // namespace

NelderMeadResult nelder_mead(const std::function<double(std::span<const double>)>& f,
                             std::vector<double> start, const NelderMeadOptions& opts) {
  if (start.size() < 2) throw DomainError("nelder_mead needs at least two parameters");
  if (!(opts.ftol >= 0.0) || !(opts.initial_step > 0.0) || opts.max_evals < 1) {
    throw DomainError("invalid Nelder-Mead options");
  }
  Minimizer m(f, opts);
  NelderMeadResult res;
  res.x = std::move(start);
  res.fx = m.eval(res.x);

  for (int round = 0;; ++round) {
    Simplex s = m.build(res.x, res.fx);
    const bool spread_ok = m.run(s);
    const auto it = std::min_element(s.vals.begin(), s.vals.end());
    const double improvement = res.fx - *it;
    res.x = s.pts[static_cast<std::size_t>(it - s.vals.begin())];
    res.fx = *it;
    res.restarts = round;
    if (!spread_ok) {
      res.converged = false;
      break;
    }
    // Converged when a fresh simplex no longer improves on the previous round.
    if (round > 0 && improvement <= opts.ftol) {
      res.converged = true;
      break;
    }
    if (round >= opts.max_restarts) {
      res.converged = improvement <= opts.ftol;
      break;
    }
  }
  res.evaluations = m.evaluations();
  return res;
}

}  // namespace qclone::opt
