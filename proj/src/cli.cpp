#include "qclone/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <stdexcept>

#include <CLI11.hpp>

#include "qclone/errors.hpp"
#include "qclone/machine.hpp"
#include "qclone/output.hpp"
#include "qclone/plot.hpp"

namespace qclone::cli {

namespace {

// Flag combinations CLI11 cannot express; reported as usage errors.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

const std::vector<std::string> kKindNames = {"sum", "equal-exact", "equal-simplified",
                                             "perfect-first"};
const std::vector<std::string> kFormats = {"csv", "json"};

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open '" + path + "' for writing");
  file << text;
  if (!file) throw std::runtime_error("failed writing '" + path + "'");
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag,
                           const std::optional<std::string>& env) {
  if (flag) return *flag;
  if (env && !env->empty()) {
    try {
      std::size_t pos = 0;
      const unsigned long long v = std::stoull(*env, &pos);
      if (pos != env->size()) throw std::invalid_argument("trailing characters");
      return v;
    } catch (const std::exception&) {
      throw UsageError("QCLONE_SEED must be an unsigned integer, got '" + *env + "'");
    }
  }
  return 0;
}

std::vector<double> z_grid(int points) {
  std::vector<double> zs(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) zs[static_cast<std::size_t>(i)] = static_cast<double>(i) / (points - 1);
  return zs;
}

struct BoundsArgs {
  std::string kind;
  std::optional<double> z;
  std::optional<int> grid;
  std::vector<int> n{1};
  std::string format = "csv";
  std::string output;
};

struct FigureArgs {
  std::vector<int> n_list{1, 2, 3, 5, 10, 100};
  int points = 501;
  std::string format = "csv";
  std::string output;
  std::string plot;
};

struct MaximaArgs {
  std::string kind;
  int n = 1;
  double tol = 1e-10;
  std::string format = "csv";
  std::string output;
};

struct OptimizeArgs {
  double z = 0.0;
  int n = 1;
  std::size_t d_x = 2;
  std::size_t d_in = 2;
  std::string objective = "sum";
  double w1 = 1.0;
  double w2 = 1.0;
  int starts = 16;
  std::optional<std::uint64_t> seed;
  int max_iters = 200000;
  double ftol = 1e-12;
  std::string format = "csv";
  std::string output;
};

struct VerifyArgs {
  std::string profile = "quick";
  std::optional<std::uint64_t> seed;
  std::string format = "csv";
  std::string output;
};

int cmd_bounds(const BoundsArgs& a, std::ostream& out) {
  if (a.z.has_value() == a.grid.has_value()) throw UsageError("give exactly one of --z or --grid");
  const BoundKind kind = parse_bound_kind(a.kind);
  const std::vector<double> zs = a.z ? std::vector<double>{*a.z} : z_grid(*a.grid);
  std::vector<BoundSample> rows;
  for (const double z : zs) {
    for (const int n : a.n) rows.push_back({z, n, evaluate_bound(kind, z, n), kind});
  }
  io::sort_samples(rows);
  emit(a.format == "json" ? io::bounds_json(rows) : io::bounds_csv(rows), a.output, out);
  return kOk;
}

int cmd_figure1(const FigureArgs& a, std::ostream& out) {
  const auto rows = figure1_rows(a.n_list, a.points);
  emit(a.format == "json" ? io::figure_json(rows) : io::figure_csv(rows), a.output, out);
  if (!a.plot.empty()) {
    std::vector<plot::Curve> curves;
    for (const int n : a.n_list) {
      plot::Curve c{"n = " + std::to_string(n), {}};
      for (const auto& r : rows) {
        if (r.n == n) c.points.emplace_back(r.z, r.value);
      }
      curves.push_back(std::move(c));
    }
    emit(plot::render_svg(curves), a.plot, out);
  }
  return kOk;
}

int cmd_maxima(const MaximaArgs& a, std::ostream& out) {
  const BoundKind kind = parse_bound_kind(a.kind);
  std::vector<io::MaximaRecord> rows;
  if (kind == BoundKind::sum) {
    const Peak p = sum_min_peak(a.n);
    rows.push_back({kind, a.n, p.z_star, p.value, "closed-form"});
  }
  const Peak p = maximize_over_z(kind, a.n, a.tol);
  rows.push_back({kind, a.n, p.z_star, p.value, "grid+golden"});
  emit(a.format == "json" ? io::maxima_json(rows) : io::maxima_csv(rows), a.output, out);
  return kOk;
}

int cmd_optimize(const OptimizeArgs& a, const std::optional<std::string>& env_seed,
                 std::ostream& out) {
  const CopyScenario scenario{a.z, a.n, a.d_in, a.d_x};
  Objective objective{parse_objective_kind(a.objective), a.w1, a.w2};
  if (objective.kind != Objective::Kind::weighted) objective.w1 = objective.w2 = 1.0;
  OptimizeOptions opts;
  opts.starts = a.starts;
  opts.max_iters = a.max_iters;
  opts.ftol = a.ftol;
  opts.seed = resolve_seed(a.seed, env_seed);
  const MachineResult r = optimize_machine(scenario, objective, opts);
  emit(a.format == "json" ? io::machine_json(r, objective) : io::machine_csv(r, objective),
       a.output, out);
  return kOk;
}

int cmd_verify(const VerifyArgs& a, const std::optional<std::string>& env_seed, std::ostream& out,
               std::ostream& err) {
  const std::uint64_t seed = resolve_seed(a.seed, env_seed);
  const auto report = verify::run_suite(suite_profile(a.profile, seed));
  emit(a.format == "json" ? io::suite_json(report, a.profile, seed) : io::suite_csv(report),
       a.output, out);
  if (!report.passed) {
    err << "verification failed: " << report.violations.size() << " violation(s); first: "
        << report.violations.front().check << " at z=" << io::format_real(report.violations.front().z)
        << " n=" << report.violations.front().n << " seed=" << report.violations.front().seed
        << "\n";
    return kFailure;
  }
  return kOk;
}

}  // namespace

std::vector<BoundSample> figure1_rows(const std::vector<int>& n_list, int points) {
  if (points < 2) throw DomainError("figure needs at least 2 points");
  std::vector<BoundSample> rows;
  rows.reserve(static_cast<std::size_t>(points) * n_list.size());
  for (const double z : z_grid(points)) {
    for (const int n : n_list) {
      rows.push_back({z, n, x_equal_min_simplified(z, n), BoundKind::equal_error_simplified});
    }
  }
  io::sort_samples(rows);
  return rows;
}

verify::SuiteConfig suite_profile(const std::string& name, std::uint64_t seed) {
  verify::SuiteConfig c;
  c.z_grid = z_grid(11);
  c.n_list = {1, 2, 3};
  c.seed = seed;
  if (name == "quick") {
    c.dx_list = {2};
    c.samples_per_cell = 100;
  } else if (name == "full") {
    c.dx_list = {1, 2};
    c.samples_per_cell = 152;
  } else if (name == "mutant-scale") {
    c.samples_per_cell = 10;
    c.mutation = verify::Mutation::scale_bound;
  } else if (name == "mutant-drop-cross") {
    c.samples_per_cell = 10;
    c.mutation = verify::Mutation::drop_cross_term;
  } else {
    throw UsageError("unknown profile '" + name + "'");
  }
  return c;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        const std::optional<std::string>& env_seed) {
  CLI::App app{"Lower bounds on quantum copying noise: evaluation, maxima, machine search, "
               "verification"};
  app.require_subcommand(1);

  BoundsArgs ba;
  auto* bounds = app.add_subcommand("bounds", "Evaluate a lower bound at one z or on a grid");
  bounds->add_option("--kind", ba.kind, "Bound kind")->required()->check(CLI::IsMember(kKindNames));
  bounds->add_option("--z", ba.z, "Overlap |<s1|s2>|");
  bounds->add_option("--grid", ba.grid, "Evenly spaced z points in [0, 1]")
      ->check(CLI::Range(2, std::numeric_limits<int>::max()));
  bounds->add_option("--n", ba.n, "Number of copies (one or more values)")
      ->check(CLI::PositiveNumber);
  bounds->add_option("--format", ba.format)->check(CLI::IsMember(kFormats));
  bounds->add_option("--output,-o", ba.output, "Write to file instead of stdout");

  FigureArgs fa;
  auto* figure = app.add_subcommand("figure1", "Equal-error bound curves for several n");
  figure->add_option("--n-list", fa.n_list, "Copy counts")->check(CLI::PositiveNumber);
  figure->add_option("--points", fa.points, "Grid points per curve")
      ->check(CLI::Range(2, 10000000));
  figure->add_option("--format", fa.format)->check(CLI::IsMember(kFormats));
  figure->add_option("--output,-o", fa.output, "Write table to file instead of stdout");
  figure->add_option("--plot", fa.plot, "Also write an SVG plot to this path");

  MaximaArgs ma;
  auto* maxima = app.add_subcommand("maxima", "Maximum of a bound over z");
  maxima->add_option("--kind", ma.kind)->required()->check(CLI::IsMember(kKindNames));
  maxima->add_option("--n", ma.n)->check(CLI::PositiveNumber);
  maxima->add_option("--tol", ma.tol, "Golden-section tolerance in z")->check(CLI::PositiveNumber);
  maxima->add_option("--format", ma.format)->check(CLI::IsMember(kFormats));
  maxima->add_option("--output,-o", ma.output);

  OptimizeArgs oa;
  auto* optimize = app.add_subcommand("optimize", "Search copying machines closest to the bound");
  optimize->add_option("--z", oa.z)->required()->check(CLI::Range(0.0, 1.0));
  optimize->add_option("--n", oa.n)->check(CLI::PositiveNumber);
  optimize->add_option("--dx", oa.d_x, "Machine-mode dimension")->check(CLI::Range(1, 64));
  optimize->add_option("--din", oa.d_in, "Input-mode dimension")->check(CLI::Range(2, 16));
  optimize->add_option("--objective", oa.objective)
      ->check(CLI::IsMember({"sum", "max", "weighted"}));
  optimize->add_option("--w1", oa.w1)->check(CLI::NonNegativeNumber);
  optimize->add_option("--w2", oa.w2)->check(CLI::NonNegativeNumber);
  optimize->add_option("--starts", oa.starts)->check(CLI::PositiveNumber);
  optimize->add_option("--seed", oa.seed);
  optimize->add_option("--max-iters", oa.max_iters, "Objective evaluations per start")
      ->check(CLI::PositiveNumber);
  optimize->add_option("--ftol", oa.ftol)->check(CLI::NonNegativeNumber);
  optimize->add_option("--format", oa.format)->check(CLI::IsMember(kFormats));
  optimize->add_option("--output,-o", oa.output);

  VerifyArgs va;
  auto* verify_cmd = app.add_subcommand("verify", "Run the property-verification suite");
  verify_cmd->add_option("--profile", va.profile)
      ->check(CLI::IsMember({"quick", "full", "mutant-scale", "mutant-drop-cross"}));
  verify_cmd->add_option("--seed", va.seed);
  verify_cmd->add_option("--format", va.format)->check(CLI::IsMember(kFormats));
  verify_cmd->add_option("--output,-o", va.output);

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (bounds->parsed()) return cmd_bounds(ba, out);
    if (figure->parsed()) return cmd_figure1(fa, out);
    if (maxima->parsed()) return cmd_maxima(ma, out);
    if (optimize->parsed()) return cmd_optimize(oa, env_seed, out);
    if (verify_cmd->parsed()) return cmd_verify(va, env_seed, out, err);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kFailure;
  }
  return kUsage;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::optional<std::string> env;
  if (const char* v = std::getenv("QCLONE_SEED")) env = v;
  return run(args, out, err, env);
}

}  // namespace qclone::cli
