#include <doctest.h>

#include <cmath>

#include "qclone/bounds.hpp"
#include "qclone/cli.hpp"
#include "qclone/machine.hpp"
#include "qclone/verify.hpp"

using namespace qclone;

TEST_CASE("per-pair checks on an ideal machine") {
  const CopyScenario sc{0.0, 1, 2, 1};
  const auto in = canonical_inputs(sc);
  const OutputPair pair{tensor(in.s1, in.s1), tensor(in.s2, in.s2), sc};
  CHECK(verify::check_unitarity_identity(pair) < 1e-15);
  CHECK(verify::check_pythagoras(pair) < 1e-15);
  CHECK(verify::check_orthogonality(pair) < 1e-15);
  CHECK(verify::check_gamma_prime(pair) < 1e-15);
  const auto cross = verify::check_cross_schwarz(pair);
  CHECK(cross.phi2_gamma1 >= 0.0);
  CHECK(cross.phi1_gamma2 >= 0.0);
  CHECK(verify::check_machine_schwarz(pair) >= 0.0);
}

TEST_CASE("per-pair checks on random machines") {
  for (int n : {1, 2, 3}) {
    for (double z : {0.0, 0.3, 0.8, 1.0}) {
      const CopyScenario sc{z, n, 2, 2};
      for (std::uint64_t s = 0; s < 30; ++s) {
        const auto pair = (s % 2) ? sample_pair_pinned(sc, s) : sample_pair(sc, s);
        CHECK(verify::check_unitarity_identity(pair) <= 1e-12);
        CHECK(verify::check_pythagoras(pair) <= 1e-12);
        CHECK(verify::check_orthogonality(pair) <= 1e-12);
        CHECK(verify::check_gamma_prime(pair) <= 1e-12);
        CHECK(verify::check_cross_schwarz(pair).phi2_gamma1 >= -1e-12);
        CHECK(verify::check_cross_schwarz(pair).phi1_gamma2 >= -1e-12);
        CHECK(verify::check_machine_schwarz(pair) >= -1e-12);
        const auto a = analyze_pair(pair);
        CHECK(region_feasible(z, a.d1.eta, a.d2.eta, std::min(std::abs(a.eta12), std::sqrt(a.d1.eta * a.d2.eta)), n));
      }
    }
  }
}

TEST_CASE("oracle examples") {
  CHECK(verify::oracle_bisect_perfect_first(1.0 / std::sqrt(3.0), 1) ==
        doctest::Approx(std::sqrt(2.0 / 27.0)).epsilon(1e-10));
  CHECK(verify::oracle_bisect_equal_error(0.0, 2, false) == 0.0);
  CHECK(verify::oracle_bisect_equal_error(1.0, 2, false) <= 1e-12);
}

TEST_CASE("sample seeds are distinct and stable") {
  CHECK(verify::sample_seed(1, 2, 3) == verify::sample_seed(1, 2, 3));
  CHECK(verify::sample_seed(1, 2, 3) != verify::sample_seed(1, 2, 4));
  CHECK(verify::sample_seed(1, 2, 3) != verify::sample_seed(1, 3, 3));
  CHECK(verify::sample_seed(1, 2, 3) != verify::sample_seed(2, 2, 3));
}

TEST_CASE("quick suite passes with tiny residuals") {
  const auto report = verify::run_suite(cli::suite_profile("quick", 42));
  CHECK(report.passed);
  CHECK(report.violations.empty());
  CHECK(report.cases_run > 0);
  for (const auto& [name, r] : report.max_residuals) {
    INFO(name);
    CHECK(r <= 1e-9);
  }
  CHECK(report.max_residuals.count("region") == 1);
  CHECK(report.max_residuals.count("no_violation") == 1);
}

TEST_CASE("seeded faults make the suite fail") {
  const auto drop = verify::run_suite(cli::suite_profile("mutant-drop-cross", 0));
  CHECK_FALSE(drop.passed);
  bool named = false;
  for (const auto& v : drop.violations) named |= v.check == "no_violation";
  CHECK(named);

  const auto scale = verify::run_suite(cli::suite_profile("mutant-scale", 0));
  CHECK_FALSE(scale.passed);
  CHECK_FALSE(scale.violations.empty());
}

TEST_CASE("suite violations carry a replayable seed") {
  const auto drop = verify::run_suite(cli::suite_profile("mutant-drop-cross", 0));
  REQUIRE_FALSE(drop.violations.empty());
  for (const auto& v : drop.violations) {
    if (v.check != "no_violation") continue;
    const CopyScenario sc{v.z, v.n, 2, v.d_x};
    // Either the random or the pinned sampler produced it.
    const auto a = evaluate_machine(sample_pair(sc, v.seed));
    const auto b = evaluate_machine(sample_pair_pinned(sc, v.seed));
    CHECK((feasible(v.z, v.n, a) || feasible(v.z, v.n, b)));
    break;
  }
}
