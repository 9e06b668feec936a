#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "qclone/errors.hpp"
#include "qclone/hilbert.hpp"

using namespace qclone;
using qclone::testing::random_unit;

namespace {

StateVector vec(std::initializer_list<Complex> a) { return StateVector(std::vector<Complex>(a)); }

CopyScenario scenario(double z, int n, std::size_t d_in, std::size_t d_x) { return {z, n, d_in, d_x}; }

bool same(const StateVector& a, const StateVector& b, double tol = 1e-15) {
  if (a.dim() != b.dim()) return false;
  for (std::size_t i = 0; i < a.dim(); ++i)
    if (std::abs(a[i] - b[i]) > tol) return false;
  return true;
}

}  // namespace

TEST_CASE("tensor of basis states is lexicographic") {
  CHECK(same(tensor(vec({1, 0}), vec({1, 0})), vec({1, 0, 0, 0})));
  CHECK(same(tensor(vec({1, 0}), vec({0, 1})), vec({0, 1, 0, 0})));
  CHECK(same(tensor(vec({0, 1}), vec({1, 0})), vec({0, 0, 1, 0})));
}

TEST_CASE("tensor norm is multiplicative and bilinear") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const auto u = qclone::testing::random_vector(2, rng);
    const auto v = qclone::testing::random_vector(3, rng);
    const auto u2 = qclone::testing::random_vector(2, rng);
    const auto t = tensor(u, v);
    CHECK(t.dim() == 6);
    CHECK(t.norm() == doctest::Approx(u.norm() * v.norm()).epsilon(1e-14));
    const Complex a(0.3, -1.2);
    CHECK(same(tensor(a * u + u2, v), a * tensor(u, v) + tensor(u2, v), 1e-13));
  }
}

TEST_CASE("inner product") {
  CHECK(inner(vec({1, 0}), vec({0, 1})) == Complex(0.0));
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const auto u = qclone::testing::random_vector(5, rng);
    const auto v = qclone::testing::random_vector(5, rng);
    CHECK(std::abs(inner(v, v) - v.norm_squared()) < 1e-13);
    CHECK(inner(v, v).imag() == 0.0);
    CHECK(std::abs(inner(u, v) - std::conj(inner(v, u))) < 1e-13);
    // Conjugate-linear in the first slot.
    const Complex a(0.5, 2.0);
    CHECK(std::abs(inner(a * u, v) - std::conj(a) * inner(u, v)) < 1e-12);
  }
  CHECK_THROWS_AS(inner(vec({1, 0}), vec({1, 0, 0})), DimensionError);
}

TEST_CASE("state vector construction and normalization") {
  CHECK_THROWS_AS(StateVector(std::vector<Complex>{}), DimensionError);
  CHECK_THROWS_AS(StateVector::basis(2, 2), DimensionError);
  CHECK_THROWS_AS(StateVector::zeros(3).normalized(), NormError);
  CHECK(vec({3, 4}).normalized().is_unit(1e-15));
  CHECK_FALSE(vec({1, 1}).is_unit());
}

TEST_CASE("scenario validation") {
  CHECK_NOTHROW(scenario(0.5, 1, 2, 2).validate());
  CHECK(CopyScenario{0.5, 2, 3, 2}.output_dim() == 54);
  CHECK_THROWS_AS(scenario(1.5, 1, 2, 2).validate(), DomainError);
  CHECK_THROWS_AS(scenario(-0.1, 1, 2, 2).validate(), DomainError);
  CHECK_THROWS_AS(scenario(0.5, 0, 2, 2).validate(), DomainError);
  CHECK_THROWS_AS(scenario(0.5, 1, 1, 2).validate(), DomainError);
  CHECK_THROWS_AS(scenario(0.5, 1, 2, 0).validate(), DomainError);
  CHECK_THROWS_AS(scenario(0.5, 40, 2, 2).validate(), DomainError);
}

TEST_CASE("decompose examples") {
  const CopyScenario sc{0.5, 1, 2, 2};
  const auto s = vec({1, 0});
  const auto s_perp = vec({0, 1});
  const auto e0 = StateVector::basis(2, 0);

  SUBCASE("ideal output is its own ideal part") {
    const auto d = decompose(tensor(tensor(s, s), e0), s, sc);
    CHECK(d.x == 0.0);
    CHECK(d.eta == 1.0);
    CHECK(same(d.q, e0));
  }
  SUBCASE("fully orthogonal output") {
    const auto d = decompose(tensor(tensor(s_perp, s_perp), e0), s, sc);
    CHECK(d.x == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(d.eta == 0.0);
  }
  SUBCASE("equal superposition") {
    const auto psi = Complex(1.0 / std::sqrt(2.0)) *
                     (tensor(tensor(s, s), e0) + tensor(tensor(s_perp, s_perp), e0));
    const auto d = decompose(psi, s, sc);
    CHECK(d.eta == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(d.x == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(decompose(StateVector::basis(4, 0), s, sc), DimensionError);
    CHECK_THROWS_AS(decompose(StateVector::basis(8, 0), vec({1, 0, 0}), sc), DimensionError);
    CHECK_THROWS_AS(decompose(Complex(1.01) * StateVector::basis(8, 0), s, sc), NormError);
    CHECK_THROWS_AS(decompose(StateVector::basis(8, 0), vec({0.5, 0}), sc), NormError);
  }
}

TEST_CASE("decompose matches the explicit projector") {
  std::mt19937_64 rng(2024);
  for (std::size_t d_in : {2u, 3u}) {
    for (int n : {1, 2}) {
      const CopyScenario sc{0.3, n, d_in, 2};
      const auto s = random_unit(d_in, rng);
      const auto psi = random_unit(sc.output_dim(), rng);
      const auto p = qclone::testing::ideal_projector(s.amplitudes(), n + 1, 2);
      const auto gamma = qclone::testing::apply(p, psi.amplitudes());
      const auto d = decompose(psi, s, sc);
      for (std::size_t i = 0; i < gamma.size(); ++i) CHECK(std::abs(gamma[i] - d.gamma[i]) < 1e-14);
    }
  }
}

TEST_CASE("gamma_prime examples") {
  const auto s1 = vec({1, 0});
  const auto e0 = StateVector::basis(2, 0), e1 = StateVector::basis(2, 1);
  const CopyScenario n1{0.6, 1, 2, 2};

  SUBCASE("orthogonal inputs keep the whole ideal part") {
    const CopyScenario sc{0.0, 1, 2, 2};
    std::mt19937_64 rng(3);
    const auto psi = random_unit(8, rng);
    const auto g = gamma_prime(psi, s1, vec({0, 1}), sc);
    CHECK(g.norm == doctest::Approx(std::sqrt(decompose(psi, s1, sc).eta)).epsilon(1e-14));
  }
  SUBCASE("identical inputs leave nothing") {
    const CopyScenario sc{1.0, 1, 2, 2};
    std::mt19937_64 rng(4);
    const auto psi = random_unit(8, rng);
    CHECK(gamma_prime(psi, s1, s1, sc).norm < 1e-15);
  }
  SUBCASE("z = 0.6, eta = 0.8") {
    const auto s2 = vec({0.6, 0.8});
    const auto s_perp = vec({0, 1});
    const auto psi = Complex(std::sqrt(0.8)) * tensor(tensor(s1, s1), e0) +
                     Complex(std::sqrt(0.2)) * tensor(tensor(s_perp, s_perp), e1);
    const auto g = gamma_prime(psi, s1, s2, n1);
    // Explicit (I - P2) P1 psi.
    const auto p1 = qclone::testing::ideal_projector(s1.amplitudes(), 2, 2);
    const auto p2 = qclone::testing::ideal_projector(s2.amplitudes(), 2, 2);
    auto gamma = qclone::testing::apply(p1, psi.amplitudes());
    const auto proj = qclone::testing::apply(p2, gamma);
    for (std::size_t i = 0; i < gamma.size(); ++i) gamma[i] -= proj[i];
    CHECK(g.norm == doctest::Approx(qclone::testing::vec_norm(gamma)).epsilon(1e-14));
    CHECK(g.norm == doctest::Approx(0.834457907866).epsilon(1e-11));
    CHECK(gamma_prime_norm_closed_form(0.8, 0.6, 1) == doctest::Approx(0.834457907866).epsilon(1e-11));
  }
}

TEST_CASE("decomposition invariants across dimensions, copies and overlaps") {
  std::mt19937_64 rng(99);
  for (std::size_t d_in : {2u, 3u, 4u}) {
    for (int n : {1, 2, 3}) {
      if (d_in == 4 && n == 3) continue;  // 512-dim dense projector is slow in debug builds
      for (double z : {0.0, 0.1, 0.35, 0.6, 0.9, 1.0}) {
        const CopyScenario sc{z, n, d_in, 2};
        const auto s_own = StateVector::basis(d_in, 0);
        const auto s_other = Complex(z) * s_own + Complex(std::sqrt(1 - z * z)) * StateVector::basis(d_in, 1);
        for (int trial = 0; trial < 5; ++trial) {
          const auto psi = random_unit(sc.output_dim(), rng);
          const auto d = decompose(psi, s_own, sc);
          CHECK(std::abs(d.eta + d.x * d.x - 1.0) <= kIdentityTol);
          CHECK(std::abs(inner(d.gamma, d.phi)) <= kIdentityTol);
          CHECK(std::abs(d.x - std::sqrt(std::max(0.0, 1.0 - d.eta))) <= 1e-8);
          // Projector idempotence: decomposing the normalized ideal part leaves no error.
          if (d.gamma.norm() > 1e-6) {
            CHECK(decompose(d.gamma.normalized(), s_own, sc).phi.norm() <= kIdentityTol);
          }
          const auto g = gamma_prime(psi, s_own, s_other, sc);
          CHECK(std::abs(g.norm - gamma_prime_norm_closed_form(d.eta, z, n)) <= kIdentityTol);
        }
      }
    }
  }
}
