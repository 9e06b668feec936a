#include "qclone/hilbert.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "qclone/errors.hpp"

namespace qclone {

namespace {

void require_same_dim(const StateVector& u, const StateVector& v, const char* what) {
  if (u.dim() != v.dim()) {
    throw DimensionError(std::string(what) + ": dimension mismatch (" +
                         std::to_string(u.dim()) + " vs " + std::to_string(v.dim()) + ")");
  }
}

void require_unit(const StateVector& v, const char* what) {
  if (!v.is_unit(kUnitTol)) {
    throw NormError(std::string(what) + " must be unit, norm is " + std::to_string(v.norm()));
  }
}

// (<s|^{⊗(n+1)} ⊗ I_x) psi
StateVector contract_copies(const StateVector& psi, const StateVector& copies, std::size_t d_x) {
  std::vector<Complex> q(d_x);
  for (std::size_t i = 0; i < copies.dim(); ++i) {
    const Complex c = std::conj(copies[i]);
    if (c == Complex{}) continue;
    for (std::size_t k = 0; k < d_x; ++k) q[k] += c * psi[i * d_x + k];
  }
  return StateVector(std::move(q));
}

void check_decompose_inputs(const StateVector& psi, const StateVector& s,
                            const CopyScenario& scenario) {
  scenario.validate();
  if (s.dim() != scenario.d_in) {
    throw DimensionError("input state has dim " + std::to_string(s.dim()) + ", scenario d_in is " +
                         std::to_string(scenario.d_in));
  }
  if (psi.dim() != scenario.output_dim()) {
    throw DimensionError("output vector has dim " + std::to_string(psi.dim()) +
                         ", scenario expects " + std::to_string(scenario.output_dim()));
  }
  require_unit(psi, "output vector");
  require_unit(s, "input state");
}

}  // namespace

StateVector::StateVector(std::vector<Complex> amplitudes) : amps_(std::move(amplitudes)) {
  if (amps_.empty()) throw DimensionError("state vector must have dim >= 1");
}

StateVector StateVector::basis(std::size_t dim, std::size_t index) {
  if (index >= dim) throw DimensionError("basis index out of range");
  std::vector<Complex> a(dim);
  a[index] = 1.0;
  return StateVector(std::move(a));
}

StateVector StateVector::zeros(std::size_t dim) { return StateVector(std::vector<Complex>(dim)); }

double StateVector::norm_squared() const noexcept {
  double acc = 0.0;
  for (const auto& a : amps_) acc += std::norm(a);
  return acc;
}

double StateVector::norm() const noexcept { return std::sqrt(norm_squared()); }

bool StateVector::is_unit(double tol) const noexcept { return std::abs(norm() - 1.0) <= tol; }

StateVector StateVector::normalized() const {
  const double nrm = norm();
  if (!(nrm > std::numeric_limits<double>::min())) {
    throw NormError("cannot normalize a zero vector");
  }
  StateVector out = *this;
  out *= Complex(1.0 / nrm);
  return out;
}

StateVector& StateVector::operator+=(const StateVector& other) {
  require_same_dim(*this, other, "operator+");
  for (std::size_t i = 0; i < amps_.size(); ++i) amps_[i] += other.amps_[i];
  return *this;
}

StateVector& StateVector::operator-=(const StateVector& other) {
  require_same_dim(*this, other, "operator-");
  for (std::size_t i = 0; i < amps_.size(); ++i) amps_[i] -= other.amps_[i];
  return *this;
}

StateVector& StateVector::operator*=(Complex factor) noexcept {
  for (auto& a : amps_) a *= factor;
  return *this;
}

StateVector operator+(StateVector lhs, const StateVector& rhs) { return lhs += rhs; }
StateVector operator-(StateVector lhs, const StateVector& rhs) { return lhs -= rhs; }
StateVector operator*(Complex factor, StateVector v) { return v *= factor; }

StateVector tensor(const StateVector& u, const StateVector& v) {
  std::vector<Complex> out;
  out.reserve(u.dim() * v.dim());
  for (const auto& a : u.amplitudes()) {
    for (const auto& b : v.amplitudes()) out.push_back(a * b);
  }
  return StateVector(std::move(out));
}

StateVector tensor_power(const StateVector& s, int copies) {
  if (copies < 1) throw DomainError("tensor_power needs at least one factor");
  StateVector out = s;
  for (int i = 1; i < copies; ++i) out = tensor(out, s);
  return out;
}

Complex inner(const StateVector& u, const StateVector& v) {
  require_same_dim(u, v, "inner");
  Complex acc{};
  for (std::size_t i = 0; i < u.dim(); ++i) acc += std::conj(u[i]) * v[i];
  return acc;
}

void CopyScenario::validate() const {
  if (!(z >= 0.0 && z <= 1.0)) throw DomainError("overlap z must lie in [0, 1]");
  if (n < 1) throw DomainError("copy count n must be >= 1");
  if (d_in < 2) throw DomainError("input dimension must be >= 2");
  if (d_x < 1) throw DomainError("machine dimension must be >= 1");
  std::size_t dim = d_x;
  for (int i = 0; i < copy_slots(); ++i) {
    if (dim > kMaxOutputDim / d_in) throw DomainError("output space too large");
    dim *= d_in;
  }
}

std::size_t CopyScenario::copies_dim() const {
  std::size_t dim = 1;
  for (int i = 0; i < copy_slots(); ++i) dim *= d_in;
  return dim;
}

std::size_t CopyScenario::output_dim() const { return copies_dim() * d_x; }

Decomposition decompose(const StateVector& psi, const StateVector& s,
                        const CopyScenario& scenario) {
  check_decompose_inputs(psi, s, scenario);
  const StateVector copies = tensor_power(s, scenario.copy_slots());
  StateVector q = contract_copies(psi, copies, scenario.d_x);
  StateVector gamma = tensor(copies, q);
  StateVector phi = psi - gamma;
  const double eta = q.norm_squared();
  const double x = phi.norm();
  return Decomposition{std::move(gamma), std::move(phi), std::move(q), eta, x};
}

GammaPrime gamma_prime(const StateVector& psi, const StateVector& s_own,
                       const StateVector& s_other, const CopyScenario& scenario) {
  check_decompose_inputs(psi, s_own, scenario);
  require_same_dim(s_own, s_other, "gamma_prime");
  require_unit(s_other, "other input state");
  const StateVector own = tensor_power(s_own, scenario.copy_slots());
  const StateVector other = tensor_power(s_other, scenario.copy_slots());
  const StateVector gamma = tensor(own, contract_copies(psi, own, scenario.d_x));
  StateVector rest = gamma - tensor(other, contract_copies(gamma, other, scenario.d_x));
  const double nrm = rest.norm();
  return GammaPrime{std::move(rest), nrm};
}

double gamma_prime_norm_closed_form(double eta, double z, int n) {
  if (n < 1) throw DomainError("copy count n must be >= 1");
  const double zp = std::pow(std::abs(z), 2.0 * (n + 1));
  return std::sqrt(std::max(0.0, eta * (1.0 - zp)));
}

}  // namespace qclone
