#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace qclone {

using Complex = std::complex<double>;

// Algebraic identities hold to this absolute tolerance.
inline constexpr double kIdentityTol = 1e-12;
// Inputs further than this from unit norm are rejected, never renormalized.
inline constexpr double kUnitTol = 1e-9;
// Quantities produced by iterative solvers.
inline constexpr double kSolverTol = 1e-9;

/// Dense complex vector in a finite-dimensional Hilbert space.
///
/// Amplitudes of product states are stored in lexicographic order with the
/// leftmost factor most significant, so a vector on modes a, b1..bn, x has
/// index ((i_a * d + i_b1) * d + ...) * d_x + i_x.
class StateVector {
 public:
  explicit StateVector(std::vector<Complex> amplitudes);

  static StateVector basis(std::size_t dim, std::size_t index);
  static StateVector zeros(std::size_t dim);

  std::size_t dim() const noexcept { return amps_.size(); }
  std::span<const Complex> amplitudes() const noexcept { return amps_; }
  Complex operator[](std::size_t i) const { return amps_[i]; }

  double norm_squared() const noexcept;
  double norm() const noexcept;
  bool is_unit(double tol = kUnitTol) const noexcept;
  // Throws NormError for a (numerically) zero vector.
  StateVector normalized() const;

  StateVector& operator+=(const StateVector& other);
  StateVector& operator-=(const StateVector& other);
  StateVector& operator*=(Complex factor) noexcept;

 private:
  std::vector<Complex> amps_;
};

StateVector operator+(StateVector lhs, const StateVector& rhs);
StateVector operator-(StateVector lhs, const StateVector& rhs);
StateVector operator*(Complex factor, StateVector v);

StateVector tensor(const StateVector& u, const StateVector& v);
// s ⊗ s ⊗ ... ⊗ s with `copies` factors.
StateVector tensor_power(const StateVector& s, int copies);

// <u|v>, conjugate-linear in u. Throws DimensionError on mismatch.
Complex inner(const StateVector& u, const StateVector& v);

/// Problem instance: copy two inputs with real overlap z into n+1 slots
/// (original plus n copies), carrying a machine mode of dimension d_x.
struct CopyScenario {
  double z = 0.0;
  int n = 1;
  std::size_t d_in = 2;
  std::size_t d_x = 2;

  // Throws DomainError when a field is out of range or the output space is
  // larger than kMaxOutputDim.
  void validate() const;

  int copy_slots() const noexcept { return n + 1; }
  std::size_t copies_dim() const;  // d_in^(n+1)
  std::size_t output_dim() const;  // d_in^(n+1) * d_x

  static constexpr std::size_t kMaxOutputDim = std::size_t{1} << 20;
};

/// Split of one output vector into its ideal part and the remainder.
struct Decomposition {
  StateVector gamma;  // P_s psi = s^{⊗(n+1)} ⊗ q
  StateVector phi;    // psi - gamma
  StateVector q;      // machine-mode component, unnormalized
  double eta;         // ||q||^2
  double x;           // ||phi||
};

// Requires psi unit with dim d_in^(n+1)*d_x and s unit with dim d_in.
Decomposition decompose(const StateVector& psi, const StateVector& s,
                        const CopyScenario& scenario);

struct GammaPrime {
  StateVector vector;  // (I - P_other) gamma
  double norm;
};

// Part of the ideal component of psi (w.r.t. s_own) orthogonal to the ideal
// subspace of s_other.
GammaPrime gamma_prime(const StateVector& psi, const StateVector& s_own,
                       const StateVector& s_other, const CopyScenario& scenario);

// sqrt(eta * (1 - |z|^(2(n+1)))).
double gamma_prime_norm_closed_form(double eta, double z, int n);

}  // namespace qclone
