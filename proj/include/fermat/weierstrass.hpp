#pragma once

#include <vector>

#include "fermat/lattice.hpp"

namespace fermat {

/// Value of the Weierstrass function and its derivative at one point.
struct WpValue {
  Complex p;
  Complex dp;
  bool at_pole = false;
};

/// Tuning constants for evaluation. Radii are multiples of |omega1|.
struct ContextOptions {
  int series_terms = 24;
  double series_radius_factor = 0.45;
  double pole_radius_factor = 1e-3;
};

/// The equianharmonic Weierstrass function with g2 = 0, g3 = 1, i.e.
/// (P')^2 = 4 P^3 - 1. Holds the period lattice, the two zeros of P in the
/// centered cell and the Laurent coefficients used for evaluation.
///
/// omega1 is real and equals twice the real half-period; omega2 = e^{i pi/3} omega1.
/// theta1 is the zero with P'(theta1) = -i, theta2 the zero with P'(theta2) = +i.
/// Immutable after construction.
class EquianharmonicContext {
 public:
  explicit EquianharmonicContext(const ContextOptions& options = {});

  const Lattice& lattice() const { return lattice_; }
  Complex omega1() const { return lattice_.omega1(); }
  Complex omega2() const { return lattice_.omega2(); }
  Complex theta1() const { return theta1_; }
  Complex theta2() const { return theta2_; }
  /// Real root of 4t^3 - 1, i.e. 4^{-1/3}.
  double e1() const { return e1_; }
  int series_terms() const { return static_cast<int>(series_.size()); }
  double series_radius() const { return series_radius_; }
  double pole_radius() const { return pole_radius_; }

  /// a_j in P(z) = z^-2 (1 + sum_j a_j z^{6j}).
  const std::vector<double>& series_coefficients() const { return series_; }

 private:
  Lattice lattice_;
  Complex theta1_;
  Complex theta2_;
  double e1_;
  double series_radius_;
  double pole_radius_;
  std::vector<double> series_;
};

EquianharmonicContext make_context(const ContextOptions& options = {});

/// Real half-period: integral of dt / sqrt(4t^3 - 1) from 4^{-1/3} to infinity.
double real_half_period();

/// Laurent coefficients c_k (k = 0..max_k) of P(z) - z^-2 = sum_{k>=2} c_k z^{2k-2}
/// for general invariants, via the standard recursion
///   c_2 = g2/20, c_3 = g3/28, c_k = 3/((2k+1)(k-3)) sum_{j=2}^{k-2} c_j c_{k-j}.
std::vector<double> laurent_coefficients(double g2, double g3, int max_k);

/// P and P'. Poles are reported in-band: at_pole is set when z lies within
/// pole_radius of the lattice (the values are still the series values there,
/// or infinite at an exact lattice point).
///
/// Evaluation reduces z to the centered cell. Points within series_radius are
/// summed from the Laurent series; farther points are halved, summed, and
/// doubled once with the duplication formula.
WpValue wp(Complex z, const EquianharmonicContext& ctx);

/// Direct Laurent-series evaluation without reduction (valid for |z| < |omega1|).
WpValue wp_series(Complex z, const EquianharmonicContext& ctx);

/// P(2w), P'(2w) from (x, y) = (P(w), P'(w)).
///
/// The duplication formula is the c -> w limit of the addition theorem:
///   P(2w) = (1/4) (P''(w)/P'(w))^2 - 2 P(w),
/// where P'' = 6 P^2 comes from differentiating (P')^2 = 4P^3 - 1. On the curve
/// y^2 = 4x^3 - 1 this is the tangent-line construction: with slope
/// lambda = 6x^2/y the third intersection is x3 = lambda^2/4 - 2x and
/// P'(2w) = -(y + lambda (x3 - x)).
WpValue wp_duplicate(const WpValue& half);

/// Addition theorem: P(w+c) = (1/4) [(P'(w)-P'(c))/(P(w)-P(c))]^2 - P(w) - P(c).
/// Throws DegenerateError when |P(w) - P(c)| < 1e-10, DomainError if w, c or
/// w+c is at a pole.
Complex wp_addition(Complex w, Complex c, const EquianharmonicContext& ctx);

/// Both sides of P(Az) = -A P(z) and P'(Az) = -P'(z) for A^3 = -1.
struct RotationCheck {
  Complex p_lhs;   // P(Az)
  Complex p_rhs;   // -A P(z)
  Complex dp_lhs;  // P'(Az)
  Complex dp_rhs;  // -P'(z)
};

/// Throws ParameterError unless A^3 = -1 to 1e-9.
RotationCheck rotation_identity(Complex z, Complex A, const EquianharmonicContext& ctx);

/// Closed forms for P(Aw + theta1) and P'(Aw + theta1):
///   P  = 2iA P(w) / (P'(w) + i),
///   P' = -i (P'(w) - 3i) / (P'(w) + i).
/// Throws DegenerateError when P'(w) is within 1e-10 of -i.
std::pair<Complex, Complex> translate_theta1(Complex w, Complex A, const EquianharmonicContext& ctx);

/// Same for theta2 (P'(theta2) = +i):
///   P  = -2iA P(w) / (P'(w) - i),
///   P' = i (P'(w) + 3i) / (P'(w) - i).
std::pair<Complex, Complex> translate_theta2(Complex w, Complex A, const EquianharmonicContext& ctx);

/// Locates the two zeros of P in the centered cell by a grid scan followed by
/// Newton iteration. Returns (theta1, theta2) sorted so that Im P'(theta1) < 0.
/// Only the lattice and series of ctx are used.
std::pair<Complex, Complex> find_zeros(const EquianharmonicContext& ctx);

/// Distance from w to the nearest zero of P (theta1 or theta2 modulo the lattice).
double distance_to_wp_zero(Complex w, const EquianharmonicContext& ctx);

/// True iff A^3 = -1 to within tol.
bool is_cube_root_of_minus_one(Complex A, double tol = 1e-9);

}  // namespace fermat
