#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fermat/expr.hpp"
#include "fermat/mero_fn.hpp"
#include "fermat/weierstrass.hpp"

namespace fermat {

enum class Family {
  CubicPair,      // f^3 + g^3 = 1
  Pair23,         // f^2 + g^3 = 1
  Pair24,         // f^2 + g^4 = 1
  Shift3,         // f^3(z) + f^3(L z) = 1
  ShiftExpRHS,    // f^3(z) + f^3(z + c) = e^{alpha z + beta}, elliptic branch
  ExpFamily,      // f^n(z) + f^m(L z) = e^{g(z)}, f = A e^{g/n}
  ScalarExp,      // f^n(z) + f^n(z + c) = e^{alpha z + beta}, f = d e^{(alpha z + beta)/n}
  Example1,       // ShiftExpRHS with h = e^z, c = pi i
  Example2Inner,  // Shift3 with h = e^{az} g(z) + b, g periodic
  Example3,       // ExpFamily with g = e^{alpha z + beta} + a, n != m
  Example4,       // ExpFamily with g = periodic + a z, n = m
};

enum class ThetaCase { Theta1, Theta2, None };

std::string family_name(Family f);
std::optional<Family> family_from_name(const std::string& name);

/// Construction knobs.
///
/// pole_margin is a distance in the inner variable w = h(z): solution values are
/// flagged at_pole when w is closer than this to a singular point of the outer
/// elliptic expression (for sn, when |sn(w)| > 1/pole_margin). With validate
/// off, side conditions and functional relations are measured but not enforced.
struct SolutionOptions {
  bool validate = true;
  double pole_margin = 0.05;
  int certificate_samples = 50;
  double certificate_radius = 2.0;
  std::uint64_t certificate_seed = 20240501;
};

struct SideCondition {
  std::string name;
  double residual;
};

/// Evidence attached to a shift solution: which of the three relations
///   (1) h(L z) = A h(z) + theta1 + tau,
///   (2) h(L z) = A h(z) + theta2 + tau,
///   (3) h(L z) = A h(z) + tau,     tau in the lattice,
/// the pair (h, L) satisfies. condition is 0 when unclassified (validation off).
struct ShiftCertificate {
  int condition = 0;
  Complex delta;         // h(L z) - A h(z), measured
  double delta_spread;   // max deviation of the sampled deltas
  Complex tau;
  long long tau_mu = 0;
  long long tau_nu = 0;
};

/// Evidence for g(L z) = (n/m) g(z) + n Ln(B/A).
struct RelationCertificate {
  double max_residual;
  Complex log_ratio;  // Ln(B/A) on the chosen branch
  double q_modulus;
};

struct Certificate {
  std::vector<SideCondition> side_conditions;
  std::optional<ShiftCertificate> shift;
  std::optional<RelationCertificate> relation;
  bool passed = true;
};

/// A constructed solution of f^n(z) + g^m(L z) = rhs(z). For single-function
/// families g is the same object as f.
struct Solution {
  Family family;
  MeroFn f;
  MeroFn g;
  int n;
  int m;
  AffineMap L;
  Expr rhs;
  Certificate certificate;
  std::vector<std::pair<std::string, Complex>> parameters;
};

/// Tagged description of one solution family and its parameters. Unused
/// fields are ignored by the family that does not need them.
struct SolutionSpec {
  Family family = Family::CubicPair;
  int n = 3;
  int m = 3;
  AffineMap L;
  std::optional<Expr> h;
  std::optional<Expr> g_or_P;
  Complex A{-1.0, 0.0};
  Complex B{1.0, 0.0};
  Complex eta{1.0, 0.0};
  std::optional<Complex> d;
  Complex alpha{0.0, 0.0};
  Complex beta{0.0, 0.0};
  Complex a{0.0, 0.0};
  Complex b{0.0, 0.0};
  Complex tau{0.0, 0.0};
  ThetaCase theta_case = ThetaCase::None;
  int branch = 0;
};

Solution build_solution(const SolutionSpec& spec, const EquianharmonicContext& ctx,
                        const SolutionOptions& options = {});

/// f = (1/2)(1 + P'(h)/sqrt3)/P(h), g = (eta/2)(1 - P'(h)/sqrt3)/P(h); f^3 + g^3 = 1.
Solution cubic_pair(const Expr& h, Complex eta, const EquianharmonicContext& ctx, const SolutionOptions& options = {});

/// f = i P'(h), g = eta cbrt(4) P(h); f^2 + g^3 = 1.
Solution pair_2_3(const Expr& h, Complex eta, const EquianharmonicContext& ctx, const SolutionOptions& options = {});

/// f = sn'(h), g = sn(h); f^2 + g^4 = 1.
Solution pair_2_4(const Expr& h, const SolutionOptions& options = {});

/// f = (1/2)(1 + P'(h)/sqrt3)/P(h) solving f^3(z) + f^3(L z) = 1. Requires
/// A^3 = -1 with A mapping the lattice onto itself, and h(L z) - A h(z) equal
/// to one of theta1 + tau, theta2 + tau, tau. Throws NotASolutionError when
/// the difference is not constant, ClassificationError when it matches no case.
Solution shift_solution(const Expr& h, const AffineMap& L, Complex A, const EquianharmonicContext& ctx,
                        const SolutionOptions& options = {});

/// f(L z) in closed form in terms of w = h(z), bypassing the composition:
///   case (1): (-eta/A) (1/2)(1 - P'(w)/sqrt3)/P(w), eta = (-1 - sqrt3 i)/2
///   case (2): ((1 - sqrt3 i)/(2A)) (1/2)(1 - P'(w)/sqrt3)/P(w)
///   case (3): (-1/A) (1/2)(1 - P'(w)/sqrt3)/P(w)
MeroFn companion_under_shift(const Expr& h, const AffineMap& L, Complex A, const EquianharmonicContext& ctx,
                             const SolutionOptions& options = {});

/// e^{(alpha z + beta)/3} times the shift solution; needs L = z + c with e^{alpha c} = 1.
Solution shift_exp_rhs(const Expr& h, const AffineMap& L, Complex A, Complex alpha, Complex beta,
                       const EquianharmonicContext& ctx, const SolutionOptions& options = {});

/// f = d e^{(alpha z + beta)/n} with d^n = 1/(1 + e^{alpha c}); branch selects
/// the n-th root. Throws ParameterError for alpha = 0 or 1 + e^{alpha c} = 0.
Solution scalar_exp_solution(Complex alpha, Complex beta, Complex c, int n, int branch = 0,
                             const SolutionOptions& options = {});

/// Same with a caller-supplied d, checked against d^n (1 + e^{alpha c}) = 1.
Solution scalar_exp_solution_with_d(Complex alpha, Complex beta, Complex c, int n, Complex d,
                                    const SolutionOptions& options = {});

/// c = pi i, h = e^z, f = (1/2)(1 + P'(h)/sqrt3)/P(h) e^{(alpha z + beta)/3};
/// requires e^{alpha pi i} = 1.
Solution example1_solution(Complex alpha, Complex beta, const EquianharmonicContext& ctx,
                           const SolutionOptions& options = {});

/// h(z) = e^{az} g(z) + b with e^{ac} = A and (1 - A) b = offset + tau, where
/// offset is theta1, theta2 or 0 and tau is a lattice point. g must have period c.
Expr example2_inner(const Expr& periodic, Complex c, Complex A, ThetaCase theta_case, Complex tau,
                    const EquianharmonicContext& ctx);

/// f = A e^{g/n} solving f^n(z) + f^m(L z) = e^{g(z)}. Requires A^n + B^m = 1,
/// n >= 2, m >= 3, and certifies g(L z) = (n/m) g(z) + n Ln(B/A) numerically.
Solution exp_family(int n, int m, Complex A, Complex B, const Expr& g, const AffineMap& L, int branch = 0,
                    const SolutionOptions& options = {});

/// g = e^{alpha z + beta} + a with e^{alpha c} = n/m and (1 - n/m) a = n Ln(B/A).
Solution example3(int n, int m, Complex A, Complex B, Complex c, Complex beta, int branch = 0,
                  const SolutionOptions& options = {});

/// g = periodic(z) + a z with a c = n Ln(B/A), n = m.
Solution example4(int n, Complex A, Complex B, Complex c, const Expr& periodic, int branch = 0,
                  const SolutionOptions& options = {});

/// q-difference instance with |q| != 1: L(z) = q z, q^2 = n/m, g = z^2 + a,
/// (1 - n/m) a = n Ln(B/A).
Solution q_difference_example(int n, int m, Complex A, Complex B, int branch = 0, const SolutionOptions& options = {});

}  // namespace fermat
