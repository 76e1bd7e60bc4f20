#include "fermat/solutions.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "fermat/jacobi.hpp"
#include "fermat/verifier.hpp"

namespace fermat {

namespace {

constexpr double kRootTol = 1e-12;
constexpr double kScalarTol = 1e-10;
constexpr double kRelationTol = 1e-8;

const double kInvSqrt3 = 1.0 / std::sqrt(3.0);
const Complex kI(0.0, 1.0);

struct NamedFamily {
  Family family;
  const char* name;
};

constexpr std::array<NamedFamily, 11> kFamilyNames{{
    {Family::CubicPair, "cubic-pair"},
    {Family::Pair23, "pair-2-3"},
    {Family::Pair24, "pair-2-4"},
    {Family::Shift3, "shift3"},
    {Family::ShiftExpRHS, "shift-exp-rhs"},
    {Family::ExpFamily, "exp-family"},
    {Family::ScalarExp, "scalar-exp"},
    {Family::Example1, "example1"},
    {Family::Example2Inner, "example2"},
    {Family::Example3, "example3"},
    {Family::Example4, "example4"},
}};

void require_nonconstant(const Expr& e, const char* what) {
  if (!e.depends_on_z()) {
    throw ParameterError(std::string(what) + " must depend on z");
  }
}

// Records a scalar side condition; throws when validation is on and it fails.
void side_condition(Certificate& cert, const SolutionOptions& options, std::string name, double residual,
                    double tol) {
  const bool ok = residual <= tol;
  cert.side_conditions.push_back({name, residual});
  if (!ok) {
    cert.passed = false;
    if (options.validate) {
      throw ParameterError("side condition violated: " + name + " (residual " + std::to_string(residual) + ")");
    }
  }
}

MeroValue flagged() { return {Complex(std::numeric_limits<double>::quiet_NaN(), 0.0), true}; }

// factor * (1/2)(1 + sign P'(w)/sqrt3) / P(w). Singular where P(w) = 0 or w is
// a lattice point; samples within `margin` of either are flagged.
MeroValue cubic_outer(Complex w, Complex factor, double sign, const EquianharmonicContext& ctx, double margin) {
  if (!is_finite(w)) {
    return flagged();
  }
  const WpValue v = wp(w, ctx);
  const bool near = v.at_pole || distance_to_lattice(w, ctx.lattice()) < margin ||
                    distance_to_wp_zero(w, ctx) < margin;
  return {factor * 0.5 * (1.0 + sign * kInvSqrt3 * v.dp) / v.p, near};
}

MeroFn compose_cubic(const Expr& h, Complex factor, double sign, const EquianharmonicContext& ctx, double margin) {
  return MeroFn([h, factor, sign, ctx, margin](Complex z) {
    return cubic_outer(eval(h, z), factor, sign, ctx, margin);
  });
}

Expr exp_of_affine(Complex alpha, Complex beta) {
  return Expr::call(Func::Exp, Expr::constant(alpha) * Expr::z() + Expr::constant(beta));
}

Complex nth_root(Complex s, int n, int branch) {
  return std::exp((principal_log(s) + 2.0 * kPi * kI * static_cast<double>(branch)) / static_cast<double>(n));
}

Complex log_ratio(Complex A, Complex B, int branch) {
  return principal_log(B / A) + 2.0 * kPi * kI * static_cast<double>(branch);
}

// Shift certificate: measure delta = h(L z) - A h(z), check it is constant and
// match it against theta1 + tau, theta2 + tau, tau.
ShiftCertificate classify_shift(const Expr& h, const AffineMap& L, Complex A, const EquianharmonicContext& ctx,
                                const SolutionOptions& options) {
  const Disk region{Complex(0.0, 0.0), options.certificate_radius};
  std::vector<Complex> deltas;
  double scale = 1.0;
  for (Complex z : sample_disk(region, options.certificate_samples, options.certificate_seed)) {
    const Complex hz = eval(h, z);
    const Complex hl = eval(h, L(z));
    if (!is_finite(hz) || !is_finite(hl)) {
      continue;
    }
    scale = std::max({scale, std::abs(hz), std::abs(hl)});
    deltas.push_back(hl - A * hz);
  }
  if (deltas.empty()) {
    throw NotASolutionError("shift certificate: h is not finite at any sample");
  }
  ShiftCertificate cert;
  Complex mean = 0.0;
  for (Complex d : deltas) {
    mean += d;
  }
  mean /= static_cast<double>(deltas.size());
  cert.delta = mean;
  cert.delta_spread = 0.0;
  for (Complex d : deltas) {
    cert.delta_spread = std::max(cert.delta_spread, std::abs(d - mean));
  }
  const double tol = kRelationTol * scale;
  if (cert.delta_spread > tol) {
    if (options.validate) {
      throw NotASolutionError("h(L z) - A h(z) is not constant (spread " + std::to_string(cert.delta_spread) + ")");
    }
    return cert;
  }
  const double omega = std::abs(ctx.omega1());
  const std::array<Complex, 3> offsets{ctx.theta1(), ctx.theta2(), Complex(0.0, 0.0)};
  for (int k = 0; k < 3; ++k) {
    const Complex tau = mean - offsets[static_cast<std::size_t>(k)];
    if (is_lattice_point(tau, ctx.lattice(), tol / omega)) {
      const auto [mu, nu] = nearest_lattice_point(tau, ctx.lattice());
      cert.condition = k + 1;
      cert.tau_mu = mu;
      cert.tau_nu = nu;
      cert.tau = ctx.lattice().point(mu, nu);
      return cert;
    }
  }
  if (options.validate) {
    throw ClassificationError("h(L z) - A h(z) matches none of theta1 + tau, theta2 + tau, tau");
  }
  return cert;
}

void check_rotation(Certificate& cert, Complex A, const EquianharmonicContext& ctx, const SolutionOptions& options) {
  side_condition(cert, options, "A^3 + 1", std::abs(A * A * A + 1.0), kRootTol);
  bool bijective = false;
  if (std::abs(std::abs(A) - 1.0) <= 1e-9) {
    bijective = check_rotation_bijection(A, ctx.lattice(), 1e-9);
  }
  if (!bijective) {
    cert.passed = false;
    if (options.validate) {
      throw ParameterError("A does not map the lattice onto itself");
    }
  }
}

// Case constant kappa with f(L z) = kappa (1/2)(1 - P'(w)/sqrt3)/P(w), w = h(z).
Complex companion_factor(int condition, Complex A) {
  const double r3 = std::sqrt(3.0);
  switch (condition) {
    case 1:
      return -Complex(-0.5, -0.5 * r3) / A;
    case 2:
      return Complex(1.0, -r3) / (2.0 * A);
    default:
      return -1.0 / A;
  }
}

}  // namespace

std::string family_name(Family f) {
  for (const auto& entry : kFamilyNames) {
    if (entry.family == f) {
      return entry.name;
    }
  }
  return "unknown";
}

std::optional<Family> family_from_name(const std::string& name) {
  for (const auto& entry : kFamilyNames) {
    if (name == entry.name) {
      return entry.family;
    }
  }
  return std::nullopt;
}

Solution cubic_pair(const Expr& h, Complex eta, const EquianharmonicContext& ctx, const SolutionOptions& options) {
  require_nonconstant(h, "h");
  Solution s{Family::CubicPair, {}, {}, 3, 3, AffineMap::identity(), Expr::real(1.0), {}, {{"eta", eta}}};
  side_condition(s.certificate, options, "eta^3 - 1", std::abs(eta * eta * eta - 1.0), kRootTol);
  s.f = compose_cubic(h, 1.0, 1.0, ctx, options.pole_margin);
  s.g = compose_cubic(h, eta, -1.0, ctx, options.pole_margin);
  return s;
}

Solution pair_2_3(const Expr& h, Complex eta, const EquianharmonicContext& ctx, const SolutionOptions& options) {
  require_nonconstant(h, "h");
  Solution s{Family::Pair23, {}, {}, 2, 3, AffineMap::identity(), Expr::real(1.0), {}, {{"eta", eta}}};
  side_condition(s.certificate, options, "eta^3 - 1", std::abs(eta * eta * eta - 1.0), kRootTol);
  const double margin = options.pole_margin;
  s.f = MeroFn([h, ctx, margin](Complex z) {
    const Complex w = eval(h, z);
    if (!is_finite(w)) {
      return flagged();
    }
    const WpValue v = wp(w, ctx);
    return MeroValue{kI * v.dp, v.at_pole || distance_to_lattice(w, ctx.lattice()) < margin};
  });
  const Complex scale = eta * std::cbrt(4.0);
  s.g = MeroFn([h, ctx, margin, scale](Complex z) {
    const Complex w = eval(h, z);
    if (!is_finite(w)) {
      return flagged();
    }
    const WpValue v = wp(w, ctx);
    return MeroValue{scale * v.p, v.at_pole || distance_to_lattice(w, ctx.lattice()) < margin};
  });
  return s;
}

Solution pair_2_4(const Expr& h, const SolutionOptions& options) {
  require_nonconstant(h, "h");
  Solution s{Family::Pair24, {}, {}, 2, 4, AffineMap::identity(), Expr::real(1.0), {}, {}};
  const double bound = 1.0 / options.pole_margin;
  auto outer = [h, bound](bool derivative) {
    return MeroFn([h, bound, derivative](Complex z) {
      const Complex w = eval(h, z);
      if (!is_finite(w)) {
        return flagged();
      }
      const SnValue v = sn(w);
      return MeroValue{derivative ? v.ds : v.s, v.at_pole || std::abs(v.s) > bound};
    });
  };
  s.f = outer(true);
  s.g = outer(false);
  return s;
}

Solution shift_solution(const Expr& h, const AffineMap& L, Complex A, const EquianharmonicContext& ctx,
                        const SolutionOptions& options) {
  require_nonconstant(h, "h");
  Solution s{Family::Shift3, {}, {}, 3, 3, L, Expr::real(1.0), {}, {{"A", A}, {"q", L.q}, {"c", L.c}}};
  check_rotation(s.certificate, A, ctx, options);
  s.certificate.shift = classify_shift(h, L, A, ctx, options);
  if (s.certificate.shift->condition == 0) {
    s.certificate.passed = false;
  } else {
    s.parameters.emplace_back("tau", s.certificate.shift->tau);
  }
  s.f = compose_cubic(h, 1.0, 1.0, ctx, options.pole_margin);
  s.g = s.f;
  return s;
}

MeroFn companion_under_shift(const Expr& h, const AffineMap& L, Complex A, const EquianharmonicContext& ctx,
                             const SolutionOptions& options) {
  SolutionOptions strict = options;
  strict.validate = true;
  const Solution base = shift_solution(h, L, A, ctx, strict);
  return compose_cubic(h, companion_factor(base.certificate.shift->condition, A), -1.0, ctx, options.pole_margin);
}

Solution shift_exp_rhs(const Expr& h, const AffineMap& L, Complex A, Complex alpha, Complex beta,
                       const EquianharmonicContext& ctx, const SolutionOptions& options) {
  Solution s = shift_solution(h, L, A, ctx, options);
  s.family = Family::ShiftExpRHS;
  side_condition(s.certificate, options, "q - 1", std::abs(L.q - 1.0), kRootTol);
  side_condition(s.certificate, options, "exp(alpha c) - 1", std::abs(std::exp(alpha * L.c) - 1.0), kScalarTol);
  const MeroFn base = s.f;
  s.f = MeroFn([base, alpha, beta](Complex z) {
    MeroValue v = base(z);
    v.value *= std::exp((alpha * z + beta) / 3.0);
    return v;
  });
  s.g = s.f;
  s.rhs = exp_of_affine(alpha, beta);
  s.parameters.emplace_back("alpha", alpha);
  s.parameters.emplace_back("beta", beta);
  return s;
}

Solution scalar_exp_solution_with_d(Complex alpha, Complex beta, Complex c, int n, Complex d,
                                    const SolutionOptions& options) {
  if (n < 1) {
    throw ParameterError("scalar_exp_solution: n must be positive");
  }
  if (alpha == Complex(0.0, 0.0)) {
    throw ParameterError("scalar_exp_solution: alpha must be nonzero");
  }
  const Complex s_factor = 1.0 + std::exp(alpha * c);
  if (std::abs(s_factor) < kScalarTol) {
    throw ParameterError("scalar_exp_solution: 1 + exp(alpha c) vanishes");
  }
  Solution s{Family::ScalarExp, {}, {}, n, n, AffineMap::shift(c), exp_of_affine(alpha, beta), {},
             {{"alpha", alpha}, {"beta", beta}, {"c", c}, {"d", d}}};
  side_condition(s.certificate, options, "d^n (1 + exp(alpha c)) - 1", std::abs(ipow(d, n) * s_factor - 1.0),
                 kScalarTol);
  s.f = MeroFn::analytic(
      [alpha, beta, d, n](Complex z) { return d * std::exp((alpha * z + beta) / static_cast<double>(n)); });
  s.g = s.f;
  return s;
}

Solution scalar_exp_solution(Complex alpha, Complex beta, Complex c, int n, int branch,
                             const SolutionOptions& options) {
  if (n < 1) {
    throw ParameterError("scalar_exp_solution: n must be positive");
  }
  const Complex s_factor = 1.0 + std::exp(alpha * c);
  if (std::abs(s_factor) < kScalarTol) {
    throw ParameterError("scalar_exp_solution: 1 + exp(alpha c) vanishes");
  }
  return scalar_exp_solution_with_d(alpha, beta, c, n, nth_root(1.0 / s_factor, n, branch), options);
}

Solution example1_solution(Complex alpha, Complex beta, const EquianharmonicContext& ctx,
                           const SolutionOptions& options) {
  const Complex c(0.0, kPi);
  if (std::abs(std::exp(alpha * c) - 1.0) > kScalarTol && options.validate) {
    throw ParameterError("example1: exp(alpha pi i) must equal 1");
  }
  Solution s = shift_exp_rhs(Expr::call(Func::Exp, Expr::z()), AffineMap::shift(c), Complex(-1.0, 0.0), alpha,
                             beta, ctx, options);
  s.family = Family::Example1;
  return s;
}

Expr example2_inner(const Expr& periodic, Complex c, Complex A, ThetaCase theta_case, Complex tau,
                    const EquianharmonicContext& ctx) {
  if (c == Complex(0.0, 0.0) || std::abs(A - 1.0) < kRootTol) {
    throw ParameterError("example2: need c != 0 and A != 1");
  }
  if (!is_lattice_point(tau, ctx.lattice(), 1e-12)) {
    throw ParameterError("example2: tau must be a lattice point");
  }
  const Complex offset = theta_case == ThetaCase::Theta1   ? ctx.theta1()
                         : theta_case == ThetaCase::Theta2 ? ctx.theta2()
                                                           : Complex(0.0, 0.0);
  const Complex a = principal_log(A) / c;
  const Complex b = (offset + tau) / (1.0 - A);
  return Expr::call(Func::Exp, Expr::constant(a) * Expr::z()) * periodic + Expr::constant(b);
}

Solution exp_family(int n, int m, Complex A, Complex B, const Expr& g, const AffineMap& L, int branch,
                    const SolutionOptions& options) {
  if (n < 2 || m < 3) {
    throw ParameterError("exp_family: need n >= 2 and m >= 3");
  }
  if (A == Complex(0.0, 0.0) || B == Complex(0.0, 0.0)) {
    throw ParameterError("exp_family: A and B must be nonzero");
  }
  require_nonconstant(g, "g");
  Solution s{Family::ExpFamily, {}, {}, n, m, L, Expr::call(Func::Exp, g), {},
             {{"A", A}, {"B", B}, {"q", L.q}, {"c", L.c}}};
  side_condition(s.certificate, options, "A^n + B^m - 1", std::abs(ipow(A, n) + ipow(B, m) - 1.0), kScalarTol);

  const Complex ln = log_ratio(A, B, branch);
  const double ratio = static_cast<double>(n) / m;
  RelationCertificate rel{0.0, ln, std::abs(L.q)};
  const Disk region{Complex(0.0, 0.0), options.certificate_radius};
  for (Complex z : sample_disk(region, options.certificate_samples, options.certificate_seed)) {
    const Complex gl = eval(g, L(z));
    const Complex lhs = gl - ratio * eval(g, z) - static_cast<double>(n) * ln;
    double r = std::abs(lhs) / std::max(1.0, std::abs(gl));
    if (!std::isfinite(r)) {
      r = std::numeric_limits<double>::infinity();
    }
    rel.max_residual = std::max(rel.max_residual, r);
  }
  s.certificate.relation = rel;
  if (!(rel.max_residual <= kRelationTol)) {
    s.certificate.passed = false;
    if (options.validate) {
      throw NotASolutionError("g(L z) != (n/m) g(z) + n Ln(B/A) (residual " + std::to_string(rel.max_residual) +
                              ")");
    }
  }
  s.parameters.emplace_back("Ln(B/A)", ln);
  const double inv_n = 1.0 / n;
  s.f = MeroFn::analytic([A, g, inv_n](Complex z) { return A * std::exp(eval(g, z) * inv_n); });
  s.g = s.f;
  return s;
}

namespace {

Solution example3_explicit(int n, int m, Complex A, Complex B, Complex c, Complex alpha, Complex beta, Complex a,
                           int branch, const SolutionOptions& options) {
  if (n == m) {
    throw ParameterError("example3: needs n != m");
  }
  const double ratio = static_cast<double>(n) / m;
  Certificate pre;
  side_condition(pre, options, "exp(alpha c) - n/m", std::abs(std::exp(alpha * c) - ratio), kScalarTol);
  side_condition(pre, options, "(1 - n/m) a - n Ln(B/A)",
                 std::abs((1.0 - ratio) * a - static_cast<double>(n) * log_ratio(A, B, branch)), kScalarTol);
  const Expr g = exp_of_affine(alpha, beta) + Expr::constant(a);
  Solution s = exp_family(n, m, A, B, g, AffineMap::shift(c), branch, options);
  s.family = Family::Example3;
  s.certificate.side_conditions.insert(s.certificate.side_conditions.begin(), pre.side_conditions.begin(),
                                       pre.side_conditions.end());
  s.certificate.passed = s.certificate.passed && pre.passed;
  s.parameters.emplace_back("alpha", alpha);
  s.parameters.emplace_back("beta", beta);
  s.parameters.emplace_back("a", a);
  return s;
}

Solution example4_explicit(int n, Complex A, Complex B, Complex c, const Expr& periodic, Complex a, int branch,
                           const SolutionOptions& options) {
  Certificate pre;
  side_condition(pre, options, "a c - n Ln(B/A)",
                 std::abs(a * c - static_cast<double>(n) * log_ratio(A, B, branch)), kScalarTol);
  const Expr g = periodic + Expr::constant(a) * Expr::z();
  Solution s = exp_family(n, n, A, B, g, AffineMap::shift(c), branch, options);
  s.family = Family::Example4;
  s.certificate.side_conditions.insert(s.certificate.side_conditions.begin(), pre.side_conditions.begin(),
                                       pre.side_conditions.end());
  s.certificate.passed = s.certificate.passed && pre.passed;
  s.parameters.emplace_back("a", a);
  return s;
}

}  // namespace

Solution example3(int n, int m, Complex A, Complex B, Complex c, Complex beta, int branch,
                  const SolutionOptions& options) {
  if (n == m) {
    throw ParameterError("example3: needs n != m");
  }
  if (c == Complex(0.0, 0.0)) {
    throw ParameterError("example3: c must be nonzero");
  }
  const double ratio = static_cast<double>(n) / m;
  const Complex alpha = std::log(ratio) / c;
  const Complex a = static_cast<double>(n) * log_ratio(A, B, branch) / (1.0 - ratio);
  return example3_explicit(n, m, A, B, c, alpha, beta, a, branch, options);
}

Solution example4(int n, Complex A, Complex B, Complex c, const Expr& periodic, int branch,
                  const SolutionOptions& options) {
  if (c == Complex(0.0, 0.0)) {
    throw ParameterError("example4: c must be nonzero");
  }
  const Complex a = static_cast<double>(n) * log_ratio(A, B, branch) / c;
  return example4_explicit(n, A, B, c, periodic, a, branch, options);
}

Solution q_difference_example(int n, int m, Complex A, Complex B, int branch, const SolutionOptions& options) {
  if (n == m) {
    throw ParameterError("q example: needs n != m");
  }
  const double ratio = static_cast<double>(n) / m;
  const Complex a = static_cast<double>(n) * log_ratio(A, B, branch) / (1.0 - ratio);
  const Expr g = Expr::binary(BinOp::Pow, Expr::z(), Expr::real(2.0)) + Expr::constant(a);
  Solution s = exp_family(n, m, A, B, g, AffineMap(Complex(std::sqrt(ratio), 0.0), 0.0), branch, options);
  s.parameters.emplace_back("a", a);
  return s;
}

Solution build_solution(const SolutionSpec& spec, const EquianharmonicContext& ctx, const SolutionOptions& options) {
  auto need = [](const std::optional<Expr>& e, const char* what) -> const Expr& {
    if (!e) {
      throw ParameterError(std::string("missing expression: ") + what);
    }
    return *e;
  };
  switch (spec.family) {
    case Family::CubicPair:
      return cubic_pair(need(spec.h, "h"), spec.eta, ctx, options);
    case Family::Pair23:
      return pair_2_3(need(spec.h, "h"), spec.eta, ctx, options);
    case Family::Pair24:
      return pair_2_4(need(spec.h, "h"), options);
    case Family::Shift3:
      return shift_solution(need(spec.h, "h"), spec.L, spec.A, ctx, options);
    case Family::ShiftExpRHS:
      return shift_exp_rhs(need(spec.h, "h"), spec.L, spec.A, spec.alpha, spec.beta, ctx, options);
    case Family::ExpFamily:
      return exp_family(spec.n, spec.m, spec.A, spec.B, need(spec.g_or_P, "g"), spec.L, spec.branch, options);
    case Family::ScalarExp:
      if (spec.d) {
        return scalar_exp_solution_with_d(spec.alpha, spec.beta, spec.L.c, spec.n, *spec.d, options);
      }
      return scalar_exp_solution(spec.alpha, spec.beta, spec.L.c, spec.n, spec.branch, options);
    case Family::Example1:
      return example1_solution(spec.alpha, spec.beta, ctx, options);
    case Family::Example2Inner: {
      const Expr h = example2_inner(need(spec.g_or_P, "periodic part"), spec.L.c, spec.A, spec.theta_case,
                                    spec.tau, ctx);
      Solution s = shift_solution(h, spec.L, spec.A, ctx, options);
      s.family = Family::Example2Inner;
      return s;
    }
    case Family::Example3:
      return example3_explicit(spec.n, spec.m, spec.A, spec.B, spec.L.c, spec.alpha, spec.beta, spec.a,
                               spec.branch, options);
    case Family::Example4:
      return example4_explicit(spec.n, spec.A, spec.B, spec.L.c, need(spec.g_or_P, "periodic part"), spec.a,
                               spec.branch, options);
  }
  throw ParameterError("unknown family");
}

}  // namespace fermat
