#include "fermat/weierstrass.hpp"

#include <algorithm>
#include <array>
#include <boost/math/quadrature/exp_sinh.hpp>
#include <cmath>
#include <limits>

namespace fermat {

namespace {

constexpr Complex kI{0.0, 1.0};

Lattice equianharmonic_lattice() {
  const double omega1 = 2.0 * real_half_period();
  const Complex rot = std::polar(1.0, kPi / 3.0);
  return Lattice(Complex(omega1, 0.0), omega1 * rot);
}

void require_pole_free(const WpValue& v, const char* what) {
  if (v.at_pole) {
    throw DomainError(std::string(what) + ": argument is at a pole of P");
  }
}

void require_cube_root(Complex A, const char* what) {
  if (!is_cube_root_of_minus_one(A)) {
    throw ParameterError(std::string(what) + ": A^3 must equal -1");
  }
}

}  // namespace

double real_half_period() {
  const double e1 = std::cbrt(0.25);
  // t = e1 + s^2 removes the endpoint singularity:
  //   dt / sqrt(4t^3 - 1) = ds / sqrt(t^2 + e1 t + e1^2).
  auto integrand = [e1](double s) {
    const double t = e1 + s * s;
    return 1.0 / std::sqrt(t * t + e1 * t + e1 * e1);
  };
  boost::math::quadrature::exp_sinh<double> integrator;
  return integrator.integrate(integrand, 0.0, std::numeric_limits<double>::infinity());
}

std::vector<double> laurent_coefficients(double g2, double g3, int max_k) {
  std::vector<double> c(static_cast<std::size_t>(std::max(max_k, 3) + 1), 0.0);
  c[2] = g2 / 20.0;
  c[3] = g3 / 28.0;
  for (int k = 4; k <= max_k; ++k) {
    double sum = 0.0;
    for (int j = 2; j <= k - 2; ++j) {
      sum += c[j] * c[k - j];
    }
    c[k] = 3.0 * sum / ((2.0 * k + 1.0) * (k - 3.0));
  }
  c.resize(static_cast<std::size_t>(max_k + 1));
  return c;
}

EquianharmonicContext::EquianharmonicContext(const ContextOptions& options)
    : lattice_(equianharmonic_lattice()), e1_(std::cbrt(0.25)) {
  if (options.series_terms < 1 || options.series_radius_factor <= 0.0 ||
      options.series_radius_factor >= 0.5 || options.pole_radius_factor <= 0.0) {
    throw ParameterError("invalid context options");
  }
  const double scale = std::abs(lattice_.omega1());
  series_radius_ = options.series_radius_factor * scale;
  pole_radius_ = options.pole_radius_factor * scale;

  // g2 = 0 leaves only the coefficients c_{3j}, i.e. powers z^{6j-2}.
  const auto c = laurent_coefficients(0.0, 1.0, 3 * options.series_terms);
  series_.reserve(static_cast<std::size_t>(options.series_terms));
  for (int j = 1; j <= options.series_terms; ++j) {
    series_.push_back(c[static_cast<std::size_t>(3 * j)]);
  }

  const auto [t1, t2] = find_zeros(*this);
  theta1_ = t1;
  theta2_ = t2;
}

EquianharmonicContext make_context(const ContextOptions& options) { return EquianharmonicContext(options); }

WpValue wp_series(Complex z, const EquianharmonicContext& ctx) {
  if (z == Complex(0.0, 0.0)) {
    const double inf = std::numeric_limits<double>::infinity();
    return {Complex(inf, 0.0), Complex(inf, 0.0), true};
  }
  const auto& a = ctx.series_coefficients();
  const Complex z2 = z * z;
  const Complex t = z2 * z2 * z2;
  // Horner in t = z^6 for 1 + sum a_j t^j and -2 + sum (6j-2) a_j t^j.
  Complex p_sum = 0.0;
  Complex dp_sum = 0.0;
  for (std::size_t j = a.size(); j-- > 0;) {
    const double n = static_cast<double>(j + 1);
    p_sum = (p_sum + a[j]) * t;
    dp_sum = (dp_sum + (6.0 * n - 2.0) * a[j]) * t;
  }
  WpValue out;
  out.p = (1.0 + p_sum) / z2;
  out.dp = (dp_sum - 2.0) / (z2 * z);
  out.at_pole = std::abs(z) < ctx.pole_radius();
  return out;
}

WpValue wp_duplicate(const WpValue& half) {
  const Complex x = half.p;
  const Complex y = half.dp;
  const Complex lambda = 6.0 * x * x / y;
  const Complex x3 = 0.25 * lambda * lambda - 2.0 * x;
  WpValue out;
  out.p = x3;
  out.dp = -(y + lambda * (x3 - x));
  out.at_pole = false;
  return out;
}

WpValue wp(Complex z, const EquianharmonicContext& ctx) {
  const CellCoords cell = reduce_to_cell(z, ctx.lattice());
  const Complex r = cell.reduced;
  if (std::abs(r) <= ctx.series_radius()) {
    return wp_series(r, ctx);
  }
  // Outside the series disk the nearest lattice point is at least
  // |omega1|/2 away, so the point is never flagged as a pole here.
  return wp_duplicate(wp_series(0.5 * r, ctx));
}

Complex wp_addition(Complex w, Complex c, const EquianharmonicContext& ctx) {
  const WpValue pw = wp(w, ctx);
  const WpValue pc = wp(c, ctx);
  require_pole_free(pw, "wp_addition");
  require_pole_free(pc, "wp_addition");
  require_pole_free(wp(w + c, ctx), "wp_addition");
  const Complex denom = pw.p - pc.p;
  if (std::abs(denom) < 1e-10) {
    throw DegenerateError("wp_addition: P(w) and P(c) coincide");
  }
  const Complex q = (pw.dp - pc.dp) / denom;
  return 0.25 * q * q - pw.p - pc.p;
}

bool is_cube_root_of_minus_one(Complex A, double tol) {
  return is_finite(A) && std::abs(A * A * A + 1.0) <= tol;
}

RotationCheck rotation_identity(Complex z, Complex A, const EquianharmonicContext& ctx) {
  require_cube_root(A, "rotation_identity");
  const WpValue at_z = wp(z, ctx);
  const WpValue at_az = wp(A * z, ctx);
  require_pole_free(at_z, "rotation_identity");
  require_pole_free(at_az, "rotation_identity");
  return {at_az.p, -A * at_z.p, at_az.dp, -at_z.dp};
}

std::pair<Complex, Complex> translate_theta1(Complex w, Complex A, const EquianharmonicContext& ctx) {
  require_cube_root(A, "translate_theta1");
  const WpValue v = wp(w, ctx);
  require_pole_free(v, "translate_theta1");
  const Complex denom = v.dp + kI;
  if (std::abs(denom) < 1e-10) {
    throw DegenerateError("translate_theta1: P'(w) = -i");
  }
  const Complex p = 2.0 * kI * A * v.p / denom;
  const Complex dp = -kI * (v.dp - 3.0 * kI) / denom;
  return {p, dp};
}

std::pair<Complex, Complex> translate_theta2(Complex w, Complex A, const EquianharmonicContext& ctx) {
  require_cube_root(A, "translate_theta2");
  const WpValue v = wp(w, ctx);
  require_pole_free(v, "translate_theta2");
  const Complex denom = v.dp - kI;
  if (std::abs(denom) < 1e-10) {
    throw DegenerateError("translate_theta2: P'(w) = +i");
  }
  const Complex p = -2.0 * kI * A * v.p / denom;
  const Complex dp = kI * (v.dp + 3.0 * kI) / denom;
  return {p, dp};
}

std::pair<Complex, Complex> find_zeros(const EquianharmonicContext& ctx) {
  const Lattice& lat = ctx.lattice();
  const double scale = std::abs(lat.omega1());

  struct Seed {
    double mag;
    Complex z;
  };
  std::vector<Seed> seeds;
  constexpr int kGrid = 24;
  for (int a = 0; a < kGrid; ++a) {
    for (int b = 0; b < kGrid; ++b) {
      const double x = -0.5 + (a + 0.5) / kGrid;
      const double y = -0.5 + (b + 0.5) / kGrid;
      const Complex z = x * lat.omega1() + y * lat.omega2();
      if (std::abs(z) < 0.1 * scale) {
        continue;
      }
      seeds.push_back({std::abs(wp(z, ctx).p), z});
    }
  }
  std::sort(seeds.begin(), seeds.end(), [](const Seed& l, const Seed& r) { return l.mag < r.mag; });

  std::vector<Complex> zeros;
  constexpr std::size_t kMaxRestarts = 64;
  for (std::size_t s = 0; s < seeds.size() && s < kMaxRestarts && zeros.size() < 2; ++s) {
    Complex z = seeds[s].z;
    bool converged = false;
    for (int it = 0; it < 60; ++it) {
      const WpValue v = wp(z, ctx);
      if (v.at_pole || std::abs(v.dp) < 1e-14) {
        break;
      }
      const Complex step = v.p / v.dp;
      z -= step;
      if (std::abs(step) < 1e-15 * scale) {
        converged = true;
        break;
      }
    }
    if (!converged || std::abs(wp(z, ctx).p) > 1e-12) {
      continue;
    }
    z = reduce_to_cell(z, lat).reduced;
    const bool seen = std::any_of(zeros.begin(), zeros.end(), [&](Complex other) {
      return is_lattice_point(z - other, lat, 1e-8);
    });
    if (!seen) {
      zeros.push_back(z);
    }
  }
  if (zeros.size() != 2) {
    throw ConstructionError("find_zeros: could not isolate two distinct zeros of P");
  }
  if (wp(zeros[0], ctx).dp.imag() > wp(zeros[1], ctx).dp.imag()) {
    std::swap(zeros[0], zeros[1]);
  }
  return {zeros[0], zeros[1]};
}

double distance_to_wp_zero(Complex w, const EquianharmonicContext& ctx) {
  return std::min(distance_to_lattice(w - ctx.theta1(), ctx.lattice()),
                  distance_to_lattice(w - ctx.theta2(), ctx.lattice()));
}

}  // namespace fermat
