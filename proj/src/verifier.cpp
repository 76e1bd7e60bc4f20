#include "fermat/verifier.hpp"

#include <cmath>
#include <limits>
#include <random>

namespace fermat {

namespace {

double unit_double(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

// Trapezoid rule for (1 / 2 pi i) * contour integral on a circle.
Complex trapezoid(const MeroFn& fn, Complex center, double radius, int nodes) {
  Complex sum = 0.0;
  for (int k = 0; k < nodes; ++k) {
    const Complex offset = std::polar(radius, 2.0 * kPi * k / nodes);
    const MeroValue v = fn(center + offset);
    if (v.at_pole || !is_finite(v.value)) {
      throw ContourError("contour passes through a singularity");
    }
    sum += v.value * offset;
  }
  return sum / static_cast<double>(nodes);
}

}  // namespace

std::vector<Complex> sample_disk(const Disk& region, int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Complex> pts;
  pts.reserve(static_cast<std::size_t>(std::max(count, 0)));
  for (int k = 0; k < count; ++k) {
    const double r = region.radius * std::sqrt(unit_double(rng));
    const double phi = 2.0 * kPi * unit_double(rng);
    pts.push_back(region.center + std::polar(r, phi));
  }
  return pts;
}

VerificationReport verify_equation(const MeroFn& f, const MeroFn& g, int n, int m, const Expr& rhs,
                                   const AffineMap& L, const Disk& region, int samples, double tol,
                                   std::uint64_t seed) {
  if (!(region.radius > 0.0) || !std::isfinite(region.radius) || !is_finite(region.center)) {
    throw ParameterError("verify_equation: degenerate sampling region");
  }
  if (samples < 1 || !(tol > 0.0) || n < 1 || m < 1) {
    throw ParameterError("verify_equation: samples, tolerance and exponents must be positive");
  }
  VerificationReport report;
  report.samples_requested = samples;
  report.seed = seed;
  report.tolerance = tol;

  double sum = 0.0;
  for (Complex z : sample_disk(region, samples, seed)) {
    const MeroValue fz = f(z);
    const MeroValue gz = g(L(z));
    if (fz.at_pole || gz.at_pole) {
      ++report.skipped_near_pole;
      continue;
    }
    const Complex r = eval(rhs, z);
    double residual = std::abs(ipow(fz.value, n) + ipow(gz.value, m) - r) / (1.0 + std::abs(r));
    if (!std::isfinite(residual)) {
      residual = std::numeric_limits<double>::infinity();
    }
    ++report.samples_used;
    sum += residual;
    if (report.samples_used == 1 || residual > report.max_residual) {
      report.max_residual = residual;
      report.worst_point = z;
    }
  }
  report.mean_residual = report.samples_used > 0 ? sum / report.samples_used : 0.0;
  report.passed = report.max_residual <= tol && 2 * report.samples_used >= report.samples_requested;
  return report;
}

Complex residue_at(const MeroFn& fn, Complex center, double radius, const ContourOptions& options) {
  if (!(radius > 0.0) || options.nodes < 4) {
    throw ParameterError("residue_at: radius and node count must be positive");
  }
  int nodes = options.nodes;
  Complex previous = trapezoid(fn, center, radius, nodes);
  while (nodes < options.max_nodes) {
    nodes *= 2;
    const Complex current = trapezoid(fn, center, radius, nodes);
    if (std::abs(current - previous) <= options.agreement * std::max(1.0, std::abs(current))) {
      return current;
    }
    previous = current;
  }
  return previous;
}

Complex numeric_derivative(const MeroFn& fn, Complex z, double h) {
  auto central = [&](double step) {
    const MeroValue plus = fn(z + step);
    const MeroValue minus = fn(z - step);
    if (plus.at_pole || minus.at_pole) {
      throw ContourError("numeric_derivative: stencil touches a singularity");
    }
    return (plus.value - minus.value) / (2.0 * step);
  };
  const Complex coarse = central(h);
  const Complex fine = central(0.5 * h);
  return (4.0 * fine - coarse) / 3.0;
}

int order_at(const MeroFn& fn, Complex center, double radius, const ContourOptions& options) {
  const double h = 1e-5 * radius;
  const MeroFn log_derivative([&fn, h](Complex z) {
    const MeroValue v = fn(z);
    if (v.at_pole || v.value == Complex(0.0, 0.0)) {
      return MeroValue{v.value, true};
    }
    return MeroValue{numeric_derivative(fn, z, h) / v.value, false};
  });
  const Complex count = residue_at(log_derivative, center, radius, options);
  const double nearest = std::round(count.real());
  if (std::abs(count - Complex(nearest, 0.0)) > 0.1) {
    throw InconclusiveError("order_at: argument-principle integral is not near an integer");
  }
  return static_cast<int>(nearest);
}

ResidueIdentity residue_identity_check(const Expr& h, const AffineMap& L, Complex A, Complex eta, Complex b0,
                                       const EquianharmonicContext& ctx, double radius) {
  const double inv_sqrt3 = 1.0 / std::sqrt(3.0);
  const MeroFn h_fn = MeroFn::analytic([&h](Complex z) { return eval(h, z); });
  const double step = 1e-4 * radius;

  auto side = [&](bool shifted) {
    return MeroFn([&, shifted](Complex z) {
      const Complex at = shifted ? L(z) : z;
      const WpValue v = wp(eval(h, at), ctx);
      if (v.at_pole || v.p == Complex(0.0, 0.0)) {
        return MeroValue{v.p, true};
      }
      Complex dh = numeric_derivative(h_fn, at, step);
      if (shifted) {
        dh *= L.q;
      }
      const Complex log_deriv = v.dp * dh / v.p;
      if (shifted) {
        return MeroValue{dh / v.p + inv_sqrt3 * log_deriv, false};
      }
      return MeroValue{A * eta * (dh / v.p - inv_sqrt3 * log_deriv), false};
    });
  };
  const MeroFn lhs_fn = side(true);
  const MeroFn rhs_fn = side(false);

  const ResidueIdentity full{residue_at(lhs_fn, b0, radius), residue_at(rhs_fn, b0, radius)};
  const ResidueIdentity half{residue_at(lhs_fn, b0, 0.5 * radius), residue_at(rhs_fn, b0, 0.5 * radius)};
  if (std::abs(full.lhs - half.lhs) > 1e-8 || std::abs(full.rhs - half.rhs) > 1e-8) {
    throw ContourError("residue_identity_check: residues change with the radius; more than one singularity enclosed");
  }
  return full;
}

}  // namespace fermat
