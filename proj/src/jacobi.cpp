#include "fermat/jacobi.hpp"

#include <array>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <algorithm>
#include <limits>
#include <vector>

#include "fermat/lattice.hpp"

namespace fermat {

namespace {

// Taylor-series integrator for y'' = 2 sigma y^3.
//
// Two charts cover the Riemann sphere: y = sn (sigma = -1) and y = 1/sn
// (sigma = +1). The second chart follows from u = 1/s, u' = -s'/s^2 and the
// first integral s'^2 = 1 - s^4, which give u'' = 2u^3. Switching to the chart
// with |y| <= 1 keeps the series radius bounded away from zero, so poles on
// the path are crossed without special handling.
struct ChartState {
  Complex y;
  Complex dy;
  bool inverted = false;
};

constexpr int kOrder = 28;
constexpr double kLocalTol = 1e-17;

void switch_chart_if_needed(ChartState& st) {
  if (std::abs(st.y) > 1.0) {
    const Complex y = st.y;
    st.y = 1.0 / y;
    st.dy = -st.dy / (y * y);
    st.inverted = !st.inverted;
  }
}

void taylor_coefficients(const ChartState& st, std::array<Complex, kOrder + 1>& a) {
  const double sigma = st.inverted ? 1.0 : -1.0;
  std::array<Complex, kOrder + 1> sq{};
  a[0] = st.y;
  a[1] = st.dy;
  for (int k = 0; k + 2 <= kOrder; ++k) {
    Complex s = 0.0;
    for (int j = 0; j <= k; ++j) {
      s += a[j] * a[k - j];
    }
    sq[k] = s;
    Complex cube = 0.0;
    for (int j = 0; j <= k; ++j) {
      cube += sq[j] * a[k - j];
    }
    a[k + 2] = 2.0 * sigma * cube / ((k + 1.0) * (k + 2.0));
  }
}

void advance(ChartState& st, Complex from, Complex to) {
  Complex here = from;
  int guard = 0;
  while (here != to) {
    if (++guard > 100000) {
      throw DomainError("sn: integrator failed to make progress");
    }
    switch_chart_if_needed(st);
    std::array<Complex, kOrder + 1> a;
    taylor_coefficients(st, a);

    const double scale = std::max(1.0, std::abs(st.y));
    double h = std::numeric_limits<double>::infinity();
    // Series at symmetric points are sparse (only z^{4j+1} at the origin), so
    // look at several trailing coefficients.
    for (int k = kOrder - 5; k <= kOrder; ++k) {
      const double mag = std::abs(a[k]);
      if (mag > 0.0) {
        h = std::min(h, std::pow(kLocalTol * scale / mag, 1.0 / k));
      }
    }
    const Complex remaining = to - here;
    const double dist = std::abs(remaining);
    Complex step;
    if (h >= dist) {
      step = remaining;
    } else {
      step = remaining * (h / dist);
    }

    Complex y = 0.0;
    Complex dy = 0.0;
    for (int k = kOrder; k >= 1; --k) {
      y = y * step + a[k];
      dy = dy * step + static_cast<double>(k) * a[k];
    }
    y = y * step + a[0];
    // dy currently holds sum k a_k step^{k-1} evaluated by Horner.
    st.y = y;
    st.dy = dy;
    here = (h >= dist) ? to : here + step;
  }
  switch_chart_if_needed(st);
}

SnValue to_value(const ChartState& st) {
  SnValue out;
  if (!st.inverted) {
    out.s = st.y;
    out.ds = st.dy;
    out.at_pole = false;
    return out;
  }
  const Complex u = st.y;
  out.at_pole = std::abs(u) * kSnPoleThreshold < 1.0;
  if (u == Complex(0.0, 0.0)) {
    const double inf = std::numeric_limits<double>::infinity();
    out.s = Complex(inf, 0.0);
    out.ds = Complex(inf, 0.0);
    return out;
  }
  out.s = 1.0 / u;
  out.ds = -st.dy / (u * u);
  return out;
}

ChartState integrate_path(std::span<const Complex> waypoints) {
  ChartState st{Complex(0.0, 0.0), Complex(1.0, 0.0), false};
  Complex here = 0.0;
  for (Complex target : waypoints) {
    if (!is_finite(target)) {
      throw DomainError("sn: non-finite argument");
    }
    advance(st, here, target);
    here = target;
  }
  return st;
}

struct SnReduction {
  Complex reduced;
  double sign;
};

SnReduction reduce(Complex z) {
  static const Lattice antiperiods = [] {
    const double k = sn_quarter_period();
    return Lattice(Complex(2.0 * k, 0.0), Complex(0.0, 2.0 * k));
  }();
  const CellCoords c = reduce_to_cell(z, antiperiods);
  const bool odd = ((c.mu + c.nu) % 2) != 0;
  return {c.reduced, odd ? -1.0 : 1.0};
}

}  // namespace

double sn_quarter_period() {
  static const double k = [] {
    // t = sin(phi) turns the endpoint singularity into the smooth integrand
    // 1 / sqrt(1 + sin^2 phi) on [0, pi/2].
    boost::math::quadrature::tanh_sinh<double> integrator;
    return integrator.integrate(
        [](double phi) {
          const double s = std::sin(phi);
          return 1.0 / std::sqrt(1.0 + s * s);
        },
        0.0, kPi / 2.0);
  }();
  return k;
}

SnValue sn_along_path(std::span<const Complex> waypoints) { return to_value(integrate_path(waypoints)); }

SnValue sn(Complex z) {
  if (!is_finite(z)) {
    throw DomainError("sn: non-finite argument");
  }
  const SnReduction r = reduce(z);
  const std::array<Complex, 1> path{r.reduced};
  SnValue v = to_value(integrate_path(path));
  v.s *= r.sign;
  v.ds *= r.sign;
  return v;
}

std::pair<Complex, Complex> sn_reciprocal(Complex z) {
  const SnReduction r = reduce(z);
  const std::array<Complex, 1> path{r.reduced};
  ChartState st = integrate_path(path);
  if (!st.inverted) {
    const Complex s = st.y;
    st.y = 1.0 / s;
    st.dy = -st.dy / (s * s);
  }
  return {r.sign * st.y, r.sign * st.dy};
}

Complex sn_nearest_pole(Complex z0) {
  const double span = 2.0 * sn_quarter_period();
  constexpr int kGrid = 40;
  std::vector<Complex> seeds;
  for (int a = 0; a <= kGrid; ++a) {
    for (int b = 0; b <= kGrid; ++b) {
      const Complex z = z0 + Complex(-span + 2.0 * span * a / kGrid, -span + 2.0 * span * b / kGrid);
      if (std::abs(sn_reciprocal(z).first) < 0.25) {
        seeds.push_back(z);
      }
    }
  }
  std::sort(seeds.begin(), seeds.end(),
            [z0](Complex l, Complex r) { return std::abs(l - z0) < std::abs(r - z0); });

  Complex best = z0;
  double best_dist = std::numeric_limits<double>::infinity();
  for (std::size_t s = 0; s < seeds.size() && s < 24; ++s) {
    Complex z = seeds[s];
    for (int it = 0; it < 50; ++it) {
      const auto [u, du] = sn_reciprocal(z);
      if (du == Complex(0.0, 0.0)) {
        break;
      }
      const Complex step = u / du;
      z -= step;
      if (std::abs(step) < 1e-15) {
        break;
      }
    }
    if (std::abs(sn_reciprocal(z).first) < 1e-12 && std::abs(z - z0) < best_dist) {
      best_dist = std::abs(z - z0);
      best = z;
    }
  }
  if (!std::isfinite(best_dist)) {
    throw ConstructionError("sn_nearest_pole: no pole found near the starting point");
  }
  return best;
}

}  // namespace fermat
