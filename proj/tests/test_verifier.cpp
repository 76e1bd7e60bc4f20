#include <cmath>
#include <cstring>

#include "doctest.h"
#include "fermat/jacobi.hpp"
#include "fermat/solutions.hpp"
#include "fermat/verifier.hpp"
#include "test_helpers.hpp"

using namespace fermat;
using testing::kI;

namespace {

const EquianharmonicContext& ctx() {
  static const EquianharmonicContext instance;
  return instance;
}

MeroFn wp_log_derivative() {
  return MeroFn([](Complex z) {
    const WpValue v = wp(z, ctx());
    return MeroValue{v.dp / v.p, v.at_pole};
  });
}

MeroFn wp_fn() {
  return MeroFn([](Complex z) {
    const WpValue v = wp(z, ctx());
    return MeroValue{v.p, v.at_pole};
  });
}

const double kInvSqrt3 = 1.0 / std::sqrt(3.0);

}  // namespace

TEST_CASE("disk sampling is seeded and stays inside") {
  const Disk d{Complex(1.0, -2.0), 0.5};
  const auto a = sample_disk(d, 300, 9);
  const auto b = sample_disk(d, 300, 9);
  const auto c = sample_disk(d, 300, 10);
  REQUIRE(a.size() == 300);
  CHECK(std::memcmp(a.data(), b.data(), a.size() * sizeof(Complex)) == 0);
  CHECK(a != c);
  for (Complex z : a) {
    CHECK(std::abs(z - d.center) <= 0.5);
  }
}

TEST_CASE("report bookkeeping") {
  const MeroFn one = MeroFn::analytic([](Complex) { return Complex(1.0, 0.0); });
  const MeroFn half_poles([](Complex z) { return MeroValue{0.0, z.real() > 0.0}; });
  const VerificationReport r =
      verify_equation(one, half_poles, 1, 1, Expr::real(1.0), AffineMap::identity(), Disk{}, 400, 1e-12, 5);
  CHECK(r.samples_requested == 400);
  CHECK(r.samples_used + r.skipped_near_pole == 400);
  CHECK(r.skipped_near_pole > 150);
  CHECK(r.max_residual == 0.0);
  CHECK(r.passed == (2 * r.samples_used >= 400));
  CHECK(r.seed == 5);
  CHECK(r.tolerance == 1e-12);

  const MeroFn all_poles([](Complex) { return MeroValue{0.0, true}; });
  const VerificationReport none =
      verify_equation(one, all_poles, 1, 1, Expr::real(1.0), AffineMap::identity(), Disk{}, 10, 1e-8, 1);
  CHECK(none.samples_used == 0);
  CHECK_FALSE(none.passed);
}

TEST_CASE("residual is relative to the right-hand side") {
  const MeroFn f = MeroFn::analytic([](Complex z) { return std::exp(z); });
  const MeroFn zero = MeroFn::analytic([](Complex) { return Complex(0.0, 0.0); });
  const Expr rhs = parse("exp(z) + 1e-9*exp(z)");
  const VerificationReport r = verify_equation(f, zero, 1, 1, rhs, AffineMap::identity(), Disk{}, 50, 1e-8, 3);
  CHECK(r.passed);
  CHECK(r.max_residual < 1e-9);
  CHECK(r.max_residual > 1e-10);
}

TEST_CASE("argument validation") {
  const MeroFn one = MeroFn::analytic([](Complex) { return Complex(1.0, 0.0); });
  CHECK_THROWS_AS(verify_equation(one, one, 1, 1, Expr::real(2.0), AffineMap::identity(), Disk{0.0, 0.0}, 10, 1e-8, 1),
                  ParameterError);
  CHECK_THROWS_AS(verify_equation(one, one, 1, 1, Expr::real(2.0), AffineMap::identity(), Disk{}, 0, 1e-8, 1),
                  ParameterError);
  CHECK_THROWS_AS(verify_equation(one, one, 1, 1, Expr::real(2.0), AffineMap::identity(), Disk{}, 10, 0.0, 1),
                  ParameterError);
}

TEST_CASE("cubic pair passes, a wrong cube root fails") {
  const Solution good = cubic_pair(Expr::z(), 1.0, ctx());
  CHECK(verify_equation(good.f, good.g, 3, 3, good.rhs, good.L, Disk{}, 200, 1e-8, 1).passed);
  SolutionOptions loose;
  loose.validate = false;
  const Solution bad = cubic_pair(Expr::z(), 1.01, ctx(), loose);
  CHECK_FALSE(verify_equation(bad.f, bad.g, 3, 3, bad.rhs, bad.L, Disk{}, 200, 1e-8, 1).passed);
}

TEST_CASE("difference equation with exponential right-hand side") {
  const Solution s = example1_solution(2.0, 0.0, ctx());
  const VerificationReport r = verify_equation(s.f, s.g, 3, 3, s.rhs, s.L, Disk{0.0, 0.5}, 100, 1e-7, 1);
  CHECK(r.passed);
}

TEST_CASE("residues") {
  const MeroFn inv([](Complex z) { return MeroValue{1.0 / z, false}; });
  CHECK(std::abs(residue_at(inv, 0.0, 0.5) - 1.0) < 1e-12);
  CHECK(std::abs(residue_at(inv, 2.0, 0.5)) < 1e-12);

  const double w = std::abs(ctx().omega1());
  const Complex lp = ctx().lattice().point(1, -1);
  const Complex at_lattice = residue_at(wp_log_derivative(), lp, 0.2 * w);
  CHECK(std::abs(at_lattice + 2.0) < 1e-8);
  CHECK(std::abs(residue_at(wp_log_derivative(), lp, 0.1 * w) - at_lattice) < 1e-8);

  const Complex at_zero = residue_at(wp_log_derivative(), ctx().theta1(), 0.1 * w);
  CHECK(std::abs(at_zero - 1.0) < 1e-8);
  CHECK(std::abs(residue_at(wp_log_derivative(), ctx().theta1(), 0.05 * w) - at_zero) < 1e-8);

  // Residue of P itself at a lattice point is zero (double pole, no z^-1 term).
  CHECK(std::abs(residue_at(wp_fn(), 0.0, 0.3)) < 1e-10);
}

TEST_CASE("contour through a pole") {
  const MeroFn f([](Complex z) { return MeroValue{1.0 / (z - 0.5), false}; });
  CHECK_THROWS_AS(residue_at(f, 0.0, 0.5), ContourError);
  CHECK_THROWS_AS(residue_at(wp_fn(), ctx().omega1(), std::abs(ctx().omega1())), ContourError);
}

TEST_CASE("orders") {
  CHECK(order_at(wp_fn(), 0.0, 0.3) == -2);
  CHECK(order_at(wp_fn(), ctx().theta2(), 0.3) == 1);
  CHECK(order_at(wp_fn(), ctx().theta1() + ctx().omega1(), 0.3) == 1);
  const MeroFn sn_fn([](Complex z) {
    const SnValue v = sn(z);
    return MeroValue{v.s, v.at_pole};
  });
  CHECK(order_at(sn_fn, sn_nearest_pole(0.0), 0.3) == -1);
  CHECK(order_at(sn_fn, 0.0, 0.3) == 1);
  const MeroFn cube = MeroFn::analytic([](Complex z) { return z * z * z; });
  CHECK(order_at(cube, 0.0, 1.0) == 3);
  CHECK(order_at(cube, 2.0, 1.0) == 0);

  const MeroFn root = MeroFn::analytic([](Complex z) { return std::sqrt(z); });
  CHECK_THROWS_AS(order_at(root, 0.0, 0.5), InconclusiveError);
}

TEST_CASE("log-derivative residue equals the integer order") {
  const double w = std::abs(ctx().omega1());
  for (Complex center : {Complex(0.0, 0.0), ctx().theta1(), ctx().theta2(), ctx().omega2()}) {
    const Complex res = residue_at(wp_log_derivative(), center, 0.1 * w);
    CHECK(std::abs(res - static_cast<double>(order_at(wp_fn(), center, 0.1 * w))) < 1e-6);
  }
}

TEST_CASE("residue identity on synthetic poles") {
  const Complex A = std::polar(1.0, kPi / 3.0);
  const Complex eta(-0.5, -0.5 * std::sqrt(3.0));

  // h = z, L = z + omega1: both compositions have double poles at 0.
  const ResidueIdentity simple =
      residue_identity_check(Expr::z(), AffineMap::shift(ctx().omega1()), A, eta, 0.0, ctx(), 0.3);
  CHECK(std::abs(simple.lhs + 2.0 * kInvSqrt3) < 1e-8);
  CHECK(std::abs(simple.rhs - A * eta * 2.0 * kInvSqrt3) < 1e-8);
  CHECK(std::abs(simple.lhs / simple.rhs * A * eta + 1.0) < 1e-8);

  // h = z^2 (z - 1), L = z + 1: P(h) has a pole of order 4 at 0, P(h o L) of order 2.
  const Expr h = parse("z^2*(z - 1)");
  CHECK(order_at(MeroFn([&h](Complex z) {
                   const WpValue v = wp(eval(h, z), ctx());
                   return MeroValue{v.p, v.at_pole};
                 }),
                 0.0, 0.2) == -4);
  const ResidueIdentity uneven = residue_identity_check(h, AffineMap::shift(1.0), A, eta, 0.0, ctx(), 0.2);
  CHECK(std::abs(uneven.lhs + 2.0 * kInvSqrt3) < 1e-8);
  CHECK(std::abs(uneven.rhs - A * eta * 4.0 * kInvSqrt3) < 1e-8);
  CHECK(std::abs(uneven.lhs / uneven.rhs * A * eta + 0.5) < 1e-8);

  const ResidueIdentity regular =
      residue_identity_check(Expr::z(), AffineMap::shift(ctx().omega1()), A, eta, 0.7, ctx(), 0.2);
  CHECK(std::abs(regular.lhs) < 1e-10);
  CHECK(std::abs(regular.rhs) < 1e-10);

  CHECK_THROWS_AS(residue_identity_check(Expr::z(), AffineMap::shift(ctx().omega1()), A, eta, 0.0, ctx(), 2.0),
                  ContourError);
}
