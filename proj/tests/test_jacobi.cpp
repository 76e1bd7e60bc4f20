#include <array>
#include <cmath>

#include "doctest.h"
#include "fermat/jacobi.hpp"
#include "test_helpers.hpp"

using namespace fermat;
using testing::kI;

namespace {

double rel(Complex a, Complex b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

const double K = sn_quarter_period();

double distance_to_pole(Complex z) {
  // Poles sit at (2a+1)K + (2b+1)iK.
  const double x = z.real() / K;
  const double y = z.imag() / K;
  const double px = 2.0 * std::floor(0.5 * (x - 1.0) + 0.5) + 1.0;
  const double py = 2.0 * std::floor(0.5 * (y - 1.0) + 0.5) + 1.0;
  return K * std::hypot(x - px, y - py);
}

}  // namespace

TEST_CASE("quarter period matches the gamma-function closed form") {
  CHECK(std::abs(K - testing::gamma_quarter_period()) < 1e-13);
  CHECK(K == doctest::Approx(1.31102877714606).epsilon(1e-13));
}

TEST_CASE("normalization") {
  const SnValue origin = sn(Complex(0.0, 0.0));
  CHECK(std::abs(origin.s) < 1e-15);
  CHECK(std::abs(origin.ds - 1.0) < 1e-15);
  CHECK(std::abs(sn(Complex(K, 0.0)).s - 1.0) < 1e-12);
  CHECK(std::abs(sn(Complex(K, 0.0)).ds) < 1e-7);
  CHECK(std::abs(sn(Complex(0.0, K)).s - kI) < 1e-12);
}

TEST_CASE("values agree with an external elliptic-function library") {
  struct Ref {
    Complex z, s, ds;
  };
  // sn(z | m = -1) and cn*dn at 30 digits.
  const std::array<Ref, 5> refs{{
      {{0.5, 0.3}, {0.5061093185362566639, 0.29706738057885845524}, {1.0318058501881786783, -0.048930069636358850379}},
      {{1.5, 1.2}, {2.3102406641183160963, -3.9338020845136284833}, {-18.197040197576629247, 10.125898315399519158}},
      {{2.5, -1.7}, {-0.083250004660222319101, 0.86864985173695534528}, {0.69716193578139787922, -0.15509843604581559406}},
      {{-0.9, 0.4}, {-0.93981823603788994048, 0.31582451870345271008}, {0.98139156330553623114, 0.47394036454031805654}},
      {{4.1, 3.3}, {1.4969638385665897877, -0.36969782706292073289}, {-1.2144942924695723545, -1.9177180074598243555}},
  }};
  for (const Ref& r : refs) {
    const SnValue v = sn(r.z);
    CHECK(rel(v.s, r.s) < 1e-12);
    CHECK(rel(v.ds, r.ds) < 1e-12);
  }
}

TEST_CASE("first integral on random points") {
  for (Complex z : testing::square_points(500, 6.0, 41)) {
    if (distance_to_pole(z) < 0.05) {
      continue;
    }
    const SnValue v = sn(z);
    const Complex s2 = v.s * v.s;
    CHECK(std::abs(v.ds * v.ds + s2 * s2 - 1.0) <= 1e-10 * (1.0 + std::norm(s2)));
  }
}

TEST_CASE("symmetries") {
  for (Complex z : testing::square_points(200, 3.0, 43)) {
    if (distance_to_pole(z) < 0.1 || distance_to_pole(kI * z) < 0.1) {
      continue;
    }
    const SnValue v = sn(z);
    CHECK(rel(sn(-z).s, -v.s) < 1e-12);
    CHECK(rel(sn(z + 2.0 * K).s, -v.s) < 1e-11);
    CHECK(rel(sn(z + 2.0 * K * kI).s, -v.s) < 1e-11);
    CHECK(rel(sn(z + Complex(4.0 * K, 4.0 * K)).s, v.s) < 1e-11);
    CHECK(rel(sn(kI * z).s, kI * v.s) < 1e-11);
  }
}

TEST_CASE("integration paths around poles agree") {
  const Complex target(2.2, 1.9);
  const std::array<Complex, 2> below{Complex(2.5, -0.4), target};
  const std::array<Complex, 3> around{Complex(-1.0, 2.0), Complex(0.5, 3.5), target};
  const SnValue reduced = sn(target);
  CHECK(rel(sn_along_path(below).s, reduced.s) < 1e-11);
  CHECK(rel(sn_along_path(around).s, reduced.s) < 1e-11);
  CHECK(rel(sn_along_path(around).ds, reduced.ds) < 1e-11);
}

TEST_CASE("poles") {
  const Complex pole(K, K);
  CHECK(sn(pole).at_pole);
  CHECK(sn(pole + Complex(1e-10, 0.0)).at_pole);
  CHECK_FALSE(sn(pole + Complex(1e-3, 0.0)).at_pole);
  const auto [u, du] = sn_reciprocal(pole);
  CHECK(std::abs(u) < 1e-10);
  CHECK(std::abs(du) > 0.5);
  const Complex nearest = sn_nearest_pole(Complex(0.0, 0.0));
  CHECK(std::abs(nearest) == doctest::Approx(K * std::sqrt(2.0)).epsilon(1e-12));
  CHECK(distance_to_pole(nearest) < 1e-12);
  CHECK(std::abs(sn_nearest_pole(Complex(3.0, -2.5)) - Complex(3.0 * K, -K)) < 1e-10);
}
