#include <cmath>

#include "doctest.h"
#include "fermat/lattice.hpp"
#include "test_helpers.hpp"

using namespace fermat;
using testing::kI;

namespace {

Lattice hex() { return Lattice(Complex(3.0, 0.0), 3.0 * std::polar(1.0, kPi / 3.0)); }

}  // namespace

TEST_CASE("generators must be independent and finite") {
  CHECK_THROWS_AS(Lattice(Complex(1.0, 0.0), Complex(2.0, 0.0)), ParameterError);
  CHECK_THROWS_AS(Lattice(Complex(1.0, 0.0), Complex(0.0, 0.0)), ParameterError);
  CHECK_THROWS_AS(Lattice(Complex(1.0, 0.0), Complex(NAN, 1.0)), DomainError);
  CHECK_NOTHROW(Lattice(Complex(1.0, 0.0), kI));
}

TEST_CASE("coordinates invert point") {
  const Lattice lat = hex();
  const auto [x, y] = lat.coordinates(lat.point(3, -7) + 0.25 * lat.omega1() - 0.125 * lat.omega2());
  CHECK(x == doctest::Approx(3.25).epsilon(1e-14));
  CHECK(y == doctest::Approx(-7.125).epsilon(1e-14));
}

TEST_CASE("reduction lands in the centered cell and round-trips") {
  const Lattice lat = hex();
  for (Complex z : testing::square_points(500, 40.0, 7)) {
    const CellCoords cc = reduce_to_cell(z, lat);
    const auto [x, y] = lat.coordinates(cc.reduced);
    CHECK(x >= -0.5 - 1e-12);
    CHECK(x < 0.5 + 1e-12);
    CHECK(y >= -0.5 - 1e-12);
    CHECK(y < 0.5 + 1e-12);
    CHECK(std::abs(cc.reduced + lat.point(cc.mu, cc.nu) - z) < 1e-12 * (1.0 + std::abs(z)));
  }
}

TEST_CASE("half-way coordinates go to the lower edge") {
  const Lattice lat(Complex(1.0, 0.0), kI);
  const CellCoords cc = reduce_to_cell(Complex(0.5, 0.0), lat);
  CHECK(cc.reduced.real() == doctest::Approx(-0.5));
  CHECK(cc.mu == 1);
}

TEST_CASE("non-finite input is a domain error") {
  CHECK_THROWS_AS(reduce_to_cell(Complex(INFINITY, 0.0), hex()), DomainError);
  CHECK_THROWS_AS(reduce_to_cell(Complex(0.0, NAN), hex()), DomainError);
}

TEST_CASE("lattice membership and distance") {
  const Lattice lat = hex();
  CHECK(is_lattice_point(lat.point(5, -2), lat, 1e-12));
  CHECK(is_lattice_point(lat.point(5, -2) + 1e-9, lat, 1e-8));
  CHECK_FALSE(is_lattice_point(lat.point(5, -2) + 1e-6, lat, 1e-8));
  CHECK(distance_to_lattice(lat.point(-4, 9) + Complex(0.1, -0.05), lat) ==
        doctest::Approx(std::abs(Complex(0.1, -0.05))));
  const auto [mu, nu] = nearest_lattice_point(lat.point(-4, 9) + Complex(0.2, 0.3), lat);
  CHECK(mu == -4);
  CHECK(nu == 9);
}

TEST_CASE("sixth roots of unity are exactly the rotations of the hexagonal lattice") {
  const Lattice lat = hex();
  for (int k = 0; k < 6; ++k) {
    CHECK(check_rotation_bijection(std::polar(1.0, k * kPi / 3.0), lat, 1e-9));
  }
  CHECK_FALSE(check_rotation_bijection(std::polar(1.0, kPi / 4.0), lat, 1e-9));
  CHECK_FALSE(check_rotation_bijection(std::polar(1.0, kPi / 2.0), lat, 1e-9));
  CHECK_THROWS_AS(check_rotation_bijection(Complex(1.1, 0.0), lat, 1e-9), ParameterError);
}

TEST_CASE("the square lattice admits the quarter turn") {
  const Lattice sq(Complex(1.0, 0.0), kI);
  CHECK(check_rotation_bijection(kI, sq, 1e-12));
  CHECK_FALSE(check_rotation_bijection(std::polar(1.0, kPi / 3.0), sq, 1e-9));
}
