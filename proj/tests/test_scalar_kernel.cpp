#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "jacobi/errors.hpp"
#include "jacobi/scalar_kernel.hpp"
#include "support.hpp"

using namespace jacobi;
using testing_support::random_complex;
using testing_support::rel_err;

TEST_CASE("gamma at integers and half integers") {
  CHECK(rel_err(jacobi::gamma(5.0), 24.0) < 1e-14);
  CHECK(rel_err(jacobi::gamma(0.5), std::sqrt(std::numbers::pi)) < 1e-14);
  CHECK(rel_err(jacobi::gamma(-0.5), -2.0 * std::sqrt(std::numbers::pi)) < 1e-14);
  double f = 1.0;
  for (int n = 1; n <= 30; ++n) {
    CHECK(rel_err(jacobi::gamma(static_cast<double>(n)), f) < 1e-13);
    f *= n;
  }
  CHECK_THROWS_AS(jacobi::gamma(-3.0), PoleError);
  CHECK_THROWS_AS(jacobi::gamma(0.0), PoleError);
}

TEST_CASE("gamma matches the real library function and the functional equation") {
  for (double x = -7.3; x < 40.0; x += 0.37) {
    CHECK(rel_err(jacobi::gamma(x), std::tgamma(x)) < 1e-13);
  }
  std::mt19937_64 rng(11);
  for (int i = 0; i < 200; ++i) {
    const Complex z = random_complex(rng, -20.0, 45.0, 8.0);
    if (distance_to_nonpositive_integers(z) < 0.05) continue;
    CHECK(rel_err(jacobi::gamma(z + 1.0), z * jacobi::gamma(z)) < 1e-12);
    CHECK(rel_err(std::exp(log_gamma(z)), jacobi::gamma(z)) < 1e-11);
  }
}

TEST_CASE("gamma for complex argument against the reflection identity") {
  // |Gamma(iy)|^2 = pi / (y sinh(pi y))
  for (double y = 0.25; y < 6.0; y += 0.5) {
    const double want = std::numbers::pi / (y * std::sinh(std::numbers::pi * y));
    CHECK(std::abs(std::norm(jacobi::gamma(Complex(0.0, y))) - want) / want < 1e-13);
  }
}

TEST_CASE("reciprocal gamma is entire and vanishes at the poles") {
  CHECK(reciprocal_gamma(1.0) == Complex(1.0));
  CHECK(reciprocal_gamma(0.0) == Complex(0.0));
  CHECK(reciprocal_gamma(-2.0) == Complex(0.0));
  std::mt19937_64 rng(3);
  for (int i = 0; i < 100; ++i) {
    const Complex z = random_complex(rng, -10.0, 30.0, 5.0);
    if (distance_to_nonpositive_integers(z) < 0.01) continue;
    CHECK(std::abs(jacobi::gamma(z) * reciprocal_gamma(z) - 1.0) < 1e-12);
  }
  // Small circles around poles: the value shrinks linearly with the radius.
  for (int p = 0; p <= 5; ++p) {
    for (double r : {1e-3, 1e-6, 1e-9}) {
      for (int j = 0; j < 8; ++j) {
        const Complex z = -static_cast<double>(p) + std::polar(r, j * std::numbers::pi / 4);
        const double expected = factorial(p) * r;  // |1/Gamma| ~ p! r
        CHECK(std::abs(reciprocal_gamma(z)) == doctest::Approx(expected).epsilon(1e-2));
      }
    }
  }
}

TEST_CASE("pochhammer examples and exact zeros") {
  CHECK(pochhammer(5.0, 0) == Complex(1.0));
  CHECK(pochhammer(1.0, 4) == Complex(24.0));
  CHECK(pochhammer(-3.0, 2) == Complex(6.0));
  CHECK(pochhammer(-3.0, 5) == Complex(0.0));
  CHECK(rel_err(pochhammer(2.5, -2), 1.0 / (0.5 * 1.5)) < 1e-15);
  CHECK_THROWS_AS(pochhammer(1.0, -2), UndefinedError);
}

TEST_CASE("pochhammer addition and reflection laws") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 200; ++i) {
    const Complex a = random_complex(rng, -6.0, 6.0, 3.0);
    const int m = static_cast<int>(rng() % 9);
    const int n = static_cast<int>(rng() % 9);
    CHECK(rel_err(pochhammer(a, m + n), pochhammer(a, m) * pochhammer(a + double(m), n)) <
          1e-12);
    if (distance_to_nonpositive_integers(a) > 0.05 &&
        distance_to_nonpositive_integers(a - double(n)) > 0.05) {
      const double sign = n % 2 == 0 ? 1.0 : -1.0;
      CHECK(rel_err(jacobi::gamma(a - double(n)) * pochhammer(1.0 - a, n), sign * jacobi::gamma(a)) < 1e-11);
    }
  }
  for (int n = 0; n <= 12; ++n) {
    for (int k = 0; k <= n; ++k) {
      const double sign = k % 2 == 0 ? 1.0 : -1.0;
      CHECK(pochhammer(Complex(-n), k) == Complex(sign * factorial(n) / factorial(n - k)));
    }
  }
}

TEST_CASE("binomial and product conventions") {
  CHECK(binomial(Complex(0.3, 2.0), 0) == Complex(1.0));
  CHECK(binomial(4.0, 2) == Complex(6.0));
  CHECK(binomial(-1.0, 3) == Complex(-1.0));
  CHECK(pochhammer_product(std::vector<Complex>{}, 3) == Complex(1.0));
  CHECK(pochhammer_product(std::vector<Complex>{1.0, 2.0}, 2) == Complex(12.0));
  CHECK(pochhammer_product(std::vector<Complex>{-1.0}, 3) == Complex(0.0));
}

TEST_CASE("principal branch conventions") {
  CHECK(principal_log(Complex(-2.0, 0.0)).imag() == doctest::Approx(std::numbers::pi));
  CHECK(principal_log(Complex(-2.0, -0.0)).imag() == doctest::Approx(std::numbers::pi));
  // atan2 rounds to -pi here; the point is still below the cut
  CHECK(principal_log(Complex(-3e16, -1.0)).imag() < 0.0);
  CHECK(principal_pow(Complex(-8.0, 0.0), 3.0) == Complex(-512.0));
  CHECK(principal_pow(Complex(2.0, 1.0), -2.0) == 1.0 / Complex(3.0, 4.0));
  CHECK(rel_err(principal_pow(Complex(-4.0, 0.0), 0.5), Complex(0.0, 2.0)) < 1e-15);
  CHECK(sin_pi(Complex(3.0)) == Complex(0.0));
  CHECK(sin_pi(Complex(2.5)).real() == doctest::Approx(1.0));
}
