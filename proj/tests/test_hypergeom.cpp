#include <cmath>
#include <numbers>

#include "doctest.h"
#include "jacobi/errors.hpp"
#include "jacobi/hypergeom.hpp"
#include "jacobi/quadrature.hpp"
#include "support.hpp"

using namespace jacobi;
using testing_support::random_complex;
using testing_support::rel_err;

TEST_CASE("generalized series examples") {
  CHECK(phyp({{0.3, 2.0}, {1.5}, 0.0}).value == Complex(1.0));
  const SeriesValue s32 = phyp({{-1.0, 2.0, 1.0}, {3.0, 4.0}, 1.0});
  CHECK(rel_err(s32.value, 5.0 / 6.0) < 1e-15);
  CHECK(s32.terminated);
  CHECK(s32.terms_used == 2);
  const SeriesValue s21 = phyp({{-2.0, 3.0}, {1.0}, 0.3});
  CHECK(rel_err(s21.value, -0.26) < 1e-14);
  CHECK(s21.terms_used == 3);
}

TEST_CASE("generalized series errors") {
  CHECK_THROWS_AS(phyp({{1.0, 1.0, 1.0}, {2.0}, 0.1}), DivergentError);
  CHECK_THROWS_AS(phyp({{1.0, 1.0}, {2.0}, 1.0}), ContinuationRequired);
  CHECK_THROWS_AS(phyp({{1.0, 1.0}, {-2.0}, 0.1}), LowerPoleError);
  // Shielded: the upper -1 stops the sum before the lower pole at k = 3.
  CHECK(rel_err(phyp({{-1.0, 1.0}, {-2.0}, 0.1}).value, 1.0 + 0.05) < 1e-15);
  CHECK_THROWS_AS(phyp({{-3.0, 1.0}, {-2.0}, 0.1}), LowerPoleError);
}

TEST_CASE("elementary closed forms of 2F1") {
  CHECK(gauss2f1(1.3, -0.2, 0.7, 0.0).value == Complex(1.0));
  CHECK(rel_err(gauss2f1(1.0, 1.0, 2.0, 0.5).value, 2.0 * std::log(2.0)) < 1e-14);
  CHECK(rel_err(gauss2f1(-2.0, 3.0, 1.0, 0.3).value, -0.26) < 1e-14);
  std::mt19937_64 rng(17);
  for (int i = 0; i < 200; ++i) {
    const Complex z = random_complex(rng, -6.0, 6.0, 6.0);
    if (std::abs(z.imag()) < 1e-3 && z.real() > 1.0) continue;
    // -log(1-z)/z
    CHECK(rel_err(gauss2f1(1.0, 1.0, 2.0, z).value, -std::log(1.0 - z) / z) < 1e-12);
    // (1-z)^{-a}
    const Complex a(0.37, -0.8);
    CHECK(rel_err(gauss2f1(a, 0.9, 0.9, z).value, std::pow(1.0 - z, -a)) < 1e-12);
    // asin(sqrt z)/sqrt(z(1-z))  = 2F1(1,1;3/2;z)
    const Complex s = std::sqrt(z);
    CHECK(rel_err(gauss2f1(1.0, 1.0, 1.5, z).value,
                  std::asin(s) / (s * std::sqrt(1.0 - z))) < 1e-11);
  }
}

TEST_CASE("regularized 2F1") {
  CHECK(rel_err(ohyp2f1(1.0, 1.0, 2.0, 0.0).value, 1.0) < 1e-15);
  CHECK(ohyp2f1(0.4, 1.1, -1.0, 0.0).value == Complex(0.0));
  CHECK(rel_err(ohyp2f1(1.0, 1.0, -1.0, 0.5).value, 4.0) < 1e-13);
  std::mt19937_64 rng(23);
  for (int i = 0; i < 200; ++i) {
    const Complex a = random_complex(rng, -3.0, 3.0, 1.0);
    const Complex b = random_complex(rng, -3.0, 3.0, 1.0);
    const Complex c = random_complex(rng, -3.0, 3.0, 1.0);
    const Complex z = random_complex(rng, -3.0, 3.0, 2.0);
    if (distance_to_nonpositive_integers(c) < 0.1) continue;
    if (std::abs(z.imag()) < 0.05 && z.real() > 0.9) continue;
    const Complex lhs = ohyp2f1(a, b, c, z).value * jacobi::gamma(c);
    CHECK(rel_err(lhs, gauss2f1(a, b, c, z).value) < 1e-10);
  }
  // Limit c -> -m: F~(a,b;-m;z) = (a)_{m+1}(b)_{m+1}/(m+1)! z^{m+1} F(a+m+1,b+m+1;m+2;z)
  for (int m = 0; m < 4; ++m) {
    const Complex a(0.3, 0.2), b(-1.7, 0.1), z(0.3, -0.4);
    const Complex want = pochhammer(a, m + 1) * pochhammer(b, m + 1) / factorial(m + 1) *
                         std::pow(z, m + 1) *
                         gauss2f1(a + double(m + 1), b + double(m + 1), double(m + 2), z).value;
    CHECK(rel_err(ohyp2f1(a, b, -double(m), z).value, want) < 1e-12);
  }
}

TEST_CASE("termination bookkeeping") {
  for (int m = 0; m < 8; ++m) {
    const SeriesValue s = gauss2f1(-double(m), 2.5, 1.25, 0.4);
    CHECK(s.terminated);
    CHECK(s.terms_used == m + 1);
  }
}

TEST_CASE("transformed and direct series agree on the overlap") {
  std::mt19937_64 rng(31);
  int checked = 0;
  while (checked < 200) {
    const Complex a = random_complex(rng, -2.0, 3.0, 0.5);
    const Complex b = random_complex(rng, -2.0, 3.0, 0.5);
    const Complex c = random_complex(rng, 0.2, 3.0, 0.5);
    const Complex z = random_complex(rng, -0.75, 0.75, 0.75);
    const double r = std::abs(z);
    if (r < 0.4 || r > 0.75) continue;
    const Complex direct = phyp({{a, b}, {c}, z}).value;
    if (std::abs(z / (z - 1.0)) > 0.9) continue;
    const Complex pfaff =
        std::pow(1.0 - z, -a) * phyp({{a, c - b}, {c}, z / (z - 1.0)}).value;
    const Complex euler =
        std::pow(1.0 - z, c - a - b) * phyp({{c - a, c - b}, {c}, z}).value;
    ++checked;
    CHECK(rel_err(pfaff, direct) < 1e-10);
    CHECK(rel_err(euler, direct) < 1e-10);
    CHECK(rel_err(gauss2f1(a, b, c, z).value, direct) < 1e-10);
  }
}

TEST_CASE("path selection and cut handling") {
  CHECK(gauss2f1(0.5, 0.25, 1.5, 0.3).path == HypPath::kDirect);
  CHECK(gauss2f1(0.5, 0.25, 1.5, -2.0).path == HypPath::kPfaff);
  CHECK(gauss2f1(0.5, 0.25, 1.5, Complex(0.5, 3.0)).path == HypPath::kContinuation);
  CHECK(gauss2f1(0.5, 2.5, 1.5, Complex(0.5, 3.0)).path == HypPath::kEuler);
  CHECK_THROWS_AS(gauss2f1(0.5, 0.25, 1.5, 1.0), CutError);
  CHECK_THROWS_AS(gauss2f1(0.5, 0.25, 1.5, 3.0), CutError);
  CHECK_THROWS_AS(gauss2f1(0.5, 0.25, 1.5, Complex(0.5, 3.0), Continuation::kSeriesOnly),
                  NoConvergentPath);
  CHECK_THROWS_AS(gauss2f1(0.5, 0.25, -2.0, 0.3), LowerPoleError);
  // Terminating series are polynomials and ignore the cut.
  CHECK(rel_err(gauss2f1(-2.0, 3.0, 1.0, 4.0).value, 1.0 - 24.0 + 96.0) < 1e-14);
}

TEST_CASE("continuation near the unit circle") {
  // 2F1(a,b;c;z) for z = e^{i theta}: compare against the Pfaff-transformed
  // series evaluated at its own (smaller) argument.
  const Complex a(0.3, 0.1), b(1.2, -0.2), c(2.1, 0.3);
  for (double theta = 0.6; theta < 3.1; theta += 0.3) {
    const Complex z = std::polar(1.4, theta);
    const Complex got = gauss2f1(a, b, c, z).value;
    const Complex alt =
        std::pow(1.0 - z, -b) * gauss2f1(b, c - a, c, z / (z - 1.0)).value;
    CHECK(rel_err(got, alt) < 1e-11);
  }
}

TEST_CASE("reversed finite series") {
  const auto [d0, r0] = reverse_finite_series({0.3, 2.0, 1.0}, {1.5, 0.7}, 0, 0.4);
  CHECK(d0.value == Complex(1.0));
  CHECK(r0.value == Complex(1.0));

  const auto [d2, r2] = reverse_finite_series({1.0, 1.0, 1.0}, {2.0, 2.0}, 2, 0.5);
  const Complex direct2 = 1.0 + 0.5 / 4.0 + 0.25 / 9.0;
  CHECK(rel_err(d2.value, direct2) < 1e-15);
  CHECK(rel_err(r2.value, direct2) < 1e-14);

  const auto [d1, r1] = reverse_finite_series({-5.0, 2.0, 1.0}, {3.0, 4.0}, 1, 2.0);
  const Complex direct1 = 1.0 + (-5.0 * 2.0 * 1.0) / (3.0 * 4.0) * 2.0;
  CHECK(rel_err(d1.value, direct1) < 1e-15);
  CHECK(rel_err(r1.value, direct1) < 1e-14);

  CHECK_THROWS_AS(reverse_finite_series({1.0, 1.0, 1.0}, {2.0, 2.0}, 2, 0.0), ZeroArgument);

  std::mt19937_64 rng(41);
  for (int i = 0; i < 50; ++i) {
    const Complex a1 = random_complex(rng, -2.0, 2.0, 1.0);
    const Complex a2 = random_complex(rng, -2.0, 2.0, 1.0);
    const Complex b1 = random_complex(rng, 0.5, 3.0, 1.0);
    const Complex z = random_complex(rng, -3.0, 3.0, 3.0);
    const int m = 1 + static_cast<int>(rng() % 6);
    const auto [d, r] = reverse_finite_series({a1, a2, 1.0}, {b1, 2.0}, m, z);
    CHECK(rel_err(r.value, d.value) < 1e-11);
  }
}

TEST_CASE("derivative relations of the regularized 2F1") {
  const std::vector<Cut> cuts{{-std::numeric_limits<double>::infinity(), 0.0},
                              {1.0, std::numeric_limits<double>::infinity()}};
  std::mt19937_64 rng(53);
  int checked = 0;
  while (checked < 40) {
    const Complex a = random_complex(rng, -1.5, 2.5, 0.5);
    const Complex b = random_complex(rng, -1.5, 2.5, 0.5);
    const Complex c = random_complex(rng, 0.2, 3.0, 0.5);
    const Complex w = random_complex(rng, 0.05, 0.5, 0.5);
    if (std::abs(w) > 0.5 || std::abs(w.imag()) < 0.1 && w.real() < 0.15) continue;
    ++checked;
    auto F = [](Complex a_, Complex b_, Complex c_, Complex x) {
      return ohyp2f1(a_, b_, c_, x).value;
    };
    const Complex e1 = a + b - c;
    for (int n = 1; n <= 3; ++n) {
      const double nd = n;
      // (der2)
      const Complex d2 = contour_derivative([&](Complex x) { return F(a, b, c, x); }, w, n, 0.0, cuts);
      CHECK(rel_err(d2, pochhammer(a, n) * pochhammer(b, n) * F(a + nd, b + nd, c + nd, w)) < 1e-8);
      // (der4)
      const Complex d4 = contour_derivative(
          [&](Complex x) { return std::pow(x, c - 1.0) * F(a, b, c, x); }, w, n, 0.0, cuts);
      CHECK(rel_err(d4, std::pow(w, c - nd - 1.0) * F(a, b, c - nd, w)) < 1e-8);
      // (der6)
      const Complex d6 = contour_derivative(
          [&](Complex x) { return std::pow(1.0 - x, e1) * F(a, b, c, x); }, w, n, 0.0, cuts);
      CHECK(rel_err(d6, pochhammer(c - a, n) * pochhammer(c - b, n) *
                            std::pow(1.0 - w, e1 - nd) * F(a, b, c + nd, w)) < 1e-8);
      // (der9)
      const Complex d9 = contour_derivative(
          [&](Complex x) { return std::pow(x, c - 1.0) * std::pow(1.0 - x, e1) * F(a, b, c, x); },
          w, n, 0.0, cuts);
      CHECK(rel_err(d9, std::pow(w, c - nd - 1.0) * std::pow(1.0 - w, e1 - nd) *
                            F(a - nd, b - nd, c - nd, w)) < 1e-8);
    }
  }
}
