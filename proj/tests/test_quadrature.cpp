#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "jacobi/errors.hpp"
#include "jacobi/quadrature.hpp"
#include "support.hpp"

using namespace jacobi;
using testing_support::random_complex;
using testing_support::rel_err;

namespace {

// Moments of (1-t)^a (1+t)^b from the integration-by-parts recurrence
// (k+a+b+2) M_{k+1} = k M_{k-1} + (b-a) M_k.
std::vector<long double> jacobi_moments(int k_max, double a, double b) {
  std::vector<long double> m(k_max + 1);
  const long double mu0 = std::pow(2.0L, a + b + 1.0) * std::tgamma(a + 1.0L) *
                          std::tgamma(b + 1.0L) / std::tgamma(a + b + 2.0L);
  m[0] = mu0;
  if (k_max >= 1) m[1] = (b - a) * mu0 / (a + b + 2.0);
  for (int k = 1; k < k_max; ++k) {
    m[k + 1] = (k * m[k - 1] + (b - a) * m[k]) / (k + a + b + 2.0);
  }
  return m;
}

// Gauss-Legendre along the segment [a, b].
Complex legendre_segment(const std::function<Complex(Complex)>& f, Complex a, Complex b,
                         const QuadratureRule& rule) {
  Complex sum = 0.0;
  for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
    const double t = rule.nodes[j];
    sum += rule.weights[j] * f(a + (b - a) * (1.0 + t) / 2.0);
  }
  return sum * (b - a) / 2.0;
}

}  // namespace

TEST_CASE("Gauss-Jacobi rule examples") {
  const QuadratureRule r2 = gauss_jacobi_rule(2, 0.0, 0.0);
  CHECK(r2.nodes[0] == doctest::Approx(-0.5773502692).epsilon(1e-10));
  CHECK(r2.nodes[1] == doctest::Approx(0.5773502692).epsilon(1e-10));
  CHECK(r2.weights[0] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(r2.weights[1] == doctest::Approx(1.0).epsilon(1e-14));

  const QuadratureRule r1 = gauss_jacobi_rule(1, 1.0, 0.0);
  CHECK(r1.nodes[0] == doctest::Approx(-1.0 / 3.0).epsilon(1e-14));
  CHECK(r1.weights[0] == doctest::Approx(2.0).epsilon(1e-14));

  // t^2 (1-t) over [-1,1] = 2/3
  const QuadratureRule r = gauss_jacobi_rule(2, 1.0, 0.0);
  double sum = 0.0;
  for (int j = 0; j < 2; ++j) sum += r.weights[j] * r.nodes[j] * r.nodes[j];
  CHECK(sum == doctest::Approx(2.0 / 3.0).epsilon(1e-14));

  CHECK_THROWS_AS(gauss_jacobi_rule(4, -1.0, 0.0), ExponentError);
}

TEST_CASE("Gauss-Jacobi rules integrate polynomials exactly") {
  const std::vector<double> exps{-0.5, 0.0, 0.7, 2.0};
  for (double a : exps) {
    for (double b : exps) {
      for (int m = 1; m <= 16; ++m) {
        const QuadratureRule rule = gauss_jacobi_rule(m, a, b);
        const auto moments = jacobi_moments(2 * m - 1, a, b);
        double total = 0.0;
        for (double w : rule.weights) total += w;
        CHECK(std::abs(total - static_cast<double>(moments[0])) <= 1e-12 * moments[0]);
        for (int j = 0; j < m; ++j) {
          CHECK(rule.weights[j] > 0.0);
          CHECK(std::abs(rule.nodes[j]) < 1.0);
          if (j > 0) CHECK(rule.nodes[j] > rule.nodes[j - 1]);
        }
        for (int k = 0; k <= 2 * m - 1; ++k) {
          long double sum = 0.0L;
          for (int j = 0; j < m; ++j) sum += rule.weights[j] * std::pow((long double)rule.nodes[j], k);
          // Odd moments vanish for a = b; those are measured against the mass.
          CHECK(std::abs(static_cast<double>(sum - moments[k])) <=
                1e-12 * std::max<double>(std::abs(static_cast<double>(moments[k])),
                                         1e-2 * static_cast<double>(moments[0])));
        }
      }
    }
  }
}

TEST_CASE("weighted finite integrals") {
  const EvalResult r = integrate_finite([](double) { return Complex(1.0); }, -0.5, 0.0);
  CHECK(rel_err(r.value, 2.0 * std::sqrt(2.0)) < 1e-12);
  const EvalResult t2 = integrate_finite([](double t) { return Complex(t * t); }, 0.0, 0.0);
  CHECK(rel_err(t2.value, 2.0 / 3.0) < 1e-14);
  CHECK_THROWS_AS(integrate_finite([](double) { return Complex(1.0); }, -1.1, 0.0),
                  ExponentError);
  // A smooth non-polynomial integrand: int e^t (1-t)^{0.5} dt
  const EvalResult e = integrate_finite([](double t) { return Complex(std::exp(t)); }, 0.5, 0.0);
  const EvalResult ts = integrate_segment(
      [](const PathPoint& p) { return std::exp(p.w) * std::sqrt(p.to_end); }, -1.0, 1.0);
  CHECK(rel_err(e.value, ts.value) < 1e-12);
}

TEST_CASE("tanh-sinh handles complex endpoint exponents") {
  // int_0^1 s^{a} (1-s)^{b} ds = B(a+1, b+1)
  const Complex a(-0.6, 0.4), b(0.3, -1.1);
  const EvalResult r = integrate_tanh_sinh([&](double s, double one_minus_s) {
    return std::pow(Complex(s), a) * std::pow(Complex(one_minus_s), b);
  });
  const Complex beta = jacobi::gamma(a + 1.0) * jacobi::gamma(b + 1.0) / jacobi::gamma(a + b + 2.0);
  CHECK(rel_err(r.value, beta) < 1e-12);
}

TEST_CASE("integrals along a ray to infinity") {
  auto inv_sq = [](const PathPoint& p) { return 1.0 / (p.w * p.w); };
  CHECK(rel_err(integrate_to_infinity(inv_sq, 2.0).value, 0.5) < 1e-12);
  auto expo = [](const PathPoint& p) { return std::exp(-p.w); };
  CHECK(rel_err(integrate_to_infinity(expo, 1.0).value, 0.3678794412) < 1e-10);
  auto inv = [](const PathPoint& p) { return 1.0 / p.w; };
  CHECK_THROWS_AS(integrate_to_infinity(inv, 2.0), DecayCheckFailed);
  // Complex start: int (w)^{-5/2} = (2/3) z^{-3/2}
  const Complex z(1.5, 0.8);
  auto pw = [](const PathPoint& p) { return std::pow(p.w, -2.5); };
  CHECK(rel_err(integrate_to_infinity(pw, z).value, 2.0 / 3.0 * std::pow(z, -1.5)) < 1e-11);
}

TEST_CASE("repeated integral examples") {
  auto one = [](const PathPoint&) { return Complex(1.0); };
  RepeatedIntegralSpec spec;
  spec.order_n = 1;
  spec.lower = 0.5;
  spec.upper = 1.0;
  CHECK(rel_err(repeated_integral(one, spec).value, 0.5) < 1e-13);
  spec.order_n = 2;
  CHECK(rel_err(repeated_integral(one, spec).value, 0.125) < 1e-13);
  spec.order_n = 7;
  CHECK_THROWS_AS(repeated_integral(one, spec), OrderCapExceeded);
}

TEST_CASE("repeated integral equals literally nested quadrature") {
  const QuadratureRule gl = gauss_jacobi_rule(24, 0.0, 0.0);

  SUBCASE("endpoint singularity at the fixed end") {
    auto f = [](Complex w, Complex one_minus_w) {
      return std::pow(one_minus_w, 0.3) * std::pow(1.0 + w, 0.2);
    };
    const double z = 0.4;
    RepeatedIntegralSpec spec;
    spec.order_n = 2;
    spec.lower = z;
    spec.upper = 1.0;
    const Complex reduced =
        repeated_integral([&](const PathPoint& p) { return f(p.w, p.to_end); }, spec).value;
    // inner(w1) = int_{w1}^1 f; both levels use the Jacobi weight that matches
    // the endpoint behaviour at w = 1.
    const QuadratureRule inner_rule = gauss_jacobi_rule(40, 0.3, 0.0);
    const QuadratureRule outer_rule = gauss_jacobi_rule(40, 1.3, 0.0);
    auto inner_smooth = [&](double w1) {
      // int_{w1}^1 (1-w)^{0.3} (1+w)^{0.2} dw = (1-w1)^{1.3} * [this]
      const double half = (1.0 - w1) / 2.0;
      double s = 0.0;
      for (std::size_t j = 0; j < inner_rule.nodes.size(); ++j) {
        const double t = inner_rule.nodes[j];
        s += inner_rule.weights[j] * std::pow(1.0 + w1 + half * (1.0 + t), 0.2);
      }
      return s * std::pow(half, 1.3) / std::pow(1.0 - w1, 1.3);
    };
    const double half = (1.0 - z) / 2.0;
    double outer = 0.0;
    for (std::size_t j = 0; j < outer_rule.nodes.size(); ++j) {
      const double t = outer_rule.nodes[j];
      const double w1 = z + half * (1.0 + t);
      outer += outer_rule.weights[j] * inner_smooth(w1) * std::pow(1.0 - w1, 1.3) /
               std::pow(half * (1.0 - t), 1.3);
    }
    outer *= half * std::pow(half, 1.3);
    CHECK(rel_err(reduced, outer) < 1e-8);
  }

  SUBCASE("seeded smooth integrands, n = 2 and 3") {
    std::mt19937_64 rng(20);
    for (int i = 0; i < 20; ++i) {
      const Complex c1 = random_complex(rng, -1.0, 1.0, 1.0);
      const Complex c2 = random_complex(rng, -2.0, 2.0, 0.5);
      const Complex c3 = random_complex(rng, -1.0, 1.0, 1.0);
      const Complex z = random_complex(rng, -0.5, 2.0, 1.0);
      auto f = [&](Complex w) { return std::exp(c1 * w) * std::cos(c2 * w) + c3 * w * w; };
      // n = 2: int_z^1 int_{w1}^1 f(w2) dw2 dw1
      auto level1 = [&](Complex w1) { return legendre_segment(f, w1, 1.0, gl); };
      const Complex nested2 = legendre_segment(level1, z, 1.0, gl);
      auto level2 = [&](Complex w1) { return legendre_segment(level1, w1, 1.0, gl); };
      const Complex nested3 = legendre_segment(level2, z, 1.0, gl);
      RepeatedIntegralSpec spec;
      spec.lower = z;
      spec.upper = 1.0;
      spec.order_n = 2;
      auto pf = [&](const PathPoint& p) { return f(p.w); };
      CHECK(rel_err(repeated_integral(pf, spec).value, nested2) < 1e-7);
      spec.order_n = 3;
      CHECK(rel_err(repeated_integral(pf, spec).value, nested3) < 1e-7);

      // Free upper end with a singular measure: int_1^z (w-1)^{-2} int_1^{w1} ... dw.
      auto g = [&](Complex w) { return std::pow(w - 1.0, 4) * f(w); };
      auto m1 = [&](Complex w1) {
        return legendre_segment([&](Complex w) { return g(w) / ((w - 1.0) * (w - 1.0)); },
                                1.0, w1, gl);
      };
      const Complex nested_sq = legendre_segment(
          [&](Complex w1) { return m1(w1) / ((w1 - 1.0) * (w1 - 1.0)); }, 1.0, z, gl);
      RepeatedIntegralSpec sq;
      sq.order_n = 2;
      sq.lower = 1.0;
      sq.upper = z;
      sq.measure = Measure::kInvSqMinus;
      sq.free_end = FreeEnd::kUpper;
      CHECK(rel_err(repeated_integral([&](const PathPoint& p) { return g(p.w); }, sq).value,
                    nested_sq) < 1e-7);
    }
  }

  SUBCASE("infinite upper end") {
    // int_z^inf int_{w1}^inf w^{-4} = z^{-2}/6
    RepeatedIntegralSpec spec;
    spec.order_n = 2;
    spec.lower = Complex(1.2, 0.7);
    spec.upper_is_infinity = true;
    auto f = [](const PathPoint& p) { return std::pow(p.w, -4.0); };
    CHECK(rel_err(repeated_integral(f, spec).value, std::pow(spec.lower, -2.0) / 6.0) < 1e-10);
  }
}

TEST_CASE("contour derivatives") {
  auto cube = [](Complex w) { return w * w * w; };
  CHECK(rel_err(contour_derivative(cube, 1.0, 2), 6.0) < 1e-12);
  auto ex = [](Complex w) { return std::exp(w); };
  CHECK(rel_err(contour_derivative(ex, 0.3, 4), 1.3498588076) < 1e-10);
  const std::vector<Cut> cut{{-std::numeric_limits<double>::infinity(), -1.0}};
  CHECK_THROWS_AS(contour_derivative(ex, -0.5, 1, 1.0, cut), CutIntersection);

  // Degree-d polynomial, n > d
  auto poly = [](Complex w) { return 3.0 * w * w * w - 2.0 * w + 7.0; };
  const std::vector<Complex> d = contour_derivatives(poly, Complex(0.2, 0.1), 6, 0.5);
  double scale = 0.0;
  for (int j = 0; j < 16; ++j) {
    scale = std::max(scale, std::abs(poly(Complex(0.2, 0.1) + std::polar(0.5, j * 0.39))));
  }
  for (int k = 4; k <= 6; ++k) {
    CHECK(std::abs(d[k]) <= 1e-10 * scale * factorial(k) / std::pow(0.5, k));
  }
  CHECK(rel_err(d[3], 18.0) < 1e-12);

  // The default radius keeps the disk off the cut.
  auto sq = [](Complex w) { return std::sqrt(w + 1.0); };
  const Complex got = contour_derivative(sq, Complex(-0.6, 0.2), 2, 0.0, cut);
  CHECK(rel_err(got, -0.25 * std::pow(Complex(0.4, 0.2), -1.5)) < 1e-10);
}

TEST_CASE("trapezoid contour rule converges geometrically") {
  auto ex = [](Complex w) { return std::exp(w); };
  const Complex exact = std::exp(0.3);
  for (int n = 0; n <= 4; ++n) {
    // Error decays like r^M / M!; by M = 32 it is at rounding level, so
    // check the ratio while both errors are above it.
    for (int m = 4; m <= 8; m *= 2) {
      const double e1 = std::abs(contour_derivative_fixed(ex, 0.3, n, 0.5, m) - exact);
      const double e2 = std::abs(contour_derivative_fixed(ex, 0.3, n, 0.5, 2 * m) - exact);
      if (e1 > 1e-13) CHECK(e2 <= 0.1 * e1);
    }
    for (int m = 32; m <= 128; m *= 2) {
      CHECK(std::abs(contour_derivative_fixed(ex, 0.3, n, 0.5, m) - exact) < 1e-13);
    }
  }
}
