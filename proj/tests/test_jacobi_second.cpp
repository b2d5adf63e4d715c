#include <cmath>
#include <vector>

#include "doctest.h"
#include "jacobi/errors.hpp"
#include "jacobi/jacobi_first.hpp"
#include "jacobi/jacobi_second.hpp"
#include "support.hpp"

using namespace jacobi;
using testing_support::random_complex;
using testing_support::rel_err;

namespace {

const std::vector<RepresentationId> kReps{RepresentationId::kRep1, RepresentationId::kRep2,
                                          RepresentationId::kRep3, RepresentationId::kRep4};

// Q_0^{(0,0)}(z) = (1/2) log((z+1)/(z-1))
Complex q00(Complex z) { return 0.5 * std::log((z + 1.0) / (z - 1.0)); }

}  // namespace

TEST_CASE("second-kind examples") {
  CHECK(rel_err(jacobi_q({0.0, 0.0, 0.0}, 2.0).value, 0.5493061443340549) < 1e-14);
  const JacobiParams p{0.5, 0.5, 1.2};
  const Complex ref = jacobi_q(p, 3.0, RepresentationId::kRep1).value;
  for (RepresentationId rep : kReps) {
    CHECK(rel_err(jacobi_q(p, 3.0, rep).value, ref) <= 1e-10);
  }
  CHECK_THROWS_AS(jacobi_q({0.5, 0.0, -1.5}, 2.0), ValidityError);
  CHECK_THROWS_AS(jacobi_q({0.5, 0.0, 0.5}, 0.5), DomainCutError);
  CHECK_THROWS_AS(jacobi_q({0.5, 0.0, 0.5}, -1.0), DomainCutError);
}

TEST_CASE("Legendre functions of the second kind") {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 100; ++i) {
    Complex z = random_complex(rng, -4.0, 4.0, 3.0);
    if (std::abs(z.imag()) < 0.05) continue;
    const Complex q0 = q00(z);
    CHECK(rel_err(jacobi_q({0.0, 0.0, 0.0}, z).value, q0) < 1e-12);
    // Q_1 = z Q_0 - 1
    CHECK(rel_err(jacobi_q({0.0, 0.0, 1.0}, z).value, z * q0 - 1.0) < 1e-10);
  }
}

TEST_CASE("four representations agree") {
  std::mt19937_64 rng(22);
  int samples = 0;
  int compared = 0;
  while (samples < 200) {
    const JacobiParams p{random_complex(rng, -0.9, 3.0, 0.5), random_complex(rng, -0.9, 3.0, 0.5),
                         random_complex(rng, -0.9, 3.0, 0.5)};
    if (!p.second_kind_valid()) continue;
    std::uniform_real_distribution<double> rad(0.2, 3.0);
    std::uniform_real_distribution<double> ang(-M_PI, M_PI);
    const Complex z = 1.0 + std::polar(rad(rng), ang(rng));
    if (std::abs(z.imag()) < 0.05 && z.real() < 1.05) continue;
    ++samples;
    std::vector<Complex> values;
    for (RepresentationId rep : kReps) {
      try {
        values.push_back(jacobi_q(p, z, rep).value);
      } catch (const NoConvergentPath&) {
      }
    }
    const Complex automatic = jacobi_q(p, z).value;
    for (std::size_t i = 0; i < values.size(); ++i) {
      CHECK(rel_err(values[i], automatic) <= 1e-9);
      for (std::size_t j = i + 1; j < values.size(); ++j) {
        ++compared;
        CHECK(rel_err(values[i], values[j]) <= 1e-9);
      }
    }
  }
  CHECK(compared > 100);
}

TEST_CASE("integral representation") {
  QIntegralSpec spec{{0.0, 0.0, 0.0}, 2.0};
  CHECK(rel_err(jacobi_q_integral(spec).value, 0.5 * std::log(3.0)) < 1e-12);
  spec = {{0.5, 0.5, 1.2}, 3.0};
  CHECK(rel_err(jacobi_q_integral(spec).value, jacobi_q(spec.params, 3.0).value) < 1e-8);
  spec = {{-0.7, 0.2, -0.5}, 2.0};
  CHECK_THROWS_AS(jacobi_q_integral(spec), ConvergenceConstraintError);

  std::mt19937_64 rng(23);
  int checked = 0;
  while (checked < 50) {
    const JacobiParams p{random_complex(rng, -0.75, 3.0, 0.5),
                         random_complex(rng, -0.75, 3.0, 0.5),
                         random_complex(rng, -0.75, 3.0, 0.5)};
    if ((p.alpha + p.gamma).real() < -0.75 || (p.beta + p.gamma).real() < -0.75) continue;
    const Complex z = random_complex(rng, 1.3, 4.0, 1.0);
    ++checked;
    CHECK(rel_err(jacobi_q_integral({p, z}).value, jacobi_q(p, z).value) < 1e-8);
  }
}

TEST_CASE("shifted integral representation") {
  const JacobiParams p1{0.5, 0.5, 1.2};
  CHECK(rel_err(jacobi_q_integral_shifted({p1, 3.0, 0}).value,
                jacobi_q_integral({p1, 3.0}).value) < 1e-14);
  CHECK(rel_err(jacobi_q_integral_shifted({p1, 3.0, 1}).value, jacobi_q(p1, 3.0).value) < 1e-8);
  const JacobiParams p2{0.25, 0.75, 2.5};
  CHECK(rel_err(jacobi_q_integral_shifted({p2, 1.8, 2}).value, jacobi_q(p2, 1.8).value) < 1e-7);
  CHECK_THROWS_AS(jacobi_q_integral_shifted({{0.5, 0.5, 2.0}, 3.0, 3}), CoefficientZeroError);
  CHECK_THROWS_AS(jacobi_q_integral_shifted({{0.5, 0.5, 1.2}, 3.0, 3}),
                  ConvergenceConstraintError);
  CHECK(minimal_shift({0.5, 0.5, 1.2}) == 0);

  std::mt19937_64 rng(24);
  int checked = 0;
  while (checked < 40) {
    const JacobiParams p{random_complex(rng, -0.75, 3.0, 0.5),
                         random_complex(rng, -0.75, 3.0, 0.5),
                         random_complex(rng, 0.0, 5.0, 0.5)};
    const Complex z = random_complex(rng, 1.3, 4.0, 1.0);
    const Complex ref = jacobi_q(p, z).value;
    int k_used = 0;
    for (int k = 0; k <= 3; ++k) {
      if ((p.alpha + p.gamma).real() - k <= -0.9 || (p.beta + p.gamma).real() - k <= -0.9) break;
      CHECK(rel_err(jacobi_q_integral_shifted({p, z, k}).value, ref) < 1e-7);
      ++k_used;
    }
    if (k_used >= 2) ++checked;
  }
}

TEST_CASE("Neumann integral for integer degree") {
  CHECK(rel_err(neumann_q(0, 0.0, 0.0, 2.0).value, 0.5 * std::log(3.0)) < 1e-12);
  CHECK(rel_err(neumann_q(1, 0.0, 0.0, 2.0).value, jacobi_q({0.0, 0.0, 1.0}, 2.0).value) < 1e-8);
  const Complex z(1.5, 0.5);
  CHECK(rel_err(neumann_q(3, 0.5, -0.25, z).value, jacobi_q({0.5, -0.25, 3.0}, z).value) < 1e-7);
  CHECK_THROWS_AS(neumann_q(2, -1.2, 0.0, 2.0), ConvergenceConstraintError);
  std::mt19937_64 rng(25);
  for (int i = 0; i < 30; ++i) {
    const Complex a = random_complex(rng, -0.75, 3.0, 0.5);
    const Complex b = random_complex(rng, -0.75, 3.0, 0.5);
    const Complex zz = random_complex(rng, 1.3, 4.0, 1.0);
    const int n = i % 5;
    CHECK(rel_err(neumann_q(n, a, b, zz).value, jacobi_q({a, b, double(n)}, zz).value) < 1e-8);
  }
}

TEST_CASE("decay at infinity") {
  std::mt19937_64 rng(26);
  for (int i = 0; i < 20; ++i) {
    const JacobiParams p{random_complex(rng, -0.75, 3.0, 0.5),
                         random_complex(rng, -0.75, 3.0, 0.5),
                         random_complex(rng, -0.75, 3.0, 0.5)};
    if (!p.second_kind_valid()) continue;
    const double theta = (i - 10) * 0.25;
    std::vector<double> lx, ly;
    for (double r : {1e3, 1e4, 1e5}) {
      lx.push_back(std::log(r));
      ly.push_back(std::log(std::abs(jacobi_q(p, std::polar(r, theta)).value)));
    }
    // least-squares slope over three points
    const double mx = (lx[0] + lx[1] + lx[2]) / 3.0, my = (ly[0] + ly[1] + ly[2]) / 3.0;
    double sxy = 0.0, sxx = 0.0;
    for (int j = 0; j < 3; ++j) {
      sxy += (lx[j] - mx) * (ly[j] - my);
      sxx += (lx[j] - mx) * (lx[j] - mx);
    }
    const double expected = -(p.alpha + p.beta + p.gamma + 1.0).real();
    CHECK(std::abs(sxy / sxx - expected) <= 5e-3);
  }
}

TEST_CASE("negative real axis is the upper boundary value") {
  const JacobiParams p{0.3, Complex(0.2, 0.1), 0.7};
  const Complex on = jacobi_q(p, -2.5).value;
  const Complex above = jacobi_q(p, Complex(-2.5, 1e-9)).value;
  CHECK(rel_err(on, above) < 1e-7);
}
