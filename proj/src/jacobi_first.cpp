#include "jacobi/jacobi_first.hpp"

#include <array>
#include <cmath>
#include <limits>

#include "jacobi/errors.hpp"

namespace jacobi {
namespace {

constexpr double kCutGuard = 1e-12;
constexpr double kEps = std::numeric_limits<double>::epsilon();

// Gamma(alpha+gamma+1)/Gamma(gamma+1), in log space.
Complex first_kind_prefactor(const JacobiParams& p) {
  if (is_nonpositive_integer(p.gamma + 1.0)) return 0.0;
  return std::exp(log_gamma(p.alpha + p.gamma + 1.0) - log_gamma(p.gamma + 1.0));
}

bool terminates(Complex a, Complex b) {
  return is_nonpositive_integer(a) || is_nonpositive_integer(b);
}

struct RepTerms {
  Complex a, b;
  Complex power;  // the z-dependent prefactor
  Complex arg;
};

RepTerms rep_terms(const JacobiParams& p, Complex z, RepresentationId rep) {
  const Complex al = p.alpha, be = p.beta, ga = p.gamma;
  const Complex x1 = (1.0 - z) / 2.0;
  const Complex x3 = (z - 1.0) / (z + 1.0);
  const Complex s = 2.0 / (z + 1.0);
  switch (rep) {
    case RepresentationId::kRep1: return {-ga, al + be + ga + 1.0, 1.0, x1};
    case RepresentationId::kRep2: return {-be - ga, al + ga + 1.0, principal_pow(s, be), x1};
    case RepresentationId::kRep3:
      return {-ga, -be - ga, principal_pow((z + 1.0) / 2.0, ga), x3};
    case RepresentationId::kRep4:
      return {al + ga + 1.0, al + be + ga + 1.0, principal_pow(s, al + be + ga + 1.0), x3};
    case RepresentationId::kAuto: break;
  }
  throw InvalidArgument("representation must be fixed here");
}

RepresentationId choose_auto(const JacobiParams& p, Complex z) {
  const Complex al = p.alpha, be = p.beta, ga = p.gamma;
  // A terminating series is a polynomial and exact for every z.
  if (terminates(-ga, al + be + ga + 1.0)) return RepresentationId::kRep1;
  if (terminates(-be - ga, al + ga + 1.0)) return RepresentationId::kRep2;
  if (terminates(-ga, -be - ga)) return RepresentationId::kRep3;

  const double m1 = std::abs((1.0 - z) / 2.0);
  const double m3 = std::abs((z - 1.0) / (z + 1.0));
  if (std::min(m1, m3) <= kTransformThreshold) {
    return m1 <= m3 ? RepresentationId::kRep1 : RepresentationId::kRep3;
  }
  // Neither argument is small; (z-1)/(z+1) approaches 1 for large z, so
  // continue in (1-z)/2 there.
  return std::abs(z + 1.0) > 2.0 ? RepresentationId::kRep1 : RepresentationId::kRep3;
}

}  // namespace

void check_first_kind_domain(Complex z) {
  if (std::abs(z.imag()) < kCutGuard && z.real() <= -1.0 + kCutGuard) {
    throw DomainCutError("z lies on the cut (-inf, -1] of the first-kind function");
  }
}

EvalResult jacobi_p(const JacobiParams& params, Complex z, RepresentationId rep) {
  if (!params.first_kind_valid()) {
    throw ValidityError("alpha + gamma is a negative integer");
  }
  check_first_kind_domain(z);

  const bool automatic = rep == RepresentationId::kAuto;
  if (automatic && is_nonpositive_integer(-params.gamma)) {
    const int n = static_cast<int>(std::round(params.gamma.real()));
    EvalResult r;
    r.value = jacobi_polynomial(n, params.alpha, params.beta, z);
    r.abs_error = 64.0 * kEps * std::abs(r.value);
    r.representation = RepresentationId::kRep1;
    r.provenance = "rep1/polynomial";
    return r;
  }
  const RepresentationId chosen = automatic ? choose_auto(params, z) : rep;
  const RepTerms t = rep_terms(params, z, chosen);
  const SeriesValue s =
      ohyp2f1(t.a, t.b, params.alpha + 1.0, t.arg,
              automatic ? Continuation::kFull : Continuation::kSeriesOnly);
  const Complex scale = first_kind_prefactor(params) * t.power;

  EvalResult r;
  r.value = scale * s.value;
  r.abs_error = std::abs(scale) * s.abs_error_estimate + 4.0 * kEps * std::abs(r.value);
  r.representation = chosen;
  r.provenance = std::string(to_string(chosen)) + "/" + to_string(s.path);
  return r;
}

Complex jacobi_p_at_one(const JacobiParams& params) {
  if (!params.first_kind_valid()) {
    throw ValidityError("alpha + gamma is a negative integer");
  }
  return gamma(params.alpha + params.gamma + 1.0) * reciprocal_gamma(params.alpha + 1.0) *
         reciprocal_gamma(params.gamma + 1.0);
}

namespace {

// Explicit sum in (1-x)/2; fine near x = 1, loses digits elsewhere.
Complex polynomial_sum(int n, Complex alpha, Complex beta, Complex x) {
  if (x.real() < 0.0) {
    return (n % 2 == 0 ? 1.0 : -1.0) * polynomial_sum(n, beta, alpha, -x);
  }
  // sum_k (-n)_k (n+alpha+beta+1)_k (alpha+k+1)_{n-k} / (k! n!) ((1-x)/2)^k
  const Complex y = (1.0 - x) / 2.0;
  const Complex c = static_cast<double>(n) + alpha + beta + 1.0;
  Complex sum = 0.0;
  Complex lead = 1.0;  // (-n)_k (c)_k y^k / k!
  for (int k = 0; k <= n; ++k) {
    sum += lead * pochhammer(alpha + static_cast<double>(k + 1), n - k);
    lead *= (static_cast<double>(k - n)) * (c + static_cast<double>(k)) * y /
            static_cast<double>(k + 1);
  }
  return sum / factorial(n);
}

}  // namespace

Complex jacobi_polynomial(int n, Complex alpha, Complex beta, Complex x) {
  if (n < 0) throw InvalidArgument("polynomial degree must be non-negative");
  if (n == 0) return 1.0;
  const Complex ab = alpha + beta;
  // Three-term recurrence, unless one of its leading coefficients vanishes.
  for (int k = 2; k <= n; ++k) {
    const double kd = k;
    if (std::abs((kd + ab) * (2.0 * kd + ab - 2.0)) < 1e-8) {
      return polynomial_sum(n, alpha, beta, x);
    }
  }
  Complex p0 = 1.0;
  Complex p1 = (alpha + 1.0) + (ab + 2.0) * (x - 1.0) / 2.0;
  for (int k = 2; k <= n; ++k) {
    const double kd = k;
    const Complex s = 2.0 * kd + ab;
    const Complex c1 = (s - 1.0) * (s * (s - 2.0) * x + alpha * alpha - beta * beta);
    const Complex c2 = 2.0 * (kd + alpha - 1.0) * (kd + beta - 1.0) * s;
    const Complex p2 = (c1 * p1 - c2 * p0) / (2.0 * kd * (kd + ab) * (s - 2.0));
    p0 = p1;
    p1 = p2;
  }
  return p1;
}

std::pair<Complex, Complex> taylor_section(const JacobiParams& params, int n, Complex z) {
  if (n < 1) throw InvalidArgument("Taylor section order must be at least 1");
  if (!params.first_kind_valid()) {
    throw ValidityError("alpha + gamma is a negative integer");
  }
  check_first_kind_domain(z);
  const Complex al = params.alpha, be = params.beta, ga = params.gamma;
  const Complex abg = al + be + ga;
  if (is_nonpositive_integer(-abg)) {
    throw ValidityError("Gamma(-alpha-beta-gamma) has a pole");
  }
  if (n >= 2 && z == Complex(1.0, 0.0)) {
    throw DomainCutError("the closed form needs z != 1");
  }

  // d^k/dz^k P at z = 1 equals 2^{-k} (abg+1)_k P_{gamma-k}^{(alpha+k, beta+k)}(1).
  const Complex g_top = gamma(al + ga + 1.0);
  Complex lhs = 0.0;
  Complex power = 1.0;
  for (int k = 0; k < n; ++k) {
    const double kd = k;
    const Complex at_one =
        g_top * reciprocal_gamma(al + kd + 1.0) * reciprocal_gamma(ga - kd + 1.0);
    const Complex dk = std::pow(2.0, -kd) * pochhammer(abg + 1.0, k) * at_one;
    lhs += dk * power / factorial(k);
    power *= z - 1.0;
  }

  const double nd = n;
  const Complex pre = g_top * gamma(-abg) * reciprocal_gamma(al + nd) / factorial(n - 1) *
                      principal_pow((1.0 - z) / 2.0, nd - 1.0);
  Complex series = 1.0;
  if (n == 1) {
    series = reciprocal_gamma(ga + 1.0) * reciprocal_gamma(-abg);
  } else {
    series = ophyp({{1.0 - nd, 1.0 - al - nd, 1.0}, {ga - nd + 2.0, 1.0 - abg - nd},
                    2.0 / (1.0 - z)})
                 .value;
  }
  return {lhs, pre * series};
}

}  // namespace jacobi
