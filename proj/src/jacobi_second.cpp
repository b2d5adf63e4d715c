#include "jacobi/jacobi_second.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "jacobi/errors.hpp"
#include "jacobi/jacobi_first.hpp"
#include "jacobi/quadrature.hpp"

namespace jacobi {
namespace {

constexpr double kCutGuard = 1e-12;
constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr int kMaxShift = 64;

// 2^{alpha+beta+gamma} Gamma(alpha+gamma+1) Gamma(beta+gamma+1) in log space.
Complex second_kind_prefactor(const JacobiParams& p) {
  const Complex abg = p.alpha + p.beta + p.gamma;
  return std::exp(abg * std::log(2.0) + log_gamma(p.alpha + p.gamma + 1.0) +
                  log_gamma(p.beta + p.gamma + 1.0));
}

bool terminates(Complex a, Complex b) {
  return is_nonpositive_integer(a) || is_nonpositive_integer(b);
}

struct RepTerms {
  Complex a, b;
  Complex inv_power;  // the z-dependent denominator
  Complex arg;
};

RepTerms rep_terms(const JacobiParams& p, Complex z, RepresentationId rep) {
  const Complex al = p.alpha, be = p.beta, ga = p.gamma;
  const Complex zm = z - 1.0, zp = z + 1.0;
  const Complex abg1 = al + be + ga + 1.0;
  switch (rep) {
    case RepresentationId::kRep1:
      return {ga + 1.0, al + ga + 1.0,
              principal_pow(zm, al + ga + 1.0) * principal_pow(zp, be), 2.0 / (1.0 - z)};
    case RepresentationId::kRep2:
      return {be + ga + 1.0, abg1, principal_pow(zm, abg1), 2.0 / (1.0 - z)};
    case RepresentationId::kRep3:
      return {ga + 1.0, be + ga + 1.0,
              principal_pow(zm, al) * principal_pow(zp, be + ga + 1.0), 2.0 / zp};
    case RepresentationId::kRep4:
      return {al + ga + 1.0, abg1, principal_pow(zp, abg1), 2.0 / zp};
    case RepresentationId::kAuto: break;
  }
  throw InvalidArgument("representation must be fixed here");
}

RepresentationId choose_auto(const JacobiParams& p, Complex z) {
  const bool near_minus = std::abs(2.0 / (1.0 + z)) < std::abs(2.0 / (1.0 - z));
  const Complex al = p.alpha, be = p.beta, ga = p.gamma;
  const Complex abg1 = al + be + ga + 1.0;
  if (near_minus) {
    if (!terminates(ga + 1.0, be + ga + 1.0) && terminates(al + ga + 1.0, abg1)) {
      return RepresentationId::kRep4;
    }
    return RepresentationId::kRep3;
  }
  if (!terminates(ga + 1.0, al + ga + 1.0) && terminates(be + ga + 1.0, abg1)) {
    return RepresentationId::kRep2;
  }
  return RepresentationId::kRep1;
}

void check_q_params(const JacobiParams& p) {
  if (!p.second_kind_valid()) {
    throw ValidityError("alpha + gamma or beta + gamma is a negative integer");
  }
}

// 1 / ((z-1)^alpha (z+1)^beta)
Complex endpoint_factor(Complex alpha, Complex beta, Complex z) {
  return 1.0 / (principal_pow(z - 1.0, alpha) * principal_pow(z + 1.0, beta));
}

bool is_real(Complex x) { return x.imag() == 0.0; }

// int_{-1}^{1} (1-t)^ea (1+t)^eb g(t) dt with Gauss-Jacobi for real
// exponents, tanh-sinh otherwise.
EvalResult weighted_integral(Complex ea, Complex eb, const std::function<Complex(Complex)>& g) {
  if (is_real(ea) && is_real(eb)) {
    return integrate_finite([&](double t) { return g(Complex(t, 0.0)); }, ea.real(), eb.real());
  }
  return integrate_segment(
      [&](const PathPoint& p) {
        return principal_pow(p.to_end, ea) * principal_pow(p.from_start, eb) * g(p.w);
      },
      -1.0, 1.0);
}

void check_convergence(const JacobiParams& p, int k) {
  const double kd = k;
  if (!((p.alpha + p.gamma).real() - kd > -1.0) || !((p.beta + p.gamma).real() - kd > -1.0)) {
    throw ConvergenceConstraintError(
        "integral representation needs Re(alpha+gamma-k) > -1 and Re(beta+gamma-k) > -1");
  }
}

}  // namespace

void check_second_kind_domain(Complex z) {
  if (std::abs(z.imag()) < kCutGuard && z.real() >= -1.0 - kCutGuard &&
      z.real() <= 1.0 + kCutGuard) {
    throw DomainCutError("z lies on the cut [-1, 1] of the second-kind function");
  }
}

EvalResult jacobi_q(const JacobiParams& params, Complex z, RepresentationId rep) {
  check_q_params(params);
  check_second_kind_domain(z);

  const bool automatic = rep == RepresentationId::kAuto;
  const RepresentationId chosen = automatic ? choose_auto(params, z) : rep;
  const RepTerms t = rep_terms(params, z, chosen);
  const Complex c = params.alpha + params.beta + 2.0 * params.gamma + 2.0;
  const SeriesValue s = ohyp2f1(t.a, t.b, c, t.arg,
                                automatic ? Continuation::kFull : Continuation::kSeriesOnly);
  const Complex scale = second_kind_prefactor(params) / t.inv_power;

  EvalResult r;
  r.value = scale * s.value;
  r.abs_error = std::abs(scale) * s.abs_error_estimate + 4.0 * kEps * std::abs(r.value);
  r.representation = chosen;
  r.provenance = std::string(to_string(chosen)) + "/" + to_string(s.path);
  return r;
}

int minimal_shift(const JacobiParams& params) {
  for (int k = 0; k <= kMaxShift; ++k) {
    const double kd = k;
    if ((params.alpha + params.gamma).real() - kd <= -1.0 ||
        (params.beta + params.gamma).real() - kd <= -1.0) {
      break;
    }
    if (pochhammer(-params.gamma, k) != Complex(0.0, 0.0)) return k;
  }
  throw ConvergenceConstraintError("no shift k satisfies the convergence predicates");
}

EvalResult jacobi_q_integral(const QIntegralSpec& spec) {
  if (spec.shift_k != 0 || spec.auto_shift) {
    throw InvalidArgument("use jacobi_q_integral_shifted for k > 0");
  }
  return jacobi_q_integral_shifted(spec);
}

EvalResult jacobi_q_integral_shifted(const QIntegralSpec& spec) {
  const JacobiParams& p = spec.params;
  const Complex z = spec.z;
  check_q_params(p);
  check_second_kind_domain(z);
  const int k = spec.auto_shift ? minimal_shift(p) : spec.shift_k;
  if (k < 0) throw InvalidArgument("shift must be non-negative");
  check_convergence(p, k);
  const Complex coefficient = pochhammer(-p.gamma, k);
  if (std::abs(coefficient) < kPoleTolerance) {
    throw CoefficientZeroError("(-gamma)_k vanishes for this shift");
  }

  const double kd = k;
  const Complex ea = p.alpha + p.gamma - kd;
  const Complex eb = p.beta + p.gamma - kd;
  const Complex delta = p.gamma - kd;
  EvalResult quad = weighted_integral(ea, eb, [&](Complex t) {
    Complex g = principal_pow(z - t, -delta - 1.0);
    if (k > 0) g *= jacobi_polynomial(k, ea, eb, t);
    return g;
  });

  const double sign = k % 2 == 0 ? 1.0 : -1.0;
  const Complex pre = sign * factorial(k) /
                      (principal_pow(2.0, p.gamma + 1.0 - kd) * coefficient) *
                      endpoint_factor(p.alpha, p.beta, z);
  EvalResult r;
  r.value = pre * quad.value;
  r.abs_error = std::abs(pre) * quad.abs_error + 4.0 * kEps * std::abs(r.value);
  r.provenance = "integral k=" + std::to_string(k) + " " + quad.provenance;
  return r;
}

EvalResult neumann_q(int n, Complex alpha, Complex beta, Complex z) {
  if (n < 0) throw InvalidArgument("degree must be non-negative");
  check_second_kind_domain(z);
  if (!(alpha.real() > -1.0) || !(beta.real() > -1.0)) {
    throw ConvergenceConstraintError("Neumann integral needs Re alpha > -1 and Re beta > -1");
  }
  EvalResult quad = weighted_integral(alpha, beta, [&](Complex t) {
    return jacobi_polynomial(n, alpha, beta, t) / (z - t);
  });
  const Complex pre = 0.5 * endpoint_factor(alpha, beta, z);
  EvalResult r;
  r.value = pre * quad.value;
  r.abs_error = std::abs(pre) * quad.abs_error + 4.0 * kEps * std::abs(r.value);
  r.provenance = "neumann " + quad.provenance;
  return r;
}

}  // namespace jacobi
