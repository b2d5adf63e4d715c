#include "jacobi/hypergeom.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "jacobi/errors.hpp"

namespace jacobi {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Returns m when z is (within tolerance) the non-positive integer -m.
std::optional<int> as_nonpositive_integer(Complex z) {
  if (!is_nonpositive_integer(z)) return std::nullopt;
  return static_cast<int>(-std::round(z.real()));
}

std::optional<int> termination_order(const std::vector<Complex>& upper) {
  std::optional<int> m;
  for (const Complex& a : upper) {
    if (auto order = as_nonpositive_integer(a)) {
      if (!m || *order < *m) m = order;
    }
  }
  return m;
}

// Partial sums of rFs (optionally regularized) in the original argument.
SeriesValue sum_series(const std::vector<Complex>& upper,
                       const std::vector<Complex>& lower, Complex x,
                       bool regularized) {
  const std::optional<int> stop_at = termination_order(upper);

  // First index at which every regularized lower factor is past its poles.
  int k_min = 0;
  for (const Complex& b : lower) {
    if (auto p = as_nonpositive_integer(b)) {
      if (!regularized && (!stop_at || *stop_at > *p)) {
        throw LowerPoleError("lower parameter is a non-positive integer and the series does not terminate before it");
      }
      k_min = std::max(k_min, *p + 1);
    }
  }

  Complex term = 1.0;
  if (regularized) {
    for (const Complex& b : lower) term *= reciprocal_gamma(b);
  }

  SeriesValue out;
  if (x == Complex(0.0, 0.0)) {
    out.value = term;
    out.terms_used = 1;
    out.terminated = true;
    out.abs_error_estimate = kEps * std::abs(term);
    return out;
  }
  if (!stop_at) {
    if (upper.size() > lower.size() + 1) {
      throw DivergentError("nonterminating series with r > s + 1");
    }
    if (upper.size() == lower.size() + 1 && std::abs(x) >= 1.0) {
      throw ContinuationRequired("nonterminating series with |z| >= 1");
    }
  }

  // `pref` tracks prod (a_i)_k x^k / k!, times prod 1/(b_j)_k when not
  // regularized.
  Complex pref = 1.0;
  Complex sum = term;
  double sum_abs = std::abs(term);
  int small_run = 0;
  int k = 0;
  const int last = stop_at ? *stop_at : kSeriesMaxTerms - 1;
  bool converged = stop_at.has_value();
  while (k < last) {
    Complex ratio = x / static_cast<double>(k + 1);
    for (const Complex& a : upper) ratio *= a + static_cast<double>(k);
    if (!regularized) {
      for (const Complex& b : lower) ratio /= b + static_cast<double>(k);
      pref *= ratio;
      term = pref;
    } else {
      // Up to the last lower-parameter pole the reciprocal gammas are
      // evaluated directly (k is small there, so `pref` is finite); past it
      // the plain term ratio takes over.
      pref *= ratio;
      if (k + 1 <= k_min) {
        term = pref;
        for (const Complex& b : lower) term *= reciprocal_gamma(b + static_cast<double>(k + 1));
      } else {
        Complex r = ratio;
        for (const Complex& b : lower) r /= b + static_cast<double>(k);
        term *= r;
      }
    }
    ++k;
    sum += term;
    sum_abs += std::abs(term);
    if (!stop_at && k >= k_min) {
      if (std::abs(term) <= kSeriesRelTol * std::abs(sum)) {
        if (++small_run >= 3) {
          converged = true;
          break;
        }
      } else {
        small_run = 0;
      }
    }
  }

  out.value = sum;
  out.terms_used = k + 1;
  out.terminated = stop_at.has_value();
  out.abs_error_estimate = 8.0 * kEps * sum_abs;
  if (!out.terminated) {
    const double r = std::abs(x);
    const double tail = r < 1.0 ? std::abs(term) / (1.0 - r) : std::abs(term);
    // Hitting the term cap leaves the truncation error in the estimate.
    out.abs_error_estimate += converged ? std::abs(term) : tail * 1e3;
  }
  return out;
}

Complex series_value(Complex a, Complex b, Complex c, Complex x, bool regularized,
                     double& err, int& terms) {
  SeriesValue s = sum_series({a, b}, {c}, x, regularized);
  err += s.abs_error_estimate;
  terms += s.terms_used;
  return s.value;
}

// Continues F(a,b;c;.) (or its regularized form) from |x| = 1/2 to `x` by
// Taylor re-expansion of the hypergeometric ODE along the ray through x.
SeriesValue continue_along_ray(Complex a, Complex b, Complex c, Complex x,
                               bool regularized) {
  double err = 0.0;
  int terms = 0;
  Complex x0 = x * (0.5 / std::abs(x));
  Complex f = series_value(a, b, c, x0, regularized, err, terms);
  Complex df = series_value(a + 1.0, b + 1.0, c + 1.0, x0, regularized, err, terms);
  df *= regularized ? a * b : a * b / c;

  const Complex D = a + b + 1.0;
  const Complex ab = a * b;
  int steps = 0;
  constexpr int kMaxSteps = 20000;
  constexpr int kMaxTaylorTerms = 400;
  while (x0 != x) {
    if (++steps > kMaxSteps) {
      throw NoConvergentPath("Taylor continuation exceeded the step budget");
    }
    const double radius = std::min(std::abs(x0), std::abs(1.0 - x0));
    const Complex remaining = x - x0;
    const double dist = std::abs(remaining);
    const double len = std::min(dist, 0.5 * radius);
    const Complex h = (len == dist) ? remaining : remaining * (len / dist);
    const Complex A = x0 * (1.0 - x0);
    const Complex B = 1.0 - 2.0 * x0;
    const Complex q0 = c - D * x0;

    Complex s_prev = f;       // s_k
    Complex s_cur = df * h;   // s_{k+1}
    Complex value = s_prev + s_cur;
    Complex deriv = s_cur;    // sum k s_k
    double value_abs = std::abs(s_prev) + std::abs(s_cur);
    int small_run = 0;
    for (int k = 0; k + 2 < kMaxTaylorTerms; ++k) {
      const double kd = k;
      const Complex s_next =
          -((B * kd + q0) * (kd + 1.0) * s_cur * h -
            (kd * (kd - 1.0) + D * kd + ab) * s_prev * h * h) /
          (A * (kd + 2.0) * (kd + 1.0));
      value += s_next;
      deriv += (kd + 2.0) * s_next;
      value_abs += std::abs(s_next);
      s_prev = s_cur;
      s_cur = s_next;
      const double scale = std::max(std::abs(value), std::abs(deriv));
      if (std::abs(s_next) * (kd + 2.0) <= 1e-17 * scale || s_next == Complex(0.0, 0.0)) {
        if (++small_run >= 3) break;
      } else {
        small_run = 0;
      }
    }
    terms += 1;
    err = err * std::abs(value) / std::max(std::abs(f), 1e-300) + 4.0 * kEps * value_abs;
    f = value;
    df = deriv / h;
    x0 = (len == dist) ? x : x0 + h;
  }
  SeriesValue out;
  out.value = f;
  out.abs_error_estimate = err;
  out.terms_used = terms;
  out.terminated = false;
  out.path = HypPath::kContinuation;
  return out;
}

SeriesValue hyp2f1_impl(Complex a, Complex b, Complex c, Complex z, bool regularized,
                        Continuation policy) {
  // Polynomial cases are summed directly for every argument.
  if (termination_order({a, b}) || z == Complex(0.0, 0.0) ||
      (!regularized && is_nonpositive_integer(c))) {
    SeriesValue s = sum_series({a, b}, {c}, z, regularized);
    if (!s.terminated && std::abs(z) >= 1.0) {
      throw LowerPoleError("2F1 with a non-positive integer c must terminate");
    }
    return s;
  }
  if (std::abs(z.imag()) < kPoleTolerance && z.real() > 1.0 - kPoleTolerance) {
    throw CutError("2F1 argument on the branch cut [1, inf)");
  }

  // Euler's transformation turns the series into a polynomial.
  if (termination_order({c - a, c - b})) {
    SeriesValue s = sum_series({c - a, c - b}, {c}, z, regularized);
    const Complex factor = principal_pow(1.0 - z, c - a - b);
    s.value *= factor;
    s.abs_error_estimate *= std::abs(factor);
    s.path = HypPath::kEuler;
    return s;
  }

  const Complex pfaff_arg = z / (z - 1.0);
  const bool use_pfaff = std::abs(pfaff_arg) < std::abs(z);
  const double best = std::min(std::abs(z), std::abs(pfaff_arg));
  const double threshold =
      policy == Continuation::kFull ? kTransformThreshold : kSeriesOnlyThreshold;

  if (best <= threshold) {
    // Each argument admits two series (plain and Euler-transformed). Close to
    // the unit circle either one may suffer cancellation, so both are summed
    // and the one with the smaller error estimate wins.
    const Complex x = use_pfaff ? pfaff_arg : z;
    const Complex b1 = use_pfaff ? c - b : b;
    SeriesValue s = sum_series({a, b1}, {c}, x, regularized);
    Complex factor = use_pfaff ? principal_pow(1.0 - z, -a) : Complex(1.0);
    s.path = use_pfaff ? HypPath::kPfaff : HypPath::kDirect;
    if (best > kTransformThreshold) {
      // Euler partner on the same argument: 2F1(c-a, c-b1; c; x) (1-x)^{c-a-b1}.
      SeriesValue e = sum_series({c - a, c - b1}, {c}, x, regularized);
      const Complex ef = factor * principal_pow(1.0 - x, c - a - b1);
      if (std::abs(ef) * e.abs_error_estimate < std::abs(factor) * s.abs_error_estimate) {
        s = e;
        factor = ef;
        s.path = HypPath::kEuler;
      }
    }
    s.value *= factor;
    s.abs_error_estimate *= std::abs(factor);
    return s;
  }
  if (policy == Continuation::kSeriesOnly) {
    throw NoConvergentPath("no transformed 2F1 argument has modulus <= 0.99");
  }
  // Continue in whichever argument lies farther from the singular point 1.
  if (std::abs(1.0 - z) >= 1.0) {
    return continue_along_ray(a, b, c, z, regularized);
  }
  SeriesValue s = continue_along_ray(a, c - b, c, pfaff_arg, regularized);
  const Complex factor = principal_pow(1.0 - z, -a);
  s.value *= factor;
  s.abs_error_estimate *= std::abs(factor);
  return s;
}

}  // namespace

const char* to_string(HypPath path) {
  switch (path) {
    case HypPath::kDirect: return "direct";
    case HypPath::kPfaff: return "pfaff";
    case HypPath::kEuler: return "euler";
    case HypPath::kContinuation: return "continuation";
  }
  return "unknown";
}

SeriesValue phyp(const HypParams& p) {
  return sum_series(p.upper, p.lower, p.argument, false);
}

SeriesValue ophyp(const HypParams& p) {
  return sum_series(p.upper, p.lower, p.argument, true);
}

SeriesValue gauss2f1(Complex a, Complex b, Complex c, Complex z, Continuation policy) {
  return hyp2f1_impl(a, b, c, z, false, policy);
}

SeriesValue ohyp2f1(Complex a, Complex b, Complex c, Complex z, Continuation policy) {
  return hyp2f1_impl(a, b, c, z, true, policy);
}

std::pair<SeriesValue, SeriesValue> reverse_finite_series(
    const std::vector<Complex>& upper, const std::vector<Complex>& lower, int m,
    Complex z) {
  if (m < 0) throw InvalidArgument("reverse_finite_series requires m >= 0");
  if (upper.size() != lower.size() + 1) {
    throw InvalidArgument("reverse_finite_series requires r + 1 upper and r lower parameters");
  }

  SeriesValue direct;
  {
    Complex term = 1.0;
    Complex sum = 1.0;
    double sum_abs = 1.0;
    for (int k = 0; k < m; ++k) {
      Complex ratio = z / static_cast<double>(k + 1);
      for (const Complex& a : upper) ratio *= a + static_cast<double>(k);
      for (const Complex& b : lower) {
        const Complex d = b + static_cast<double>(k);
        if (d == Complex(0.0, 0.0)) throw LowerPoleError("lower parameter pole inside the finite sum");
        ratio /= d;
      }
      term *= ratio;
      sum += term;
      sum_abs += std::abs(term);
    }
    direct.value = sum;
    direct.terms_used = m + 1;
    direct.terminated = true;
    direct.abs_error_estimate = 8.0 * kEps * sum_abs;
  }

  if (m == 0) return {direct, direct};
  if (z == Complex(0.0, 0.0)) {
    throw ZeroArgument("reversed finite series needs z != 0");
  }

  const double md = m;
  std::vector<Complex> rev_upper{Complex(-md, 0.0)};
  for (const Complex& b : lower) rev_upper.push_back(1.0 - md - b);
  rev_upper.push_back(1.0);
  std::vector<Complex> rev_lower;
  for (const Complex& a : upper) rev_lower.push_back(1.0 - md - a);

  Complex lead = principal_pow(z, md) / factorial(m);
  for (const Complex& a : upper) lead *= pochhammer(a, m);
  for (const Complex& b : lower) lead /= pochhammer(b, m);

  SeriesValue reversed = phyp({rev_upper, rev_lower, 1.0 / z});
  reversed.value *= lead;
  reversed.abs_error_estimate *= std::abs(lead);
  return {direct, reversed};
}

}  // namespace jacobi
