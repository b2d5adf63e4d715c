#include "jacobi/quadrature.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numbers>

#include "jacobi/errors.hpp"

namespace jacobi {
namespace {

constexpr double kPi = std::numbers::pi;

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

// Tanh-sinh abscissae run over x in [-6, 6]; beyond that the weights
// underflow relative to any integrable endpoint singularity.
constexpr double kTanhSinhRange = 6.0;
constexpr int kTanhSinhMaxLevel = 9;

struct TanhSinhNode {
  double s;
  double one_minus_s;
  double weight;  // ds/dx
};

TanhSinhNode tanh_sinh_node(double x) {
  const double u = kPi * std::sinh(x);
  const double s = 1.0 / (1.0 + std::exp(-u));
  const double one_minus_s = 1.0 / (1.0 + std::exp(u));
  return {s, one_minus_s, kPi * std::cosh(x) * s * one_minus_s};
}

}  // namespace

QuadratureRule gauss_jacobi_rule(int m, double a, double b) {
  if (a <= -1.0 || b <= -1.0) {
    throw ExponentError("Gauss-Jacobi exponents must exceed -1");
  }
  if (m < 1) throw InvalidArgument("rule size must be positive");

  Eigen::VectorXd diag(m);
  Eigen::VectorXd off(std::max(m - 1, 1));
  const double ab = a + b;
  for (int k = 0; k < m; ++k) {
    const double s = 2.0 * k + ab;
    diag(k) = k == 0 ? (b - a) / (ab + 2.0) : (b * b - a * a) / (s * (s + 2.0));
  }
  for (int k = 1; k < m; ++k) {
    const double s = 2.0 * k + ab;
    double sq;
    if (k == 1) {
      sq = 4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + ab) * (2.0 + ab) * (3.0 + ab));
    } else {
      sq = 4.0 * k * (k + a) * (k + b) * (k + ab) / (s * s * (s + 1.0) * (s - 1.0));
    }
    off(k - 1) = std::sqrt(sq);
  }

  const double log_mu0 = (ab + 1.0) * std::log(2.0) + std::lgamma(a + 1.0) +
                         std::lgamma(b + 1.0) - std::lgamma(ab + 2.0);
  const double mu0 = std::exp(log_mu0);

  QuadratureRule rule;
  rule.exponent_a = a;
  rule.exponent_b = b;
  if (m == 1) {
    rule.nodes = {diag(0)};
    rule.weights = {mu0};
    return rule;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, off.head(m - 1), Eigen::ComputeEigenvectors);
  rule.nodes.resize(m);
  rule.weights.resize(m);
  for (int j = 0; j < m; ++j) {
    rule.nodes[j] = solver.eigenvalues()(j);
    const double v0 = solver.eigenvectors()(0, j);
    rule.weights[j] = mu0 * v0 * v0;
  }
  return rule;
}

EvalResult integrate_finite(const std::function<Complex(double)>& f, double a, double b) {
  if (a <= -1.0 || b <= -1.0) {
    throw ExponentError("endpoint exponents must exceed -1");
  }
  Complex previous;
  double change = 0.0;
  for (int m = 8; m <= 256; m *= 2) {
    const QuadratureRule rule = gauss_jacobi_rule(m, a, b);
    Complex sum = 0.0;
    double scale = 0.0;
    for (int j = 0; j < m; ++j) {
      const Complex term = rule.weights[j] * f(rule.nodes[j]);
      sum += term;
      scale += std::abs(term);
    }
    if (!finite(sum)) throw NonConvergence("integrand is not finite at a quadrature node");
    if (m > 8) {
      change = std::abs(sum - previous);
      if (change <= 1e-11 * std::max(std::abs(sum), 1e-3 * scale)) {
        return {sum, change, RepresentationId::kAuto, "gauss-jacobi m=" + std::to_string(m)};
      }
      if (m == 256) {
        if (change > 1e-8 * std::max(std::abs(sum), 1e-3 * scale)) {
          throw NonConvergence("Gauss-Jacobi doubling stalled at 256 nodes");
        }
        return {sum, change, RepresentationId::kAuto, "gauss-jacobi m=256"};
      }
    }
    previous = sum;
  }
  return {previous, change, RepresentationId::kAuto, "gauss-jacobi"};
}

EvalResult integrate_tanh_sinh(const std::function<Complex(double, double)>& g) {
  double h = 1.0;
  Complex raw = 0.0;  // sum of weight * g over all nodes so far
  double raw_abs = 0.0;
  auto add = [&](double x) {
    const TanhSinhNode node = tanh_sinh_node(x);
    if (node.weight == 0.0) return;
    const Complex v = g(node.s, node.one_minus_s);
    if (!finite(v)) return;
    raw += node.weight * v;
    raw_abs += node.weight * std::abs(v);
  };
  const int half = static_cast<int>(kTanhSinhRange);
  for (int k = -half; k <= half; ++k) add(static_cast<double>(k));
  Complex estimate = h * raw;
  double change = 0.0;
  for (int level = 1; level <= kTanhSinhMaxLevel; ++level) {
    h *= 0.5;
    const int count = static_cast<int>(kTanhSinhRange / h);
    for (int k = -count + 1; k < count; k += 2) add(k * h);
    const Complex next = h * raw;
    change = std::abs(next - estimate);
    estimate = next;
    const double scale = std::max(std::abs(estimate), 1e-3 * h * raw_abs);
    if (level >= 3 && change <= 1e-12 * scale) {
      return {estimate, change, RepresentationId::kAuto,
              "tanh-sinh h=2^-" + std::to_string(level)};
    }
  }
  if (change > 1e-8 * std::max(std::abs(estimate), 1e-3 * h * raw_abs)) {
    throw NonConvergence("tanh-sinh refinement did not settle");
  }
  return {estimate, change, RepresentationId::kAuto, "tanh-sinh h=2^-9"};
}

EvalResult integrate_segment(const PathIntegrand& f, Complex start, Complex end) {
  const Complex d = end - start;
  return integrate_tanh_sinh([&](double s, double one_minus_s) {
    PathPoint p;
    p.from_start = s * d;
    p.to_end = one_minus_s * d;
    p.w = s <= 0.5 ? start + p.from_start : end - p.to_end;
    return f(p) * d;
  });
}

EvalResult integrate_to_infinity(const PathIntegrand& f, Complex start) {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  auto at = [&](double t) {
    return f(PathPoint{start + t, Complex(t, 0.0), Complex(kInf, 0.0)});
  };
  const Complex f10 = at(1e10);
  const Complex f12 = at(1e12);
  if (!finite(f10) || !finite(f12)) {
    throw DecayCheckFailed("integrand is not finite far along the ray");
  }
  const double g10 = std::abs(f10) * std::pow(1e10, 1.01);
  const double g12 = std::abs(f12) * std::pow(1e12, 1.01);
  if (g12 > g10) {
    throw DecayCheckFailed("|f(t)| t^1.01 grows between t = 1e10 and t = 1e12");
  }
  // t = s / (1 - s); contributions beyond t = 1e100 are below rounding for any
  // integrand that passed the decay check with a margin.
  EvalResult r = integrate_tanh_sinh([&](double s, double one_minus_s) {
    const double t = s / one_minus_s;
    if (t > 1e100) return Complex(0.0, 0.0);
    const double jac = 1.0 / (one_minus_s * one_minus_s);
    return at(t) * jac;
  });
  r.provenance = "ray " + r.provenance;
  return r;
}

namespace {

// w - c, using the exact offsets when c is one of the segment ends.
Complex offset_from(const PathPoint& p, Complex start, Complex end, bool end_finite, Complex c) {
  if (c == start) return p.from_start;
  if (end_finite && c == end) return -p.to_end;
  return p.w - c;
}

}  // namespace

EvalResult repeated_integral(const PathIntegrand& f, const RepeatedIntegralSpec& spec) {
  const int n = spec.order_n;
  if (n < 1) throw InvalidArgument("repeated integral order must be at least 1");
  if (n > kMaxRepeatedOrder) throw OrderCapExceeded("repeated integral order exceeds 6");
  if (spec.upper_is_infinity && spec.free_end == FreeEnd::kUpper) {
    throw InvalidArgument("the infinite end cannot be the free end");
  }
  const bool finite_end = !spec.upper_is_infinity;
  const Complex free_point = spec.free_end == FreeEnd::kLower ? spec.lower : spec.upper;
  const double inv_fact = 1.0 / factorial(n - 1);

  auto kernel = [&](const PathPoint& p) -> Complex {
    if (n == 1) return 1.0;
    // Distance from the free end, oriented so the kernel is positive in u.
    const Complex dw = spec.free_end == FreeEnd::kLower ? p.from_start : p.to_end;
    Complex du = dw;
    if (spec.measure != Measure::kFlat) {
      const Complex pole = spec.measure == Measure::kInvSqMinus ? 1.0 : -1.0;
      du = dw / (offset_from(p, spec.lower, spec.upper, finite_end, pole) * (free_point - pole));
    }
    return principal_pow(du, static_cast<double>(n - 1)) * inv_fact;
  };
  auto measure = [&](const PathPoint& p) -> Complex {
    if (spec.measure == Measure::kFlat) return 1.0;
    const Complex pole = spec.measure == Measure::kInvSqMinus ? 1.0 : -1.0;
    const Complex d = offset_from(p, spec.lower, spec.upper, finite_end, pole);
    return 1.0 / (d * d);
  };
  PathIntegrand reduced = [&](const PathPoint& p) {
    const Complex value = f(p);
    if (value == Complex(0.0, 0.0)) return value;
    return kernel(p) * measure(p) * value;
  };
  EvalResult r = spec.upper_is_infinity ? integrate_to_infinity(reduced, spec.lower)
                                        : integrate_segment(reduced, spec.lower, spec.upper);
  r.provenance = "repeated n=" + std::to_string(n) + " " + r.provenance;
  return r;
}

double distance_to_cut(Complex z, const Cut& cut) {
  const double x = std::clamp(z.real(), cut.lo, cut.hi);
  return std::abs(z - Complex(x, 0.0));
}

double default_contour_radius(Complex z0, std::span<const Cut> cuts) {
  double nearest = std::numeric_limits<double>::infinity();
  for (const Cut& c : cuts) nearest = std::min(nearest, distance_to_cut(z0, c));
  return std::min(0.5, 0.5 * nearest);
}

std::vector<Complex> contour_derivatives(const AnalyticFn& f, Complex z0, int n_max,
                                         double radius, std::span<const Cut> cuts) {
  if (n_max < 0) throw InvalidArgument("derivative order must be non-negative");
  if (radius <= 0.0) radius = default_contour_radius(z0, cuts);
  for (const Cut& c : cuts) {
    if (distance_to_cut(z0, c) <= radius) {
      throw CutIntersection("contour disk intersects a declared cut");
    }
  }
  if (!(radius > 0.0)) throw CutIntersection("contour centre lies on a declared cut");

  constexpr int kStartPoints = 16;
  constexpr int kMaxPoints = 1 << 13;
  int m = kStartPoints;
  while (m < 2 * (n_max + 1)) m *= 2;

  std::vector<Complex> samples;
  samples.reserve(kMaxPoints);
  double max_abs = 0.0;
  auto sample = [&](int j, int points) {
    const Complex v = f(z0 + std::polar(radius, 2.0 * kPi * j / points));
    if (!finite(v)) throw NonConvergence("function is not finite on the contour");
    max_abs = std::max(max_abs, std::abs(v));
    return v;
  };
  for (int j = 0; j < m; ++j) samples.push_back(sample(j, m));

  auto coefficients = [&](const std::vector<Complex>& values) {
    const int points = static_cast<int>(values.size());
    std::vector<Complex> d(n_max + 1);
    for (int k = 0; k <= n_max; ++k) {
      Complex sum = 0.0;
      for (int j = 0; j < points; ++j) {
        // e^{-i k theta_j}, angle reduced modulo the number of points
        const long long idx = (static_cast<long long>(k) * j) % points;
        sum += values[j] * std::polar(1.0, -2.0 * kPi * static_cast<double>(idx) / points);
      }
      d[k] = sum / static_cast<double>(points) * factorial(k) / std::pow(radius, k);
    }
    return d;
  };

  std::vector<Complex> current = coefficients(samples);
  while (2 * m <= kMaxPoints) {
    std::vector<Complex> refined(2 * m);
    for (int j = 0; j < m; ++j) refined[2 * j] = samples[j];
    for (int j = 0; j < m; ++j) refined[2 * j + 1] = sample(2 * j + 1, 2 * m);
    samples = std::move(refined);
    m *= 2;
    std::vector<Complex> next = coefficients(samples);
    bool settled = true;
    for (int k = 0; k <= n_max; ++k) {
      const double scale = max_abs * factorial(k) / std::pow(radius, k);
      const double ref = std::max(std::abs(next[k]), 1e-3 * scale);
      if (std::abs(next[k] - current[k]) > 1e-11 * ref) settled = false;
    }
    current = std::move(next);
    if (settled) return current;
  }
  throw NonConvergence("contour trapezoid rule did not settle");
}

Complex contour_derivative_fixed(const AnalyticFn& f, Complex z0, int n, double radius,
                                 int points) {
  Complex sum = 0.0;
  for (int j = 0; j < points; ++j) {
    const double theta = 2.0 * kPi * j / points;
    const long long idx = (static_cast<long long>(n) * j) % points;
    sum += f(z0 + std::polar(radius, theta)) *
           std::polar(1.0, -2.0 * kPi * static_cast<double>(idx) / points);
  }
  return sum / static_cast<double>(points) * factorial(n) / std::pow(radius, n);
}

Complex contour_derivative(const AnalyticFn& f, Complex z0, int n, double radius,
                           std::span<const Cut> cuts) {
  return contour_derivatives(f, z0, n, radius, cuts)[n];
}

}  // namespace jacobi
