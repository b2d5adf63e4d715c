#pragma once

#include <functional>
#include <limits>
#include <span>
#include <vector>

#include "jacobi/types.hpp"

namespace jacobi {

/// Nodes and weights for  int_{-1}^{1} f(t) (1-t)^a (1+t)^b dt.
struct QuadratureRule {
  std::vector<double> nodes;    // strictly increasing
  std::vector<double> weights;  // positive
  double exponent_a = 0.0;
  double exponent_b = 0.0;
};

/// m-point Gauss-Jacobi rule (Golub-Welsch). Throws ExponentError for a or b <= -1.
QuadratureRule gauss_jacobi_rule(int m, double a, double b);

/// Weighted integral over [-1, 1] with rule doubling from 8 to 256 nodes.
EvalResult integrate_finite(const std::function<Complex(double)>& f, double a, double b);

/// A point on a segment [start, end]: w = start + s (end - start).
/// `from_start` = w - start and `to_end` = end - w are carried exactly, so
/// integrands with power singularities at either end keep full precision.
struct PathPoint {
  Complex w;
  Complex from_start;
  Complex to_end;
};

using PathIntegrand = std::function<Complex(const PathPoint&)>;
using AnalyticFn = std::function<Complex(Complex)>;

/// Tanh-sinh quadrature of g over [0, 1]; g receives s and 1 - s separately.
EvalResult integrate_tanh_sinh(const std::function<Complex(double, double)>& g);

/// int_start^end f(w) dw along the straight segment.
EvalResult integrate_segment(const PathIntegrand& f, Complex start, Complex end);

/// int f(w) dw along the ray w = start + t, t in [0, inf). Throws DecayCheckFailed
/// if |f(start + t)| t^1.01 grows between t = 1e10 and t = 1e12.
EvalResult integrate_to_infinity(const PathIntegrand& f, Complex start);

enum class Measure {
  kFlat,        // dw
  kInvSqMinus,  // (w - 1)^{-2} dw
  kInvSqPlus,   // (w + 1)^{-2} dw
};

enum class FreeEnd { kLower, kUpper };

inline constexpr int kMaxRepeatedOrder = 6;

/// n-fold iterated integral  int ... int f [dmu(w)]^n  between `lower` and
/// `upper` (or +infinity). The endpoint marked free is the variable of the
/// outermost integral; every inner integral runs between it and the fixed end.
struct RepeatedIntegralSpec {
  int order_n = 1;
  Complex lower;
  Complex upper;
  bool upper_is_infinity = false;
  Measure measure = Measure::kFlat;
  FreeEnd free_end = FreeEnd::kLower;
};

/// Reduces the iterated integral to one integral with kernel
/// |u(w) - u(free end)|^{n-1} / (n-1)!, u the antiderivative of the measure.
EvalResult repeated_integral(const PathIntegrand& f, const RepeatedIntegralSpec& spec);

/// Closed real interval [lo, hi] (either end may be infinite) across which a
/// function is discontinuous.
struct Cut {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
};

/// Distance from z to the nearest point of the cut.
double distance_to_cut(Complex z, const Cut& cut);

/// Radius used when the caller passes radius <= 0: half the distance to the
/// nearest cut, capped at 0.5.
double default_contour_radius(Complex z0, std::span<const Cut> cuts);

/// f(z0), f'(z0), ..., f^{(n_max)}(z0) from one trapezoid rule on the circle
/// |w - z0| = radius. Points are doubled (reusing earlier samples) until every
/// derivative changes by at most 1e-11 relative.
std::vector<Complex> contour_derivatives(const AnalyticFn& f, Complex z0, int n_max,
                                         double radius = 0.0,
                                         std::span<const Cut> cuts = {});

/// n-th derivative from a single M-point trapezoid rule (no refinement).
Complex contour_derivative_fixed(const AnalyticFn& f, Complex z0, int n, double radius,
                                 int points);

/// n-th derivative via contour_derivatives.
Complex contour_derivative(const AnalyticFn& f, Complex z0, int n, double radius = 0.0,
                           std::span<const Cut> cuts = {});

}  // namespace jacobi
