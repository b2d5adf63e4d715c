#pragma once

#include <utility>
#include <vector>

#include "jacobi/scalar_kernel.hpp"

namespace jacobi {

/// How a hypergeometric value was obtained.
enum class HypPath {
  kDirect,        ///< power series in the original argument
  kPfaff,         ///< series in z/(z-1)
  kEuler,         ///< Euler transformation, same argument
  kContinuation,  ///< Taylor re-expansion along a ray from |z| = 1/2
};

const char* to_string(HypPath path);

/// Partial sum of a hypergeometric series.
struct SeriesValue {
  Complex value;
  double abs_error_estimate = 0.0;
  int terms_used = 1;
  bool terminated = false;  ///< finite sum; the error estimate is pure rounding
  HypPath path = HypPath::kDirect;
};

struct HypParams {
  std::vector<Complex> upper;
  std::vector<Complex> lower;
  Complex argument;
};

/// Whether a 2F1 evaluation may leave the convergence disk.
enum class Continuation {
  kSeriesOnly,  ///< Pfaff/Euler only; NoConvergentPath past modulus 0.99
  kFull,        ///< fall back to Taylor re-expansion past modulus 0.75
};

inline constexpr double kSeriesRelTol = 1e-15;
inline constexpr int kSeriesMaxTerms = 10000;
inline constexpr double kTransformThreshold = 0.75;
inline constexpr double kSeriesOnlyThreshold = 0.99;

/// Generalized hypergeometric series rFs. Terminates exactly when an upper
/// parameter is a non-positive integer.
SeriesValue phyp(const HypParams& p);

/// Olver's regularized rFs: each lower Pochhammer replaced by 1/Gamma(b+k).
/// Entire in the lower parameters.
SeriesValue ophyp(const HypParams& p);

/// Gauss 2F1(a, b; c; z) on the cut plane C \ [1, inf).
SeriesValue gauss2f1(Complex a, Complex b, Complex c, Complex z,
                     Continuation policy = Continuation::kFull);

/// Regularized 2F1 / Gamma(c), valid for every c.
SeriesValue ohyp2f1(Complex a, Complex b, Complex c, Complex z,
                    Continuation policy = Continuation::kFull);

/// Evaluates sum_{k=0}^{m} (a)_k / (b)_k z^k / k! directly and through its
/// reversed form (a)_m/(b)_m z^m/m! * F(-m, 1-m-b..., 1; 1-m-a...; 1/z).
/// `upper` must have one more element than `lower`.
std::pair<SeriesValue, SeriesValue> reverse_finite_series(
    const std::vector<Complex>& upper, const std::vector<Complex>& lower, int m,
    Complex z);

}  // namespace jacobi
