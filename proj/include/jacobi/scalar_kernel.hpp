#pragma once

#include <complex>
#include <span>

namespace jacobi {

using Complex = std::complex<double>;

// Distance below which a value is classified as a non-positive integer.
inline constexpr double kPoleTolerance = 1e-12;

/// True when z lies within `tol` of {0, -1, -2, ...}.
bool is_nonpositive_integer(Complex z, double tol = kPoleTolerance);

/// True when z lies within `tol` of {-1, -2, ...}.
bool is_negative_integer(Complex z, double tol = kPoleTolerance);

/// Distance from z to the nearest element of {0, -1, -2, ...}.
double distance_to_nonpositive_integers(Complex z);

/// Principal logarithm with Arg in (-pi, pi]. A negative real argument with a
/// signed-zero imaginary part is always mapped to +pi.
Complex principal_log(Complex z);

/// w^s = exp(s Log w). Integer real exponents are evaluated by repeated
/// multiplication so that polynomial weights stay single-valued.
Complex principal_pow(Complex base, Complex exponent);

/// sin(pi z) with argument reduction, exact zero at integers.
Complex sin_pi(Complex z);

/// Principal gamma function. Throws PoleError on {0, -1, -2, ...}.
Complex gamma(Complex z);

/// 1/Gamma(z); entire, exactly zero at the poles of gamma.
Complex reciprocal_gamma(Complex z);

/// A branch of log Gamma(z) (exp of it is Gamma(z)). Throws PoleError on poles.
Complex log_gamma(Complex z);

/// Rising factorial (a)_n. For n >= 0 the direct product is used, so a
/// terminating factor yields an exact zero. For n < 0, (a)_n = 1/(a+n)_{-n};
/// throws UndefinedError when that product vanishes.
Complex pochhammer(Complex a, int n);

/// Generalized binomial coefficient binom(z, n) = (-1)^n (-z)_n / n!, n >= 0.
Complex binomial(Complex z, int n);

/// (a_1)_k (a_2)_k ... (a_r)_k; the empty product is 1.
Complex pochhammer_product(std::span<const Complex> a, int k);

/// n! as a double.
double factorial(int n);

}  // namespace jacobi
