#include "jacobi/scalar_kernel.hpp"

#include <array>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "jacobi/errors.hpp"

namespace jacobi {
namespace {

constexpr double kPi = std::numbers::pi;

// Lanczos approximation, g = 7, 15 terms (coefficients interpolated at
// z = 0..14 in 50-digit arithmetic; model error below 1e-17 for Re z >= -1/2).
constexpr double kLanczosG = 7.0;
constexpr std::array<double, 15> kLanczosCoeff = {
    1.0000000000000000074,      676.52036812188353721,
    -1259.1392167222817739,     771.32342877543770652,
    -176.61502914598978109,     12.507343225028745327,
    -0.13857103233328224313,    0.000010091126294731372862,
    -3.4345842252531046081e-7,  8.3593378357125965382e-7,
    -8.5977556445396087554e-7,  6.0464973384949281078e-7,
    -2.9113287278906137139e-7,  8.5891293135682268559e-8,
    -1.1646065639867851529e-8,
};

Complex lanczos_sum(Complex x) {
  Complex sum = kLanczosCoeff[0];
  for (std::size_t k = 1; k < kLanczosCoeff.size(); ++k) {
    sum += kLanczosCoeff[k] / (x + static_cast<double>(k));
  }
  return sum;
}

// log Gamma(z) for Re z >= 1/2.
Complex log_gamma_right(Complex z) {
  const Complex x = z - 1.0;
  const Complex t = x + kLanczosG + 0.5;
  return 0.5 * std::log(2.0 * kPi) + (x + 0.5) * principal_log(t) - t +
         principal_log(lanczos_sum(x));
}

// Gamma at 1, 2, ..., 171 is an exactly representable or correctly rounded
// factorial; the Lanczos sum would be off by an ulp or two.
bool small_positive_integer(Complex z) {
  return z.imag() == 0.0 && z.real() >= 1.0 && z.real() <= 171.0 &&
         z.real() == std::round(z.real());
}

void check_pole(Complex z, const char* what) {
  if (is_nonpositive_integer(z)) {
    throw PoleError(std::string(what) + " has a pole at z = " +
                    std::to_string(z.real()));
  }
}

}  // namespace

double distance_to_nonpositive_integers(Complex z) {
  const double nearest = std::min(0.0, std::round(z.real()));
  return std::abs(z - Complex(nearest, 0.0));
}

bool is_nonpositive_integer(Complex z, double tol) {
  return distance_to_nonpositive_integers(z) < tol;
}

bool is_negative_integer(Complex z, double tol) {
  const double nearest = std::min(-1.0, std::round(z.real()));
  return std::abs(z - Complex(nearest, 0.0)) < tol;
}

Complex principal_log(Complex z) {
  double arg = std::atan2(z.imag(), z.real());
  if (z.imag() == 0.0 && z.real() < 0.0) arg = kPi;
  return {std::log(std::abs(z)), arg};
}

Complex principal_pow(Complex base, Complex exponent) {
  if (exponent.imag() == 0.0 && exponent.real() == std::round(exponent.real()) &&
      std::abs(exponent.real()) <= 64.0) {
    int m = static_cast<int>(exponent.real());
    const bool invert = m < 0;
    if (invert) m = -m;
    Complex result = 1.0;
    Complex factor = base;
    while (m > 0) {
      if (m & 1) result *= factor;
      factor *= factor;
      m >>= 1;
    }
    return invert ? 1.0 / result : result;
  }
  if (base == Complex(0.0, 0.0)) {
    if (exponent.real() > 0.0) return 0.0;
    return {std::numeric_limits<double>::infinity(), 0.0};
  }
  return std::exp(exponent * principal_log(base));
}

Complex sin_pi(Complex z) {
  const double n = std::round(z.real());
  const double f = z.real() - n;
  const Complex s = std::sin(kPi * Complex(f, z.imag()));
  if (f == 0.0 && z.imag() == 0.0) return 0.0;
  return std::fmod(n, 2.0) == 0.0 ? s : -s;
}

Complex gamma(Complex z) {
  check_pole(z, "gamma");
  if (small_positive_integer(z)) return factorial(static_cast<int>(z.real()) - 1);
  if (z.real() < 0.5) {
    return kPi / (sin_pi(z) * gamma(1.0 - z));
  }
  return std::exp(log_gamma_right(z));
}

Complex reciprocal_gamma(Complex z) {
  if (small_positive_integer(z)) return 1.0 / factorial(static_cast<int>(z.real()) - 1);
  if (z.real() < 0.5) {
    // 1/Gamma(z) = sin(pi z) Gamma(1 - z) / pi is entire.
    const Complex s = sin_pi(z);
    if (s == Complex(0.0, 0.0)) return 0.0;
    return s * std::exp(log_gamma_right(1.0 - z)) / kPi;
  }
  return std::exp(-log_gamma_right(z));
}

Complex log_gamma(Complex z) {
  check_pole(z, "log_gamma");
  if (z.real() < 0.5) {
    return std::log(kPi) - principal_log(sin_pi(z)) - log_gamma_right(1.0 - z);
  }
  return log_gamma_right(z);
}

Complex pochhammer(Complex a, int n) {
  if (n >= 0) {
    Complex p = 1.0;
    for (int j = 0; j < n; ++j) p *= a + static_cast<double>(j);
    return p;
  }
  const Complex denom = pochhammer(a + static_cast<double>(n), -n);
  if (denom == Complex(0.0, 0.0) || std::abs(denom) < kPoleTolerance) {
    throw UndefinedError("(a)_n with n < 0 hits a pole of Gamma(a+n) that Gamma(a) does not cancel");
  }
  return 1.0 / denom;
}

Complex binomial(Complex z, int n) {
  if (n < 0) throw InvalidArgument("binomial requires n >= 0");
  const double sign = (n % 2 == 0) ? 1.0 : -1.0;
  return sign * pochhammer(-z, n) / factorial(n);
}

Complex pochhammer_product(std::span<const Complex> a, int k) {
  Complex p = 1.0;
  for (const Complex& ai : a) p *= pochhammer(ai, k);
  return p;
}

double factorial(int n) {
  double f = 1.0;
  for (int j = 2; j <= n; ++j) f *= j;
  return f;
}

}  // namespace jacobi
