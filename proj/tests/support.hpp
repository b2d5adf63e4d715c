#pragma once

#include <algorithm>
#include <complex>
#include <random>

#include "jacobi/scalar_kernel.hpp"

namespace testing_support {

using jacobi::Complex;

inline double rel_err(Complex got, Complex want) {
  return std::abs(got - want) / std::max({std::abs(want), std::abs(got), 1e-300});
}

inline Complex random_complex(std::mt19937_64& rng, double lo, double hi,
                              double im) {
  std::uniform_real_distribution<double> re_dist(lo, hi);
  std::uniform_real_distribution<double> im_dist(-im, im);
  const double re = re_dist(rng);
  return {re, im_dist(rng)};
}

}  // namespace testing_support
