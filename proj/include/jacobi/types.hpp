#pragma once

#include <string>

#include "jacobi/scalar_kernel.hpp"

namespace jacobi {

/// Parameters (alpha, beta, gamma) of a Jacobi function.
struct JacobiParams {
  Complex alpha;
  Complex beta;
  Complex gamma;

  /// alpha + gamma not in {-1, -2, ...}.
  bool first_kind_valid() const { return !is_negative_integer(alpha + gamma); }
  /// Additionally beta + gamma not in {-1, -2, ...}.
  bool second_kind_valid() const {
    return first_kind_valid() && !is_negative_integer(beta + gamma);
  }
};

enum class RepresentationId { kRep1, kRep2, kRep3, kRep4, kAuto };

const char* to_string(RepresentationId rep);

/// A value with an a-posteriori error estimate and a short note on how it was
/// produced ("rep3/pfaff", "gauss-jacobi m=64", ...).
struct EvalResult {
  Complex value;
  double abs_error = 0.0;
  RepresentationId representation = RepresentationId::kAuto;
  std::string provenance;
};

}  // namespace jacobi
