#pragma once

#include "jacobi/hypergeom.hpp"
#include "jacobi/types.hpp"

namespace jacobi {

/// Jacobi function of the second kind Q_gamma^(alpha,beta)(z), z off [-1, 1].
///
/// REP1/REP2 are series in 2/(1-z), REP3/REP4 in 2/(1+z). The power
/// prefactors use principal branches, so for real z < -1 the value is the
/// limit from the upper half-plane.
EvalResult jacobi_q(const JacobiParams& params, Complex z,
                    RepresentationId rep = RepresentationId::kAuto);

struct QIntegralSpec {
  JacobiParams params;
  Complex z;
  int shift_k = 0;
  bool auto_shift = false;  // replace shift_k by minimal_shift(params)
};

/// Smallest k >= 0 with Re(alpha+gamma-k) > -1, Re(beta+gamma-k) > -1 and
/// (-gamma)_k != 0. Throws ConvergenceConstraintError when none exists.
int minimal_shift(const JacobiParams& params);

/// Integral representation over [-1, 1] with kernel
/// (1-t)^{alpha+gamma} (1+t)^{beta+gamma} (z-t)^{-gamma-1}. Requires shift_k = 0.
EvalResult jacobi_q_integral(const QIntegralSpec& spec);

/// The same integral with gamma = delta + k: the exponents drop by k and the
/// kernel gains P_k^{(alpha+gamma-k, beta+gamma-k)}(t).
EvalResult jacobi_q_integral_shifted(const QIntegralSpec& spec);

/// Q for integer degree n through the Neumann-type integral of P_n^{(alpha,beta)}.
EvalResult neumann_q(int n, Complex alpha, Complex beta, Complex z);

/// Throws DomainCutError when z is within 1e-12 of [-1, 1].
void check_second_kind_domain(Complex z);

}  // namespace jacobi
