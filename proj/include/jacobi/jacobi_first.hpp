#pragma once

#include <utility>

#include "jacobi/hypergeom.hpp"
#include "jacobi/types.hpp"

namespace jacobi {

/// Jacobi function of the first kind P_gamma^(alpha,beta)(z) on C \ (-inf, -1].
///
/// REP1/REP2 are series in (1-z)/2, REP3/REP4 in (z-1)/(z+1). A fixed
/// representation only uses the Pfaff/Euler maps (NoConvergentPath when its
/// argument needs more); AUTO picks the smaller argument and may continue
/// analytically.
EvalResult jacobi_p(const JacobiParams& params, Complex z,
                    RepresentationId rep = RepresentationId::kAuto);

/// Gamma(alpha+gamma+1) / (Gamma(alpha+1) Gamma(gamma+1)).
Complex jacobi_p_at_one(const JacobiParams& params);

/// Classical Jacobi polynomial by its terminating sum; regular for every alpha.
Complex jacobi_polynomial(int n, Complex alpha, Complex beta, Complex x);

/// (Taylor polynomial of order n-1 about z = 1, closed 3F2 form). The Taylor
/// sum uses the derivatives at 1 obtained from the degree-lowering derivative
/// formula and the value at 1.
std::pair<Complex, Complex> taylor_section(const JacobiParams& params, int n, Complex z);

/// Throws DomainCutError when z is within 1e-12 of (-inf, -1].
void check_first_kind_domain(Complex z);

}  // namespace jacobi
