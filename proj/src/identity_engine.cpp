#include "jacobi/identity_engine.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <random>
#include <thread>

#include "jacobi/errors.hpp"
#include "jacobi/hypergeom.hpp"
#include "jacobi/jacobi_first.hpp"
#include "jacobi/jacobi_second.hpp"

namespace jacobi {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPoleMargin = 0.1;
constexpr double kImproperMargin = 0.25;
constexpr double kCutClearance = 0.2;

const Cut kCutMinusOne{-kInf, -1.0};  // P and (1+w)^x
const Cut kCutPlusOne{1.0, kInf};     // (1-w)^x
const Cut kCutLeftOfOne{-kInf, 1.0};  // Q and (w-1)^x

using Fn = std::function<Complex(Complex)>;

thread_local long t_cost = 0;

void guard_pole(Complex x, const std::string& what) {
  if (distance_to_nonpositive_integers(x) < kPoleMargin) {
    throw ConstraintViolation(what + " near a pole");
  }
}

void guard_nonzero(Complex x, const std::string& what) {
  if (std::abs(x) < kPoleMargin) throw ConstraintViolation(what + " near zero");
}

// (a)_n, rejected when a factor is close to zero.
Complex pc(Complex a, int n) {
  for (int k = 0; k < n; ++k) guard_nonzero(a + static_cast<double>(k), "Pochhammer factor");
  return pochhammer(a, n);
}

Complex G(Complex x) {
  guard_pole(x, "Gamma argument");
  return gamma(x);
}

Complex P(Complex a, Complex b, Complex g, Complex z) {
  guard_pole(a + g + 1.0, "Gamma(alpha+gamma+1)");
  ++t_cost;
  return jacobi_p({a, b, g}, z).value;
}

Complex Q(Complex a, Complex b, Complex g, Complex z) {
  guard_pole(a + g + 1.0, "Gamma(alpha+gamma+1)");
  guard_pole(b + g + 1.0, "Gamma(beta+gamma+1)");
  ++t_cost;
  return jacobi_q({a, b, g}, z).value;
}

Complex pw(Complex base, Complex e) { return principal_pow(base, e); }

double sgn(int n) { return n % 2 == 0 ? 1.0 : -1.0; }

// ---- derivative and integral oracles ------------------------------------

std::vector<Complex> derivatives(const Fn& f, Complex z, int n, const std::vector<Cut>& cuts) {
  return contour_derivatives(f, z, n, 0.0, cuts);
}

Complex dn(const Fn& f, Complex z, int n, const std::vector<Cut>& cuts) {
  return derivatives(f, z, n, cuts)[n];
}

// Unsigned Lah number: (x^2 D)^n = sum_k L(n,k) x^{n+k} D^k.
double lah_number(int n, int k) {
  return binomial(static_cast<double>(n - 1), k - 1).real() * factorial(n) / factorial(k);
}

// [(z - pole)^2 d/dz]^n f at z.
Complex lah_operator(const Fn& f, Complex z, int n, double pole, const std::vector<Cut>& cuts) {
  const std::vector<Complex> d = derivatives(f, z, n, cuts);
  if (n == 0) return d[0];
  const Complex x = z - pole;
  Complex sum = 0.0;
  for (int k = 1; k <= n; ++k) {
    sum += lah_number(n, k) * pw(x, static_cast<double>(n + k)) * d[k];
  }
  return sum;
}

// n-fold integral from z to 1, kernel (w - z)^{n-1}/(n-1)!.
Complex rep_z1(const PathIntegrand& f, Complex z, int n) {
  return repeated_integral(f, {n, z, 1.0, false, Measure::kFlat, FreeEnd::kLower}).value;
}

// n-fold integral from z to infinity along z + t.
Complex rep_zinf(const PathIntegrand& f, Complex z, int n) {
  return repeated_integral(f, {n, z, 0.0, true, Measure::kFlat, FreeEnd::kLower}).value;
}

// n-fold integral from 1 to z against (w - pole)^{-2} dw.
Complex rep_1z(const PathIntegrand& f, Complex z, int n, double pole) {
  const Measure m = pole > 0.0 ? Measure::kInvSqMinus : Measure::kInvSqPlus;
  return repeated_integral(f, {n, 1.0, z, false, m, FreeEnd::kUpper}).value;
}

// ---- constraint checks ---------------------------------------------------

class Checks {
 public:
  Checks& re_above(const char* name, Complex x, double bound, double margin = kImproperMargin) {
    if (!first_ && !(x.real() > bound + margin)) first_ = name;
    return *this;
  }
  Checks& re_below(const char* name, Complex x, double bound, double margin = kImproperMargin) {
    if (!first_ && !(x.real() < bound - margin)) first_ = name;
    return *this;
  }
  // (a)_n != 0, kept 0.1 away from vanishing.
  Checks& poch_nonzero(const char* name, Complex a, int n) {
    for (int k = 0; k < n && !first_; ++k) {
      if (std::abs(a + static_cast<double>(k)) < kPoleMargin) first_ = name;
    }
    return *this;
  }
  Checks& off_poles(const char* name, Complex x) {
    if (!first_ && distance_to_nonpositive_integers(x) < kPoleMargin) first_ = name;
    return *this;
  }
  std::optional<std::string> result() const { return first_; }

 private:
  std::optional<std::string> first_;
};

// ---- rodrigues -----------------------------------------------------------

std::vector<Cut> weight_cuts(Complex minus_exp, Complex plus_exp) {
  auto integral = [](Complex e) {
    return e.imag() == 0.0 && e.real() == std::round(e.real());
  };
  std::vector<Cut> cuts;
  if (!integral(minus_exp)) cuts.push_back(kCutLeftOfOne);
  if (!integral(plus_exp)) cuts.push_back(kCutMinusOne);
  return cuts;
}

Complex rodrigues_impl(int n, Complex a, Complex b, Complex z, RodriguesVariant variant,
                       bool printed_operand) {
  if (n < 0) throw InvalidArgument("Rodrigues degree must be non-negative");
  const double nd = n;
  const double norm = 1.0 / (std::pow(2.0, nd) * factorial(n));
  if (variant == RodriguesVariant::kOne) {
    const Complex em = a + nd, ep = b + 1.0;
    const std::vector<Cut> cuts = weight_cuts(em, ep);
    Fn f = [=](Complex w) { return pw(w - 1.0, em) * pw(w + 1.0, ep); };
    return norm / (pw(z - 1.0, a) * pw(z + 1.0, b + nd + 1.0)) * lah_operator(f, z, n, -1.0, cuts);
  }
  const Complex em = printed_operand ? a : a + 1.0;
  const Complex ep = printed_operand ? b + nd + 1.0 : b + nd;
  const std::vector<Cut> cuts = weight_cuts(em, ep);
  Fn f = [=](Complex w) { return pw(w - 1.0, em) * pw(w + 1.0, ep); };
  return norm / (pw(z - 1.0, a + nd + 1.0) * pw(z + 1.0, b)) * lah_operator(f, z, n, 1.0, cuts);
}

// ---- catalog ---------------------------------------------------------------

using SideFn = std::function<std::vector<Sides>(const JacobiParams&, Complex, int, FormVariant)>;
using CheckFn = std::function<std::optional<std::string>(const JacobiParams&, Complex, int)>;

std::optional<std::string> no_constraints(const JacobiParams&, Complex, int) {
  return std::nullopt;
}

IdentityDescriptor make(std::string id, SideFamily family, ZRegion region, std::vector<Cut> cuts) {
  IdentityDescriptor d;
  d.id = std::move(id);
  d.family = family;
  d.region = region;
  d.cuts = std::move(cuts);
  d.violation = no_constraints;
  if (family == SideFamily::kDerivative) {
    d.n_min = 1;
    d.n_max = 3;
    d.default_orders = {1, 2, 3};
    d.tolerance = 1e-8;
  } else {
    d.n_min = 1;
    d.n_max = 2;
    d.default_orders = {1, 2};
    d.tolerance = 1e-6;
  }
  return d;
}

ParamBox box(ReInterval a, ReInterval b, ReInterval g) {
  ParamBox x;
  x.alpha = a;
  x.beta = b;
  x.gamma = g;
  return x;
}

constexpr ReInterval kDefault{-0.75, 3.0};

std::vector<IdentityDescriptor> build_catalog() {
  std::vector<IdentityDescriptor> cat;
  const std::vector<Cut> first_both{kCutMinusOne, kCutPlusOne};
  const std::vector<Cut> first_left{kCutMinusOne, kCutLeftOfOne};
  const std::vector<Cut> first_only{kCutMinusOne};
  const std::vector<Cut> second{kCutLeftOfOne};
  const auto D = SideFamily::kDerivative;
  const auto I = SideFamily::kIntegral;
  const auto C = SideFamily::kClosedForm;
  const auto R1 = ZRegion::kFirstKind;
  const auto R2 = ZRegion::kSecondKind;

  auto add = [&](IdentityDescriptor d, SideFn sides) {
    d.sides = std::move(sides);
    cat.push_back(std::move(d));
  };
  auto one = [](Complex l, Complex r) { return std::vector<Sides>{{l, r}}; };

  // -- first kind, multi-derivatives --
  {
    auto d = make("FD1", D, R1, first_both);
    add(d, [=, cuts = d.cuts](const JacobiParams& p, Complex z, int n, FormVariant) {
      const auto [a, b, g] = p;
      Fn f = [=](Complex w) { return pw(1.0 - w, a) * pw(1.0 + w, b) * P(a, b, g, w); };
      return one(dn(f, z, n, cuts), std::pow(-2.0, n) * pc(g + 1.0, n) * pw(1.0 - z, a - double(n)) *
                                         pw(1.0 + z, b - double(n)) *
                                         P(a - double(n), b - double(n), g + double(n), z));
    });
  }
  {
    auto d = make("FD2", D, R1, first_both);
    add(d, [=, cuts = d.cuts](const JacobiParams& p, Complex z, int n, FormVariant) {
      const auto [a, b, g] = p;
      Fn f = [=](Complex w) { return pw(1.0 - w, a) * P(a, b, g, w); };
      return one(dn(f, z, n, cuts), pc(-a - g, n) * pw(1.0 - z, a - double(n)) *
                                         P(a - double(n), b + double(n), g, z));
    });
  }
  {
    auto d = make("FD3", D, R1, first_only);
    add(d, [=, cuts = d.cuts](const JacobiParams& p, Complex z, int n, FormVariant) {
      const auto [a, b, g] = p;
      Fn f = [=](Complex w) { return pw(1.0 + w, b) * P(a, b, g, w); };
      return one(dn(f, z, n, cuts), sgn(n) * pc(-b - g, n) * pw(1.0 + z, b - double(n)) *
                                         P(a + double(n), b - double(n), g, z));
    });
  }
  {
    auto d = make("FD4", D, R1, first_only);
    add(d, [=, cuts = d.cuts](const JacobiParams& p, Complex z, int n, FormVariant) {
      const auto [a, b, g] = p;
      Fn f = [=](Complex w) { return P(a, b, g, w); };
      return one(dn(f, z, n, cuts), std::pow(2.0, -n) * pc(a + b + g + 1.0, n) *
                                         P(a + double(n), b + double(n), g - double(n), z));
    });
  }

  // -- first kind, weighted operators [(z -+ 1)^2 d/dz]^n --
  {
    auto d = make("FW1", D, R1, first_left);
    add(d, [=, cuts = d.cuts](const JacobiParams& p, Complex z, int n, FormVariant) {
      const auto [a, b, g] = p;
      const Complex s = a + b + g + 1.0;
      Fn f = [=](Complex w) { return pw(w - 1.0, s) * P(a, b, g, w); };
      return one(lah_operator(f, z, n, 1.0, cuts),
                 pc(s, n) * pw(z - 1.0, s + double(n)) * P(a, b + double(n), g, z));
    });
  }
  {
    auto d = make("FW2", D, R1, first_left);
    add(d, [=, cuts = d.cuts](const JacobiParams& p, Complex z, int n, FormVariant) {
      const auto [a, b, g] = p;
      Fn f = [=](Complex w) { return pw(w - 1.0, -g) * P(a, b, g, w); };
      return one(lah_operator(f, z, n, 1.0, cuts), pc(-a - g, n) * pw(z - 1.0, double(n) - g) *
                                                       P(a, b + double(n), g - double(n), z));
    });
  }
  {
    auto d = make("FW3", D, R1, first_left);
    add(d, [=, cuts = d.cuts](const JacobiParams& p, Complex z, int n, FormVariant) {
      const auto [a, b, g] = p;
      Fn f = [=](Complex w) { return pw(w + 1.0, b) * pw(w - 1.0, a + g + 1.0) * P(a, b, g, w); };
      return one(lah_operator(f, z, n, 1.0, cuts),
                 std::pow(2.0, n) * pc(g + 1.0, n) * pw(z + 1.0, b - double(n)) *
                     pw(z - 1.0, a + g + 1.0 + double(n)) * P(a, b - double(n), g + double(n), z));
    });
  }
  {
    auto d = make("FW4", D, R1, first_left);
    add(d, [=, cuts = d.cuts](const JacobiParams& p, Complex z, int n, FormVariant) {
      const auto [a, b, g] = p;
      Fn f = [=](Complex w) { return pw(w + 1.0, b) * pw(w - 1.0, -b - g) * P(a, b, g, w); };
      return one(lah_operator(f, z, n, 1.0, cuts),
                 std::pow(2.0, n) * pc(-b - g, n) * pw(z + 1.0, b - double(n)) *
                     pw(z - 1.0, -(b - double(n) + g)) * P(a, b - double(n), g, z));
    });
  }
  {
    auto d = make("FW5", D, R1, first_left);
    add(d, [=, cuts = d.cuts](const JacobiParams& p, Complex z, int n, FormVariant) {
      const auto [a, b, g] = p;
      const Complex s = a + b + g + 1.0;
      Fn f = [=](Complex w) { return pw(w + 1.0, s) * P(a, b, g, w); };
      return one(lah_operator(f, z, n, -1.0, cuts),
                 pc(s, n) * pw(z + 1.0, s + double(n)) * P(a + double(n), b, g, z));
    });
  }
  {
    auto d = make("FW6", D, R1, first_left);
    add(d, [=, cuts = d.cuts](const JacobiParams& p, Complex z, int n, FormVariant) {
      const auto [a, b, g] = p;
      Fn f = [=](Complex w) { return pw(w + 1.0, -g) * P(a, b, g, w); };
      return one(lah_operator(f, z, n, -1.0, cuts),
                 pc(1.0 + b + g - double(n), n) * pw(z + 1.0, double(n) - g) *
                     P(a + double(n), b, g - double(n), z));
    });
  }
  {
    auto d = make("FW7", D, R1, first_left);
    d.alternate_note = "RHS power (z+1)^(beta+gamma+n) instead of (z+1)^(beta+gamma+1+n)";
    add(d, [=, cuts = d.cuts](const JacobiParams& p, Complex z, int n, FormVariant form) {
      const auto [a, b, g] = p;
      Fn f = [=](Complex w) { return pw(w - 1.0, a) * pw(w + 1.0, b + g + 1.0) * P(a, b, g, w); };
      const double shift = form == FormVariant::kCatalog ? 1.0 : 0.0;
      return one(lah_operator(f, z, n, -1.0, cuts),
                 std::pow(2.0, n) * pc(g + 1.0, n) * pw(z - 1.0, a - double(n)) *
                     pw(z + 1.0, b + g + shift + double(n)) * P(a - double(n), b, g + double(n), z));
    });
  }
  {
    auto d = make("FW8", D, R1, first_left);
    add(d, [=, cuts = d.cuts](const JacobiParams& p, Complex z, int n, FormVariant) {
      const auto [a, b, g] = p;
      Fn f = [=](Complex w) { return pw(w - 1.0, a) * pw(w + 1.0, -a - g) * P(a, b, g, w); };
      return one(lah_operator(f, z, n, -1.0, cuts),
                 std::pow(-2.0, n) * pc(-a - g, n) * pw(z - 1.0, a - double(n)) *
                     pw(z + 1.0, -(a - double(n) + g)) * P(a - double(n), b, g, z));
    });
  }

  // -- Rodrigues formulas; gamma is the degree n --
  for (int v = 0; v < 2; ++v) {
    auto d = make(v == 0 ? "FR1" : "FR2", D, R1, first_left);
    d.degree_from_n = true;
    d.cuts_for = [](const JacobiParams& p) { return weight_cuts(p.alpha, p.beta); };
    if (v == 1) d.alternate_note = "operand (w-1)^alpha (w+1)^(beta+n+1)";
    const RodriguesVariant rv = v == 0 ? RodriguesVariant::kOne : RodriguesVariant::kTwo;
    add(d, [rv](const JacobiParams& p, Complex z, int n, FormVariant form) {
      return std::vector<Sides>{
          {rodrigues_impl(n, p.alpha, p.beta, z, rv, form == FormVariant::kAlternate),
           jacobi_polynomial(n, p.alpha, p.beta, z)}};
    });
  }

  // -- first kind, multi-integrals from z to 1 --
  {
    auto d = make("FI1", I, R1, first_both);
    d.box = box({-0.7, 3.0}, {-0.7, 3.0}, kDefault);
    d.constraints = "Re alpha > -1, Re beta > -1, (-gamma)_n != 0";
    d.violation = [](const JacobiParams& p, Complex, int n) {
      return Checks()
          .re_above("Re alpha > -1", p.alpha, -1.0)
          .re_above("Re beta > -1", p.beta, -1.0)
          .poch_nonzero("(-gamma)_n != 0", -p.gamma, n)
          .result();
    };
    add(d, [](const JacobiParams& p, Complex z, int n, FormVariant) {
      const auto [a, b, g] = p;
      PathIntegrand f = [=](const PathPoint& q) {
        return pw(q.to_end, a) * pw(1.0 + q.w, b) * P(a, b, g, q.w);
      };
      const double nd = n;
      return std::vector<Sides>{{rep_z1(f, z, n), sgn(n) / (std::pow(2.0, nd) * pc(-g, n)) *
                                                      pw(1.0 - z, a + nd) * pw(1.0 + z, b + nd) *
                                                      P(a + nd, b + nd, g - nd, z)}};
    });
  }
  {
    auto d = make("FI2", I, R1, first_both);
    d.box = box({-0.7, 3.0}, kDefault, kDefault);
    d.constraints = "Re alpha > -1";
    d.violation = [](const JacobiParams& p, Complex, int) {
      return Checks().re_above("Re alpha > -1", p.alpha, -1.0).result();
    };
    add(d, [](const JacobiParams& p, Complex z, int n, FormVariant) {
      const auto [a, b, g] = p;
      PathIntegrand f = [=](const PathPoint& q) { return pw(q.to_end, a) * P(a, b, g, q.w); };
      const double nd = n;
      return std::vector<Sides>{{rep_z1(f, z, n), pw(1.0 - z, a + nd) / pc(a + g + 1.0, n) *
                                                      P(a + nd, b - nd, g, z)}};
    });
  }
  {
    auto d = make("FI3a", I, R1, first_only);
    d.constraints = "(-alpha-beta-gamma)_n != 0, alpha+beta+gamma != 0";
    d.violation = [](const JacobiParams& p, Complex, int n) {
      const Complex s = p.alpha + p.beta + p.gamma;
      Checks c;
      c.poch_nonzero("(-alpha-beta-gamma)_n != 0", -s, n).poch_nonzero("alpha+beta+gamma != 0", s, 1);
      if (n >= 2) {
        c.off_poles("gamma+2 off the poles", p.gamma + 2.0)
            .off_poles("1-alpha-beta-gamma off the poles", 1.0 - s);
      }
      return c.result();
    };
    add(d, [](const JacobiParams& p, Complex z, int n, FormVariant) {
      const auto [a, b, g] = p;
      PathIntegrand f = [=](const PathPoint& q) { return P(a, b, g, q.w); };
      const double nd = n;
      const Complex s = a + b + g;
      const Complex series =
          phyp({{1.0 - nd, 1.0 - a, 1.0}, {g + 2.0, 1.0 - s}, 2.0 / (1.0 - z)}).value;
      const Complex rhs = std::pow(2.0, nd) / pc(-s, n) * P(a - nd, b - nd, g + nd, z) +
                          2.0 * G(a + g + 1.0) * pw(1.0 - z, nd - 1.0) * reciprocal_gamma(a) *
                              reciprocal_gamma(g + 2.0) / (factorial(n - 1) * s) * series;
      return std::vector<Sides>{{rep_z1(f, z, n), rhs}};
    });
  }
  {
    auto d = make("FI3b", I, R1, first_only);
    d.z_radius_max = 1.6;
    d.constraints = "|1 - z| <= 1.6";
    add(d, [](const JacobiParams& p, Complex z, int n, FormVariant) {
      const auto [a, b, g] = p;
      PathIntegrand f = [=](const PathPoint& q) { return P(a, b, g, q.w); };
      const double nd = n;
      const Complex series =
          ophyp({{-g, a + b + g + 1.0, 1.0}, {a + 1.0, nd + 1.0}, (1.0 - z) / 2.0}).value;
      const Complex rhs = G(a + g + 1.0) * pw(1.0 - z, nd) * reciprocal_gamma(g + 1.0) * series;
      return std::vector<Sides>{{rep_z1(f, z, n), rhs}};
    });
  }

  // -- first kind, multi-integrals from z to infinity --
  {
    auto d = make("FJ1", I, R1, first_both);
    d.ray_path = true;
    d.box = box({-3.4, -2.6}, {-3.4, -2.6}, {1.4, 2.4});
    d.constraints = "Re(alpha+beta+gamma) < -n, Re gamma > n-1";
    d.alternate_note = "RHS without the factor (-1)^n";
    d.violation = [](const JacobiParams& p, Complex, int n) {
      return Checks()
          .re_below("Re(alpha+beta+gamma) < -n", p.alpha + p.beta + p.gamma, -n)
          .re_above("Re gamma > n-1", p.gamma, n - 1.0)
          .result();
    };
    add(d, [](const JacobiParams& p, Complex z, int n, FormVariant form) {
      const auto [a, b, g] = p;
      PathIntegrand f = [=](const PathPoint& q) {
        return pw(1.0 - q.w, a) * pw(1.0 + q.w, b) * P(a, b, g, q.w);
      };
      const double nd = n;
      const double sign = form == FormVariant::kCatalog ? sgn(n) : 1.0;
      return std::vector<Sides>{{rep_zinf(f, z, n), sign / (std::pow(2.0, nd) * pc(-g, n)) *
                                                        pw(1.0 - z, a + nd) * pw(1.0 + z, b + nd) *
                                                        P(a + nd, b + nd, g - nd, z)}};
    });
  }
  {
    auto d = make("FJ2", I, R1, first_both);
    d.ray_path = true;
    d.box = box({-3.5, -2.8}, {1.8, 3.0}, {-0.5, 0.5});
    d.constraints = "Re(alpha+gamma) < -n, Re(beta+gamma) > n-1";
    d.violation = [](const JacobiParams& p, Complex, int n) {
      return Checks()
          .re_below("Re(alpha+gamma) < -n", p.alpha + p.gamma, -n)
          .re_above("Re(beta+gamma) > n-1", p.beta + p.gamma, n - 1.0)
          .result();
    };
    add(d, [](const JacobiParams& p, Complex z, int n, FormVariant) {
      const auto [a, b, g] = p;
      PathIntegrand f = [=](const PathPoint& q) { return pw(1.0 - q.w, a) * P(a, b, g, q.w); };
      const double nd = n;
      return std::vector<Sides>{{rep_zinf(f, z, n), pw(1.0 - z, a + nd) / pc(a + g + 1.0, n) *
                                                        P(a + nd, b - nd, g, z)}};
    });
  }
  {
    auto d = make("FJ3", I, R1, first_only);
    d.ray_path = true;
    d.box = box({1.8, 3.0}, {-3.5, -2.8}, {-0.5, 0.5});
    d.constraints = "Re(beta+gamma) < -n, Re(alpha+gamma) > n-1";
    d.violation = [](const JacobiParams& p, Complex, int n) {
      return Checks()
          .re_below("Re(beta+gamma) < -n", p.beta + p.gamma, -n)
          .re_above("Re(alpha+gamma) > n-1", p.alpha + p.gamma, n - 1.0)
          .result();
    };
    add(d, [](const JacobiParams& p, Complex z, int n, FormVariant) {
      const auto [a, b, g] = p;
      PathIntegrand f = [=](const PathPoint& q) { return pw(1.0 + q.w, b) * P(a, b, g, q.w); };
      const double nd = n;
      return std::vector<Sides>{{rep_zinf(f, z, n), sgn(n) * pw(1.0 + z, b + nd) /
                                                        pc(b + g + 1.0, n) *
                                                        P(a - nd, b + nd, g, z)}};
    });
  }
  {
    auto d = make("FJ4", I, R1, first_only);
    d.ray_path = true;
    d.box = box({2.5, 3.5}, {2.5, 3.5}, {-3.4, -2.6});
    d.constraints = "Re gamma < -n, Re(alpha+beta+gamma) > n-1";
    d.alternate_note = "integrand carries the weight (1+w)^beta";
    d.violation = [](const JacobiParams& p, Complex, int n) {
      return Checks()
          .re_below("Re gamma < -n", p.gamma, -n)
          .re_above("Re(alpha+beta+gamma) > n-1", p.alpha + p.beta + p.gamma, n - 1.0)
          .result();
    };
    add(d, [](const JacobiParams& p, Complex z, int n, FormVariant form) {
      const auto [a, b, g] = p;
      const bool weighted = form == FormVariant::kAlternate;
      PathIntegrand f = [=](const PathPoint& q) {
        const Complex v = P(a, b, g, q.w);
        return weighted ? pw(1.0 + q.w, b) * v : v;
      };
      const double nd = n;
      return std::vector<Sides>{{rep_zinf(f, z, n), std::pow(2.0, nd) / pc(-a - b - g, n) *
                                                        P(a - nd, b - nd, g + nd, z)}};
    });
  }

  // -- first kind, multi-integrals from 1 to z against (w -+ 1)^{-2} --
  {
    auto d = make("FK1", I, R1, first_left);
    d.box = box({0.5, 3.0}, {0.5, 3.0}, {0.5, 3.0});
    d.constraints = "Re(alpha+beta+gamma+1) > n";
    d.violation = [](const JacobiParams& p, Complex, int n) {
      return Checks().re_above("Re(alpha+beta+gamma+1) > n", p.alpha + p.beta + p.gamma + 1.0, n).result();
    };
    add(d, [](const JacobiParams& p, Complex z, int n, FormVariant) {
      const auto [a, b, g] = p;
      const Complex s = a + b + g + 1.0;
      PathIntegrand f = [=](const PathPoint& q) { return pw(q.from_start, s) * P(a, b, g, q.w); };
      const double nd = n;
      return std::vector<Sides>{{rep_1z(f, z, n, 1.0), pw(z - 1.0, s - nd) / pc(s - nd, n) *
                                                           P(a, b - nd, g, z)}};
    });
  }
  {
    auto d = make("FK2", I, R1, first_left);
    d.box = box({0.7, 3.0}, kDefault, {0.7, 3.0});
    d.constraints = "Re(alpha+gamma+1) > n";
    d.violation = [](const JacobiParams& p, Complex, int n) {
      return Checks().re_above("Re(alpha+gamma+1) > n", p.alpha + p.gamma + 1.0, n).result();
    };
    add(d, [](const JacobiParams& p, Complex z, int n, FormVariant) {
      const auto [a, b, g] = p;
      PathIntegrand f = [=](const PathPoint& q) {
        return pw(q.w + 1.0, b) * pw(q.from_start, a + g + 1.0) * P(a, b, g, q.w);
      };
      const double nd = n;
      return std::vector<Sides>{
          {rep_1z(f, z, n, 1.0), pw(z + 1.0, b + nd) * pw(z - 1.0, a + g - nd + 1.0) /
                                     (std::pow(2.0, nd) * pc(g - nd + 1.0, n)) *
                                     P(a, b + nd, g - nd, z)}};
    });
  }
  for (int v = 0; v < 2; ++v) {
    auto d = make(v == 0 ? "FK3" : "FK4", I, R1, first_left);
    d.box = box({-0.7, 3.0}, kDefault, kDefault);
    d.constraints = "Re(alpha+n) > 0, Re alpha > -1";
    d.violation = [](const JacobiParams& p, Complex, int n) {
      return Checks()
          .re_above("Re(alpha+n) > 0", p.alpha + double(n), 0.0)
          .re_above("Re alpha > -1", p.alpha, -1.0)
          .result();
    };
    if (v == 0) {
      add(d, [](const JacobiParams& p, Complex z, int n, FormVariant) {
        const auto [a, b, g] = p;
        PathIntegrand f = [=](const PathPoint& q) {
          return pw(q.from_start, a) * pw(q.w + 1.0, b + g + 1.0) * P(a, b, g, q.w);
        };
        const double nd = n;
        return std::vector<Sides>{
            {rep_1z(f, z, n, -1.0), pw(z - 1.0, a + nd) * pw(z + 1.0, b + g - nd + 1.0) /
                                        (std::pow(2.0, nd) * pc(g - nd + 1.0, n)) *
                                        P(a + nd, b, g - nd, z)}};
      });
    } else {
      add(d, [](const JacobiParams& p, Complex z, int n, FormVariant) {
        const auto [a, b, g] = p;
        PathIntegrand f = [=](const PathPoint& q) {
          return pw(q.from_start, a) * pw(q.w + 1.0, -a - g) * P(a, b, g, q.w);
        };
        const double nd = n;
        return std::vector<Sides>{
            {rep_1z(f, z, n, -1.0), pw(z - 1.0, a + nd) /
                                        (std::pow(2.0, nd) * pc(1.0 + a + g, n) *
                                         pw(z + 1.0, a + nd + g)) *
                                        P(a + nd, b, g, z)}};
      });
    }
  }
  {
    auto d = make("FK5", I, R1, first_left);
    d.box = box(kDefault, kDefault, {-3.4, -2.6});
    d.constraints = "Re gamma < -n";
    d.violation = [](const JacobiParams& p, Complex, int n) {
      return Checks().re_below("Re gamma < -n", p.gamma, -n).result();
    };
    add(d, [](const JacobiParams& p, Complex z, int n, FormVariant) {
      const auto [a, b, g] = p;
      PathIntegrand f = [=](const PathPoint& q) { return pw(q.from_start, -g) * P(a, b, g, q.w); };
      const double nd = n;
      return std::vector<Sides>{{rep_1z(f, z, n, 1.0), sgn(n) / pc(a + g + 1.0, n) *
                                                           P(a, b - nd, g + nd, z) /
                                                           pw(z - 1.0, g + nd)}};
    });
  }
  {
    auto d = make("FK6", I, R1, first_left);
    d.box = box(kDefault, {-0.5, 0.0}, {-3.4, -2.6});
    d.constraints = "Re(beta+gamma) < -n";
    d.alternate_note = "RHS (z+1)^(beta+n) (z-1)^(-beta-gamma) P_gamma^(alpha,beta)(z)";
    d.violation = [](const JacobiParams& p, Complex, int n) {
      return Checks().re_below("Re(beta+gamma) < -n", p.beta + p.gamma, -n).result();
    };
    add(d, [](const JacobiParams& p, Complex z, int n, FormVariant form) {
      const auto [a, b, g] = p;
      PathIntegrand f = [=](const PathPoint& q) {
        return pw(q.w + 1.0, b) * pw(q.from_start, -g - b) * P(a, b, g, q.w);
      };
      const double nd = n;
      const Complex scale = sgn(n) / (std::pow(2.0, nd) * pc(b + g + 1.0, n)) * pw(z + 1.0, b + nd);
      const Complex rhs = form == FormVariant::kCatalog
                              ? scale / pw(z - 1.0, b + g + nd) * P(a, b + nd, g, z)
                              : scale / pw(z - 1.0, b + g) * P(a, b, g, z);
      return std::vector<Sides>{{rep_1z(f, z, n, 1.0), rhs}};
    });
  }
  {
    auto d = make("FK7", I, R1, first_left);
    d.constraints = "alpha+beta+gamma != 0";
    d.violation = [](const JacobiParams& p, Complex, int n) {
      const Complex s = p.alpha + p.beta + p.gamma;
      Checks c;
      c.poch_nonzero("alpha+beta+gamma != 0", s, 1);
      if (n >= 2) {
        c.off_poles("1-alpha-gamma off the poles", 1.0 - p.alpha - p.gamma)
            .off_poles("1-alpha-beta-gamma off the poles", 1.0 - s);
      }
      return c.result();
    };
    add(d, [](const JacobiParams& p, Complex z, int n, FormVariant) {
      const auto [a, b, g] = p;
      const Complex s = a + b + g + 1.0;
      PathIntegrand f = [=](const PathPoint& q) { return pw(q.w + 1.0, s) * P(a, b, g, q.w); };
      const double nd = n;
      const Complex series = phyp({{1.0 - nd, 1.0 - a, 1.0}, {1.0 - a - g, 1.0 - a - b - g},
                                   (z + 1.0) / (z - 1.0)})
                                 .value;
      const Complex rhs =
          pw(z + 1.0, s - nd) * P(a - nd, b, g, z) / pc(s - nd, n) -
          pw(2.0, s - nd) * G(a + g) * reciprocal_gamma(a) * reciprocal_gamma(g + 1.0) /
              ((a + b + g) * factorial(n - 1)) * pw((z - 1.0) / (z + 1.0), nd - 1.0) * series;
      return std::vector<Sides>{{rep_1z(f, z, n, -1.0), rhs}};
    });
  }
  {
    auto d = make("FK8", I, R1, first_left);
    d.constraints = "beta+gamma+1 != 0";
    d.alternate_note = "scalar denominator (beta+gamma+1) read as (beta+gamma+1)_n";
    d.violation = [](const JacobiParams& p, Complex, int n) {
      Checks c;
      c.poch_nonzero("beta+gamma+1 != 0", p.beta + p.gamma + 1.0, 1);
      if (n >= 2) {
        c.off_poles("gamma+2 off the poles", p.gamma + 2.0)
            .off_poles("beta+gamma+2 off the poles", p.beta + p.gamma + 2.0);
      }
      return c.result();
    };
    add(d, [](const JacobiParams& p, Complex z, int n, FormVariant form) {
      const auto [a, b, g] = p;
      PathIntegrand f = [=](const PathPoint& q) { return pw(q.w + 1.0, -g) * P(a, b, g, q.w); };
      const double nd = n;
      const Complex series =
          phyp({{1.0 - nd, 1.0 - a, 1.0}, {2.0 + g, 2.0 + b + g}, (z + 1.0) / (z - 1.0)}).value;
      const Complex denom = form == FormVariant::kCatalog ? b + g + 1.0 : pc(b + g + 1.0, n);
      const Complex rhs =
          P(a - nd, b, g + nd, z) / (pc(b + g + 1.0, n) * pw(z + 1.0, g + nd)) -
          G(a + g + 1.0) * reciprocal_gamma(a) * reciprocal_gamma(g + 2.0) /
              (pw(2.0, g + nd) * denom * factorial(n - 1)) *
              pw((z - 1.0) / (z + 1.0), nd - 1.0) * series;
      return std::vector<Sides>{{rep_1z(f, z, n, -1.0), rhs}};
    });
  }

  // -- Taylor section at z = 1 --
  {
    auto d = make("FT1", C, R1, first_only);
    d.n_max = 4;
    d.constraints = "-alpha-beta-gamma off the poles";
    d.alternate_note = "((z-1)/2)^(n-1) in place of ((1-z)/2)^(n-1)";
    d.violation = [](const JacobiParams& p, Complex, int) {
      return Checks().off_poles("-alpha-beta-gamma off the poles", -p.alpha - p.beta - p.gamma).result();
    };
    add(d, [](const JacobiParams& p, Complex z, int n, FormVariant form) {
      guard_pole(p.alpha + p.gamma + 1.0, "Gamma(alpha+gamma+1)");
      const auto [lhs, rhs] = taylor_section(p, n, z);
      const double sign = form == FormVariant::kCatalog ? 1.0 : sgn(n - 1);
      return std::vector<Sides>{{lhs, sign * rhs}};
    });
  }

  // -- second kind, derivatives --
  {
    auto d = make("SRL", D, R2, second);
    d.n_max = 1;
    d.default_orders = {1};
    add(d, [=, cuts = d.cuts](const JacobiParams& p, Complex z, int, FormVariant) {
      const auto [a, b, g] = p;
      Fn f = [=](Complex w) { return Q(a, b, g, w); };
      const Complex dq = dn(f, z, 1, cuts);
      const Complex z2 = z * z - 1.0;
      const Complex raise = (b - a - z * (a + b)) / z2 * Q(a, b, g, z) -
                            2.0 * (g + 1.0) / z2 * Q(a - 1.0, b - 1.0, g + 1.0, z);
      const Complex lower = -(a + b + g + 1.0) / 2.0 * Q(a + 1.0, b + 1.0, g - 1.0, z);
      return std::vector<Sides>{{dq, raise}, {dq, lower}, {raise, lower}};
    });
  }
  {
    auto d = make("SD1", D, R2, second);
    d.alternate_note = "coefficient 2^n (gamma+1)_n in place of (-2)^n (gamma+1)_n";
    add(d, [=, cuts = d.cuts](const JacobiParams& p, Complex z, int n, FormVariant form) {
      const auto [a, b, g] = p;
      const double nd = n;
      Fn f = [=](Complex w) { return pw(w - 1.0, a) * pw(1.0 + w, b) * Q(a, b, g, w); };
      const double base = form == FormVariant::kCatalog ? -2.0 : 2.0;
      return one(dn(f, z, n, cuts), std::pow(base, n) * pc(g + 1.0, n) * pw(z - 1.0, a - nd) *
                                         pw(1.0 + z, b - nd) * Q(a - nd, b - nd, g + nd, z));
    });
  }
  {
    auto d = make("SD2", D, R2, second);
    d.constraints = "(-gamma)_n != 0";
    d.violation = [](const JacobiParams& p, Complex, int n) {
      return Checks().poch_nonzero("(-gamma)_n != 0", -p.gamma, n).result();
    };
    add(d, [=, cuts = d.cuts](const JacobiParams& p, Complex z, int n, FormVariant) {
      const auto [a, b, g] = p;
      const double nd = n;
      Fn f = [=](Complex w) {
        return pw(w - 1.0, a + nd) * pw(w + 1.0, b + nd) * Q(a + nd, b + nd, g - nd, w);
      };
      return one(Q(a, b, g, z), dn(f, z, n, cuts) / (std::pow(2.0, nd) * pc(-g, n) *
                                                     pw(z - 1.0, a) * pw(z + 1.0, b)));
    });
  }
  {
    auto d = make("SD3", D, R2, second);
    add(d, [=, cuts = d.cuts](const JacobiParams& p, Complex z, int n, FormVariant) {
      const auto [a, b, g] = p;
      const double nd = n;
      Fn f = [=](Complex w) { return pw(w - 1.0, a) * Q(a, b, g, w); };
      return one(dn(f, z, n, cuts),
                 pc(-a - g, n) * pw(z - 1.0, a - nd) * Q(a - nd, b + nd, g, z));
    });
  }
  {
    auto d = make("SD4", D, R2, second);
    add(d, [=, cuts = d.cuts](const JacobiParams& p, Complex z, int n, FormVariant) {
      const auto [a, b, g] = p;
      const double nd = n;
      Fn f = [=](Complex w) { return Q(a, b, g, w); };
      return one(dn(f, z, n, cuts),
                 std::pow(-2.0, -n) * pc(a + b + g + 1.0, n) * Q(a + nd, b + nd, g - nd, z));
    });
  }

  // -- second kind, weighted operators --
  {
    auto d = make("SW1", D, R2, second);
    add(d, [=, cuts = d.cuts](const JacobiParams& p, Complex z, int n, FormVariant) {
      const auto [a, b, g] = p;
      const Complex s = a + b + g + 1.0;
      Fn f = [=](Complex w) { return pw(w - 1.0, s) * Q(a, b, g, w); };
      return one(lah_operator(f, z, n, 1.0, cuts),
                 pc(s, n) * pw(z - 1.0, s + double(n)) * Q(a, b + double(n), g, z));
    });
  }
  {
    auto d = make("SW2", D, R2, second);
    add(d, [=, cuts = d.cuts](const JacobiParams& p, Complex z, int n, FormVariant) {
      const auto [a, b, g] = p;
      Fn f = [=](Complex w) { return pw(w - 1.0, -g) * Q(a, b, g, w); };
      return one(lah_operator(f, z, n, 1.0, cuts), pc(-a - g, n) * pw(z - 1.0, double(n) - g) *
                                                       Q(a, b + double(n), g - double(n), z));
    });
  }
  {
    auto d = make("SW3", D, R2, second);
    add(d, [=, cuts = d.cuts](const JacobiParams& p, Complex z, int n, FormVariant) {
      const auto [a, b, g] = p;
      Fn f = [=](Complex w) { return pw(w + 1.0, b) * pw(w - 1.0, a + g + 1.0) * Q(a, b, g, w); };
      return one(lah_operator(f, z, n, 1.0, cuts),
                 std::pow(2.0, n) * pc(g + 1.0, n) * pw(z + 1.0, b - double(n)) *
                     pw(z - 1.0, a + g + 1.0 + double(n)) * Q(a, b - double(n), g + double(n), z));
    });
  }
  {
    auto d = make("SW4", D, R2, second);
    add(d, [=, cuts = d.cuts](const JacobiParams& p, Complex z, int n, FormVariant) {
      const auto [a, b, g] = p;
      Fn f = [=](Complex w) { return pw(w + 1.0, b) * pw(w - 1.0, -b - g) * Q(a, b, g, w); };
      return one(lah_operator(f, z, n, 1.0, cuts),
                 std::pow(2.0, n) * pc(-b - g, n) * pw(z + 1.0, b - double(n)) *
                     pw(z - 1.0, -(b - double(n) + g)) * Q(a, b - double(n), g, z));
    });
  }
  {
    auto d = make("SW5", D, R2, second);
    d.alternate_note = "RHS without the factor (-1)^n";
    add(d, [=, cuts = d.cuts](const JacobiParams& p, Complex z, int n, FormVariant form) {
      const auto [a, b, g] = p;
      const Complex s = a + b + g + 1.0;
      const double sign = form == FormVariant::kCatalog ? sgn(n) : 1.0;
      Fn f = [=](Complex w) { return pw(w + 1.0, s) * Q(a, b, g, w); };
      return one(lah_operator(f, z, n, -1.0, cuts),
                 sign * pc(s, n) * pw(z + 1.0, s + double(n)) * Q(a + double(n), b, g, z));
    });
  }
  {
    auto d = make("SW6", D, R2, second);
    d.alternate_note = "RHS without the factor (-1)^n";
    add(d, [=, cuts = d.cuts](const JacobiParams& p, Complex z, int n, FormVariant form) {
      const auto [a, b, g] = p;
      const double sign = form == FormVariant::kCatalog ? sgn(n) : 1.0;
      Fn f = [=](Complex w) { return pw(w + 1.0, -g) * Q(a, b, g, w); };
      return one(lah_operator(f, z, n, -1.0, cuts),
                 sign * pc(1.0 + b + g - double(n), n) * pw(z + 1.0, double(n) - g) *
                     Q(a + double(n), b, g - double(n), z));
    });
  }
  {
    auto d = make("SW7", D, R2, second);
    d.alternate_note = "RHS without (-1)^n and with (z+1)^(beta+gamma+n)";
    add(d, [=, cuts = d.cuts](const JacobiParams& p, Complex z, int n, FormVariant form) {
      const auto [a, b, g] = p;
      const bool catalog = form == FormVariant::kCatalog;
      Fn f = [=](Complex w) { return pw(w - 1.0, a) * pw(w + 1.0, b + g + 1.0) * Q(a, b, g, w); };
      return one(lah_operator(f, z, n, -1.0, cuts),
                 (catalog ? sgn(n) : 1.0) * std::pow(2.0, n) * pc(g + 1.0, n) *
                     pw(z - 1.0, a - double(n)) *
                     pw(z + 1.0, b + g + (catalog ? 1.0 : 0.0) + double(n)) *
                     Q(a - double(n), b, g + double(n), z));
    });
  }
  {
    auto d = make("SW8", D, R2, second);
    d.alternate_note = "RHS without the factor (-1)^n";
    add(d, [=, cuts = d.cuts](const JacobiParams& p, Complex z, int n, FormVariant form) {
      const auto [a, b, g] = p;
      const double sign = form == FormVariant::kCatalog ? sgn(n) : 1.0;
      Fn f = [=](Complex w) { return pw(w - 1.0, a) * pw(w + 1.0, -a - g) * Q(a, b, g, w); };
      return one(lah_operator(f, z, n, -1.0, cuts),
                 sign * std::pow(-2.0, n) * pc(-a - g, n) * pw(z - 1.0, a - double(n)) *
                     pw(z + 1.0, -(a - double(n) + g)) * Q(a - double(n), b, g, z));
    });
  }

  // -- second kind, multi-integrals to infinity --
  {
    auto d = make("SI1", I, R2, second);
    d.ray_path = true;
    d.box = box({-0.7, 3.0}, {-0.7, 3.0}, {2.3, 3.5});
    d.constraints = "Re alpha > -1, Re beta > -1, Re gamma > n";
    d.violation = [](const JacobiParams& p, Complex, int n) {
      return Checks()
          .re_above("Re alpha > -1", p.alpha, -1.0)
          .re_above("Re beta > -1", p.beta, -1.0)
          .re_above("Re gamma > n", p.gamma, n)
          .result();
    };
    add(d, [](const JacobiParams& p, Complex z, int n, FormVariant) {
      const auto [a, b, g] = p;
      PathIntegrand f = [=](const PathPoint& q) {
        return pw(q.w - 1.0, a) * pw(1.0 + q.w, b) * Q(a, b, g, q.w);
      };
      const double nd = n;
      return std::vector<Sides>{{rep_zinf(f, z, n), pw(z - 1.0, a + nd) * pw(1.0 + z, b + nd) /
                                                        (std::pow(2.0, nd) * pc(g - nd + 1.0, n)) *
                                                        Q(a + nd, b + nd, g - nd, z)}};
    });
  }
  {
    auto d = make("SI2", I, R2, second);
    d.ray_path = true;
    d.box = box({-0.7, 3.0}, {1.3, 3.0}, {0.0, 3.0});
    d.constraints = "Re alpha > -1, Re beta > n-1, Re(beta+gamma+1) > n";
    d.violation = [](const JacobiParams& p, Complex, int n) {
      return Checks()
          .re_above("Re alpha > -1", p.alpha, -1.0)
          .re_above("Re beta > n-1", p.beta, n - 1.0)
          .re_above("Re(beta+gamma+1) > n", p.beta + p.gamma + 1.0, n)
          .result();
    };
    add(d, [](const JacobiParams& p, Complex z, int n, FormVariant) {
      const auto [a, b, g] = p;
      PathIntegrand f = [=](const PathPoint& q) { return pw(q.w - 1.0, a) * Q(a, b, g, q.w); };
      const double nd = n;
      return std::vector<Sides>{{rep_zinf(f, z, n), pw(z - 1.0, a + nd) / pc(a + g + 1.0, n) *
                                                        Q(a + nd, b - nd, g, z)}};
    });
  }
  {
    auto d = make("SI3", I, R2, second);
    d.ray_path = true;
    d.box = box({1.3, 3.0}, {1.3, 3.0}, kDefault);
    d.constraints = "Re alpha > n-1, Re beta > n-1, Re(alpha+beta+gamma+1) > n";
    d.violation = [](const JacobiParams& p, Complex, int n) {
      return Checks()
          .re_above("Re alpha > n-1", p.alpha, n - 1.0)
          .re_above("Re beta > n-1", p.beta, n - 1.0)
          .re_above("Re(alpha+beta+gamma+1) > n", p.alpha + p.beta + p.gamma + 1.0, n)
          .result();
    };
    add(d, [](const JacobiParams& p, Complex z, int n, FormVariant) {
      const auto [a, b, g] = p;
      PathIntegrand f = [=](const PathPoint& q) { return Q(a, b, g, q.w); };
      const double nd = n;
      return std::vector<Sides>{{rep_zinf(f, z, n), std::pow(2.0, nd) /
                                                        pc(a + b + g - nd + 1.0, n) *
                                                        Q(a - nd, b - nd, g + nd, z)}};
    });
  }

  // -- second kind, integral representations --
  {
    auto d = make("SQ0", C, R2, second);
    d.n_min = 0;
    d.n_max = 0;
    d.default_orders = {0};
    d.box = box({-0.3, 3.0}, {-0.3, 3.0}, {-0.3, 3.0});
    d.constraints = "Re(alpha+gamma) > -1, Re(beta+gamma) > -1";
    d.violation = [](const JacobiParams& p, Complex, int) {
      return Checks()
          .re_above("Re(alpha+gamma) > -1", p.alpha + p.gamma, -1.0)
          .re_above("Re(beta+gamma) > -1", p.beta + p.gamma, -1.0)
          .result();
    };
    add(d, [](const JacobiParams& p, Complex z, int, FormVariant) {
      const Complex hyp = Q(p.alpha, p.beta, p.gamma, z);
      return std::vector<Sides>{{hyp, jacobi_q_integral({p, z}).value}};
    });
  }
  {
    auto d = make("SQk", C, R2, second);
    d.n_max = 3;
    d.box = box({0.0, 3.0}, {0.0, 3.0}, {1.3, 3.0});
    d.constraints = "Re(alpha+gamma-k) > -1, Re(beta+gamma-k) > -1, (-gamma)_k != 0";
    d.violation = [](const JacobiParams& p, Complex, int k) {
      return Checks()
          .re_above("Re(alpha+gamma-k) > -1", p.alpha + p.gamma - double(k), -1.0)
          .re_above("Re(beta+gamma-k) > -1", p.beta + p.gamma - double(k), -1.0)
          .poch_nonzero("(-gamma)_k != 0", -p.gamma, k)
          .result();
    };
    add(d, [](const JacobiParams& p, Complex z, int k, FormVariant) {
      const Complex hyp = Q(p.alpha, p.beta, p.gamma, z);
      return std::vector<Sides>{{hyp, jacobi_q_integral_shifted({p, z, k}).value}};
    });
  }
  {
    auto d = make("SN", C, R2, second);
    d.n_min = 0;
    d.n_max = 3;
    d.degree_from_n = true;
    d.box = box({-0.7, 3.0}, {-0.7, 3.0}, kDefault);
    d.constraints = "Re alpha > -1, Re beta > -1";
    d.violation = [](const JacobiParams& p, Complex, int) {
      return Checks()
          .re_above("Re alpha > -1", p.alpha, -1.0)
          .re_above("Re beta > -1", p.beta, -1.0)
          .result();
    };
    add(d, [](const JacobiParams& p, Complex z, int n, FormVariant) {
      const Complex hyp = Q(p.alpha, p.beta, double(n), z);
      return std::vector<Sides>{{hyp, neumann_q(n, p.alpha, p.beta, z).value}};
    });
  }

  // -- the differential equation itself --
  for (int kind = 0; kind < 2; ++kind) {
    auto d = make(kind == 0 ? "ODE-P" : "ODE-Q", D, kind == 0 ? R1 : R2,
                  kind == 0 ? first_only : second);
    d.n_min = 0;
    d.n_max = 0;
    d.default_orders = {0};
    d.tolerance = 1e-7;
    d.constraints = "gamma(alpha+beta+gamma+1) != 0";
    d.violation = [](const JacobiParams& p, Complex, int) {
      return Checks()
          .poch_nonzero("gamma(alpha+beta+gamma+1) != 0", p.gamma, 1)
          .poch_nonzero("gamma(alpha+beta+gamma+1) != 0", p.alpha + p.beta + p.gamma + 1.0, 1)
          .result();
    };
    add(d, [=, cuts = d.cuts](const JacobiParams& p, Complex z, int, FormVariant) {
      const auto [a, b, g] = p;
      Fn f = [=](Complex w) { return kind == 0 ? P(a, b, g, w) : Q(a, b, g, w); };
      const std::vector<Complex> dv = derivatives(f, z, 2, cuts);
      return std::vector<Sides>{{(1.0 - z * z) * dv[2] + (b - a - z * (a + b + 2.0)) * dv[1],
                                 -g * (a + b + g + 1.0) * dv[0]}};
    });
  }
  return cat;
}

// ---- sweeping --------------------------------------------------------------

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::mt19937_64 sample_rng(std::uint64_t seed, std::string_view id, int index) {
  const std::uint64_t h = fnv1a(id);
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(h), static_cast<std::uint32_t>(h >> 32),
                    static_cast<std::uint32_t>(index)};
  return std::mt19937_64(seq);
}

double uniform(std::mt19937_64& rng, double lo, double hi) {
  // 53 random bits mapped to [0, 1); avoids implementation-defined distributions.
  const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * u;
}

Complex draw_param(std::mt19937_64& rng, const ReInterval& re, double im) {
  const double x = uniform(rng, re.lo, re.hi);
  const double y = uniform(rng, -im, im);
  return {x, y};
}

Complex draw_z(std::mt19937_64& rng, const IdentityDescriptor& e, const std::vector<Cut>& cuts) {
  constexpr double kPi = 3.14159265358979323846;
  for (int attempt = 0; attempt < 10000; ++attempt) {
    Complex z;
    if (e.region == ZRegion::kFirstKind) {
      const double r = uniform(rng, 0.3, std::max(0.3, e.z_radius_max));
      const double t = uniform(rng, -kPi, kPi);
      z = 1.0 + std::polar(r, t);
    } else {
      z = {uniform(rng, 1.3, 4.0), uniform(rng, -1.0, 1.0)};
    }
    bool clear = true;
    for (const Cut& c : cuts) {
      double d = distance_to_cut(z, c);
      if (e.ray_path && c.hi >= z.real()) d = std::min(d, std::abs(z.imag()));
      clear = clear && d >= kCutClearance;
    }
    if (clear) return z;
  }
  throw EmptyAdmissibleSet("no sample point clears the declared cuts");
}

double residual_of(Complex lhs, Complex rhs) {
  const double scale = std::max({std::abs(lhs), std::abs(rhs), 1e-300});
  return std::abs(lhs - rhs) / scale;
}

std::vector<int> orders_for(const IdentityDescriptor& e, const std::vector<int>& requested) {
  std::vector<int> out;
  for (int n : requested) {
    if (n >= e.n_min && n <= e.n_max) out.push_back(n);
  }
  if (out.empty()) out = e.default_orders;
  return out;
}

// Worst pair by residual.
Sides worst_pair(const std::vector<Sides>& pairs, double& residual) {
  residual = -1.0;
  Sides worst{};
  for (const Sides& s : pairs) {
    const double r = residual_of(s.lhs, s.rhs);
    if (!(r <= residual)) {
      residual = r;
      worst = s;
    }
  }
  return worst;
}

SampleOutcome run_sample(const IdentityDescriptor& e, const ParamBox& bx,
                         const std::vector<int>& orders, std::uint64_t seed, int index,
                         FormVariant form) {
  std::mt19937_64 rng = sample_rng(seed, e.id, index);
  SampleOutcome out;
  out.index = index;
  out.n = orders[index % orders.size()];
  out.params.alpha = draw_param(rng, bx.alpha, bx.imag);
  out.params.beta = draw_param(rng, bx.beta, bx.imag);
  out.params.gamma = draw_param(rng, bx.gamma, bx.imag);
  if (e.degree_from_n) out.params.gamma = static_cast<double>(out.n);
  out.z = draw_z(rng, e, e.active_cuts(out.params));

  if (auto v = e.violation(out.params, out.z, out.n)) {
    out.skipped = true;
    out.skip_reason = *v;
    return out;
  }
  try {
    const Sides s = worst_pair(e.sides(out.params, out.z, out.n, form), out.residual);
    out.lhs = s.lhs;
    out.rhs = s.rhs;
    if (!std::isfinite(out.residual)) out.residual = std::numeric_limits<double>::infinity();
  } catch (const ConstraintViolation& ex) {
    out.skipped = true;
    out.skip_reason = ex.what();
  } catch (const Error& ex) {
    out.error = ex.name();
    out.residual = std::numeric_limits<double>::infinity();
  }
  return out;
}

std::vector<SampleOutcome> run_samples(const IdentityDescriptor& e, const SweepConfig& cfg,
                                       int samples) {
  const ParamBox bx = cfg.box.value_or(e.box);
  const std::vector<int> orders = orders_for(e, cfg.n_values);
  std::vector<SampleOutcome> outcomes(samples);
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int i = next++; i < samples; i = next++) {
      outcomes[i] = run_sample(e, bx, orders, cfg.seed, i, cfg.form);
    }
  };
  const int threads = std::min(resolve_threads(cfg.threads), samples);
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }
  return outcomes;
}

int checked_samples(const IdentityDescriptor& e, const SweepConfig& cfg) {
  const int samples = cfg.samples.value_or(default_samples(e));
  if (samples < 1) throw InvalidArgument("samples must be at least 1");
  return samples;
}

}  // namespace

const char* to_string(FormVariant form) {
  return form == FormVariant::kCatalog ? "catalog" : "alternate";
}

const char* to_string(SideFamily family) {
  switch (family) {
    case SideFamily::kDerivative: return "derivative";
    case SideFamily::kIntegral: return "integral";
    case SideFamily::kClosedForm: return "closed-form";
  }
  return "unknown";
}

const std::vector<IdentityDescriptor>& identity_catalog() {
  static const std::vector<IdentityDescriptor> catalog = build_catalog();
  return catalog;
}

const IdentityDescriptor& find_identity(std::string_view id) {
  for (const IdentityDescriptor& e : identity_catalog()) {
    if (e.id == id) return e;
  }
  throw UnknownIdentity("no catalog entry named '" + std::string(id) + "'");
}

int default_samples(const IdentityDescriptor& entry) {
  return entry.family == SideFamily::kDerivative ? 100 : 50;
}

int resolve_threads(int requested) {
  int hw = static_cast<int>(std::thread::hardware_concurrency());
  if (hw < 1) hw = 1;
  int n = requested > 0 ? requested : hw;
  if (const char* env = std::getenv("JACOBI_FN_THREADS")) {
    char* end = nullptr;
    const long cap = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && cap >= 1) n = std::min<long>(n, cap);
  }
  return std::max(1, n);
}

IdentityCheck eval_identity_sides(std::string_view id, const JacobiParams& params, Complex z,
                                  int n, FormVariant form) {
  const IdentityDescriptor& e = find_identity(id);
  if (n < e.n_min || n > e.n_max) {
    throw ConstraintViolation("order n outside [" + std::to_string(e.n_min) + ", " +
                              std::to_string(e.n_max) + "]");
  }
  JacobiParams p = params;
  if (e.degree_from_n) p.gamma = static_cast<double>(n);
  for (const Cut& c : e.active_cuts(p)) {
    if (distance_to_cut(z, c) <= 0.0) throw ConstraintViolation("z lies on a declared cut");
  }
  if (auto v = e.violation(p, z, n)) throw ConstraintViolation(*v);
  IdentityCheck check;
  check.identity_id = e.id;
  check.params = p;
  check.z = z;
  check.n = n;
  const long cost_before = t_cost;
  const Sides s = worst_pair(e.sides(p, z, n, form), check.residual);
  check.lhs_value = s.lhs;
  check.rhs_value = s.rhs;
  check.oracle_cost = t_cost - cost_before;
  return check;
}

IdentityReport verify_identity(std::string_view id, const SweepConfig& config) {
  const IdentityDescriptor& e = find_identity(id);
  const int samples = checked_samples(e, config);
  const double tol = config.tolerance.value_or(e.tolerance);
  if (!(tol > 0.0)) throw InvalidArgument("tolerance must be positive");

  IdentityReport report;
  report.identity_id = e.id;
  report.seed = config.seed;
  report.tolerance = tol;
  report.samples_requested = samples;
  report.outcomes = run_samples(e, config, samples);
  for (const SampleOutcome& o : report.outcomes) {
    if (o.skipped) {
      ++report.skipped;
      continue;
    }
    ++report.run;
    if (o.error.empty() && o.residual <= tol) ++report.passed;
    if (!report.worst || o.residual > report.worst_residual) {
      report.worst_residual = o.residual;
      report.worst = o;
    }
  }
  if (report.run == 0) {
    throw EmptyAdmissibleSet("every sample of " + e.id + " violated a constraint");
  }
  return report;
}

AuditResult constant_audit(std::string_view id, const SweepConfig& config) {
  const IdentityDescriptor& e = find_identity(id);
  const int samples = checked_samples(e, config);
  const std::vector<SampleOutcome> outcomes = run_samples(e, config, samples);
  std::vector<Complex> ratios;
  for (const SampleOutcome& o : outcomes) {
    if (o.skipped || !o.error.empty() || o.rhs == Complex(0.0, 0.0)) continue;
    ratios.push_back(o.lhs / o.rhs);
  }
  if (ratios.empty()) throw EmptyAdmissibleSet("no usable samples for " + e.id);
  AuditResult r;
  r.identity_id = e.id;
  r.form = config.form;
  r.seed = config.seed;
  r.samples = static_cast<int>(ratios.size());
  Complex sum = 0.0;
  for (const Complex& x : ratios) sum += x;
  r.constant = sum / static_cast<double>(ratios.size());
  for (const Complex& x : ratios) r.spread = std::max(r.spread, std::abs(x - r.constant));
  return r;
}

double ode_residual(FunctionKind kind, const JacobiParams& params, Complex z) {
  const auto [a, b, g] = params;
  std::vector<Cut> cuts;
  Fn f;
  if (kind == FunctionKind::kFirst) {
    check_first_kind_domain(z);
    cuts = {kCutMinusOne};
    f = [=](Complex w) { return jacobi_p(params, w).value; };
  } else {
    check_second_kind_domain(z);
    cuts = {kCutLeftOfOne};
    f = [=](Complex w) { return jacobi_q(params, w).value; };
  }
  const std::vector<Complex> d = contour_derivatives(f, z, 2, 0.0, cuts);
  const Complex t2 = (1.0 - z * z) * d[2];
  const Complex t1 = (b - a - z * (a + b + 2.0)) * d[1];
  const Complex t0 = g * (a + b + g + 1.0) * d[0];
  const double scale = std::max({std::abs(t2), std::abs(t1), std::abs(t0), 1e-300});
  return std::abs(t2 + t1 + t0) / scale;
}

Complex rodrigues_jacobi(int n, Complex alpha, Complex beta, Complex z,
                         RodriguesVariant variant) {
  return rodrigues_impl(n, alpha, beta, z, variant, false);
}

}  // namespace jacobi
