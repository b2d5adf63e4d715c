#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "jacobi/quadrature.hpp"
#include "jacobi/types.hpp"

namespace jacobi {

enum class FunctionKind { kFirst, kSecond };

/// Which reading of an entry to evaluate. kCatalog is the form the engine
/// verifies; kAlternate is the competing reading kept for the constant audit
/// (only some entries have one).
enum class FormVariant { kCatalog, kAlternate };

enum class SideFamily { kDerivative, kIntegral, kClosedForm };

enum class ZRegion {
  kFirstKind,   // 1 + r e^{i theta}, r in [0.3, 2.5]
  kSecondKind,  // Re z in [1.3, 4], |Im z| <= 1
};

struct ReInterval {
  double lo = -0.75;
  double hi = 3.0;
};

/// Uniform sampling box for (alpha, beta, gamma). Imaginary parts are drawn
/// from [-imag, imag].
struct ParamBox {
  ReInterval alpha, beta, gamma;
  double imag = 0.5;
};

struct Sides {
  Complex lhs;
  Complex rhs;
};

struct IdentityDescriptor {
  std::string id;
  SideFamily family = SideFamily::kDerivative;
  int n_min = 1;
  int n_max = 3;
  std::vector<int> default_orders{1, 2, 3};
  bool degree_from_n = false;  // gamma is replaced by the order n (polynomial entries)
  ParamBox box;
  ZRegion region = ZRegion::kFirstKind;
  double z_radius_max = 2.5;  // cap on |z - 1| for first-kind sampling
  std::vector<Cut> cuts;      // z keeps a distance of 0.2 from these
  bool ray_path = false;      // the whole ray z + t, t >= 0, must keep that distance
  std::string constraints;    // human-readable form of `violation`
  std::string alternate_note; // empty when the entry has no alternate form
  double tolerance = 1e-8;

  /// Name of the first violated constraint, or nullopt when admissible.
  std::function<std::optional<std::string>(const JacobiParams&, Complex, int)> violation;
  /// Every pair must agree; the worst pair decides the residual.
  std::function<std::vector<Sides>(const JacobiParams&, Complex, int, FormVariant)> sides;

  /// Cuts that apply for given parameters; `cuts` when unset.
  std::function<std::vector<Cut>(const JacobiParams&)> cuts_for;

  bool has_alternate() const { return !alternate_note.empty(); }
  std::vector<Cut> active_cuts(const JacobiParams& p) const { return cuts_for ? cuts_for(p) : cuts; }
};

/// The full catalog, in a fixed order.
const std::vector<IdentityDescriptor>& identity_catalog();

/// Throws UnknownIdentity.
const IdentityDescriptor& find_identity(std::string_view id);

struct IdentityCheck {
  std::string identity_id;
  JacobiParams params;
  Complex z;
  int n = 0;
  Complex lhs_value;
  Complex rhs_value;
  double residual = 0.0;  // |lhs - rhs| / max(|lhs|, |rhs|, 1e-300)
  long oracle_cost = 0;   // first- and second-kind evaluations spent
};

/// Throws ConstraintViolation naming the violated predicate.
IdentityCheck eval_identity_sides(std::string_view id, const JacobiParams& params, Complex z,
                                  int n, FormVariant form = FormVariant::kCatalog);

struct SampleOutcome {
  int index = 0;
  int n = 0;
  JacobiParams params;
  Complex z;
  bool skipped = false;
  std::string skip_reason;   // violated constraint
  std::string error;         // oracle failure, counted as a failed run
  Complex lhs, rhs;
  double residual = 0.0;
};

struct IdentityReport {
  std::string identity_id;
  std::uint64_t seed = 0;
  double tolerance = 0.0;
  int samples_requested = 0;
  int run = 0;
  int passed = 0;
  int skipped = 0;
  double worst_residual = 0.0;
  std::optional<SampleOutcome> worst;  // the run sample with the largest residual
  std::vector<SampleOutcome> outcomes; // by sample index

  bool ok() const { return run > 0 && passed == run; }
};

struct SweepConfig {
  std::optional<ParamBox> box;  // entry default when unset
  std::vector<int> n_values;    // filtered to the entry's range; cycled by sample index
  std::optional<int> samples;   // entry default (100 derivative, 50 otherwise) when unset
  std::uint64_t seed = 42;
  std::optional<double> tolerance;  // entry default when unset
  int threads = 0;              // JACOBI_FN_THREADS, else hardware concurrency
  FormVariant form = FormVariant::kCatalog;
};

/// Seeded sweep. Deterministic for a given config whatever the thread count.
/// Throws EmptyAdmissibleSet when every sample is skipped.
IdentityReport verify_identity(std::string_view id, const SweepConfig& config);

/// Default sample count for an entry.
int default_samples(const IdentityDescriptor& entry);

/// Worker count honoring JACOBI_FN_THREADS.
int resolve_threads(int requested);

struct AuditResult {
  std::string identity_id;
  FormVariant form = FormVariant::kCatalog;
  std::uint64_t seed = 0;
  int samples = 0;      // usable samples
  Complex constant;     // mean of lhs/rhs
  double spread = 0.0;  // max |lhs/rhs - c|
};

/// Fits lhs = c rhs over the admissible samples of a sweep. Throws
/// EmptyAdmissibleSet when no sample is usable.
AuditResult constant_audit(std::string_view id, const SweepConfig& config);

/// |(1-z^2) w'' + (beta-alpha-(alpha+beta+2) z) w' + gamma(alpha+beta+gamma+1) w|
/// relative to the largest of the three terms.
double ode_residual(FunctionKind kind, const JacobiParams& params, Complex z);

enum class RodriguesVariant { kOne, kTwo };

/// P_n^{(alpha,beta)}(z) through [(z+1)^2 d/dz]^n (kOne) or [(z-1)^2 d/dz]^n
/// (kTwo) applied to a weight. z must stay off the cuts of the weight.
Complex rodrigues_jacobi(int n, Complex alpha, Complex beta, Complex z,
                         RodriguesVariant variant);

const char* to_string(FormVariant form);
const char* to_string(SideFamily family);

}  // namespace jacobi
