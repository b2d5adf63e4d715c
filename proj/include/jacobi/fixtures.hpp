#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "jacobi/identity_engine.hpp"

namespace jacobi {

inline constexpr int kFixturesVersion = 1;

/// One recorded evaluation of an entry.
struct FixturePin {
  std::string identity_id;
  int n = 0;
  JacobiParams params;
  Complex z;
  Complex lhs;
  Complex rhs;
};

/// Fitted constant of one form of an entry for one seed.
struct FixtureAudit {
  std::string identity_id;
  FormVariant form = FormVariant::kCatalog;
  std::uint64_t seed = 0;
  int samples = 0;  // requested
  int usable = 0;   // 0 when the form has no usable sample (constant is NaN)
  Complex constant;
  double spread = 0.0;
};

struct FixtureEntry {
  std::string identity_id;
  double tolerance = 0.0;
  Complex constant{1.0, 0.0};  // lhs = constant * rhs
};

struct FixtureSet {
  int version = kFixturesVersion;
  std::vector<FixtureEntry> entries;
  std::vector<FixtureAudit> audits;
  std::vector<FixturePin> pins;

  const FixtureEntry* entry(std::string_view id) const;
};

struct FixtureOptions {
  std::uint64_t pin_seed = 2024;
  int pins_per_entry = 3;
  std::vector<std::uint64_t> audit_seeds{101, 202};
  int audit_samples = 16;
};

/// Recomputes every pin and audit from the catalog.
FixtureSet generate_fixtures(const FixtureOptions& options = {});

/// Throws ParseError with the offending line number.
FixtureSet parse_fixtures(std::istream& in);
FixtureSet load_fixtures(const std::string& path);

/// Round-trip exact (17 significant digits).
void write_fixtures(const FixtureSet& set, std::ostream& out);

struct SelftestResult {
  bool ok = true;
  int pins_checked = 0;
  int audits_checked = 0;
  std::string failure;  // first failing fixture, empty when ok
};

/// Every pin must reproduce lhs and rhs within 10x the entry tolerance and
/// satisfy lhs = c rhs with the recorded constant. With `rerun_audits` the
/// audits are recomputed as well (constants within 1e-6).
SelftestResult run_selftest(const FixtureSet& set, bool rerun_audits = false);

}  // namespace jacobi
