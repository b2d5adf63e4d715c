#include "jacobi/fixtures.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "jacobi/errors.hpp"

namespace jacobi {

namespace {

constexpr const char* kMagic = "jacobi-fixtures";
const double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string fmt(double x) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, end);
}

std::string fmt(Complex c) { return fmt(c.real()) + " " + fmt(c.imag()); }

double rel_diff(Complex a, Complex b) {
  return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300});
}

class LineReader {
 public:
  LineReader(std::vector<std::string> tokens, int line) : tokens_(std::move(tokens)), line_(line) {}

  const std::string& word() {
    if (pos_ >= tokens_.size()) fail("missing field");
    return tokens_[pos_++];
  }
  double number() {
    const std::string& t = word();
    double x = 0.0;
    auto [end, ec] = std::from_chars(t.data(), t.data() + t.size(), x);
    if (ec != std::errc() || end != t.data() + t.size()) fail("bad number '" + t + "'");
    return x;
  }
  Complex complex() {
    const double re = number();
    return {re, number()};
  }
  long long integer() {
    const std::string& t = word();
    long long x = 0;
    auto [end, ec] = std::from_chars(t.data(), t.data() + t.size(), x);
    if (ec != std::errc() || end != t.data() + t.size()) fail("bad integer '" + t + "'");
    return x;
  }
  void finish() {
    if (pos_ != tokens_.size()) fail("trailing fields");
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("fixtures line " + std::to_string(line_) + ": " + what);
  }

 private:
  std::vector<std::string> tokens_;
  int line_;
  std::size_t pos_ = 0;
};

FormVariant parse_form(LineReader& r) {
  const std::string& w = r.word();
  if (w == "catalog") return FormVariant::kCatalog;
  if (w == "alternate") return FormVariant::kAlternate;
  r.fail("unknown form '" + w + "'");
}

}  // namespace

const FixtureEntry* FixtureSet::entry(std::string_view id) const {
  for (const FixtureEntry& e : entries) {
    if (e.identity_id == id) return &e;
  }
  return nullptr;
}

FixtureSet generate_fixtures(const FixtureOptions& options) {
  FixtureSet set;
  for (const IdentityDescriptor& e : identity_catalog()) {
    FixtureEntry entry;
    entry.identity_id = e.id;
    entry.tolerance = e.tolerance;

    std::vector<FormVariant> forms{FormVariant::kCatalog};
    if (e.has_alternate()) forms.push_back(FormVariant::kAlternate);
    for (FormVariant form : forms) {
      for (std::uint64_t seed : options.audit_seeds) {
        SweepConfig config;
        config.seed = seed;
        config.samples = options.audit_samples;
        config.form = form;
        FixtureAudit audit{e.id, form, seed, options.audit_samples, 0, {kNaN, kNaN}, kNaN};
        try {
          const AuditResult a = constant_audit(e.id, config);
          audit.usable = a.samples;
          audit.constant = a.constant;
          audit.spread = a.spread;
        } catch (const EmptyAdmissibleSet&) {
          if (form == FormVariant::kCatalog) throw;
        }
        if (form == FormVariant::kCatalog && seed == options.audit_seeds.front()) {
          entry.constant = audit.constant;
        }
        set.audits.push_back(audit);
      }
    }

    SweepConfig config;
    config.seed = options.pin_seed;
    config.samples = 4 * options.pins_per_entry;
    const IdentityReport report = verify_identity(e.id, config);
    int taken = 0;
    for (const SampleOutcome& o : report.outcomes) {
      if (taken == options.pins_per_entry) break;
      if (o.skipped || !o.error.empty() || o.residual > e.tolerance) continue;
      set.pins.push_back({e.id, o.n, o.params, o.z, o.lhs, o.rhs});
      ++taken;
    }
    set.entries.push_back(entry);
  }
  return set;
}

void write_fixtures(const FixtureSet& set, std::ostream& out) {
  out << kMagic << ' ' << set.version << '\n';
  out << "# entry <id> <tolerance> <c re> <c im>\n";
  for (const FixtureEntry& e : set.entries) {
    out << "entry " << e.identity_id << ' ' << fmt(e.tolerance) << ' ' << fmt(e.constant) << '\n';
  }
  out << "# audit <id> <form> <seed> <samples> <usable> <c re> <c im> <spread>\n";
  for (const FixtureAudit& a : set.audits) {
    out << "audit " << a.identity_id << ' ' << to_string(a.form) << ' ' << a.seed << ' '
        << a.samples << ' ' << a.usable << ' ' << fmt(a.constant) << ' ' << fmt(a.spread) << '\n';
  }
  out << "# pin <id> <n> <alpha> <beta> <gamma> <z> <lhs> <rhs>, complex as re im\n";
  for (const FixturePin& p : set.pins) {
    out << "pin " << p.identity_id << ' ' << p.n << ' ' << fmt(p.params.alpha) << ' '
        << fmt(p.params.beta) << ' ' << fmt(p.params.gamma) << ' ' << fmt(p.z) << ' '
        << fmt(p.lhs) << ' ' << fmt(p.rhs) << '\n';
  }
  out << "end " << set.entries.size() << ' ' << set.audits.size() << ' ' << set.pins.size()
      << '\n';
}

FixtureSet parse_fixtures(std::istream& in) {
  FixtureSet set;
  std::string line;
  int number = 0;
  bool header = false, ended = false;
  while (std::getline(in, line)) {
    ++number;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream words(line);
    std::vector<std::string> tokens;
    for (std::string t; words >> t;) tokens.push_back(t);
    if (tokens.empty()) continue;
    LineReader r(tokens, number);
    const std::string kind = r.word();
    if (ended) r.fail("content after end");
    if (!header) {
      if (kind != kMagic) r.fail("missing header");
      set.version = static_cast<int>(r.integer());
      if (set.version != kFixturesVersion) r.fail("unsupported version");
      header = true;
    } else if (kind == "entry") {
      FixtureEntry e;
      e.identity_id = r.word();
      e.tolerance = r.number();
      e.constant = r.complex();
      if (!(e.tolerance > 0.0)) r.fail("tolerance must be positive");
      set.entries.push_back(e);
    } else if (kind == "audit") {
      FixtureAudit a;
      a.identity_id = r.word();
      a.form = parse_form(r);
      a.seed = static_cast<std::uint64_t>(r.integer());
      a.samples = static_cast<int>(r.integer());
      a.usable = static_cast<int>(r.integer());
      a.constant = r.complex();
      a.spread = r.number();
      if (!set.entry(a.identity_id)) r.fail("audit for undeclared entry " + a.identity_id);
      set.audits.push_back(a);
    } else if (kind == "pin") {
      FixturePin p;
      p.identity_id = r.word();
      p.n = static_cast<int>(r.integer());
      p.params.alpha = r.complex();
      p.params.beta = r.complex();
      p.params.gamma = r.complex();
      p.z = r.complex();
      p.lhs = r.complex();
      p.rhs = r.complex();
      if (!set.entry(p.identity_id)) r.fail("pin for undeclared entry " + p.identity_id);
      set.pins.push_back(p);
    } else if (kind == "end") {
      if (static_cast<std::size_t>(r.integer()) != set.entries.size() ||
          static_cast<std::size_t>(r.integer()) != set.audits.size() ||
          static_cast<std::size_t>(r.integer()) != set.pins.size()) {
        r.fail("record counts do not match");
      }
      ended = true;
    } else {
      r.fail("unknown record '" + kind + "'");
    }
    r.finish();
  }
  if (!header) throw ParseError("fixtures: empty file");
  if (!ended) throw ParseError("fixtures: truncated (no end record)");
  return set;
}

FixtureSet load_fixtures(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open fixtures file " + path);
  return parse_fixtures(in);
}

SelftestResult run_selftest(const FixtureSet& set, bool rerun_audits) {
  SelftestResult result;
  auto fail = [&](const std::string& what) {
    result.ok = false;
    result.failure = what;
    return result;
  };

  std::vector<int> seen(set.entries.size(), 0);
  for (const FixturePin& pin : set.pins) {
    const FixtureEntry& entry = *set.entry(pin.identity_id);
    const int k = ++seen[&entry - set.entries.data()];
    const std::string name = "pin " + std::to_string(k) + " of " + pin.identity_id;
    const double tol = 10.0 * entry.tolerance;
    IdentityCheck check;
    try {
      check = eval_identity_sides(pin.identity_id, pin.params, pin.z, pin.n);
    } catch (const Error& e) {
      return fail(name + ": " + e.what());
    }
    if (rel_diff(check.lhs_value, pin.lhs) > tol) return fail(name + ": lhs changed");
    if (rel_diff(check.rhs_value, pin.rhs) > tol) return fail(name + ": rhs changed");
    if (rel_diff(check.lhs_value, entry.constant * check.rhs_value) > tol) {
      return fail(name + ": lhs != c rhs for the recorded constant");
    }
    ++result.pins_checked;
  }

  if (rerun_audits) {
    for (const FixtureAudit& a : set.audits) {
      SweepConfig config;
      config.seed = a.seed;
      config.samples = a.samples;
      config.form = a.form;
      AuditResult fresh;
      const std::string name = std::string("audit ") + a.identity_id + " " + to_string(a.form) +
                               " seed " + std::to_string(a.seed);
      try {
        fresh = constant_audit(a.identity_id, config);
      } catch (const EmptyAdmissibleSet& e) {
        if (a.usable == 0) {
          ++result.audits_checked;
          continue;
        }
        return fail(name + ": " + e.what());
      } catch (const Error& e) {
        return fail(name + ": " + e.what());
      }
      if (a.usable == 0) return fail(name + ": recorded as unusable but now fits");
      if (fresh.samples != a.usable) return fail(name + ": usable sample count changed");
      if (std::abs(fresh.constant - a.constant) > 1e-6 * std::max(1.0, std::abs(a.constant))) {
        return fail(name + ": fitted constant changed");
      }
      ++result.audits_checked;
    }
  }
  return result;
}

}  // namespace jacobi
