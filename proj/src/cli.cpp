#include "jacobi/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <charconv>
#include <fstream>
#include <json.hpp>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>

#include "jacobi/errors.hpp"
#include "jacobi/fixtures.hpp"
#include "jacobi/identity_engine.hpp"
#include "jacobi/jacobi_first.hpp"
#include "jacobi/jacobi_second.hpp"

#ifndef JACOBI_FIXTURES_FILE
#define JACOBI_FIXTURES_FILE "data/fixtures.txt"
#endif

namespace jacobi {

namespace {

using Json = nlohmann::ordered_json;

constexpr int kOk = 0;
constexpr int kFailure = 1;
constexpr int kUsage = 2;

std::string fmt(double x) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, end);
}

std::string sci(double x) {
  std::ostringstream s;
  s.precision(2);
  s << std::scientific << x;
  return s.str();
}

double parse_double(std::string_view t, std::string_view what) {
  if (!t.empty() && t.front() == '+') t.remove_prefix(1);
  double x = 0.0;
  auto [end, ec] = std::from_chars(t.data(), t.data() + t.size(), x);
  if (t.empty() || ec != std::errc() || end != t.data() + t.size() || !std::isfinite(x)) {
    throw ParseError("bad " + std::string(what) + " '" + std::string(t) + "'");
  }
  return x;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = text.find(sep, start);
    parts.push_back(text.substr(start, pos - start));
    if (pos == std::string_view::npos) return parts;
    start = pos + 1;
  }
}

RepresentationId parse_rep(const std::string& s) {
  if (s == "auto") return RepresentationId::kAuto;
  if (s == "1") return RepresentationId::kRep1;
  if (s == "2") return RepresentationId::kRep2;
  if (s == "3") return RepresentationId::kRep3;
  if (s == "4") return RepresentationId::kRep4;
  throw ParseError("bad representation '" + s + "' (auto, 1, 2, 3 or 4)");
}

// RFC 4180: quote fields holding a separator, quote or line break.
std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

std::string csv_row(const std::vector<std::string>& fields) {
  std::string row;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) row += ',';
    row += csv_field(fields[i]);
  }
  return row + "\r\n";
}

Json complex_json(Complex c) { return Json::array({c.real(), c.imag()}); }

// Writes the whole document at once so a failed run never leaves a partial file.
bool emit(const std::string& path, const std::string& text, std::ostream& out, std::ostream& err) {
  if (path.empty() || path == "-") {
    out << text;
    return true;
  }
  std::ofstream file(path, std::ios::binary);
  file << text;
  file.close();
  if (!file) {
    err << "cannot write " << path << "\n";
    return false;
  }
  return true;
}

struct ParamArgs {
  std::string kind = "P";
  std::string alpha = "0", beta = "0", gamma = "0";
  std::string rep = "auto";
};

void add_param_options(CLI::App* sub, ParamArgs& p) {
  sub->add_option("--kind", p.kind, "P (first kind) or Q (second kind)")
      ->check(CLI::IsMember({"P", "Q"}));
  sub->add_option("--alpha", p.alpha, "complex literal re,im or re");
  sub->add_option("--beta", p.beta, "complex literal");
  sub->add_option("--gamma", p.gamma, "complex literal");
  sub->add_option("--rep", p.rep, "auto, 1, 2, 3 or 4");
}

EvalResult evaluate(const ParamArgs& p, const JacobiParams& params, Complex z) {
  const RepresentationId rep = parse_rep(p.rep);
  return p.kind == "Q" ? jacobi_q(params, z, rep) : jacobi_p(params, z, rep);
}

JacobiParams parse_params(const ParamArgs& p) {
  return {parse_complex(p.alpha), parse_complex(p.beta), parse_complex(p.gamma)};
}

// ---- config file --------------------------------------------------------

using ConfigEntries = std::vector<std::pair<std::string, std::string>>;

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

ConfigEntries read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open config file " + path);
  ConfigEntries entries;
  std::string line;
  for (int number = 1; std::getline(in, line); ++number) {
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw ParseError(path + ":" + std::to_string(number) + ": expected key=value");
    }
    std::string key = trim(std::string_view(t).substr(0, eq));
    if (key.empty()) throw ParseError(path + ":" + std::to_string(number) + ": empty key");
    entries.emplace_back(std::move(key), trim(std::string_view(t).substr(eq + 1)));
  }
  return entries;
}

// Config values fill options the command line left unset.
void apply_config(const ConfigEntries& config, CLI::App& app, CLI::App* sub) {
  std::set<std::string> known;
  for (const CLI::App* s : app.get_subcommands({})) {
    for (const CLI::Option* o : s->get_options()) {
      for (const std::string& name : o->get_lnames()) known.insert(name);
    }
  }
  for (const auto& [key, value] : config) {
    if (!known.count(key)) throw ParseError("unknown config key '" + key + "'");
    CLI::Option* opt = sub->get_option_no_throw("--" + key);
    if (!opt || opt->count() > 0) continue;
    opt->add_result(value);
    opt->run_callback();
  }
}

// ---- verify -------------------------------------------------------------

struct VerifyArgs {
  std::string id;
  bool all = false;
  std::optional<int> samples;
  std::uint64_t seed = 42;
  std::optional<double> tol;
  std::vector<int> n_values;
  std::string format = "text";
  std::string out_path;
  std::string json_path, csv_path;
  std::string form = "catalog";
};

Json report_json(const IdentityReport& r) {
  Json j;
  j["identity"] = r.identity_id;
  j["seed"] = r.seed;
  j["tolerance"] = r.tolerance;
  j["samples"] = {{"requested", r.samples_requested},
                  {"run", r.run},
                  {"passed", r.passed},
                  {"skipped", r.skipped}};
  if (r.worst) {
    const SampleOutcome& w = *r.worst;
    j["worst"] = {{"residual", w.residual},
                  {"params",
                   {{"alpha", complex_json(w.params.alpha)},
                    {"beta", complex_json(w.params.beta)},
                    {"gamma", complex_json(w.params.gamma)}}},
                  {"z", complex_json(w.z)},
                  {"n", w.n}};
  } else {
    j["worst"] = nullptr;
  }
  return j;
}

std::string report_line(const IdentityReport& r) {
  std::string line = r.identity_id;
  line.resize(std::max<std::size_t>(line.size(), 7), ' ');
  line += r.ok() ? "PASS" : "FAIL";
  line += "  passed " + std::to_string(r.passed) + "/" + std::to_string(r.run);
  line += "  skipped " + std::to_string(r.skipped);
  if (r.worst) {
    line += "  worst " + sci(r.worst->residual) + " at n=" + std::to_string(r.worst->n);
    if (!r.worst->error.empty()) line += " (" + r.worst->error + ")";
  }
  line += "  tol " + sci(r.tolerance);
  return line;
}

std::string reports_csv(const std::vector<IdentityReport>& reports) {
  std::string text = csv_row({"identity", "seed", "tolerance", "requested", "run", "passed",
                              "skipped", "worst_residual", "worst_n", "alpha_re", "alpha_im",
                              "beta_re", "beta_im", "gamma_re", "gamma_im", "z_re", "z_im"});
  for (const IdentityReport& r : reports) {
    std::vector<std::string> row{r.identity_id,
                                 std::to_string(r.seed),
                                 fmt(r.tolerance),
                                 std::to_string(r.samples_requested),
                                 std::to_string(r.run),
                                 std::to_string(r.passed),
                                 std::to_string(r.skipped)};
    if (r.worst) {
      const SampleOutcome& w = *r.worst;
      for (const std::string& s :
           {fmt(w.residual), std::to_string(w.n), fmt(w.params.alpha.real()),
            fmt(w.params.alpha.imag()), fmt(w.params.beta.real()), fmt(w.params.beta.imag()),
            fmt(w.params.gamma.real()), fmt(w.params.gamma.imag()), fmt(w.z.real()),
            fmt(w.z.imag())}) {
        row.push_back(s);
      }
    } else {
      row.resize(17);
    }
    text += csv_row(row);
  }
  return text;
}

int cmd_verify(VerifyArgs a, std::ostream& out, std::ostream& err) {
  if (a.all == !a.id.empty()) throw CLI::ValidationError("give exactly one of --id and --all");
  if (a.samples && *a.samples < 1) throw CLI::ValidationError("--samples must be at least 1");
  if (a.tol && !(*a.tol > 0.0)) throw CLI::ValidationError("--tol must be positive");
  if (!a.json_path.empty()) {
    a.format = "json";
    a.out_path = a.json_path;
  } else if (!a.csv_path.empty()) {
    a.format = "csv";
    a.out_path = a.csv_path;
  }

  std::vector<std::string> ids;
  if (a.all) {
    for (const IdentityDescriptor& e : identity_catalog()) ids.push_back(e.id);
  } else {
    find_identity(a.id);
    ids.push_back(a.id);
  }

  SweepConfig config;
  config.samples = a.samples;
  config.seed = a.seed;
  config.tolerance = a.tol;
  config.n_values = a.n_values;
  config.form = a.form == "alternate" ? FormVariant::kAlternate : FormVariant::kCatalog;

  std::vector<IdentityReport> reports;
  bool all_ok = true;
  std::string text;
  for (const std::string& id : ids) {
    IdentityReport r;
    try {
      r = verify_identity(id, config);
    } catch (const EmptyAdmissibleSet&) {
      const IdentityDescriptor& e = find_identity(id);
      r.identity_id = id;
      r.seed = a.seed;
      r.tolerance = a.tol.value_or(e.tolerance);
      r.samples_requested = a.samples.value_or(default_samples(e));
      r.skipped = r.samples_requested;
    }
    all_ok = all_ok && r.ok();
    const std::string line = report_line(r);
    out << line << "\n";
    text += line + "\n";
    reports.push_back(std::move(r));
  }

  std::string document;
  if (a.format == "json") {
    Json j;
    if (a.all) {
      j = Json::array();
      for (const IdentityReport& r : reports) j.push_back(report_json(r));
    } else {
      j = report_json(reports.front());
    }
    document = j.dump(2) + "\n";
  } else if (a.format == "csv") {
    document = reports_csv(reports);
  } else {
    document = text;
  }
  if (!a.out_path.empty() && !emit(a.out_path, document, out, err)) return kFailure;
  return all_ok ? kOk : kFailure;
}

// ---- table --------------------------------------------------------------

struct TableArgs {
  ParamArgs params;
  std::string grid;
  std::string format = "csv";
  std::string out_path;
  std::string json_path, csv_path;
};

std::vector<Complex> parse_grid(const std::string& spec) {
  const auto parts = split(spec, ',');
  Complex start, stop;
  std::string_view count_text;
  if (parts.size() == 3) {
    start = parse_double(parts[0], "grid start");
    stop = parse_double(parts[1], "grid stop");
    count_text = parts[2];
  } else if (parts.size() == 5) {
    start = {parse_double(parts[0], "grid start"), parse_double(parts[1], "grid start")};
    stop = {parse_double(parts[2], "grid stop"), parse_double(parts[3], "grid stop")};
    count_text = parts[4];
  } else {
    throw ParseError("--z-grid expects start,stop,count or start_re,start_im,stop_re,stop_im,count");
  }
  int count = 0;
  auto [end, ec] = std::from_chars(count_text.data(), count_text.data() + count_text.size(), count);
  if (ec != std::errc() || end != count_text.data() + count_text.size() || count < 1) {
    throw ParseError("bad grid count '" + std::string(count_text) + "'");
  }
  std::vector<Complex> z(count);
  for (int k = 0; k < count; ++k) {
    z[k] = count == 1 ? start : start + (stop - start) * (static_cast<double>(k) / (count - 1));
  }
  return z;
}

int cmd_table(TableArgs a, std::ostream& out, std::ostream& err) {
  if (!a.json_path.empty()) {
    a.format = "json";
    a.out_path = a.json_path;
  } else if (!a.csv_path.empty()) {
    a.format = "csv";
    a.out_path = a.csv_path;
  }
  const JacobiParams params = parse_params(a.params);
  const std::vector<Complex> grid = parse_grid(a.grid);
  parse_rep(a.params.rep);

  std::vector<EvalResult> values;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    try {
      values.push_back(evaluate(a.params, params, grid[k]));
    } catch (const Error& e) {
      err << "grid point " << k << " (z = " << fmt(grid[k].real()) << "," << fmt(grid[k].imag())
          << "): " << e.what() << "\n";
      return kFailure;
    }
  }

  std::string document;
  if (a.format == "json") {
    Json rows = Json::array();
    for (std::size_t k = 0; k < grid.size(); ++k) {
      rows.push_back({{"z_re", grid[k].real()},
                      {"z_im", grid[k].imag()},
                      {"value_re", values[k].value.real()},
                      {"value_im", values[k].value.imag()},
                      {"err_estimate", values[k].abs_error},
                      {"representation", to_string(values[k].representation)}});
    }
    document = rows.dump(2) + "\n";
  } else {
    document = csv_row({"z_re", "z_im", "value_re", "value_im", "err_estimate", "representation"});
    for (std::size_t k = 0; k < grid.size(); ++k) {
      document += csv_row({fmt(grid[k].real()), fmt(grid[k].imag()), fmt(values[k].value.real()),
                           fmt(values[k].value.imag()), fmt(values[k].abs_error),
                           to_string(values[k].representation)});
    }
  }
  return emit(a.out_path, document, out, err) ? kOk : kFailure;
}

// ---- audit --------------------------------------------------------------

struct AuditArgs {
  std::string id;
  std::vector<std::uint64_t> seeds{101, 202};
  int samples = 16;
  std::vector<int> n_values;
};

int cmd_audit(const AuditArgs& a, std::ostream& out) {
  const IdentityDescriptor& e = find_identity(a.id);
  if (a.samples < 1) throw CLI::ValidationError("--samples must be at least 1");
  std::vector<FormVariant> forms{FormVariant::kCatalog};
  if (e.has_alternate()) forms.push_back(FormVariant::kAlternate);
  for (FormVariant form : forms) {
    std::optional<Complex> first;
    bool stable = true;
    for (std::uint64_t seed : a.seeds) {
      SweepConfig config;
      config.seed = seed;
      config.samples = a.samples;
      config.n_values = a.n_values;
      config.form = form;
      const AuditResult r = constant_audit(a.id, config);
      out << e.id << ' ' << to_string(form) << " seed " << seed << "  c = " << fmt(r.constant.real())
          << "," << fmt(r.constant.imag()) << "  spread " << sci(r.spread) << "  samples "
          << r.samples << "\n";
      if (!first) first = r.constant;
      stable = stable && std::abs(r.constant - *first) <= 1e-6 * std::max(1.0, std::abs(*first));
    }
    out << e.id << ' ' << to_string(form) << (stable ? " stable" : " unstable") << " across seeds\n";
  }
  if (!e.constraints.empty()) out << e.id << " constraints: " << e.constraints << "\n";
  if (e.has_alternate()) out << e.id << " alternate: " << e.alternate_note << "\n";
  return kOk;
}

}  // namespace

Complex parse_complex(std::string_view text) {
  const auto parts = split(text, ',');
  if (parts.size() == 1) return parse_double(parts[0], "complex literal");
  if (parts.size() == 2) {
    return {parse_double(parts[0], "complex literal"), parse_double(parts[1], "complex literal")};
  }
  throw ParseError("bad complex literal '" + std::string(text) + "' (expected re,im or re)");
}

std::string default_fixtures_path() { return JACOBI_FIXTURES_FILE; }

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Jacobi functions of the first and second kind: evaluation and identity checks",
               "jacobi_fn"};
  app.require_subcommand(1);
  std::string config_path;
  app.add_option("--config", config_path, "key=value file; flags override its values");

  ParamArgs eval_args;
  std::string eval_z;
  CLI::App* eval = app.add_subcommand("eval", "Evaluate P or Q at one point");
  add_param_options(eval, eval_args);
  eval->add_option("--z", eval_z, "complex literal")->required();

  VerifyArgs verify_args;
  CLI::App* verify = app.add_subcommand("verify", "Seeded sweep of catalog identities");
  verify->add_option("--id", verify_args.id, "catalog id");
  verify->add_flag("--all", verify_args.all, "every catalog entry");
  verify->add_option("--samples", verify_args.samples, "samples per identity");
  verify->add_option("--seed", verify_args.seed, "sweep seed");
  verify->add_option("--tol", verify_args.tol, "relative tolerance");
  verify->add_option("--n", verify_args.n_values, "orders, e.g. 1,2,3")->delimiter(',');
  verify->add_option("--format", verify_args.format, "report format")
      ->check(CLI::IsMember({"text", "json", "csv"}));
  verify->add_option("--out", verify_args.out_path, "report file");
  verify->add_option("--json", verify_args.json_path, "JSON report file");
  verify->add_option("--csv", verify_args.csv_path, "CSV report file");
  verify->add_option("--form", verify_args.form, "catalog or alternate")
      ->check(CLI::IsMember({"catalog", "alternate"}));

  TableArgs table_args;
  CLI::App* table = app.add_subcommand("table", "Tabulate P or Q along a segment");
  add_param_options(table, table_args.params);
  table->add_option("--z-grid", table_args.grid, "start,stop,count (real) or complex ends")
      ->required();
  table->add_option("--format", table_args.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  table->add_option("--out", table_args.out_path, "output file");
  table->add_option("--json", table_args.json_path, "JSON output file");
  table->add_option("--csv", table_args.csv_path, "CSV output file");

  std::string fixtures_path = default_fixtures_path();
  bool full = false;
  CLI::App* selftest = app.add_subcommand("selftest", "Reproduce the pinned fixtures");
  selftest->add_option("--fixtures", fixtures_path, "fixtures file");
  selftest->add_flag("--full", full, "also recompute the constant audits");

  std::string fixtures_out;
  FixtureOptions fixture_options;
  CLI::App* fixtures = app.add_subcommand("fixtures", "Regenerate the fixtures file");
  fixtures->add_option("--out", fixtures_out, "output file")->required();
  fixtures->add_option("--pin-seed", fixture_options.pin_seed, "seed for the pinned samples");
  fixtures->add_option("--audit-samples", fixture_options.audit_samples, "samples per audit");

  AuditArgs audit_args;
  CLI::App* audit = app.add_subcommand("audit", "Fit lhs = c rhs for an entry and its alternate");
  audit->add_option("--id", audit_args.id, "catalog id")->required();
  audit->add_option("--seed", audit_args.seeds, "seeds, e.g. 101,202")->delimiter(',');
  audit->add_option("--samples", audit_args.samples, "samples per seed");
  audit->add_option("--n", audit_args.n_values, "orders")->delimiter(',');

  CLI::App* active = &app;
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
    for (CLI::App* s : app.get_subcommands()) active = s;
    if (!config_path.empty()) apply_config(read_config(config_path), app, active);

    if (active == eval) {
      const JacobiParams params = parse_params(eval_args);
      const Complex z = parse_complex(eval_z);
      parse_rep(eval_args.rep);
      const EvalResult r = evaluate(eval_args, params, z);
      out << "value " << fmt(r.value.real()) << " " << fmt(r.value.imag()) << "\n"
          << "err_estimate " << fmt(r.abs_error) << "\n"
          << "representation " << to_string(r.representation) << "\n"
          << "provenance " << r.provenance << "\n";
      return kOk;
    }
    if (active == verify) return cmd_verify(verify_args, out, err);
    if (active == table) return cmd_table(table_args, out, err);
    if (active == audit) return cmd_audit(audit_args, out);
    if (active == selftest) {
      const FixtureSet set = load_fixtures(fixtures_path);
      const SelftestResult r = run_selftest(set, full);
      if (!r.ok) {
        err << "selftest failed: " << r.failure << "\n";
        return kFailure;
      }
      out << "selftest ok: " << r.pins_checked << " pins";
      if (full) out << ", " << r.audits_checked << " audits";
      out << "\n";
      return kOk;
    }
    if (active == fixtures) {
      std::ostringstream text;
      write_fixtures(generate_fixtures(fixture_options), text);
      return emit(fixtures_out, text.str(), out, err) ? kOk : kFailure;
    }
    return kUsage;
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n\n" << app.help();
    return kUsage;
  } catch (const ParseError& e) {
    err << e.what() << "\n\n" << app.help();
    return kUsage;
  } catch (const UnknownIdentity& e) {
    err << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    err << e.what() << "\n";
    return kFailure;
  }
}

}  // namespace jacobi
