// Copyright 2026 The finmono Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include "finmono_cli/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <optional>
#include <sstream>

#include <nlohmann/json.hpp>

#include "finmono/errors.hpp"
#include "finmono/pipeline.hpp"
#include "finmono/tracetable.hpp"
#include "finmono_cli/suites.hpp"

namespace finmono::cli {

namespace {

using json = nlohmann::ordered_json;

// Thrown for flag problems detected after parsing; maps to exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

json big(const BigInt& x) {
  if (x.fits_slong_p()) return x.get_si();
  return x.get_str();
}

void put_bound(json& j, const BoundValue& v) {
  if (v.is_exact()) {
    j["N"] = big(*v.exact);
  } else {
    j["N_log10"] = *v.magnitude;
  }
}

BigInt integer_flag(const std::string& text, const char* flag) {
  try {
    return arith::parse_integer(text);
  } catch (const ParameterError&) {
    throw UsageError(std::string(flag) + ": expected an integer, got '" + text + "'");
  }
}

BigRat rational_flag(const std::string& text, const char* flag) {
  try {
    return arith::parse_rational(text);
  } catch (const ParameterError&) {
    throw UsageError(std::string(flag) + ": expected a rational n or n/d, got '" + text + "'");
  }
}

std::vector<unsigned> list_flag(const std::string& text, const char* flag) {
  std::vector<unsigned> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) {
    if (item.empty()) continue;
    const BigInt v = integer_flag(item, flag);
    if (v < 0 || !v.fits_uint_p()) throw UsageError(std::string(flag) + ": entries must be non-negative");
    out.push_back(static_cast<unsigned>(v.get_ui()));
  }
  return out;
}

template <typename T>
T need(const std::optional<T>& v, const char* flag) {
  if (!v) throw UsageError(std::string("missing required flag ") + flag);
  return *v;
}

// Applies "key = value" lines to options that were not given on the command line.
void apply_config(CLI::App& sub, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("--config: cannot open '" + path + "'");
  std::size_t lineno = 0;
  for (std::string line; std::getline(in, line);) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#' || line[first] == ';') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw UsageError("--config line " + std::to_string(lineno) + ": expected key = value");
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r\"");
      const auto e = s.find_last_not_of(" \t\r\"");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    while (!key.empty() && key[0] == '-') key.erase(0, 1);
    if (key == "config") throw UsageError("--config files cannot nest");
    CLI::Option* opt = sub.get_option_no_throw("--" + key);
    if (opt == nullptr) throw UsageError("--config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    if (opt->count() > 0) continue;  // command line wins
    opt->add_result(value);
    opt->run_callback();
  }
}

// ---------------------------------------------------------------- bound

struct BoundFlags {
  std::string family;
  bool general = false;
  bool curve = false;
  std::string criterion = "eigen";
  std::optional<std::uint64_t> p;
  std::optional<unsigned> nvar, f_deg, m, a, b, r, ambient_n, cond_E, f_ram, d_ext;
  std::optional<std::string> e_override, q, C, c_X, b1, e_breaks;
  std::string config;
};

const char* headline_theorem(const std::string& family, const std::string& criterion) {
  const bool general = family == "general";
  if (criterion == "eigen") return general ? theorem::kEigenGeneral : theorem::kEigenCurve;
  if (criterion == "trace" || criterion == "integral") return general ? theorem::kIntegralGeneral : theorem::kIntegralCurve;
  if (criterion == "traces") return general ? theorem::kTraceIdentityGeneral : theorem::kTraceIdentityCurve;
  return nullptr;
}

void add_bound_flags(CLI::App& cmd, BoundFlags& f) {
  cmd.add_option("--family", f.family, "example family: as | hyp")->check(CLI::IsMember({"as", "hyp"}));
  cmd.add_flag("--general", f.general, "raw parameters of the general bounds");
  cmd.add_flag("--curve", f.curve, "raw parameters of the curve bounds");
  cmd.add_option("--criterion", f.criterion, "eigen | trace | traces | all")
      ->check(CLI::IsMember({"eigen", "trace", "integral", "traces", "all"}));
  cmd.add_option("--p", f.p, "characteristic");
  cmd.add_option("--nvar", f.nvar, "AS exponent n");
  cmd.add_option("--e-override", f.e_override, "AS break bound instead of 1/(n-1)");
  cmd.add_option("--f-deg", f.f_deg, "hyp: q = p^f-deg (default 1)");
  cmd.add_option("--m", f.m, "hyp: character order");
  cmd.add_option("--a", f.a, "hyp: number of chi characters");
  cmd.add_option("--b", f.b, "hyp: number of rho characters");
  cmd.add_option("--r", f.r, "rank");
  cmd.add_option("--q", f.q, "base field size");
  cmd.add_option("--C", f.C, "complexity bound");
  cmd.add_option("--ambient-n", f.ambient_n, "projective embedding dimension");
  cmd.add_option("--c-X", f.c_X, "complexity of the structure sheaf (default 1)");
  cmd.add_option("--cond-E", f.cond_E, "conductor of the coefficient field (default 1)");
  cmd.add_option("--f-ram", f.f_ram, "ramification index above p (default 1)");
  cmd.add_option("--b1", f.b1, "first Betti number of the curve");
  cmd.add_option("--e-breaks", f.e_breaks, "sum of the breaks");
  cmd.add_option("--d-ext", f.d_ext, "degree bound [E:Q] (informational)");
  cmd.add_option("--config", f.config, "key = value file equivalent to flags");
}

std::uint64_t prime_from(const std::optional<BigInt>& q) {
  if (!q || *q < 2 || !q->fits_ulong_p()) throw UsageError("--p is required when --q is not a prime power");
  std::uint64_t n = q->get_ui();
  const auto f = arith::factorize(n);
  if (f.size() != 1) throw UsageError("--q must be a prime power (or pass --p)");
  return f[0].first;
}

BoundReport run_bound(const BoundFlags& f, const Limits& limits) {
  const int modes = int(!f.family.empty()) + int(f.general) + int(f.curve);
  if (modes != 1) throw UsageError("exactly one of --family, --general, --curve is required");
  if (f.family == "as") {
    const std::uint64_t p = need(f.p, "--p");
    const unsigned n = need(f.nvar, "--nvar");
    std::optional<BigRat> e;
    if (f.e_override) e = rational_flag(*f.e_override, "--e-override");
    return bounds::example_bounds_artin_schreier(p, n, e);
  }
  if (f.family == "hyp") {
    return bounds::example_bounds_hypergeometric(need(f.p, "--p"), f.f_deg.value_or(1), need(f.m, "--m"),
                                                 need(f.a, "--a"), need(f.b, "--b"));
  }
  const std::optional<BigInt> q = f.q ? std::optional(integer_flag(*f.q, "--q")) : std::nullopt;
  if (f.general) {
    GeneralParams gp;
    gp.r = need(f.r, "--r");
    gp.q = need(q, "--q");
    gp.p = f.p ? *f.p : prime_from(q);
    gp.ambient_n = need(f.ambient_n, "--ambient-n");
    gp.C = integer_flag(need(f.C, "--C"), "--C");
    gp.c_X = f.c_X ? integer_flag(*f.c_X, "--c-X") : BigInt(1);
    gp.cond_E = f.cond_E.value_or(1);
    gp.f_ram = f.f_ram.value_or(1);
    gp.d_ext = f.d_ext.value_or(1);
    return bounds::general_report(gp, limits);
  }
  CurveParams cp;
  cp.r = need(f.r, "--r");
  cp.q = need(q, "--q");
  cp.p = f.p ? *f.p : prime_from(q);
  cp.cond_E = f.cond_E.value_or(1);
  cp.f_ram = f.f_ram.value_or(1);
  cp.b1 = integer_flag(need(f.b1, "--b1"), "--b1");
  cp.e_breaks = rational_flag(need(f.e_breaks, "--e-breaks"), "--e-breaks");
  return bounds::curve_report(cp);
}

// ---------------------------------------------------------------- scan

struct ScanFlags {
  std::string family;
  std::string table;
  std::string criterion;
  std::optional<std::uint32_t> p;
  std::optional<unsigned> nvar;
  unsigned f_deg = 1;
  std::optional<unsigned> m;
  std::optional<std::string> chi;
  std::string rho;
  unsigned max_degree = 3;
  std::string max_field_size = "1048576";
  std::string max_points = "16777216";
  unsigned jobs = 1;
  std::string out;
  std::string csv;
  std::string bound = "theorem";
  bool decide = false;
  bool no_timing = false;
  std::string config;
};

void add_scan_flags(CLI::App& cmd, ScanFlags& f) {
  cmd.add_option("--family", f.family, "as | hyp")->check(CLI::IsMember({"as", "hyp"}));
  cmd.add_option("--table", f.table, "trace table file");
  cmd.add_option("--criterion", f.criterion, "eigen | trace")->check(CLI::IsMember({"eigen", "trace"}));
  cmd.add_option("--p", f.p, "characteristic");
  cmd.add_option("--nvar", f.nvar, "AS exponent n");
  cmd.add_option("--f-deg", f.f_deg, "hyp: q = p^f-deg");
  cmd.add_option("--m", f.m, "hyp: character order, must divide q - 1");
  cmd.add_option("--chi", f.chi, "hyp: comma-separated chi exponents (a entries)");
  cmd.add_option("--rho", f.rho, "hyp: comma-separated rho exponents (b entries)");
  cmd.add_option("--max-degree", f.max_degree, "largest extension degree to scan");
  cmd.add_option("--max-field-size", f.max_field_size, "largest field enumerated per point");
  cmd.add_option("--max-points", f.max_points, "total point budget");
  cmd.add_option("--jobs", f.jobs, "worker threads")->check(CLI::PositiveNumber);
  cmd.add_option("--out", f.out, "write the JSON report here instead of stdout");
  cmd.add_option("--csv", f.csv, "write per-point traces as CSV");
  cmd.add_option("--bound", f.bound, "theorem | none")->check(CLI::IsMember({"theorem", "none"}));
  cmd.add_flag("--decide", f.decide, "clamp the scan to the feasible part of the theorem bound");
  cmd.add_flag("--no-timing", f.no_timing, "omit the timing block");
  cmd.add_option("--config", f.config, "key = value file equivalent to flags");
}

SheafFamily family_from(const ScanFlags& f) {
  const int modes = int(!f.family.empty()) + int(!f.table.empty());
  if (modes != 1) throw UsageError("exactly one of --family, --table is required");
  if (!f.table.empty()) {
    return TableFamily{std::make_shared<const TraceTable>(tracetable::read_file(f.table))};
  }
  if (f.family == "as") return ASFamily{need(f.p, "--p"), need(f.nvar, "--nvar")};
  HypFamily h;
  h.p = need(f.p, "--p");
  h.f_deg = f.f_deg;
  h.m = need(f.m, "--m");
  h.chi = list_flag(need(f.chi, "--chi"), "--chi");
  h.rho = list_flag(f.rho, "--rho");
  return h;
}

int scan_exit(VerdictKind k) {
  switch (k) {
    case VerdictKind::Finite: return kExitOk;
    case VerdictKind::Infinite: return kExitInfinite;
    default: return kExitInconclusive;
  }
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write '" + path + "'");
  out << text;
}

int run_scan(const ScanFlags& f, const Limits& limits, std::ostream& out) {
  if (f.criterion.empty()) throw UsageError("missing required flag --criterion");
  const SheafFamily fam = family_from(f);
  const Criterion criterion = pipeline::parse_criterion(f.criterion);
  ScanBudget budget;
  budget.max_degree = f.max_degree;
  budget.max_field_size = integer_flag(f.max_field_size, "--max-field-size");
  budget.max_points = integer_flag(f.max_points, "--max-points");
  budget.worker_count = f.jobs;
  if (budget.max_field_size < 1 || budget.max_points < 1) throw UsageError("budgets must be positive");

  ScanOptions opts;
  opts.limits = limits;
  opts.collect_rows = !f.csv.empty();
  ScanReport rep;
  if (f.decide) {
    rep = pipeline::decide(fam, criterion, budget, opts);
  } else {
    std::optional<BoundUsed> bound;
    if (f.bound == "theorem") bound = pipeline::theorem_bound(fam, criterion, limits);
    rep = pipeline::scan(fam, criterion, budget, bound, opts);
  }
  const std::string text = pipeline::report_json(rep, !f.no_timing);
  if (f.out.empty()) {
    out << text;
  } else {
    write_file(f.out, text);
    out << "verdict " << pipeline::to_string(rep.verdict.kind) << " (checked up to degree "
        << rep.verdict.checked_up_to << ")\n";
  }
  if (!f.csv.empty()) write_file(f.csv, pipeline::report_csv(rep));
  if (rep.error) return kExitUsage;
  return scan_exit(rep.verdict.kind);
}

// ---------------------------------------------------------------- oracle / selftest

int print_results(const std::vector<IdentityResult>& results, std::ostream& out) {
  const IdentityResult* first_failure = nullptr;
  for (const auto& r : results) {
    out << (r.passed ? "PASS " : "FAIL ") << r.suite << ": " << r.identity << " [" << r.detail << "]\n";
    if (!r.passed && first_failure == nullptr) first_failure = &r;
  }
  if (first_failure != nullptr) {
    out << "first failing identity: " << first_failure->identity << "\n";
    return kExitFailure;
  }
  out << "all " << results.size() << " identities passed\n";
  return kExitOk;
}

std::vector<IdentityResult> selftest_checks() {
  std::vector<IdentityResult> out;
  auto add = [&](const std::string& name, bool ok) { out.push_back({"selftest", name, ok, ok ? "ok" : "mismatch"}); };

  const BigInt as_expected[] = {40, 319, 2304402};
  for (unsigned n = 3; n <= 5; ++n) {
    const auto rep = bounds::example_bounds_artin_schreier(2, n);
    add("AS p=2 n=" + std::to_string(n) + " eigen bound", *rep.find(theorem::kEigenCurve)->N.exact == as_expected[n - 3]);
  }
  const ASFamily as{3, 2};
  const LevelPtr F3 = sheaftrace::point_level(as, 1);
  add("AS p=3 n=2 trace at t=0 is 1",
      sheaftrace::value(sheaftrace::trace_as(as, 1, FFElem{F3, 0}), 3) == CycNum::from_rational(3, 1));
  add("AS p=3 n=2 trace at t=1 is zeta_3^2",
      sheaftrace::value(sheaftrace::trace_as(as, 1, FFElem{F3, 1}), 3) == CycNum::zeta_power(3, 2));
  const std::vector<CycNum> ps{CycNum(4), CycNum::from_rational(4, -2)};
  add("newton: p1 = 0, p2 = -2 gives x^2 + 1",
      frobcheck::newton_char_poly(ps) ==
          CycPoly(4, {CycNum::from_rational(4, 1), CycNum(4), CycNum::from_rational(4, 1)}));
  SuiteConfig cfg;
  cfg.trials = 200;
  for (auto& r : run_suites("all", cfg)) out.push_back(std::move(r));
  return out;
}

}  // namespace

std::string bound_report_json(const BoundReport& rep, const std::string& criterion) {
  json j;
  j["family"] = rep.family;
  json inputs = json::object();
  for (const auto& [k, v] : rep.inputs) inputs[k] = v;
  j["inputs"] = inputs;
  j["criterion"] = criterion;
  if (const char* name = headline_theorem(rep.family, criterion)) {
    if (const NamedBound* b = rep.find(name)) {
      j["theorem"] = b->theorem;
      put_bound(j, b->N);
    }
  }
  j["M"] = big(rep.M);
  j["R"] = big(rep.R);
  if (rep.A_n) j["A_n"] = arith::to_fraction_string(*rep.A_n);
  json all = json::array();
  for (const auto& b : rep.bounds) {
    json e{{"theorem", b.theorem}};
    put_bound(e, b.N);
    all.push_back(e);
  }
  j["bounds"] = all;
  if (rep.M_closed_form) {
    j["M_closed_form"] = big(*rep.M_closed_form);
    j["M_closed_form_agrees"] = rep.M_closed_form_agrees;
  }
  if (!rep.m_readings.empty()) {
    json readings = json::array();
    for (const auto& r : rep.m_readings) {
      json e{{"reading", r.reading}};
      e["M"] = r.M ? big(*r.M) : json(nullptr);
      e["R"] = r.R ? big(*r.R) : json(nullptr);
      e["N"] = r.N_eigen ? big(*r.N_eigen) : json(nullptr);
      readings.push_back(e);
    }
    j["M_readings"] = readings;
    j["M_authoritative"] = big(rep.M);
  }
  if (rep.reference_N) {
    j["reference_N"] = big(*rep.reference_N);
    j["reference_N_reproduced"] = rep.reference_N_reproduced;
  }
  j["notes"] = rep.notes;
  return j.dump(2) + "\n";
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"finmono: effective finite-monodromy bounds and Frobenius checks"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "expand all help");

  BoundFlags bf;
  CLI::App* bound = app.add_subcommand("bound", "print the N bounds as JSON");
  add_bound_flags(*bound, bf);

  ScanFlags sf;
  CLI::App* scan = app.add_subcommand("scan", "scan points of a family and issue a verdict");
  add_scan_flags(*scan, sf);

  std::string suite = "all";
  SuiteConfig sc;
  std::string oracle_config;
  CLI::App* oracle = app.add_subcommand("oracle", "run the cross-check suites");
  oracle->add_option("--suite", suite, "all | mlcm | adams | lemma | gauss");
  oracle->add_option("--rmax", sc.rmax, "largest rank (mlcm default 12, adams default 8)");
  oracle->add_option("--mmax", sc.mmax, "largest M for the Adams identity");
  oracle->add_option("--trials", sc.trials, "samples per power-sum case");
  oracle->add_option("--seed", sc.seed, "sampler seed");
  oracle->add_option("--inject-fault", sc.fault, "perturb the named suite (or all) to exercise failure reporting");
  oracle->add_option("--config", oracle_config, "key = value file equivalent to flags");

  CLI::App* selftest = app.add_subcommand("selftest", "quick end-to-end checks");

  std::vector<std::string> argv_store{"finmono"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : argv_store) argv.push_back(s.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    const Limits limits = Limits::from_env();
    if (bound->parsed()) {
      if (!bf.config.empty()) apply_config(*bound, bf.config);
      const BoundReport rep = run_bound(bf, limits);
      out << bound_report_json(rep, bf.criterion);
      return kExitOk;
    }
    if (scan->parsed()) {
      if (!sf.config.empty()) apply_config(*scan, sf.config);
      return run_scan(sf, limits, out);
    }
    if (oracle->parsed()) {
      if (!oracle_config.empty()) apply_config(*oracle, oracle_config);
      return print_results(run_suites(suite, sc), out);
    }
    if (selftest->parsed()) return print_results(selftest_checks(), out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const TableFormatError& e) {
    err << "error: " << e.what() << "\n";
    return kExitTable;
  } catch (const ParameterError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace finmono::cli
