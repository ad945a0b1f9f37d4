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
#include "finmono/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "finmono/errors.hpp"

namespace finmono::pipeline {

namespace {

using json = nlohmann::ordered_json;

constexpr std::uint64_t kNone = std::numeric_limits<std::uint64_t>::max();

BigInt ipow(const BigInt& base, unsigned long e) {
  BigInt out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), e);
  return out;
}

json big(const BigInt& x) {
  if (x.fits_slong_p()) return x.get_si();
  return x.get_str();
}

json trace_json(const NormalizedTrace& tr) {
  json coords = json::array();
  for (const auto& c : tr.numerator.coords()) coords.push_back(arith::to_fraction_string(c));
  return json{{"conductor", tr.numerator.conductor()}, {"gauss_exponent", tr.gauss_exponent}, {"coords", coords}};
}

json frob_json(const FrobData& fd) {
  json poly = json::array();
  for (const auto& c : fd.char_poly.coeffs()) {
    json coords = json::array();
    for (const auto& x : c.coords()) coords.push_back(arith::to_fraction_string(x));
    poly.push_back(coords);
  }
  return json{{"m", fd.m},
              {"point", fd.point},
              {"char_poly", poly},
              {"trace_integral", fd.trace_integral},
              {"eigen_unity", fd.eigen_unity},
              {"failure", fd.failure}};
}

std::string bound_text(const BoundUsed& b) {
  return b.N.is_exact() ? b.N.exact->get_str() : "10^" + std::to_string(*b.N.magnitude);
}

struct PointEval {
  const SheafFamily& fam;
  Criterion criterion;
  const Limits& limits;
  std::uint64_t M;

  std::optional<Witness> operator()(unsigned m, std::uint64_t id, NormalizedTrace* trace_out) const {
    const std::uint64_t p = sheaftrace::gauss_prime(fam);
    if (criterion == Criterion::Trace) {
      NormalizedTrace tr = sheaftrace::power_trace(fam, m, id, 1, limits);
      if (trace_out) *trace_out = tr;
      if (frobcheck::check_trace_integral(tr, p)) return std::nullopt;
      return Witness{m, id, "trace_integral", "Frobenius trace is not integral above p", std::move(tr), std::nullopt};
    }
    FrobOptions fo;
    fo.limits = limits;
    fo.M = M;
    FrobData fd = frobcheck::frobenius_char_poly(fam, m, id, fo);
    if (trace_out) *trace_out = fd.power_sums.front();
    if (fd.trace_integral && fd.eigen_unity) return std::nullopt;
    Witness w{m, id, fd.trace_integral ? "eigen_unity" : "trace_integral", fd.failure, fd.power_sums.front(), fd};
    return w;
  }
};

std::uint64_t unity_order(const SheafFamily& fam) {
  const FamilyMetadata md = sheaftrace::family_metadata(fam);
  const BigInt M = bounds::m_lcm(md.cond_E, md.rank);
  if (!M.fits_ulong_p()) throw BudgetExceeded("M does not fit 64 bits");
  return M.get_ui();
}

struct ChunkResult {
  std::uint64_t violation_index = kNone;
  std::optional<Witness> witness;
  std::vector<PointRow> rows;
  std::exception_ptr error;
  std::uint64_t error_index = kNone;
};

struct DegreeOutcome {
  std::uint64_t checked = 0;
  std::optional<Witness> witness;
  std::vector<PointRow> rows;
};

DegreeOutcome run_degree(const PointEval& eval, unsigned m, const std::vector<std::uint64_t>& ids, std::uint64_t n,
                         unsigned workers, const ScanOptions& opts) {
  const std::uint64_t chunk = std::max<std::uint64_t>(opts.chunk, 1);
  const std::uint64_t nchunks = (n + chunk - 1) / chunk;
  std::vector<ChunkResult> results(nchunks);
  std::atomic<std::uint64_t> next{0};
  std::atomic<std::uint64_t> best{kNone};

  auto lower_best = [&](std::uint64_t i) {
    std::uint64_t cur = best.load();
    while (i < cur && !best.compare_exchange_weak(cur, i)) {
    }
  };
  auto work = [&] {
    for (std::uint64_t c = next++; c < nchunks; c = next++) {
      ChunkResult& res = results[c];
      const std::uint64_t end = std::min(n, (c + 1) * chunk);
      for (std::uint64_t i = c * chunk; i < end; ++i) {
        if (i > best.load()) break;
        const std::uint64_t id = ids.empty() ? i : ids[i];
        try {
          NormalizedTrace tr;
          auto w = eval(m, id, opts.collect_rows ? &tr : nullptr);
          if (opts.collect_rows) res.rows.push_back(PointRow{m, id, !w.has_value(), std::move(tr)});
          if (w) {
            res.violation_index = i;
            res.witness = std::move(w);
            lower_best(i);
            break;
          }
        } catch (...) {
          res.error = std::current_exception();
          res.error_index = i;
          lower_best(i);
          break;
        }
      }
    }
  };

  if (workers <= 1 || nchunks <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    const unsigned count = static_cast<unsigned>(std::min<std::uint64_t>(workers, nchunks));
    for (unsigned w = 0; w < count; ++w) pool.emplace_back(work);
  }

  DegreeOutcome out;
  out.checked = n;
  for (auto& res : results) {
    if (res.error) std::rethrow_exception(res.error);
    for (auto& row : res.rows) out.rows.push_back(std::move(row));
    if (res.witness) {
      out.checked = res.violation_index + 1;
      out.witness = std::move(res.witness);
      break;
    }
  }
  return out;
}

bool exceeds(const BigInt& value, const BigInt& cap) { return value > cap; }

}  // namespace

std::string to_string(Criterion c) { return c == Criterion::Eigen ? "eigen" : "trace"; }

std::string to_string(VerdictKind k) {
  switch (k) {
    case VerdictKind::Finite: return "Finite";
    case VerdictKind::Infinite: return "Infinite";
    default: return "Inconclusive";
  }
}

Criterion parse_criterion(const std::string& text) {
  if (text == "eigen") return Criterion::Eigen;
  if (text == "trace" || text == "traces" || text == "integral") return Criterion::Trace;
  throw ParameterError("unknown criterion '" + text + "' (expected eigen or trace)");
}

std::optional<BoundUsed> theorem_bound(const SheafFamily& fam, Criterion criterion, const Limits& limits) {
  const FamilyMetadata md = sheaftrace::family_metadata(fam);
  if (md.b1 && md.e_breaks) {
    CurveParams cp;
    cp.r = md.rank;
    cp.q = md.q;
    cp.p = md.p;
    cp.cond_E = md.cond_E;
    cp.f_ram = md.f_ram;
    cp.b1 = *md.b1;
    cp.e_breaks = *md.e_breaks;
    if (criterion == Criterion::Eigen) return BoundUsed{theorem::kEigenCurve, bounds::n_eigen_curve(cp).N};
    return BoundUsed{theorem::kIntegralCurve, bounds::n_integral_curve(cp)};
  }
  if (md.C) {
    GeneralParams gp;
    gp.r = md.rank;
    gp.q = md.q;
    gp.p = md.p;
    gp.ambient_n = md.ambient_n.value_or(0);
    gp.C = *md.C;
    gp.c_X = md.c_X.value_or(BigInt(1));
    gp.cond_E = md.cond_E;
    gp.f_ram = md.f_ram;
    if (criterion == Criterion::Eigen) return BoundUsed{theorem::kEigenGeneral, bounds::n_eigen_general(gp, limits).N};
    return BoundUsed{theorem::kIntegralGeneral, bounds::n_integral_general(gp, limits)};
  }
  return std::nullopt;
}

BigInt field_size(const SheafFamily& fam, unsigned m, Criterion criterion) {
  if (fam.index() == 2) return 0;
  const FamilyMetadata md = sheaftrace::family_metadata(fam);
  const unsigned k = criterion == Criterion::Eigen ? md.rank : 1;
  return ipow(md.q, static_cast<unsigned long>(m) * k);
}

BigInt cost_estimate(const SheafFamily& fam, unsigned m, Criterion criterion) {
  const FamilyMetadata md = sheaftrace::family_metadata(fam);
  const unsigned kmax = criterion == Criterion::Eigen ? md.rank : 1;
  if (const auto* tf = std::get_if<TableFamily>(&fam)) {
    return BigInt(static_cast<unsigned long>(tf->table->points(m).size())) * kmax;
  }
  const bool hyp = fam.index() == 1;
  const BigInt qm = ipow(md.q, m);
  const BigInt points = hyp ? qm - 1 : qm;
  BigInt per_point = 0;
  for (unsigned k = 1; k <= kmax; ++k) {
    const BigInt size = ipow(md.q, static_cast<unsigned long>(m) * k);
    if (hyp) {
      const auto& h = std::get<HypFamily>(fam);
      per_point += ipow(size - 1, h.a() + h.b() - 1);
    } else {
      per_point += size;
    }
  }
  return points * per_point;
}

std::optional<Witness> check_point(const SheafFamily& fam, Criterion criterion, unsigned m, std::uint64_t id,
                                   const Limits& limits) {
  sheaftrace::validate(fam);
  const PointEval eval{fam, criterion, limits, criterion == Criterion::Eigen ? unity_order(fam) : 0};
  return eval(m, id, nullptr);
}

ScanReport scan(const SheafFamily& fam, Criterion criterion, const ScanBudget& budget,
                const std::optional<BoundUsed>& bound, const ScanOptions& opts) {
  const auto start = std::chrono::steady_clock::now();
  ScanReport rep;
  rep.family = sheaftrace::family_name(fam);
  rep.params = sheaftrace::family_params(fam);
  rep.criterion = criterion;
  rep.budget = budget;
  rep.verdict.bound_used = bound;
  auto finish = [&]() -> ScanReport& {
    rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rep;
  };

  try {
    sheaftrace::validate(fam);
  } catch (const ParameterError& e) {
    rep.error = e.what();
    rep.notes.push_back("no scan performed; bounds are still reported");
    return finish();
  }
  if (budget.worker_count == 0 || budget.max_field_size < 1 || budget.max_points < 1) {
    throw ParameterError("scan budget: worker count, field size and point caps must be positive");
  }

  std::uint64_t M = 0;
  if (criterion == Criterion::Eigen) {
    M = unity_order(fam);
    rep.M = BigInt(static_cast<unsigned long>(M));
  }
  const PointEval eval{fam, criterion, opts.limits, M};

  unsigned target = budget.max_degree;
  if (bound && bound->N.is_exact() && *bound->N.exact < target) target = static_cast<unsigned>(bound->N.exact->get_ui());

  BigInt used = 0;
  const auto* table = std::get_if<TableFamily>(&fam);
  for (unsigned m = 1; m <= target; ++m) {
    if (!table && exceeds(field_size(fam, m, criterion), budget.max_field_size)) {
      rep.notes.push_back("stopped before degree " + std::to_string(m) + ": field size " +
                          field_size(fam, m, criterion).get_str() + " exceeds max_field_size");
      break;
    }
    std::vector<std::uint64_t> ids;
    std::uint64_t npts = 0;
    if (table) {
      ids = table->table->points(m);
      npts = ids.size();
      if (npts == 0) {
        rep.notes.push_back("stopped before degree " + std::to_string(m) + ": table has no entries there");
        break;
      }
    } else {
      npts = sheaftrace::point_count(fam, m, opts.limits);
    }
    const BigInt allowance = budget.max_points - used;
    const std::uint64_t n = allowance >= BigInt(static_cast<unsigned long>(npts)) ? npts : allowance.get_ui();

    DegreeStats ds;
    ds.m = m;
    ds.points = npts;
    ds.cost = cost_estimate(fam, m, criterion);
    DegreeOutcome out;
    try {
      std::vector<std::uint64_t> lookup = ids;
      if (!table) lookup.clear();
      if (fam.index() == 1) {
        lookup.resize(n);
        for (std::uint64_t i = 0; i < n; ++i) lookup[i] = i + 1;
      }
      out = run_degree(eval, m, lookup, n, budget.worker_count, opts);
    } catch (const BudgetExceeded& e) {
      rep.notes.push_back("stopped in degree " + std::to_string(m) + ": " + e.what());
      rep.degrees.push_back(ds);
      break;
    }
    ds.checked = out.checked;
    ds.violations = out.witness ? 1 : 0;
    ds.complete = !out.witness && n == npts;
    used += BigInt(static_cast<unsigned long>(ds.checked));
    for (auto& row : out.rows) rep.rows.push_back(std::move(row));
    rep.degrees.push_back(ds);
    if (out.witness) {
      rep.verdict.kind = VerdictKind::Infinite;
      rep.verdict.witness = std::move(out.witness);
      break;
    }
    if (!ds.complete) {
      rep.notes.push_back("point budget exhausted in degree " + std::to_string(m) + " after " +
                          std::to_string(n) + " of " + std::to_string(npts) + " points");
      break;
    }
  }

  for (const auto& d : rep.degrees) {
    if (!d.complete) break;
    rep.verdict.checked_up_to = d.m;
  }
  if (rep.verdict.kind != VerdictKind::Infinite) {
    const bool covered = bound && bound->N.is_exact() && BigInt(rep.verdict.checked_up_to) >= *bound->N.exact;
    rep.verdict.kind = covered ? VerdictKind::Finite : VerdictKind::Inconclusive;
    if (!bound) {
      rep.notes.push_back("no theorem bound selected; the scan is evidence only");
    } else if (!covered) {
      rep.notes.push_back("theorem bound N = " + bound_text(*bound) + " not reached (checked up to degree " +
                          std::to_string(rep.verdict.checked_up_to) + ")");
    }
  }
  return finish();
}

ScanReport decide(const SheafFamily& fam, Criterion criterion, const ScanBudget& budget, const ScanOptions& opts) {
  const auto bound = theorem_bound(fam, criterion, opts.limits);
  if (!bound || !bound->N.is_exact()) {
    ScanReport rep = scan(fam, criterion, budget, bound, opts);
    rep.notes.push_back(bound ? "bound only known by magnitude; Finite is out of reach" : "family declares no bound inputs");
    return rep;
  }
  const BigInt& N = *bound->N.exact;
  unsigned feasible = 0;
  BigInt points = 0;
  const auto* table = std::get_if<TableFamily>(&fam);
  for (unsigned m = 1; BigInt(m) <= N && m <= budget.max_degree; ++m) {
    if (table) {
      const auto n = table->table->points(m).size();
      if (n == 0) break;
      points += BigInt(static_cast<unsigned long>(n));
    } else {
      if (field_size(fam, m, criterion) > budget.max_field_size) break;
      const FamilyMetadata md = sheaftrace::family_metadata(fam);
      points += fam.index() == 1 ? ipow(md.q, m) - 1 : ipow(md.q, m);
    }
    if (points > budget.max_points) break;
    feasible = m;
  }
  ScanBudget b = budget;
  b.max_degree = feasible;
  ScanReport rep = scan(fam, criterion, b, bound, opts);
  if (BigInt(feasible) < N) {
    rep.notes.push_back("bound N = " + N.get_str() + " exceeds the largest feasible degree " + std::to_string(feasible));
  }
  return rep;
}

std::string report_json(const ScanReport& rep, bool include_timing) {
  json j;
  j["family"] = rep.family;
  json params = json::object();
  for (const auto& [k, v] : rep.params) params[k] = v;
  j["params"] = params;
  j["criterion"] = to_string(rep.criterion);
  if (rep.verdict.bound_used) {
    const auto& b = *rep.verdict.bound_used;
    json bj{{"theorem", b.theorem}};
    if (b.N.is_exact()) {
      bj["N"] = big(*b.N.exact);
    } else {
      bj["N_log10"] = *b.N.magnitude;
    }
    j["bound"] = bj;
  } else {
    j["bound"] = nullptr;
  }
  if (rep.M) j["M"] = big(*rep.M);
  j["budget"] = json{{"max_degree", rep.budget.max_degree},
                     {"max_field_size", big(rep.budget.max_field_size)},
                     {"max_points", big(rep.budget.max_points)}};
  json degrees = json::array();
  for (const auto& d : rep.degrees) {
    degrees.push_back(json{{"m", d.m},
                           {"points", d.points},
                           {"checked", d.checked},
                           {"violations", d.violations},
                           {"complete", d.complete},
                           {"cost", big(d.cost)}});
  }
  j["degrees"] = degrees;
  j["verdict"] = json{{"kind", to_string(rep.verdict.kind)}, {"checked_up_to", rep.verdict.checked_up_to}};
  if (rep.verdict.witness) {
    const auto& w = *rep.verdict.witness;
    json wj{{"m", w.m}, {"point", w.point}, {"predicate", w.predicate}, {"detail", w.detail}, {"trace", trace_json(w.trace)}};
    if (w.frob) wj["frob"] = frob_json(*w.frob);
    j["witness"] = wj;
  }
  j["notes"] = rep.notes;
  if (rep.error) j["error"] = *rep.error;
  if (include_timing) j["timing"] = json{{"seconds", rep.seconds}, {"workers", rep.budget.worker_count}};
  return j.dump(2) + "\n";
}

std::string report_csv(const ScanReport& rep) {
  std::ostringstream out;
  out << "m,point,ok,conductor,gauss_exponent,coords\n";
  for (const auto& row : rep.rows) {
    out << row.m << ',' << row.point << ',' << (row.ok ? 1 : 0) << ',' << row.trace.numerator.conductor() << ','
        << row.trace.gauss_exponent << ',';
    const auto& coords = row.trace.numerator.coords();
    for (std::size_t i = 0; i < coords.size(); ++i) out << (i ? ";" : "") << arith::to_fraction_string(coords[i]);
    out << '\n';
  }
  return out.str();
}

}  // namespace finmono::pipeline
