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
#include "finmono/sheaftrace.hpp"

#include <algorithm>
#include <mutex>
#include <tuple>

#include "finmono/errors.hpp"

namespace finmono {

std::vector<unsigned> TraceTable::degrees() const {
  std::vector<unsigned> out;
  for (const auto& [key, tr] : entries) {
    if (out.empty() || out.back() != key.first) out.push_back(key.first);
  }
  return out;
}

std::vector<std::uint64_t> TraceTable::points(unsigned degree) const {
  std::vector<std::uint64_t> out;
  for (auto it = entries.lower_bound({degree, 0}); it != entries.end() && it->first.first == degree; ++it) {
    out.push_back(it->first.second);
  }
  return out;
}

const NormalizedTrace& TraceTable::at(unsigned degree, std::uint64_t id) const {
  auto it = entries.find({degree, id});
  if (it == entries.end()) {
    throw TableFormatError("incomplete table: no entry for degree " + std::to_string(degree) + ", point " +
                           std::to_string(id));
  }
  return it->second;
}

namespace sheaftrace {

namespace {

std::mutex g_cache_mutex;
std::map<std::pair<std::uint32_t, std::uint64_t>, LevelPtr> g_primes;
std::map<std::pair<const FieldLevel*, unsigned>, LevelPtr> g_extensions;

LevelPtr prime_cached(std::uint32_t p, const Limits& limits) {
  std::lock_guard lock(g_cache_mutex);
  auto& slot = g_primes[{p, limits.max_table_size}];
  if (!slot) slot = FieldLevel::prime_field(p, limits);
  return slot;
}

LevelPtr extend_cached(const LevelPtr& base, unsigned k) {
  if (k == 1) return base;
  std::lock_guard lock(g_cache_mutex);
  auto& slot = g_extensions[{base.get(), k}];
  if (!slot) slot = base->extend(k);
  return slot;
}

std::uint64_t checked_pow(std::uint64_t base, unsigned e, std::uint64_t cap) {
  std::uint64_t out = 1;
  for (unsigned i = 0; i < e; ++i) {
    if (base != 0 && out > cap / base) return cap + 1;
    out *= base;
  }
  return out;
}

LevelPtr hyp_base_level(const HypFamily& fam, const Limits& limits) {
  return extend_cached(prime_cached(fam.p, limits), fam.f_deg);
}

const TraceTable& table_of(const TableFamily& fam) {
  if (!fam.table) throw ParameterError("table family without a table");
  return *fam.table;
}

}  // namespace

void validate(const SheafFamily& fam) {
  if (const auto* as = std::get_if<ASFamily>(&fam)) {
    if (as->p == 2) throw ParameterError("artin-schreier engine requires odd p (p = 2 is supported by bounds only)");
    if (!arith::is_prime(as->p)) throw ParameterError("artin-schreier: p must be prime");
    if (as->n < 2) throw ParameterError("artin-schreier: n must be >= 2");
    // x^(p k) = (x^k)^p has the same trace as x^k, so the sum collapses
    if (as->n % as->p == 0) throw ParameterError("artin-schreier: p must not divide n");
  } else if (const auto* hyp = std::get_if<HypFamily>(&fam)) {
    if (hyp->p == 2) throw ParameterError("hypergeometric engine requires odd p (p = 2 is supported by bounds only)");
    if (!arith::is_prime(hyp->p)) throw ParameterError("hypergeometric: p must be prime");
    if (hyp->f_deg == 0 || hyp->m == 0) throw ParameterError("hypergeometric: f_deg and m must be positive");
    if (!(hyp->a() > hyp->b())) throw ParameterError("hypergeometric: need a > b");
    const BigInt q = [&] {
      BigInt out;
      mpz_ui_pow_ui(out.get_mpz_t(), hyp->p, hyp->f_deg);
      return out;
    }();
    if ((q - 1) % hyp->m != 0) {
      throw ParameterError("hypergeometric: m = " + std::to_string(hyp->m) + " does not divide q - 1 = " +
                           BigInt(q - 1).get_str());
    }
    for (unsigned c : hyp->chi) {
      for (unsigned r : hyp->rho) {
        if (c % hyp->m == r % hyp->m) throw ParameterError("hypergeometric: chi and rho lists must be disjoint");
      }
    }
  } else {
    const auto& t = table_of(std::get<TableFamily>(fam));
    if (t.conductor == 0) throw ParameterError("table: conductor must be positive");
    if (!arith::is_prime(t.gauss_p)) throw ParameterError("table: gauss_p must be prime");
  }
}

std::string family_name(const SheafFamily& fam) {
  switch (fam.index()) {
    case 0: return "artin-schreier";
    case 1: return "hypergeometric";
    default: return "table";
  }
}

std::vector<std::pair<std::string, std::string>> family_params(const SheafFamily& fam) {
  auto join = [](const std::vector<unsigned>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s;
  };
  if (const auto* as = std::get_if<ASFamily>(&fam)) {
    return {{"p", std::to_string(as->p)}, {"n", std::to_string(as->n)}};
  }
  if (const auto* hyp = std::get_if<HypFamily>(&fam)) {
    return {{"p", std::to_string(hyp->p)}, {"f_deg", std::to_string(hyp->f_deg)}, {"m", std::to_string(hyp->m)},
            {"chi", join(hyp->chi)},       {"rho", join(hyp->rho)}};
  }
  const auto& t = table_of(std::get<TableFamily>(fam));
  return {{"conductor", std::to_string(t.conductor)},
          {"gauss_p", std::to_string(t.gauss_p)},
          {"entries", std::to_string(t.entries.size())}};
}

FamilyMetadata family_metadata(const SheafFamily& fam) {
  FamilyMetadata md;
  if (const auto* as = std::get_if<ASFamily>(&fam)) {
    md.rank = as->n - 1;
    md.cond_E = as->p;
    md.p = as->p;
    md.q = as->p;
    md.f_ram = as->p - 1;
    md.b1 = BigInt(0);
    md.e_breaks = BigRat(1, as->n - 1);
    return md;
  }
  if (const auto* hyp = std::get_if<HypFamily>(&fam)) {
    md.rank = hyp->a();
    md.cond_E = hyp->p * hyp->m;
    md.p = hyp->p;
    mpz_ui_pow_ui(md.q.get_mpz_t(), hyp->p, hyp->f_deg);
    md.f_ram = hyp->p - 1;
    md.b1 = BigInt(1);
    md.e_breaks = BigRat(1, hyp->a() - hyp->b());
    return md;
  }
  const auto& t = table_of(std::get<TableFamily>(fam));
  md.rank = t.meta.rank.value_or(1);
  md.cond_E = t.conductor;
  md.p = t.gauss_p;
  md.q = t.meta.q.value_or(BigInt(t.gauss_p));
  const unsigned v = arith::valuation(BigInt(t.conductor), t.gauss_p);
  const std::uint64_t default_f = v == 0 ? 1 : arith::euler_phi(checked_pow(t.gauss_p, v, ~std::uint64_t{0}));
  md.f_ram = t.meta.f_ram.value_or(static_cast<unsigned>(default_f));
  md.b1 = t.meta.b1;
  md.e_breaks = t.meta.e_breaks;
  md.ambient_n = t.meta.ambient_n;
  md.C = t.meta.C;
  md.c_X = t.meta.c_X;
  return md;
}

LevelPtr point_level(const SheafFamily& fam, unsigned m, const Limits& limits) {
  if (m == 0) throw ParameterError("point_level: degree must be >= 1");
  if (const auto* as = std::get_if<ASFamily>(&fam)) return extend_cached(prime_cached(as->p, limits), m);
  if (const auto* hyp = std::get_if<HypFamily>(&fam)) return extend_cached(hyp_base_level(*hyp, limits), m);
  throw ParameterError("point_level: table families have no field levels");
}

LevelPtr power_level(const SheafFamily& fam, unsigned m, unsigned k, const Limits& limits) {
  return extend_cached(point_level(fam, m, limits), k);
}

std::uint64_t point_count(const SheafFamily& fam, unsigned m, const Limits& limits) {
  if (fam.index() == 2) return table_of(std::get<TableFamily>(fam)).points(m).size();
  const std::uint64_t size = point_level(fam, m, limits)->size();
  return fam.index() == 0 ? size : size - 1;
}

std::uint64_t point_id(const SheafFamily& fam, unsigned m, std::uint64_t i, const Limits& limits) {
  (void)limits;
  switch (fam.index()) {
    case 0: return i;
    case 1: return i + 1;
    default: return table_of(std::get<TableFamily>(fam)).points(m).at(i);
  }
}

NormalizedTrace trace_as(const ASFamily& fam, unsigned m, const FFElem& t, std::uint64_t budget) {
  validate(fam);
  const FieldLevel& L = *t.level;
  if (L.characteristic() != fam.p || L.absolute_degree() != m) {
    throw ParameterError("trace_as: point does not live in F_(p^m)");
  }
  const std::uint64_t Q = L.size();
  if (Q > budget) throw BudgetExceeded("trace_as: field of size " + std::to_string(Q) + " exceeds budget");
  const std::uint32_t p = fam.p;
  std::vector<std::int64_t> counts(p, 0);
  counts[0] += 1;  // x = 0
  if (L.has_tables()) {
    const auto& T = L.trace_by_log();
    const std::uint64_t order = Q - 1;
    const bool twist = t.index != 0;
    const std::uint64_t lt = twist ? L.dlog(t.index) : 0;
    for (std::uint64_t e = 0; e < order; ++e) {
      std::uint32_t u = T[(fam.n * e) % order];
      if (twist) u += T[(lt + e) % order];
      ++counts[u % p];
    }
  } else {
    for (std::uint64_t x = 1; x < Q; ++x) {
      const std::uint32_t u = L.absolute_trace(L.pow(x, fam.n)) + L.absolute_trace(L.mul(t.index, x));
      ++counts[u % p];
    }
  }
  return {-CycNum::from_power_counts(p, counts), m};
}

NormalizedTrace trace_hyp(const HypFamily& fam, unsigned s, const FFElem& t, std::uint64_t budget) {
  validate(fam);
  if (t.index == 0) throw ParameterError("trace_hyp: t must be non-zero");
  const LevelPtr Lq = hyp_base_level(fam, t.level->limits());
  const FieldLevel& L = *t.level;
  if (!L.contains(*Lq) || L.degree_over(*Lq) != s) {
    throw ParameterError("trace_hyp: point does not live in the degree-s extension of F_q");
  }
  if (!L.has_tables()) throw BudgetExceeded("trace_hyp: field too large for log tables");
  const std::uint64_t order = L.size() - 1;
  const unsigned a = fam.a(), b = fam.b();
  const unsigned free_vars = a + b - 1;
  if (checked_pow(order, free_vars, budget) > budget) {
    throw BudgetExceeded("trace_hyp: " + std::to_string(order) + "^" + std::to_string(free_vars) +
                         " summands exceed budget");
  }
  const std::uint32_t p = fam.p;
  const unsigned m = fam.m;
  const std::uint64_t c0 = m == 1 ? 0 : Lq->dlog(L.norm_to(*Lq, L.generator())) % m;
  const auto& T = L.trace_by_log();
  const std::uint64_t lt = L.dlog(t.index);

  std::vector<std::int64_t> counts(std::size_t{p} * m, 0);
  std::vector<std::uint64_t> idx(free_vars, 0);  // x_1..x_(a-1), then y_1..y_b
  while (true) {
    std::uint64_t ea = lt;
    std::uint64_t add = 0;
    std::uint64_t mult = 0;
    for (unsigned i = 0; i + 1 < a; ++i) {
      ea = (ea + order - idx[i]) % order;
      add += T[idx[i]];
      mult += (fam.chi[i] % m) * (idx[i] % m);
    }
    for (unsigned j = 0; j < b; ++j) {
      const std::uint64_t f = idx[a - 1 + j];
      ea = (ea + f) % order;
      add += p - T[f];
      mult += (m - fam.rho[j] % m) * (f % m);
    }
    add += T[ea];
    mult += (fam.chi[a - 1] % m) * (ea % m);
    ++counts[((add % p) * m + p * ((c0 * (mult % m)) % m)) % (std::size_t{p} * m)];

    unsigned pos = 0;
    while (pos < free_vars && ++idx[pos] == order) idx[pos++] = 0;
    if (pos == free_vars) break;
  }
  CycNum num = CycNum::from_power_counts(p * m, counts);
  if (free_vars % 2 == 1) num = -num;
  return {num, fam.f_deg * s * free_vars};
}

NormalizedTrace trace_table(const TableFamily& fam, unsigned m, std::uint64_t id) {
  return table_of(fam).at(m, id);
}

NormalizedTrace power_trace(const SheafFamily& fam, unsigned m, std::uint64_t id, unsigned k, const Limits& limits,
                            std::uint64_t budget) {
  if (const auto* tf = std::get_if<TableFamily>(&fam)) return trace_table(*tf, m * k, id);
  const LevelPtr Lm = point_level(fam, m, limits);
  if (id >= Lm->size()) throw ParameterError("power_trace: point id out of range");
  const FFElem t = finitefield::embed(FFElem{Lm, id}, power_level(fam, m, k, limits));
  if (const auto* as = std::get_if<ASFamily>(&fam)) return trace_as(*as, t.level->absolute_degree(), t, budget);
  return trace_hyp(std::get<HypFamily>(fam), m * k, t, budget);
}

std::uint64_t gauss_prime(const SheafFamily& fam) {
  if (const auto* as = std::get_if<ASFamily>(&fam)) return as->p;
  if (const auto* hyp = std::get_if<HypFamily>(&fam)) return hyp->p;
  return table_of(std::get<TableFamily>(fam)).gauss_p;
}

CycNum gauss_power(std::uint64_t p, unsigned k, unsigned conductor) {
  // G^2 = (-1)^((p-1)/2) p
  const long sign = (p % 4 == 1) ? 1 : -1;
  BigInt half;
  mpz_ui_pow_ui(half.get_mpz_t(), p, k / 2);
  if (sign < 0 && (k / 2) % 2 == 1) half = -half;
  if (k % 2 == 0) return CycNum::from_rational(conductor, BigRat(half));
  const unsigned c = static_cast<unsigned>(arith::lcm(conductor, p));
  return cyclotomic::quadratic_gauss_sum(p).lift(c) * BigRat(half);
}

CycNum value(const NormalizedTrace& tr, std::uint64_t p) {
  if (tr.gauss_exponent == 0) return tr.numerator;
  const CycNum g = gauss_power(p, tr.gauss_exponent, tr.numerator.conductor());
  return tr.numerator.lift(g.conductor()) / g;
}

CycNum quadratic_sum(std::uint32_t p, unsigned m) {
  if (p == 2 || !arith::is_prime(p)) throw ParameterError("quadratic_sum: p must be an odd prime");
  const LevelPtr L = point_level(ASFamily{p, 2}, m);
  std::vector<std::int64_t> counts(p, 0);
  counts[0] += 1;
  const std::uint64_t order = L->size() - 1;
  if (L->has_tables()) {
    const auto& T = L->trace_by_log();
    for (std::uint64_t e = 0; e < order; ++e) ++counts[T[(2 * e) % order]];
  } else {
    for (std::uint64_t x = 1; x <= order; ++x) ++counts[L->absolute_trace(L->mul(x, x))];
  }
  return CycNum::from_power_counts(p, counts);
}

}  // namespace sheaftrace
}  // namespace finmono
