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
#include "finmono_cli/suites.hpp"

#include <functional>
#include <stdexcept>
#include <tuple>

#include "finmono/bounds.hpp"
#include "finmono/cyclotomic.hpp"
#include "finmono/frobcheck.hpp"
#include "finmono/sheaftrace.hpp"

namespace finmono::cli {

namespace {

bool faulty(const SuiteConfig& cfg, const char* suite) { return cfg.fault == suite || cfg.fault == "all"; }

std::vector<IdentityResult> suite_mlcm(const SuiteConfig& cfg) {
  std::vector<IdentityResult> out;
  const unsigned rmax = cfg.rmax.value_or(12);
  IdentityResult q{"mlcm", "m_closed_form_Q(r) = m_lcm(1, r)", true, "r = 1.." + std::to_string(rmax)};
  for (unsigned r = 1; r <= rmax && q.passed; ++r) {
    BigInt closed = bounds::m_closed_form_Q(r);
    if (faulty(cfg, "mlcm")) closed += 1;
    const BigInt lcm = bounds::m_lcm(1, r);
    if (closed != lcm) {
      q.passed = false;
      q.detail = "r = " + std::to_string(r) + ": closed form " + closed.get_str() + ", lcm " + lcm.get_str();
    }
  }
  out.push_back(q);

  IdentityResult as{"mlcm", "m_closed_form_artin_schreier(p, n) = m_lcm(p, n - 1)", true, "p in {2,3,5,7}, n = 2..8"};
  for (std::uint64_t p : {2, 3, 5, 7}) {
    for (unsigned n = 2; n <= 8 && as.passed; ++n) {
      const BigInt closed = bounds::m_closed_form_artin_schreier(p, n);
      const BigInt lcm = bounds::m_lcm(static_cast<unsigned>(p), n - 1);
      if (closed != lcm) {
        as.passed = false;
        as.detail = "p = " + std::to_string(p) + ", n = " + std::to_string(n) + ": " + closed.get_str() + " vs " +
                    lcm.get_str();
      }
    }
  }
  out.push_back(as);
  return out;
}

std::vector<IdentityResult> suite_adams(const SuiteConfig& cfg) {
  const unsigned rmax = cfg.rmax.value_or(8);
  IdentityResult res{"adams", "sum_i (-1)^i rank_i = r", true,
                     "r <= " + std::to_string(rmax) + ", M <= " + std::to_string(cfg.mmax)};
  for (unsigned r = 1; r <= rmax && res.passed; ++r) {
    for (unsigned M = 1; M <= cfg.mmax; ++M) {
      BigInt alt = 0;
      for (unsigned long i = 0; i < M; ++i) {
        const BigInt rank = bounds::adams_component_rank(r, BigInt(M), i);
        alt += (i % 2 == 0) ? rank : BigInt(-rank);
      }
      const BigInt expected = faulty(cfg, "adams") ? BigInt(r + 1) : BigInt(r);
      if (alt != expected) {
        res.passed = false;
        res.detail = "r = " + std::to_string(r) + ", M = " + std::to_string(M) + ": alternating sum " + alt.get_str();
        break;
      }
    }
  }
  return {res};
}

std::vector<IdentityResult> suite_lemma(const SuiteConfig& cfg) {
  std::vector<IdentityResult> out;
  const std::tuple<unsigned, unsigned, std::uint64_t> cases[] = {{2, 1, 3}, {2, 2, 3}, {3, 1, 2}, {4, 3, 2}};
  for (const auto& [r, e, p] : cases) {
    std::optional<unsigned> checked;
    if (faulty(cfg, "lemma")) checked = static_cast<unsigned>(bounds::n_power_sums(r, e, p).get_ui()) - 1;
    const auto rep = frobcheck::power_sum_integrality_oracle(r, e, p, cfg.trials, cfg.seed, checked);
    IdentityResult res{"lemma",
                       "first N power sums decide integrality (r=" + std::to_string(r) + ", e=" + std::to_string(e) +
                           ", p=" + std::to_string(p) + ")",
                       rep.passed(), ""};
    res.detail = "N = " + rep.N.get_str() + ", " + std::to_string(rep.trials) + " samples, " +
                 std::to_string(rep.caught) + " non-integral caught, " + std::to_string(rep.counterexamples) +
                 " counterexamples";
    if (!rep.newton_polygon_consistent) res.detail += ", Newton polygon mismatch";
    out.push_back(res);
    if (r == 2 && e == 1 && p == 3) {
      const std::vector<std::string> expected{"1/3", "-1/3"};
      const bool ok = rep.witness && *rep.witness == expected && rep.witness_k == 1;
      out.push_back({"lemma", "witness {1/3, -1/3}: k = 1 alone is not enough", ok,
                     ok ? "p_1 = 0, p_2 = 2/9" : "witness not reproduced"});
    }
  }
  return out;
}

std::vector<IdentityResult> suite_gauss(const SuiteConfig& cfg) {
  std::vector<IdentityResult> out;
  IdentityResult sq{"gauss", "G^2 = (-1)^((p-1)/2) p", true, "odd p <= 23"};
  for (std::uint64_t p : arith::primes_up_to(23)) {
    if (p == 2) continue;
    const CycNum G = cyclotomic::quadratic_gauss_sum(p);
    long sign = (p % 4 == 1) ? 1 : -1;
    if (faulty(cfg, "gauss")) sign = -sign;
    if (G * G != CycNum::from_rational(static_cast<unsigned>(p), BigRat(sign * static_cast<long>(p)))) {
      sq.passed = false;
      sq.detail = "p = " + std::to_string(p);
      break;
    }
  }
  out.push_back(sq);

  IdentityResult hd{"gauss", "Hasse-Davenport (-G_1)^m = -G_m", true, "p in {3,5}, m <= 5, brute force"};
  for (std::uint32_t p : {3U, 5U}) {
    const CycNum g1 = sheaftrace::quadratic_sum(p, 1);
    for (unsigned m = 1; m <= 5 && hd.passed; ++m) {
      const CycNum gm = sheaftrace::quadratic_sum(p, m);
      if ((-g1).pow(m) != -gm) {
        hd.passed = false;
        hd.detail = "p = " + std::to_string(p) + ", m = " + std::to_string(m);
      }
    }
  }
  out.push_back(hd);
  return out;
}

using SuiteFn = std::function<std::vector<IdentityResult>(const SuiteConfig&)>;

const std::vector<std::pair<std::string, SuiteFn>>& registry() {
  static const std::vector<std::pair<std::string, SuiteFn>> suites{
      {"mlcm", suite_mlcm}, {"adams", suite_adams}, {"lemma", suite_lemma}, {"gauss", suite_gauss}};
  return suites;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, fn] : registry()) out.push_back(name);
    return out;
  }();
  return names;
}

std::vector<IdentityResult> run_suites(const std::string& name, const SuiteConfig& cfg) {
  std::vector<IdentityResult> out;
  bool found = false;
  for (const auto& [suite, fn] : registry()) {
    if (name != "all" && name != suite) continue;
    found = true;
    for (auto& res : fn(cfg)) out.push_back(std::move(res));
  }
  if (!found) throw std::invalid_argument("unknown suite '" + name + "'");
  return out;
}

}  // namespace finmono::cli
