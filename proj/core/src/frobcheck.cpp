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
#include "finmono/frobcheck.hpp"

#include <algorithm>
#include <random>

#include "finmono/bounds.hpp"
#include "finmono/errors.hpp"

namespace finmono {

EisensteinNum::EisensteinNum(std::uint64_t p, unsigned e) : p_(p), coords_(e) {
  if (e == 0) throw ParameterError("EisensteinNum: e must be >= 1");
}

EisensteinNum EisensteinNum::rational(std::uint64_t p, unsigned e, const BigRat& r) {
  EisensteinNum out(p, e);
  out.coords_[0] = r;
  return out;
}

EisensteinNum EisensteinNum::from_coords(std::uint64_t p, std::vector<BigRat> coords) {
  EisensteinNum out(p, static_cast<unsigned>(coords.size()));
  out.coords_ = std::move(coords);
  return out;
}

bool EisensteinNum::is_zero() const {
  return std::all_of(coords_.begin(), coords_.end(), [](const BigRat& c) { return sgn(c) == 0; });
}

BigRat EisensteinNum::valuation() const {
  std::optional<BigRat> best;
  for (unsigned j = 0; j < e(); ++j) {
    if (sgn(coords_[j]) == 0) continue;
    const long v = long(arith::valuation(coords_[j].get_num(), p_)) - long(arith::valuation(coords_[j].get_den(), p_));
    BigRat val = BigRat(v) + BigRat(j, e());
    val.canonicalize();
    if (!best || val < *best) best = val;
  }
  if (!best) throw ParameterError("valuation of zero");
  return *best;
}

bool EisensteinNum::is_integral() const {
  return std::all_of(coords_.begin(), coords_.end(),
                     [this](const BigRat& c) { return c.get_den() % BigInt(p_) != 0; });
}

std::string EisensteinNum::to_string() const {
  std::string out;
  for (unsigned j = 0; j < e(); ++j) {
    if (sgn(coords_[j]) == 0) continue;
    if (!out.empty()) out += " + ";
    out += arith::to_fraction_string(coords_[j]);
    if (j == 1) out += "*pi";
    if (j > 1) out += "*pi^" + std::to_string(j);
  }
  return out.empty() ? "0/1" : out;
}

EisensteinNum& EisensteinNum::operator+=(const EisensteinNum& rhs) {
  for (unsigned j = 0; j < e(); ++j) coords_[j] += rhs.coords_[j];
  return *this;
}

EisensteinNum& EisensteinNum::operator-=(const EisensteinNum& rhs) {
  for (unsigned j = 0; j < e(); ++j) coords_[j] -= rhs.coords_[j];
  return *this;
}

EisensteinNum EisensteinNum::operator-() const {
  EisensteinNum out = *this;
  for (auto& c : out.coords_) c = -c;
  return out;
}

EisensteinNum operator*(const EisensteinNum& a, const EisensteinNum& b) {
  const unsigned e = a.e();
  EisensteinNum out(a.p_, e);
  for (unsigned i = 0; i < e; ++i) {
    if (sgn(a.coords_[i]) == 0) continue;
    for (unsigned j = 0; j < e; ++j) {
      BigRat t = a.coords_[i] * b.coords_[j];
      if (i + j >= e) t *= BigRat(BigInt(a.p_));  // pi^e = p
      out.coords_[(i + j) % e] += t;
    }
  }
  return out;
}

EisensteinNum EisensteinNum::pow(unsigned k) const {
  EisensteinNum out = rational(p_, e(), 1);
  EisensteinNum base = *this;
  while (k > 0) {
    if (k & 1U) out = out * base;
    k >>= 1;
    if (k > 0) base = base * base;
  }
  return out;
}

namespace frobcheck {

CycPoly newton_char_poly(std::span<const CycNum> power_sums) {
  const unsigned r = static_cast<unsigned>(power_sums.size());
  unsigned c = 1;
  for (const auto& s : power_sums) c = static_cast<unsigned>(arith::lcm(c, s.conductor()));
  std::vector<CycNum> ps;
  for (const auto& s : power_sums) ps.push_back(s.conductor() == c ? s : s.lift(c));

  // k e_k = sum_{i=1}^k (-1)^(i-1) e_(k-i) p_i
  std::vector<CycNum> e{CycNum::from_rational(c, 1)};
  for (unsigned k = 1; k <= r; ++k) {
    CycNum acc(c);
    for (unsigned i = 1; i <= k; ++i) {
      const CycNum term = e[k - i] * ps[i - 1];
      if (i % 2 == 1) {
        acc += term;
      } else {
        acc -= term;
      }
    }
    e.push_back(acc * BigRat(1, k));
  }
  std::vector<CycNum> coeffs(r + 1, CycNum(c));
  for (unsigned k = 0; k <= r; ++k) coeffs[r - k] = (k % 2 == 0) ? e[k] : -e[k];
  return CycPoly(c, std::move(coeffs));
}

bool check_eigen_unity(const CycPoly& f, std::uint64_t M, std::uint64_t p) {
  if (f.is_zero() || !f.is_monic()) return false;
  for (const auto& c : f.coeffs()) {
    if (!cyclotomic::p_integral_everywhere(c, p)) return false;
  }
  return cyclotomic::divides_unity_pow(f, M);
}

bool check_trace_integral(const NormalizedTrace& tr, std::uint64_t p) {
  for (const auto& c : tr.numerator.coords()) {
    BigInt den = c.get_den();
    while (den % BigInt(p) == 0) den /= BigInt(p);
    if (den != 1) return false;
  }
  const CycNum& num = tr.numerator;
  if (tr.gauss_exponent % 2 == 1 && num.conductor() % p != 0) {
    return cyclotomic::check_valuation_ge(num.lift(static_cast<unsigned>(arith::lcm(num.conductor(), p))), p,
                                         tr.gauss_exponent);
  }
  return cyclotomic::check_valuation_ge(num, p, tr.gauss_exponent);
}

FrobData frobenius_char_poly(const SheafFamily& fam, unsigned m, std::uint64_t point, const FrobOptions& opts) {
  const FamilyMetadata md = sheaftrace::family_metadata(fam);
  const std::uint64_t p = sheaftrace::gauss_prime(fam);
  FrobData out;
  out.m = m;
  out.point = point;
  out.trace_integral = true;
  for (unsigned k = 1; k <= md.rank; ++k) {
    out.power_sums.push_back(sheaftrace::power_trace(fam, m, point, k, opts.limits, opts.summand_budget));
    if (out.trace_integral && !check_trace_integral(out.power_sums.back(), p)) {
      out.trace_integral = false;
      out.failure = "Gauss normalization of Phi(" + std::to_string(m * k) + ", t) is not integral above p";
    }
  }
  if (!out.trace_integral) return out;

  std::vector<CycNum> values;
  for (const auto& tr : out.power_sums) values.push_back(sheaftrace::value(tr, p));
  out.char_poly = newton_char_poly(values);

  std::uint64_t M = 0;
  if (opts.M) {
    M = *opts.M;
  } else {
    const BigInt big = bounds::m_lcm(md.cond_E, md.rank);
    if (!big.fits_ulong_p()) throw BudgetExceeded("frobenius_char_poly: M does not fit 64 bits");
    M = big.get_ui();
  }
  out.eigen_unity = check_eigen_unity(out.char_poly, M, p);
  if (!out.eigen_unity) out.failure = "characteristic polynomial does not divide a power of x^" + std::to_string(M) + " - 1";
  return out;
}

std::vector<BigRat> newton_polygon_slopes(std::span<const std::optional<BigRat>> valuations) {
  std::vector<std::pair<long, BigRat>> pts;
  for (std::size_t i = 0; i < valuations.size(); ++i) {
    if (valuations[i]) pts.emplace_back(static_cast<long>(i), *valuations[i]);
  }
  std::vector<std::pair<long, BigRat>> hull;
  for (const auto& pt : pts) {
    while (hull.size() >= 2) {
      const auto& a = hull[hull.size() - 2];
      const auto& b = hull.back();
      // drop b when it lies on or above the segment a -> pt
      const BigRat lhs = (b.second - a.second) * BigRat(pt.first - a.first);
      const BigRat rhs = (pt.second - a.second) * BigRat(b.first - a.first);
      if (lhs >= rhs) {
        hull.pop_back();
      } else {
        break;
      }
    }
    hull.push_back(pt);
  }
  std::vector<BigRat> slopes;
  for (std::size_t i = 1; i < hull.size(); ++i) {
    const long len = hull[i].first - hull[i - 1].first;
    BigRat s = (hull[i].second - hull[i - 1].second) / BigRat(len);
    s.canonicalize();
    for (long j = 0; j < len; ++j) slopes.push_back(s);
  }
  return slopes;
}

namespace {

class Sampler {
 public:
  Sampler(std::uint64_t p, unsigned e, std::uint64_t seed) : p_(p), e_(e), rng_(seed) {}

  // Random element with coordinates a / p^d, a in [-p^2, p^2], d mostly 0.
  EisensteinNum element(unsigned max_den_power) {
    std::vector<BigRat> coords(e_);
    const long span = static_cast<long>(p_ * p_);
    std::uniform_int_distribution<long> num(-span, span);
    std::uniform_int_distribution<unsigned> den(0, max_den_power);
    for (auto& c : coords) {
      BigInt d;
      mpz_ui_pow_ui(d.get_mpz_t(), p_, den(rng_));
      c = BigRat(num(rng_), 1) / BigRat(d);
      c.canonicalize();
    }
    if (std::all_of(coords.begin(), coords.end(), [](const BigRat& c) { return sgn(c) == 0; })) coords[0] = 1;
    return EisensteinNum::from_coords(p_, std::move(coords));
  }

  std::vector<EisensteinNum> sample(unsigned r, unsigned kind) {
    std::vector<EisensteinNum> out;
    switch (kind % 4) {
      case 0:
        for (unsigned i = 0; i < r; ++i) out.push_back(element(coin() ? 1 : 0));
        break;
      case 1: {
        // cancelling pairs make the low power sums integral
        while (out.size() + 2 <= r) {
          const EisensteinNum b = element(1);
          out.push_back(b);
          out.push_back(-b);
        }
        while (out.size() < r) out.push_back(element(0));
        break;
      }
      case 2:
        for (unsigned i = 0; i < r; ++i) out.push_back(element(0));
        break;
      default: {
        const EisensteinNum g = element(0);
        while (out.size() + 2 <= r) {
          const EisensteinNum b = element(2);
          out.push_back(g + b);
          out.push_back(g - b);
        }
        while (out.size() < r) out.push_back(element(1));
        break;
      }
    }
    return out;
  }

 private:
  bool coin() { return std::uniform_int_distribution<int>(0, 1)(rng_) == 1; }

  std::uint64_t p_;
  unsigned e_;
  std::mt19937_64 rng_;
};

// Number of leading power sums (up to limit) that are integral.
unsigned integral_prefix(const std::vector<EisensteinNum>& alphas, unsigned limit) {
  std::vector<EisensteinNum> powers = alphas;
  for (unsigned k = 1; k <= limit; ++k) {
    EisensteinNum s(alphas[0].p(), alphas[0].e());
    for (std::size_t i = 0; i < alphas.size(); ++i) {
      if (k > 1) powers[i] = powers[i] * alphas[i];
      s += powers[i];
    }
    if (!s.is_integral()) return k - 1;
  }
  return limit;
}

bool newton_polygon_matches(const std::vector<EisensteinNum>& alphas) {
  for (const auto& a : alphas) {
    if (a.is_zero()) return true;
  }
  const std::uint64_t p = alphas[0].p();
  const unsigned e = alphas[0].e();
  // coefficients of prod (1 - alpha_i T)
  std::vector<EisensteinNum> c{EisensteinNum::rational(p, e, 1)};
  for (const auto& a : alphas) {
    std::vector<EisensteinNum> next(c.size() + 1, EisensteinNum(p, e));
    for (std::size_t i = 0; i < c.size(); ++i) {
      next[i] += c[i];
      next[i + 1] -= c[i] * a;
    }
    c = std::move(next);
  }
  std::vector<std::optional<BigRat>> vals;
  for (const auto& x : c) vals.push_back(x.is_zero() ? std::nullopt : std::optional<BigRat>(x.valuation()));
  std::vector<BigRat> expected;
  for (const auto& a : alphas) expected.push_back(a.valuation());
  std::sort(expected.begin(), expected.end());
  return newton_polygon_slopes(vals) == expected;
}

}  // namespace

OracleReport power_sum_integrality_oracle(unsigned r, unsigned e_ram, std::uint64_t p, unsigned trials,
                                          std::uint64_t seed, std::optional<unsigned> checked_sums) {
  if (r == 0 || r > 8) throw ParameterError("power-sum oracle: r must be in [1, 8]");
  OracleReport rep;
  rep.r = r;
  rep.e_ram = e_ram;
  rep.p = p;
  rep.trials = trials;
  rep.N = bounds::n_power_sums(r, e_ram, p);
  const unsigned N = checked_sums.value_or(static_cast<unsigned>(rep.N.get_ui()));

  Sampler sampler(p, e_ram, seed);
  for (unsigned t = 0; t < trials; ++t) {
    const auto alphas = sampler.sample(r, t);
    const bool nonintegral = std::any_of(alphas.begin(), alphas.end(), [](const auto& a) { return !a.is_integral(); });
    const bool premise = integral_prefix(alphas, N) == N;
    if (premise) ++rep.premise_held;
    if (nonintegral) {
      ++rep.nonintegral;
      if (premise) {
        ++rep.counterexamples;
      } else {
        ++rep.caught;
      }
    }
    if (!newton_polygon_matches(alphas)) rep.newton_polygon_consistent = false;
  }

  const unsigned full = static_cast<unsigned>(rep.N.get_ui());
  if (full >= 2 && r >= 2) {
    std::vector<std::vector<EisensteinNum>> candidates;
    std::vector<EisensteinNum> simple(r, EisensteinNum(p, e_ram));
    simple[0] = EisensteinNum::rational(p, e_ram, BigRat(1, p));
    simple[1] = EisensteinNum::rational(p, e_ram, BigRat(-1, p));
    candidates.push_back(simple);
    Sampler search(p, e_ram, seed ^ 0x5eedULL);
    for (unsigned t = 0; t < 2000; ++t) candidates.push_back(search.sample(r, 2 * (t % 2) + 1));

    unsigned best = 0;
    const std::vector<EisensteinNum>* best_set = nullptr;
    for (const auto& cand : candidates) {
      if (std::all_of(cand.begin(), cand.end(), [](const auto& a) { return a.is_integral(); })) continue;
      const unsigned k = integral_prefix(cand, full - 1);
      if (k > best) {
        best = k;
        best_set = &cand;
        if (k == full - 1) break;
      }
    }
    if (best_set != nullptr) {
      rep.witness_k = best;
      rep.witness.emplace();
      for (const auto& a : *best_set) rep.witness->push_back(a.to_string());
    }
  }
  return rep;
}

}  // namespace frobcheck
}  // namespace finmono
