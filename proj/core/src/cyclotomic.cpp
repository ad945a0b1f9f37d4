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
#include "finmono/cyclotomic.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <string>

#include <mpfr.h>

#include "finmono/errors.hpp"

namespace finmono {

namespace detail {

struct CycContext {
  unsigned conductor;
  unsigned phi;
  std::vector<long long> modulus;              // Phi_c, lowest first, monic
  std::vector<std::vector<long long>> powers;  // powers[k] = x^k mod Phi_c, k < c

  explicit CycContext(unsigned c) : conductor(c) {
    modulus = arith::cyclotomic_poly(c);
    phi = static_cast<unsigned>(modulus.size() - 1);
    powers.assign(c, std::vector<long long>(phi, 0));
    powers[0][0] = 1;
    for (unsigned k = 1; k < c; ++k) {
      std::vector<long long> next(phi, 0);
      const std::vector<long long>& prev = powers[k - 1];
      const long long top = prev[phi - 1];
      for (unsigned i = phi - 1; i > 0; --i) next[i] = prev[i - 1];
      next[0] = 0;
      if (top != 0) {
        for (unsigned i = 0; i < phi; ++i) next[i] -= top * modulus[i];
      }
      powers[k] = std::move(next);
    }
  }

  // Reduce a coefficient vector of arbitrary length (exponent k stands for x^k).
  std::vector<BigRat> reduce(const std::vector<BigRat>& raw) const {
    std::vector<BigRat> out(phi);
    for (std::size_t k = 0; k < raw.size(); ++k) {
      if (sgn(raw[k]) == 0) continue;
      if (k < phi) {
        out[k] += raw[k];
        continue;
      }
      const auto& row = powers[k % conductor];
      for (unsigned i = 0; i < phi; ++i) {
        if (row[i] != 0) out[i] += raw[k] * BigRat(static_cast<long>(row[i]));
      }
    }
    return out;
  }
};

}  // namespace detail

namespace {

std::shared_ptr<const detail::CycContext> context_for(unsigned c) {
  if (c == 0) throw ParameterError("cyclotomic conductor must be positive");
  static std::mutex mutex;
  static std::map<unsigned, std::shared_ptr<const detail::CycContext>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(c);
  if (it != cache.end()) return it->second;
  auto ctx = std::make_shared<const detail::CycContext>(c);
  cache.emplace(c, ctx);
  return ctx;
}

long mod_positive(long a, long m) {
  long r = a % m;
  return r < 0 ? r + m : r;
}

}  // namespace

CycNum::CycNum(unsigned conductor) : ctx_(context_for(conductor)), coords_(ctx_->phi) {}

CycNum::CycNum(std::shared_ptr<const detail::CycContext> ctx, std::vector<BigRat> coords)
    : ctx_(std::move(ctx)), coords_(std::move(coords)) {}

CycNum CycNum::from_rational(unsigned conductor, const BigRat& value) {
  CycNum out(conductor);
  out.coords_[0] = value;
  return out;
}

CycNum CycNum::zeta_power(unsigned conductor, long exponent) {
  CycNum out(conductor);
  const auto& row = out.ctx_->powers[static_cast<std::size_t>(mod_positive(exponent, conductor))];
  for (unsigned i = 0; i < out.ctx_->phi; ++i) out.coords_[i] = static_cast<long>(row[i]);
  return out;
}

CycNum CycNum::from_coords(unsigned conductor, std::vector<BigRat> coords) {
  auto ctx = context_for(conductor);
  if (coords.size() != ctx->phi) {
    throw ParameterError("CycNum: conductor " + std::to_string(conductor) + " needs " +
                         std::to_string(ctx->phi) + " coordinates, got " + std::to_string(coords.size()));
  }
  for (auto& c : coords) c.canonicalize();
  return CycNum(std::move(ctx), std::move(coords));
}

CycNum CycNum::from_power_counts(unsigned conductor, std::span<const std::int64_t> counts) {
  auto ctx = context_for(conductor);
  std::vector<BigInt> acc(ctx->phi);
  for (std::size_t k = 0; k < counts.size(); ++k) {
    if (counts[k] == 0) continue;
    const auto& row = ctx->powers[k % conductor];
    for (unsigned i = 0; i < ctx->phi; ++i) {
      if (row[i] != 0) acc[i] += BigInt(static_cast<long>(counts[k])) * static_cast<long>(row[i]);
    }
  }
  std::vector<BigRat> coords(ctx->phi);
  for (unsigned i = 0; i < ctx->phi; ++i) coords[i] = BigRat(acc[i]);
  return CycNum(std::move(ctx), std::move(coords));
}

unsigned CycNum::conductor() const noexcept { return ctx_->conductor; }

bool CycNum::is_zero() const {
  return std::all_of(coords_.begin(), coords_.end(), [](const BigRat& c) { return sgn(c) == 0; });
}

bool CycNum::is_rational() const {
  return std::all_of(coords_.begin() + 1, coords_.end(), [](const BigRat& c) { return sgn(c) == 0; });
}

void CycNum::require_same_field(const CycNum& rhs, const char* op) const {
  if (ctx_->conductor != rhs.ctx_->conductor) {
    throw ParameterError(std::string("CycNum ") + op + ": conductor mismatch (" +
                         std::to_string(ctx_->conductor) + " vs " + std::to_string(rhs.ctx_->conductor) +
                         "); lift explicitly first");
  }
}

CycNum CycNum::lift(unsigned new_conductor) const {
  if (new_conductor == 0 || new_conductor % ctx_->conductor != 0) {
    throw ParameterError("CycNum::lift: " + std::to_string(ctx_->conductor) + " does not divide " +
                         std::to_string(new_conductor));
  }
  if (new_conductor == ctx_->conductor) return *this;
  auto target = context_for(new_conductor);
  const unsigned step = new_conductor / ctx_->conductor;
  std::vector<BigRat> raw(static_cast<std::size_t>(ctx_->phi - 1) * step + 1);
  for (unsigned i = 0; i < ctx_->phi; ++i) raw[static_cast<std::size_t>(i) * step] = coords_[i];
  auto coords = target->reduce(raw);
  return CycNum(std::move(target), std::move(coords));
}

CycNum CycNum::galois(long j) const {
  const long c = ctx_->conductor;
  if (arith::gcd(static_cast<std::uint64_t>(mod_positive(j, c)), static_cast<std::uint64_t>(c)) != 1 && c > 1) {
    throw ParameterError("CycNum::galois: exponent not coprime to conductor");
  }
  std::vector<BigRat> raw(static_cast<std::size_t>(c));
  for (unsigned i = 0; i < ctx_->phi; ++i) {
    raw[static_cast<std::size_t>(mod_positive(static_cast<long>(i) * j, c))] += coords_[i];
  }
  return CycNum(ctx_, ctx_->reduce(raw));
}

CycNum CycNum::operator-() const {
  CycNum out = *this;
  for (auto& c : out.coords_) c = -c;
  return out;
}

CycNum& CycNum::operator+=(const CycNum& rhs) {
  require_same_field(rhs, "add");
  for (unsigned i = 0; i < ctx_->phi; ++i) coords_[i] += rhs.coords_[i];
  return *this;
}

CycNum& CycNum::operator-=(const CycNum& rhs) {
  require_same_field(rhs, "sub");
  for (unsigned i = 0; i < ctx_->phi; ++i) coords_[i] -= rhs.coords_[i];
  return *this;
}

CycNum& CycNum::operator*=(const CycNum& rhs) {
  require_same_field(rhs, "mul");
  const unsigned n = ctx_->phi;
  std::vector<BigRat> raw(2 * n - 1);
  for (unsigned i = 0; i < n; ++i) {
    if (sgn(coords_[i]) == 0) continue;
    for (unsigned j = 0; j < n; ++j) {
      if (sgn(rhs.coords_[j]) != 0) raw[i + j] += coords_[i] * rhs.coords_[j];
    }
  }
  coords_ = ctx_->reduce(raw);
  return *this;
}

CycNum& CycNum::operator*=(const BigRat& rhs) {
  for (auto& c : coords_) c *= rhs;
  return *this;
}

BigRat CycNum::norm() const {
  CycNum acc = *this;
  const unsigned c = ctx_->conductor;
  for (unsigned j = 2; j < c; ++j) {
    if (arith::gcd(j, c) == 1) acc *= galois(j);
  }
  return acc.coords_[0];
}

CycNum CycNum::inverse() const {
  if (is_zero()) throw DivisionByZero("CycNum: division by zero");
  // a^-1 = (product of the non-trivial conjugates) / N(a)
  CycNum conj = CycNum::from_rational(ctx_->conductor, 1);
  const unsigned c = ctx_->conductor;
  for (unsigned j = 2; j < c; ++j) {
    if (arith::gcd(j, c) == 1) conj *= galois(j);
  }
  const BigRat n = (conj * *this).coords_[0];
  conj *= BigRat(1) / n;
  return conj;
}

CycNum& CycNum::operator/=(const CycNum& rhs) {
  require_same_field(rhs, "div");
  return *this *= rhs.inverse();
}

CycNum CycNum::pow(unsigned long e) const {
  CycNum result = CycNum::from_rational(ctx_->conductor, 1);
  CycNum base = *this;
  while (e > 0) {
    if (e & 1UL) result *= base;
    e >>= 1;
    if (e > 0) base *= base;
  }
  return result;
}

bool operator==(const CycNum& a, const CycNum& b) {
  if (a.conductor() != b.conductor()) {
    auto [x, y] = common_lift(a, b);
    return x.coords_ == y.coords_;
  }
  return a.coords_ == b.coords_;
}

std::pair<CycNum, CycNum> common_lift(const CycNum& a, const CycNum& b) {
  const auto c = static_cast<unsigned>(arith::lcm(a.conductor(), b.conductor()));
  return {a.lift(c), b.lift(c)};
}

// ---------------------------------------------------------------------------
// CycPoly

CycPoly::CycPoly(unsigned conductor, std::vector<CycNum> coeffs) : conductor_(conductor), coeffs_(std::move(coeffs)) {
  for (const auto& c : coeffs_) {
    if (c.conductor() != conductor_) throw ParameterError("CycPoly: coefficient conductor mismatch");
  }
  trim();
}

CycPoly CycPoly::monomial(unsigned conductor, unsigned degree, const CycNum& coeff) {
  std::vector<CycNum> coeffs(degree + 1, CycNum(conductor));
  coeffs[degree] = coeff;
  return CycPoly(conductor, std::move(coeffs));
}

CycPoly CycPoly::constant(const CycNum& c) { return CycPoly(c.conductor(), {c}); }

CycPoly CycPoly::from_roots(unsigned conductor, std::span<const CycNum> roots) {
  CycPoly out = constant(CycNum::from_rational(conductor, 1));
  for (const auto& r : roots) {
    out = out * CycPoly(conductor, {-r, CycNum::from_rational(conductor, 1)});
  }
  return out;
}

void CycPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

const CycNum& CycPoly::leading() const {
  if (coeffs_.empty()) throw ParameterError("CycPoly: zero polynomial has no leading coefficient");
  return coeffs_.back();
}

bool CycPoly::is_monic() const {
  return !coeffs_.empty() && coeffs_.back() == CycNum::from_rational(conductor_, 1);
}

CycPoly CycPoly::monic() const {
  if (coeffs_.empty()) return *this;
  const CycNum inv = coeffs_.back().inverse();
  CycPoly out = *this;
  for (auto& c : out.coeffs_) c *= inv;
  return out;
}

CycPoly CycPoly::derivative() const {
  if (coeffs_.size() <= 1) return CycPoly(conductor_);
  std::vector<CycNum> out;
  out.reserve(coeffs_.size() - 1);
  for (std::size_t i = 1; i < coeffs_.size(); ++i) out.push_back(coeffs_[i] * BigRat(static_cast<long>(i)));
  return CycPoly(conductor_, std::move(out));
}

CycPoly& CycPoly::operator+=(const CycPoly& rhs) {
  if (rhs.conductor_ != conductor_) throw ParameterError("CycPoly add: conductor mismatch");
  if (coeffs_.size() < rhs.coeffs_.size()) coeffs_.resize(rhs.coeffs_.size(), CycNum(conductor_));
  for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i] += rhs.coeffs_[i];
  trim();
  return *this;
}

CycPoly& CycPoly::operator-=(const CycPoly& rhs) {
  if (rhs.conductor_ != conductor_) throw ParameterError("CycPoly sub: conductor mismatch");
  if (coeffs_.size() < rhs.coeffs_.size()) coeffs_.resize(rhs.coeffs_.size(), CycNum(conductor_));
  for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i] -= rhs.coeffs_[i];
  trim();
  return *this;
}

CycPoly operator*(const CycPoly& a, const CycPoly& b) {
  if (a.conductor_ != b.conductor_) throw ParameterError("CycPoly mul: conductor mismatch");
  if (a.is_zero() || b.is_zero()) return CycPoly(a.conductor_);
  std::vector<CycNum> out(a.coeffs_.size() + b.coeffs_.size() - 1, CycNum(a.conductor_));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return CycPoly(a.conductor_, std::move(out));
}

std::pair<CycPoly, CycPoly> CycPoly::divmod(const CycPoly& divisor) const {
  if (divisor.conductor_ != conductor_) throw ParameterError("CycPoly divmod: conductor mismatch");
  if (divisor.is_zero()) throw DivisionByZero("CycPoly: division by the zero polynomial");
  CycPoly rem = *this;
  if (rem.degree() < divisor.degree()) return {CycPoly(conductor_), rem};
  const CycNum lead_inv = divisor.leading().inverse();
  const auto dd = static_cast<std::size_t>(divisor.degree());
  std::vector<CycNum> quot(static_cast<std::size_t>(rem.degree()) - dd + 1, CycNum(conductor_));
  for (std::size_t i = rem.coeffs_.size(); i-- > dd;) {
    if (rem.coeffs_[i].is_zero()) continue;
    const CycNum factor = rem.coeffs_[i] * lead_inv;
    quot[i - dd] = factor;
    for (std::size_t j = 0; j <= dd; ++j) rem.coeffs_[i - dd + j] -= factor * divisor.coeffs_[j];
  }
  rem.trim();
  return {CycPoly(conductor_, std::move(quot)), rem};
}

namespace cyclotomic {

bool p_integral_everywhere(const CycNum& a, std::uint64_t p) {
  for (const auto& c : a.coords()) {
    if (mpz_divisible_ui_p(c.get_den_mpz_t(), p)) return false;
  }
  return true;
}

CycNum quadratic_gauss_sum(std::uint64_t p) {
  if (p == 2) throw ParameterError("quadratic Gauss sum normalisation is unsupported for p = 2");
  if (!arith::is_prime(p)) throw ParameterError("quadratic_gauss_sum: p must be an odd prime");
  std::vector<std::int64_t> counts(p, 0);
  for (std::uint64_t x = 0; x < p; ++x) counts[(x * x) % p] -= 1;
  return CycNum::from_power_counts(static_cast<unsigned>(p), counts);
}

bool check_valuation_ge(const CycNum& a, std::uint64_t p, unsigned half_units) {
  if (half_units % 2 == 0) {
    BigInt scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), p, half_units / 2);
    return p_integral_everywhere(a * BigRat(BigInt(1), scale), p);
  }
  if (a.conductor() % p != 0) {
    throw ParameterError("check_valuation_ge: odd threshold needs p | conductor (lift first)");
  }
  const CycNum g = quadratic_gauss_sum(p).lift(a.conductor());
  BigInt scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), p, (half_units + 1) / 2);
  return p_integral_everywhere(a * g * BigRat(BigInt(1), scale), p);
}

CycPoly poly_gcd(const CycPoly& f, const CycPoly& g) {
  if (f.is_zero() && g.is_zero()) throw ParameterError("poly_gcd: gcd(0, 0) is undefined");
  CycPoly a = f.monic();
  CycPoly b = g.monic();
  while (!b.is_zero()) {
    CycPoly r = a.divmod(b).second.monic();
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

CycPoly squarefree_part(const CycPoly& f) {
  if (f.is_zero()) throw ParameterError("squarefree_part of the zero polynomial");
  if (f.degree() == 0) return f.monic();
  const CycPoly g = poly_gcd(f, f.derivative());
  return f.divmod(g).first.monic();
}

CycPoly x_pow_mod(unsigned long e, const CycPoly& modulus) {
  const unsigned c = modulus.conductor();
  CycPoly result = CycPoly::constant(CycNum::from_rational(c, 1)).divmod(modulus).second;
  CycPoly base = CycPoly::monomial(c, 1, CycNum::from_rational(c, 1)).divmod(modulus).second;
  while (e > 0) {
    if (e & 1UL) result = (result * base).divmod(modulus).second;
    e >>= 1;
    if (e > 0) base = (base * base).divmod(modulus).second;
  }
  return result;
}

bool divides_unity_pow(const CycPoly& f, std::uint64_t order) {
  if (order == 0) throw ParameterError("divides_unity_pow: order must be positive");
  const CycPoly g = squarefree_part(f);
  if (g.degree() <= 0) return true;
  const CycPoly r = x_pow_mod(order, g);
  return r == CycPoly::constant(CycNum::from_rational(f.conductor(), 1));
}

namespace {

// Minimal RAII holder for an MPFR value.
class Real {
 public:
  explicit Real(mpfr_prec_t prec) { mpfr_init2(v_, prec); mpfr_set_zero(v_, 1); }
  ~Real() { mpfr_clear(v_); }
  Real(const Real&) = delete;
  Real& operator=(const Real&) = delete;
  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }

 private:
  mpfr_t v_;
};

}  // namespace

std::vector<Embedding> complex_embeddings(const CycNum& a, unsigned digits) {
  if (digits == 0 || digits > 15) throw ParameterError("complex_embeddings: digits must be in [1, 15]");
  const unsigned c = a.conductor();
  // Working precision: requested digits, headroom for coefficient size and summation.
  std::size_t coeff_bits = 0;
  for (const auto& x : a.coords()) {
    coeff_bits = std::max(coeff_bits, mpz_sizeinbase(x.get_num_mpz_t(), 2));
  }
  const auto prec = static_cast<mpfr_prec_t>(digits * 4 + coeff_bits + 64 + 2 * a.degree());

  Real pi2(prec), angle(prec), cs(prec), sn(prec), coef(prec), re(prec), im(prec), term(prec);
  mpfr_const_pi(pi2.get(), MPFR_RNDN);
  mpfr_mul_ui(pi2.get(), pi2.get(), 2, MPFR_RNDN);

  const double tolerance = std::pow(10.0, -static_cast<double>(digits));
  std::vector<Embedding> out;
  for (unsigned j = 1; j <= c; ++j) {
    if (arith::gcd(j, c) != 1) continue;
    mpfr_set_zero(re.get(), 1);
    mpfr_set_zero(im.get(), 1);
    for (unsigned i = 0; i < a.degree(); ++i) {
      const BigRat& x = a.coords()[i];
      if (sgn(x) == 0) continue;
      const unsigned long k = (static_cast<unsigned long>(i) * j) % c;
      mpfr_mul_ui(angle.get(), pi2.get(), k, MPFR_RNDN);
      mpfr_div_ui(angle.get(), angle.get(), c, MPFR_RNDN);
      mpfr_sin_cos(sn.get(), cs.get(), angle.get(), MPFR_RNDN);
      mpfr_set_q(coef.get(), x.get_mpq_t(), MPFR_RNDN);
      mpfr_mul(term.get(), coef.get(), cs.get(), MPFR_RNDN);
      mpfr_add(re.get(), re.get(), term.get(), MPFR_RNDN);
      mpfr_mul(term.get(), coef.get(), sn.get(), MPFR_RNDN);
      mpfr_add(im.get(), im.get(), term.get(), MPFR_RNDN);
    }
    const double r = mpfr_get_d(re.get(), MPFR_RNDN);
    const double i = mpfr_get_d(im.get(), MPFR_RNDN);
    // Rounding to double costs at most half an ulp per component.
    const double ulp_err = (std::abs(r) + std::abs(i)) * 0x1p-53;
    if (!(ulp_err < 0.5 * tolerance)) {
      throw ParameterError("complex_embeddings: magnitude too large for the requested digits");
    }
    out.push_back({j % c == 0 ? 0u : j, {r, i}});
  }
  return out;
}

}  // namespace cyclotomic
}  // namespace finmono
