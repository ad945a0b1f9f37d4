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
#include "finmono/finitefield.hpp"

#include <limits>
#include <string>

#include "finmono/arith.hpp"

namespace finmono {

struct FieldLevel::Private {};

namespace {

constexpr std::uint32_t kNoLog = std::numeric_limits<std::uint32_t>::max();

// Polynomials over a level, lowest degree first, trimmed (zero poly is empty).
class PolyOps {
 public:
  using Poly = std::vector<std::uint64_t>;

  explicit PolyOps(const FieldLevel& f) : f_(f) {}

  static void trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
  }

  Poly mul(const Poly& a, const Poly& b) const {
    if (a.empty() || b.empty()) return {};
    Poly out(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i] == 0) continue;
      for (std::size_t j = 0; j < b.size(); ++j) {
        if (b[j] != 0) out[i + j] = f_.add(out[i + j], f_.mul(a[i], b[j]));
      }
    }
    trim(out);
    return out;
  }

  Poly rem(Poly a, const Poly& m) const {
    trim(a);
    const std::size_t dm = m.size() - 1;
    const std::uint64_t lead_inv = f_.inv(m.back());
    while (a.size() > dm) {
      const std::uint64_t c = f_.mul(a.back(), lead_inv);
      const std::size_t shift = a.size() - 1 - dm;
      for (std::size_t j = 0; j <= dm; ++j) a[shift + j] = f_.sub(a[shift + j], f_.mul(c, m[j]));
      trim(a);
    }
    return a;
  }

  Poly powmod(Poly base, std::uint64_t e, const Poly& m) const {
    Poly result{1};
    base = rem(std::move(base), m);
    while (e > 0) {
      if (e & 1U) result = rem(mul(result, base), m);
      e >>= 1;
      if (e > 0) base = rem(mul(base, base), m);
    }
    return result;
  }

  Poly sub(Poly a, const Poly& b) const {
    if (a.size() < b.size()) a.resize(b.size(), 0);
    for (std::size_t i = 0; i < b.size(); ++i) a[i] = f_.sub(a[i], b[i]);
    trim(a);
    return a;
  }

  Poly gcd(Poly a, Poly b) const {
    trim(a);
    trim(b);
    while (!b.empty()) {
      Poly r = rem(a, b);
      a = std::move(b);
      b = std::move(r);
    }
    return a;
  }

  // Rabin's test for a monic polynomial of degree k over the level.
  bool irreducible(const Poly& m) const {
    const std::size_t k = m.size() - 1;
    if (k <= 1) return true;
    const std::uint64_t q = f_.size();
    const Poly x{0, 1};
    std::vector<Poly> frob(k + 1);  // frob[i] = x^(q^i) mod m
    frob[0] = rem(x, m);
    for (std::size_t i = 1; i <= k; ++i) frob[i] = powmod(frob[i - 1], q, m);
    if (sub(frob[k], frob[0]).size() != 0) return false;
    for (auto [ell, e] : arith::factorize(k)) {
      (void)e;
      Poly g = gcd(m, sub(frob[k / ell], frob[0]));
      if (g.size() != 1) return false;
    }
    return true;
  }

 private:
  const FieldLevel& f_;
};

std::uint64_t checked_pow(std::uint64_t base, unsigned e) {
  std::uint64_t out = 1;
  for (unsigned i = 0; i < e; ++i) {
    if (out > (std::uint64_t{1} << 62) / base) throw BudgetExceeded("field level too large to index in 64 bits");
    out *= base;
  }
  return out;
}

}  // namespace

LevelPtr FieldLevel::prime_field(std::uint32_t p, const Limits& limits) {
  if (!arith::is_prime(p)) throw ParameterError("prime_field: " + std::to_string(p) + " is not prime");
  return std::make_shared<FieldLevel>(Private{}, p, nullptr, 1, std::vector<std::uint64_t>{0, 1}, limits);
}

FieldLevel::FieldLevel(const Private&, std::uint32_t p, LevelPtr base, unsigned k, std::vector<std::uint64_t> defining,
                       const Limits& limits)
    : p_(p),
      base_(std::move(base)),
      k_(k),
      d_(base_ ? base_->d_ * k : 1),
      base_size_(base_ ? base_->size_ : p),
      size_(base_ ? checked_pow(base_->size_, k) : p),
      defining_(std::move(defining)),
      limits_(limits) {
  basis_traces_.resize(d_);
  if (!base_) {
    basis_traces_[0] = 1;
  } else {
    // p^j encodes the j-th flattened basis vector; trace it by transitivity.
    std::uint64_t e = 1;
    for (unsigned j = 0; j < d_; ++j, e *= p_) {
      basis_traces_[j] = base_->absolute_trace(relative_trace_slow(e));
    }
  }
  if (size_ <= limits_.max_table_size && size_ <= (std::uint64_t{1} << 32)) build_tables();
}

bool FieldLevel::contains(const FieldLevel& sub) const noexcept {
  for (const FieldLevel* cur = this; cur != nullptr; cur = cur->base_.get()) {
    if (cur == &sub) return true;
  }
  return false;
}

unsigned FieldLevel::degree_over(const FieldLevel& sub) const {
  if (!contains(sub)) throw ParameterError("degree_over: levels are unrelated");
  return d_ / sub.d_;
}

std::uint64_t FieldLevel::add(std::uint64_t a, std::uint64_t b) const {
  if (p_ == 2) return a ^ b;
  std::uint64_t out = 0, scale = 1;
  while (a != 0 || b != 0) {
    const std::uint64_t da = a % p_, db = b % p_;
    out += ((da + db) % p_) * scale;
    a /= p_;
    b /= p_;
    scale *= p_;
  }
  return out;
}

std::uint64_t FieldLevel::neg(std::uint64_t a) const {
  if (p_ == 2) return a;
  std::uint64_t out = 0, scale = 1;
  while (a != 0) {
    const std::uint64_t da = a % p_;
    out += ((p_ - da) % p_) * scale;
    a /= p_;
    scale *= p_;
  }
  return out;
}

std::uint64_t FieldLevel::mul(std::uint64_t a, std::uint64_t b) const {
  if (a == 0 || b == 0) return 0;
  if (!exp_.empty()) {
    const std::uint64_t e = (std::uint64_t{log_[a]} + log_[b]) % (size_ - 1);
    return exp_[e];
  }
  return mul_slow(a, b);
}

std::uint64_t FieldLevel::mul_slow(std::uint64_t a, std::uint64_t b) const {
  if (!base_) return (a * b) % p_;
  const FieldLevel& B = *base_;
  const std::uint64_t Q = base_size_;
  std::vector<std::uint64_t> ca(k_), cb(k_);
  for (unsigned i = 0; i < k_; ++i) {
    ca[i] = a % Q;
    a /= Q;
    cb[i] = b % Q;
    b /= Q;
  }
  std::vector<std::uint64_t> prod(2 * k_ - 1, 0);
  for (unsigned i = 0; i < k_; ++i) {
    if (ca[i] == 0) continue;
    for (unsigned j = 0; j < k_; ++j) {
      if (cb[j] != 0) prod[i + j] = B.add(prod[i + j], B.mul(ca[i], cb[j]));
    }
  }
  for (std::size_t deg = prod.size(); deg-- > k_;) {
    const std::uint64_t c = prod[deg];
    if (c == 0) continue;
    for (unsigned j = 0; j < k_; ++j) {
      prod[deg - k_ + j] = B.sub(prod[deg - k_ + j], B.mul(c, defining_[j]));
    }
  }
  std::uint64_t out = 0;
  for (unsigned i = k_; i-- > 0;) out = out * Q + prod[i];
  return out;
}

std::uint64_t FieldLevel::pow_slow(std::uint64_t a, std::uint64_t e) const {
  std::uint64_t result = 1;
  while (e > 0) {
    if (e & 1U) result = mul_slow(result, a);
    e >>= 1;
    if (e > 0) a = mul_slow(a, a);
  }
  return result;
}

std::uint64_t FieldLevel::pow(std::uint64_t a, std::uint64_t e) const {
  if (e == 0) return 1;
  if (a == 0) return 0;
  if (!exp_.empty()) {
    const std::uint64_t order = size_ - 1;
    return exp_[(std::uint64_t{log_[a]} * (e % order)) % order];
  }
  std::uint64_t result = 1;
  while (e > 0) {
    if (e & 1U) result = mul(result, a);
    e >>= 1;
    if (e > 0) a = mul(a, a);
  }
  return result;
}

std::uint64_t FieldLevel::inv(std::uint64_t a) const {
  if (a == 0) throw DivisionByZero("finite field: inverse of zero");
  if (!exp_.empty()) return exp_[(size_ - 1 - log_[a]) % (size_ - 1)];
  return pow(a, size_ - 2);
}

std::uint64_t FieldLevel::relative_trace_slow(std::uint64_t a) const {
  if (!base_) return a;
  // Trace of multiplication by a in the basis 1, b, ..., b^(k-1).
  const FieldLevel& B = *base_;
  const std::uint64_t Q = base_size_;
  std::uint64_t acc = 0, basis = 1;
  for (unsigned i = 0; i < k_; ++i, basis *= Q) {
    std::uint64_t prod = mul_slow(a, basis);
    for (unsigned s = 0; s < i; ++s) prod /= Q;
    acc = B.add(acc, prod % Q);
  }
  return acc;
}

std::uint64_t FieldLevel::relative_trace(std::uint64_t a) const { return relative_trace_slow(a); }

std::uint32_t FieldLevel::absolute_trace(std::uint64_t a) const {
  if (!trace_.empty()) return trace_[a];
  std::uint64_t acc = 0;
  for (unsigned j = 0; j < d_ && a != 0; ++j) {
    acc += (a % p_) * basis_traces_[j];
    a /= p_;
  }
  return static_cast<std::uint32_t>(acc % p_);
}

std::uint32_t FieldLevel::absolute_trace_direct(std::uint64_t a) const {
  std::uint64_t acc = 0;
  for (unsigned i = 0; i < d_; ++i) {
    acc = add(acc, a);
    a = frobenius(a);
  }
  if (acc >= p_) throw std::logic_error("absolute_trace_direct: sum of conjugates left F_p");
  return static_cast<std::uint32_t>(acc);
}

std::uint64_t FieldLevel::norm_to(const FieldLevel& sub, std::uint64_t a) const {
  if (!contains(sub)) throw ParameterError("norm_to: levels are unrelated");
  if (a == 0) return 0;
  return pow(a, (size_ - 1) / (sub.size_ - 1));
}

void FieldLevel::build_tables() {
  const std::uint64_t order = size_ - 1;
  const auto factors = arith::factorize(order);
  std::uint64_t g = 1;
  for (; g < size_; ++g) {
    bool primitive = true;
    for (auto [ell, e] : factors) {
      (void)e;
      if (pow_slow(g, order / ell) == 1) {
        primitive = false;
        break;
      }
    }
    if (primitive) break;
  }
  generator_ = g;
  exp_.resize(order);
  log_.assign(size_, kNoLog);
  std::uint64_t cur = 1;
  for (std::uint64_t e = 0; e < order; ++e) {
    exp_[e] = static_cast<std::uint32_t>(cur);
    log_[cur] = static_cast<std::uint32_t>(e);
    cur = mul_slow(cur, g);
  }
  trace_.resize(size_);
  for (std::uint64_t x = 0; x < size_; ++x) {
    std::uint64_t acc = 0, a = x;
    for (unsigned j = 0; j < d_ && a != 0; ++j) {
      acc += (a % p_) * basis_traces_[j];
      a /= p_;
    }
    trace_[x] = static_cast<std::uint32_t>(acc % p_);
  }
  trace_by_log_.resize(order);
  for (std::uint64_t e = 0; e < order; ++e) trace_by_log_[e] = trace_[exp_[e]];
}

void FieldLevel::require_tables(const char* what) const {
  if (exp_.empty()) {
    throw BudgetExceeded(std::string(what) + ": level of size " + std::to_string(size_) +
                         " exceeds the table budget " + std::to_string(limits_.max_table_size));
  }
}

std::uint64_t FieldLevel::generator() const {
  require_tables("generator");
  return generator_;
}

std::uint32_t FieldLevel::dlog(std::uint64_t a) const {
  require_tables("dlog");
  if (a == 0 || a >= size_) throw ParameterError("dlog: argument must be a non-zero element");
  return log_[a];
}

const std::vector<std::uint32_t>& FieldLevel::log_table() const {
  require_tables("dlog table");
  return log_;
}

const std::vector<std::uint32_t>& FieldLevel::exp_table() const {
  require_tables("antilog table");
  return exp_;
}

const std::vector<std::uint32_t>& FieldLevel::trace_by_log() const {
  require_tables("trace table");
  return trace_by_log_;
}

std::vector<std::pair<unsigned, std::vector<std::uint64_t>>> FieldLevel::chain() const {
  std::vector<std::pair<unsigned, std::vector<std::uint64_t>>> out;
  for (const FieldLevel* cur = this; cur != nullptr; cur = cur->base_.get()) out.emplace_back(cur->k_, cur->defining_);
  return {out.rbegin(), out.rend()};
}

LevelPtr FieldLevel::extend(unsigned k) const {
  if (k == 0) throw ParameterError("extend: degree must be >= 1");
  if (k == 1) return shared_from_this();
  const std::uint64_t candidates = checked_pow(size_, k);
  PolyOps ops(*this);
  std::vector<std::uint64_t> poly(k + 1, 0);
  poly[k] = 1;
  for (std::uint64_t code = 0; code < candidates; ++code) {
    std::uint64_t rest = code;
    for (unsigned i = 0; i < k; ++i) {
      poly[i] = rest % size_;
      rest /= size_;
    }
    if (poly[0] == 0) continue;
    if (ops.irreducible(poly)) {
      return std::make_shared<FieldLevel>(Private{}, p_, shared_from_this(), k, poly, limits_);
    }
  }
  throw std::logic_error("extend: no irreducible polynomial found");
}

namespace finitefield {

LevelPtr build_extension(const LevelPtr& base, unsigned k) { return base->extend(k); }

std::uint32_t absolute_trace(const FFElem& x) { return x.level->absolute_trace(x.index); }

FFElem embed(const FFElem& x, const LevelPtr& target) {
  if (!target->contains(*x.level)) throw ParameterError("embed: target is not built over the element's level");
  return FFElem{target, x.index};
}

const std::vector<std::uint32_t>& dlog_table(const LevelPtr& level) { return level->log_table(); }

CycNum additive_char(const FFElem& x) {
  return CycNum::zeta_power(x.level->characteristic(), static_cast<long>(absolute_trace(x)));
}

CycNum mult_char(unsigned j, unsigned order, const FFElem& x) {
  if (order == 0 || (x.level->size() - 1) % order != 0) {
    throw ParameterError("mult_char: order " + std::to_string(order) + " does not divide " +
                         std::to_string(x.level->size() - 1));
  }
  if (x.index == 0) throw ParameterError("mult_char: character evaluated at zero");
  const std::uint64_t e = (static_cast<std::uint64_t>(j % order) * (x.level->dlog(x.index) % order)) % order;
  return CycNum::zeta_power(order, static_cast<long>(e));
}

}  // namespace finitefield
}  // namespace finmono
