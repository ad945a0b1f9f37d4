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
#include "finmono/arith.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "finmono/errors.hpp"

namespace finmono::arith {

unsigned long floor_two_log_plus(const BigInt& q, const BigRat& y) {
  if (q < 2) throw ParameterError("floor_two_log_plus: base q must be >= 2");
  if (sgn(y) <= 0) throw ParameterError("floor_two_log_plus: argument must be positive");
  if (y <= 1) return 0;

  // q^k <= num^2 / den^2  <=>  q^k * den^2 <= num^2
  const BigInt num_sq = y.get_num() * y.get_num();
  const BigInt den_sq = y.get_den() * y.get_den();

  // Start just below a floating estimate, then settle with exact comparisons.
  long e_num = 0, e_den = 0, e_q = 0;
  const double m_num = mpz_get_d_2exp(&e_num, num_sq.get_mpz_t());
  const double m_den = mpz_get_d_2exp(&e_den, den_sq.get_mpz_t());
  const double m_q = mpz_get_d_2exp(&e_q, q.get_mpz_t());
  const double log2_ratio = (std::log2(m_num) + double(e_num)) - (std::log2(m_den) + double(e_den));
  const double log2_q = std::log2(m_q) + double(e_q);
  double estimate = std::floor(log2_ratio / log2_q) - 2.0;
  unsigned long k = estimate > 0 ? static_cast<unsigned long>(estimate) : 0;

  BigInt lhs;
  mpz_pow_ui(lhs.get_mpz_t(), q.get_mpz_t(), k);
  lhs *= den_sq;
  while (lhs > num_sq && k > 0) {
    lhs /= q;
    --k;
  }
  while (lhs * q <= num_sq) {
    lhs *= q;
    ++k;
  }
  return k;
}

BigInt binomial(const BigInt& n, const BigInt& k) {
  if (sgn(n) < 0) throw ParameterError("binomial: n must be non-negative");
  if (sgn(k) < 0 || k > n) return 0;
  BigInt kk = k;
  if (n - k < kk) kk = n - k;
  if (!kk.fits_ulong_p()) throw BudgetExceeded("binomial: lower index too large");
  const unsigned long steps = kk.get_ui();
  BigInt acc = 1;
  for (unsigned long i = 1; i <= steps; ++i) {
    acc *= n - steps + i;
    mpz_divexact_ui(acc.get_mpz_t(), acc.get_mpz_t(), i);
  }
  return acc;
}

BigInt binomial(unsigned long n, long k) {
  if (k < 0) return 0;
  return binomial(BigInt(n), BigInt(k));
}

std::uint64_t gcd(std::uint64_t a, std::uint64_t b) {
  while (b != 0) {
    a %= b;
    std::swap(a, b);
  }
  return a;
}

std::uint64_t lcm(std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0) return 0;
  return a / gcd(a, b) * b;
}

std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t n) {
  std::vector<std::pair<std::uint64_t, unsigned>> out;
  for (std::uint64_t d = 2; d * d <= n; d += (d == 2 ? 1 : 2)) {
    if (n % d != 0) continue;
    unsigned e = 0;
    while (n % d == 0) {
      n /= d;
      ++e;
    }
    out.emplace_back(d, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::uint64_t euler_phi(std::uint64_t n) {
  if (n == 0) throw ParameterError("euler_phi: n must be positive");
  std::uint64_t out = n;
  for (auto [prime, exp] : factorize(n)) {
    (void)exp;
    out = out / prime * (prime - 1);
  }
  return out;
}

namespace {

// Exact division of integer polynomials by a monic divisor.
std::vector<long long> divide_monic(std::vector<long long> num, const std::vector<long long>& den) {
  const std::size_t dd = den.size() - 1;
  std::vector<long long> quot(num.size() - dd, 0);
  for (std::size_t i = num.size(); i-- > dd;) {
    const long long c = num[i];
    quot[i - dd] = c;
    if (c == 0) continue;
    for (std::size_t j = 0; j <= dd; ++j) num[i - dd + j] -= c * den[j];
  }
  return quot;
}

}  // namespace

std::vector<long long> cyclotomic_poly(unsigned n) {
  if (n == 0) throw ParameterError("cyclotomic_poly: n must be positive");
  // x^n - 1 divided by Phi_d for every proper divisor d.
  std::vector<long long> poly(n + 1, 0);
  poly[0] = -1;
  poly[n] = 1;
  for (unsigned d = 1; d < n; ++d) {
    if (n % d == 0) poly = divide_monic(std::move(poly), cyclotomic_poly(d));
  }
  return poly;
}

std::vector<std::uint64_t> primes_up_to(std::uint64_t bound) {
  std::vector<std::uint64_t> out;
  if (bound < 2) return out;
  std::vector<bool> composite(bound + 1, false);
  for (std::uint64_t i = 2; i <= bound; ++i) {
    if (composite[i]) continue;
    out.push_back(i);
    for (std::uint64_t j = i * i; j <= bound; j += i) composite[j] = true;
  }
  return out;
}

unsigned valuation(const BigInt& n, std::uint64_t p) {
  if (sgn(n) == 0) throw ParameterError("valuation of zero");
  BigInt m = n;
  unsigned v = 0;
  while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
    mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
    ++v;
  }
  return v;
}

unsigned floor_log(const BigInt& x, std::uint64_t p) {
  if (p < 2 || x < 1) throw ParameterError("floor_log: need p >= 2 and x >= 1");
  unsigned a = 0;
  BigInt pw = p;
  while (pw <= x) {
    pw *= p;
    ++a;
  }
  return a;
}

BigInt floor_div(const BigRat& x) {
  BigInt out;
  mpz_fdiv_q(out.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return out;
}

std::string to_fraction_string(const BigRat& x) {
  return x.get_num().get_str() + "/" + x.get_den().get_str();
}

namespace {

bool is_decimal(std::string_view s) {
  std::size_t start = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
  if (start >= s.size()) return false;
  return std::all_of(s.begin() + static_cast<long>(start), s.end(),
                     [](char c) { return c >= '0' && c <= '9'; });
}

}  // namespace

BigInt parse_integer(std::string_view text) {
  if (!is_decimal(text)) throw ParameterError("not a decimal integer: '" + std::string(text) + "'");
  std::string s(text);
  if (s[0] == '+') s.erase(0, 1);
  return BigInt(s, 10);
}

BigRat parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return BigRat(parse_integer(text));
  const BigInt num = parse_integer(text.substr(0, slash));
  const std::string_view den_text = text.substr(slash + 1);
  if (!den_text.empty() && (den_text[0] == '-' || den_text[0] == '+')) {
    throw ParameterError("denominator must be unsigned: '" + std::string(text) + "'");
  }
  const BigInt den = parse_integer(den_text);
  if (sgn(den) == 0) throw ParameterError("zero denominator: '" + std::string(text) + "'");
  BigRat out(num, den);
  out.canonicalize();
  return out;
}

}  // namespace finmono::arith
