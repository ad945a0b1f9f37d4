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

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace finmono {

using BigInt = mpz_class;
/// Always canonical: reduced, positive denominator.
using BigRat = mpq_class;

namespace arith {

/// floor(2 * log_q^+(y)), i.e. max{k >= 0 : q^k <= y^2}, in exact arithmetic.
/// Throws ParameterError when q < 2 or y <= 0.
unsigned long floor_two_log_plus(const BigInt& q, const BigRat& y);

/// C(n, k) by the running product with exact division; 0 outside 0 <= k <= n.
BigInt binomial(const BigInt& n, const BigInt& k);
BigInt binomial(unsigned long n, long k);

std::uint64_t euler_phi(std::uint64_t n);

/// Coefficients of the n-th cyclotomic polynomial, lowest degree first.
std::vector<long long> cyclotomic_poly(unsigned n);

std::vector<std::uint64_t> primes_up_to(std::uint64_t bound);

bool is_prime(std::uint64_t n);

/// Trial-division factorisation as (prime, exponent) pairs, ascending.
std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t n);

std::uint64_t gcd(std::uint64_t a, std::uint64_t b);
std::uint64_t lcm(std::uint64_t a, std::uint64_t b);

/// Exponent of the prime p in n (n != 0).
unsigned valuation(const BigInt& n, std::uint64_t p);

/// Largest a with p^a <= x (x >= 1, p >= 2).
unsigned floor_log(const BigInt& x, std::uint64_t p);

BigInt floor_div(const BigRat& x);

/// "num/den" with the denominator always present.
std::string to_fraction_string(const BigRat& x);
/// Accepts "n" or "n/d" decimal forms; returns the canonical value.
BigRat parse_rational(std::string_view text);
BigInt parse_integer(std::string_view text);

}  // namespace arith
}  // namespace finmono
