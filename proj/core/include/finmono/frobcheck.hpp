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
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "finmono/cyclotomic.hpp"
#include "finmono/sheaftrace.hpp"

namespace finmono {

struct FrobData {
  unsigned m = 0;
  std::uint64_t point = 0;
  std::vector<NormalizedTrace> power_sums;  ///< Phi(m k, t), k = 1..rank
  CycPoly char_poly;
  bool trace_integral = false;
  bool eigen_unity = false;
  std::string failure;
};

struct FrobOptions {
  Limits limits{};
  std::uint64_t summand_budget = sheaftrace::kDefaultSummandBudget;
  /// Order bound for the unity test; m_lcm(cond_E, rank) when absent.
  std::optional<std::uint64_t> M;
};

/// Elements of the totally ramified extension Q(pi), pi^e = p, in the basis
/// 1, pi, ..., pi^(e-1). Used by the power-sum oracle.
class EisensteinNum {
 public:
  EisensteinNum(std::uint64_t p, unsigned e);
  static EisensteinNum rational(std::uint64_t p, unsigned e, const BigRat& r);
  static EisensteinNum from_coords(std::uint64_t p, std::vector<BigRat> coords);

  std::uint64_t p() const noexcept { return p_; }
  unsigned e() const noexcept { return static_cast<unsigned>(coords_.size()); }
  const std::vector<BigRat>& coords() const noexcept { return coords_; }

  bool is_zero() const;
  /// Valuation normalised by v(p) = 1; the element must be non-zero.
  BigRat valuation() const;
  bool is_integral() const;
  std::string to_string() const;

  EisensteinNum& operator+=(const EisensteinNum& rhs);
  EisensteinNum& operator-=(const EisensteinNum& rhs);
  friend EisensteinNum operator+(EisensteinNum a, const EisensteinNum& b) { return a += b; }
  friend EisensteinNum operator-(EisensteinNum a, const EisensteinNum& b) { return a -= b; }
  friend EisensteinNum operator*(const EisensteinNum& a, const EisensteinNum& b);
  EisensteinNum operator-() const;
  EisensteinNum pow(unsigned k) const;

 private:
  std::uint64_t p_;
  std::vector<BigRat> coords_;
};

struct OracleReport {
  unsigned r = 0;
  unsigned e_ram = 0;
  std::uint64_t p = 0;
  BigInt N;
  unsigned trials = 0;
  unsigned premise_held = 0;     ///< samples whose first N power sums were integral
  unsigned nonintegral = 0;      ///< samples with a non-integral element
  unsigned caught = 0;           ///< non-integral samples rejected by the first N power sums
  unsigned counterexamples = 0;  ///< premise held but some element non-integral
  bool newton_polygon_consistent = true;
  /// Elements whose first witness_k power sums are integral although one is not.
  std::optional<std::vector<std::string>> witness;
  unsigned witness_k = 0;

  bool passed() const noexcept { return counterexamples == 0 && newton_polygon_consistent; }
};

namespace frobcheck {

/// Monic polynomial with the given first r power sums (all in one field).
CycPoly newton_char_poly(std::span<const CycNum> power_sums);

FrobData frobenius_char_poly(const SheafFamily& fam, unsigned m, std::uint64_t point, const FrobOptions& opts = {});

bool check_eigen_unity(const CycPoly& f, std::uint64_t M, std::uint64_t p);

/// v(value) >= 0 at every place above p, and the numerator is integral away from p.
bool check_trace_integral(const NormalizedTrace& tr, std::uint64_t p);

/// Slopes of the lower convex hull of (i, v_i), ascending; absent v_i (zero
/// coefficients) are skipped. One slope per unit of horizontal length.
std::vector<BigRat> newton_polygon_slopes(std::span<const std::optional<BigRat>> valuations);

/// checked_sums overrides how many power sums the premise inspects (default n_power_sums).
OracleReport power_sum_integrality_oracle(unsigned r, unsigned e_ram, std::uint64_t p, unsigned trials,
                                          std::uint64_t seed = 1, std::optional<unsigned> checked_sums = std::nullopt);

}  // namespace frobcheck
}  // namespace finmono
