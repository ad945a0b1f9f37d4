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
#include <string>
#include <vector>

#include "finmono/arith.hpp"
#include "finmono/limits.hpp"

namespace finmono {

/// Parameters of the higher-dimensional bounds, driven by Sawin complexity.
struct GeneralParams {
  unsigned r = 1;          ///< rank
  BigInt q = 2;            ///< base field size
  std::uint64_t p = 2;     ///< characteristic
  unsigned ambient_n = 0;  ///< projective embedding dimension
  BigInt C = 1;            ///< complexity bound of the sheaf
  BigInt c_X = 1;          ///< complexity of the structure sheaf
  unsigned cond_E = 1;     ///< conductor of the cyclotomic coefficient field
  unsigned f_ram = 1;      ///< max ramification index of primes of E over p
  unsigned d_ext = 1;      ///< degree bound [E:Q]
};

/// Parameters of the curve bounds, driven by b_1 and break sums.
struct CurveParams {
  unsigned r = 1;
  BigInt q = 2;
  std::uint64_t p = 2;
  unsigned cond_E = 1;
  unsigned f_ram = 1;
  BigInt b1 = 0;
  BigRat e_breaks = 1;
};

/// A bound that is either exact or, when materialising it would blow the
/// digit budget, only known through ceil(log10 N).
struct BoundValue {
  std::optional<BigInt> exact;
  std::optional<long> magnitude;

  bool is_exact() const noexcept { return exact.has_value(); }
  static BoundValue of(BigInt n) { return {std::move(n), std::nullopt}; }
};

struct EigenBound {
  BigInt M;
  BigInt R;
  BoundValue N;
};

namespace theorem {
inline constexpr const char* kTraceIdentityCurve = "trace-identity-curve";
inline constexpr const char* kTraceIdentityGeneral = "trace-identity-general";
inline constexpr const char* kEigenGeneral = "eigen-general";
inline constexpr const char* kEigenCurve = "eigen-curve";
inline constexpr const char* kPowerSums = "power-sums";
inline constexpr const char* kIntegralGeneral = "integral-general";
inline constexpr const char* kIntegralCurve = "integral-curve";
}  // namespace theorem

struct NamedBound {
  std::string theorem;
  BoundValue N;
};

/// One reading of the closed-form M for the hypergeometric family.
struct MReading {
  std::string reading;
  std::optional<BigInt> M;  ///< absent when the reading is undefined
  std::optional<BigInt> R;
  std::optional<BigInt> N_eigen;
};

struct BoundReport {
  std::string family;
  std::vector<std::pair<std::string, std::string>> inputs;  ///< name -> decimal/fraction text
  BigInt M;
  BigInt R;
  std::optional<BigRat> A_n;
  std::vector<NamedBound> bounds;
  std::optional<BigInt> M_closed_form;
  bool M_closed_form_agrees = true;
  std::vector<MReading> m_readings;
  std::optional<BigInt> reference_N;
  bool reference_N_reproduced = true;
  std::vector<std::string> notes;

  const NamedBound* find(const std::string& name) const;
};

namespace bounds {

/// Fixed rational upper bound for e^(4/3).
BigRat e_four_thirds_upper();

/// (2^17 / 3^4) e^(4/3) 13^n (n+2)! with e^(4/3) rounded up to 3794/1000.
BigRat a_constant(unsigned n);

/// [Q(zeta_lcm(n, c)) : Q(zeta_c)].
std::uint64_t cyclotomic_relative_degree(const BigInt& n, unsigned c);

/// lcm of all n with [E(zeta_n):E] <= r for E = Q(zeta_c), via maximal prime powers.
BigInt m_lcm(unsigned cond_E, unsigned r);

/// Product over primes l <= r+1 of l^floor(1 + log_l(r/(l-1))).
BigInt m_closed_form_Q(unsigned r);

/// C(r+M-i-1, M) C(M-1, i).
BigInt adams_component_rank(unsigned r, const BigInt& M, unsigned long i);
/// Sum of the even-i component ranks.
BigInt adams_even_rank(unsigned r, const BigInt& M);

BigInt n_traces_curve(unsigned r, const BigInt& q, const BigInt& b1, const BigRat& alpha_max);
BigInt n_traces_general(unsigned r, const BigInt& q, unsigned ambient_n, const BigInt& C);

EigenBound n_eigen_curve(const CurveParams& params);
EigenBound n_eigen_general(const GeneralParams& params, const Limits& limits = {});

/// r (1 + floor(e/(p-1) (1 - p^-a))) with a = floor(log_p r).
BigInt n_power_sums(unsigned r, unsigned e_ram, std::uint64_t p);

/// Integrality multiplier: n_power_sums with ramification index r * f_ram.
BigInt integral_multiplier(unsigned r, unsigned f_ram, std::uint64_t p);

BoundValue n_integral_general(const GeneralParams& params, const Limits& limits = {});
BoundValue n_integral_curve(const CurveParams& params);

/// Both criterion bounds for the Artin-Schreier Fourier family.
/// e_override replaces the break bound 1/(n-1).
BoundReport example_bounds_artin_schreier(std::uint64_t p, unsigned n,
                                          const std::optional<BigRat>& e_override = std::nullopt);

/// Closed form M for the Artin-Schreier family, for cross-checking m_lcm(p, n-1).
BigInt m_closed_form_artin_schreier(std::uint64_t p, unsigned n);

enum class OrdReading { ValuationOfA, ValuationOfM, MultiplicativeOrder };

/// Closed-form M for the hypergeometric family under one reading of ord_l.
std::optional<BigInt> m_closed_form_hypergeometric(std::uint64_t p, unsigned m, unsigned a, OrdReading reading);

BoundReport example_bounds_hypergeometric(std::uint64_t p, unsigned f_deg, unsigned m, unsigned a, unsigned b);

BoundReport general_report(const GeneralParams& params, const Limits& limits = {});
BoundReport curve_report(const CurveParams& params);

}  // namespace bounds
}  // namespace finmono
