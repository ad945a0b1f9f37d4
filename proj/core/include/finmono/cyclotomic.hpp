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

#include <complex>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "finmono/arith.hpp"

namespace finmono {

namespace detail {
struct CycContext;
}

/// An element of Q(zeta_c), stored as rational coordinates in the power basis
/// 1, zeta, ..., zeta^(phi(c)-1) of Q[x]/Phi_c.
///
/// Binary operations require equal conductors; use lift() to move an element
/// into Q(zeta_c') for c | c'.
class CycNum {
 public:
  /// Zero of Q(zeta_c).
  explicit CycNum(unsigned conductor = 1);

  static CycNum from_rational(unsigned conductor, const BigRat& value);
  static CycNum zeta_power(unsigned conductor, long exponent);
  /// coords.size() must equal phi(conductor).
  static CycNum from_coords(unsigned conductor, std::vector<BigRat> coords);
  /// Sum of counts[k] * zeta^k for k in [0, conductor).
  static CycNum from_power_counts(unsigned conductor, std::span<const std::int64_t> counts);

  unsigned conductor() const noexcept;
  unsigned degree() const noexcept { return static_cast<unsigned>(coords_.size()); }
  const std::vector<BigRat>& coords() const noexcept { return coords_; }

  bool is_zero() const;
  bool is_rational() const;

  /// Image under zeta_c -> zeta_c'^(c'/c). Requires c | c'.
  CycNum lift(unsigned new_conductor) const;
  /// Galois automorphism zeta -> zeta^j, gcd(j, c) = 1.
  CycNum galois(long j) const;

  CycNum operator-() const;
  CycNum& operator+=(const CycNum& rhs);
  CycNum& operator-=(const CycNum& rhs);
  CycNum& operator*=(const CycNum& rhs);
  CycNum& operator/=(const CycNum& rhs);
  CycNum& operator*=(const BigRat& rhs);

  CycNum inverse() const;
  CycNum pow(unsigned long e) const;
  /// Field norm down to Q.
  BigRat norm() const;

  friend CycNum operator+(CycNum a, const CycNum& b) { return a += b; }
  friend CycNum operator-(CycNum a, const CycNum& b) { return a -= b; }
  friend CycNum operator*(CycNum a, const CycNum& b) { return a *= b; }
  friend CycNum operator/(CycNum a, const CycNum& b) { return a /= b; }
  friend CycNum operator*(CycNum a, const BigRat& b) { return a *= b; }
  friend bool operator==(const CycNum& a, const CycNum& b);

 private:
  CycNum(std::shared_ptr<const detail::CycContext> ctx, std::vector<BigRat> coords);
  void require_same_field(const CycNum& rhs, const char* op) const;

  std::shared_ptr<const detail::CycContext> ctx_;
  std::vector<BigRat> coords_;
};

/// Lifts both arguments to Q(zeta_lcm(a, b)).
std::pair<CycNum, CycNum> common_lift(const CycNum& a, const CycNum& b);

/// Dense polynomial over Q(zeta_c), lowest degree first. The zero polynomial
/// has no coefficients; otherwise the leading coefficient is non-zero.
class CycPoly {
 public:
  explicit CycPoly(unsigned conductor = 1) : conductor_(conductor) {}
  CycPoly(unsigned conductor, std::vector<CycNum> coeffs);

  /// x^k - c style helpers.
  static CycPoly monomial(unsigned conductor, unsigned degree, const CycNum& coeff);
  static CycPoly constant(const CycNum& c);
  /// (x - r1)(x - r2)...
  static CycPoly from_roots(unsigned conductor, std::span<const CycNum> roots);

  unsigned conductor() const noexcept { return conductor_; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  /// -1 for the zero polynomial.
  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<CycNum>& coeffs() const noexcept { return coeffs_; }
  const CycNum& leading() const;
  bool is_monic() const;

  CycPoly monic() const;
  CycPoly derivative() const;

  CycPoly& operator+=(const CycPoly& rhs);
  CycPoly& operator-=(const CycPoly& rhs);
  friend CycPoly operator+(CycPoly a, const CycPoly& b) { return a += b; }
  friend CycPoly operator-(CycPoly a, const CycPoly& b) { return a -= b; }
  friend CycPoly operator*(const CycPoly& a, const CycPoly& b);
  friend bool operator==(const CycPoly& a, const CycPoly& b) = default;

  /// Quotient and remainder by exact Euclidean division; throws on zero divisor.
  std::pair<CycPoly, CycPoly> divmod(const CycPoly& divisor) const;

 private:
  void trim();

  unsigned conductor_;
  std::vector<CycNum> coeffs_;
};

namespace cyclotomic {

/// True iff every power-basis coordinate has denominator prime to p, i.e. the
/// element lies in every local ring of Q(zeta_c) above p.
bool p_integral_everywhere(const CycNum& a, std::uint64_t p);

/// G = -sum_{x in F_p} zeta_p^(x^2) for odd p. G^2 = (-1)^((p-1)/2) p.
CycNum quadratic_gauss_sum(std::uint64_t p);

/// Whether v(a) >= k/2 at every place above p (v(p) = 1). For odd k the
/// conductor of a must be divisible by p.
bool check_valuation_ge(const CycNum& a, std::uint64_t p, unsigned half_units);

/// Monic gcd; throws ParameterError when both inputs are zero.
CycPoly poly_gcd(const CycPoly& f, const CycPoly& g);

/// f / gcd(f, f'), monic.
CycPoly squarefree_part(const CycPoly& f);

/// x^e mod modulus.
CycPoly x_pow_mod(unsigned long e, const CycPoly& modulus);

/// True iff every root of f is a root of unity of order dividing order.
bool divides_unity_pow(const CycPoly& f, std::uint64_t order);

struct Embedding {
  unsigned j;                   ///< zeta_c -> exp(2 pi i j / c)
  std::complex<double> value;
};

/// All complex embeddings, each within 10^-digits of the true value.
/// digits must be in [1, 15]; throws ParameterError when the magnitude of a
/// value prevents a double from meeting the requested accuracy.
std::vector<Embedding> complex_embeddings(const CycNum& a, unsigned digits);

}  // namespace cyclotomic
}  // namespace finmono
