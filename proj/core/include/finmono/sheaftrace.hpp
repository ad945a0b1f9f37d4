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
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "finmono/arith.hpp"
#include "finmono/cyclotomic.hpp"
#include "finmono/finitefield.hpp"
#include "finmono/limits.hpp"

namespace finmono {

/// numerator / G^gauss_exponent, G the quadratic Gauss sum of the family's prime.
struct NormalizedTrace {
  CycNum numerator;
  unsigned gauss_exponent = 0;

  friend bool operator==(const NormalizedTrace& a, const NormalizedTrace& b) {
    return a.gauss_exponent == b.gauss_exponent && a.numerator == b.numerator;
  }
};

/// Fourier transform of psi(x^n): rank n - 1 on the affine line.
struct ASFamily {
  std::uint32_t p = 3;
  unsigned n = 2;
};

/// Hypergeometric sheaf on G_m over F_q, q = p^f_deg, with characters of
/// order dividing m (chi_j = zeta_m^j on a fixed generator of F_q^*).
struct HypFamily {
  std::uint32_t p = 3;
  unsigned f_deg = 1;
  unsigned m = 1;
  std::vector<unsigned> chi;  ///< a entries
  std::vector<unsigned> rho;  ///< b entries

  unsigned a() const noexcept { return static_cast<unsigned>(chi.size()); }
  unsigned b() const noexcept { return static_cast<unsigned>(rho.size()); }
};

/// Header keys a trace table may declare besides conductor and gauss_p.
struct TableMeta {
  std::optional<unsigned> rank;
  std::optional<BigInt> q;
  std::optional<unsigned> ambient_n;
  std::optional<BigInt> C;
  std::optional<BigInt> c_X;
  std::optional<unsigned> f_ram;
  std::optional<BigInt> b1;
  std::optional<BigRat> e_breaks;

  friend bool operator==(const TableMeta&, const TableMeta&) = default;
};

struct TraceTable {
  unsigned conductor = 1;
  std::uint32_t gauss_p = 3;
  TableMeta meta;
  std::map<std::pair<unsigned, std::uint64_t>, NormalizedTrace> entries;

  std::vector<unsigned> degrees() const;
  /// Point ids stored at \p degree, ascending.
  std::vector<std::uint64_t> points(unsigned degree) const;
  /// Throws TableFormatError naming (degree, id) when absent.
  const NormalizedTrace& at(unsigned degree, std::uint64_t id) const;

  friend bool operator==(const TraceTable& a, const TraceTable& b) {
    return a.conductor == b.conductor && a.gauss_p == b.gauss_p && a.meta == b.meta && a.entries == b.entries;
  }
};

struct TableFamily {
  std::shared_ptr<const TraceTable> table;
};

using SheafFamily = std::variant<ASFamily, HypFamily, TableFamily>;

/// Inputs of the bound formulas derived from a family.
struct FamilyMetadata {
  unsigned rank = 1;
  unsigned cond_E = 1;
  std::uint64_t p = 2;
  BigInt q = 2;
  unsigned f_ram = 1;
  std::optional<BigInt> b1;
  std::optional<BigRat> e_breaks;
  std::optional<unsigned> ambient_n;
  std::optional<BigInt> C;
  std::optional<BigInt> c_X;
};

namespace sheaftrace {

inline constexpr std::uint64_t kDefaultSummandBudget = std::uint64_t{1} << 26;

/// Throws ParameterError when the family violates its invariants.
void validate(const SheafFamily& fam);

std::string family_name(const SheafFamily& fam);
std::vector<std::pair<std::string, std::string>> family_params(const SheafFamily& fam);
FamilyMetadata family_metadata(const SheafFamily& fam);

/// Field of the degree-m points: F_(p^m) for AS, F_(q^m) for Hyp.
/// Levels are cached per (family prime, base degree, m, k).
LevelPtr point_level(const SheafFamily& fam, unsigned m, const Limits& limits = {});
/// Degree-k extension built over point_level(fam, m).
LevelPtr power_level(const SheafFamily& fam, unsigned m, unsigned k, const Limits& limits = {});

/// Number of points of X over the degree-m field.
std::uint64_t point_count(const SheafFamily& fam, unsigned m, const Limits& limits = {});
/// The i-th point id in scan order.
std::uint64_t point_id(const SheafFamily& fam, unsigned m, std::uint64_t i, const Limits& limits = {});

NormalizedTrace trace_as(const ASFamily& fam, unsigned m, const FFElem& t,
                         std::uint64_t budget = kDefaultSummandBudget);
NormalizedTrace trace_hyp(const HypFamily& fam, unsigned s, const FFElem& t,
                          std::uint64_t budget = kDefaultSummandBudget);
NormalizedTrace trace_table(const TableFamily& fam, unsigned m, std::uint64_t id);

/// Phi(m k, t) with t the point \p id of degree m, embedded k-fold.
NormalizedTrace power_trace(const SheafFamily& fam, unsigned m, std::uint64_t id, unsigned k,
                            const Limits& limits = {}, std::uint64_t budget = kDefaultSummandBudget);

/// The prime whose Gauss sum normalizes the family's traces.
std::uint64_t gauss_prime(const SheafFamily& fam);

/// G^k lifted to Q(zeta_lcm(conductor, p)) (k odd) or Q(zeta_conductor) (k even).
CycNum gauss_power(std::uint64_t p, unsigned k, unsigned conductor);

/// The exact value numerator / G^k.
CycNum value(const NormalizedTrace& tr, std::uint64_t p);

/// sum over F_(p^m) of psi(Tr x^2).
CycNum quadratic_sum(std::uint32_t p, unsigned m);

}  // namespace sheaftrace
}  // namespace finmono
