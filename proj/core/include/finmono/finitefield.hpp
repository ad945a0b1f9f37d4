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
#include <memory>
#include <ranges>
#include <vector>

#include "finmono/cyclotomic.hpp"
#include "finmono/errors.hpp"
#include "finmono/limits.hpp"

namespace finmono {

class FieldLevel;
using LevelPtr = std::shared_ptr<const FieldLevel>;

/// One level of a relative tower F_p = L_0 c L_1 c ... of finite fields.
///
/// An element of a level of degree k over its base (of size Q) is encoded as
/// the integer sum c_i Q^i over its coordinates c_0..c_(k-1) in the basis
/// 1, b, ..., b^(k-1), where b is a root of the defining polynomial and each
/// c_i is itself the encoding of a base element. Two consequences drive the
/// design: the encoding read in base p lists the flattened F_p coordinates
/// (so addition is digit-wise), and an element of a subfield keeps its index
/// in every level built over it (so embedding is the identity on indices).
///
/// Levels at most Limits::max_table_size in size carry log/antilog tables
/// built from the smallest generator in index order, plus a trace table.
class FieldLevel : public std::enable_shared_from_this<FieldLevel> {
 public:
  static LevelPtr prime_field(std::uint32_t p, const Limits& limits = {});

  /// The degree-k extension with the smallest monic irreducible defining
  /// polynomial in index order. k == 1 returns this level.
  LevelPtr extend(unsigned k) const;

  std::uint32_t characteristic() const noexcept { return p_; }
  unsigned relative_degree() const noexcept { return k_; }
  unsigned absolute_degree() const noexcept { return d_; }
  std::uint64_t size() const noexcept { return size_; }
  const LevelPtr& base() const noexcept { return base_; }
  /// Defining polynomial over the base, lowest degree first, monic.
  const std::vector<std::uint64_t>& defining_poly() const noexcept { return defining_; }
  const Limits& limits() const noexcept { return limits_; }
  bool has_tables() const noexcept { return !exp_.empty(); }

  /// True when \p sub is this level or one of its bases.
  bool contains(const FieldLevel& sub) const noexcept;
  /// [this : sub]; throws ParameterError when sub is not a base of this level.
  unsigned degree_over(const FieldLevel& sub) const;

  std::uint64_t add(std::uint64_t a, std::uint64_t b) const;
  std::uint64_t neg(std::uint64_t a) const;
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return add(a, neg(b)); }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const;
  std::uint64_t pow(std::uint64_t a, std::uint64_t e) const;
  std::uint64_t inv(std::uint64_t a) const;
  std::uint64_t frobenius(std::uint64_t a) const { return pow(a, p_); }

  /// Trace down to the base level (index of a base element).
  std::uint64_t relative_trace(std::uint64_t a) const;
  /// Trace to F_p, composed level by level.
  std::uint32_t absolute_trace(std::uint64_t a) const;
  /// Trace to F_p as the sum of the Frobenius conjugates.
  std::uint32_t absolute_trace_direct(std::uint64_t a) const;
  /// Norm into the subfield \p sub (result is an index of \p sub).
  std::uint64_t norm_to(const FieldLevel& sub, std::uint64_t a) const;

  std::uint64_t generator() const;
  std::uint32_t dlog(std::uint64_t a) const;
  const std::vector<std::uint32_t>& log_table() const;
  const std::vector<std::uint32_t>& exp_table() const;
  /// trace_by_log()[e] = absolute_trace(g^e).
  const std::vector<std::uint32_t>& trace_by_log() const;

  /// Chain of (relative degree, defining polynomial) from F_p upward.
  std::vector<std::pair<unsigned, std::vector<std::uint64_t>>> chain() const;

  struct Private;
  FieldLevel(const Private&, std::uint32_t p, LevelPtr base, unsigned k, std::vector<std::uint64_t> defining,
             const Limits& limits);

 private:
  std::uint64_t mul_slow(std::uint64_t a, std::uint64_t b) const;
  std::uint64_t pow_slow(std::uint64_t a, std::uint64_t e) const;
  std::uint64_t relative_trace_slow(std::uint64_t a) const;
  void require_tables(const char* what) const;
  void build_tables();

  std::uint32_t p_;
  LevelPtr base_;
  unsigned k_;
  unsigned d_;
  std::uint64_t base_size_;
  std::uint64_t size_;
  std::vector<std::uint64_t> defining_;
  Limits limits_;
  std::vector<std::uint32_t> basis_traces_;  // absolute trace of p^j, j < d
  std::uint64_t generator_ = 0;
  std::vector<std::uint32_t> log_;
  std::vector<std::uint32_t> exp_;
  std::vector<std::uint32_t> trace_;
  std::vector<std::uint32_t> trace_by_log_;
};

/// A field element: a level and an index at that level.
struct FFElem {
  LevelPtr level;
  std::uint64_t index = 0;

  friend bool operator==(const FFElem& a, const FFElem& b) {
    return a.level == b.level && a.index == b.index;
  }
};

namespace finitefield {

LevelPtr build_extension(const LevelPtr& base, unsigned k);

std::uint32_t absolute_trace(const FFElem& x);

/// Every element of the level once, in index order. Throws BudgetExceeded
/// when the level is larger than \p budget.
inline auto enumerate(const LevelPtr& level, std::uint64_t budget) {
  if (level->size() > budget) {
    throw BudgetExceeded("enumerate: level of size " + std::to_string(level->size()) + " exceeds budget " +
                         std::to_string(budget));
  }
  return std::views::iota(std::uint64_t{0}, level->size()) |
         std::views::transform([level](std::uint64_t i) { return FFElem{level, i}; });
}

/// Canonical inclusion into a level built (possibly indirectly) over x.level.
FFElem embed(const FFElem& x, const LevelPtr& target);

/// dlog_table(level)[x] = e with g^e = x for x != 0.
const std::vector<std::uint32_t>& dlog_table(const LevelPtr& level);

/// psi(x) = zeta_p^Tr(x).
CycNum additive_char(const FFElem& x);

/// chi_j(x) = zeta_m^(j dlog x) with m | (size - 1); chi_j(g) = zeta_m^j.
CycNum mult_char(unsigned j, unsigned order, const FFElem& x);

}  // namespace finitefield
}  // namespace finmono
