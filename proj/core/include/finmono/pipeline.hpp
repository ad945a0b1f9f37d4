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

#include "finmono/bounds.hpp"
#include "finmono/frobcheck.hpp"
#include "finmono/sheaftrace.hpp"

namespace finmono {

enum class Criterion { Eigen, Trace };

struct ScanBudget {
  unsigned max_degree = 3;
  BigInt max_field_size = BigInt(1) << 20;
  BigInt max_points = BigInt(1) << 24;
  unsigned worker_count = 1;
};

enum class VerdictKind { Finite, Infinite, Inconclusive };

struct BoundUsed {
  std::string theorem;
  BoundValue N;
};

struct Witness {
  unsigned m = 0;
  std::uint64_t point = 0;
  std::string predicate;  ///< "trace_integral" or "eigen_unity"
  std::string detail;
  NormalizedTrace trace;
  std::optional<FrobData> frob;
};

struct Verdict {
  VerdictKind kind = VerdictKind::Inconclusive;
  std::optional<Witness> witness;
  unsigned checked_up_to = 0;
  std::optional<BoundUsed> bound_used;
};

struct DegreeStats {
  unsigned m = 0;
  std::uint64_t points = 0;
  std::uint64_t checked = 0;
  std::uint64_t violations = 0;
  bool complete = false;
  BigInt cost;
};

struct PointRow {
  unsigned m = 0;
  std::uint64_t point = 0;
  bool ok = false;
  NormalizedTrace trace;
};

struct ScanReport {
  std::string family;
  std::vector<std::pair<std::string, std::string>> params;
  Criterion criterion = Criterion::Eigen;
  ScanBudget budget;
  std::vector<DegreeStats> degrees;
  Verdict verdict;
  std::vector<std::string> notes;
  std::optional<std::string> error;
  std::optional<BigInt> M;
  double seconds = 0.0;
  std::vector<PointRow> rows;  ///< filled when requested
};

struct ScanOptions {
  Limits limits{};
  bool collect_rows = false;
  /// Chunk size for the worker pool; fixed so partitioning never depends on worker count.
  std::uint64_t chunk = 64;
};

namespace pipeline {

std::string to_string(Criterion c);
std::string to_string(VerdictKind k);
Criterion parse_criterion(const std::string& text);

/// The theorem bound the family supports for the criterion, if any.
std::optional<BoundUsed> theorem_bound(const SheafFamily& fam, Criterion criterion, const Limits& limits = {});

/// Largest field enumerated per point at degree m.
BigInt field_size(const SheafFamily& fam, unsigned m, Criterion criterion);

/// Summand evaluations for degree m: points * sum over the enumerated fields
/// of their enumeration size (q^(s k) for AS, (q^(s k) - 1)^(a+b-1) for Hyp,
/// one lookup per entry for tables).
BigInt cost_estimate(const SheafFamily& fam, unsigned m, Criterion criterion);

/// Checks one point; returns a witness when it violates the criterion.
std::optional<Witness> check_point(const SheafFamily& fam, Criterion criterion, unsigned m, std::uint64_t id,
                                   const Limits& limits = {});

ScanReport scan(const SheafFamily& fam, Criterion criterion, const ScanBudget& budget,
                const std::optional<BoundUsed>& bound, const ScanOptions& opts = {});

/// Bound-gated decision: scans as far as the budget allows toward the theorem bound.
ScanReport decide(const SheafFamily& fam, Criterion criterion, const ScanBudget& budget, const ScanOptions& opts = {});

std::string report_json(const ScanReport& rep, bool include_timing = true);
std::string report_csv(const ScanReport& rep);

}  // namespace pipeline
}  // namespace finmono
