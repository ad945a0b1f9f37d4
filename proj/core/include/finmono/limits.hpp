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

namespace finmono {

/// Resource caps shared by the field tables and the bound evaluator.
///
/// Both caps derive from one memory figure so that a single environment
/// variable (FINMONO_MAX_MEMORY, bytes, optional K/M/G suffix) can tighten
/// or relax them together.
struct Limits {
  /// Largest field level that gets log/antilog/trace tables.
  std::uint64_t max_table_size = std::uint64_t{1} << 22;
  /// Largest bit size allowed when materialising A_n^(M-1) C^M.
  std::uint64_t max_bound_bits = 2048;

  static Limits from_memory(std::uint64_t bytes);
  /// Reads FINMONO_MAX_MEMORY; falls back to the defaults when unset.
  static Limits from_env();
};

}  // namespace finmono
