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
#include "finmono/limits.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <string>

#include "finmono/errors.hpp"

namespace finmono {

Limits Limits::from_memory(std::uint64_t bytes) {
  Limits out;
  // log, antilog, trace and trace-by-log tables cost 16 bytes per element.
  out.max_table_size = std::max<std::uint64_t>(bytes / 16, 64);
  out.max_bound_bits = std::max<std::uint64_t>(bytes / 32768, 64);
  return out;
}

Limits Limits::from_env() {
  const char* raw = std::getenv("FINMONO_MAX_MEMORY");
  if (raw == nullptr || *raw == '\0') return Limits{};
  std::string text(raw);
  std::uint64_t scale = 1;
  switch (std::toupper(static_cast<unsigned char>(text.back()))) {
    case 'K': scale = 1ULL << 10; text.pop_back(); break;
    case 'M': scale = 1ULL << 20; text.pop_back(); break;
    case 'G': scale = 1ULL << 30; text.pop_back(); break;
    default: break;
  }
  if (text.empty() || !std::all_of(text.begin(), text.end(), [](unsigned char c) { return std::isdigit(c); })) {
    throw ParameterError("FINMONO_MAX_MEMORY must be a byte count with optional K/M/G suffix");
  }
  return from_memory(std::stoull(text) * scale);
}

}  // namespace finmono
