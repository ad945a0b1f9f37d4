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

namespace finmono::cli {

struct SuiteConfig {
  std::optional<unsigned> rmax;
  unsigned mmax = 40;
  unsigned trials = 1000;
  std::uint64_t seed = 1;
  /// Name of a suite whose identity is deliberately perturbed.
  std::string fault;
};

struct IdentityResult {
  std::string suite;
  std::string identity;
  bool passed = false;
  std::string detail;
};

/// Known suites, in run order.
const std::vector<std::string>& suite_names();

/// Runs \p name ("all" for every suite). Throws std::invalid_argument on an unknown name.
std::vector<IdentityResult> run_suites(const std::string& name, const SuiteConfig& cfg);

}  // namespace finmono::cli
