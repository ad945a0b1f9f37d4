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

#include <stdexcept>
#include <string>

namespace finmono {

/// Invalid or inconsistent input parameters (bad prime, mismatched conductors, ...).
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A field, table or digit budget would be exceeded.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Division by an exact zero in a field.
class DivisionByZero : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Malformed or incomplete trace-table input.
class TableFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace finmono
