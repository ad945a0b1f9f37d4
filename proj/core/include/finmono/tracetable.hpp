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

#include <filesystem>
#include <istream>
#include <string>

#include "finmono/sheaftrace.hpp"

namespace finmono::tracetable {

/// Header: conductor=<c> gauss_p=<p> [rank= q= ambient_n= C= c_X= f_ram= b1= e_breaks=]
/// Rows:   degree point_id exponent coord_0 ... coord_(phi(c)-1), coords as num/den.
/// Blank lines and lines starting with '#' are skipped.
TraceTable parse(std::istream& in);
TraceTable parse_string(const std::string& text);
TraceTable read_file(const std::filesystem::path& path);

/// Canonical text: header keys in fixed order, rows sorted by (degree, id).
std::string serialize(const TraceTable& table);

}  // namespace finmono::tracetable
