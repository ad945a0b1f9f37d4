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
#include "finmono/tracetable.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "finmono/errors.hpp"

namespace finmono::tracetable {

namespace {

[[noreturn]] void fail(std::size_t line, const std::string& what) {
  throw TableFormatError("trace table line " + std::to_string(line) + ": " + what);
}

template <typename T>
T parse_uint(std::string_view s, std::size_t line, const char* field) {
  T out{};
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  if (ec != std::errc() || ptr != s.data() + s.size()) fail(line, std::string("bad ") + field + " '" + std::string(s) + "'");
  return out;
}

std::vector<std::string> split(const std::string& line) {
  std::istringstream ss(line);
  std::vector<std::string> out;
  for (std::string tok; ss >> tok;) out.push_back(tok);
  return out;
}

void parse_header(const std::vector<std::string>& tokens, std::size_t line, TraceTable& t) {
  bool have_conductor = false, have_p = false;
  std::vector<std::string> seen;
  for (const auto& tok : tokens) {
    const auto eq = tok.find('=');
    if (eq == std::string::npos) fail(line, "header token '" + tok + "' is not key=value");
    const std::string key = tok.substr(0, eq);
    const std::string val = tok.substr(eq + 1);
    for (const auto& s : seen) {
      if (s == key) fail(line, "duplicate header key '" + key + "'");
    }
    seen.push_back(key);
    try {
      if (key == "conductor") {
        t.conductor = parse_uint<unsigned>(val, line, "conductor");
        have_conductor = true;
      } else if (key == "gauss_p") {
        t.gauss_p = parse_uint<std::uint32_t>(val, line, "gauss_p");
        have_p = true;
      } else if (key == "rank") {
        t.meta.rank = parse_uint<unsigned>(val, line, "rank");
      } else if (key == "q") {
        t.meta.q = arith::parse_integer(val);
      } else if (key == "ambient_n") {
        t.meta.ambient_n = parse_uint<unsigned>(val, line, "ambient_n");
      } else if (key == "C") {
        t.meta.C = arith::parse_integer(val);
      } else if (key == "c_X") {
        t.meta.c_X = arith::parse_integer(val);
      } else if (key == "f_ram") {
        t.meta.f_ram = parse_uint<unsigned>(val, line, "f_ram");
      } else if (key == "b1") {
        t.meta.b1 = arith::parse_integer(val);
      } else if (key == "e_breaks") {
        t.meta.e_breaks = arith::parse_rational(val);
      } else {
        fail(line, "unknown header key '" + key + "'");
      }
    } catch (const ParameterError& e) {
      fail(line, e.what());
    }
  }
  if (!have_conductor || !have_p) fail(line, "header must declare conductor= and gauss_p=");
  if (t.conductor == 0) fail(line, "conductor must be positive");
  if (!arith::is_prime(t.gauss_p)) fail(line, "gauss_p must be prime");
  if (t.meta.rank && *t.meta.rank == 0) fail(line, "rank must be positive");
}

}  // namespace

TraceTable parse(std::istream& in) {
  TraceTable t;
  bool header = false;
  std::size_t width = 0;
  std::size_t lineno = 0;
  for (std::string line; std::getline(in, line);) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto tokens = split(line);
    if (tokens.empty() || tokens[0][0] == '#') continue;
    if (!header) {
      parse_header(tokens, lineno, t);
      width = arith::euler_phi(t.conductor);
      header = true;
      continue;
    }
    if (tokens.size() != 3 + width) {
      fail(lineno, "expected " + std::to_string(3 + width) + " fields, found " + std::to_string(tokens.size()));
    }
    const auto degree = parse_uint<unsigned>(tokens[0], lineno, "degree");
    const auto id = parse_uint<std::uint64_t>(tokens[1], lineno, "point id");
    const auto exponent = parse_uint<unsigned>(tokens[2], lineno, "exponent");
    if (degree == 0) fail(lineno, "degree must be >= 1");
    std::vector<BigRat> coords;
    coords.reserve(width);
    for (std::size_t i = 0; i < width; ++i) {
      try {
        coords.push_back(arith::parse_rational(tokens[3 + i]));
      } catch (const ParameterError& e) {
        fail(lineno, e.what());
      }
    }
    NormalizedTrace tr{CycNum::from_coords(t.conductor, std::move(coords)), exponent};
    if (!t.entries.emplace(std::pair{degree, id}, std::move(tr)).second) {
      fail(lineno, "duplicate entry for degree " + std::to_string(degree) + ", point " + std::to_string(id));
    }
  }
  if (!header) throw TableFormatError("trace table: missing header line");
  return t;
}

TraceTable parse_string(const std::string& text) {
  std::istringstream in(text);
  return parse(in);
}

TraceTable read_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw TableFormatError("cannot open trace table '" + path.string() + "'");
  return parse(in);
}

std::string serialize(const TraceTable& t) {
  std::ostringstream out;
  out << "conductor=" << t.conductor << " gauss_p=" << t.gauss_p;
  const auto& m = t.meta;
  if (m.rank) out << " rank=" << *m.rank;
  if (m.q) out << " q=" << m.q->get_str();
  if (m.ambient_n) out << " ambient_n=" << *m.ambient_n;
  if (m.C) out << " C=" << m.C->get_str();
  if (m.c_X) out << " c_X=" << m.c_X->get_str();
  if (m.f_ram) out << " f_ram=" << *m.f_ram;
  if (m.b1) out << " b1=" << m.b1->get_str();
  if (m.e_breaks) out << " e_breaks=" << arith::to_fraction_string(*m.e_breaks);
  out << '\n';
  for (const auto& [key, tr] : t.entries) {
    out << key.first << ' ' << key.second << ' ' << tr.gauss_exponent;
    const CycNum num = tr.numerator.conductor() == t.conductor ? tr.numerator : tr.numerator.lift(t.conductor);
    for (const auto& c : num.coords()) out << ' ' << arith::to_fraction_string(c);
    out << '\n';
  }
  return out.str();
}

}  // namespace finmono::tracetable
