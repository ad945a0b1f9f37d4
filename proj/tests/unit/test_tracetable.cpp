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
#include <doctest.h>

#include "finmono/errors.hpp"
#include "finmono/tracetable.hpp"

using namespace finmono;

namespace {

std::string data(const char* name) { return std::string(FINMONO_TEST_DATA) + "/" + name; }

}  // namespace

TEST_SUITE("tracetable") {

TEST_CASE("parse a table") {
  const auto t = tracetable::parse_string(
      "# comment\n"
      "\n"
      "conductor=3 gauss_p=3 rank=1 q=9 b1=0 e_breaks=1/2\n"
      "1 0 1 -1/1 -2/1\n"
      "1 1 0 2/4 0\n");
  CHECK(t.conductor == 3);
  CHECK(t.gauss_p == 3);
  CHECK(*t.meta.rank == 1);
  CHECK(*t.meta.q == 9);
  CHECK(*t.meta.e_breaks == BigRat(1, 2));
  CHECK(t.entries.size() == 2);
  CHECK(t.at(1, 0).numerator == cyclotomic::quadratic_gauss_sum(3));
  CHECK(t.at(1, 0).gauss_exponent == 1);
  CHECK(t.at(1, 1).numerator == CycNum::from_rational(3, BigRat(1, 2)));
}

TEST_CASE("round trip is the identity") {
  for (const char* name : {"planted_bad.tbl", "finite_rank1.tbl", "eigen_pair.tbl"}) {
    const auto t = tracetable::read_file(data(name));
    const auto text = tracetable::serialize(t);
    const auto back = tracetable::parse_string(text);
    CHECK(back == t);
    CHECK(tracetable::serialize(back) == text);
  }
  TraceTable t;
  t.conductor = 12;
  t.gauss_p = 3;
  t.meta.C = BigInt("123456789012345678901234567890");
  t.meta.ambient_n = 2;
  t.meta.c_X = 4;
  t.meta.f_ram = 2;
  t.entries[{3, 17}] = NormalizedTrace{CycNum::zeta_power(12, 5) * BigRat(-7, 9), 4};
  CHECK(tracetable::parse_string(tracetable::serialize(t)) == t);
}

TEST_CASE("malformed tables") {
  auto bad = [](const std::string& text, const std::string& needle) {
    try {
      tracetable::parse_string(text);
    } catch (const TableFormatError& e) {
      CHECK_MESSAGE(std::string(e.what()).find(needle) != std::string::npos, e.what());
      return;
    }
    FAIL("no error for: " << text);
  };
  bad("", "missing header");
  bad("# only a comment\n", "missing header");
  bad("conductor=3\n", "gauss_p");
  bad("conductor=3 gauss_p=4\n", "prime");
  bad("conductor=3 gauss_p=3 colour=red\n", "unknown header key");
  bad("conductor=3 gauss_p=3 conductor=4\n", "duplicate header key");
  bad("conductor=3 gauss_p=3\n1 0 0 1/1\n", "line 2");
  bad("conductor=3 gauss_p=3\n1 0 0 1/0 0/1\n", "zero denominator");
  bad("conductor=3 gauss_p=3\n0 0 0 1/1 0/1\n", "degree");
  bad("conductor=3 gauss_p=3\n1 0 0 1/1 0/1\n1 0 0 1/1 0/1\n", "duplicate entry");
  bad("conductor=3 gauss_p=3\n1 x 0 1/1 0/1\n", "point id");
  CHECK_THROWS_AS(tracetable::read_file(data("no_such_file.tbl")), TableFormatError);
}

TEST_CASE("missing entries name the point") {
  const auto t = tracetable::read_file(data("planted_bad.tbl"));
  try {
    (void)t.at(2, 7);
    FAIL("expected an error");
  } catch (const TableFormatError& e) {
    CHECK(std::string(e.what()).find("degree 2, point 7") != std::string::npos);
  }
}

}
