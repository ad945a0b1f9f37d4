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

#include <random>
#include <set>

#include "finmono/errors.hpp"
#include "finmono/finitefield.hpp"

using namespace finmono;
using namespace finmono::finitefield;

namespace {

// Relative degree of x over its base, from the length of its Frobenius orbit.
unsigned orbit_length(const FieldLevel& f, std::uint64_t x, std::uint64_t q) {
  unsigned len = 1;
  for (std::uint64_t y = f.pow(x, q); y != x; y = f.pow(y, q)) ++len;
  return len;
}

std::vector<LevelPtr> towers(std::uint32_t p) {
  const auto fp = FieldLevel::prime_field(p);
  std::vector<LevelPtr> out{fp};
  for (unsigned a = 2; a <= 12; ++a) out.push_back(fp->extend(a));
  for (auto [a, b] : {std::pair{2u, 2u}, {2u, 3u}, {3u, 2u}, {2u, 6u}, {3u, 4u}, {4u, 3u}, {6u, 2u}}) {
    out.push_back(fp->extend(a)->extend(b));
  }
  out.push_back(fp->extend(2)->extend(3)->extend(2));
  return out;
}

}  // namespace

TEST_SUITE("finitefield") {

TEST_CASE("build_extension examples") {
  const auto f2 = FieldLevel::prime_field(2);
  CHECK(build_extension(f2, 1) == f2);
  const auto f9 = build_extension(FieldLevel::prime_field(3), 2);
  CHECK(f9->size() == 9);
  CHECK(dlog_table(f9).size() == 9);
  std::set<std::uint32_t> logs;
  for (std::uint64_t x = 1; x < 9; ++x) logs.insert(f9->dlog(x));
  CHECK(logs.size() == 8);
  const auto f729 = build_extension(f9, 3);
  CHECK(f729->size() == 729);
  CHECK(f729->absolute_degree() == 6);
  CHECK(f729->degree_over(*f9) == 3);
  CHECK_THROWS_AS(FieldLevel::prime_field(9), ParameterError);
  CHECK_THROWS_AS(f9->extend(0), ParameterError);
}

TEST_CASE("extensions are deterministic") {
  const auto a = FieldLevel::prime_field(5)->extend(3);
  const auto b = FieldLevel::prime_field(5)->extend(3);
  CHECK(a->defining_poly() == b->defining_poly());
  CHECK(a->chain() == b->chain());
  // x^2 + 1 is the first monic irreducible quadratic over F_3 in index order.
  CHECK(FieldLevel::prime_field(3)->extend(2)->defining_poly() == std::vector<std::uint64_t>{1, 0, 1});
}

TEST_CASE("defining polynomials are irreducible") {
  for (std::uint32_t p : {2u, 3u, 5u}) {
    for (const auto& f : towers(p)) {
      if (!f->base()) continue;
      // The class of x generates the level over its base iff the polynomial is irreducible.
      const std::uint64_t x = f->base()->size();
      CHECK(orbit_length(*f, x, f->base()->size()) == f->relative_degree());
      if (f->size() <= 729) {
        for (std::uint64_t a = 1; a < f->size(); ++a) {
          for (std::uint64_t b = 1; b < f->size(); ++b) REQUIRE(f->mul(a, b) != 0);
        }
      }
    }
  }
}

TEST_CASE("absolute trace") {
  const auto f = FieldLevel::prime_field(3)->extend(2)->extend(2);
  CHECK(absolute_trace(FFElem{f, 0}) == 0);
  CHECK(absolute_trace(FFElem{f, 1}) == 4 % 3);
  const auto g = FieldLevel::prime_field(5)->extend(5);
  CHECK(absolute_trace(FFElem{g, 1}) == 0);
  std::mt19937_64 rng(3);
  for (std::uint32_t p : {2u, 3u, 5u}) {
    for (const auto& lvl : towers(p)) {
      std::uniform_int_distribution<std::uint64_t> pick(0, lvl->size() - 1);
      for (int i = 0; i < 40; ++i) {
        const auto x = pick(rng);
        CHECK(lvl->absolute_trace(x) == lvl->absolute_trace_direct(x));
        CHECK(lvl->absolute_trace(lvl->frobenius(x)) == lvl->absolute_trace(x));
        const auto y = pick(rng);
        CHECK(lvl->absolute_trace(lvl->add(x, y)) == (lvl->absolute_trace(x) + lvl->absolute_trace(y)) % p);
      }
    }
  }
}

TEST_CASE("relative trace composes") {
  const auto base = FieldLevel::prime_field(2)->extend(3);
  const auto top = base->extend(4);
  std::mt19937_64 rng(4);
  std::uniform_int_distribution<std::uint64_t> pick(0, top->size() - 1);
  for (int i = 0; i < 200; ++i) {
    const auto x = pick(rng);
    const auto t = top->relative_trace(x);
    REQUIRE(t < base->size());
    CHECK(base->absolute_trace(t) == top->absolute_trace(x));
  }
}

TEST_CASE("enumerate") {
  const auto f3 = FieldLevel::prime_field(3);
  CHECK(std::ranges::distance(enumerate(f3, 100)) == 3);
  const auto f9 = f3->extend(2);
  CHECK(std::ranges::distance(enumerate(f9, 100)) == 9);
  std::uint64_t expect = 0;
  for (const auto& x : enumerate(f9->extend(2), 1000)) CHECK(x.index == expect++);
  CHECK(expect == 81);
  CHECK_THROWS_AS(enumerate(f9, 8), BudgetExceeded);
}

TEST_CASE("embed") {
  const auto f9 = FieldLevel::prime_field(3)->extend(2);
  const auto f729 = f9->extend(3);
  const FFElem x{f9, 5};
  CHECK(embed(x, f9) == x);
  const auto y = embed(x, f729);
  CHECK(y.level == f729);
  CHECK(y.index < f729->size());
  // Arithmetic and trace commute with the inclusion.
  for (std::uint64_t a = 0; a < 9; ++a) {
    for (std::uint64_t b = 0; b < 9; ++b) {
      CHECK(embed(FFElem{f9, f9->mul(a, b)}, f729).index == f729->mul(a, b));
    }
    CHECK(f729->absolute_trace(a) == (3 * f9->absolute_trace(a)) % 3);
    CHECK(orbit_length(*f729, a, 3) <= 2);
    CHECK(6 % orbit_length(*f729, a, 3) == 0);
  }
  const auto other = FieldLevel::prime_field(3)->extend(3);
  CHECK_THROWS_AS(embed(x, other), ParameterError);
}

TEST_CASE("dlog tables") {
  for (const auto& lvl : {FieldLevel::prime_field(7), FieldLevel::prime_field(2)->extend(8),
                          FieldLevel::prime_field(5)->extend(2)->extend(2)}) {
    const auto& log = dlog_table(lvl);
    const auto g = lvl->generator();
    CHECK(lvl->dlog(1) == 0);
    CHECK(lvl->dlog(g) == 1);
    std::set<std::uint32_t> seen;
    for (std::uint64_t x = 1; x < lvl->size(); ++x) {
      CHECK(lvl->pow(g, log[x]) == x);
      seen.insert(log[x]);
    }
    CHECK(seen.size() == lvl->size() - 1);
    CHECK(*seen.rbegin() == lvl->size() - 2);
    // Smallest generator in enumeration order.
    for (std::uint64_t h = 2; h < g; ++h) {
      std::uint64_t order = 1;
      for (std::uint64_t y = h; y != 1; y = lvl->mul(y, h)) ++order;
      CHECK(order < lvl->size() - 1);
    }
  }
  Limits small;
  small.max_table_size = 16;
  const auto big = FieldLevel::prime_field(3, small)->extend(3);
  CHECK_FALSE(big->has_tables());
  CHECK_THROWS_AS(dlog_table(big), BudgetExceeded);
  CHECK(big->mul(big->inv(5), 5) == 1);
}

TEST_CASE("additive character") {
  const auto f = FieldLevel::prime_field(5);
  CHECK(additive_char(FFElem{f, 0}) == CycNum::from_rational(5, 1));
  CycNum sum(5);
  for (const auto& x : enumerate(f, 10)) sum += additive_char(x);
  CHECK(sum.is_zero());
  const auto g = FieldLevel::prime_field(3)->extend(3);
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<std::uint64_t> pick(0, g->size() - 1);
  for (int i = 0; i < 200; ++i) {
    const auto a = pick(rng), b = pick(rng);
    CHECK(additive_char(FFElem{g, g->add(a, b)}) == additive_char(FFElem{g, a}) * additive_char(FFElem{g, b}));
  }
}

TEST_CASE("multiplicative characters") {
  const auto f7 = FieldLevel::prime_field(7);
  CHECK(mult_char(1, 6, FFElem{f7, 1}) == CycNum::from_rational(6, 1));
  for (std::uint64_t x = 1; x < 7; ++x) {
    const long euler = f7->pow(x, 3) == 1 ? 1 : -1;
    CHECK(mult_char(1, 2, FFElem{f7, x}) == CycNum::from_rational(2, euler));
  }
  const auto f9 = FieldLevel::prime_field(3)->extend(2);
  for (unsigned order : {2u, 4u, 8u}) {
    for (unsigned j = 1; j < order; ++j) {
      CycNum sum(order);
      for (std::uint64_t x = 1; x < 9; ++x) {
        sum += mult_char(j, order, FFElem{f9, x});
        for (std::uint64_t y = 1; y < 9; ++y) {
          CHECK(mult_char(j, order, FFElem{f9, f9->mul(x, y)}) ==
                mult_char(j, order, FFElem{f9, x}) * mult_char(j, order, FFElem{f9, y}));
        }
      }
      CHECK(sum.is_zero());
    }
  }
  CHECK(mult_char(3, 8, FFElem{f9, f9->generator()}) == CycNum::zeta_power(8, 3));
  CHECK_THROWS_AS(mult_char(1, 3, FFElem{f9, 1}), ParameterError);
  CHECK_THROWS_AS(mult_char(1, 2, FFElem{f9, 0}), ParameterError);
}

TEST_CASE("norm lands in the subfield") {
  const auto f9 = FieldLevel::prime_field(3)->extend(2);
  const auto f81 = f9->extend(2);
  for (std::uint64_t x = 1; x < 81; ++x) {
    const auto n = f81->norm_to(*f9, x);
    REQUIRE(n < 9);
    CHECK(n == f81->mul(x, f81->pow(x, 9)));
  }
}

}
