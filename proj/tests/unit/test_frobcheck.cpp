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

#include "finmono/bounds.hpp"
#include "finmono/errors.hpp"
#include "finmono/frobcheck.hpp"
#include "finmono/tracetable.hpp"

using namespace finmono;
using namespace finmono::frobcheck;

namespace {

CycNum q(unsigned c, long n, long d = 1) { return CycNum::from_rational(c, BigRat(n, d)); }

CycPoly linear(const CycNum& root) {
  const unsigned c = root.conductor();
  return CycPoly(c, {-root, q(c, 1)});
}

TableFamily table(const char* name) {
  return TableFamily{std::make_shared<const TraceTable>(
      tracetable::read_file(std::string(FINMONO_TEST_DATA) + "/" + name))};
}

}  // namespace

TEST_SUITE("frobcheck") {

TEST_CASE("newton_char_poly examples") {
  const std::vector<CycNum> one{q(5, 3)};
  CHECK(newton_char_poly(one) == linear(q(5, 3)));
  const std::vector<CycNum> two{q(1, 0), q(1, -2)};
  CHECK(newton_char_poly(two) == CycPoly(1, {q(1, 1), q(1, 0), q(1, 1)}));
  const std::vector<CycNum> three{q(1, 3), q(1, 3), q(1, 3)};
  const auto x1 = linear(q(1, 1));
  CHECK(newton_char_poly(three) == x1 * x1 * x1);
}

TEST_CASE("power sums round trip through Newton identities") {
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<int> count(1, 4), expo(0, 11);
  for (int trial = 0; trial < 100; ++trial) {
    const int r = count(rng);
    std::vector<CycNum> roots;
    for (int i = 0; i < r; ++i) roots.push_back(CycNum::zeta_power(12, expo(rng)));
    std::vector<CycNum> sums;
    for (int k = 1; k <= r; ++k) {
      CycNum s(12);
      for (const auto& a : roots) s += a.pow(unsigned(k));
      sums.push_back(s);
    }
    CHECK(newton_char_poly(sums) == CycPoly::from_roots(12, roots));
  }
}

TEST_CASE("check_eigen_unity") {
  CHECK(check_eigen_unity(linear(CycNum::zeta_power(3, 2)), 12, 3));
  CHECK_FALSE(check_eigen_unity(linear(q(1, 2)), 12, 3));
  const CycPoly phi12(1, {q(1, 1), q(1, -1), q(1, 1)});
  CHECK(check_eigen_unity(phi12 * phi12, 12, 5));
  CHECK_FALSE(check_eigen_unity(linear(CycNum::zeta_power(5, 1)), 12, 5));
  // Unit-modulus but not integral: (3 + 4i) / 5.
  CHECK_FALSE(check_eigen_unity(linear(q(4, 3, 5) + CycNum::zeta_power(4, 1) * BigRat(4, 5)), 1200, 5));
}

TEST_CASE("check_trace_integral") {
  const auto g = cyclotomic::quadratic_gauss_sum(3);
  const auto L = sheaftrace::point_level(ASFamily{3, 2}, 1);
  CHECK(check_trace_integral(sheaftrace::trace_as(ASFamily{3, 2}, 1, FFElem{L, 1}), 3));
  CHECK_FALSE(check_trace_integral(NormalizedTrace{q(3, 1), 1}, 3));
  CHECK(check_trace_integral(NormalizedTrace{g * CycNum::zeta_power(3, 1), 1}, 3));
  CHECK(check_trace_integral(NormalizedTrace{q(4, 9), 3}, 3));
  CHECK_FALSE(check_trace_integral(NormalizedTrace{q(4, 3), 3}, 3));
  CHECK_FALSE(check_trace_integral(NormalizedTrace{q(1, 1, 2), 0}, 3));
}

TEST_CASE("trace integrality is invariant under zeta_p") {
  std::mt19937_64 rng(32);
  std::uniform_int_distribution<long> coord(-5, 5), den(1, 3);
  std::uniform_int_distribution<unsigned> expo(0, 3), shift(0, 4);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<BigRat> coords;
    for (int i = 0; i < 4; ++i) coords.emplace_back(coord(rng) * (den(rng) == 3 ? 5 : 1), den(rng) == 3 ? 5 : 1);
    for (auto& c : coords) c.canonicalize();
    const auto a = CycNum::from_coords(5, coords);
    const unsigned k = expo(rng);
    const bool base = check_trace_integral(NormalizedTrace{a, k}, 5);
    CHECK(check_trace_integral(NormalizedTrace{a * CycNum::zeta_power(5, shift(rng)), k}, 5) == base);
  }
}

TEST_CASE("Frobenius data for Artin-Schreier points") {
  const SheafFamily fam = ASFamily{3, 2};
  const auto t1 = frobenius_char_poly(fam, 1, 1);
  CHECK(t1.trace_integral);
  CHECK(t1.eigen_unity);
  CHECK(t1.char_poly == linear(CycNum::zeta_power(3, 2)));
  const auto t0 = frobenius_char_poly(fam, 1, 0);
  CHECK(t0.char_poly == linear(q(3, 1)));
  CHECK(t0.power_sums.size() == 1);
}

TEST_CASE("Frobenius data from a table") {
  const auto d = frobenius_char_poly(table("eigen_pair.tbl"), 1, 0);
  CHECK(d.char_poly == CycPoly(1, {q(1, 1), q(1, 0), q(1, 1)}));
  CHECK(d.eigen_unity);
  const auto bad = frobenius_char_poly(table("planted_bad.tbl"), 1, 1);
  CHECK_FALSE(bad.trace_integral);
  CHECK_FALSE(bad.eigen_unity);
}

TEST_CASE("purity and determinant of passing Frobenius data") {
  for (unsigned n : {2u, 4u}) {
    const SheafFamily fam = ASFamily{3, n};
    const auto M = bounds::m_lcm(3, n - 1).get_ui();
    for (unsigned m = 1; m <= 2; ++m) {
      const auto count = sheaftrace::point_count(fam, m);
      for (std::uint64_t t = 0; t < count; ++t) {
        const auto d = frobenius_char_poly(fam, m, t);
        CHECK(d.char_poly.degree() == int(n - 1));
        CHECK(d.char_poly.is_monic());
        if (!d.eigen_unity) continue;
        auto c0 = d.char_poly.coeffs().front();
        for (const auto& e : cyclotomic::complex_embeddings(c0, 10)) CHECK(std::abs(std::abs(e.value) - 1.0) < 1e-8);
        if (n % 2 == 0) c0 = -c0;
        CHECK(cyclotomic::divides_unity_pow(linear(c0), M));
      }
    }
  }
}

TEST_CASE("Eisenstein numbers") {
  const auto third = EisensteinNum::rational(3, 2, BigRat(1, 3));
  CHECK(third.valuation() == -1);
  CHECK_FALSE(third.is_integral());
  const auto pi = EisensteinNum::from_coords(3, {0, 1});
  CHECK(pi.valuation() == BigRat(1, 2));
  CHECK(pi.pow(2).to_string() == "3/1");
  CHECK((pi * pi - EisensteinNum::rational(3, 2, 3)).is_zero());
  CHECK(third.to_string() == "1/3");
  CHECK((-third).to_string() == "-1/3");
}

TEST_CASE("Newton polygon slopes") {
  // 1 - 3T^2, both reciprocal roots of valuation 1/2
  const std::vector<std::optional<BigRat>> v{BigRat(0), std::nullopt, BigRat(1)};
  const auto s = newton_polygon_slopes(v);
  REQUIRE(s.size() == 2);
  CHECK(s[0] == BigRat(1, 2));
  CHECK(s[1] == BigRat(1, 2));
  const std::vector<std::optional<BigRat>> w{BigRat(1), std::nullopt, BigRat(0)};
  CHECK(newton_polygon_slopes(w) == std::vector<BigRat>{BigRat(-1, 2), BigRat(-1, 2)});
  const std::vector<std::optional<BigRat>> u{BigRat(0), BigRat(0), BigRat(2)};
  CHECK(newton_polygon_slopes(u) == std::vector<BigRat>{BigRat(0), BigRat(2)});
}

TEST_CASE("power sum integrality oracle") {
  for (auto [r, e, p] : {std::tuple{2u, 1u, 3u}, {2u, 2u, 3u}, {3u, 1u, 2u}, {4u, 3u, 2u}}) {
    const auto rep = power_sum_integrality_oracle(r, e, p, 300, 7);
    CHECK(rep.N == bounds::n_power_sums(r, e, p));
    CHECK(rep.passed());
    CHECK(rep.counterexamples == 0);
    CHECK(rep.newton_polygon_consistent);
    CHECK(rep.trials == 300);
  }
  const auto two = power_sum_integrality_oracle(2, 1, 3, 100);
  REQUIRE(two.witness.has_value());
  CHECK(*two.witness == std::vector<std::string>{"1/3", "-1/3"});
  CHECK(two.witness_k == 1);
  CHECK_FALSE(power_sum_integrality_oracle(1, 1, 3, 50).witness.has_value());
  // Checking fewer sums than the bound admits counterexamples.
  CHECK_FALSE(power_sum_integrality_oracle(2, 1, 3, 300, 7, 1).passed());
}

}
