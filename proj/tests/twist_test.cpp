/*
 * Copyright 2026 The Twistlab Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <random>

#include "doctest.h"
#include "twistlab/errors.hpp"
#include "twistlab/twist.hpp"

using namespace twistlab;

TEST_CASE("parse canonical terms") {
  ParsedTwist p = parse_twist("1.5*x^(2/3) + 0.25*x^(1/6)");
  REQUIRE(p.twist.terms().size() == 2);
  CHECK(p.twist.terms()[0].exponent == Exponent::ratio(2, 3));
  CHECK(p.twist.terms()[0].coeff == Real("1.5"));
  CHECK(p.twist.terms()[1].exponent == Exponent::ratio(1, 6));
  CHECK(p.twist.terms()[1].coeff == Real("0.25"));

  ParsedTwist q = parse_twist("-x^2 + 3*x");
  REQUIRE(q.twist.terms().size() == 2);
  CHECK(q.twist.terms()[0].coeff == -1);
  CHECK(q.twist.terms()[1].exponent == Exponent(1));
  CHECK(q.twist.terms()[1].coeff == 3);
}

TEST_CASE("cancellation yields the flagged zero twist") {
  ParsedTwist p = parse_twist("x^(1/2) - x^(1/2)");
  CHECK(p.twist.is_zero());
  CHECK(p.cancelled_to_zero);
  CHECK(lexp(p.twist) == Exponent(0));
}

TEST_CASE("syntax errors report positions") {
  CHECK_THROWS_AS(parse_twist("3x"), ParseError);
  CHECK_THROWS_AS(parse_twist("x^(-1/2)"), ParseError);
  CHECK_THROWS_AS(parse_twist("x^(1/0)"), ParseError);
  try {
    parse_twist("x + * 2");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.position() == 4);
  }
}

TEST_CASE("leading exponent") {
  CHECK(lexp(parse_twist("x^2 + x^(1/2)").twist) == Exponent(2));
  CHECK(lexp(parse_twist("0.3*x^(1/3)").twist) == Exponent::ratio(1, 3));
}

TEST_CASE("flat part drops negative exponents") {
  GPSeries s({{Exponent::ratio(2, 3), Real(1)}, {Exponent(0), Real(5)}, {Exponent::ratio(-1, 3), Real(3)}});
  TwistFunction f = flat_part(s);
  REQUIRE(f.terms().size() == 2);
  CHECK(f.coefficient(0) == 5);
  CHECK(flat_part(GPSeries({{Exponent(-1), Real(2)}})).is_zero());
  CHECK(flat_part(f.series()).render() == f.render());
}

TEST_CASE("render and parse round trip exactly") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    std::vector<Term> terms;
    int n = 1 + static_cast<int>(rng() % 4);
    for (int j = 0; j < n; ++j) {
      Exponent e = Exponent::ratio(static_cast<long long>(rng() % 13), 1 + static_cast<long long>(rng() % 6));
      Real c = Real(static_cast<double>(static_cast<std::int64_t>(rng() % 2001) - 1000)) / 7;
      terms.push_back({e, c});
    }
    TwistFunction f{GPSeries(terms)};
    TwistFunction g = parse_twist(f.render()).twist;
    REQUIRE(g.terms().size() == f.terms().size());
    for (std::size_t j = 0; j < f.terms().size(); ++j) {
      CHECK(g.terms()[j].exponent == f.terms()[j].exponent);
      CHECK(g.terms()[j].coeff == f.terms()[j].coeff);
    }
    CHECK(g.render() == f.render());
  }
}
