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

#include "doctest.h"
#include "twistlab/errors.hpp"
#include "twistlab/gpseries.hpp"

using namespace twistlab;

namespace {

bool close(const Real& a, const Real& b, const char* tol = "1e-40") {
  return abs(a - b) <= Real(tol) * (abs(b) > 1 ? Real(abs(b)) : Real(1));
}

}  // namespace

TEST_CASE("sqrt of xi + 1 matches the binomial series") {
  GPSeries s({{Exponent(1), Real(1)}, {Exponent(0), Real(1)}});
  GPSeries r = series_pow(s, Exponent::ratio(1, 2), Exponent::ratio(-5, 2));
  REQUIRE(r.size() == 4);
  CHECK(r.terms()[0].exponent == Exponent::ratio(1, 2));
  CHECK(close(r.coefficient(Exponent::ratio(-1, 2)), Real(1) / 2));
  CHECK(close(r.coefficient(Exponent::ratio(-3, 2)), Real(-1) / 8));
  CHECK(close(r.coefficient(Exponent::ratio(-5, 2)), Real(1) / 16));
  CHECK(r.trunc_order() == Exponent::ratio(-5, 2));
}

TEST_CASE("truncated product keeps only the certified window") {
  GPSeries a({{Exponent(2), Real(1)}}, Exponent(0));
  GPSeries b({{Exponent(1), Real(3)}, {Exponent(0), Real(1)}});
  GPSeries p = a * b;
  // a is known for exponents >= 0, b exactly: the product is known down to 1.
  CHECK(p.trunc_order() == Exponent(1));
  CHECK(close(p.coefficient(Exponent(3)), Real(3)));
  CHECK(close(p.coefficient(Exponent(2)), Real(1)));
}

TEST_CASE("cancellation removes the term") {
  GPSeries a({{Exponent(1), Real(1)}, {Exponent(0), Real(2)}});
  GPSeries b({{Exponent(1), Real(-1)}});
  GPSeries s = a + b;
  CHECK(s.size() == 1);
  CHECK(s.leading().exponent == Exponent(0));
}

TEST_CASE("pow of a negative series to a fractional power is a domain error") {
  GPSeries a({{Exponent(1), Real(-1)}});
  CHECK_THROWS_AS(series_pow(a, Exponent::ratio(1, 2)), DomainError);
}

TEST_CASE("pow round trip") {
  GPSeries a({{Exponent(3), Real(2)}, {Exponent(1), Real(-5)}, {Exponent::ratio(1, 3), Real("0.25")}});
  Exponent order(-4);
  GPSeries r = series_pow(series_pow(a, Exponent::ratio(2, 7), order), Exponent::ratio(7, 2), order);
  // back to a, truncated at the window the inner power certified
  for (const auto& t : a.terms()) {
    if (t.exponent >= *r.trunc_order()) CHECK(close(r.coefficient(t.exponent), t.coeff, "1e-35"));
  }
  for (const auto& t : r.terms()) {
    CHECK(close(t.coeff, a.coefficient(t.exponent), "1e-35"));
  }
}

TEST_CASE("evaluation") {
  GPSeries a({{Exponent::ratio(1, 2), Real(2)}, {Exponent(0), Real(1)}});
  CHECK(close(series_eval(a, Real(4)), Real(5)));
  CHECK_THROWS_AS(series_eval(a, Real(0)), DomainError);
}
