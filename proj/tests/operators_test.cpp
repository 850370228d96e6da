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
#include "twistlab/operators.hpp"

using namespace twistlab;

namespace {

bool close(const Real& a, const Real& b, const char* tol = "1e-35") {
  return abs(a - b) <= Real(tol) * (abs(b) > 1 ? Real(abs(b)) : Real(1));
}

TwistFunction twist(const char* s) { return parse_twist(s).twist; }

}  // namespace

TEST_CASE("dual of a cubic monomial in degree one") {
  LFunctionMeta meta = LFunctionMeta::synthetic(1, 1);
  TwistFunction g = dual_flat(twist("x^3"), meta);
  REQUIRE(g.terms().size() == 1);
  CHECK(g.leading().exponent == Exponent::ratio(3, 2));
  CHECK(close(g.leading().coeff, -2 * sqrt(Real(3)) / 9));
}

TEST_CASE("degree two dual of x + a sqrt(x) flips the linear term") {
  LFunctionMeta meta = LFunctionMeta::synthetic(2, 1);
  TwistFunction g = dual_flat(twist("3*x + 0.7*x^(1/2)"), meta);
  // closed form: the phase z^{1/2} - 2 pi (3 q z/xi + 0.7 sqrt(q z / xi)) with
  // q = (4 pi)^{-2} is quadratic in sqrt(z)
  CHECK(g.leading().exponent == Exponent(1));
  Real k(3), beta("0.7");
  CHECK(close(g.leading().coeff, -Real(1) / k));
  CHECK(close(g.coefficient(Exponent::ratio(1, 2)), beta / k));
}

TEST_CASE("sign rule for negative leading coefficient") {
  LFunctionMeta meta = LFunctionMeta::synthetic(1, 1);
  TwistFunction a = dual_flat(twist("-x^3 + x^2"), meta);
  TwistFunction b = -dual_flat(twist("x^3 - x^2"), meta);
  CHECK(twists_equal_mod_constant(a, b, 1e-40));
}

TEST_CASE("series dual agrees with the numeric probe") {
  LFunctionMeta meta = LFunctionMeta::synthetic(2, 37);
  TwistFunction f = twist("2*x^2 + 5*x + 0.7*x^(1/2)");
  GPSeries full = dual_series(f, meta, Exponent(-10));
  std::vector<Real> xs = {Real(1e6), Real(1e8)};
  auto probe = numeric_dual_probe(f, meta, xs);
  for (const auto& s : probe) {
    Real series = series_eval(full, s.xi);
    CHECK(abs(series - s.value) <= Real("1e-40") * abs(s.value));
  }
}

TEST_CASE("chain rejects a dual of a non-admissible twist") {
  LFunctionMeta meta = LFunctionMeta::synthetic(2, 1);
  Chain c{twist("x^(1/2)"), {DualStep{}}};
  try {
    chain_apply(c, meta);
    FAIL("expected AdmissibilityError");
  } catch (const AdmissibilityError& e) {
    CHECK(e.step() == 1);
    CHECK(e.ell() == doctest::Approx(0.5));
  }
}

TEST_CASE("shift polynomial rendering") {
  ShiftOp s({{2, 1}, {0, -3}, {1, -2}, {2, 1}});
  CHECK(s.render() == "2x^2 - 2x - 3");
  CHECK_THROWS_AS(ShiftOp({{0, 4}}), DomainError);
}
