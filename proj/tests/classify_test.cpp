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
#include "twistlab/classify.hpp"
#include "twistlab/cli.hpp"
#include "twistlab/errors.hpp"

using namespace twistlab;

namespace {

Chain chain(const std::string& f0, const std::string& dsl) {
  return Chain{parse_twist(f0).twist, parse_chain_dsl(dsl)};
}

AnalyticPrediction prediction(const Chain& ch, const LFunction& lf, TwistClass* cls = nullptr) {
  auto [f, audit] = chain_apply(ch, lf.meta);
  TwistClass c = classify_chain(ch, lf);
  if (cls) *cls = c;
  return predict(c, audit, lf.meta);
}

}  // namespace

TEST_CASE("dual point inverse undoes the dual point") {
  std::mt19937_64 rng(11);
  LFunctionMeta meta = LFunctionMeta::synthetic(2, 37);
  meta.theta = Real("0.25");
  for (int i = 0; i < 50; ++i) {
    ComplexPoint s{Real(static_cast<double>(rng() % 1000) / 250 - 2), Real(static_cast<double>(rng() % 1000) / 100)};
    Rational kappa0(1 + static_cast<long long>(rng() % 9), 1 + static_cast<long long>(rng() % 4));
    if (kappa0 * 2 == 1) continue;
    ComplexPoint back = dual_point_inverse(dual_point(s, kappa0, meta), kappa0, meta);
    CHECK(abs(back.re - s.re) < Real("1e-40"));
    CHECK(abs(back.im - s.im) < Real("1e-40"));
  }
  CHECK_THROWS_AS(dual_point({Real(1), Real(0)}, Rational(1, 2), meta), DomainError);
}

TEST_CASE("resonant degree-two chain on ec37a") {
  LFunction ec = registry("ec37a");
  TwistClass cls;
  auto p = prediction(chain("0.328797974610714577783766715957*x^(1/2)", "S(x^2) T"), ec, &cls);
  CHECK(cls.kind == TwistClassKind::kA0MinusA00);
  CHECK(p.kind == PredictionKind::kSimplePoleHalfline);
  REQUIRE(p.s0);
  CHECK(p.s0->re.rational() == Rational(7, 12));
  CHECK(p.unnormalized_s0->re.rational() == Rational(13, 12));
}

TEST_CASE("non-spectral seed gives an entire twist") {
  LFunction ec = registry("ec37a");
  TwistClass cls;
  auto p = prediction(chain("0.3*x^(1/2)", "S(x^2) T"), ec, &cls);
  CHECK(cls.kind == TwistClassKind::kAMinusA0);
  CHECK(p.kind == PredictionKind::kEntire);
  CHECK_FALSE(p.s0);
}

TEST_CASE("zero seed on a polar function") {
  LFunction z2 = registry("zeta2");
  TwistClass cls;
  auto p = prediction(chain("0", "S(x^2) T"), z2, &cls);
  CHECK(cls.kind == TwistClassKind::kA00);
  CHECK(p.kind == PredictionKind::kPolarHalfline);
  CHECK(p.pole_order == 2);
  CHECK(p.s0->re.rational() == Rational(2, 3));

  LFunction z = registry("zeta");
  auto p1 = prediction(chain("0", "S(x^3) T"), z);
  CHECK(p1.pole_order == 1);
  CHECK(p1.s0->re.rational() == Rational(3, 4));
}

TEST_CASE("zero seed on an entire function is not spectral") {
  LFunction delta = registry("delta");
  TwistClass cls;
  auto p = prediction(chain("0", "S(x^2) T"), delta, &cls);
  CHECK(cls.kind == TwistClassKind::kAMinusA0);
  CHECK(p.kind == PredictionKind::kEntire);
}

TEST_CASE("seed of the wrong exponent is outside the standard family") {
  LFunction ec = registry("ec37a");
  TwistClass cls;
  prediction(chain("0.328797974610714577783766715957*x^(1/3)", "S(x^2) T"), ec, &cls);
  CHECK(cls.kind == TwistClassKind::kAMinusA0);
  CHECK_FALSE(cls.alpha);
}

TEST_CASE("degree-two family seed and leading coefficient") {
  LFunction ec = registry("ec37a");
  Real alpha = pow(Real(37), Real(-2) / 3);
  DegreeTwoFamily r = degree_two_family(1, 0, alpha, ec);
  CHECK(r.in_a0);
  CHECK(abs(r.beta - 2 / sqrt(Real(37))) < Real("1e-45"));
  Real a = Real(3) / (2 * cbrt(Real(2738)));
  CHECK(abs(abs(r.twist.coefficient(Exponent::ratio(2, 3))) - a) < Real("1e-40"));
  CHECK_FALSE(degree_two_family(1, 0, pow(Real(37), Real(-20) / 31), ec).in_a0);
}
