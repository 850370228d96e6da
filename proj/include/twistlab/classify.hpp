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

#ifndef TWISTLAB_CLASSIFY_HPP_
#define TWISTLAB_CLASSIFY_HPP_

#include <optional>
#include <string>

#include "twistlab/exponent.hpp"
#include "twistlab/lfun.hpp"
#include "twistlab/operators.hpp"

namespace twistlab {

enum class TwistClassKind { kAMinusA0, kA0MinusA00, kA00 };

std::string to_string(TwistClassKind kind);

struct TwistClass {
  TwistClassKind kind = TwistClassKind::kAMinusA0;
  TwistFunction f0;
  // Coefficient of the standard-twist seed alpha x^{1/d}; absent when f0 is
  // not of that shape.
  std::optional<Real> alpha;
};

// Inspects f0 only; chain_apply must succeed on the chain.
TwistClass classify_chain(const Chain& chain, const LFunction& lf);

enum class PredictionKind { kEntire, kSimplePoleHalfline, kPolarHalfline };

std::string to_string(PredictionKind kind);

struct PolePoint {
  Exponent re;  // exact when every chain exponent is rational
  Real im;
};

struct AnalyticPrediction {
  PredictionKind kind = PredictionKind::kEntire;
  std::optional<PolePoint> s0;
  int pole_order = 0;
  Real halfline_imag{0};
  std::string strip_note;
  std::optional<PolePoint> unnormalized_s0;  // s0 + delta
};

AnalyticPrediction predict(const TwistClass& cls, const ChainAudit& audit, const LFunctionMeta& meta);

struct ComplexPoint {
  Real re;
  Real im;
};

// s* = (s + d k/2 - 1 + i d theta k) / (d k - 1); throws DomainError at d k = 1.
ComplexPoint dual_point(const ComplexPoint& s, const Rational& kappa0, const LFunctionMeta& meta);
ComplexPoint dual_point_inverse(const ComplexPoint& s_star, const Rational& kappa0,
                                const LFunctionMeta& meta);

struct DegreeTwoFamily {
  TwistFunction twist;
  bool in_a0 = false;
  Real beta;  // seed coefficient 2 (k^2 q_F)^{1/6} alpha
};

// Chain beta x^{1/2}, S(k x^2 + l x), T for a degree-2 L-function.
DegreeTwoFamily degree_two_family(std::int64_t k, std::int64_t l, const Real& alpha, const LFunction& lf);

}  // namespace twistlab

#endif  // TWISTLAB_CLASSIFY_HPP_
