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

#include "twistlab/classify.hpp"

#include "twistlab/errors.hpp"

namespace twistlab {

std::string to_string(TwistClassKind kind) {
  switch (kind) {
    case TwistClassKind::kAMinusA0: return "A_minus_A0";
    case TwistClassKind::kA0MinusA00: return "A0_minus_A00";
    case TwistClassKind::kA00: return "A00";
  }
  return "unknown";
}

std::string to_string(PredictionKind kind) {
  switch (kind) {
    case PredictionKind::kEntire: return "entire";
    case PredictionKind::kSimplePoleHalfline: return "simple_pole_halfline";
    case PredictionKind::kPolarHalfline: return "polar_halfline";
  }
  return "unknown";
}

TwistClass classify_chain(const Chain& chain, const LFunction& lf) {
  chain_apply(chain, lf.meta);  // admissibility

  TwistClass cls;
  cls.f0 = chain.f0;
  const Exponent inv_d = Exponent(Rational(1) / lf.meta.degree);
  if (chain.f0.is_zero()) {
    cls.alpha = Real(0);
  } else if (chain.f0.terms().size() == 1 && chain.f0.leading().exponent.is_exact() &&
             chain.f0.leading().exponent == inv_d) {
    cls.alpha = chain.f0.leading().coeff;
  }
  if (cls.alpha && spec_star_membership(lf, *cls.alpha)) {
    cls.kind = *cls.alpha == 0 ? TwistClassKind::kA00 : TwistClassKind::kA0MinusA00;
  }
  return cls;
}

AnalyticPrediction predict(const TwistClass& cls, const ChainAudit& audit, const LFunctionMeta& meta) {
  AnalyticPrediction out;
  if (cls.kind == TwistClassKind::kAMinusA0) {
    out.kind = PredictionKind::kEntire;
    out.strip_note = "F(s;f) is entire";
    return out;
  }
  const Exponent d(meta.degree);
  const Exponent& big_d = audit.d_invariant;
  const Exponent half = Exponent::ratio(1, 2);
  PolePoint s0;
  if (cls.kind == TwistClassKind::kA0MinusA00) {
    out.kind = PredictionKind::kSimplePoleHalfline;
    out.pole_order = 1;
    s0.re = half + Exponent(1) / (Exponent(2) * d * big_d);
    s0.im = -meta.theta;
  } else {
    out.kind = PredictionKind::kPolarHalfline;
    out.pole_order = meta.polar_order;
    const Real sign = audit.weight % 2 == 0 ? Real(1) : Real(-1);
    s0.re = half + Exponent(1) / (Exponent(2) * big_d);
    s0.im = meta.theta * (sign / big_d.to_real() - 1);
  }
  out.halfline_imag = s0.im;
  out.s0 = s0;
  out.unnormalized_s0 = PolePoint{s0.re + Exponent(meta.normalization_shift), s0.im};
  out.strip_note = "poles of F(s;f) lie in a horizontal strip |t| <= T0(F) and have order <= " +
                   std::to_string(std::max(1, meta.polar_order)) + "; T0(F) is not computed";
  return out;
}

ComplexPoint dual_point(const ComplexPoint& s, const Rational& kappa0, const LFunctionMeta& meta) {
  const Rational dk = meta.degree * kappa0;
  if (dk == 1) throw DomainError("dual_point is singular at d * kappa0 = 1");
  const Real dkr = rational_to_real(dk);
  return ComplexPoint{(s.re + dkr / 2 - 1) / (dkr - 1), (s.im + meta.theta * dkr) / (dkr - 1)};
}

ComplexPoint dual_point_inverse(const ComplexPoint& s_star, const Rational& kappa0,
                                const LFunctionMeta& meta) {
  const Rational dk = meta.degree * kappa0;
  if (dk == 1) throw DomainError("dual_point is singular at d * kappa0 = 1");
  const Real dkr = rational_to_real(dk);
  return ComplexPoint{s_star.re * (dkr - 1) - dkr / 2 + 1, s_star.im * (dkr - 1) - meta.theta * dkr};
}

DegreeTwoFamily degree_two_family(std::int64_t k, std::int64_t l, const Real& alpha, const LFunction& lf) {
  if (lf.meta.degree != 2) throw DomainError("degree_two_family needs a degree 2 L-function");
  if (k == 0) throw DomainError("degree_two_family needs k != 0");
  DegreeTwoFamily out;
  const Real k_real(k);
  out.beta = 2 * pow(k_real * k_real * lf.meta.conductor, Real(1) / 6) * alpha;
  // k < 0 is the conjugate of the k > 0 chain; the sign rule of dual_flat
  // realizes it directly.
  Chain chain{TwistFunction::monomial(out.beta, Exponent::ratio(1, 2)),
              {ShiftOp({{2, k}, {1, l}}), DualStep{}}};
  out.twist = chain_apply(chain, lf.meta).first;
  out.in_a0 = spec_star_membership(lf, out.beta);
  return out;
}

}  // namespace twistlab
