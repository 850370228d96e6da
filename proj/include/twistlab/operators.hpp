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

// Shift and flat-dual operators on twist functions, chains of them, and a
// scalar stationary-phase probe that checks the symbolic dual.

#ifndef TWISTLAB_OPERATORS_HPP_
#define TWISTLAB_OPERATORS_HPP_

#include <cstdint>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "twistlab/gpseries.hpp"
#include "twistlab/meta.hpp"
#include "twistlab/twist.hpp"

namespace twistlab {

// x0(xi) solving d/dz Phi(z, xi) = 0 for Phi(z) = z^{1/d} - 2 pi f(q z / xi),
// to truncation order depth. Requires lexp(f) > 1/d and a positive leading
// coefficient. Newton iteration with precision doubling from the closed-form
// balance of the two leading monomials.
GPSeries critical_point_series(const TwistFunction& f, const Rational& degree, const Real& q,
                               const Exponent& depth);

// Integer polynomial P with deg P >= 1.
class ShiftOp {
 public:
  struct Monomial {
    int degree;
    std::int64_t coeff;
  };
  // Merges equal degrees and drops zeros; throws DomainError when the
  // result has degree < 1.
  explicit ShiftOp(std::vector<Monomial> poly);
  static ShiftOp power(int k, std::int64_t coeff = 1) { return ShiftOp({{k, coeff}}); }

  const std::vector<Monomial>& poly() const { return poly_; }
  int degree() const { return poly_.front().degree; }
  TwistFunction as_twist() const;
  std::string render() const;

 private:
  std::vector<Monomial> poly_;  // descending degree
};

struct DualStep {};
using ChainStep = std::variant<ShiftOp, DualStep>;

struct Chain {
  TwistFunction f0;
  std::vector<ChainStep> steps;  // applied left to right
};

struct ChainAudit {
  std::vector<Exponent> ells;  // lexp before each dual step
  int weight = 0;              // number of dual steps
  Exponent d_invariant{1};     // prod (d * ell_j - 1)
};

TwistFunction apply_shift(const TwistFunction& f, const ShiftOp& shift);

// Full stationary-phase expansion of the dual, -(1/2pi) Phi(x0(xi), xi),
// resolved down to image_trunc (before the flat cut). Positive leading
// coefficient required.
GPSeries dual_series(const TwistFunction& f, const LFunctionMeta& meta, const Exponent& image_trunc);

// f* = T^flat(f): the dual expansion with the negative-exponent terms cut.
// A negative leading coefficient goes through f* = -(-f)*. With no depth,
// the image is resolved two guard exponents below 0 and the depth is
// doubled on DepthError.
TwistFunction dual_flat(const TwistFunction& f, const LFunctionMeta& meta,
                        std::optional<Exponent> depth = std::nullopt);

// Default image truncation used by dual_flat: two lattice steps below 0.
Exponent default_dual_depth(const TwistFunction& f, const LFunctionMeta& meta);

struct ProbeSample {
  Real xi;
  Real value;  // the dual twist -(1/2pi) Phi(x0, xi) at this xi
};

// Scalar Newton solve of d/dz Phi = 0 per sample; independent of the series
// code. Requires lexp(f) > 1/d, positive leading coefficient, xi >= xi_min.
std::vector<ProbeSample> numeric_dual_probe(const TwistFunction& f, const LFunctionMeta& meta,
                                            const std::vector<Real>& samples,
                                            const Real& xi_min = Real(1000));

// Applies the steps left to right, auditing every dual step.
std::pair<TwistFunction, ChainAudit> chain_apply(const Chain& chain, const LFunctionMeta& meta,
                                                 std::optional<Exponent> depth = std::nullopt);

// Equality modulo constant terms, coefficientwise to relative tol of the
// largest coefficient.
bool twists_equal_mod_constant(const TwistFunction& a, const TwistFunction& b, double rel_tol);

}  // namespace twistlab

#endif  // TWISTLAB_OPERATORS_HPP_
