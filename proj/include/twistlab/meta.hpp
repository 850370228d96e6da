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

#ifndef TWISTLAB_META_HPP_
#define TWISTLAB_META_HPP_

#include <string>

#include "twistlab/numeric.hpp"

namespace twistlab {

// Invariants of an L-function that the twist calculus depends on.
struct LFunctionMeta {
  std::string id;
  Rational degree{1};
  Real conductor{1};
  Real theta{0};
  int polar_order = 0;
  // Built-in coefficients are classically normalized; a(n) n^{-shift} are
  // the coefficients of the normalized function (1/2 for weight 2 forms).
  Rational normalization_shift{0};

  // Degree/conductor-only metadata for exercising the operators.
  static LFunctionMeta synthetic(const Rational& degree, const Real& conductor);
  // Throws DomainError unless d >= 1, q_F > 0, m_F >= 0.
  void validate() const;
};

}  // namespace twistlab

#endif  // TWISTLAB_META_HPP_
