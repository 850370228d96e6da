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

#ifndef TWISTLAB_TWIST_HPP_
#define TWISTLAB_TWIST_HPP_

#include <string>
#include <string_view>
#include <vector>

#include "twistlab/gpseries.hpp"

namespace twistlab {

// f(xi) = sum alpha_j xi^kappa_j with kappa_j >= 0 and alpha_j != 0, held as
// an exact GPSeries. The empty sum is the zero twist (alpha = 0 seed).
class TwistFunction {
 public:
  TwistFunction() = default;
  // Throws DomainError for truncated series or negative exponents.
  explicit TwistFunction(GPSeries series);

  static TwistFunction monomial(const Real& coeff, const Exponent& exponent);

  const GPSeries& series() const { return series_; }
  const std::vector<Term>& terms() const { return series_.terms(); }
  bool is_zero() const { return series_.empty(); }
  const Term& leading() const { return series_.leading(); }
  Real coefficient(const Exponent& e) const { return series_.coefficient(e); }

  // The twist with its exponent-0 term removed.
  TwistFunction without_constant() const;
  TwistFunction operator-() const { return TwistFunction(-series_); }

  // Text in the twist expression grammar; parse_twist(render()) reproduces
  // the value exactly.
  std::string render() const;

 private:
  GPSeries series_;
};

TwistFunction operator+(const TwistFunction& a, const TwistFunction& b);

struct ParsedTwist {
  TwistFunction twist;
  // Set when the terms cancelled to the zero twist.
  bool cancelled_to_zero = false;
};

// Grammar:
//   twist := term (("+"|"-") term)* ; a leading sign is allowed
//   term  := coeff "*" mono | mono | coeff
//   mono  := "x" ("^" "(" rat ")" | "^" int)?
//   coeff := decimal | rat ;  rat := int "/" posint | int
ParsedTwist parse_twist(std::string_view expr);

// Largest exponent; 0 for the zero twist.
Exponent lexp(const TwistFunction& f);

// Keeps the terms with exponent >= 0.
TwistFunction flat_part(const GPSeries& s);

}  // namespace twistlab

#endif  // TWISTLAB_TWIST_HPP_
