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

#ifndef TWISTLAB_EXPONENT_HPP_
#define TWISTLAB_EXPONENT_HPP_

#include <string>

#include "twistlab/numeric.hpp"

namespace twistlab {

// A real exponent that stays an exact rational as long as every input was
// rational. Inexact exponents compare equal when they differ by less than
// kMergeTolerance.
class Exponent {
 public:
  static constexpr double kMergeTolerance = 1e-12;

  Exponent() = default;
  Exponent(long long n) : rational_(n), value_(static_cast<double>(n)) {}  // NOLINT
  Exponent(const Rational& r)                                                // NOLINT
      : rational_(r), value_(rational_to_double(r)) {}

  static Exponent ratio(long long p, long long q) { return Exponent(Rational(p, q)); }
  static Exponent inexact(double v);

  bool is_exact() const { return exact_; }
  bool is_integer() const { return exact_ && denominator(rational_) == 1; }
  // Throws DomainError for inexact exponents.
  const Rational& rational() const;
  double value() const { return value_; }
  Real to_real() const;
  std::string str() const;

  Exponent operator-() const;
  friend Exponent operator+(const Exponent& a, const Exponent& b);
  friend Exponent operator-(const Exponent& a, const Exponent& b);
  friend Exponent operator*(const Exponent& a, const Exponent& b);
  friend Exponent operator/(const Exponent& a, const Exponent& b);
  Exponent& operator+=(const Exponent& b) { return *this = *this + b; }
  Exponent& operator-=(const Exponent& b) { return *this = *this - b; }

  // -1, 0 or 1; exact when both sides are exact.
  friend int compare(const Exponent& a, const Exponent& b);
  friend bool operator==(const Exponent& a, const Exponent& b) { return compare(a, b) == 0; }
  friend bool operator!=(const Exponent& a, const Exponent& b) { return compare(a, b) != 0; }
  friend bool operator<(const Exponent& a, const Exponent& b) { return compare(a, b) < 0; }
  friend bool operator<=(const Exponent& a, const Exponent& b) { return compare(a, b) <= 0; }
  friend bool operator>(const Exponent& a, const Exponent& b) { return compare(a, b) > 0; }
  friend bool operator>=(const Exponent& a, const Exponent& b) { return compare(a, b) >= 0; }

 private:
  bool exact_ = true;
  Rational rational_{0};
  double value_ = 0.0;
};

inline const Exponent& min(const Exponent& a, const Exponent& b) { return b < a ? b : a; }
inline const Exponent& max(const Exponent& a, const Exponent& b) { return a < b ? b : a; }

}  // namespace twistlab

#endif  // TWISTLAB_EXPONENT_HPP_
