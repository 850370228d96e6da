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

#include "twistlab/exponent.hpp"

#include <cmath>
#include <sstream>

#include "twistlab/errors.hpp"

namespace twistlab {

Exponent Exponent::inexact(double v) {
  if (!std::isfinite(v)) throw DomainError("exponent must be finite");
  Exponent e;
  e.exact_ = false;
  e.value_ = v;
  return e;
}

const Rational& Exponent::rational() const {
  if (!exact_) throw DomainError("exponent " + str() + " is not rational");
  return rational_;
}

Real Exponent::to_real() const { return exact_ ? rational_to_real(rational_) : Real(value_); }

std::string Exponent::str() const {
  if (exact_) return to_string_rational(rational_);
  std::ostringstream os;
  os.precision(17);
  os << value_;
  return os.str();
}

Exponent Exponent::operator-() const {
  if (exact_) return Exponent(Rational(-rational_));
  return inexact(-value_);
}

Exponent operator+(const Exponent& a, const Exponent& b) {
  if (a.exact_ && b.exact_) return Exponent(Rational(a.rational_ + b.rational_));
  return Exponent::inexact(a.value_ + b.value_);
}

Exponent operator-(const Exponent& a, const Exponent& b) {
  if (a.exact_ && b.exact_) return Exponent(Rational(a.rational_ - b.rational_));
  return Exponent::inexact(a.value_ - b.value_);
}

Exponent operator*(const Exponent& a, const Exponent& b) {
  if (a.exact_ && b.exact_) return Exponent(Rational(a.rational_ * b.rational_));
  return Exponent::inexact(a.value_ * b.value_);
}

Exponent operator/(const Exponent& a, const Exponent& b) {
  if (b.exact_ ? b.rational_ == 0 : b.value_ == 0.0) {
    throw DomainError("division by zero exponent");
  }
  if (a.exact_ && b.exact_) return Exponent(Rational(a.rational_ / b.rational_));
  return Exponent::inexact(a.value_ / b.value_);
}

int compare(const Exponent& a, const Exponent& b) {
  if (a.exact_ && b.exact_) {
    if (a.rational_ < b.rational_) return -1;
    return a.rational_ > b.rational_ ? 1 : 0;
  }
  double diff = a.value_ - b.value_;
  if (std::fabs(diff) < Exponent::kMergeTolerance) return 0;
  return diff < 0 ? -1 : 1;
}

}  // namespace twistlab
