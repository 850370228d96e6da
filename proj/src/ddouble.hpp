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

#ifndef TWISTLAB_SRC_DDOUBLE_HPP_
#define TWISTLAB_SRC_DDOUBLE_HPP_

#include <cmath>

namespace twistlab::dd {

// Unevaluated sum hi + lo with |lo| <= ulp(hi) / 2.
struct DDouble {
  double hi = 0;
  double lo = 0;
};

inline DDouble two_sum(double a, double b) {
  const double s = a + b;
  const double bb = s - a;
  return {s, (a - (s - bb)) + (b - bb)};
}

inline DDouble quick_two_sum(double a, double b) {
  const double s = a + b;
  return {s, b - (s - a)};
}

inline DDouble two_prod(double a, double b) {
  const double p = a * b;
  return {p, std::fma(a, b, -p)};
}

inline DDouble add(const DDouble& a, const DDouble& b) {
  DDouble s = two_sum(a.hi, b.hi);
  DDouble t = two_sum(a.lo, b.lo);
  s.lo += t.hi;
  s = quick_two_sum(s.hi, s.lo);
  s.lo += t.lo;
  return quick_two_sum(s.hi, s.lo);
}

inline DDouble neg(const DDouble& a) { return {-a.hi, -a.lo}; }

inline DDouble mul(const DDouble& a, const DDouble& b) {
  DDouble p = two_prod(a.hi, b.hi);
  p.lo += a.hi * b.lo + a.lo * b.hi;
  return quick_two_sum(p.hi, p.lo);
}

inline DDouble div(const DDouble& a, const DDouble& b) {
  const double q1 = a.hi / b.hi;
  DDouble r = add(a, neg(mul(b, {q1, 0})));
  const double q2 = r.hi / b.hi;
  r = add(r, neg(mul(b, {q2, 0})));
  const double q3 = r.hi / b.hi;
  return add(quick_two_sum(q1, q2), {q3, 0});
}

inline DDouble pow_int(DDouble base, unsigned e) {
  DDouble r{1, 0};
  while (e) {
    if (e & 1) r = mul(r, base);
    base = mul(base, base);
    e >>= 1;
  }
  return r;
}

// Fractional part in [0, 1).
inline double frac(const DDouble& a) {
  double f = a.hi - std::floor(a.hi);
  f += a.lo;
  f -= std::floor(f);
  return f >= 1.0 ? 0.0 : f;
}

}  // namespace twistlab::dd

#endif  // TWISTLAB_SRC_DDOUBLE_HPP_
