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

// Truncated generalized power series in one variable xi with real
// (preferably rational) exponents and 50-digit coefficients.

#ifndef TWISTLAB_GPSERIES_HPP_
#define TWISTLAB_GPSERIES_HPP_

#include <optional>
#include <string>
#include <vector>

#include "twistlab/exponent.hpp"
#include "twistlab/numeric.hpp"

namespace twistlab {

struct Term {
  Exponent exponent;
  Real coeff;
};

// Truncation order of a series. std::nullopt stands for +infinity (exact).
using TruncOrder = std::optional<Exponent>;

// A finite sum of terms c*xi^e in strictly decreasing exponent order plus an
// explicit truncation order t: every term with exponent >= t is present and
// correct, everything omitted has exponent < t.
class GPSeries {
 public:
  // Sums whose magnitude is below this fraction of the largest contribution
  // are treated as exact cancellations.
  static constexpr double kCancelRelative = 1e-40;

  GPSeries() = default;
  // Canonicalizes: sorts, merges equal exponents, drops zero coefficients
  // and everything below the truncation order.
  explicit GPSeries(std::vector<Term> terms, TruncOrder trunc = std::nullopt);

  static GPSeries monomial(const Real& coeff, const Exponent& exponent);
  static GPSeries constant(const Real& coeff) { return monomial(coeff, Exponent(0)); }
  static GPSeries zero(TruncOrder trunc = std::nullopt);

  const std::vector<Term>& terms() const { return terms_; }
  const TruncOrder& trunc_order() const { return trunc_; }
  bool is_exact() const { return !trunc_.has_value(); }
  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  // Throws DomainError on an empty series.
  const Term& leading() const;
  // Coefficient of xi^e, zero when absent.
  Real coefficient(const Exponent& e) const;

  // Drops everything below order; the truncation order becomes
  // max(current, order).
  GPSeries truncated(const Exponent& order) const;
  // Same terms, truncation dropped: the stored sum taken as an exact value.
  GPSeries exact_part() const;
  GPSeries scaled(const Real& factor) const;
  // Multiplies by xi^shift.
  GPSeries shifted(const Exponent& shift) const;
  GPSeries operator-() const { return scaled(Real(-1)); }

  std::string str() const;

 private:
  std::vector<Term> terms_;
  TruncOrder trunc_;
};

enum class CombineOp { kAdd, kMul };

// Sum or product with truncation propagation; the optional order lowers the
// result truncation further (used to bound work inside iterations).
GPSeries series_combine(const GPSeries& a, const GPSeries& b, CombineOp op,
                        TruncOrder order = std::nullopt);

GPSeries operator+(const GPSeries& a, const GPSeries& b);
GPSeries operator-(const GPSeries& a, const GPSeries& b);
GPSeries operator*(const GPSeries& a, const GPSeries& b);

// a^e through the binomial series of the leading-term-normalized remainder.
// Requires a positive leading coefficient unless e is an integer. An order is
// mandatory when a has more than one term and is exact.
GPSeries series_pow(const GPSeries& a, const Exponent& e, TruncOrder order = std::nullopt);

// Sum of the stored terms at xi > 0.
Real series_eval(const GPSeries& a, const Real& xi);

// The truncation order of a result known only where both inputs are.
TruncOrder coarser_order(const TruncOrder& a, const TruncOrder& b);

}  // namespace twistlab

#endif  // TWISTLAB_GPSERIES_HPP_
