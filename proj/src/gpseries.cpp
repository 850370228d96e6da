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

#include "twistlab/gpseries.hpp"

#include <algorithm>
#include <iostream>
#include <sstream>
#include <utility>

#include "twistlab/errors.hpp"

namespace twistlab {

namespace {

struct RawTerm {
  Exponent exponent;
  Real coeff;
  Real magnitude;  // largest |contribution| folded into coeff
};

bool descending(const RawTerm& a, const RawTerm& b) {
  if (a.exponent.is_exact() && b.exponent.is_exact()) {
    return a.exponent.rational() > b.exponent.rational();
  }
  return a.exponent.value() > b.exponent.value();
}

bool below(const Exponent& e, const TruncOrder& trunc) { return trunc && e < *trunc; }

std::vector<Term> canonicalize(std::vector<RawTerm> raw, const TruncOrder& trunc) {
  std::sort(raw.begin(), raw.end(), descending);
  std::vector<Term> out;
  out.reserve(raw.size());
  std::size_t i = 0;
  while (i < raw.size()) {
    Exponent e = raw[i].exponent;
    Real sum = raw[i].coeff;
    Real mag = raw[i].magnitude;
    std::size_t j = i + 1;
    while (j < raw.size() && raw[j].exponent == e) {
      sum += raw[j].coeff;
      if (raw[j].magnitude > mag) mag = raw[j].magnitude;
      ++j;
    }
    i = j;
    if (below(e, trunc)) continue;
    if (sum == 0 || abs(sum) <= GPSeries::kCancelRelative * mag) continue;
    out.push_back(Term{std::move(e), std::move(sum)});
  }
  return out;
}

std::vector<RawTerm> to_raw(const std::vector<Term>& terms) {
  std::vector<RawTerm> raw;
  raw.reserve(terms.size());
  for (const auto& t : terms) raw.push_back(RawTerm{t.exponent, t.coeff, abs(t.coeff)});
  return raw;
}

}  // namespace

TruncOrder coarser_order(const TruncOrder& a, const TruncOrder& b) {
  if (!a) return b;
  if (!b) return a;
  return max(*a, *b);
}

GPSeries::GPSeries(std::vector<Term> terms, TruncOrder trunc)
    : terms_(canonicalize(to_raw(terms), trunc)), trunc_(std::move(trunc)) {}

GPSeries GPSeries::monomial(const Real& coeff, const Exponent& exponent) {
  return GPSeries({Term{exponent, coeff}});
}

GPSeries GPSeries::zero(TruncOrder trunc) { return GPSeries({}, std::move(trunc)); }

const Term& GPSeries::leading() const {
  if (terms_.empty()) throw DomainError("leading term of an empty series");
  return terms_.front();
}

Real GPSeries::coefficient(const Exponent& e) const {
  for (const auto& t : terms_) {
    if (t.exponent == e) return t.coeff;
  }
  return Real(0);
}

GPSeries GPSeries::truncated(const Exponent& order) const {
  return GPSeries(terms_, coarser_order(trunc_, order));
}

GPSeries GPSeries::exact_part() const { return GPSeries(terms_); }

GPSeries GPSeries::scaled(const Real& factor) const {
  if (factor == 0) return zero(trunc_);
  GPSeries out = *this;
  for (auto& t : out.terms_) t.coeff *= factor;
  return out;
}

GPSeries GPSeries::shifted(const Exponent& shift) const {
  GPSeries out = *this;
  for (auto& t : out.terms_) t.exponent += shift;
  if (out.trunc_) *out.trunc_ += shift;
  return out;
}

std::string GPSeries::str() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    if (!first) os << " + ";
    first = false;
    os << t.coeff.str(20) << "*x^(" << t.exponent.str() << ")";
  }
  if (first) os << "0";
  if (trunc_) os << " + O(x^(" << trunc_->str() << "))";
  return os.str();
}

GPSeries series_combine(const GPSeries& a, const GPSeries& b, CombineOp op, TruncOrder order) {
  if (op == CombineOp::kAdd) {
    TruncOrder trunc = coarser_order(coarser_order(a.trunc_order(), b.trunc_order()), order);
    std::vector<RawTerm> raw = to_raw(a.terms());
    auto rb = to_raw(b.terms());
    raw.insert(raw.end(), rb.begin(), rb.end());
    return GPSeries(canonicalize(std::move(raw), trunc), trunc);
  }

  // Remainder of a (exponents < t_a) times b is below t_a + lead(b); if b is
  // itself an empty truncated series its unknown part is below t_b.
  auto bound = [](const GPSeries& x, const GPSeries& y) -> TruncOrder {
    if (!x.trunc_order()) return std::nullopt;
    if (!y.empty()) return *x.trunc_order() + y.leading().exponent;
    if (y.trunc_order()) return *x.trunc_order() + *y.trunc_order();
    return std::nullopt;  // y is exactly zero
  };
  TruncOrder trunc = coarser_order(coarser_order(bound(a, b), bound(b, a)), order);
  std::vector<RawTerm> raw;
  raw.reserve(a.size() * b.size());
  for (const auto& ta : a.terms()) {
    for (const auto& tb : b.terms()) {
      Exponent e = ta.exponent + tb.exponent;
      if (below(e, trunc)) break;  // b is sorted descending
      Real c = ta.coeff * tb.coeff;
      Real m = abs(c);
      raw.push_back(RawTerm{std::move(e), std::move(c), std::move(m)});
    }
  }
  return GPSeries(canonicalize(std::move(raw), trunc), trunc);
}

GPSeries operator+(const GPSeries& a, const GPSeries& b) {
  return series_combine(a, b, CombineOp::kAdd);
}

GPSeries operator-(const GPSeries& a, const GPSeries& b) {
  return series_combine(a, -b, CombineOp::kAdd);
}

GPSeries operator*(const GPSeries& a, const GPSeries& b) {
  return series_combine(a, b, CombineOp::kMul);
}

GPSeries series_pow(const GPSeries& a, const Exponent& e, TruncOrder order) {
  if (a.empty()) {
    if (a.is_exact() && e > Exponent(0)) return GPSeries::zero();
    throw DomainError("power of a series with unknown leading term");
  }
  if (e == Exponent(0)) return GPSeries::constant(Real(1));
  const Term& lead = a.leading();
  if (lead.coeff < 0 && !e.is_integer()) {
    throw DomainError("non-integer power " + e.str() + " of a series with negative leading coefficient");
  }

  Real lead_pow = pow(abs(lead.coeff), e.to_real());
  if (lead.coeff < 0 && e.is_integer() && numerator(e.rational()) % 2 != 0) lead_pow = -lead_pow;
  Exponent lead_exp = e * lead.exponent;

  // eps = a / (c xi^L) - 1, all exponents strictly negative.
  std::vector<Term> rest(a.terms().begin() + 1, a.terms().end());
  TruncOrder rel_trunc;
  if (a.trunc_order()) rel_trunc = *a.trunc_order() - lead.exponent;
  GPSeries eps = GPSeries(rest, rel_trunc).scaled(Real(1) / lead.coeff).shifted(-lead.exponent);

  TruncOrder rel_target = rel_trunc;
  if (order) rel_target = coarser_order(rel_target, *order - lead_exp);
  if (!rel_target && !eps.empty()) {
    throw DomainError("series_pow of a multi-term exact series needs an explicit order");
  }

  GPSeries sum = GPSeries::constant(Real(1));
  GPSeries eps_k = GPSeries::constant(Real(1));
  Real binom(1);
  const Real er = e.to_real();
  constexpr int kMaxTerms = 100000;
  for (int k = 1; k <= kMaxTerms && !eps.empty(); ++k) {
    binom *= (er - (k - 1)) / k;
    if (binom == 0) break;
    eps_k = series_combine(eps_k, eps.exact_part(), CombineOp::kMul, rel_target);
    if (eps_k.empty()) break;
    sum = sum + eps_k.scaled(binom);
  }
  if (rel_target) sum = sum.truncated(*rel_target);
  return sum.shifted(lead_exp).scaled(lead_pow);
}

Real series_eval(const GPSeries& a, const Real& xi) {
  if (xi <= 0) throw DomainError("series_eval requires xi > 0");
  Real sum(0);
  for (const auto& t : a.terms()) {
    if (t.exponent == Exponent(0)) {
      sum += t.coeff;
    } else {
      sum += t.coeff * pow(xi, t.exponent.to_real());
    }
  }
  return sum;
}

}  // namespace twistlab
