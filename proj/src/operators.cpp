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

#include "twistlab/operators.hpp"

#include <algorithm>
#include <map>
#include <string>
#include <utility>

#include "twistlab/errors.hpp"

namespace twistlab {

namespace {

// Stationary-phase ingredients for Phi(z) = z^{1/d} - 2 pi f(q z / xi).
class PhaseFunction {
 public:
  PhaseFunction(const TwistFunction& f, const Rational& degree, const Real& q)
      : f_(f), inv_d_(Rational(1) / degree), q_(q) {}

  Exponent inv_d() const { return inv_d_; }

  // sum alpha_j kappa_j (kappa_j - 1) ... (k factors) u^{kappa_j - k}
  GPSeries f_derivative(const GPSeries& u, int k, const Exponent& order) const {
    GPSeries sum = GPSeries::zero(order);
    for (const auto& t : f_.terms()) {
      Real factor = t.coeff;
      for (int i = 0; i < k; ++i) factor *= t.exponent.to_real() - i;
      if (factor == 0) continue;
      sum = sum + series_pow(u, t.exponent - Exponent(k), order).scaled(factor);
    }
    return sum.truncated(order);
  }

  GPSeries u_of(const GPSeries& z) const { return z.scaled(q_).shifted(Exponent(-1)); }

  GPSeries phi(const GPSeries& z, const Exponent& order) const {
    GPSeries head = series_pow(z, inv_d_, order);
    GPSeries tail = f_derivative(u_of(z), 0, order).scaled(2 * pi_real());
    return series_combine(head, -tail, CombineOp::kAdd, order);
  }

  GPSeries dphi(const GPSeries& z, const Exponent& order) const {
    GPSeries head = series_pow(z, inv_d_ - Exponent(1), order).scaled(inv_d_.to_real());
    GPSeries tail = f_derivative(u_of(z), 1, order + Exponent(1))
                        .shifted(Exponent(-1))
                        .scaled(2 * pi_real() * q_);
    return series_combine(head, -tail, CombineOp::kAdd, order);
  }

  GPSeries d2phi(const GPSeries& z, const Exponent& order) const {
    Real c = inv_d_.to_real() * (inv_d_.to_real() - 1);
    GPSeries head = c == 0 ? GPSeries::zero(order)
                           : series_pow(z, inv_d_ - Exponent(2), order).scaled(c);
    GPSeries tail = f_derivative(u_of(z), 2, order + Exponent(2))
                        .shifted(Exponent(-2))
                        .scaled(2 * pi_real() * q_ * q_);
    return series_combine(head, -tail, CombineOp::kAdd, order);
  }

 private:
  const TwistFunction& f_;
  Exponent inv_d_;
  Real q_;
};

void require_dualizable(const TwistFunction& f, const Rational& degree, std::size_t step) {
  Exponent inv_d(Rational(1) / degree);
  if (f.is_zero() || lexp(f) <= inv_d) {
    throw AdmissibilityError("lexp(f) = " + lexp(f).str() + " must exceed 1/d = " + inv_d.str(),
                             step, lexp(f).value());
  }
}

// Closed-form balance (1/d) z^{1/d-1} = 2 pi alpha0 kappa0 (q/xi)^kappa0 z^{kappa0-1}.
Real seed_coefficient(const Term& lead, const Rational& degree, const Real& q) {
  Real kappa = lead.exponent.to_real();
  Real d = rational_to_real(degree);
  Real base = 2 * pi_real() * d * lead.coeff * kappa * pow(q, kappa);
  return pow(base, Real(-1) / (kappa - 1 / d));
}

// Smallest positive omega_j / (d kappa0 - 1).
std::optional<Exponent> smallest_gap(const TwistFunction& f, const Exponent& scale) {
  std::optional<Exponent> gap;
  const Exponent kappa0 = lexp(f);
  for (const auto& t : f.terms()) {
    if (t.exponent == kappa0) continue;
    Exponent g = (kappa0 - t.exponent) / scale;
    if (!gap || g < *gap) gap = g;
  }
  return gap;
}

// Drops rounding residues: terms below kNoiseFloor times the largest
// coefficient.
constexpr double kNoiseFloor = 1e-32;

GPSeries denoise(const GPSeries& s) {
  Real top(0);
  for (const auto& t : s.terms()) {
    if (abs(t.coeff) > top) top = abs(t.coeff);
  }
  std::vector<Term> kept;
  for (const auto& t : s.terms()) {
    if (abs(t.coeff) > top * kNoiseFloor) kept.push_back(t);
  }
  return GPSeries(std::move(kept), s.trunc_order());
}

}  // namespace

GPSeries critical_point_series(const TwistFunction& f, const Rational& degree, const Real& q,
                               const Exponent& depth) {
  require_dualizable(f, degree, 0);
  const Term& lead = f.leading();
  if (lead.coeff <= 0) throw DomainError("critical_point_series needs a positive leading coefficient");
  if (q <= 0) throw DomainError("q must be positive");

  const Exponent d(degree);
  const Exponent kappa0 = lead.exponent;
  const Exponent scale = d * kappa0 - Exponent(1);
  const Exponent lead_exp = d * kappa0 / scale;
  GPSeries z = GPSeries::monomial(seed_coefficient(lead, degree, q), lead_exp);
  if (depth >= lead_exp) return z.truncated(depth);

  const Exponent target = lead_exp - depth;  // relative order
  std::optional<Exponent> gap = smallest_gap(f, scale);
  if (!gap) return z.truncated(depth);  // monomial twist: the seed is exact

  PhaseFunction phase(f, degree, q);
  const Exponent p1 = lead_exp * (phase.inv_d() - Exponent(1));
  const Exponent p2 = lead_exp * (phase.inv_d() - Exponent(2));

  Exponent accurate = min(*gap, target);
  constexpr int kMaxIterations = 64;
  for (int iter = 0; iter < kMaxIterations; ++iter) {
    Exponent w = min(accurate + accurate, target);
    GPSeries zx = z.exact_part();
    GPSeries residual = phase.dphi(zx, p1 - w);
    GPSeries curvature = phase.d2phi(zx, p2 - w);
    if (curvature.empty()) throw NumericError("vanishing second derivative in critical point solve");
    GPSeries inverse = series_pow(curvature, Exponent(-1), -p2 - w);
    GPSeries delta = series_combine(residual, inverse, CombineOp::kMul, lead_exp - w);
    z = denoise(series_combine(zx, -delta, CombineOp::kAdd, lead_exp - w));
    // an update below the noise floor of z means z is a fixed point
    Real top = abs(z.leading().coeff);
    for (const auto& t : z.terms()) {
      if (abs(t.coeff) > top) top = abs(t.coeff);
    }
    bool negligible = true;
    for (const auto& t : delta.terms()) {
      if (abs(t.coeff) > top * kNoiseFloor) negligible = false;
    }
    if (negligible && accurate == target) return z.truncated(depth);
    accurate = w;
  }
  GPSeries residual = phase.dphi(z.exact_part(), p1 - target);
  throw NumericError("critical point series did not converge; residual leading exponent " +
                     (residual.empty() ? std::string("none") : residual.leading().exponent.str()));
}

ShiftOp::ShiftOp(std::vector<Monomial> poly) {
  std::map<int, std::int64_t, std::greater<>> merged;
  for (const auto& m : poly) {
    if (m.degree < 0) throw DomainError("shift polynomial degree must be >= 0");
    merged[m.degree] += m.coeff;
  }
  for (const auto& [deg, c] : merged) {
    if (c != 0) poly_.push_back(Monomial{deg, c});
  }
  if (poly_.empty() || poly_.front().degree < 1) {
    throw DomainError("shift polynomial must have degree >= 1");
  }
}

TwistFunction ShiftOp::as_twist() const {
  std::vector<Term> terms;
  for (const auto& m : poly_) terms.push_back(Term{Exponent(m.degree), Real(m.coeff)});
  return TwistFunction(GPSeries(std::move(terms)));
}

std::string ShiftOp::render() const {
  std::string out;
  bool first = true;
  for (const auto& m : poly_) {
    std::int64_t mag = m.coeff < 0 ? -m.coeff : m.coeff;
    if (first) {
      if (m.coeff < 0) out += "-";
    } else {
      out += m.coeff < 0 ? " - " : " + ";
    }
    first = false;
    if (m.degree == 0) {
      out += std::to_string(mag);
      continue;
    }
    if (mag != 1) out += std::to_string(mag);
    out += "x";
    if (m.degree > 1) out += "^" + std::to_string(m.degree);
  }
  return out;
}

TwistFunction apply_shift(const TwistFunction& f, const ShiftOp& shift) {
  return f + shift.as_twist();
}

GPSeries dual_series(const TwistFunction& f, const LFunctionMeta& meta, const Exponent& image_trunc) {
  meta.validate();
  require_dualizable(f, meta.degree, 0);
  if (f.leading().coeff <= 0) throw DomainError("dual_series needs a positive leading coefficient");
  const Exponent d(meta.degree);
  const Exponent kappa0 = lexp(f);
  const Exponent scale = d * kappa0 - Exponent(1);
  const Exponent dual_lead = kappa0 / scale;
  const Exponent lead_exp = d * kappa0 / scale;
  if (image_trunc >= dual_lead) throw DepthError("image truncation above the leading exponent");

  const Real d_real = rational_to_real(meta.degree);
  const Real q = meta.conductor * pow(2 * pi_real() * d_real, -d_real);
  const Exponent relative = dual_lead - image_trunc;
  GPSeries x0 = critical_point_series(f, meta.degree, q, lead_exp - relative);
  PhaseFunction phase(f, meta.degree, q);
  return denoise(phase.phi(x0, image_trunc).scaled(Real(-1) / (2 * pi_real())));
}

Exponent default_dual_depth(const TwistFunction& f, const LFunctionMeta& meta) {
  const Exponent d(meta.degree);
  const Exponent scale = d * lexp(f) - Exponent(1);
  std::optional<Exponent> gap = smallest_gap(f, scale);
  Exponent step = gap ? *gap : lexp(f) / scale;
  return -(step + step);
}

TwistFunction dual_flat(const TwistFunction& f, const LFunctionMeta& meta,
                        std::optional<Exponent> depth) {
  require_dualizable(f, meta.degree, 0);
  if (f.leading().coeff < 0) return -dual_flat(-f, meta, depth);

  const Exponent d(meta.degree);
  const Exponent expected_lead = lexp(f) / (d * lexp(f) - Exponent(1));
  Exponent image_trunc = depth ? *depth : default_dual_depth(f, meta);
  constexpr int kMaxRetries = 6;
  for (int attempt = 0;; ++attempt) {
    if (image_trunc <= Exponent(0)) {
      GPSeries full = dual_series(f, meta, image_trunc);
      if (!full.trunc_order() || *full.trunc_order() <= Exponent(0)) {
        TwistFunction out = flat_part(full);
        if (out.is_zero() || lexp(out) != expected_lead) {
          throw NumericError("dual leading exponent " + lexp(out).str() + " differs from " +
                             expected_lead.str());
        }
        return out;
      }
    }
    if (depth || attempt >= kMaxRetries) {
      throw DepthError("depth " + image_trunc.str() + " does not resolve the flat part");
    }
    image_trunc = image_trunc <= Exponent(0) ? image_trunc + image_trunc : Exponent(-1);
  }
}

std::vector<ProbeSample> numeric_dual_probe(const TwistFunction& f, const LFunctionMeta& meta,
                                            const std::vector<Real>& samples, const Real& xi_min) {
  meta.validate();
  require_dualizable(f, meta.degree, 0);
  const Term& lead = f.leading();
  if (lead.coeff <= 0) throw DomainError("numeric_dual_probe needs a positive leading coefficient");

  const Real d = rational_to_real(meta.degree);
  const Real inv_d = 1 / d;
  const Real two_pi = 2 * pi_real();
  const Real q = meta.conductor * pow(two_pi * d, -d);
  const Real kappa0 = lead.exponent.to_real();

  std::vector<ProbeSample> out;
  out.reserve(samples.size());
  for (const Real& xi : samples) {
    if (xi < xi_min) throw DomainError("probe sample below xi_min");
    const Real scale = q / xi;
    auto f_sum = [&](const Real& u, int k) {
      Real s(0);
      for (const auto& t : f.terms()) {
        Real kappa = t.exponent.to_real();
        Real factor = t.coeff;
        for (int i = 0; i < k; ++i) factor *= kappa - i;
        if (factor == 0) continue;
        s += factor * pow(u, kappa - k);
      }
      return s;
    };
    auto d1 = [&](const Real& z) {
      return inv_d * pow(z, inv_d - 1) - two_pi * scale * f_sum(scale * z, 1);
    };
    auto d2 = [&](const Real& z) {
      return inv_d * (inv_d - 1) * pow(z, inv_d - 2) - two_pi * scale * scale * f_sum(scale * z, 2);
    };
    Real z = pow(pow(xi, kappa0) / (two_pi * d * lead.coeff * kappa0 * pow(q, kappa0)),
                 1 / (kappa0 - inv_d));
    const Real tol = Real("1e-46");
    bool converged = false;
    for (int iter = 0; iter < 500; ++iter) {
      Real step = d1(z) / d2(z);
      Real next = z - step;
      if (next <= 0) next = z / 2;
      if (abs(next - z) <= tol * abs(z)) {
        z = next;
        converged = true;
        break;
      }
      z = next;
    }
    if (!converged) throw NumericError("probe Newton did not converge at xi = " + xi.str(10));
    Real phi = pow(z, inv_d) - two_pi * f_sum(scale * z, 0);
    out.push_back(ProbeSample{xi, -phi / two_pi});
  }
  return out;
}

std::pair<TwistFunction, ChainAudit> chain_apply(const Chain& chain, const LFunctionMeta& meta,
                                                 std::optional<Exponent> depth) {
  meta.validate();
  const Exponent d(meta.degree);
  const Exponent inv_d = Exponent(1) / d;
  if (lexp(chain.f0) > inv_d) {
    throw DomainError("chain seed must satisfy 0 <= lexp(f0) <= 1/d");
  }
  TwistFunction current = chain.f0;
  ChainAudit audit;
  for (const auto& step : chain.steps) {
    if (const auto* shift = std::get_if<ShiftOp>(&step)) {
      current = apply_shift(current, *shift);
      continue;
    }
    std::size_t j = audit.ells.size() + 1;
    Exponent ell = lexp(current);
    if (current.is_zero() || ell <= inv_d) {
      throw AdmissibilityError("dual step " + std::to_string(j) + ": ell = " + ell.str() +
                                   " is not > 1/d = " + inv_d.str(),
                               j, ell.value());
    }
    audit.ells.push_back(ell);
    audit.d_invariant = audit.d_invariant * (d * ell - Exponent(1));
    current = dual_flat(current, meta, depth);
  }
  audit.weight = static_cast<int>(audit.ells.size());
  return {current, audit};
}

bool twists_equal_mod_constant(const TwistFunction& a, const TwistFunction& b, double rel_tol) {
  Real scale(0);
  for (const auto* f : {&a, &b}) {
    for (const auto& t : f->terms()) {
      if (abs(t.coeff) > scale) scale = abs(t.coeff);
    }
  }
  const Real tol = scale * rel_tol;
  auto check = [&](const TwistFunction& x, const TwistFunction& y) {
    for (const auto& t : x.terms()) {
      if (t.exponent == Exponent(0)) continue;
      if (abs(t.coeff - y.coefficient(t.exponent)) > tol) return false;
    }
    return true;
  };
  return check(a, b) && check(b, a);
}

}  // namespace twistlab
