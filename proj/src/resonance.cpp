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

#include "twistlab/resonance.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>
#include <thread>

#include <Eigen/Dense>

#include "ddouble.hpp"
#include "twistlab/errors.hpp"

namespace twistlab {

namespace {

constexpr double kMachineLimit = 1e7;
constexpr double kDoubleWordLimit = 1e20;
constexpr unsigned kMaxRootDegree = 64;

dd::DDouble to_dd(const Real& x) {
  const double hi = x.convert_to<double>();
  const double lo = Real(x - hi).convert_to<double>();
  return dd::quick_two_sum(hi, lo);
}

// n^k exactly, or nothing above 2^106 where a double word is no longer exact.
std::optional<dd::DDouble> integer_power(std::int64_t n, unsigned k) {
  constexpr Int128 kExactLimit = Int128{1} << 106;
  Int128 v = 1;
  for (unsigned i = 0; i < k; ++i) {
    if (v > kExactLimit / n) return std::nullopt;
    v *= n;
  }
  const double hi = static_cast<double>(v);
  const double lo = static_cast<double>(v - static_cast<Int128>(hi));
  return dd::DDouble{hi, lo};
}

struct Neumaier {
  double sum = 0;
  double comp = 0;
  void add(double v) {
    const double t = sum + v;
    if (std::fabs(sum) >= std::fabs(v)) {
      comp += (sum - t) + v;
    } else {
      comp += (v - t) + sum;
    }
    sum = t;
  }
  double value() const { return sum + comp; }
};

}  // namespace

std::string to_string(PhaseMode mode) {
  return mode == PhaseMode::kMachine ? "machine" : "double_word";
}

struct PhaseEvaluator::Live {
  enum class Kind { kIntegerPower, kRootPower, kGeneric } kind;
  unsigned p = 1;  // exponent p / q
  unsigned q = 1;
  dd::DDouble coeff;  // reduced mod 1 for integer powers
  double coeff_d = 0;
  double exponent_d = 0;
  Real coeff_real;
  Real exponent_real;
};

PhaseEvaluator::PhaseEvaluator(const TwistFunction& f, PhaseMode mode) : mode_(mode) {
  for (const auto& t : f.terms()) {
    Live live;
    live.coeff_real = t.coeff;
    live.exponent_real = t.exponent.to_real();
    live.exponent_d = t.exponent.value();
    if (t.exponent.is_integer()) {
      const Real reduced = t.coeff - floor(t.coeff);
      if (reduced == 0) continue;  // integer monomial: e(-c n^k) = 1
      live.kind = Live::Kind::kIntegerPower;
      live.p = numerator(t.exponent.rational()).convert_to<unsigned>();
      live.coeff_real = reduced;
    } else if (t.exponent.is_exact() &&
               denominator(t.exponent.rational()) <= kMaxRootDegree &&
               numerator(t.exponent.rational()) <= kMaxRootDegree) {
      live.kind = Live::Kind::kRootPower;
      live.p = numerator(t.exponent.rational()).convert_to<unsigned>();
      live.q = denominator(t.exponent.rational()).convert_to<unsigned>();
    } else {
      live.kind = Live::Kind::kGeneric;
    }
    live.coeff = to_dd(live.coeff_real);
    live.coeff_d = live.coeff_real.convert_to<double>();
    live_.push_back(std::move(live));
  }
}

double PhaseEvaluator::max_term(std::int64_t n) const {
  double top = 0;
  for (const auto& t : live_) {
    top = std::max(top, std::fabs(t.coeff_d) * std::pow(static_cast<double>(n), t.exponent_d));
  }
  return top;
}

double PhaseEvaluator::operator()(std::int64_t n) const {
  if (n < 1) throw DomainError("phase needs n >= 1");
  const double nd = static_cast<double>(n);
  double total = 0;
  for (const auto& t : live_) {
    const double size = std::fabs(t.coeff_d) * std::pow(nd, t.exponent_d);
    if (mode_ == PhaseMode::kMachine) {
      if (size > kMachineLimit) {
        throw RangeError("phase term " + std::to_string(size) +
                         " is too large for machine mode; use double_word");
      }
      const double v = t.coeff_d * std::pow(nd, t.exponent_d);
      total += v - std::floor(v);
      continue;
    }
    if (size > kDoubleWordLimit) {
      throw RangeError("phase term " + std::to_string(size) + " is too large for double_word mode");
    }
    double part = 0;
    switch (t.kind) {
      case Live::Kind::kIntegerPower: {
        auto power = integer_power(n, t.p);
        if (!power) {
          const Real v = t.coeff_real * pow(Real(n), t.p);
          part = Real(v - floor(v)).convert_to<double>();
        } else {
          part = dd::frac(dd::mul(t.coeff, *power));
        }
        break;
      }
      case Live::Kind::kRootPower: {
        // y = n^{1/q}: double estimate, then Newton on y^q = n in double words
        dd::DDouble y{std::pow(nd, 1.0 / t.q), 0};
        const dd::DDouble target{nd, 0};
        for (int it = 0; it < 2; ++it) {
          const dd::DDouble yq1 = dd::pow_int(y, t.q - 1);
          const dd::DDouble resid = dd::add(dd::mul(yq1, y), dd::neg(target));
          y = dd::add(y, dd::neg(dd::div(resid, dd::mul({double(t.q), 0}, yq1))));
        }
        part = dd::frac(dd::mul(t.coeff, dd::pow_int(y, t.p)));
        break;
      }
      case Live::Kind::kGeneric: {
        const Real v = t.coeff_real * pow(Real(n), t.exponent_real);
        part = Real(v - floor(v)).convert_to<double>();
        break;
      }
    }
    total += part;
  }
  total -= std::floor(total);
  return total >= 1.0 ? 0.0 : total;
}

double phase_mod1(const TwistFunction& f, std::int64_t n, PhaseMode mode) {
  return PhaseEvaluator(f, mode)(n);
}

PhaseMode auto_phase_mode(const TwistFunction& f, std::int64_t max_n) {
  PhaseEvaluator probe(f, PhaseMode::kDoubleWord);
  return probe.max_term(max_n) > 1e6 ? PhaseMode::kDoubleWord : PhaseMode::kMachine;
}

std::vector<double> geometric_grid(double lo, double hi, int count) {
  if (!(lo > 0) || !(hi >= lo) || count < 1) throw DomainError("invalid geometric grid");
  if (count == 1) return {lo};
  std::vector<double> grid(count);
  const double ratio = std::log(hi / lo) / (count - 1);
  for (int i = 0; i < count; ++i) grid[i] = lo * std::exp(ratio * i);
  grid.back() = hi;
  return grid;
}

std::int64_t cutoff(double x, double r, double tail_eps) {
  if (!(x >= 10)) throw DomainError("x must be >= 10");
  if (!(r > 0)) throw DomainError("r must be positive");
  if (!(tail_eps > 0 && tail_eps < 1)) throw DomainError("tail_eps must be in (0, 1)");
  return static_cast<std::int64_t>(std::ceil(x * std::pow(std::log(1 / tail_eps), 1 / r)));
}

SumPoint smoothed_sum(const CoefficientProvider& provider, const TwistFunction& f, double x,
                      const ResonanceConfig& cfg) {
  const std::int64_t n_max = cutoff(x, cfg.r, cfg.tail_eps);
  if (n_max > provider.max_n()) {
    throw RangeError("cutoff N(x) = " + std::to_string(n_max) + " exceeds the range of " +
                     provider.id());
  }
  const auto coeffs = provider.coefficients(n_max);
  const PhaseMode mode = cfg.phase_mode ? *cfg.phase_mode : auto_phase_mode(f, n_max);
  const PhaseEvaluator phase(f, mode);
  const int parts = std::max(1, cfg.partitions);
  std::vector<std::complex<double>> partial(parts);

  auto run_part = [&](int k) {
    const std::int64_t lo = 1 + n_max * k / parts;
    const std::int64_t hi = n_max * (k + 1) / parts;
    Neumaier re, im;
    for (std::int64_t n = lo; n <= hi; ++n) {
      const Int128 a = (*coeffs)[n];
      if (a == 0) continue;
      const double u = static_cast<double>(n) / x;
      const double w = cfg.r == 1.0 ? std::exp(-u) : std::exp(-std::pow(u, cfg.r));
      double ph = phase(n);
      if (ph >= 0.5) ph -= 1.0;
      const double angle = 2 * std::numbers::pi * ph;
      const double amp = static_cast<double>(a) * w;
      re.add(amp * std::cos(angle));
      im.add(-amp * std::sin(angle));
    }
    partial[k] = {re.value(), im.value()};
  };

  const int threads = std::clamp(cfg.threads, 1, parts);
  if (threads == 1) {
    for (int k = 0; k < parts; ++k) run_part(k);
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        for (int k = t; k < parts; k += threads) run_part(k);
      });
    }
    for (auto& th : pool) th.join();
  }
  // fixed pairwise reduction by partition index
  while (partial.size() > 1) {
    std::vector<std::complex<double>> next;
    for (std::size_t i = 0; i + 1 < partial.size(); i += 2) next.push_back(partial[i] + partial[i + 1]);
    if (partial.size() % 2) next.push_back(partial.back());
    partial.swap(next);
  }
  return SumPoint{x, partial.front(), n_max};
}

std::string model_name(const GrowthFit& fit) {
  if (fit.model == GrowthModel::kPurePower) return "pure_power";
  return "power_log_poly(" + std::to_string(fit.degree) + ")";
}

GrowthFit fit_growth(const std::vector<double>& x, const std::vector<double>& abs_s,
                     GrowthModel model, int degree, double sigma) {
  const std::size_t m = x.size();
  if (m != abs_s.size()) throw DomainError("fit_growth: size mismatch");
  if (m < 4) throw DomainError("fit_growth needs at least 4 points");
  for (std::size_t i = 0; i < m; ++i) {
    if (!(x[i] > 0) || !(abs_s[i] > 0)) throw DomainError("fit_growth needs positive x and |S|");
  }
  GrowthFit fit;
  fit.model = model;
  const int cols = model == GrowthModel::kPurePower ? 2 : degree + 1;
  if (model == GrowthModel::kPowerLogPoly && degree < 0) throw DomainError("negative degree");
  Eigen::MatrixXd a(m, cols);
  Eigen::VectorXd b(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double lx = std::log(x[i]);
    if (model == GrowthModel::kPurePower) {
      a(i, 0) = 1;
      a(i, 1) = lx;
      b(i) = std::log(abs_s[i]);
    } else {
      double p = 1;
      for (int j = 0; j <= degree; ++j, p *= lx) a(i, j) = p;
      b(i) = abs_s[i] / std::pow(x[i], sigma);
    }
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(a);
  if (qr.rank() < cols) throw NumericError("degenerate design matrix");
  const Eigen::VectorXd c = qr.solve(b);

  fit.residuals.resize(m);
  double ss = 0;
  for (std::size_t i = 0; i < m; ++i) {
    double r;
    if (model == GrowthModel::kPurePower) {
      r = b(i) - (c(0) + c(1) * std::log(x[i]));
    } else {
      const double poly = a.row(i).dot(c);
      r = poly > 0 ? std::log(b(i)) - std::log(poly) : std::numeric_limits<double>::infinity();
    }
    fit.residuals[i] = r;
    ss += r * r;
  }
  fit.residual_rms = std::sqrt(ss / m);
  if (model == GrowthModel::kPurePower) {
    fit.exponent = c(1);
    fit.coefficients = {std::exp(c(0))};
  } else {
    fit.degree = degree;
    fit.exponent = sigma;
    fit.coefficients.assign(c.data(), c.data() + c.size());
  }
  return fit;
}

std::vector<double> sliding_slopes(const std::vector<double>& x, const std::vector<double>& abs_s,
                                   int window) {
  std::vector<double> out;
  if (window < 2) throw DomainError("window must be >= 2");
  for (std::size_t i = 0; i + window <= x.size(); ++i) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int j = 0; j < window; ++j) {
      const double lx = std::log(x[i + j]), ly = std::log(abs_s[i + j]);
      sx += lx;
      sy += ly;
      sxx += lx * lx;
      sxy += lx * ly;
    }
    out.push_back((window * sxy - sx * sy) / (window * sxx - sx * sx));
  }
  return out;
}

ResonanceResult run_experiment(const LFunction& lf, const TwistFunction& f,
                               const AnalyticPrediction& prediction, const ResonanceConfig& cfg) {
  if (cfg.x_grid.empty()) throw DomainError("empty x grid");
  ResonanceResult out;
  // generate the longest prefix once
  const double x_top = *std::max_element(cfg.x_grid.begin(), cfg.x_grid.end());
  const std::int64_t n_top = cutoff(x_top, cfg.r, cfg.tail_eps);
  lf.provider.coefficients(std::min(n_top, lf.provider.max_n()));
  out.phase_mode = cfg.phase_mode ? *cfg.phase_mode : auto_phase_mode(f, n_top);
  ResonanceConfig fixed = cfg;
  fixed.phase_mode = out.phase_mode;

  std::vector<double> xs, mags;
  for (double x : cfg.x_grid) {
    SumPoint p = smoothed_sum(lf.provider, f, x, fixed);
    xs.push_back(p.x);
    mags.push_back(std::abs(p.s));
    out.max_abs_s = std::max(out.max_abs_s, std::abs(p.s));
    out.points.push_back(p);
  }
  if (xs.size() < 4) return out;
  out.pure_power = fit_growth(xs, mags, GrowthModel::kPurePower);
  out.sliding = sliding_slopes(xs, mags, 4);
  out.fit = out.pure_power;
  if (prediction.unnormalized_s0) {
    out.predicted_exponent = prediction.unnormalized_s0->re.value();
    if (prediction.kind == PredictionKind::kPolarHalfline && prediction.pole_order >= 2) {
      out.fit = fit_growth(xs, mags, GrowthModel::kPowerLogPoly, prediction.pole_order - 1,
                           *out.predicted_exponent);
    }
  }
  return out;
}

namespace {

std::string shortest(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

}  // namespace

std::string resonance_csv(const std::vector<SumPoint>& points) {
  std::string out = "x,re_S,im_S,abs_S,n_cutoff\n";
  for (const auto& p : points) {
    out += shortest(p.x) + "," + shortest(p.s.real()) + "," + shortest(p.s.imag()) + "," +
           shortest(std::abs(p.s)) + "," + std::to_string(p.n_used) + "\n";
  }
  return out;
}

}  // namespace twistlab
