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

#ifndef TWISTLAB_RESONANCE_HPP_
#define TWISTLAB_RESONANCE_HPP_

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "twistlab/classify.hpp"
#include "twistlab/lfun.hpp"
#include "twistlab/twist.hpp"

namespace twistlab {

enum class PhaseMode { kMachine, kDoubleWord };

std::string to_string(PhaseMode mode);

// Evaluates frac(f(n)). Monomials with integer exponent and integer
// coefficient are dropped up front; the remaining terms are reduced one by
// one in the selected precision.
class PhaseEvaluator {
 public:
  PhaseEvaluator(const TwistFunction& f, PhaseMode mode);

  // In [0, 1). Throws RangeError when a term is too large for the mode.
  double operator()(std::int64_t n) const;
  PhaseMode mode() const { return mode_; }
  // Largest |alpha_j| n^kappa_j over the retained terms.
  double max_term(std::int64_t n) const;

  struct Live;

 private:
  std::vector<Live> live_;
  PhaseMode mode_;
};

double phase_mod1(const TwistFunction& f, std::int64_t n, PhaseMode mode);

// double_word when the largest retained term at max_n exceeds 10^6.
PhaseMode auto_phase_mode(const TwistFunction& f, std::int64_t max_n);

struct ResonanceConfig {
  std::vector<double> x_grid;
  double r = 1.0;
  double tail_eps = 1e-14;
  std::optional<PhaseMode> phase_mode;  // auto when unset
  int partitions = 8;
  int threads = 1;
};

std::vector<double> geometric_grid(double lo, double hi, int count);

// ceil(x (ln 1/eps)^{1/r})
std::int64_t cutoff(double x, double r, double tail_eps);

struct SumPoint {
  double x = 0;
  std::complex<double> s;
  std::int64_t n_used = 0;
};

// sum_{n <= N(x)} a(n) e(-f(n)) exp(-(n/x)^r) with unnormalized a(n).
SumPoint smoothed_sum(const CoefficientProvider& provider, const TwistFunction& f, double x,
                      const ResonanceConfig& cfg);

enum class GrowthModel { kPurePower, kPowerLogPoly };

struct GrowthFit {
  GrowthModel model = GrowthModel::kPurePower;
  int degree = 0;           // log-polynomial degree
  double exponent = 0;      // slope, or the fixed sigma for power_log_poly
  std::vector<double> coefficients;
  std::vector<double> residuals;  // log|S| - log(model)
  double residual_rms = 0;
};

std::string model_name(const GrowthFit& fit);

// pure_power: least squares of log|S| against log x.
// power_log_poly: |S| / x^sigma against 1, log x, ..., log^degree x.
GrowthFit fit_growth(const std::vector<double>& x, const std::vector<double>& abs_s,
                     GrowthModel model, int degree = 0, double sigma = 0);

// Pure-power slopes of consecutive windows of the given width.
std::vector<double> sliding_slopes(const std::vector<double>& x, const std::vector<double>& abs_s,
                                   int window = 4);

struct ResonanceResult {
  std::vector<SumPoint> points;
  GrowthFit fit;         // model chosen from the prediction
  GrowthFit pure_power;  // always reported
  std::optional<double> predicted_exponent;
  std::vector<double> sliding;
  double max_abs_s = 0;
  PhaseMode phase_mode = PhaseMode::kMachine;
};

// Columns x, re_S, im_S, abs_S, n_cutoff; shortest round-trip decimals.
std::string resonance_csv(const std::vector<SumPoint>& points);

ResonanceResult run_experiment(const LFunction& lf, const TwistFunction& f,
                               const AnalyticPrediction& prediction, const ResonanceConfig& cfg);

}  // namespace twistlab

#endif  // TWISTLAB_RESONANCE_HPP_
