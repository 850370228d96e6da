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

#include "twistlab/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <cstring>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <map>
#include <random>
#include <sstream>
#include <unistd.h>

#include "json.hpp"
#include "twistlab/classify.hpp"
#include "twistlab/cli.hpp"
#include "twistlab/errors.hpp"
#include "twistlab/lfun.hpp"
#include "twistlab/operators.hpp"
#include "twistlab/resonance.hpp"

namespace twistlab {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

constexpr std::uint64_t kSeed = 20260101;

// Portable draws from mt19937_64 (the std distributions are not pinned).
class Rng {
 public:
  explicit Rng(int criterion) : gen_(kSeed + static_cast<std::uint64_t>(criterion)) {}
  double uniform(double lo, double hi) {
    double u = static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
  }
  std::int64_t integer(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(gen_() % static_cast<std::uint64_t>(hi - lo + 1));
  }

 private:
  std::mt19937_64 gen_;
};

struct Ctx {
  const AcceptanceOptions* opts;
  json values = json::object();
  std::map<std::string, bool> checks;
  std::vector<std::string> log;

  void check(const std::string& name, bool ok) {
    auto it = checks.find(name);
    checks[name] = it == checks.end() ? ok : (it->second && ok);
  }
  void note(const std::string& line) {
    log.push_back(line);
    if (opts->log) *opts->log << "  " << line << "\n";
  }
  void write(const std::string& name, const std::string& text) const {
    if (opts->out_dir.empty()) return;
    fs::create_directories(opts->out_dir);
    std::ofstream os(fs::path(opts->out_dir) / name, std::ios::binary);
    os << text;
  }
};

std::string g(const Real& x, int digits = 25) { return x.str(digits); }
std::string g(double x) {
  std::ostringstream os;
  os << std::setprecision(6) << x;
  return os.str();
}

TwistFunction twist(const std::string& s) { return parse_twist(s).twist; }

Chain chain_of(const TwistFunction& f0, const std::string& dsl) {
  return Chain{f0, parse_chain_dsl(dsl)};
}

bool rel_close(const Real& a, const Real& b, const Real& tol) {
  Real scale = abs(b);
  if (scale == 0) return abs(a) <= tol;
  return abs(a - b) <= tol * scale;
}

// Termwise equality ignoring exponent-0 terms; each coefficient is compared
// relative to itself, missing terms relative to the largest coefficient.
bool termwise_equal(const TwistFunction& a, const TwistFunction& b, const Real& tol) {
  Real scale = 0;
  for (const auto& t : b.terms()) scale = abs(t.coeff) > scale ? Real(abs(t.coeff)) : scale;
  auto cmp = [&](const TwistFunction& x, const TwistFunction& y) {
    for (const auto& t : x.terms()) {
      if (t.exponent == Exponent(0)) continue;
      Real other = y.coefficient(t.exponent);
      Real ref = other == 0 ? scale : Real(abs(other));
      if (abs(t.coeff - other) > tol * ref) return false;
    }
    return true;
  };
  return cmp(a, b) && cmp(b, a);
}

// Dual memo shared by criteria 1 to 4.
struct DualCase {
  TwistFunction f;
  LFunctionMeta meta;
  TwistFunction dual;
};

std::map<std::string, DualCase>& dual_memo() {
  static std::map<std::string, DualCase> memo;
  return memo;
}

const DualCase& memo_dual(const TwistFunction& f, const LFunctionMeta& meta) {
  std::string key = f.render() + "|" + to_string_rational(meta.degree) + "|" +
                    to_string_exact(meta.conductor);
  auto& memo = dual_memo();
  auto it = memo.find(key);
  if (it == memo.end()) it = memo.emplace(key, DualCase{f, meta, dual_flat(f, meta)}).first;
  return it->second;
}

std::vector<DualCase> criterion1_cases() {
  Rng rng(1);
  std::vector<DualCase> out;
  LFunctionMeta meta = LFunctionMeta::synthetic(2, 1);
  for (int i = 0; i < 20; ++i) {
    Real alpha(rng.uniform(-5, 5));
    TwistFunction f = TwistFunction::monomial(1, 1) + TwistFunction::monomial(alpha, Exponent::ratio(1, 2));
    out.push_back(memo_dual(f, meta));
  }
  return out;
}

struct Family {
  std::int64_t k, l;
  Real beta;
  int q;
};

std::vector<Family> criterion2_params() {
  Rng rng(2);
  const int qs[] = {1, 5, 37};
  std::vector<Family> out;
  for (int i = 0; i < 30; ++i) {
    Family p;
    p.k = rng.integer(1, 10);
    p.l = rng.integer(-5, 5);
    p.beta = Real(rng.uniform(-3, 3));
    p.q = qs[rng.integer(0, 2)];
    out.push_back(p);
  }
  return out;
}

TwistFunction family_twist(const Family& p) {
  return TwistFunction::monomial(Real(p.k), 2) + TwistFunction::monomial(Real(p.l), 1) +
         TwistFunction::monomial(p.beta, Exponent::ratio(1, 2));
}

std::vector<DualCase> criterion2_cases() {
  std::vector<DualCase> out;
  for (const auto& p : criterion2_params()) {
    out.push_back(memo_dual(family_twist(p), LFunctionMeta::synthetic(2, Real(p.q))));
  }
  return out;
}

std::vector<std::pair<TwistFunction, LFunctionMeta>> criterion3_twists() {
  Rng rng(3);
  std::vector<std::pair<TwistFunction, LFunctionMeta>> out;
  for (int i = 0; i < 20; ++i) {
    int d = static_cast<int>(rng.integer(1, 3));
    // leading exponent p/q > 1/d with q in {1, 2, 3} and value at most 3
    Rational kappa0;
    do {
      std::int64_t den = rng.integer(1, 3);
      std::int64_t num = rng.integer(1, 3 * den);
      kappa0 = Rational(num, den);
    } while (kappa0 * d <= 1);
    Real lead(rng.uniform(0.5, 3));
    if (rng.integer(0, 1) == 1) lead = -lead;
    TwistFunction f = TwistFunction::monomial(lead, Exponent(kappa0));
    int extra = static_cast<int>(rng.integer(0, 2));
    for (int j = 0; j < extra; ++j) {
      std::int64_t den = rng.integer(1, 6);
      std::int64_t num = rng.integer(1, 6 * 3);
      Rational e(num, den);
      if (e >= kappa0) continue;
      f = f + TwistFunction::monomial(Real(rng.uniform(-3, 3)), Exponent(e));
    }
    Real q = Real(rng.integer(1, 40));
    out.emplace_back(f, LFunctionMeta::synthetic(d, q));
  }
  return out;
}

// criterion bodies ---------------------------------------------------------

void closed_form_conductor_one(Ctx& c) {
  Real tol("1e-25");
  json rows = json::array();
  for (const auto& dc : criterion1_cases()) {
    Real alpha = dc.f.coefficient(Exponent::ratio(1, 2));
    Real lin = dc.dual.coefficient(1);
    Real half = dc.dual.coefficient(Exponent::ratio(1, 2));
    bool ok = abs(lin + 1) <= tol && abs(half - alpha) <= tol;
    for (const auto& t : dc.dual.terms()) {
      if (t.exponent != Exponent(1) && t.exponent != Exponent::ratio(1, 2) &&
          t.exponent != Exponent(0)) {
        ok = ok && abs(t.coeff) <= tol;
      }
    }
    c.check("coefficients", ok);
    rows.push_back({{"alpha", g(alpha)},
                    {"dual", dc.dual.render()},
                    {"constant", g(dc.dual.coefficient(0))},
                    {"ok", ok}});
  }
  c.values["cases"] = rows;
  c.note("duals equal -x + alpha x^(1/2) up to the constant -alpha^2/4 in all cases: " +
         std::string(c.checks["coefficients"] ? "yes" : "no"));
}

void closed_form_family(Ctx& c) {
  json rows = json::array();
  Real tol("1e-20");
  std::map<std::string, int> forms;
  for (const auto& p : criterion2_params()) {
    LFunctionMeta meta = LFunctionMeta::synthetic(2, Real(p.q));
    TwistFunction f = family_twist(p);
    const DualCase& dc = memo_dual(f, meta);
    Real k(p.k), l(p.l), q(p.q);
    Real a_expected = Real(3) / (2 * cbrt(2 * k * q * q));
    Real c_expected = abs(p.beta) / (2 * pow(k * k * q, Real(1) / 6));
    Real a = dc.dual.coefficient(Exponent::ratio(2, 3));
    Real cc = dc.dual.coefficient(Exponent::ratio(1, 6));
    Real b = dc.dual.coefficient(Exponent::ratio(1, 3));
    bool a_ok = rel_close(a, a_expected, tol);
    bool a_mag_ok = rel_close(abs(a), a_expected, tol);
    bool c_ok = rel_close(abs(cc), c_expected, tol);
    c.check("a_coefficient", a_ok);
    c.check("c_coefficient", c_ok);

    // probe regression for the x^(1/3) coefficient: subtract every other
    // term of the deep expansion from the numeric dual
    GPSeries full = dual_series(f, meta, Exponent(-4));
    std::vector<Real> xis = {Real(10000), Real(100000), Real(1000000)};
    auto probe = numeric_dual_probe(f, meta, xis);
    Real b_scale = abs(b) > 0 ? Real(abs(b)) : Real(abs(a));
    bool b_ok = true;
    json b_fits = json::array();
    for (const auto& s : probe) {
      Real rest = 0;
      for (const auto& t : full.terms()) {
        if (t.exponent == Exponent::ratio(1, 3)) continue;
        rest += t.coeff * pow(s.xi, t.exponent.to_real());
      }
      Real b_fit = (s.value - rest) / cbrt(s.xi);
      b_ok = b_ok && abs(b_fit - b) <= Real("1e-6") * b_scale;
      b_fits.push_back(g(b_fit, 12));
    }
    c.check("b_probe_regression", b_ok);

    Real form_23 = Real(3) / 4 * abs(l) / pow(2 * k * k * q, Real(2) / 3);
    Real form_13 = Real(3) * abs(l) / (4 * cbrt(2 * k * k * q));
    std::string form;
    if (p.l == 0) {
      form = "both (l = 0)";
    } else {
      bool m23 = abs(abs(b) - form_23) <= Real("1e-6") * form_23;
      bool m13 = abs(abs(b) - form_13) <= Real("1e-6") * form_13;
      form = m23 && m13 ? "both" : m23 ? "(2k^2q)^(2/3) form" : m13 ? "(2k^2q)^(1/3) form" : "neither";
    }
    ++forms[form];
    if (!a_ok || !c_ok) {
      c.note("k=" + std::to_string(p.k) + " l=" + std::to_string(p.l) + " q=" + std::to_string(p.q) +
             ": A " + g(a, 12) + " vs " + g(a_expected, 12) + ", |C| " + g(abs(cc), 12) + " vs " +
             g(c_expected, 12) + " (ratio " + g(abs(cc) / c_expected, 12) + ")");
    }
    rows.push_back({{"k", p.k},
                    {"l", p.l},
                    {"beta", g(p.beta)},
                    {"q", p.q},
                    {"A", g(a)},
                    {"A_expected", g(a_expected)},
                    {"A_magnitude_ok", a_mag_ok},
                    {"B", g(b)},
                    {"B_probe", b_fits},
                    {"B_form", form},
                    {"C", g(cc)},
                    {"C_expected_magnitude", g(c_expected)}});
  }
  c.values["cases"] = rows;
  json fj = json::object();
  for (const auto& [k, v] : forms) {
    fj[k] = v;
    c.note("x^(1/3) coefficient matches " + k + " in " + std::to_string(v) + " cases");
  }
  c.values["b_printed_form_counts"] = fj;
}

void self_reciprocity(Ctx& c) {
  json rows = json::array();
  for (const auto& [f, meta] : criterion3_twists()) {
    const DualCase& once = memo_dual(f, meta);
    const DualCase& twice = memo_dual(once.dual.without_constant(), meta);
    bool ok = termwise_equal(twice.dual, f, Real("1e-20"));
    c.check("double_dual", ok);
    rows.push_back({{"d", to_string_rational(meta.degree)},
                    {"q", g(meta.conductor)},
                    {"f", f.render()},
                    {"dual", once.dual.render()},
                    {"double_dual", twice.dual.render()},
                    {"ok", ok}});
    if (!ok) c.note("mismatch for f = " + f.render() + " (d = " + to_string_rational(meta.degree) + ")");
  }
  c.values["cases"] = rows;
}

void leading_exponent_law(Ctx& c) {
  std::vector<DualCase> all = criterion1_cases();
  for (auto& dc : criterion2_cases()) all.push_back(dc);
  for (const auto& [f, meta] : criterion3_twists()) {
    const DualCase& once = memo_dual(f, meta);
    all.push_back(once);
    all.push_back(memo_dual(once.dual.without_constant(), meta));
  }
  int bad = 0;
  for (const auto& dc : all) {
    Rational k0 = lexp(dc.f).rational();
    Rational expected = k0 / (dc.meta.degree * k0 - 1);
    bool ok = lexp(dc.dual).is_exact() && lexp(dc.dual).rational() == expected;
    if (!ok) ++bad;
    c.check("exact_law", ok);
  }
  c.values["cases"] = all.size();
  c.values["violations"] = bad;
}

void chain_audit(Ctx& c) {
  LFunction ec = registry("ec37a", c.opts->cache_dir);
  Real beta = 2 / sqrt(Real(37));
  auto [f11, a11] = chain_apply(chain_of(TwistFunction::monomial(beta, Exponent::ratio(1, 2)), "S(x^2) T"), ec.meta);
  bool golden = a11.ells.size() == 1 && a11.ells[0] == Exponent(2) && a11.weight == 1 &&
                a11.d_invariant == Exponent(3);
  c.check("resonant_chain_l1_2_w1_D3", golden);
  c.values["resonant_chain"] = {{"twist", f11.render()},
                                {"ells", a11.ells.empty() ? "" : a11.ells[0].str()},
                                {"weight", a11.weight},
                                {"D", a11.d_invariant.str()}};

  LFunctionMeta m2 = LFunctionMeta::synthetic(2, 1);
  json dbl = json::array();
  for (const char* a : {"0.7", "1.3", "-0.45"}) {
    TwistFunction f0 = twist(std::string(a) + "*x^(1/2)");
    auto [g1, au1] = chain_apply(chain_of(f0, "S(x) T S(x) S(x) T"), m2);
    auto [g2, au2] = chain_apply(chain_of(f0, "S(x) T"), m2);
    bool eq = termwise_equal(g1, g2, Real("1e-25"));
    bool d_eq = au1.d_invariant == au2.d_invariant;
    c.check("double_chain_equal_twists", eq);
    c.check("double_chain_equal_D", d_eq);
    dbl.push_back({{"alpha", a},
                   {"long_chain", g1.render()},
                   {"short_chain", g2.render()},
                   {"D_long", au1.d_invariant.str()},
                   {"D_short", au2.d_invariant.str()}});
  }
  c.values["double_chain"] = dbl;

  Rng rng(5);
  json suite = json::array();
  for (int i = 0; i < 8; ++i) {
    LFunctionMeta m3 = LFunctionMeta::synthetic(3, Real(rng.integer(1, 12)));
    Chain ch{TwistFunction::monomial(Real(rng.uniform(0.1, 2)), Exponent::ratio(1, 3)), {}};
    std::vector<int> degs;
    int pairs = static_cast<int>(rng.integer(1, 2));
    for (int j = 0; j < pairs; ++j) {
      int deg = static_cast<int>(rng.integer(1, 3));
      std::vector<ShiftOp::Monomial> poly{{deg, rng.integer(1, 4) * (rng.integer(0, 1) ? 1 : -1)}};
      if (deg > 1) poly.push_back({deg - 1, rng.integer(-3, 3)});
      ch.steps.push_back(ShiftOp(poly));
      ch.steps.push_back(DualStep{});
      degs.push_back(deg);
    }
    auto [gf, au] = chain_apply(ch, m3);
    bool ok = au.ells.size() == degs.size();
    for (std::size_t j = 0; ok && j < degs.size(); ++j) ok = au.ells[j] == Exponent(degs[j]);
    c.check("degree_three_ells_equal_shift_degrees", ok);
    json ells = json::array();
    for (const auto& e : au.ells) ells.push_back(e.str());
    suite.push_back({{"chain", render_chain_dsl(ch.steps)}, {"ells", ells}, {"D", au.d_invariant.str()}});
  }
  c.values["degree_three_suite"] = suite;
}

bool exact_re(const std::optional<PolePoint>& p, const Rational& r) {
  return p && p->re.is_exact() && p->re.rational() == r && p->im == 0;
}

AnalyticPrediction predict_chain(const Chain& ch, const LFunction& lf, TwistClass* cls_out = nullptr,
                                 TwistFunction* twist_out = nullptr) {
  auto [f, audit] = chain_apply(ch, lf.meta);
  TwistClass cls = classify_chain(ch, lf);
  if (cls_out) *cls_out = cls;
  if (twist_out) *twist_out = f;
  return predict(cls, audit, lf.meta);
}

Real family_beta(const Real& alpha) {
  // seed 2 (k^2 q)^{1/6} alpha for k = 1, q = 37
  return 2 * pow(Real(37), Real(1) / 6) * alpha;
}

Real resonant_alpha() { return pow(Real(37), Real(-2) / 3); }
Real entire_alpha() { return pow(Real(37), Real(-20) / 31); }

void classification(Ctx& c) {
  LFunction ec = registry("ec37a", c.opts->cache_dir);
  TwistClass cls;
  auto res = predict_chain(
      chain_of(TwistFunction::monomial(family_beta(resonant_alpha()), Exponent::ratio(1, 2)), "S(x^2) T"),
      ec, &cls);
  c.check("resonant_class", cls.kind == TwistClassKind::kA0MinusA00);
  c.check("resonant_simple_pole", res.kind == PredictionKind::kSimplePoleHalfline && res.pole_order == 1);
  c.check("resonant_s0_7_12", exact_re(res.s0, Rational(7, 12)));
  c.check("resonant_unnormalized_13_12", exact_re(res.unnormalized_s0, Rational(13, 12)));
  c.values["resonant"] = {{"class", to_string(cls.kind)},
                          {"prediction", to_string(res.kind)},
                          {"s0", res.s0 ? res.s0->re.str() : ""},
                          {"unnormalized_s0", res.unnormalized_s0 ? res.unnormalized_s0->re.str() : ""}};

  auto ent = predict_chain(
      chain_of(TwistFunction::monomial(family_beta(entire_alpha()), Exponent::ratio(1, 2)), "S(x^2) T"),
      ec, &cls);
  c.check("non_resonant_entire", ent.kind == PredictionKind::kEntire && !ent.s0);
  c.values["non_resonant"] = {{"class", to_string(cls.kind)}, {"prediction", to_string(ent.kind)}};

  LFunction z2 = registry("zeta2", c.opts->cache_dir);
  auto pol = predict_chain(chain_of(TwistFunction(), "S(x^2) T"), z2, &cls);
  c.check("polar_class", cls.kind == TwistClassKind::kA00);
  c.check("polar_order_2", pol.kind == PredictionKind::kPolarHalfline && pol.pole_order == 2);
  c.check("polar_s0_2_3", exact_re(pol.s0, Rational(2, 3)));
  c.values["polar"] = {{"class", to_string(cls.kind)},
                       {"pole_order", pol.pole_order},
                       {"s0", pol.s0 ? pol.s0->re.str() : ""}};
}

void spectrum(Ctx& c) {
  LFunction ec = registry("ec37a", c.opts->cache_dir);
  LFunction delta = registry("delta", c.opts->cache_dir);
  LFunction zeta = registry("zeta", c.opts->cache_dir);
  SpecMembership m = spec_membership(ec, 2 / sqrt(Real(37)));
  c.check("ec37a_2_over_sqrt37", m.in_spec && m.n_alpha == 1);
  SpecMembership md = spec_membership(delta, 2 * sqrt(Real(2)));
  c.check("delta_2_sqrt2", md.in_spec);
  c.check("zeta_zero_in_spec_star", spec_star_membership(zeta, Real(0)));
  c.check("delta_zero_not_in_spec_star", !spec_star_membership(delta, Real(0)));
  c.values["ec37a_n_alpha"] = m.n_alpha ? json(*m.n_alpha) : json(nullptr);
  c.values["delta_n_alpha"] = md.n_alpha ? json(*md.n_alpha) : json(nullptr);
}

// Coefficients of q prod (1 - q^n)^24 by repeated multiplication.
std::vector<BigInt> tau_oracle(int n_max) {
  std::vector<BigInt> p(n_max, 0);  // coefficients of prod, index = power of q
  p[0] = 1;
  for (int n = 1; n < n_max; ++n) {
    for (int rep = 0; rep < 24; ++rep) {
      for (int i = n_max - 1; i >= n; --i) p[i] -= p[i - n];
    }
  }
  std::vector<BigInt> tau(n_max + 1, 0);
  for (int i = 0; i < n_max; ++i) tau[i + 1] = p[i];
  return tau;
}

// p + 1 - #E(F_p) for y^2 - y = x^3 - x by direct enumeration.
std::int64_t brute_ap(std::int64_t p) {
  std::vector<std::int64_t> count(p, 0);
  for (std::int64_t y = 0; y < p; ++y) ++count[((y * y - y) % p + p) % p];
  std::int64_t points = 0;
  for (std::int64_t x = 0; x < p; ++x) points += count[((x * x % p * x - x) % p + p) % p];
  return p - points;
}

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

void coefficients(Ctx& c) {
  auto tau = ramanujan_tau(1000);
  auto oracle = tau_oracle(1000);
  bool tau_ok = true;
  for (int n = 1; n <= 1000; ++n) tau_ok = tau_ok && BigInt(to_string_int128(tau[n])) == oracle[n];
  c.check("tau_matches_q_expansion", tau_ok);

  auto ec_small = ec37a_coefficients(1000);
  bool ap_ok = true;
  for (std::int64_t p = 2; p <= 1000; ++p) {
    if (is_prime(p)) ap_ok = ap_ok && ec_small[p] == brute_ap(p);
  }
  c.check("ap_matches_point_count", ap_ok);

  auto tau_big = ramanujan_tau(100000);
  bool deligne = true;
  for (std::int64_t p = 2; p <= 100000; ++p) {
    if (!is_prime(p)) continue;
    BigInt t(to_string_int128(tau_big[p]));
    BigInt bound = 4 * boost::multiprecision::pow(BigInt(p), 11);
    deligne = deligne && t * t <= bound;
  }
  c.check("deligne_bound_p_le_1e5", deligne);

  auto d = divisor_counts(10000);
  bool div_ok = true;
  for (int n = 1; n <= 10000; ++n) {
    int cnt = 0;
    for (int k = 1; k <= n; ++k) cnt += n % k == 0;
    div_ok = div_ok && d[n] == cnt;
  }
  c.check("divisor_sieve", div_ok);

  LFunction ec = registry("ec37a", c.opts->cache_dir);
  auto t0 = std::chrono::steady_clock::now();
  Coefficients full = ec.provider.generate(1000000);
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  c.check("generation_under_5_min", secs < 300);
  if (c.opts->log) *c.opts->log << "  ec37a generation to 10^6 took " << g(secs) << " s\n";
  bool hasse = static_cast<std::int64_t>(full.size()) > 1000000;
  std::vector<bool> composite(1000001, false);
  for (std::int64_t p = 2; p <= 1000000 && hasse; ++p) {
    if (composite[p]) continue;
    for (std::int64_t m = p * p; m <= 1000000; m += p) composite[m] = true;
    Int128 a = full[p];
    hasse = a * a <= 4 * static_cast<Int128>(p);
  }
  c.check("hasse_bound_p_le_1e6", hasse);
}

struct ResonanceRun {
  ResonanceResult res;
  TwistFunction twist;
  AnalyticPrediction pred;
};

ResonanceRun resonance_run(const LFunction& lf, const Chain& ch, std::vector<double> grid, int threads) {
  ResonanceRun out;
  TwistClass cls;
  out.pred = predict_chain(ch, lf, &cls, &out.twist);
  ResonanceConfig cfg;
  cfg.x_grid = std::move(grid);
  cfg.threads = threads;
  out.res = run_experiment(lf, out.twist, out.pred, cfg);
  return out;
}

json resonance_values(const ResonanceRun& r) {
  return {{"twist", r.twist.render()},
          {"prediction", to_string(r.pred.kind)},
          {"predicted_exponent", r.res.predicted_exponent ? json(*r.res.predicted_exponent) : json(nullptr)},
          {"fitted_exponent", r.res.pure_power.exponent},
          {"model", model_name(r.res.fit)},
          {"residual_rms", r.res.fit.residual_rms},
          {"pure_power_residual_rms", r.res.pure_power.residual_rms},
          {"sliding_slopes", r.res.sliding},
          {"max_abs_S", r.res.max_abs_s},
          {"phase_mode", to_string(r.res.phase_mode)}};
}

std::string slopes_text(const std::vector<double>& v) {
  std::string s;
  for (double x : v) s += (s.empty() ? "" : " ") + g(x);
  return s;
}

// Displayed form of the degree-two resonant twist with the given seed alpha.
TwistFunction displayed_twist(const Real& alpha) {
  Real a = Real(3) / (2 * cbrt(Real(2738)));
  return TwistFunction::monomial(-a, Exponent::ratio(2, 3)) +
         TwistFunction::monomial(alpha, Exponent::ratio(1, 6));
}

void ec37a_resonance(Ctx& c, bool resonant, const std::string& stem) {
  LFunction ec = registry("ec37a", c.opts->cache_dir);
  Real alpha = resonant ? resonant_alpha() : entire_alpha();
  Chain ch = chain_of(TwistFunction::monomial(family_beta(alpha), Exponent::ratio(1, 2)), "S(x^2) T");
  auto grid = geometric_grid(1e2, 3e4, 10);
  ResonanceRun run = resonance_run(ec, ch, grid, c.opts->threads);
  c.values["chain_twist"] = resonance_values(run);
  c.write(stem + ".csv", resonance_csv(run.res.points));
  double slope = run.res.pure_power.exponent;
  if (resonant) {
    double target = 13.0 / 12.0;
    c.check("fitted_exponent_within_0.10", std::abs(slope - target) <= 0.10);
    const auto& s = run.res.sliding;
    bool mono = s.size() >= 4;
    for (std::size_t i = s.size() >= 4 ? s.size() - 3 : 0; mono && i < s.size(); ++i) {
      mono = std::abs(s[i] - target) < std::abs(s[i - 1] - target);
    }
    c.check("sliding_slopes_approach_monotonically", mono);
  } else {
    c.check("max_abs_S_below_50", run.res.max_abs_s < 50);
    c.check("fitted_exponent_below_0.25", slope < 0.25);
  }
  c.note("chain twist " + run.twist.render());
  c.note("fitted " + g(slope) + ", max|S| " + g(run.res.max_abs_s) + ", sliding " +
         slopes_text(run.res.sliding));

  // diagnostic only: the displayed closed form of the same twist
  ResonanceConfig cfg;
  cfg.x_grid = grid;
  cfg.threads = c.opts->threads;
  ResonanceResult diag = run_experiment(ec, displayed_twist(alpha), run.pred, cfg);
  ResonanceRun dr{diag, displayed_twist(alpha), run.pred};
  c.values["displayed_twist_diagnostic"] = resonance_values(dr);
  c.write(stem + "_displayed.csv", resonance_csv(diag.points));
  c.note("diagnostic displayed twist: fitted " + g(diag.pure_power.exponent) + ", max|S| " +
         g(diag.max_abs_s) + ", sliding " + slopes_text(diag.sliding));
}

void polar_resonance(Ctx& c) {
  LFunction z2 = registry("zeta2", c.opts->cache_dir);
  ResonanceRun run = resonance_run(z2, chain_of(TwistFunction(), "S(x^2) T"), geometric_grid(1e2, 1e5, 13),
                                   c.opts->threads);
  c.values["run"] = resonance_values(run);
  c.write("criterion_11_zeta2.csv", resonance_csv(run.res.points));
  bool model_ok = run.res.fit.model == GrowthModel::kPowerLogPoly && run.res.fit.degree == 1;
  c.check("power_log_poly_1_selected", model_ok);
  c.check("log_poly_rms_3x_smaller", 3 * run.res.fit.residual_rms <= run.res.pure_power.residual_rms);
  double slope = run.res.pure_power.exponent;
  c.check("pure_power_slope_in_0.60_0.80", slope >= 0.60 && slope <= 0.80);
  c.note("pure slope " + g(slope) + ", rms pure " + g(run.res.pure_power.residual_rms) + " vs log-poly " +
         g(run.res.fit.residual_rms));
}

void degree_one_resonance(Ctx& c) {
  LFunction z = registry("zeta", c.opts->cache_dir);
  Chain ch = chain_of(TwistFunction(), "S(x^3) T");
  auto [f, audit] = chain_apply(ch, z.meta);
  Real expected = 2 * sqrt(Real(3)) / 9;
  bool shape = f.terms().size() == 1 && f.leading().exponent == Exponent::ratio(3, 2) &&
               rel_close(abs(f.leading().coeff), expected, Real("1e-25"));
  c.check("twist_is_2sqrt3_over_9_x_3_2", shape);
  c.check("D_equals_2", audit.d_invariant == Exponent(2));
  ResonanceRun run = resonance_run(z, ch, geometric_grid(1e2, 1e5, 13), c.opts->threads);
  c.values["run"] = resonance_values(run);
  c.write("criterion_12_zeta.csv", resonance_csv(run.res.points));
  double slope = run.res.pure_power.exponent;
  c.check("fitted_exponent_within_0.08", std::abs(slope - 0.75) <= 0.08);
  c.note("twist " + f.render() + ", fitted " + g(slope));
}

void shift_invariance(Ctx& c) {
  LFunction delta = registry("delta", c.opts->cache_dir);
  Chain ch = chain_of(TwistFunction::monomial(2 * sqrt(Real(2)), Exponent::ratio(1, 2)), "S(x^2) T");
  auto [base, audit] = chain_apply(ch, delta.meta);
  TwistFunction f = base + twist("0.3*x + 1.7*x^2");
  ResonanceConfig cfg;
  cfg.threads = c.opts->threads;
  std::vector<double> xs = {300.0, 3000.0};
  std::vector<SumPoint> ref;
  for (double x : xs) ref.push_back(smoothed_sum(delta.provider, f, x, cfg));
  Rng rng(13);
  json rows = json::array();
  for (int i = 0; i < 10; ++i) {
    int deg = static_cast<int>(rng.integer(1, 4));
    std::vector<ShiftOp::Monomial> poly;
    for (int k = deg; k >= 0; --k) {
      std::int64_t coef = rng.integer(-9, 9);
      if (k == deg && coef == 0) coef = 1;
      poly.push_back({k, coef});
    }
    ShiftOp shift(poly);
    TwistFunction fp = apply_shift(f, shift);
    bool same = true;
    for (std::size_t j = 0; j < xs.size(); ++j) {
      SumPoint s = smoothed_sum(delta.provider, fp, xs[j], cfg);
      same = same && std::memcmp(&s.s, &ref[j].s, sizeof(s.s)) == 0 && s.n_used == ref[j].n_used;
    }
    c.check("bit_identical", same);
    rows.push_back({{"shift", shift.render()}, {"identical", same}});
  }
  c.values["shifts"] = rows;
}

std::string shell_quote(const std::string& s) {
  std::string out = "'";
  for (char ch : s) out += ch == '\'' ? std::string("'\\''") : std::string(1, ch);
  return out + "'";
}

std::map<std::string, std::string> read_tree(const fs::path& root) {
  std::map<std::string, std::string> out;
  if (!fs::exists(root)) return out;
  for (const auto& e : fs::recursive_directory_iterator(root)) {
    if (!e.is_regular_file()) continue;
    std::ifstream is(e.path(), std::ios::binary);
    std::ostringstream ss;
    ss << is.rdbuf();
    out[fs::relative(e.path(), root).generic_string()] = ss.str();
  }
  return out;
}

void reproducibility(Ctx& c) {
  if (c.opts->twistlab_exe.empty()) {
    c.check("twistlab_executable_available", false);
    return;
  }
  fs::path work = fs::temp_directory_path() / ("twistlab-repro-" + std::to_string(::getpid()));
  fs::remove_all(work);
  fs::create_directories(work);
  std::vector<std::map<std::string, std::string>> trees;
  for (int run = 0; run < 2; ++run) {
    fs::path dir = work / ("run" + std::to_string(run));
    std::string cmd = shell_quote(c.opts->twistlab_exe) + " --threads " + std::to_string(c.opts->threads);
    if (!c.opts->cache_dir.empty()) cmd += " --cache-dir " + shell_quote(c.opts->cache_dir);
    cmd += " selftest --skip 14 --out " + shell_quote(dir.string()) + " > " +
           shell_quote((work / ("run" + std::to_string(run) + ".log")).string()) + " 2>&1";
    if (c.opts->log) *c.opts->log << "  running selftest pass " << run + 1 << "\n";
    // a nonzero status only reports failures of the other criteria
    int status = std::system(cmd.c_str());
    if (c.opts->log) *c.opts->log << "  selftest pass " << run + 1 << " exit status " << status << "\n";
    trees.push_back(read_tree(dir));
  }
  bool nonempty = !trees[0].empty();
  bool same_names = trees[0].size() == trees[1].size();
  json files = json::array();
  bool identical = nonempty && same_names;
  for (const auto& [name, text] : trees[0]) {
    auto it = trees[1].find(name);
    bool eq = it != trees[1].end() && it->second == text;
    identical = identical && eq;
    files.push_back({{"file", name}, {"identical", eq}});
    if (!eq) c.note("differs: " + name);
  }
  c.check("artifacts_present", nonempty);
  c.check("byte_identical", identical);
  c.values["files"] = files;
  fs::remove_all(work);
}

struct Criterion {
  int id;
  const char* title;
  double budget;
  std::function<void(Ctx&)> body;
};

std::vector<Criterion> criteria() {
  return {
      {1, "closed-form dual, conductor 1", 1, closed_form_conductor_one},
      {2, "closed-form dual, degree-two family", 30, closed_form_family},
      {3, "self-reciprocity", 60, self_reciprocity},
      {4, "leading-exponent law", 0, leading_exponent_law},
      {5, "chain audit golden values", 5, chain_audit},
      {6, "classification and prediction", 5, classification},
      {7, "spectrum membership", 5, spectrum},
      {8, "coefficient oracles and generation", 0, coefficients},
      {9, "resonance, resonant case", 600, [](Ctx& c) { ec37a_resonance(c, true, "criterion_09_ec37a"); }},
      {10, "resonance, entire case", 600, [](Ctx& c) { ec37a_resonance(c, false, "criterion_10_ec37a"); }},
      {11, "resonance, polar case", 180, polar_resonance},
      {12, "resonance, degree-one case", 120, degree_one_resonance},
      {13, "shift invariance", 60, shift_invariance},
      {14, "selftest reproducibility", 0, reproducibility},
  };
}

}  // namespace

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opts) {
  std::vector<CriterionResult> results;
  for (const auto& cr : criteria()) {
    if (!opts.only.empty() && !opts.only.count(cr.id)) continue;
    if (opts.skip.count(cr.id)) continue;
    if (opts.log) *opts.log << "criterion " << cr.id << ": " << cr.title << "\n";
    Ctx ctx;
    ctx.opts = &opts;
    auto t0 = std::chrono::steady_clock::now();
    try {
      cr.body(ctx);
    } catch (const std::exception& e) {
      ctx.check("completed", false);
      ctx.note(std::string("error: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool checks_ok = !ctx.checks.empty();
    std::string failed;
    for (const auto& [name, ok] : ctx.checks) {
      checks_ok = checks_ok && ok;
      if (!ok) failed += (failed.empty() ? "" : ", ") + name;
    }
    bool in_budget = cr.budget == 0 || secs < cr.budget;
    if (!in_budget) failed += (failed.empty() ? "" : ", ") + std::string("runtime");

    json art;
    art["id"] = cr.id;
    art["title"] = cr.title;
    art["checks"] = ctx.checks;
    art["checks_pass"] = checks_ok;
    art["values"] = ctx.values;
    art["log"] = ctx.log;
    char name[32];
    std::snprintf(name, sizeof(name), "criterion_%02d.json", cr.id);
    ctx.write(name, art.dump(2) + "\n");

    CriterionResult r;
    r.id = cr.id;
    r.title = cr.title;
    r.pass = checks_ok && in_budget;
    r.seconds = secs;
    r.budget_seconds = cr.budget;
    r.detail = failed.empty() ? "" : "failed: " + failed;
    results.push_back(r);
  }
  return results;
}

void print_acceptance_table(const std::vector<CriterionResult>& results, std::ostream& out) {
  int passed = 0;
  for (const auto& r : results) {
    passed += r.pass;
    std::ostringstream t;
    t << std::fixed << std::setprecision(1) << r.seconds << "s";
    if (r.budget_seconds > 0) t << "/" << std::setprecision(0) << r.budget_seconds << "s";
    out << "criterion " << std::setw(2) << r.id << "  " << (r.pass ? "PASS" : "FAIL") << "  "
        << std::setw(12) << t.str() << "  " << r.title << (r.detail.empty() ? "" : "  [" + r.detail + "]")
        << "\n";
  }
  out << passed << "/" << results.size() << " criteria passed\n";
}

}  // namespace twistlab
