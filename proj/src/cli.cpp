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

#include "twistlab/cli.hpp"

#include <cctype>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <limits>
#include <memory>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "twistlab/acceptance.hpp"
#include "twistlab/classify.hpp"
#include "twistlab/errors.hpp"
#include "twistlab/lfun.hpp"
#include "twistlab/resonance.hpp"

namespace twistlab {

namespace {

using nlohmann::json;

class ChainParser {
 public:
  explicit ChainParser(std::string_view text) : text_(text) {}

  std::vector<ChainStep> parse() {
    std::vector<ChainStep> steps;
    for (;;) {
      skip_ws();
      if (at_end()) break;
      if (peek() == 'T') {
        ++pos_;
        steps.push_back(DualStep{});
      } else if (peek() == 'S') {
        steps.push_back(parse_shift());
      } else {
        fail("expected 'T' or 'S('");
      }
    }
    return steps;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }
  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  ShiftOp parse_shift() {
    std::size_t start = pos_;
    ++pos_;  // 'S'
    if (peek() != '(') fail("expected '(' after 'S'");
    ++pos_;
    std::vector<ShiftOp::Monomial> poly;
    skip_ws();
    int sign = 1;
    if (peek() == '+' || peek() == '-') {
      sign = peek() == '-' ? -1 : 1;
      ++pos_;
    }
    poly.push_back(parse_sterm(sign));
    for (;;) {
      skip_ws();
      if (peek() == ')') break;
      if (peek() != '+' && peek() != '-') fail("expected '+', '-' or ')'");
      sign = peek() == '-' ? -1 : 1;
      ++pos_;
      poly.push_back(parse_sterm(sign));
    }
    ++pos_;  // ')'
    try {
      return ShiftOp(std::move(poly));
    } catch (const DomainError&) {
      throw ParseError("shift polynomial must have deg P >= 1", start);
    }
  }

  ShiftOp::Monomial parse_sterm(int sign) {
    skip_ws();
    std::int64_t coeff = 1;
    bool has_int = false;
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      coeff = parse_int();
      has_int = true;
      skip_ws();
      if (peek() == '*') {
        ++pos_;
        skip_ws();
        if (peek() != 'x') fail("expected 'x'");
      }
    }
    if (peek() != 'x') {
      if (!has_int) fail("expected integer or 'x'");
      return {0, sign * coeff};
    }
    ++pos_;
    skip_ws();
    int degree = 1;
    if (peek() == '^') {
      ++pos_;
      skip_ws();
      if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected positive integer degree");
      std::int64_t k = parse_int();
      if (k < 1 || k > 64) fail("degree out of range");
      degree = static_cast<int>(k);
    }
    return {degree, sign * coeff};
  }

  std::int64_t parse_int() {
    std::size_t start = pos_;
    while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, v);
    if (ec != std::errc()) {
      pos_ = start;
      fail("integer out of range");
    }
    return v;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

std::string fmt_real(const Real& x, int digits) { return x.str(digits); }

json terms_json(const TwistFunction& f, int digits) {
  json arr = json::array();
  for (const auto& t : f.terms()) {
    arr.push_back({{"exponent", t.exponent.str()}, {"coeff", fmt_real(t.coeff, digits)}});
  }
  return arr;
}

json point_json(const std::optional<PolePoint>& p, int digits) {
  if (!p) return nullptr;
  return {{"re", p->re.value()},
          {"re_exact", p->re.str()},
          {"im", static_cast<double>(p->im)},
          {"im_text", fmt_real(p->im, digits)}};
}

Chain make_chain(const std::string& f0, const std::string& chain_text) {
  Chain chain;
  chain.f0 = parse_twist(f0).twist;
  chain.steps = parse_chain_dsl(chain_text);
  return chain;
}

struct GridSpec {
  double lo, hi;
  int count;
};

GridSpec parse_grid(const std::string& text) {
  // geom:<lo>:<hi>:<count>
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(item);
  if (parts.size() != 4 || parts[0] != "geom") {
    throw ParseError("x grid must read geom:<lo>:<hi>:<count>", 0);
  }
  GridSpec g{};
  try {
    g.lo = static_cast<double>(parse_real(parts[1]));
    g.hi = static_cast<double>(parse_real(parts[2]));
    g.count = std::stoi(parts[3]);
  } catch (const std::logic_error&) {
    throw ParseError("malformed x grid", 0);
  }
  return g;
}

void write_text(const std::string& path, const std::string& text) {
  std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error("cannot write " + path);
  os << text;
  if (!os) throw Error("write failed for " + path);
}

json resonance_json(const ResonanceResult& res, const TwistFunction& f) {
  json j;
  j["predicted_exponent"] = res.predicted_exponent ? json(*res.predicted_exponent) : json(nullptr);
  j["fitted_exponent"] = res.pure_power.exponent;
  j["model"] = model_name(res.fit);
  j["residual_rms"] = res.fit.residual_rms;
  j["pure_power_residual_rms"] = res.pure_power.residual_rms;
  j["sliding_slopes"] = res.sliding;
  j["max_abs_S"] = res.max_abs_s;
  j["phase_mode"] = to_string(res.phase_mode);
  j["twist"] = f.render();
  return j;
}

struct Globals {
  int precision = 30;
  int threads = 1;
  std::string cache_dir;
};

int cmd_dual(const Globals& g, const std::string& lfun, const std::string& f_text,
             const std::string& f0_text, const std::string& chain_text, std::ostream& out) {
  LFunction lf = registry(lfun, g.cache_dir);
  json j;
  j["lfun"] = lfun;
  TwistFunction result;
  if (!f_text.empty()) {
    TwistFunction f = parse_twist(f_text).twist;
    result = dual_flat(f, lf.meta);
    j["input"] = f.render();
  } else {
    Chain chain = make_chain(f0_text, chain_text);
    auto [twist, audit] = chain_apply(chain, lf.meta);
    result = twist;
    j["f0"] = chain.f0.render();
    j["chain"] = render_chain_dsl(chain.steps);
    json ells = json::array();
    for (const auto& e : audit.ells) ells.push_back(e.str());
    j["ells"] = ells;
  }
  j["dual"] = result.render();
  j["terms"] = terms_json(result, g.precision);
  j["leading_exponent"] = result.is_zero() ? json(nullptr) : json(lexp(result).str());
  out << j.dump(2) << "\n";
  return 0;
}

int cmd_classify(const Globals& g, const std::string& lfun, const std::string& f0_text,
                 const std::string& chain_text, std::ostream& out) {
  LFunction lf = registry(lfun, g.cache_dir);
  Chain chain = make_chain(f0_text, chain_text);
  auto [twist, audit] = chain_apply(chain, lf.meta);
  TwistClass cls = classify_chain(chain, lf);
  AnalyticPrediction pred = predict(cls, audit, lf.meta);
  json j;
  j["lfun"] = lfun;
  j["twist"] = twist.render();
  j["class"] = to_string(cls.kind);
  json ells = json::array();
  for (const auto& e : audit.ells) ells.push_back(e.str());
  j["ells"] = ells;
  j["weight"] = audit.weight;
  j["D"] = audit.d_invariant.str();
  j["prediction"] = to_string(pred.kind);
  j["s0"] = point_json(pred.s0, g.precision);
  j["pole_order"] = pred.pole_order;
  j["unnormalized_s0"] = point_json(pred.unnormalized_s0, g.precision);
  json notes = json::array();
  if (!pred.strip_note.empty()) notes.push_back(pred.strip_note);
  if (cls.alpha) notes.push_back("seed coefficient " + fmt_real(*cls.alpha, g.precision));
  j["notes"] = notes;
  out << j.dump(2) << "\n";
  return 0;
}

int cmd_resonance(const Globals& g, const std::string& lfun, const std::string& f0_text,
                  const std::string& chain_text, const std::string& grid_text, double r,
                  double tail_eps, const std::string& mode, int partitions,
                  const std::string& out_csv, std::string out_json, std::ostream& out) {
  LFunction lf = registry(lfun, g.cache_dir);
  Chain chain = make_chain(f0_text, chain_text);
  auto [twist, audit] = chain_apply(chain, lf.meta);
  TwistClass cls = classify_chain(chain, lf);
  AnalyticPrediction pred = predict(cls, audit, lf.meta);
  GridSpec grid = parse_grid(grid_text);
  ResonanceConfig cfg;
  cfg.x_grid = geometric_grid(grid.lo, grid.hi, grid.count);
  cfg.r = r;
  cfg.tail_eps = tail_eps;
  if (mode == "machine") cfg.phase_mode = PhaseMode::kMachine;
  if (mode == "double_word") cfg.phase_mode = PhaseMode::kDoubleWord;
  cfg.partitions = partitions;
  cfg.threads = g.threads;
  ResonanceResult res = run_experiment(lf, twist, pred, cfg);
  json j = resonance_json(res, twist);
  j["class"] = to_string(cls.kind);
  if (!out_csv.empty()) {
    write_text(out_csv, resonance_csv(res.points));
    if (out_json.empty()) {
      out_json = std::filesystem::path(out_csv).replace_extension(".json").string();
    }
  }
  if (!out_json.empty()) write_text(out_json, j.dump(2) + "\n");
  out << j.dump(2) << "\n";
  return 0;
}

int cmd_spectrum(const Globals& g, const std::string& lfun, const std::string& alpha_text,
                 std::ostream& out) {
  LFunction lf = registry(lfun, g.cache_dir);
  Real alpha = parse_real(alpha_text);
  json j;
  j["lfun"] = lfun;
  j["alpha"] = fmt_real(alpha, g.precision);
  if (alpha > 0) {
    SpecMembership m = spec_membership(lf, alpha);
    j["in_spec"] = m.in_spec;
    j["n_alpha"] = m.n_alpha ? json(*m.n_alpha) : json(nullptr);
  } else {
    j["in_spec"] = false;
    j["n_alpha"] = nullptr;
  }
  j["in_spec_star"] = spec_star_membership(lf, alpha);
  out << j.dump(2) << "\n";
  return 0;
}

int cmd_coeffs(const Globals& g, const std::string& lfun, std::int64_t max_n,
               std::string out_path, std::ostream& out) {
  LFunction lf = registry(lfun, g.cache_dir);
  if (max_n < 1 || max_n > lf.provider.max_n()) {
    throw RangeError("--max-n must lie in [1, " + std::to_string(lf.provider.max_n()) + "]");
  }
  if (out_path.empty()) {
    if (g.cache_dir.empty()) throw ParseError("coeffs needs --out or --cache-dir", 0);
    out_path = lf.provider.cache_path();
  }
  std::filesystem::path p(out_path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  Coefficients a = lf.provider.generate(max_n);
  write_cache(out_path, lfun, a);
  json j{{"lfun", lfun}, {"max_n", max_n}, {"path", out_path}};
  out << j.dump(2) << "\n";
  return 0;
}

int cmd_selftest(const Globals& g, const std::string& out_dir, const std::vector<int>& only,
                 const std::vector<int>& skip, std::ostream& out, std::ostream& err) {
  AcceptanceOptions opts;
  opts.out_dir = out_dir;
  opts.cache_dir = g.cache_dir;
  opts.only.insert(only.begin(), only.end());
  opts.skip.insert(skip.begin(), skip.end());
  std::error_code ec;
  auto self = std::filesystem::read_symlink("/proc/self/exe", ec);
  if (!ec) opts.twistlab_exe = self.string();
  opts.threads = g.threads;
  opts.log = &err;
  auto results = run_acceptance(opts);
  print_acceptance_table(results, out);
  for (const auto& r : results) {
    if (!r.pass) return 1;
  }
  return 0;
}

}  // namespace

std::vector<ChainStep> parse_chain_dsl(std::string_view text) { return ChainParser(text).parse(); }

std::string render_chain_dsl(const std::vector<ChainStep>& steps) {
  std::string out;
  for (const auto& step : steps) {
    if (!out.empty()) out += " ";
    if (std::holds_alternative<DualStep>(step)) {
      out += "T";
    } else {
      out += "S(" + std::get<ShiftOp>(step).render() + ")";
    }
  }
  return out;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Twist calculus and resonance experiments for L-function coefficients"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--precision", g.precision, "Significant digits for decimal output")
      ->check(CLI::Range(1, 50));
  app.add_option("--threads", g.threads, "Worker threads")->check(CLI::Range(1, 256));
  app.add_option("--cache-dir", g.cache_dir, "Directory of coefficient caches");

  std::string lfun, f_text, f0_text, chain_text = "S(x^2) T", grid = "geom:100:30000:10";
  std::string alpha, out_path, json_path, mode = "auto";
  double r = 1.0, tail_eps = 1e-14;
  int partitions = 8;
  std::int64_t max_n = 0;
  std::vector<int> only, skip;
  auto ids = registry_ids();

  auto* dual = app.add_subcommand("dual", "Flat dual of a twist, or of a chain output");
  dual->add_option("--lfun", lfun)->required()->check(CLI::IsMember(ids));
  auto* f_opt = dual->add_option("--f", f_text, "Twist to dualize");
  auto* f0_opt = dual->add_option("--f0", f0_text, "Chain seed");
  f_opt->excludes(f0_opt);
  dual->add_option("--chain", chain_text, "Chain applied to --f0")->needs(f0_opt);

  auto* classify = app.add_subcommand("classify", "Class, chain audit and pole prediction");
  classify->add_option("--lfun", lfun)->required()->check(CLI::IsMember(ids));
  classify->add_option("--f0", f0_text)->required();
  classify->add_option("--chain", chain_text);

  auto* resonance = app.add_subcommand("resonance", "Smoothed exponential sums and growth fits");
  resonance->add_option("--lfun", lfun)->required()->check(CLI::IsMember(ids));
  resonance->add_option("--f0", f0_text)->required();
  resonance->add_option("--chain", chain_text);
  resonance->add_option("--x-grid", grid, "geom:<lo>:<hi>:<count>");
  resonance->add_option("--r", r)->check(CLI::PositiveNumber);
  resonance->add_option("--tail-eps", tail_eps)->check(CLI::Range(1e-30, 0.5));
  resonance->add_option("--phase-mode", mode)
      ->check(CLI::IsMember({"auto", "machine", "double_word"}));
  resonance->add_option("--partitions", partitions)->check(CLI::Range(1, 4096));
  resonance->add_option("--out", out_path, "CSV output");
  resonance->add_option("--json", json_path, "Companion JSON (default: CSV path with .json)");

  auto* spectrum = app.add_subcommand("spectrum", "Membership of alpha in Spec and Spec*");
  spectrum->add_option("--lfun", lfun)->required()->check(CLI::IsMember(ids));
  spectrum->add_option("--alpha", alpha)->required();

  auto* coeffs = app.add_subcommand("coeffs", "Generate and cache coefficients");
  coeffs->add_option("--lfun", lfun)->required()->check(CLI::IsMember(ids));
  coeffs->add_option("--max-n", max_n)->required();
  coeffs->add_option("--out", out_path);

  auto* selftest = app.add_subcommand("selftest", "Run the acceptance suite");
  selftest->add_option("--out", out_path, "Artifact directory");
  selftest->add_option("--only", only, "Criterion ids to run")->check(CLI::Range(1, kCriterionCount));
  selftest->add_option("--skip", skip, "Criterion ids to skip")->check(CLI::Range(1, kCriterionCount));

  std::vector<const char*> argv;
  argv.push_back("twistlab");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "twistlab: " << e.what() << "\n";
    return 2;
  }

  try {
    if (dual->parsed()) {
      if (f_text.empty() && f0_text.empty()) {
        err << "twistlab: dual needs --f or --f0\n";
        return 2;
      }
      return cmd_dual(g, lfun, f_text, f0_text, chain_text, out);
    }
    if (classify->parsed()) return cmd_classify(g, lfun, f0_text, chain_text, out);
    if (resonance->parsed()) {
      return cmd_resonance(g, lfun, f0_text, chain_text, grid, r, tail_eps, mode, partitions,
                           out_path, json_path, out);
    }
    if (spectrum->parsed()) return cmd_spectrum(g, lfun, alpha, out);
    if (coeffs->parsed()) return cmd_coeffs(g, lfun, max_n, out_path, out);
    if (selftest->parsed()) return cmd_selftest(g, out_path, only, skip, out, err);
  } catch (const ParseError& e) {
    err << "twistlab: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "twistlab: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace twistlab
