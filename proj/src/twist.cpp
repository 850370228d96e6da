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

#include "twistlab/twist.hpp"

#include <cctype>
#include <utility>

#include "twistlab/errors.hpp"

namespace twistlab {

TwistFunction::TwistFunction(GPSeries series) : series_(std::move(series)) {
  if (!series_.is_exact()) throw DomainError("a twist function must be an exact series");
  for (const auto& t : series_.terms()) {
    if (t.exponent < Exponent(0)) {
      throw DomainError("twist exponent " + t.exponent.str() + " is negative");
    }
  }
}

TwistFunction TwistFunction::monomial(const Real& coeff, const Exponent& exponent) {
  return TwistFunction(GPSeries::monomial(coeff, exponent));
}

TwistFunction TwistFunction::without_constant() const {
  std::vector<Term> kept;
  for (const auto& t : terms()) {
    if (t.exponent != Exponent(0)) kept.push_back(t);
  }
  return TwistFunction(GPSeries(std::move(kept)));
}

TwistFunction operator+(const TwistFunction& a, const TwistFunction& b) {
  return TwistFunction(a.series() + b.series());
}

std::string TwistFunction::render() const {
  if (is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : terms()) {
    Real mag = abs(t.coeff);
    bool negative = t.coeff < 0;
    if (first) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    bool is_constant = t.exponent == Exponent(0);
    if (is_constant) {
      out += to_string_exact(mag);
      continue;
    }
    if (mag != 1) out += to_string_exact(mag) + "*";
    out += "x";
    if (t.exponent == Exponent(1)) continue;
    if (t.exponent.is_integer()) {
      out += "^" + t.exponent.str();
    } else {
      out += "^(" + t.exponent.str() + ")";
    }
  }
  return out;
}

namespace {

class TwistParser {
 public:
  explicit TwistParser(std::string_view text) : text_(text) {}

  GPSeries parse() {
    std::vector<Term> terms;
    skip_ws();
    int sign = 1;
    if (peek() == '+' || peek() == '-') {
      sign = peek() == '-' ? -1 : 1;
      ++pos_;
    }
    terms.push_back(parse_term(sign));
    for (;;) {
      skip_ws();
      if (at_end()) break;
      char c = peek();
      if (c != '+' && c != '-') fail("expected '+' or '-'");
      ++pos_;
      terms.push_back(parse_term(c == '-' ? -1 : 1));
    }
    return GPSeries(std::move(terms));
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }
  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  void expect(char c) {
    skip_ws();
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  Term parse_term(int sign) {
    skip_ws();
    if (peek() == 'x') {
      return Term{parse_mono(), Real(sign)};
    }
    Real coeff = parse_number(/*allow_sign=*/false) * sign;
    skip_ws();
    if (peek() == '*') {
      ++pos_;
      skip_ws();
      if (peek() != 'x') fail("expected 'x'");
      return Term{parse_mono(), coeff};
    }
    return Term{Exponent(0), coeff};
  }

  Exponent parse_mono() {
    ++pos_;  // 'x'
    skip_ws();
    if (peek() != '^') return Exponent(1);
    ++pos_;
    skip_ws();
    std::size_t start = pos_;
    Exponent e;
    if (peek() == '(') {
      ++pos_;
      skip_ws();
      start = pos_;
      e = parse_exponent();
      expect(')');
    } else {
      std::string digits = scan_signed_digits();
      if (digits.empty() || digits == "-" || digits == "+") fail("expected integer exponent");
      e = Exponent(parse_rational(digits));
    }
    if (e < Exponent(0)) {
      pos_ = start;
      fail("negative exponent");
    }
    return e;
  }

  Exponent parse_exponent() {
    std::string text = scan_number(/*allow_sign=*/true);
    if (text.find_first_of(".eE") != std::string::npos) {
      return Exponent::inexact(static_cast<double>(parse_real(text)));
    }
    return Exponent(parse_rational(text));
  }

  Real parse_number(bool allow_sign) {
    std::string text = scan_number(allow_sign);
    return parse_real(text);
  }

  std::string scan_signed_digits() {
    std::string out;
    if (peek() == '-' || peek() == '+') out.push_back(text_[pos_++]);
    while (std::isdigit(static_cast<unsigned char>(peek()))) out.push_back(text_[pos_++]);
    return out;
  }

  // int "/" posint | decimal (digits, optional fraction and exponent).
  std::string scan_number(bool allow_sign) {
    std::size_t start = pos_;
    std::string out;
    if (allow_sign && (peek() == '-' || peek() == '+')) out.push_back(text_[pos_++]);
    bool digits = false;
    while (std::isdigit(static_cast<unsigned char>(peek()))) {
      out.push_back(text_[pos_++]);
      digits = true;
    }
    bool decimal = false;
    if (peek() == '.') {
      decimal = true;
      out.push_back(text_[pos_++]);
      while (std::isdigit(static_cast<unsigned char>(peek()))) {
        out.push_back(text_[pos_++]);
        digits = true;
      }
    }
    if (!digits) {
      pos_ = start;
      fail("expected number");
    }
    if (peek() == 'e' || peek() == 'E') {
      decimal = true;
      out.push_back(text_[pos_++]);
      if (peek() == '-' || peek() == '+') out.push_back(text_[pos_++]);
      if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected exponent digits");
      while (std::isdigit(static_cast<unsigned char>(peek()))) out.push_back(text_[pos_++]);
    }
    std::size_t save = pos_;
    skip_ws();
    if (!decimal && peek() == '/') {
      ++pos_;
      skip_ws();
      std::size_t den_start = pos_;
      std::string den;
      while (std::isdigit(static_cast<unsigned char>(peek()))) den.push_back(text_[pos_++]);
      if (den.empty()) fail("expected denominator");
      if (parse_rational(den) == 0) {
        pos_ = den_start;
        fail("zero denominator");
      }
      out += "/" + den;
    } else {
      pos_ = save;
    }
    return out;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

ParsedTwist parse_twist(std::string_view expr) {
  GPSeries s = TwistParser(expr).parse();
  ParsedTwist out;
  out.twist = TwistFunction(std::move(s));
  out.cancelled_to_zero = out.twist.is_zero();
  return out;
}

Exponent lexp(const TwistFunction& f) {
  if (f.is_zero()) return Exponent(0);
  return f.leading().exponent;
}

TwistFunction flat_part(const GPSeries& s) {
  std::vector<Term> kept;
  for (const auto& t : s.terms()) {
    if (t.exponent >= Exponent(0)) kept.push_back(t);
  }
  return TwistFunction(GPSeries(std::move(kept)));
}

}  // namespace twistlab
