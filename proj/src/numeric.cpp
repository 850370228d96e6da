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

#include "twistlab/numeric.hpp"

#include <algorithm>
#include <cctype>
#include <ios>
#include <limits>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "twistlab/errors.hpp"

namespace twistlab {

Real pi_real() {
  static const Real kPi = boost::math::constants::pi<Real>();
  return kPi;
}

Real rational_to_real(const Rational& r) {
  return Real(numerator(r)) / Real(denominator(r));
}

double rational_to_double(const Rational& r) {
  return static_cast<double>(rational_to_real(r));
}

namespace {

bool all_digits(const std::string& s) {
  return !s.empty() &&
         std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

}  // namespace

namespace {

// cpp_int reads a leading 0 as an octal prefix.
BigInt decimal_int(const std::string& digits) {
  const auto first = digits.find_first_not_of('0');
  return first == std::string::npos ? BigInt(0) : BigInt(digits.substr(first));
}

}  // namespace

Rational parse_rational(const std::string& raw) {
  std::string text = raw;
  text.erase(std::remove_if(text.begin(), text.end(),
                            [](unsigned char c) { return std::isspace(c); }),
             text.end());
  if (text.empty()) throw ParseError("empty number", 0);
  bool negative = false;
  std::size_t pos = 0;
  if (text[0] == '+' || text[0] == '-') {
    negative = text[0] == '-';
    pos = 1;
  }
  std::string body = text.substr(pos);
  Rational value;
  if (auto slash = body.find('/'); slash != std::string::npos) {
    std::string num = body.substr(0, slash);
    std::string den = body.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) throw ParseError("bad rational '" + raw + "'", 0);
    BigInt d = decimal_int(den);
    if (d == 0) throw ParseError("zero denominator in '" + raw + "'", slash + pos);
    value = Rational(decimal_int(num), d);
  } else {
    std::string mantissa = body;
    long long exp10 = 0;
    if (auto e = body.find_first_of("eE"); e != std::string::npos) {
      mantissa = body.substr(0, e);
      std::string ex = body.substr(e + 1);
      bool eneg = false;
      if (!ex.empty() && (ex[0] == '+' || ex[0] == '-')) {
        eneg = ex[0] == '-';
        ex = ex.substr(1);
      }
      if (!all_digits(ex) || ex.size() > 6) throw ParseError("bad exponent in '" + raw + "'", e + pos);
      exp10 = std::stoll(ex) * (eneg ? -1 : 1);
    }
    std::string digits = mantissa;
    if (auto dot = mantissa.find('.'); dot != std::string::npos) {
      digits = mantissa.substr(0, dot) + mantissa.substr(dot + 1);
      exp10 -= static_cast<long long>(mantissa.size() - dot - 1);
    }
    if (!all_digits(digits)) throw ParseError("bad number '" + raw + "'", pos);
    BigInt n = decimal_int(digits);
    BigInt scale = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(exp10 < 0 ? -exp10 : exp10));
    value = exp10 < 0 ? Rational(n, scale) : Rational(n * scale);
  }
  return negative ? Rational(-value) : value;
}

Real parse_real(const std::string& text) {
  Rational r = parse_rational(text);
  if (denominator(r) == 1 || text.find('/') != std::string::npos) return rational_to_real(r);
  // Decimal strings go through the correctly rounded string constructor.
  std::string clean;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) clean.push_back(c);
  }
  if (!clean.empty() && clean[0] == '+') clean.erase(0, 1);
  return Real(clean);
}

std::string to_string_exact(const Real& x) {
  const int max_digits = std::numeric_limits<Real>::max_digits10;
  for (int digits = 1; digits < max_digits; ++digits) {
    std::string s = x.str(digits);
    if (Real(s) == x) return s;
  }
  return x.str(max_digits, std::ios_base::scientific);
}

std::string to_string_rational(const Rational& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

std::string to_string_int128(Int128 v) {
  if (v == 0) return "0";
  bool negative = v < 0;
  unsigned __int128 u = negative ? static_cast<unsigned __int128>(-(v + 1)) + 1
                                 : static_cast<unsigned __int128>(v);
  std::string out;
  while (u > 0) {
    out.push_back(static_cast<char>('0' + static_cast<int>(u % 10)));
    u /= 10;
  }
  if (negative) out.push_back('-');
  std::reverse(out.begin(), out.end());
  return out;
}

Int128 parse_int128(const std::string& text) {
  if (text.empty()) throw ParseError("empty integer", 0);
  std::size_t pos = 0;
  bool negative = false;
  if (text[0] == '-' || text[0] == '+') {
    negative = text[0] == '-';
    pos = 1;
  }
  if (pos == text.size()) throw ParseError("bad integer '" + text + "'", pos);
  unsigned __int128 u = 0;
  for (; pos < text.size(); ++pos) {
    if (!std::isdigit(static_cast<unsigned char>(text[pos]))) {
      throw ParseError("bad integer '" + text + "'", pos);
    }
    u = u * 10 + static_cast<unsigned>(text[pos] - '0');
  }
  return negative ? -static_cast<Int128>(u) : static_cast<Int128>(u);
}

}  // namespace twistlab
