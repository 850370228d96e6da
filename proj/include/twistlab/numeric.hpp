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

#ifndef TWISTLAB_NUMERIC_HPP_
#define TWISTLAB_NUMERIC_HPP_

#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

namespace twistlab {

// Working precision for series coefficients: 50 significant decimal digits.
using Real = boost::multiprecision::cpp_bin_float_50;
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;
using Int128 = __int128;

Real pi_real();
Real rational_to_real(const Rational& r);
double rational_to_double(const Rational& r);

// Parses "p/q", "-p/q", integers and decimals ("1.25", "-3e-4").
// Decimals are converted exactly to a Rational.
Rational parse_rational(const std::string& text);
Real parse_real(const std::string& text);

// Shortest text that reparses to the identical Real.
std::string to_string_exact(const Real& x);
std::string to_string_rational(const Rational& r);
std::string to_string_int128(Int128 v);
Int128 parse_int128(const std::string& text);

}  // namespace twistlab

#endif  // TWISTLAB_NUMERIC_HPP_
