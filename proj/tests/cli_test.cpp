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

#include <sstream>

#include "doctest.h"
#include "twistlab/cli.hpp"
#include "twistlab/errors.hpp"

using namespace twistlab;

namespace {

int run(std::vector<std::string> args, std::string* out = nullptr) {
  std::ostringstream o, e;
  int status = run_cli(args, o, e);
  if (out) *out = o.str();
  return status;
}

}  // namespace

TEST_CASE("chain dsl examples") {
  auto a = parse_chain_dsl("S(x^2) T");
  REQUIRE(a.size() == 2);
  CHECK(std::get<ShiftOp>(a[0]).render() == "x^2");
  CHECK(std::holds_alternative<DualStep>(a[1]));

  auto b = parse_chain_dsl("S(2x^3 - x) T S(x) T");
  REQUIRE(b.size() == 4);
  CHECK(std::get<ShiftOp>(b[0]).degree() == 3);
  CHECK(std::get<ShiftOp>(b[2]).degree() == 1);
  CHECK(render_chain_dsl(b) == "S(2x^3 - x) T S(x) T");
}

TEST_CASE("constant shift is rejected") {
  try {
    parse_chain_dsl("S(3)");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("deg P >= 1") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_chain_dsl("S(x - x)"), ParseError);
  CHECK_THROWS_AS(parse_chain_dsl("S(x^2"), ParseError);
  CHECK_THROWS_AS(parse_chain_dsl("Q"), ParseError);
}

TEST_CASE("chain dsl round trip") {
  for (const char* text : {"T", "S(-x^2 + 3x - 1) T", "S(2*x^3) T T", "S(5 + x) T"}) {
    auto steps = parse_chain_dsl(text);
    auto again = parse_chain_dsl(render_chain_dsl(steps));
    CHECK(render_chain_dsl(again) == render_chain_dsl(steps));
  }
}

TEST_CASE("cli exit codes") {
  std::string out;
  CHECK(run({"spectrum", "--lfun", "ec37a", "--alpha", "0.328797974610714578"}, &out) == 0);
  CHECK(out.find("\"in_spec\": true") != std::string::npos);
  CHECK(out.find("\"n_alpha\": 1") != std::string::npos);
  CHECK(run({"bogus"}) == 2);
  CHECK(run({"dual", "--lfun", "nope", "--f", "x^2"}) == 2);
  CHECK(run({"dual", "--lfun", "zeta", "--f", "3x"}) == 2);
  CHECK(run({"classify", "--lfun", "zeta", "--f0", "0", "--chain", "S(3)"}) == 2);
  CHECK(run({"dual", "--lfun", "zeta", "--f", "x^(1/2)"}) == 1);
}

TEST_CASE("cli dual prints the two-thirds term of the resonant twist") {
  std::string out;
  REQUIRE(run({"dual", "--lfun", "ec37a", "--f0", "0.328797974610714578*x^(1/2)"}, &out) == 0);
  CHECK(out.find("\"exponent\": \"2/3\"") != std::string::npos);
  CHECK(out.find("0.107221063635693") != std::string::npos);
}

TEST_CASE("cli classify reports the resonant prediction") {
  std::string out;
  REQUIRE(run({"classify", "--lfun", "ec37a", "--f0", "0.328797974610714578*x^(1/2)", "--chain",
               "S(x^2) T"},
              &out) == 0);
  CHECK(out.find("\"class\": \"A0_minus_A00\"") != std::string::npos);
  CHECK(out.find("\"re_exact\": \"7/12\"") != std::string::npos);
  CHECK(out.find("\"re_exact\": \"13/12\"") != std::string::npos);
}
