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

#ifndef TWISTLAB_CLI_HPP_
#define TWISTLAB_CLI_HPP_

#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "twistlab/operators.hpp"

namespace twistlab {

// Chain text such as "S(2x^3 - x) T"; steps in application order. Throws
// ParseError with the offending position, including for constant shifts.
std::vector<ChainStep> parse_chain_dsl(std::string_view text);
std::string render_chain_dsl(const std::vector<ChainStep>& steps);

// Exit status: 0 on success, 1 on library errors, 2 on usage and parse
// errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace twistlab

#endif  // TWISTLAB_CLI_HPP_
