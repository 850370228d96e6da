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

#ifndef TWISTLAB_ACCEPTANCE_HPP_
#define TWISTLAB_ACCEPTANCE_HPP_

#include <ostream>
#include <set>
#include <string>
#include <vector>

namespace twistlab {

struct AcceptanceOptions {
  std::string out_dir;    // per-criterion JSON and CSV artifacts; none when empty
  std::string cache_dir;  // coefficient caches, read only
  std::set<int> only;     // all criteria when empty
  std::set<int> skip;
  std::string twistlab_exe;  // driven twice by criterion 14
  int threads = 1;
  std::ostream* log = nullptr;  // progress and diagnostics
};

struct CriterionResult {
  int id = 0;
  std::string title;
  bool pass = false;
  double seconds = 0;
  double budget_seconds = 0;  // 0 when unbudgeted
  std::string detail;
};

constexpr int kCriterionCount = 14;

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opts);

// One line per criterion: id, PASS or FAIL, time, title, detail.
void print_acceptance_table(const std::vector<CriterionResult>& results, std::ostream& out);

}  // namespace twistlab

#endif  // TWISTLAB_ACCEPTANCE_HPP_
