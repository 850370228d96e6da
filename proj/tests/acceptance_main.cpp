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

#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "twistlab/acceptance.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria"};
  twistlab::AcceptanceOptions opts;
  std::vector<int> only;
  app.add_option("--only", only, "Criterion ids");
  app.add_option("--out", opts.out_dir, "Artifact directory");
  app.add_option("--cache-dir", opts.cache_dir, "Coefficient caches");
  app.add_option("--twistlab", opts.twistlab_exe, "CLI executable for reproducibility runs");
  app.add_option("--threads", opts.threads);
  CLI11_PARSE(app, argc, argv);
  opts.only.insert(only.begin(), only.end());
  opts.log = &std::cerr;
  auto results = twistlab::run_acceptance(opts);
  twistlab::print_acceptance_table(results, std::cout);
  for (const auto& r : results) {
    if (!r.pass) return 1;
  }
  return results.empty() ? 1 : 0;
}
