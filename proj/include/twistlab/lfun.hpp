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

#ifndef TWISTLAB_LFUN_HPP_
#define TWISTLAB_LFUN_HPP_

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "twistlab/meta.hpp"
#include "twistlab/numeric.hpp"

namespace twistlab {

// Exact Dirichlet coefficients; index 0 is unused and holds 0.
using Coefficients = std::vector<Int128>;

Coefficients ramanujan_tau(std::int64_t n_max);
Coefficients divisor_counts(std::int64_t n_max);
Coefficients ec37a_coefficients(std::int64_t n_max);

// a_p of y^2 - y = x^3 - x by the completed-square character sum.
std::int64_t ec37a_trace(std::int64_t p);

class CoefficientProvider {
 public:
  enum class Kind { kOne, kDivisor, kTau, kEc37a };

  CoefficientProvider(std::string id, Kind kind, std::int64_t max_n, std::string cache_dir = "");

  const std::string& id() const { return id_; }
  std::int64_t max_n() const { return max_n_; }
  const std::string& cache_dir() const { return cache_dir_; }

  // a(0..n) with a(0) = 0, possibly longer. Reads the cache file when it
  // covers n and never writes it. Tables are shared per id within the
  // process.
  std::shared_ptr<const Coefficients> coefficients(std::int64_t n) const;

  // Computes a(1..n) from scratch, ignoring caches.
  Coefficients generate(std::int64_t n) const;

  std::string cache_path() const;

 private:
  std::string id_;
  Kind kind_;
  std::int64_t max_n_;
  std::string cache_dir_;
};

struct LFunction {
  LFunctionMeta meta;
  CoefficientProvider provider;
};

// Throws DomainError for an unknown id.
LFunction registry(const std::string& id, const std::string& cache_dir = "");
std::vector<std::string> registry_ids();

void write_cache(const std::string& path, const std::string& id, const Coefficients& a);
// Returns a(0..n) from the file, or nullopt when it is absent, belongs to a
// different id, or stops short of n. Malformed files throw.
std::optional<Coefficients> read_cache(const std::string& path, const std::string& id,
                                       std::int64_t n);

struct SpecMembership {
  bool in_spec = false;
  std::optional<std::int64_t> n_alpha;
};

// alpha in Spec(F) iff n = q_F (alpha/d)^d is a positive integer with a(n) != 0.
SpecMembership spec_membership(const LFunction& lf, const Real& alpha);
bool spec_star_membership(const LFunction& lf, const Real& alpha);

}  // namespace twistlab

#endif  // TWISTLAB_LFUN_HPP_
