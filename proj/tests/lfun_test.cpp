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

#include <filesystem>
#include <numeric>
#include <random>

#include "doctest.h"
#include "twistlab/errors.hpp"
#include "twistlab/lfun.hpp"

using namespace twistlab;

namespace {

// prod (1 - q^m)^24 by repeated naive multiplication.
Coefficients tau_by_product(int n) {
  std::vector<Int128> c(n, 0);
  c[0] = 1;
  for (int m = 1; m < n; ++m) {
    for (int rep = 0; rep < 24; ++rep) {
      for (int i = n - 1; i >= m; --i) c[i] -= c[i - m];
    }
  }
  Coefficients tau(n + 1, 0);
  for (int i = 0; i < n; ++i) tau[i + 1] = c[i];
  return tau;
}

std::int64_t trace_by_point_count(std::int64_t p) {
  std::int64_t affine = 0;
  for (std::int64_t x = 0; x < p; ++x) {
    const std::int64_t rhs = ((x * x % p) * x - x + p) % p;
    for (std::int64_t y = 0; y < p; ++y) {
      if (((y * y - y) % p + p) % p == rhs) ++affine;
    }
  }
  return p - affine;
}

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("tau small values") {
  Coefficients tau = ramanujan_tau(6);
  CHECK(tau[1] == 1);
  CHECK(tau[2] == -24);
  CHECK(tau[3] == 252);
  CHECK(tau[4] == -1472);
  CHECK(tau[5] == 4830);
  CHECK(tau[6] == -6048);
}

TEST_CASE("tau matches the naive eta product up to 1000") {
  Coefficients fast = ramanujan_tau(1000);
  Coefficients slow = tau_by_product(1000);
  for (int n = 1; n <= 1000; ++n) REQUIRE(fast[n] == slow[n]);
}

TEST_CASE("tau Deligne bound and multiplicativity") {
  const int n_max = 10000;
  Coefficients tau = ramanujan_tau(n_max);
  Coefficients d = divisor_counts(n_max);
  for (int n = 1; n <= n_max; ++n) {
    long double bound = static_cast<long double>(d[n]) * std::pow(static_cast<long double>(n), 5.5L);
    REQUIRE(std::fabs(static_cast<long double>(tau[n])) <= bound);
  }
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> pick(2, 100);
  int checked = 0;
  while (checked < 200) {
    int m = pick(rng), n = pick(rng);
    if (std::gcd(m, n) != 1) continue;
    CHECK(tau[m * n] == tau[m] * tau[n]);
    ++checked;
  }
}

TEST_CASE("ec37a traces agree with point counting") {
  CHECK(ec37a_trace(2) == -2);
  CHECK(ec37a_trace(3) == -3);
  CHECK(trace_by_point_count(2) == -2);
  for (std::int64_t p = 2; p <= 1000; ++p) {
    if (is_prime(p)) REQUIRE(ec37a_trace(p) == trace_by_point_count(p));
  }
}

TEST_CASE("ec37a Hasse bound and multiplicativity") {
  const std::int64_t n_max = 100000;
  Coefficients a = ec37a_coefficients(n_max);
  for (std::int64_t p = 2; p <= n_max; ++p) {
    if (!is_prime(p)) continue;
    const double ap = static_cast<double>(a[p]);
    REQUIRE(ap * ap <= 4.0 * static_cast<double>(p));
  }
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> pick(2, 300);
  int checked = 0;
  while (checked < 200) {
    int m = pick(rng), n = pick(rng);
    if (std::gcd(m, n) != 1) continue;
    CHECK(a[m * n] == a[m] * a[n]);
    ++checked;
  }
  // Hecke relation at p^2
  for (std::int64_t p : {2, 3, 5, 7, 11}) CHECK(a[p * p] == a[p] * a[p] - p);
  CHECK(a[37 * 37] == a[37] * a[37]);
}

TEST_CASE("divisor sieve matches brute force") {
  Coefficients d = divisor_counts(10000);
  CHECK(d[12] == 6);
  for (int n = 1; n <= 10000; ++n) {
    int count = 0;
    for (int k = 1; k <= n; ++k) count += n % k == 0;
    REQUIRE(d[n] == count);
  }
}

TEST_CASE("registry metadata") {
  LFunction e = registry("ec37a");
  CHECK(e.meta.degree == 2);
  CHECK(e.meta.conductor == 37);
  CHECK(e.meta.normalization_shift == Rational(1, 2));
  CHECK(registry("zeta2").meta.polar_order == 2);
  CHECK(registry("delta").meta.polar_order == 0);
  CHECK(registry("delta").meta.conductor == 1);
  CHECK_THROWS_AS(registry("nope"), DomainError);
  CHECK_THROWS_AS(registry("ec37a").provider.coefficients(std::int64_t{1} << 21), RangeError);
}

TEST_CASE("cache round trip") {
  const auto dir = std::filesystem::temp_directory_path() / "twistlab_cache_test";
  std::filesystem::remove_all(dir);
  LFunction lf = registry("delta", dir.string());
  Coefficients a = lf.provider.generate(500);
  write_cache(lf.provider.cache_path(), "delta", a);
  auto back = read_cache(lf.provider.cache_path(), "delta", 300);
  REQUIRE(back.has_value());
  for (int n = 1; n <= 300; ++n) CHECK((*back)[n] == a[n]);
  CHECK_FALSE(read_cache(lf.provider.cache_path(), "delta", 501).has_value());
  CHECK_FALSE(read_cache(lf.provider.cache_path(), "zeta", 10).has_value());
  LFunction fresh = registry("delta", dir.string());
  CHECK((*fresh.provider.coefficients(400))[400] == a[400]);
  std::filesystem::remove_all(dir);
}

TEST_CASE("spectrum membership") {
  LFunction e = registry("ec37a");
  SpecMembership m = spec_membership(e, 2 / sqrt(Real(37)));
  CHECK(m.in_spec);
  REQUIRE(m.n_alpha.has_value());
  CHECK(*m.n_alpha == 1);
  CHECK(spec_star_membership(e, -2 / sqrt(Real(37))));

  LFunction delta = registry("delta");
  SpecMembership md = spec_membership(delta, 2 * sqrt(Real(2)));
  CHECK(md.in_spec);
  CHECK(*md.n_alpha == 2);
  CHECK_FALSE(spec_membership(delta, Real(3)).in_spec);
  CHECK_FALSE(spec_star_membership(delta, Real(0)));
  CHECK(spec_star_membership(registry("zeta"), Real(0)));

  // a_E(8) = a_2 a_4 - 2 a_2 = -2 * 2 + 4 = 0
  CHECK((*e.provider.coefficients(8))[8] == 0);
  CHECK_FALSE(spec_membership(e, 2 * sqrt(Real(8) / 37)).in_spec);
}
