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

#include "twistlab/lfun.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <utility>

#include <boost/multiprecision/cpp_int.hpp>

#include "ntt.hpp"
#include "twistlab/errors.hpp"

namespace twistlab {

namespace {

constexpr std::int64_t kSieveMax = std::int64_t{1} << 22;
constexpr std::int64_t kEc37aMax = std::int64_t{1} << 20;

void check_range(std::int64_t n_max, std::int64_t limit, const char* what) {
  if (n_max < 0) throw RangeError(std::string(what) + ": negative length");
  if (n_max > limit) {
    throw RangeError(std::string(what) + ": n_max " + std::to_string(n_max) + " exceeds " +
                     std::to_string(limit));
  }
}

std::uint32_t inverse_mod(std::uint64_t a, std::uint32_t p) {
  std::uint64_t r = 1, e = p - 2;
  a %= p;
  while (e) {
    if (e & 1) r = r * a % p;
    a = a * a % p;
    e >>= 1;
  }
  return static_cast<std::uint32_t>(r);
}

// Smallest prime factor for 0..n.
std::vector<std::int32_t> smallest_prime_factors(std::int64_t n) {
  std::vector<std::int32_t> spf(n + 1, 0);
  std::vector<std::int32_t> primes;
  for (std::int64_t i = 2; i <= n; ++i) {
    if (spf[i] == 0) {
      spf[i] = static_cast<std::int32_t>(i);
      primes.push_back(static_cast<std::int32_t>(i));
    }
    for (std::int32_t p : primes) {
      if (p > spf[i] || i * p > n) break;
      spf[i * p] = p;
    }
  }
  return spf;
}

}  // namespace

Coefficients ramanujan_tau(std::int64_t n_max) {
  check_range(n_max, kSieveMax, "tau");
  Coefficients tau(n_max + 1, 0);
  if (n_max == 0) return tau;
  const std::size_t n = static_cast<std::size_t>(n_max);

  // prod (1 - q^m)^3 = sum (-1)^k (2k+1) q^{k(k+1)/2}
  std::vector<std::pair<std::size_t, std::int64_t>> cube;
  for (std::int64_t k = 0;; ++k) {
    std::size_t idx = static_cast<std::size_t>(k * (k + 1) / 2);
    if (idx >= n) break;
    cube.emplace_back(idx, (k % 2 ? -1 : 1) * (2 * k + 1));
  }
  std::vector<std::int64_t> sixth(n, 0);
  for (const auto& [i, a] : cube) {
    for (const auto& [j, b] : cube) {
      if (i + j >= n) break;
      sixth[i + j] += a * b;
    }
  }

  // prod (1 - q^m)^24 mod each prime, two squarings.
  constexpr int kPrimeCount = std::size(ntt::kPrimes);
  std::vector<std::vector<std::uint32_t>> residues;
  for (const auto& prime : ntt::kPrimes) {
    std::vector<std::uint32_t> a(n);
    for (std::size_t i = 0; i < n; ++i) {
      std::int64_t r = sixth[i] % static_cast<std::int64_t>(prime.p);
      a[i] = static_cast<std::uint32_t>(r < 0 ? r + prime.p : r);
    }
    a = ntt::square_truncated(a, n, prime);
    residues.push_back(ntt::square_truncated(a, n, prime));
  }

  // Garner: x = v0 + v1 m0 + v2 m0 m1 + ..., then centre around 0.
  using boost::multiprecision::int256_t;
  std::uint32_t inv[kPrimeCount][kPrimeCount];
  for (int i = 0; i < kPrimeCount; ++i) {
    for (int j = 0; j < i; ++j) inv[j][i] = inverse_mod(ntt::kPrimes[j].p, ntt::kPrimes[i].p);
  }
  int256_t radix[kPrimeCount];
  int256_t modulus = 1;
  for (int i = 0; i < kPrimeCount; ++i) {
    radix[i] = modulus;
    modulus *= ntt::kPrimes[i].p;
  }
  const int256_t half = modulus / 2;
  const int256_t limit = int256_t(1) << 126;
  for (std::size_t k = 0; k < n; ++k) {
    std::uint64_t v[kPrimeCount];
    for (int i = 0; i < kPrimeCount; ++i) {
      const std::uint64_t p = ntt::kPrimes[i].p;
      std::uint64_t x = residues[i][k];
      for (int j = 0; j < i; ++j) {
        x = (x + p - v[j] % p) % p * inv[j][i] % p;
      }
      v[i] = x;
    }
    int256_t x = 0;
    for (int i = 0; i < kPrimeCount; ++i) x += radix[i] * v[i];
    if (x > half) x -= modulus;
    if (x >= limit || x <= -limit) throw NumericError("tau coefficient exceeds 128 bits");
    // tau(k + 1) is the coefficient of q^k in the product
    const bool neg = x < 0;
    if (neg) x = -x;
    Int128 mag = static_cast<Int128>(static_cast<std::uint64_t>(x >> 64)) << 64 |
                 static_cast<Int128>(static_cast<std::uint64_t>(x & 0xffffffffffffffffULL));
    tau[k + 1] = neg ? -mag : mag;
  }
  return tau;
}

Coefficients divisor_counts(std::int64_t n_max) {
  check_range(n_max, kSieveMax, "divisor");
  std::vector<std::int32_t> d(n_max + 1, 0);
  for (std::int64_t i = 1; i <= n_max; ++i) {
    for (std::int64_t j = i; j <= n_max; j += i) ++d[j];
  }
  return Coefficients(d.begin(), d.end());
}

std::int64_t ec37a_trace(std::int64_t p) {
  if (p == 2) return -2;
  if (p < 2) throw DomainError("ec37a_trace needs a prime");
  const std::uint32_t m = static_cast<std::uint32_t>(p);
  // quadratic residue bitset; the residue 0 is handled in the sum
  thread_local std::vector<std::uint64_t> square;
  square.assign(m / 64 + 1, 0);
  std::uint32_t sq = 0;
  for (std::uint32_t i = 1; i <= m / 2; ++i) {
    sq += 2 * i - 1;  // i^2 = (i-1)^2 + 2i - 1
    while (sq >= m) sq -= m;
    square[sq >> 6] |= std::uint64_t{1} << (sq & 63);
  }
  // g(x) = 4x^3 - 4x + 1 by forward differences, in four independent lanes
  // starting at x0 = lane * ceil(m / 4): v = g(x0), d1 = 12 x0^2 + 12 x0,
  // d2 = 24 x0 + 24.
  constexpr int kLanes = 4;
  const std::uint64_t mm = m;
  const std::uint32_t c24 = 24 % m;
  const std::uint32_t chunk = (m + kLanes - 1) / kLanes;
  std::uint32_t v[kLanes], d1[kLanes], d2[kLanes];
  for (int l = 0; l < kLanes; ++l) {
    const std::uint64_t x0 = std::min<std::uint64_t>(std::uint64_t(l) * chunk, mm) % mm;
    const std::uint64_t x2 = x0 * x0 % mm;
    v[l] = static_cast<std::uint32_t>((4 * (x2 * x0 % mm) + 4 * (mm - x0) + 1) % mm);
    d1[l] = static_cast<std::uint32_t>((12 * x2 + 12 * x0) % mm);
    d2[l] = static_cast<std::uint32_t>((24 * x0 + 24) % mm);
  }
  std::int64_t sum = 0;
  auto step = [&](int l) {
    const std::int64_t bit = (square[v[l] >> 6] >> (v[l] & 63)) & 1;
    sum += (2 * bit - 1) * (v[l] != 0);
    v[l] += d1[l];
    if (v[l] >= m) v[l] -= m;
    d1[l] += d2[l];
    if (d1[l] >= m) d1[l] -= m;
    d2[l] += c24;
    if (d2[l] >= m) d2[l] -= m;
  };
  // lane 3 is the shortest; run all lanes together over its length
  const std::uint32_t common = m > 3 * chunk ? m - 3 * chunk : 0;
  for (std::uint32_t i = 0; i < common; ++i) {
    step(0);
    step(1);
    step(2);
    step(3);
  }
  for (int l = 0; l < kLanes; ++l) {
    const std::uint64_t start = std::uint64_t(l) * chunk + common;
    const std::uint64_t stop = std::min<std::uint64_t>(std::uint64_t(l + 1) * chunk, mm);
    for (std::uint64_t x = start; x < stop; ++x) step(l);
  }
  return -sum;
}

Coefficients ec37a_coefficients(std::int64_t n_max) {
  check_range(n_max, kEc37aMax, "ec37a");
  Coefficients a(n_max + 1, 0);
  if (n_max == 0) return a;
  a[1] = 1;
  const auto spf = smallest_prime_factors(n_max);
  for (std::int64_t n = 2; n <= n_max; ++n) {
    const std::int64_t p = spf[n];
    std::int64_t rest = n;
    while (rest % p == 0) rest /= p;
    if (rest != 1) {
      a[n] = a[n / rest] * a[rest];
      continue;
    }
    if (n == p) {
      a[n] = ec37a_trace(p);
    } else if (p == 37) {
      a[n] = a[n / p] * a[p];
    } else {
      a[n] = a[p] * a[n / p] - static_cast<Int128>(p) * a[n / p / p];
    }
  }
  return a;
}

CoefficientProvider::CoefficientProvider(std::string id, Kind kind, std::int64_t max_n,
                                         std::string cache_dir)
    : id_(std::move(id)), kind_(kind), max_n_(max_n), cache_dir_(std::move(cache_dir)) {}

std::string CoefficientProvider::cache_path() const {
  if (cache_dir_.empty()) return "";
  return (std::filesystem::path(cache_dir_) / (id_ + ".coeffs")).string();
}

Coefficients CoefficientProvider::generate(std::int64_t n) const {
  if (n > max_n_) {
    throw RangeError(id_ + ": n = " + std::to_string(n) + " exceeds the supported range " +
                     std::to_string(max_n_));
  }
  switch (kind_) {
    case Kind::kOne: {
      Coefficients a(n + 1, 1);
      a[0] = 0;
      return a;
    }
    case Kind::kDivisor: return divisor_counts(n);
    case Kind::kTau: return ramanujan_tau(n);
    case Kind::kEc37a: return ec37a_coefficients(n);
  }
  throw DomainError("unknown provider kind");
}

std::shared_ptr<const Coefficients> CoefficientProvider::coefficients(std::int64_t n) const {
  if (n > max_n_) {
    throw RangeError(id_ + ": n = " + std::to_string(n) + " exceeds the supported range " +
                     std::to_string(max_n_));
  }
  // one table per id for the whole process; the largest prefix wins
  static std::mutex mutex;
  static std::map<std::string, std::shared_ptr<const Coefficients>> shared;
  std::lock_guard<std::mutex> lock(mutex);
  auto& slot = shared[id_];
  if (slot && static_cast<std::int64_t>(slot->size()) > n) return slot;
  std::optional<Coefficients> cached;
  if (!cache_dir_.empty()) cached = read_cache(cache_path(), id_, n);
  slot = std::make_shared<const Coefficients>(cached ? std::move(*cached) : generate(n));
  return slot;
}

LFunction registry(const std::string& id, const std::string& cache_dir) {
  using Kind = CoefficientProvider::Kind;
  LFunctionMeta meta;
  meta.id = id;
  if (id == "zeta") {
    meta.polar_order = 1;
    return {meta, CoefficientProvider(id, Kind::kOne, kSieveMax, cache_dir)};
  }
  if (id == "zeta2") {
    meta.degree = 2;
    meta.polar_order = 2;
    return {meta, CoefficientProvider(id, Kind::kDivisor, kSieveMax, cache_dir)};
  }
  if (id == "delta") {
    meta.degree = 2;
    meta.normalization_shift = Rational(11, 2);
    return {meta, CoefficientProvider(id, Kind::kTau, kSieveMax, cache_dir)};
  }
  if (id == "ec37a") {
    meta.degree = 2;
    meta.conductor = 37;
    meta.normalization_shift = Rational(1, 2);
    return {meta, CoefficientProvider(id, Kind::kEc37a, kEc37aMax, cache_dir)};
  }
  throw DomainError("unknown L-function id '" + id + "'");
}

std::vector<std::string> registry_ids() { return {"zeta", "zeta2", "delta", "ec37a"}; }

void write_cache(const std::string& path, const std::string& id, const Coefficients& a) {
  const std::filesystem::path target(path);
  if (target.has_parent_path()) std::filesystem::create_directories(target.parent_path());
  // write to a sibling and rename so readers never see a partial file
  const std::string tmp = path + ".partial";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write cache file " + tmp);
    const std::size_t nmax = a.empty() ? 0 : a.size() - 1;
    out << "# twistlab-coeffs v1 id=" << id << " nmax=" << nmax << "\n";
    for (std::size_t n = 1; n < a.size(); ++n) out << n << "," << to_string_int128(a[n]) << "\n";
    if (!out) throw Error("error writing cache file " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

std::optional<Coefficients> read_cache(const std::string& path, const std::string& id,
                                       std::int64_t n) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::string header;
  std::getline(in, header);
  const std::string prefix = "# twistlab-coeffs v1 id=";
  if (header.rfind(prefix, 0) != 0) throw Error("malformed cache header in " + path);
  std::istringstream hs(header.substr(prefix.size()));
  std::string file_id, nmax_field;
  hs >> file_id >> nmax_field;
  if (nmax_field.rfind("nmax=", 0) != 0) throw Error("malformed cache header in " + path);
  if (file_id != id) return std::nullopt;
  const std::int64_t nmax = std::stoll(nmax_field.substr(5));
  if (nmax < n) return std::nullopt;

  Coefficients a(n + 1, 0);
  std::string line;
  for (std::int64_t k = 1; k <= n; ++k) {
    if (!std::getline(in, line)) throw Error("truncated cache file " + path);
    const auto comma = line.find(',');
    if (comma == std::string::npos || std::stoll(line.substr(0, comma)) != k) {
      throw Error("malformed cache line " + std::to_string(k) + " in " + path);
    }
    a[k] = parse_int128(line.substr(comma + 1));
  }
  return a;
}

SpecMembership spec_membership(const LFunction& lf, const Real& alpha) {
  if (alpha <= 0) throw DomainError("spec_membership needs alpha > 0");
  const Real d = rational_to_real(lf.meta.degree);
  const Real n_real = lf.meta.conductor * pow(alpha / d, d);
  const Real nearest = round(n_real);
  SpecMembership out;
  if (nearest < 1) return out;
  const Real gap = abs(n_real - nearest);
  if (gap > Real("1e-9") * nearest) return out;
  if (nearest > lf.provider.max_n()) {
    throw RangeError("n_alpha = " + nearest.str(0) + " is beyond the coefficient range");
  }
  const auto n = nearest.convert_to<std::int64_t>();
  const auto coeffs = lf.provider.coefficients(n);
  if ((*coeffs)[n] == 0) return out;
  out.in_spec = true;
  out.n_alpha = n;
  return out;
}

bool spec_star_membership(const LFunction& lf, const Real& alpha) {
  if (alpha == 0) return lf.meta.polar_order > 0;
  return spec_membership(lf, abs(alpha)).in_spec;
}

}  // namespace twistlab
