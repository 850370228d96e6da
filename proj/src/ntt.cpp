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

#include "ntt.hpp"

#include <utility>

#include "twistlab/errors.hpp"

namespace twistlab::ntt {

namespace {

std::uint32_t pow_mod(std::uint64_t b, std::uint64_t e, std::uint32_t p) {
  std::uint64_t r = 1;
  b %= p;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return static_cast<std::uint32_t>(r);
}

template <std::uint32_t P>
void transform(std::vector<std::uint32_t>& a, std::uint32_t g, bool inverse) {
  const std::size_t n = a.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  std::vector<std::uint32_t> w(n / 2);
  for (std::size_t len = 2; len <= n; len <<= 1) {
    std::uint32_t root = pow_mod(g, (P - 1) / len, P);
    if (inverse) root = pow_mod(root, P - 2, P);
    const std::size_t half = len / 2;
    w[0] = 1;
    for (std::size_t k = 1; k < half; ++k) w[k] = static_cast<std::uint64_t>(w[k - 1]) * root % P;
    for (std::size_t i = 0; i < n; i += len) {
      for (std::size_t k = 0; k < half; ++k) {
        std::uint32_t u = a[i + k];
        std::uint32_t v = static_cast<std::uint64_t>(a[i + k + half]) * w[k] % P;
        std::uint32_t s = u + v;
        a[i + k] = s >= P ? s - P : s;
        a[i + k + half] = u >= v ? u - v : u + P - v;
      }
    }
  }
  if (inverse) {
    std::uint64_t inv_n = pow_mod(n, P - 2, P);
    for (auto& x : a) x = x * inv_n % P;
  }
}

template <std::uint32_t P>
std::vector<std::uint32_t> square_impl(const std::vector<std::uint32_t>& a, std::size_t n,
                                       std::uint32_t g) {
  std::size_t len = 1;
  while (len < 2 * n) len <<= 1;
  if (len > (std::size_t{1} << kMaxLog)) throw RangeError("convolution length exceeds 2^23");
  std::vector<std::uint32_t> buf(len, 0);
  for (std::size_t i = 0; i < n && i < a.size(); ++i) buf[i] = a[i];
  transform<P>(buf, g, false);
  for (auto& x : buf) x = static_cast<std::uint64_t>(x) * x % P;
  transform<P>(buf, g, true);
  buf.resize(n);
  return buf;
}

}  // namespace

std::vector<std::uint32_t> square_truncated(const std::vector<std::uint32_t>& a, std::size_t n,
                                            const Prime& prime) {
  switch (prime.p) {
    case kPrimes[0].p: return square_impl<kPrimes[0].p>(a, n, prime.g);
    case kPrimes[1].p: return square_impl<kPrimes[1].p>(a, n, prime.g);
    case kPrimes[2].p: return square_impl<kPrimes[2].p>(a, n, prime.g);
    case kPrimes[3].p: return square_impl<kPrimes[3].p>(a, n, prime.g);
    case kPrimes[4].p: return square_impl<kPrimes[4].p>(a, n, prime.g);
    default: throw DomainError("unsupported NTT modulus");
  }
}

}  // namespace twistlab::ntt
