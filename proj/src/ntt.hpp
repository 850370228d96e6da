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

#ifndef TWISTLAB_SRC_NTT_HPP_
#define TWISTLAB_SRC_NTT_HPP_

#include <cstdint>
#include <vector>

namespace twistlab::ntt {

// Prime moduli p = c * 2^k + 1 with k >= 23 and a primitive root g.
struct Prime {
  std::uint32_t p;
  std::uint32_t g;
};

inline constexpr Prime kPrimes[] = {
    {167772161u, 3u}, {469762049u, 3u}, {754974721u, 11u}, {998244353u, 3u}, {2013265921u, 31u},
};
inline constexpr int kMaxLog = 23;

// Square of a (mod p) truncated to its first n coefficients.
std::vector<std::uint32_t> square_truncated(const std::vector<std::uint32_t>& a, std::size_t n,
                                            const Prime& prime);

}  // namespace twistlab::ntt

#endif  // TWISTLAB_SRC_NTT_HPP_
