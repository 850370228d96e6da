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

#include "twistlab/meta.hpp"

#include "twistlab/errors.hpp"

namespace twistlab {

LFunctionMeta LFunctionMeta::synthetic(const Rational& degree, const Real& conductor) {
  LFunctionMeta meta;
  meta.id = "synthetic";
  meta.degree = degree;
  meta.conductor = conductor;
  meta.validate();
  return meta;
}

void LFunctionMeta::validate() const {
  if (degree < 1) throw DomainError("degree must be >= 1");
  if (conductor <= 0) throw DomainError("conductor must be positive");
  if (polar_order < 0) throw DomainError("polar order must be >= 0");
  if (normalization_shift < 0) throw DomainError("normalization shift must be >= 0");
}

}  // namespace twistlab
