// Copyright 2026 The zkx509 Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "zkx509/anonymity.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace zkx509 {

MinEntropy min_entropy(const std::vector<double>& populations) {
  if (populations.empty()) throw std::invalid_argument("no populations given");
  double total = 0;
  for (double n : populations) {
    if (!std::isfinite(n) || n <= 0) {
      throw std::invalid_argument("populations must be positive");
    }
    total += n;
  }
  MinEntropy out;
  for (double n : populations) out.probabilities.push_back(n / total);
  out.max_probability =
      *std::max_element(out.probabilities.begin(), out.probabilities.end());
  // -log2(1) is -0.0; report the single-CA case as plain zero.
  out.bits = out.max_probability >= 1.0 ? 0.0 : -std::log2(out.max_probability);
  return out;
}

}  // namespace zkx509
