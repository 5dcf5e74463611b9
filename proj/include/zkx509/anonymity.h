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

// Anonymity-set size of the CA hiding property: min-entropy of the issuer
// distribution weighted by each CA's user population.

#ifndef ZKX509_ANONYMITY_H_
#define ZKX509_ANONYMITY_H_

#include <vector>

namespace zkx509 {

struct MinEntropy {
  std::vector<double> probabilities;  // N_i / sum N
  double max_probability = 0;
  double bits = 0;  // -log2(max p)
};

// Throws std::invalid_argument for an empty list or a non-positive or
// non-finite population.
MinEntropy min_entropy(const std::vector<double>& populations);

}  // namespace zkx509

#endif  // ZKX509_ANONYMITY_H_
