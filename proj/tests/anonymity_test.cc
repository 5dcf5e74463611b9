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

#include <gtest/gtest.h>

#include <stdexcept>

#include "test_support.h"

namespace zkx509 {
namespace {

using testing::oracles;

TEST(MinEntropy, OracleValues) {
  MinEntropy m = min_entropy({20, 1.3, 46});
  const auto& o = oracles()["min_entropy"];
  ASSERT_EQ(m.probabilities.size(), 3u);
  for (size_t i = 0; i < 3; ++i) {
    EXPECT_NEAR(m.probabilities[i], o["p"][i].get<double>(), 1e-12);
  }
  EXPECT_NEAR(m.max_probability, o["max_p"].get<double>(), 1e-12);
  EXPECT_NEAR(m.bits, o["bits"].get<double>(), 1e-12);
}

TEST(MinEntropy, UniformAndSingleton) {
  EXPECT_DOUBLE_EQ(min_entropy({5, 5, 5, 5}).bits,
                   oracles()["min_entropy"]["uniform4_bits"].get<double>());
  EXPECT_DOUBLE_EQ(min_entropy({7}).bits, 0.0);
}

TEST(MinEntropy, RejectsBadPopulations) {
  EXPECT_THROW(min_entropy({}), std::invalid_argument);
  EXPECT_THROW(min_entropy({0, 0}), std::invalid_argument);
  EXPECT_THROW(min_entropy({1, -1}), std::invalid_argument);
  EXPECT_THROW(min_entropy({7, 0}), std::invalid_argument);
}

}  // namespace
}  // namespace zkx509
