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

// Two SHA-256 Merkle constructions.
//
// CA membership tree: nodes are H(min(a, b) || max(a, b)), so proofs carry
// no direction bits. Leaves are kept in insertion (registry array) order.
// An unpaired node moves up a level unchanged; the empty tree has the
// all-zero root.
//
// CRL sorted tree: leaves are SHA-256 of revoked serials plus two sentinels
// (0x00..00 and 0xff..ff), sorted ascending. Nodes are H(left || right).
// Absence of a target is shown by membership of two adjacent leaves that
// bracket it. Proofs have one entry per level; at a level where the node was
// promoted the entry is the all-zero hash with direction bit 0, meaning
// "carry the running hash up unchanged".

#ifndef ZKX509_MERKLE_H_
#define ZKX509_MERKLE_H_

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "zkx509/bytes.h"

namespace zkx509 {

enum class MerkleErrc { kLeafNotFound, kSentinelCollision, kTargetPresent };

const char* to_string(MerkleErrc code);

class MerkleError : public std::runtime_error {
 public:
  MerkleError(MerkleErrc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code) {}
  MerkleErrc code() const { return code_; }

 private:
  MerkleErrc code_;
};

Hash32 hash_pair(const Hash32& left, const Hash32& right);
Hash32 hash_sorted_pair(const Hash32& a, const Hash32& b);

// --- CA membership tree ------------------------------------------------------

struct CaMerkleTree {
  std::vector<Hash32> leaves;
  Hash32 root{};

  static CaMerkleTree build(std::vector<Hash32> leaves);
};

Hash32 ca_root(const std::vector<Hash32>& leaves);

// Sibling path for the first occurrence of `leaf`. Throws LeafNotFound.
std::vector<Hash32> ca_prove(const std::vector<Hash32>& leaves,
                             const Hash32& leaf);

bool ca_verify(const Hash32& leaf, const std::vector<Hash32>& path,
               const Hash32& root);

// --- CRL sorted tree ---------------------------------------------------------

inline constexpr Hash32 kLowSentinel{};
inline constexpr Hash32 kHighSentinel = [] {
  Hash32 h{};
  for (auto& b : h) b = 0xff;
  return h;
}();

struct NonMembershipProof {
  Hash32 left_leaf{};
  Hash32 right_leaf{};
  std::vector<Hash32> left_proof;
  std::vector<Hash32> right_proof;
  std::vector<bool> left_dirs;  // true: running hash is the right child
  std::vector<bool> right_dirs;
  uint32_t left_index = 0;
  uint32_t right_index = 0;

  bool operator==(const NonMembershipProof&) const = default;
};

class CrlSortedTree {
 public:
  // Throws SentinelCollision if a serial hashes to a sentinel value.
  static CrlSortedTree build(const std::vector<Bytes>& revoked_serials);

  const std::vector<Hash32>& sorted_leaves() const { return levels_.front(); }
  const Hash32& root() const { return levels_.back().front(); }
  size_t depth() const { return levels_.size() - 1; }

  // Positional membership path for the leaf at `index`.
  void prove_index(uint32_t index, std::vector<Hash32>& path,
                   std::vector<bool>& dirs) const;

 private:
  std::vector<std::vector<Hash32>> levels_;  // levels_[0] = leaves
};

// Leaf value for a normalized serial.
Hash32 crl_leaf(ByteView serial);

// Throws TargetPresent when `target` is a leaf.
NonMembershipProof crl_prove_absent(const CrlSortedTree& tree,
                                    const Hash32& target);

bool crl_verify_absent(const Hash32& target, const NonMembershipProof& proof,
                       const Hash32& root);

// Root recomputation for one positional path; exposed for tests.
Hash32 crl_fold_path(const Hash32& leaf, const std::vector<Hash32>& path,
                     const std::vector<bool>& dirs);

}  // namespace zkx509

#endif  // ZKX509_MERKLE_H_
