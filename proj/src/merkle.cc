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

#include "zkx509/merkle.h"

#include <algorithm>

#include "zkx509/sigcrypto.h"

namespace zkx509 {

namespace {

constexpr size_t kMaxDepth = 32;

std::vector<Hash32> next_level_sorted(const std::vector<Hash32>& level) {
  std::vector<Hash32> up;
  up.reserve((level.size() + 1) / 2);
  for (size_t i = 0; i + 1 < level.size(); i += 2) {
    up.push_back(hash_sorted_pair(level[i], level[i + 1]));
  }
  if (level.size() % 2 == 1) up.push_back(level.back());
  return up;
}

}  // namespace

const char* to_string(MerkleErrc code) {
  switch (code) {
    case MerkleErrc::kLeafNotFound:
      return "LeafNotFound";
    case MerkleErrc::kSentinelCollision:
      return "SentinelCollision";
    case MerkleErrc::kTargetPresent:
      return "TargetPresent";
  }
  return "Unknown";
}

Hash32 hash_pair(const Hash32& left, const Hash32& right) {
  Bytes buf(left.begin(), left.end());
  append(buf, right);
  return sha256(buf);
}

Hash32 hash_sorted_pair(const Hash32& a, const Hash32& b) {
  return a < b ? hash_pair(a, b) : hash_pair(b, a);
}

CaMerkleTree CaMerkleTree::build(std::vector<Hash32> leaves) {
  CaMerkleTree tree;
  tree.root = ca_root(leaves);
  tree.leaves = std::move(leaves);
  return tree;
}

Hash32 ca_root(const std::vector<Hash32>& leaves) {
  if (leaves.empty()) return kZeroHash;
  std::vector<Hash32> level = leaves;
  while (level.size() > 1) level = next_level_sorted(level);
  return level.front();
}

std::vector<Hash32> ca_prove(const std::vector<Hash32>& leaves,
                             const Hash32& leaf) {
  auto it = std::find(leaves.begin(), leaves.end(), leaf);
  if (it == leaves.end()) {
    throw MerkleError(MerkleErrc::kLeafNotFound, "leaf is not in the CA set");
  }
  size_t index = static_cast<size_t>(it - leaves.begin());
  std::vector<Hash32> path;
  std::vector<Hash32> level = leaves;
  while (level.size() > 1) {
    size_t sibling = index ^ 1;
    if (sibling < level.size()) path.push_back(level[sibling]);
    level = next_level_sorted(level);
    index /= 2;
  }
  return path;
}

bool ca_verify(const Hash32& leaf, const std::vector<Hash32>& path,
               const Hash32& root) {
  Hash32 acc = leaf;
  for (const Hash32& sibling : path) acc = hash_sorted_pair(acc, sibling);
  return acc == root;
}

Hash32 crl_leaf(ByteView serial) { return sha256(serial); }

CrlSortedTree CrlSortedTree::build(const std::vector<Bytes>& revoked_serials) {
  std::vector<Hash32> leaves{kLowSentinel, kHighSentinel};
  for (const Bytes& serial : revoked_serials) {
    Hash32 leaf = crl_leaf(serial);
    if (leaf == kLowSentinel || leaf == kHighSentinel) {
      throw MerkleError(MerkleErrc::kSentinelCollision,
                        "serial " + to_hex(serial) + " hashes to a sentinel");
    }
    leaves.push_back(leaf);
  }
  std::sort(leaves.begin(), leaves.end());
  leaves.erase(std::unique(leaves.begin(), leaves.end()), leaves.end());

  CrlSortedTree tree;
  tree.levels_.push_back(std::move(leaves));
  while (tree.levels_.back().size() > 1) {
    const auto& level = tree.levels_.back();
    std::vector<Hash32> up;
    for (size_t i = 0; i + 1 < level.size(); i += 2) {
      up.push_back(hash_pair(level[i], level[i + 1]));
    }
    if (level.size() % 2 == 1) up.push_back(level.back());
    tree.levels_.push_back(std::move(up));
  }
  return tree;
}

void CrlSortedTree::prove_index(uint32_t index, std::vector<Hash32>& path,
                                std::vector<bool>& dirs) const {
  if (index >= sorted_leaves().size()) {
    throw std::out_of_range("leaf index out of range");
  }
  path.clear();
  dirs.clear();
  size_t pos = index;
  for (size_t lvl = 0; lvl + 1 < levels_.size(); ++lvl) {
    size_t sibling = pos ^ 1;
    if (sibling < levels_[lvl].size()) {
      path.push_back(levels_[lvl][sibling]);
      dirs.push_back((pos & 1) != 0);
    } else {
      path.push_back(kZeroHash);
      dirs.push_back(false);
    }
    pos /= 2;
  }
}

NonMembershipProof crl_prove_absent(const CrlSortedTree& tree,
                                    const Hash32& target) {
  const auto& leaves = tree.sorted_leaves();
  auto it = std::lower_bound(leaves.begin(), leaves.end(), target);
  if (it != leaves.end() && *it == target) {
    throw MerkleError(MerkleErrc::kTargetPresent, "target is a revoked leaf");
  }
  // Sentinels guarantee 0 < pos < size for every non-sentinel target.
  auto pos = static_cast<uint32_t>(it - leaves.begin());
  NonMembershipProof proof;
  proof.left_index = pos - 1;
  proof.right_index = pos;
  proof.left_leaf = leaves[pos - 1];
  proof.right_leaf = leaves[pos];
  tree.prove_index(proof.left_index, proof.left_proof, proof.left_dirs);
  tree.prove_index(proof.right_index, proof.right_proof, proof.right_dirs);
  return proof;
}

Hash32 crl_fold_path(const Hash32& leaf, const std::vector<Hash32>& path,
                     const std::vector<bool>& dirs) {
  Hash32 acc = leaf;
  for (size_t i = 0; i < path.size(); ++i) {
    if (!dirs[i] && path[i] == kZeroHash) continue;  // promoted level
    acc = dirs[i] ? hash_pair(path[i], acc) : hash_pair(acc, path[i]);
  }
  return acc;
}

namespace {

bool index_matches_dirs(uint32_t index, const std::vector<bool>& dirs) {
  uint64_t from_dirs = 0;
  for (size_t i = 0; i < dirs.size(); ++i) {
    if (dirs[i]) from_dirs |= uint64_t{1} << i;
  }
  return from_dirs == index;
}

}  // namespace

bool crl_verify_absent(const Hash32& target, const NonMembershipProof& proof,
                       const Hash32& root) {
  if (!(proof.left_leaf < target && target < proof.right_leaf)) return false;
  if (proof.left_index == UINT32_MAX ||
      proof.right_index != proof.left_index + 1) {
    return false;
  }
  size_t depth = proof.left_proof.size();
  if (depth > kMaxDepth || proof.left_dirs.size() != depth ||
      proof.right_proof.size() != depth || proof.right_dirs.size() != depth) {
    return false;
  }
  if (!index_matches_dirs(proof.left_index, proof.left_dirs) ||
      !index_matches_dirs(proof.right_index, proof.right_dirs)) {
    return false;
  }
  return crl_fold_path(proof.left_leaf, proof.left_proof, proof.left_dirs) ==
             root &&
         crl_fold_path(proof.right_leaf, proof.right_proof, proof.right_dirs) ==
             root;
}

}  // namespace zkx509
