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

// Host-side witness assembly: the user's key signs the ownership challenge
// and the nullifier domain, and the Merkle paths are computed from the
// public CA list and revoked-serial list.

#ifndef ZKX509_PROVER_H_
#define ZKX509_PROVER_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

#include "zkx509/bytes.h"
#include "zkx509/sigcrypto.h"
#include "zkx509/statement.h"

namespace zkx509 {

struct ProveRequest {
  Address registrant{};
  uint32_t wallet_index = 0;
  uint32_t max_wallets = 1;
  Address registry_address{};
  uint64_t chain_id = 1;
  uint8_t disclosure_mask = 0;
  uint64_t timestamp = 0;
  Bytes crl_der;  // empty: no full-CRL path
  // Whitelist in registry order. Empty: a single-leaf list of this root.
  std::vector<Hash32> ca_leaves;
  // Revoked serials (normalized) for the sorted CRL tree. nullopt: disabled.
  std::optional<std::vector<Bytes>> crl_tree_serials;
};

// Normalized big-endian serial bytes, as the parser reports them.
Bytes serial_bytes(uint64_t serial);

// `chain` holds intermediates leaf-to-root then the root SPKI DER. Throws
// MerkleError when the root is not in ca_leaves or the user serial is in
// crl_tree_serials.
Witness build_witness(const SignerKey& user_key, ByteView user_cert_der,
                      std::vector<Bytes> chain, const ProveRequest& request);

// A fixture directory as written by fixtures::write_directory.
struct PkiDirectory {
  Bytes user_der;
  Bytes user_key;
  Bytes root_der;
  std::vector<Bytes> intermediate_ders;
  Bytes crl_der;  // empty when crl.der is absent
  Bytes root_spki;

  std::vector<Bytes> witness_chain() const;
};

PkiDirectory load_pki_directory(const std::filesystem::path& dir);

}  // namespace zkx509

#endif  // ZKX509_PROVER_H_
