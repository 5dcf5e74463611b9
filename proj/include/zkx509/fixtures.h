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

// Deterministic test PKI: root CA, intermediates, user certificate and CRL,
// all derived from a 64-bit seed.
//
// Chain depth counts issuing levels above the user in the sense of a
// hierarchy: depth 1 (and 2) mean the root signs the user directly, depth 3
// puts one intermediate between them. In general the PKI has
// max(0, depth - 2) intermediates. issue_certificate() builds arbitrary
// deeper chains.

#ifndef ZKX509_FIXTURES_H_
#define ZKX509_FIXTURES_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "zkx509/bytes.h"
#include "zkx509/pkix.h"
#include "zkx509/sigcrypto.h"

namespace zkx509::fixtures {

class FixtureError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class StrategyInapplicable : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Ordered (field, value) pairs; repeats allowed.
using DnSpec = std::vector<std::pair<DnField, std::string>>;

Bytes encode_name(const DnSpec& dn);

struct TierSpec {
  KeyKind key_kind = KeyKind::kRsa;
  // Digest this tier's issuer uses when signing this tier's certificate.
  Digest digest = Digest::kSha256;
  int64_t not_before = 0;
  int64_t not_after = 0;
  DnSpec subject;
};

struct PkiSpec {
  uint64_t seed = 0;
  int chain_depth = 3;  // 1..3
  TierSpec root;
  std::vector<TierSpec> intermediates;  // size max(0, chain_depth - 2)
  TierSpec user;

  // The revoked list and window of the CRL issued by the user's issuer.
  std::vector<uint64_t> crl_revoked_serials;
  int64_t crl_this_update = 0;
  int64_t crl_next_update = 0;
  Digest crl_digest = Digest::kSha256;
};

// Standard spec: one key kind and SHA-256 everywhere, validity
// 1700000000..1731536000 for the user and wider windows for the CAs, a fresh
// CRL with no entries.
PkiSpec default_spec(uint64_t seed, int chain_depth, KeyKind kind);

void validate(const PkiSpec& spec);

struct Pki {
  PkiSpec spec;
  // Leaf to root: user, intermediates, root certificate.
  std::vector<Bytes> certificates;
  Bytes root_der;
  Bytes root_spki;
  std::vector<Bytes> intermediate_ders;  // leaf-to-root order
  Bytes user_der;
  Bytes crl_der;
  SignerKey root_key;
  std::vector<SignerKey> intermediate_keys;
  SignerKey user_key;
  // Key and subject of the user's issuer (first intermediate, else root).
  const SignerKey& user_issuer_key() const;
  const DnSpec& user_issuer_dn() const;

  // Witness-ready chain: intermediates then the root SPKI.
  std::vector<Bytes> witness_chain() const;
  // SHA-256 of the root SPKI DER: the CA whitelist leaf.
  Hash32 ca_leaf() const;
};

Pki build_pki(const PkiSpec& spec);

struct CertificateParams {
  uint64_t serial = 1;
  DnSpec issuer;
  DnSpec subject;
  int64_t not_before = 0;
  int64_t not_after = 0;
  Bytes subject_spki;
  Digest digest = Digest::kSha256;
  // Overrides the OID derived from (issuer key kind, digest). Lets tests
  // produce mixed cases such as ecdsa-with-SHA256 under a P-384 key.
  std::optional<std::string> signature_oid;
};

Bytes issue_certificate(const CertificateParams& params,
                        const SignerKey& issuer_key);

// Throws FixtureError when next_update < this_update.
Bytes build_crl(const SignerKey& issuer_key, const DnSpec& issuer_dn,
                const std::vector<uint64_t>& revoked, int64_t this_update,
                int64_t next_update, Digest digest = Digest::kSha256);

enum class CorruptStrategy { kFlipSignatureBit, kTruncate, kExpire, kSwapIssuer };

const char* to_string(CorruptStrategy s);
CorruptStrategy corrupt_strategy_from_string(std::string_view s);

// Works on certificates and CRLs. kExpire and kSwapIssuer rewrite the signed
// body and re-sign it, so they need `resign_key` (the original issuer's key)
// and throw StrategyInapplicable without it. kExpire sets notAfter to
// notBefore (nextUpdate to thisUpdate for a CRL), so every later instant is
// outside the window.
Bytes corrupt(ByteView der, CorruptStrategy strategy,
              const SignerKey* resign_key = nullptr);

// root.der, inter0.der..., user.der, user.key, crl.der, manifest.json.
void write_directory(const Pki& pki, const std::filesystem::path& dir);

}  // namespace zkx509::fixtures

#endif  // ZKX509_FIXTURES_H_
