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

// The identity statement as a native deterministic function.
//
// evaluate_statement() runs, in order: user certificate parse and validity;
// intermediate parse and validity; every chain-link signature up to the root
// SPKI; the optional full-CRL path (issuer, freshness, signature,
// non-revocation); the ownership signature; the wallet-index bound; the
// nullifier signature; CA whitelist membership; and the optional sorted-tree
// CRL non-membership proof. It then derives the nullifier and the salted
// disclosure hashes and returns the thirteen public values.
//
// Hash preimages use fixed widths: BE4 for wallet indices, BE8 for
// timestamps and chain ids, raw 20 bytes for addresses, and normalized
// (sign-byte stripped) serials.

#ifndef ZKX509_STATEMENT_H_
#define ZKX509_STATEMENT_H_

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "zkx509/bytes.h"
#include "zkx509/merkle.h"

namespace zkx509 {

inline constexpr char kNullifierDomainTag[] = "zk-X509-Nullifier-v2";
inline constexpr char kDisclosureSaltTag[] = "zk-X509-Disclosure-Salt-v1";
inline constexpr char kMockProofTag[] = "zk-X509-MockProof-v1";

// Disclosure mask bits.
inline constexpr uint8_t kDiscloseCountry = 1 << 0;
inline constexpr uint8_t kDiscloseOrganization = 1 << 1;
inline constexpr uint8_t kDiscloseOrgUnit = 1 << 2;
inline constexpr uint8_t kDiscloseCommonName = 1 << 3;

struct Witness {
  Bytes cert_der;
  Bytes ownership_sig;
  Bytes nullifier_sig;
  // Intermediates leaf-to-root, then the root CA SubjectPublicKeyInfo DER.
  std::vector<Bytes> cert_chain;
  uint64_t current_timestamp = 0;
  Bytes crl_der;  // empty: skip the full-CRL path
  Address registrant{};
  uint32_t wallet_index = 0;
  uint32_t max_wallets = 1;
  uint8_t disclosure_mask = 0;
  std::vector<Hash32> ca_merkle_proof;
  Hash32 ca_merkle_root{};
  Address registry_address{};
  uint64_t chain_id = 0;
  Hash32 crl_merkle_root{};  // zero: skip the sorted-tree path
  NonMembershipProof crl_proof;

  bool operator==(const Witness&) const = default;
};

struct PublicValues {
  Hash32 nullifier{};
  Hash32 ca_merkle_root{};
  uint64_t timestamp = 0;
  Address registrant{};
  uint32_t wallet_index = 0;
  uint64_t not_after = 0;
  uint64_t chain_id = 0;
  Address registry_address{};
  Hash32 crl_merkle_root{};
  Hash32 country_hash{};
  Hash32 org_hash{};
  Hash32 org_unit_hash{};
  Hash32 common_name_hash{};

  bool operator==(const PublicValues&) const = default;
};

inline constexpr size_t kPublicValuesWords = 13;
inline constexpr size_t kEncodedPublicValuesSize = kPublicValuesWords * 32;

enum class PvCodecErrc { kBadLength, kNonCanonicalPadding };

class PvCodecError : public std::runtime_error {
 public:
  PvCodecError(PvCodecErrc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  PvCodecErrc code() const { return code_; }

 private:
  PvCodecErrc code_;
};

// Static-tuple contract ABI layout: one 32-byte word per field, integers and
// addresses right-aligned with zero padding.
Bytes encode_public_values(const PublicValues& pv);
PublicValues decode_public_values(ByteView encoded);

Hash32 ownership_challenge(ByteView serial, const Address& registrant,
                           uint32_t wallet_index, uint64_t timestamp,
                           uint64_t chain_id);
Hash32 nullifier_domain(const Address& registry_address, uint64_t chain_id);
Hash32 compute_nullifier(ByteView nullifier_sig, uint32_t wallet_index);
Hash32 disclosure_salt(ByteView nullifier_sig);

// Identifier of this statement's logic; stands in for a proving key hash.
Hash32 statement_vkey_id();

enum class CheckId {
  kUserCertParse,
  kUserCertTemporal,
  kChainCertParse,     // indexed; index k is the root SPKI
  kChainCertTemporal,  // indexed by intermediate
  kChainSignature,     // indexed by link; 0 is the user certificate
  kCrlParse,
  kCrlIssuer,
  kCrlFreshness,
  kCrlSignature,
  kCrlNotRevoked,
  kOwnershipSignature,
  kWalletIndex,
  kNullifierSignature,
  kCaMembership,
  kCrlNonMembership,
};

enum class CheckStatus { kPass, kFail, kSkipped };

const char* to_string(CheckId id);
const char* to_string(CheckStatus status);

struct CheckEntry {
  CheckId id;
  std::optional<uint32_t> index;
  CheckStatus status = CheckStatus::kSkipped;
  std::string detail;
};

using CheckTrace = std::vector<CheckEntry>;

enum class StatementErrc {
  kInvalidWitness,
  kCertMalformed,
  kChainCertMalformed,
  kCertExpired,
  kChainCertExpired,
  kChainSigInvalid,
  kCrlMalformed,
  kCrlIssuerMismatch,
  kCrlStale,
  kCrlSigInvalid,
  kCertRevoked,
  kOwnershipSigInvalid,
  kWalletIndexOutOfRange,
  kNullifierSigInvalid,
  kCaNotWhitelisted,
  kCrlNonMembershipInvalid,
};

const char* to_string(StatementErrc code);
StatementErrc error_for(CheckId id);

struct StatementFailure {
  StatementErrc code;
  std::optional<uint32_t> index;
  std::string detail;

  // e.g. "ChainSigInvalid(1): ..."
  std::string describe() const;
};

class StatementError : public std::runtime_error {
 public:
  explicit StatementError(StatementFailure failure)
      : std::runtime_error(failure.describe()), failure_(std::move(failure)) {}
  const StatementFailure& failure() const { return failure_; }
  StatementErrc code() const { return failure_.code; }

 private:
  StatementFailure failure_;
};

struct Evaluation {
  CheckTrace trace;
  std::optional<PublicValues> public_values;
  std::optional<StatementFailure> failure;

  bool ok() const { return public_values.has_value(); }
};

// Never throws for a failing check; the failure and the trace describe it.
Evaluation evaluate_statement(const Witness& w);

// The output of a successful evaluation. Only prove() can create one, so a
// bundle in hand implies every check passed.
class ProofBundle {
 public:
  const Bytes& encoded_public_values() const { return encoded_pv_; }
  const Hash32& token() const { return token_; }
  const Hash32& vkey_id() const { return vkey_id_; }
  const CheckTrace& trace() const { return trace_; }
  PublicValues public_values() const {
    return decode_public_values(encoded_pv_);
  }

 private:
  friend ProofBundle prove(const Witness& w);
  ProofBundle() = default;

  Bytes encoded_pv_;
  Hash32 token_{};
  Hash32 vkey_id_{};
  CheckTrace trace_;
};

// Throws StatementError carrying the first failing check.
ProofBundle prove(const Witness& w);

// Constant-time recomputation of the mock attestation token.
bool verify_attestation(const Hash32& vkey_id, ByteView encoded_pv,
                        const Hash32& token);

}  // namespace zkx509

#endif  // ZKX509_STATEMENT_H_
