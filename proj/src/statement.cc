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

#include "zkx509/statement.h"

#include <openssl/crypto.h>

#include <algorithm>
#include <functional>
#include <limits>

#include "attest.h"
#include "zkx509/pkix.h"
#include "zkx509/sigcrypto.h"

namespace zkx509 {

namespace {

constexpr char kStatementVersion[] =
    "zkx509-statement/v1:chain,crl,ownership,wallet-index,nullifier-v2,"
    "ca-sorted-merkle,crl-sorted-tree,disclosure-salt-v1,pv13";

Bytes tagged(std::string_view tag) { return to_bytes(tag); }

void put_word(Bytes& out, ByteView right_aligned) {
  out.insert(out.end(), 32 - right_aligned.size(), 0);
  append(out, right_aligned);
}

void put_uint(Bytes& out, uint64_t v) {
  Bytes be;
  append_be(be, v, 8);
  put_word(out, be);
}

class WordReader {
 public:
  explicit WordReader(ByteView data) : data_(data) {}

  Hash32 word() { return to_hash32(take()); }

  template <size_t N>
  std::array<uint8_t, N> right_aligned(const char* field) {
    ByteView w = take();
    check_padding(w.first(32 - N), field);
    std::array<uint8_t, N> out{};
    std::copy(w.begin() + (32 - N), w.end(), out.begin());
    return out;
  }

  uint64_t uint(size_t width, const char* field) {
    ByteView w = take();
    check_padding(w.first(32 - width), field);
    uint64_t v = 0;
    for (uint8_t b : w.subspan(32 - width)) v = (v << 8) | b;
    return v;
  }

 private:
  ByteView take() {
    ByteView w = data_.subspan(pos_, 32);
    pos_ += 32;
    return w;
  }

  static void check_padding(ByteView pad, const char* field) {
    if (std::any_of(pad.begin(), pad.end(), [](uint8_t b) { return b != 0; })) {
      throw PvCodecError(PvCodecErrc::kNonCanonicalPadding,
                         std::string("non-zero padding in ") + field);
    }
  }

  ByteView data_;
  size_t pos_ = 0;
};

// Runs planned checks in order; after the first failure every remaining
// check is recorded as skipped.
class Evaluator {
 public:
  explicit Evaluator(CheckTrace& trace) : trace_(trace) {}

  bool failed() const { return failure_.has_value(); }
  std::optional<StatementFailure>& failure() { return failure_; }

  // `fn` returns an empty string on success or a failure detail. Exceptions
  // thrown by `fn` count as failures.
  bool run(CheckId id, std::optional<uint32_t> index,
           const std::function<std::string()>& fn) {
    CheckEntry entry{id, index, CheckStatus::kSkipped, {}};
    if (failed()) {
      entry.detail = "not reached";
      trace_.push_back(std::move(entry));
      return false;
    }
    std::string detail;
    try {
      detail = fn();
    } catch (const std::exception& e) {
      detail = e.what();
      if (detail.empty()) detail = "check raised";
    }
    if (detail.empty()) {
      entry.status = CheckStatus::kPass;
    } else {
      entry.status = CheckStatus::kFail;
      entry.detail = detail;
      failure_ = StatementFailure{error_for(id), index, detail};
    }
    trace_.push_back(std::move(entry));
    return entry.status == CheckStatus::kPass;
  }

  void skip(CheckId id, std::optional<uint32_t> index, const char* why) {
    trace_.push_back(CheckEntry{id, index, CheckStatus::kSkipped,
                                failed() ? "not reached" : why});
  }

 private:
  CheckTrace& trace_;
  std::optional<StatementFailure> failure_;
};

struct Signer {
  Bytes spki_der;
  std::optional<std::string> named_curve;
};

std::string verify_or_detail(const Signer& signer, ByteView message,
                             ByteView sig, const std::string& alg_oid) {
  return verify_cert_signature(signer.spki_der, message, sig, alg_oid,
                               signer.named_curve)
             ? ""
             : "signature does not verify";
}

Hash32 disclosure_hash(const std::optional<std::string>& field,
                       const Hash32& salt) {
  if (!field) return kZeroHash;
  Bytes buf = to_bytes(*field);
  append(buf, salt);
  return sha256(buf);
}

std::optional<StatementFailure> validate_witness(const Witness& w) {
  std::string why;
  if (w.cert_chain.empty()) why = "cert_chain must end with the root SPKI";
  if (w.disclosure_mask & 0xf0) why = "disclosure_mask bits 4-7 must be zero";
  if (w.max_wallets == 0) why = "max_wallets must be positive";
  if (w.current_timestamp >
      static_cast<uint64_t>(std::numeric_limits<int64_t>::max())) {
    why = "current_timestamp out of range";
  }
  if (why.empty()) return std::nullopt;
  return StatementFailure{StatementErrc::kInvalidWitness, std::nullopt, why};
}

}  // namespace

namespace detail {

Hash32 mock_attest(const Hash32& vkey_id, ByteView encoded_pv) {
  Bytes buf = tagged(kMockProofTag);
  append(buf, vkey_id);
  append(buf, encoded_pv);
  return sha256(buf);
}

}  // namespace detail

Bytes encode_public_values(const PublicValues& pv) {
  Bytes out;
  out.reserve(kEncodedPublicValuesSize);
  put_word(out, pv.nullifier);
  put_word(out, pv.ca_merkle_root);
  put_uint(out, pv.timestamp);
  put_word(out, pv.registrant);
  put_uint(out, pv.wallet_index);
  put_uint(out, pv.not_after);
  put_uint(out, pv.chain_id);
  put_word(out, pv.registry_address);
  put_word(out, pv.crl_merkle_root);
  put_word(out, pv.country_hash);
  put_word(out, pv.org_hash);
  put_word(out, pv.org_unit_hash);
  put_word(out, pv.common_name_hash);
  return out;
}

PublicValues decode_public_values(ByteView encoded) {
  if (encoded.size() != kEncodedPublicValuesSize) {
    throw PvCodecError(PvCodecErrc::kBadLength,
                       "public values must be 416 bytes, got " +
                           std::to_string(encoded.size()));
  }
  WordReader r(encoded);
  PublicValues pv;
  pv.nullifier = r.word();
  pv.ca_merkle_root = r.word();
  pv.timestamp = r.uint(8, "timestamp");
  pv.registrant = r.right_aligned<20>("registrant");
  pv.wallet_index = static_cast<uint32_t>(r.uint(4, "walletIndex"));
  pv.not_after = r.uint(8, "notAfter");
  pv.chain_id = r.uint(8, "chainId");
  pv.registry_address = r.right_aligned<20>("registryAddress");
  pv.crl_merkle_root = r.word();
  pv.country_hash = r.word();
  pv.org_hash = r.word();
  pv.org_unit_hash = r.word();
  pv.common_name_hash = r.word();
  return pv;
}

Hash32 ownership_challenge(ByteView serial, const Address& registrant,
                           uint32_t wallet_index, uint64_t timestamp,
                           uint64_t chain_id) {
  Bytes buf(serial.begin(), serial.end());
  append(buf, registrant);
  append_be(buf, wallet_index, 4);
  append_be(buf, timestamp, 8);
  append_be(buf, chain_id, 8);
  return sha256(buf);
}

Hash32 nullifier_domain(const Address& registry_address, uint64_t chain_id) {
  Bytes buf = tagged(kNullifierDomainTag);
  append(buf, registry_address);
  append_be(buf, chain_id, 8);
  return sha256(buf);
}

Hash32 compute_nullifier(ByteView nullifier_sig, uint32_t wallet_index) {
  Bytes buf(nullifier_sig.begin(), nullifier_sig.end());
  append_be(buf, wallet_index, 4);
  return sha256(buf);
}

Hash32 disclosure_salt(ByteView nullifier_sig) {
  Bytes buf = tagged(kDisclosureSaltTag);
  append(buf, nullifier_sig);
  return sha256(buf);
}

Hash32 statement_vkey_id() { return sha256(to_bytes(kStatementVersion)); }

const char* to_string(CheckId id) {
  switch (id) {
    case CheckId::kUserCertParse:
      return "user_cert_parse";
    case CheckId::kUserCertTemporal:
      return "user_cert_temporal";
    case CheckId::kChainCertParse:
      return "chain_cert_parse";
    case CheckId::kChainCertTemporal:
      return "chain_cert_temporal";
    case CheckId::kChainSignature:
      return "chain_signature";
    case CheckId::kCrlParse:
      return "crl_parse";
    case CheckId::kCrlIssuer:
      return "crl_issuer";
    case CheckId::kCrlFreshness:
      return "crl_freshness";
    case CheckId::kCrlSignature:
      return "crl_signature";
    case CheckId::kCrlNotRevoked:
      return "crl_not_revoked";
    case CheckId::kOwnershipSignature:
      return "ownership_signature";
    case CheckId::kWalletIndex:
      return "wallet_index";
    case CheckId::kNullifierSignature:
      return "nullifier_signature";
    case CheckId::kCaMembership:
      return "ca_membership";
    case CheckId::kCrlNonMembership:
      return "crl_non_membership";
  }
  return "unknown";
}

const char* to_string(CheckStatus status) {
  switch (status) {
    case CheckStatus::kPass:
      return "pass";
    case CheckStatus::kFail:
      return "fail";
    case CheckStatus::kSkipped:
      return "skipped";
  }
  return "unknown";
}

const char* to_string(StatementErrc code) {
  switch (code) {
    case StatementErrc::kInvalidWitness:
      return "InvalidWitness";
    case StatementErrc::kCertMalformed:
      return "CertMalformed";
    case StatementErrc::kChainCertMalformed:
      return "ChainCertMalformed";
    case StatementErrc::kCertExpired:
      return "CertExpired";
    case StatementErrc::kChainCertExpired:
      return "ChainCertExpired";
    case StatementErrc::kChainSigInvalid:
      return "ChainSigInvalid";
    case StatementErrc::kCrlMalformed:
      return "CrlMalformed";
    case StatementErrc::kCrlIssuerMismatch:
      return "CrlIssuerMismatch";
    case StatementErrc::kCrlStale:
      return "CrlStale";
    case StatementErrc::kCrlSigInvalid:
      return "CrlSigInvalid";
    case StatementErrc::kCertRevoked:
      return "CertRevoked";
    case StatementErrc::kOwnershipSigInvalid:
      return "OwnershipSigInvalid";
    case StatementErrc::kWalletIndexOutOfRange:
      return "WalletIndexOutOfRange";
    case StatementErrc::kNullifierSigInvalid:
      return "NullifierSigInvalid";
    case StatementErrc::kCaNotWhitelisted:
      return "CaNotWhitelisted";
    case StatementErrc::kCrlNonMembershipInvalid:
      return "CrlNonMembershipInvalid";
  }
  return "Unknown";
}

StatementErrc error_for(CheckId id) {
  switch (id) {
    case CheckId::kUserCertParse:
      return StatementErrc::kCertMalformed;
    case CheckId::kUserCertTemporal:
      return StatementErrc::kCertExpired;
    case CheckId::kChainCertParse:
      return StatementErrc::kChainCertMalformed;
    case CheckId::kChainCertTemporal:
      return StatementErrc::kChainCertExpired;
    case CheckId::kChainSignature:
      return StatementErrc::kChainSigInvalid;
    case CheckId::kCrlParse:
      return StatementErrc::kCrlMalformed;
    case CheckId::kCrlIssuer:
      return StatementErrc::kCrlIssuerMismatch;
    case CheckId::kCrlFreshness:
      return StatementErrc::kCrlStale;
    case CheckId::kCrlSignature:
      return StatementErrc::kCrlSigInvalid;
    case CheckId::kCrlNotRevoked:
      return StatementErrc::kCertRevoked;
    case CheckId::kOwnershipSignature:
      return StatementErrc::kOwnershipSigInvalid;
    case CheckId::kWalletIndex:
      return StatementErrc::kWalletIndexOutOfRange;
    case CheckId::kNullifierSignature:
      return StatementErrc::kNullifierSigInvalid;
    case CheckId::kCaMembership:
      return StatementErrc::kCaNotWhitelisted;
    case CheckId::kCrlNonMembership:
      return StatementErrc::kCrlNonMembershipInvalid;
  }
  return StatementErrc::kInvalidWitness;
}

std::string StatementFailure::describe() const {
  std::string out = to_string(code);
  if (index) out += "(" + std::to_string(*index) + ")";
  if (!detail.empty()) out += ": " + detail;
  return out;
}

Evaluation evaluate_statement(const Witness& w) {
  Evaluation result;
  if (auto invalid = validate_witness(w)) {
    result.failure = std::move(invalid);
    return result;
  }
  const auto t = static_cast<int64_t>(w.current_timestamp);
  const auto k = static_cast<uint32_t>(w.cert_chain.size() - 1);
  Evaluator ev(result.trace);

  // (1) user certificate
  ParsedCertificate user;
  ev.run(CheckId::kUserCertParse, std::nullopt, [&] {
    user = parse_certificate(w.cert_der);
    return std::string();
  });
  ev.run(CheckId::kUserCertTemporal, std::nullopt, [&] {
    return temporal_valid(user, t) ? "" : "t outside [notBefore, notAfter]";
  });

  // (2) intermediates, then the root SPKI
  std::vector<ParsedCertificate> inters(k);
  std::vector<Signer> signers(k + 1);
  for (uint32_t i = 0; i < k; ++i) {
    ev.run(CheckId::kChainCertParse, i, [&] {
      inters[i] = parse_certificate(w.cert_chain[i]);
      signers[i] = {inters[i].spki_der, inters[i].spki_named_curve};
      return std::string();
    });
    ev.run(CheckId::kChainCertTemporal, i, [&] {
      return temporal_valid(inters[i], t) ? ""
                                          : "t outside [notBefore, notAfter]";
    });
  }
  ev.run(CheckId::kChainCertParse, k, [&] {
    SubjectPublicKeyInfo root = parse_spki(w.cert_chain[k]);
    signers[k] = {root.der, root.named_curve};
    return std::string();
  });

  // (3) chain links: link 0 is the user cert, link i > 0 is intermediate i-1
  for (uint32_t link = 0; link <= k; ++link) {
    ev.run(CheckId::kChainSignature, link, [&] {
      const ParsedCertificate& subject = link == 0 ? user : inters[link - 1];
      return verify_or_detail(signers[link], subject.tbs_bytes,
                              subject.signature, subject.sig_alg_oid);
    });
  }

  // (4) full CRL
  if (w.crl_der.empty()) {
    for (CheckId id : {CheckId::kCrlParse, CheckId::kCrlIssuer,
                       CheckId::kCrlFreshness, CheckId::kCrlSignature,
                       CheckId::kCrlNotRevoked}) {
      ev.skip(id, std::nullopt, "no CRL supplied");
    }
  } else {
    ParsedCrl crl;
    ev.run(CheckId::kCrlParse, std::nullopt, [&] {
      crl = parse_crl(w.crl_der);
      return std::string();
    });
    ev.run(CheckId::kCrlIssuer, std::nullopt, [&] {
      return crl.issuer_der == user.issuer_der
                 ? ""
                 : "CRL issuer differs from certificate issuer";
    });
    ev.run(CheckId::kCrlFreshness, std::nullopt, [&] {
      return crl.this_update <= t && t <= crl.next_update
                 ? ""
                 : "t outside [thisUpdate, nextUpdate]";
    });
    ev.run(CheckId::kCrlSignature, std::nullopt, [&] {
      return verify_or_detail(signers[0], crl.tbs_bytes, crl.signature,
                              crl.sig_alg_oid);
    });
    ev.run(CheckId::kCrlNotRevoked, std::nullopt, [&] {
      bool revoked = std::find(crl.revoked_serials.begin(),
                               crl.revoked_serials.end(),
                               user.serial) != crl.revoked_serials.end();
      return revoked ? "serial " + to_hex(user.serial) + " is revoked"
                     : std::string();
    });
  }

  // (5)-(7) key ownership, wallet slot, nullifier signature
  Signer user_key{user.spki_der, user.spki_named_curve};
  ev.run(CheckId::kOwnershipSignature, std::nullopt, [&] {
    Hash32 challenge = ownership_challenge(user.serial, w.registrant,
                                           w.wallet_index, w.current_timestamp,
                                           w.chain_id);
    return verify_or_detail(user_key, challenge, w.ownership_sig,
                            default_signature_oid(user.spki_alg_oid));
  });
  ev.run(CheckId::kWalletIndex, std::nullopt, [&] {
    return w.wallet_index < w.max_wallets ? ""
                                          : "wallet_index >= max_wallets";
  });
  ev.run(CheckId::kNullifierSignature, std::nullopt, [&] {
    Hash32 domain = nullifier_domain(w.registry_address, w.chain_id);
    return verify_or_detail(user_key, domain, w.nullifier_sig,
                            default_signature_oid(user.spki_alg_oid));
  });

  // (8)-(9) CA whitelist membership of H(root SPKI)
  ev.run(CheckId::kCaMembership, std::nullopt, [&] {
    Hash32 ca_root_hash = sha256(w.cert_chain[k]);
    return ca_verify(ca_root_hash, w.ca_merkle_proof, w.ca_merkle_root)
               ? ""
               : "root CA is not in the whitelist tree";
  });

  // (10) sorted-tree CRL non-membership
  if (w.crl_merkle_root == kZeroHash) {
    ev.skip(CheckId::kCrlNonMembership, std::nullopt, "CRL tree disabled");
  } else {
    ev.run(CheckId::kCrlNonMembership, std::nullopt, [&] {
      return crl_verify_absent(crl_leaf(user.serial), w.crl_proof,
                               w.crl_merkle_root)
                 ? ""
                 : "non-membership proof rejected";
    });
  }

  if (ev.failed()) {
    result.failure = std::move(ev.failure());
    return result;
  }

  // (8), (11) outputs
  PublicValues pv;
  pv.nullifier = compute_nullifier(w.nullifier_sig, w.wallet_index);
  pv.ca_merkle_root = w.ca_merkle_root;
  pv.timestamp = w.current_timestamp;
  pv.registrant = w.registrant;
  pv.wallet_index = w.wallet_index;
  pv.not_after = static_cast<uint64_t>(user.not_after);
  pv.chain_id = w.chain_id;
  pv.registry_address = w.registry_address;
  pv.crl_merkle_root = w.crl_merkle_root;
  Hash32 salt = disclosure_salt(w.nullifier_sig);
  auto field = [&](uint8_t bit, DnField f) -> std::optional<std::string> {
    if (!(w.disclosure_mask & bit)) return std::nullopt;
    return extract_dn_field(user.subject_dn, f);
  };
  pv.country_hash =
      disclosure_hash(field(kDiscloseCountry, DnField::kCountry), salt);
  pv.org_hash =
      disclosure_hash(field(kDiscloseOrganization, DnField::kOrganization), salt);
  pv.org_unit_hash =
      disclosure_hash(field(kDiscloseOrgUnit, DnField::kOrgUnit), salt);
  pv.common_name_hash =
      disclosure_hash(field(kDiscloseCommonName, DnField::kCommonName), salt);
  result.public_values = pv;
  return result;
}

ProofBundle prove(const Witness& w) {
  Evaluation ev = evaluate_statement(w);
  if (!ev.ok()) throw StatementError(*ev.failure);
  ProofBundle bundle;
  bundle.encoded_pv_ = encode_public_values(*ev.public_values);
  bundle.vkey_id_ = statement_vkey_id();
  bundle.token_ = detail::mock_attest(bundle.vkey_id_, bundle.encoded_pv_);
  bundle.trace_ = std::move(ev.trace);
  return bundle;
}

bool verify_attestation(const Hash32& vkey_id, ByteView encoded_pv,
                        const Hash32& token) {
  Hash32 expected = detail::mock_attest(vkey_id, encoded_pv);
  return CRYPTO_memcmp(expected.data(), token.data(), expected.size()) == 0;
}

}  // namespace zkx509
