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

#include "zkx509/registry.h"

#include <algorithm>

#include "zkx509/merkle.h"

namespace zkx509 {

namespace {

[[noreturn]] void fail(RegistryErrc code, const std::string& what) {
  throw RegistryError(code, what);
}

void require_owner(const RegistryState& s, const Address& sender) {
  if (sender != s.owner) fail(RegistryErrc::kNotOwner, "sender is not owner");
}

void emit(RegistryState& s, uint64_t now, std::string name,
          std::map<std::string, std::string> fields) {
  s.events.push_back({std::move(name), now, std::move(fields)});
}

void set_ca_root(RegistryState& s, uint64_t now, const Hash32& root) {
  Hash32 old = s.ca_merkle_root;
  s.previous_ca_merkle_root = old;
  s.ca_merkle_root_updated_at = now;
  s.ca_merkle_root = root;
  emit(s, now, "CaMerkleRootUpdated",
       {{"old_root", to_hex0x(old)}, {"new_root", to_hex0x(root)}});
}

bool live_entry(const RegistryState& s, const Address& addr, uint64_t now) {
  auto it = s.verified_until.find(addr);
  return it != s.verified_until.end() && it->second != 0 && it->second >= now;
}

const Hash32& disclosure_word(const PublicValues& pv, int bit) {
  switch (bit) {
    case 0:
      return pv.country_hash;
    case 1:
      return pv.org_hash;
    case 2:
      return pv.org_unit_hash;
    default:
      return pv.common_name_hash;
  }
}

}  // namespace

const char* to_string(RegistryErrc code) {
  switch (code) {
    case RegistryErrc::kPaused:
      return "Paused";
    case RegistryErrc::kMalformedPublicValues:
      return "MalformedPublicValues";
    case RegistryErrc::kRegistrantMismatch:
      return "RegistrantMismatch";
    case RegistryErrc::kFutureProof:
      return "FutureProof";
    case RegistryErrc::kStaleProof:
      return "StaleProof";
    case RegistryErrc::kCaRootMismatch:
      return "CaRootMismatch";
    case RegistryErrc::kWalletIndexTooHigh:
      return "WalletIndexTooHigh";
    case RegistryErrc::kCertExpiredOnChain:
      return "CertExpiredOnChain";
    case RegistryErrc::kChainIdMismatch:
      return "ChainIdMismatch";
    case RegistryErrc::kRegistryAddressMismatch:
      return "RegistryAddressMismatch";
    case RegistryErrc::kCrlRootMismatch:
      return "CrlRootMismatch";
    case RegistryErrc::kInsufficientDisclosure:
      return "InsufficientDisclosure";
    case RegistryErrc::kInvalidProof:
      return "InvalidProof";
    case RegistryErrc::kNullifierRevoked:
      return "NullifierRevoked";
    case RegistryErrc::kNullifierTaken:
      return "NullifierTaken";
    case RegistryErrc::kAddressAlreadyVerified:
      return "AddressAlreadyVerified";
    case RegistryErrc::kNullifierUnknown:
      return "NullifierUnknown";
    case RegistryErrc::kNotOwner:
      return "NotOwner";
    case RegistryErrc::kNotPendingOwner:
      return "NotPendingOwner";
    case RegistryErrc::kZeroCa:
      return "ZeroCa";
    case RegistryErrc::kDuplicateCa:
      return "DuplicateCa";
    case RegistryErrc::kIndexOutOfRange:
      return "IndexOutOfRange";
    case RegistryErrc::kProofAgeOutOfBounds:
      return "ProofAgeOutOfBounds";
  }
  return "Unknown";
}

RegistryState make_registry(const RegistryConfig& config) {
  RegistryState s;
  s.vkey_id = config.vkey_id;
  s.max_wallets_per_cert = config.max_wallets_per_cert;
  s.min_disclosure_mask = config.min_disclosure_mask;
  s.chain_id = config.chain_id;
  s.self_address = config.self_address;
  s.owner = config.owner;
  return s;
}

PublicValues validate_proof(const RegistryState& s, const Address& sender,
                            uint64_t now, ByteView encoded_pv,
                            const Hash32& token) {
  if (s.paused) fail(RegistryErrc::kPaused, "registry is paused");
  PublicValues pv;
  try {
    pv = decode_public_values(encoded_pv);
  } catch (const PvCodecError& e) {
    fail(RegistryErrc::kMalformedPublicValues, e.what());
  }
  if (pv.registrant != sender) {
    fail(RegistryErrc::kRegistrantMismatch,
         "registrant " + to_hex0x(pv.registrant) + " is not the sender");
  }
  if (pv.timestamp > now) fail(RegistryErrc::kFutureProof, "proof from future");
  if (now - pv.timestamp > s.max_proof_age) {
    fail(RegistryErrc::kStaleProof, "proof older than max_proof_age");
  }
  bool current = pv.ca_merkle_root == s.ca_merkle_root;
  bool in_grace = pv.ca_merkle_root == s.previous_ca_merkle_root &&
                  now >= s.ca_merkle_root_updated_at &&
                  now - s.ca_merkle_root_updated_at <= s.ca_root_grace_period;
  if (!current && !in_grace) {
    fail(RegistryErrc::kCaRootMismatch, "CA root is neither current nor in grace");
  }
  if (pv.wallet_index >= s.max_wallets_per_cert) {
    fail(RegistryErrc::kWalletIndexTooHigh, "wallet_index too high");
  }
  if (pv.not_after < now) {
    fail(RegistryErrc::kCertExpiredOnChain, "certificate expired");
  }
  if (pv.chain_id != s.chain_id) {
    fail(RegistryErrc::kChainIdMismatch, "chain id " +
                                             std::to_string(pv.chain_id));
  }
  if (pv.registry_address != s.self_address) {
    fail(RegistryErrc::kRegistryAddressMismatch,
         "registry address " + to_hex0x(pv.registry_address));
  }
  if (s.crl_merkle_root != kZeroHash &&
      pv.crl_merkle_root != s.crl_merkle_root) {
    fail(RegistryErrc::kCrlRootMismatch, "CRL root differs");
  }
  for (int bit = 0; bit < 4; ++bit) {
    if ((s.min_disclosure_mask >> bit & 1) &&
        disclosure_word(pv, bit) == kZeroHash) {
      fail(RegistryErrc::kInsufficientDisclosure,
           "required disclosure bit " + std::to_string(bit) + " missing");
    }
  }
  if (!verify_attestation(s.vkey_id, encoded_pv, token)) {
    fail(RegistryErrc::kInvalidProof, "attestation does not verify");
  }
  return pv;
}

void register_identity(RegistryState& s, const Address& sender, uint64_t now,
                       ByteView encoded_pv, const Hash32& token) {
  PublicValues pv = validate_proof(s, sender, now, encoded_pv, token);
  if (s.revoked_nullifiers.count(pv.nullifier)) {
    fail(RegistryErrc::kNullifierRevoked, "nullifier is revoked");
  }
  if (s.nullifier_owner.count(pv.nullifier)) {
    fail(RegistryErrc::kNullifierTaken, "nullifier already registered");
  }
  if (live_entry(s, sender, now)) {
    fail(RegistryErrc::kAddressAlreadyVerified, "sender is already verified");
  }
  s.nullifier_owner[pv.nullifier] = sender;
  s.verified_until[sender] = pv.not_after;
  emit(s, now, "UserRegistered",
       {{"user", to_hex0x(sender)}, {"nullifier", to_hex0x(pv.nullifier)}});
}

void re_register(RegistryState& s, const Address& sender, uint64_t now,
                 ByteView encoded_pv, const Hash32& token) {
  PublicValues pv = validate_proof(s, sender, now, encoded_pv, token);
  if (s.revoked_nullifiers.count(pv.nullifier)) {
    fail(RegistryErrc::kNullifierRevoked, "nullifier is revoked");
  }
  auto it = s.nullifier_owner.find(pv.nullifier);
  if (it == s.nullifier_owner.end()) {
    fail(RegistryErrc::kNullifierUnknown, "nullifier was never registered");
  }
  if (live_entry(s, sender, now)) {
    fail(RegistryErrc::kAddressAlreadyVerified, "sender is already verified");
  }
  Address old = it->second;
  s.verified_until[old] = 0;
  it->second = sender;
  s.verified_until[sender] = pv.not_after;
  emit(s, now, "UserReRegistered",
       {{"old_user", to_hex0x(old)},
        {"new_user", to_hex0x(sender)},
        {"nullifier", to_hex0x(pv.nullifier)}});
}

bool is_verified(const RegistryState& s, const Address& addr, uint64_t now) {
  return live_entry(s, addr, now);
}

void add_ca(RegistryState& s, const Address& sender, uint64_t now,
            const Hash32& ca_hash) {
  add_cas(s, sender, now, {ca_hash});
}

void add_cas(RegistryState& s, const Address& sender, uint64_t now,
             const std::vector<Hash32>& ca_hashes) {
  require_owner(s, sender);
  std::set<Hash32> batch;
  for (const Hash32& h : ca_hashes) {
    if (h == kZeroHash) fail(RegistryErrc::kZeroCa, "zero CA hash");
    if (s.ca_exists.count(h) || !batch.insert(h).second) {
      fail(RegistryErrc::kDuplicateCa, to_hex0x(h));
    }
  }
  for (const Hash32& h : ca_hashes) {
    s.ca_leaves.push_back(h);
    s.ca_exists.insert(h);
    emit(s, now, "CaAdded", {{"ca_hash", to_hex0x(h)}});
  }
  set_ca_root(s, now, ca_root(s.ca_leaves));
}

void remove_ca(RegistryState& s, const Address& sender, uint64_t now,
               uint64_t index) {
  require_owner(s, sender);
  if (index >= s.ca_leaves.size()) {
    fail(RegistryErrc::kIndexOutOfRange,
         "index " + std::to_string(index) + " of " +
             std::to_string(s.ca_leaves.size()));
  }
  Hash32 removed = s.ca_leaves[index];
  s.ca_leaves[index] = s.ca_leaves.back();
  s.ca_leaves.pop_back();
  s.ca_exists.erase(removed);
  emit(s, now, "CaRemoved", {{"ca_hash", to_hex0x(removed)}});
  set_ca_root(s, now, ca_root(s.ca_leaves));
}

void update_ca_merkle_root(RegistryState& s, const Address& sender,
                           uint64_t now, const Hash32& root) {
  require_owner(s, sender);
  set_ca_root(s, now, root);
}

void update_crl_merkle_root(RegistryState& s, const Address& sender,
                            uint64_t now, const Hash32& root) {
  require_owner(s, sender);
  Hash32 old = s.crl_merkle_root;
  s.crl_merkle_root = root;
  emit(s, now, "CrlMerkleRootUpdated",
       {{"old_root", to_hex0x(old)}, {"new_root", to_hex0x(root)}});
}

void set_max_proof_age(RegistryState& s, const Address& sender, uint64_t now,
                       uint64_t seconds) {
  require_owner(s, sender);
  if (seconds < kMinProofAge || seconds > kMaxProofAge) {
    fail(RegistryErrc::kProofAgeOutOfBounds,
         std::to_string(seconds) + " outside [300, 86400]");
  }
  s.max_proof_age = seconds;
  emit(s, now, "MaxProofAgeUpdated", {{"seconds", std::to_string(seconds)}});
}

void revoke_identity(RegistryState& s, const Address& sender, uint64_t now,
                     const Hash32& nullifier, const Hash32& reason) {
  require_owner(s, sender);
  auto it = s.nullifier_owner.find(nullifier);
  if (it == s.nullifier_owner.end()) {
    fail(RegistryErrc::kNullifierUnknown, "nullifier was never registered");
  }
  s.revoked_nullifiers.insert(nullifier);
  s.verified_until[it->second] = 0;
  emit(s, now, "IdentityRevoked",
       {{"nullifier", to_hex0x(nullifier)},
        {"reason", to_hex0x(reason)},
        {"user", to_hex0x(it->second)}});
}

void pause(RegistryState& s, const Address& sender, uint64_t now) {
  require_owner(s, sender);
  s.paused = true;
  emit(s, now, "Paused", {{"by", to_hex0x(sender)}});
}

void unpause(RegistryState& s, const Address& sender, uint64_t now) {
  require_owner(s, sender);
  s.paused = false;
  emit(s, now, "Unpaused", {{"by", to_hex0x(sender)}});
}

void transfer_ownership(RegistryState& s, const Address& sender, uint64_t now,
                        const Address& new_owner) {
  require_owner(s, sender);
  s.pending_owner = new_owner;
  emit(s, now, "OwnershipTransferStarted",
       {{"from", to_hex0x(sender)}, {"to", to_hex0x(new_owner)}});
}

void accept_ownership(RegistryState& s, const Address& sender, uint64_t now) {
  if (!s.pending_owner || *s.pending_owner != sender) {
    fail(RegistryErrc::kNotPendingOwner, "sender is not the pending owner");
  }
  Address old = s.owner;
  s.owner = sender;
  s.pending_owner.reset();
  emit(s, now, "OwnershipTransferred",
       {{"from", to_hex0x(old)}, {"to", to_hex0x(sender)}});
}

}  // namespace zkx509
