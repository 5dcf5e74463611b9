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

// Identity registry state machine under an explicit logical clock.
//
// Every mutating call takes (sender, now). A failing call throws
// RegistryError and leaves the state untouched, like a reverted transaction.
// Successful calls append events to the state's event log. The Registry
// wrapper additionally records every attempt in an operation log.

#ifndef ZKX509_REGISTRY_H_
#define ZKX509_REGISTRY_H_

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "zkx509/bytes.h"
#include "zkx509/statement.h"

namespace zkx509 {

enum class RegistryErrc {
  kPaused,
  kMalformedPublicValues,
  kRegistrantMismatch,
  kFutureProof,
  kStaleProof,
  kCaRootMismatch,
  kWalletIndexTooHigh,
  kCertExpiredOnChain,
  kChainIdMismatch,
  kRegistryAddressMismatch,
  kCrlRootMismatch,
  kInsufficientDisclosure,
  kInvalidProof,
  kNullifierRevoked,
  kNullifierTaken,
  kAddressAlreadyVerified,
  kNullifierUnknown,
  kNotOwner,
  kNotPendingOwner,
  kZeroCa,
  kDuplicateCa,
  kIndexOutOfRange,
  kProofAgeOutOfBounds,
};

inline constexpr RegistryErrc kAllRegistryErrors[] = {
    RegistryErrc::kPaused,
    RegistryErrc::kMalformedPublicValues,
    RegistryErrc::kRegistrantMismatch,
    RegistryErrc::kFutureProof,
    RegistryErrc::kStaleProof,
    RegistryErrc::kCaRootMismatch,
    RegistryErrc::kWalletIndexTooHigh,
    RegistryErrc::kCertExpiredOnChain,
    RegistryErrc::kChainIdMismatch,
    RegistryErrc::kRegistryAddressMismatch,
    RegistryErrc::kCrlRootMismatch,
    RegistryErrc::kInsufficientDisclosure,
    RegistryErrc::kInvalidProof,
    RegistryErrc::kNullifierRevoked,
    RegistryErrc::kNullifierTaken,
    RegistryErrc::kAddressAlreadyVerified,
    RegistryErrc::kNullifierUnknown,
    RegistryErrc::kNotOwner,
    RegistryErrc::kNotPendingOwner,
    RegistryErrc::kZeroCa,
    RegistryErrc::kDuplicateCa,
    RegistryErrc::kIndexOutOfRange,
    RegistryErrc::kProofAgeOutOfBounds,
};

const char* to_string(RegistryErrc code);

class RegistryError : public std::runtime_error {
 public:
  RegistryError(RegistryErrc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code) {}
  RegistryErrc code() const { return code_; }

 private:
  RegistryErrc code_;
};

inline constexpr uint64_t kDefaultGracePeriod = 86400;
inline constexpr uint64_t kDefaultMaxProofAge = 3600;
inline constexpr uint64_t kMinProofAge = 300;
inline constexpr uint64_t kMaxProofAge = 86400;

struct RegistryEvent {
  std::string name;  // e.g. "UserRegistered"
  uint64_t at = 0;
  std::map<std::string, std::string> fields;  // values are 0x-hex or decimal

  bool operator==(const RegistryEvent&) const = default;
};

struct RegistryConfig {
  Hash32 vkey_id = statement_vkey_id();
  uint32_t max_wallets_per_cert = 1;
  uint8_t min_disclosure_mask = 0;
  uint64_t chain_id = 1;
  Address self_address{};
  Address owner{};
};

struct RegistryState {
  // Write-once at construction.
  Hash32 vkey_id{};
  uint32_t max_wallets_per_cert = 1;
  uint8_t min_disclosure_mask = 0;
  uint64_t chain_id = 0;
  Address self_address{};

  std::vector<Hash32> ca_leaves;
  std::set<Hash32> ca_exists;
  Hash32 ca_merkle_root{};
  Hash32 previous_ca_merkle_root{};
  uint64_t ca_merkle_root_updated_at = 0;
  uint64_t ca_root_grace_period = kDefaultGracePeriod;
  Hash32 crl_merkle_root{};
  std::map<Hash32, Address> nullifier_owner;
  std::set<Hash32> revoked_nullifiers;
  std::map<Address, uint64_t> verified_until;
  Address owner{};
  std::optional<Address> pending_owner;
  uint64_t max_proof_age = kDefaultMaxProofAge;
  bool paused = false;

  std::vector<RegistryEvent> events;

  bool operator==(const RegistryState&) const = default;
};

RegistryState make_registry(const RegistryConfig& config);

// Pure checks; no state change.
PublicValues validate_proof(const RegistryState& s, const Address& sender,
                            uint64_t now, ByteView encoded_pv,
                            const Hash32& token);

void register_identity(RegistryState& s, const Address& sender, uint64_t now,
                       ByteView encoded_pv, const Hash32& token);
void re_register(RegistryState& s, const Address& sender, uint64_t now,
                 ByteView encoded_pv, const Hash32& token);

// verified_until[addr] >= now, for an address that has a live entry.
bool is_verified(const RegistryState& s, const Address& addr, uint64_t now);

void add_ca(RegistryState& s, const Address& sender, uint64_t now,
            const Hash32& ca_hash);
// All-or-nothing; the root is recomputed once.
void add_cas(RegistryState& s, const Address& sender, uint64_t now,
             const std::vector<Hash32>& ca_hashes);
// Swaps index with the last leaf, then pops.
void remove_ca(RegistryState& s, const Address& sender, uint64_t now,
               uint64_t index);
// Manual override of the root (setup or migration). The leaf list is left
// alone; the next add/remove recomputes the root from it.
void update_ca_merkle_root(RegistryState& s, const Address& sender,
                           uint64_t now, const Hash32& root);
// The zero root disables the on-chain CRL comparison.
void update_crl_merkle_root(RegistryState& s, const Address& sender,
                            uint64_t now, const Hash32& root);
void set_max_proof_age(RegistryState& s, const Address& sender, uint64_t now,
                       uint64_t seconds);
// Throws NullifierUnknown for a never-registered nullifier. Revoking an
// already revoked nullifier is a no-op apart from the event.
void revoke_identity(RegistryState& s, const Address& sender, uint64_t now,
                     const Hash32& nullifier, const Hash32& reason);
void pause(RegistryState& s, const Address& sender, uint64_t now);
void unpause(RegistryState& s, const Address& sender, uint64_t now);
void transfer_ownership(RegistryState& s, const Address& sender, uint64_t now,
                        const Address& new_owner);
void accept_ownership(RegistryState& s, const Address& sender, uint64_t now);

inline size_t get_ca_count(const RegistryState& s) { return s.ca_leaves.size(); }
inline const std::vector<Hash32>& get_ca_leaves(const RegistryState& s) {
  return s.ca_leaves;
}

struct OpRecord {
  std::string op;
  Address sender{};
  uint64_t now = 0;
  std::string outcome;  // "ok" or the error name

  bool operator==(const OpRecord&) const = default;
};

// State plus a logical clock and an operation log; this is what the CLI
// persists.
struct Registry {
  RegistryState state;
  uint64_t clock = 0;
  std::vector<OpRecord> op_log;

  // Runs `fn` at the current clock, records the outcome, rethrows failures.
  template <typename Fn>
  void apply(const std::string& op, const Address& sender, Fn&& fn) {
    try {
      fn(state, sender, clock);
    } catch (const RegistryError& e) {
      op_log.push_back({op, sender, clock, to_string(e.code())});
      throw;
    }
    op_log.push_back({op, sender, clock, "ok"});
  }

  bool operator==(const Registry&) const = default;
};

}  // namespace zkx509

#endif  // ZKX509_REGISTRY_H_
