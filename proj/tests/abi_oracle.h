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

// Test-only encoder for a static ABI tuple. Written from the contract ABI
// rules alone (each static value in one 32-byte big-endian slot, left
// padded) and shares no code with encode_public_values.

#ifndef ZKX509_TESTS_ABI_ORACLE_H_
#define ZKX509_TESTS_ABI_ORACLE_H_

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "zkx509/bytes.h"
#include "zkx509/statement.h"

namespace zkx509::testing::abi {

struct Uint {
  unsigned bits;
  uint64_t value;
};
struct AddressValue {
  Address value;
};
struct Bytes32 {
  Hash32 value;
};

using Value = std::variant<Uint, AddressValue, Bytes32>;

inline void put_slot(std::string& out, Value v) {
  std::string slot(32, '\0');
  if (auto* u = std::get_if<Uint>(&v)) {
    if (u->bits < 64 && (u->value >> u->bits) != 0) {
      throw std::invalid_argument("value wider than its type");
    }
    for (int i = 0; i < 8; ++i) {
      slot[31 - i] = static_cast<char>((u->value >> (8 * i)) & 0xff);
    }
  } else if (auto* a = std::get_if<AddressValue>(&v)) {
    for (int i = 0; i < 20; ++i) slot[12 + i] = static_cast<char>(a->value[i]);
  } else {
    const auto& h = std::get<Bytes32>(v).value;
    for (int i = 0; i < 32; ++i) slot[i] = static_cast<char>(h[i]);
  }
  out += slot;
}

inline Bytes encode_tuple(const std::vector<Value>& values) {
  std::string out;
  for (const Value& v : values) put_slot(out, v);
  return Bytes(out.begin(), out.end());
}

// (bytes32,bytes32,uint64,address,uint32,uint64,uint64,address,
//  bytes32,bytes32,bytes32,bytes32,bytes32)
inline Bytes encode_public_values_oracle(const PublicValues& pv) {
  return encode_tuple({Bytes32{pv.nullifier}, Bytes32{pv.ca_merkle_root},
                       Uint{64, pv.timestamp}, AddressValue{pv.registrant},
                       Uint{32, pv.wallet_index}, Uint{64, pv.not_after},
                       Uint{64, pv.chain_id}, AddressValue{pv.registry_address},
                       Bytes32{pv.crl_merkle_root}, Bytes32{pv.country_hash},
                       Bytes32{pv.org_hash}, Bytes32{pv.org_unit_hash},
                       Bytes32{pv.common_name_hash}});
}

}  // namespace zkx509::testing::abi

#endif  // ZKX509_TESTS_ABI_ORACLE_H_
