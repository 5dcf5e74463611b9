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

// JSON documents for witnesses, proof bundles and registry state. Byte
// fields are lowercase hex with a 0x prefix (readers also accept bare hex);
// integers are JSON numbers.

#ifndef ZKX509_JSON_IO_H_
#define ZKX509_JSON_IO_H_

#include <stdexcept>
#include <string>

#include "json.hpp"
#include "zkx509/bytes.h"
#include "zkx509/registry.h"
#include "zkx509/statement.h"

namespace zkx509 {

class JsonFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Field names: left_leaf, right_leaf, left_proof, right_proof, left_dirs,
// right_dirs, left_index, right_index.
nlohmann::json non_membership_to_json(const NonMembershipProof& p);
NonMembershipProof non_membership_from_json(const nlohmann::json& j);

nlohmann::json witness_to_json(const Witness& w);
Witness witness_from_json(const nlohmann::json& j);

nlohmann::json public_values_to_json(const PublicValues& pv);
nlohmann::json trace_to_json(const CheckTrace& trace);
nlohmann::json failure_to_json(const StatementFailure& f);

// A proof bundle as it crosses the trust boundary. Reading one back gives
// plain data, not a ProofBundle: only the attestation check vouches for it.
struct BundleDocument {
  Bytes encoded_public_values;
  Hash32 token{};
  Hash32 vkey_id{};
};

nlohmann::json bundle_to_json(const ProofBundle& bundle);
BundleDocument bundle_from_json(const nlohmann::json& j);

nlohmann::json registry_to_json(const Registry& r);
Registry registry_from_json(const nlohmann::json& j);

}  // namespace zkx509

#endif  // ZKX509_JSON_IO_H_
