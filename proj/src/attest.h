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

// Internal: the mock attestation token. Library code calls this only from
// prove()'s success path; tests include it directly.

#ifndef ZKX509_SRC_ATTEST_H_
#define ZKX509_SRC_ATTEST_H_

#include "zkx509/bytes.h"

namespace zkx509::detail {

// SHA-256("zk-X509-MockProof-v1" || vkey_id || encoded_pv)
Hash32 mock_attest(const Hash32& vkey_id, ByteView encoded_pv);

}  // namespace zkx509::detail

#endif  // ZKX509_SRC_ATTEST_H_
