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

// Structured views of X.509 certificates and CRLs. Parsing is pure: no
// signature checks happen here (see sigcrypto.h).

#ifndef ZKX509_PKIX_H_
#define ZKX509_PKIX_H_

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "zkx509/bytes.h"

namespace zkx509 {

namespace oid {
inline constexpr char kCountry[] = "2.5.4.6";
inline constexpr char kOrganization[] = "2.5.4.10";
inline constexpr char kOrgUnit[] = "2.5.4.11";
inline constexpr char kCommonName[] = "2.5.4.3";

inline constexpr char kRsaEncryption[] = "1.2.840.113549.1.1.1";
inline constexpr char kEcPublicKey[] = "1.2.840.10045.2.1";
inline constexpr char kP256[] = "1.2.840.10045.3.1.7";
inline constexpr char kP384[] = "1.3.132.0.34";

inline constexpr char kSha1WithRsa[] = "1.2.840.113549.1.1.5";
inline constexpr char kSha256WithRsa[] = "1.2.840.113549.1.1.11";
inline constexpr char kSha384WithRsa[] = "1.2.840.113549.1.1.12";
inline constexpr char kSha512WithRsa[] = "1.2.840.113549.1.1.13";
inline constexpr char kEcdsaWithSha256[] = "1.2.840.10045.4.3.2";
inline constexpr char kEcdsaWithSha384[] = "1.2.840.10045.4.3.3";
}  // namespace oid

enum class PkixErrc {
  kMalformedDer,
  kUnsupportedFeature,
  kMissingNextUpdate,
};

const char* to_string(PkixErrc code);

class PkixError : public std::runtime_error {
 public:
  PkixError(PkixErrc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code) {}
  PkixErrc code() const { return code_; }

 private:
  PkixErrc code_;
};

struct DnAttribute {
  std::string oid;
  std::string value;  // UTF-8
  bool operator==(const DnAttribute&) const = default;
};

using DistinguishedName = std::vector<DnAttribute>;

enum class DnField { kCountry, kOrganization, kOrgUnit, kCommonName };

const char* dn_field_oid(DnField field);

// First attribute in DER order whose OID matches `field`.
std::optional<std::string> extract_dn_field(const DistinguishedName& dn,
                                            DnField field);

struct SubjectPublicKeyInfo {
  std::string alg_oid;
  std::optional<std::string> named_curve;
  Bytes key_bytes;  // BIT STRING payload
  Bytes der;        // full SubjectPublicKeyInfo TLV

  bool is_ec() const { return alg_oid == oid::kEcPublicKey; }
};

struct ParsedCertificate {
  Bytes tbs_bytes;
  Bytes serial;  // normalized: no DER sign byte
  DistinguishedName issuer_dn;
  DistinguishedName subject_dn;
  Bytes issuer_der;  // exact Name TLVs, for byte-equality matching
  Bytes subject_der;
  int64_t not_before = 0;
  int64_t not_after = 0;
  std::string spki_alg_oid;
  std::optional<std::string> spki_named_curve;
  Bytes spki_key_bytes;
  Bytes spki_der;
  std::string sig_alg_oid;
  Bytes signature;
  Bytes extensions_der;  // raw [3] contents, may be empty
};

struct ParsedCrl {
  Bytes tbs_bytes;
  DistinguishedName issuer_dn;
  Bytes issuer_der;
  int64_t this_update = 0;
  int64_t next_update = 0;
  std::vector<Bytes> revoked_serials;  // normalized, DER order
  std::string sig_alg_oid;
  Bytes signature;
};

// Both accept DER or PEM; PEM is detected by a leading "-----".
ParsedCertificate parse_certificate(ByteView input);
ParsedCrl parse_crl(ByteView input);
SubjectPublicKeyInfo parse_spki(ByteView der);

// Strips the PEM armor if present; DER passes through unchanged.
Bytes pem_to_der(ByteView input);

// Strips the leading 0x00 sign octet from INTEGER contents.
Bytes normalize_serial(ByteView integer_contents);

// Inclusive at both ends.
bool temporal_valid(const ParsedCertificate& cert, int64_t t);

}  // namespace zkx509

#endif  // ZKX509_PKIX_H_
