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

// Signature verification dispatched on the signature-algorithm OID, and a
// deterministic signer standing in for an OS keychain identity.
//
// Supported signature OIDs:
//   1.2.840.113549.1.1.5   sha1WithRSAEncryption
//   1.2.840.113549.1.1.11  sha256WithRSAEncryption
//   1.2.840.113549.1.1.12  sha384WithRSAEncryption
//   1.2.840.113549.1.1.13  sha512WithRSAEncryption
//   1.2.840.10045.4.3.2    ecdsa-with-SHA256
//   1.2.840.10045.4.3.3    ecdsa-with-SHA384
// For ECDSA the OID fixes only the digest; the curve comes from the signer's
// namedCurve, so SHA-256 over P-384 is a valid combination.

#ifndef ZKX509_SIGCRYPTO_H_
#define ZKX509_SIGCRYPTO_H_

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "zkx509/bytes.h"

typedef struct evp_pkey_st EVP_PKEY;

namespace zkx509 {

enum class KeyKind { kRsa, kP256, kP384 };
enum class Digest { kSha1, kSha256, kSha384, kSha512 };

const char* to_string(KeyKind kind);
const char* to_string(Digest digest);
KeyKind key_kind_from_string(std::string_view s);
Digest digest_from_string(std::string_view s);

enum class SigCryptoErrc {
  kUnsupportedAlgorithm,
  kCurveMismatch,
  kBadKey,
};

const char* to_string(SigCryptoErrc code);

class SigCryptoError : public std::runtime_error {
 public:
  SigCryptoError(SigCryptoErrc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code) {}
  SigCryptoErrc code() const { return code_; }

 private:
  SigCryptoErrc code_;
};

Hash32 sha256(ByteView data);
Bytes digest(Digest alg, ByteView data);
Bytes hmac(Digest alg, ByteView key, ByteView data);

// Signature OID for a signer of `kind` using `alg`. Throws
// UnsupportedAlgorithm for pairs outside the table above (e.g. ECDSA+SHA1).
std::string signature_oid(KeyKind kind, Digest alg);

// The OID used for ownership and nullifier signatures made by a key whose
// SPKI algorithm is `spki_alg_oid`: SHA-256 with the key's own scheme.
std::string default_signature_oid(std::string_view spki_alg_oid);

// Digest named by a supported signature OID; nullopt for unknown OIDs.
std::optional<Digest> signature_digest(std::string_view sig_alg_oid);

class SignerKey {
 public:
  // RSA PKCS#1 or EC SEC1 private key, DER or PEM. Throws BadKey when the
  // material does not load or fails its consistency check.
  static SignerKey load(ByteView private_material);

  // Deterministic key derivation: identical seed bytes give an identical key.
  // RSA keys are 2048-bit with e = 65537.
  static SignerKey derive(KeyKind kind, ByteView seed);

  KeyKind kind() const { return kind_; }
  const Bytes& private_der() const { return private_der_; }
  const Bytes& spki_der() const { return spki_der_; }
  EVP_PKEY* pkey() const { return pkey_.get(); }

 private:
  SignerKey(std::shared_ptr<EVP_PKEY> pkey);

  std::shared_ptr<EVP_PKEY> pkey_;
  KeyKind kind_ = KeyKind::kRsa;
  Bytes private_der_;
  Bytes spki_der_;
};

// RSA: PKCS#1 v1.5 over digest(message). EC: ECDSA with an RFC 6979 nonce
// (HMAC over the same digest), DER-encoded (r, s). Pure in (key, message).
Bytes sign_deterministic(const SignerKey& key, ByteView message,
                         Digest alg = Digest::kSha256);

// The first RFC 6979 nonce candidate for `private_scalar` and the message
// digest `h1`, as a big-endian integer of the curve order's byte width.
Bytes rfc6979_nonce(KeyKind curve, ByteView private_scalar, ByteView h1,
                    Digest alg);

// Returns false for a bad signature, an unparseable key, or a key whose type
// does not match the OID family. Throws UnsupportedAlgorithm for unknown
// OIDs and CurveMismatch when an ECDSA OID meets an absent or unknown curve.
bool verify_cert_signature(ByteView signer_spki, ByteView signed_bytes,
                           ByteView signature, std::string_view sig_alg_oid,
                           const std::optional<std::string>& signer_named_curve);

}  // namespace zkx509

#endif  // ZKX509_SIGCRYPTO_H_
