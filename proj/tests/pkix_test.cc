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

#include "zkx509/pkix.h"

#include <gtest/gtest.h>
#include <openssl/asn1.h>
#include <openssl/bio.h>
#include <openssl/pem.h>
#include <openssl/x509.h>

#include <functional>
#include <memory>

#include "test_support.h"
#include "zkx509/der.h"

namespace zkx509 {
namespace {

using testing::cached_pki;

struct X509Deleter {
  void operator()(X509* p) const { X509_free(p); }
};
struct CrlDeleter {
  void operator()(X509_CRL* p) const { X509_CRL_free(p); }
};

std::unique_ptr<X509, X509Deleter> openssl_cert(const Bytes& der) {
  const unsigned char* p = der.data();
  return std::unique_ptr<X509, X509Deleter>(
      d2i_X509(nullptr, &p, static_cast<long>(der.size())));
}

std::unique_ptr<X509_CRL, CrlDeleter> openssl_crl(const Bytes& der) {
  const unsigned char* p = der.data();
  return std::unique_ptr<X509_CRL, CrlDeleter>(
      d2i_X509_CRL(nullptr, &p, static_cast<long>(der.size())));
}

int64_t openssl_time(const ASN1_TIME* t) {
  struct tm tm {};
  EXPECT_EQ(ASN1_TIME_to_tm(t, &tm), 1);
  return static_cast<int64_t>(timegm(&tm));
}

Bytes openssl_serial(const ASN1_INTEGER* i) {
  Bytes out(static_cast<size_t>(i->length));
  std::copy(i->data, i->data + i->length, out.begin());
  return out;
}

PkixErrc pkix_code(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const PkixError& e) {
    return e.code();
  }
  ADD_FAILURE() << "no PkixError thrown";
  return PkixErrc::kUnsupportedFeature;
}

TEST(ParseCertificate, RootIsSelfSigned) {
  const auto& pki = cached_pki(KeyKind::kP256, 3);
  ParsedCertificate root = parse_certificate(pki.root_der);
  EXPECT_EQ(root.issuer_dn, root.subject_dn);
  EXPECT_EQ(root.issuer_der, root.subject_der);
  EXPECT_EQ(root.serial, Bytes{1});
  EXPECT_EQ(root.spki_der, pki.root_spki);
}

TEST(ParseCertificate, UserValidityMatchesOpenSsl) {
  for (KeyKind kind : {KeyKind::kRsa, KeyKind::kP256, KeyKind::kP384}) {
    const auto& pki = cached_pki(kind, 3);
    ParsedCertificate user = parse_certificate(pki.user_der);
    EXPECT_EQ(user.not_before, 1700000000);
    EXPECT_EQ(user.not_after, 1731536000);

    auto x = openssl_cert(pki.user_der);
    ASSERT_TRUE(x) << "OpenSSL rejected the fixture";
    EXPECT_EQ(openssl_time(X509_get0_notBefore(x.get())), user.not_before);
    EXPECT_EQ(openssl_time(X509_get0_notAfter(x.get())), user.not_after);
    EXPECT_EQ(openssl_serial(X509_get0_serialNumber(x.get())), user.serial);

    int tbs_len = i2d_re_X509_tbs(x.get(), nullptr);
    EXPECT_EQ(static_cast<size_t>(tbs_len), user.tbs_bytes.size());

    auto issuer = openssl_cert(pki.intermediate_ders.at(0));
    EVP_PKEY* issuer_key = X509_get0_pubkey(issuer.get());
    EXPECT_EQ(X509_verify(x.get(), issuer_key), 1);
  }
}

TEST(ParseCertificate, AllFixtureCertsVerifyUnderOpenSsl) {
  for (KeyKind kind : {KeyKind::kRsa, KeyKind::kP256, KeyKind::kP384}) {
    for (int depth : {1, 2, 3}) {
      const auto& pki = cached_pki(kind, depth);
      for (size_t i = 0; i < pki.certificates.size(); ++i) {
        auto x = openssl_cert(pki.certificates[i]);
        ASSERT_TRUE(x);
        size_t issuer = std::min(i + 1, pki.certificates.size() - 1);
        auto signer = openssl_cert(pki.certificates[issuer]);
        EXPECT_EQ(X509_verify(x.get(), X509_get0_pubkey(signer.get())), 1)
            << to_string(kind) << " depth " << depth << " cert " << i;
        ParsedCertificate mine = parse_certificate(pki.certificates[i]);
        ParsedCertificate up = parse_certificate(pki.certificates[issuer]);
        EXPECT_EQ(mine.issuer_der, up.subject_der);
      }
    }
  }
}

TEST(ParseCertificate, SpkiFields) {
  ParsedCertificate ec = parse_certificate(cached_pki(KeyKind::kP384, 1).user_der);
  EXPECT_EQ(ec.spki_alg_oid, oid::kEcPublicKey);
  EXPECT_EQ(ec.spki_named_curve, std::optional<std::string>(oid::kP384));
  EXPECT_EQ(ec.spki_key_bytes.size(), 97u);
  EXPECT_EQ(ec.sig_alg_oid, oid::kEcdsaWithSha256);

  ParsedCertificate rsa = parse_certificate(cached_pki(KeyKind::kRsa, 1).user_der);
  EXPECT_EQ(rsa.spki_alg_oid, oid::kRsaEncryption);
  EXPECT_FALSE(rsa.spki_named_curve.has_value());
  EXPECT_EQ(rsa.sig_alg_oid, oid::kSha256WithRsa);

  SubjectPublicKeyInfo spki = parse_spki(rsa.spki_der);
  EXPECT_EQ(spki.der, rsa.spki_der);
  EXPECT_EQ(spki.key_bytes, rsa.spki_key_bytes);
}

TEST(ParseCertificate, TruncatedIsMalformed) {
  const Bytes& der = cached_pki(KeyKind::kP256, 2).user_der;
  Bytes head(der.begin(), der.begin() + 10);
  EXPECT_EQ(pkix_code([&] { parse_certificate(head); }), PkixErrc::kMalformedDer);
  for (size_t cut : {size_t{0}, size_t{1}, der.size() / 2, der.size() - 1}) {
    Bytes part(der.begin(), der.begin() + static_cast<long>(cut));
    EXPECT_EQ(pkix_code([&] { parse_certificate(part); }), PkixErrc::kMalformedDer);
  }
  Bytes extra = der;
  extra.push_back(0);
  EXPECT_EQ(pkix_code([&] { parse_certificate(extra); }), PkixErrc::kMalformedDer);
}

TEST(ParseCertificate, NeverCrashesOnByteMutations) {
  Bytes der = cached_pki(KeyKind::kP256, 1).user_der;
  std::mt19937 rng(3);
  for (int i = 0; i < 3000; ++i) {
    Bytes m = der;
    m[rng() % m.size()] ^= static_cast<uint8_t>(1 + rng() % 255);
    try {
      parse_certificate(m);
    } catch (const PkixError&) {
    }
  }
}

TEST(ParseCertificate, PemInput) {
  const auto& pki = cached_pki(KeyKind::kP256, 1);
  auto x = openssl_cert(pki.user_der);
  BIO* bio = BIO_new(BIO_s_mem());
  ASSERT_EQ(PEM_write_bio_X509(bio, x.get()), 1);
  char* data = nullptr;
  long len = BIO_get_mem_data(bio, &data);
  Bytes pem(data, data + len);
  BIO_free(bio);
  EXPECT_EQ(pem_to_der(pem), pki.user_der);
  EXPECT_EQ(pem_to_der(pki.user_der), pki.user_der);
  EXPECT_EQ(parse_certificate(pem).serial, parse_certificate(pki.user_der).serial);
}

TEST(ParseCrl, RevokedSerialMatchesOpenSsl) {
  const auto& pki = cached_pki(KeyKind::kP256, 2);
  Bytes crl = fixtures::build_crl(pki.root_key, pki.spec.root.subject, {2},
                                  1700000000, 1731536000);
  ParsedCrl parsed = parse_crl(crl);
  ASSERT_EQ(parsed.revoked_serials.size(), 1u);
  EXPECT_EQ(parsed.revoked_serials[0], Bytes{0x02});

  auto x = openssl_crl(crl);
  ASSERT_TRUE(x);
  STACK_OF(X509_REVOKED)* revoked = X509_CRL_get_REVOKED(x.get());
  ASSERT_EQ(sk_X509_REVOKED_num(revoked), 1);
  EXPECT_EQ(openssl_serial(X509_REVOKED_get0_serialNumber(
                sk_X509_REVOKED_value(revoked, 0))),
            parsed.revoked_serials[0]);
  EXPECT_EQ(openssl_time(X509_CRL_get0_lastUpdate(x.get())), parsed.this_update);
  EXPECT_EQ(openssl_time(X509_CRL_get0_nextUpdate(x.get())), parsed.next_update);
  auto root = openssl_cert(pki.root_der);
  EXPECT_EQ(X509_CRL_verify(x.get(), X509_get0_pubkey(root.get())), 1);
}

TEST(ParseCrl, SerialsKeepDerOrderAndNormalize) {
  const auto& pki = cached_pki(KeyKind::kP256, 1);
  Bytes crl = fixtures::build_crl(pki.root_key, pki.spec.root.subject,
                                  {0x80, 5, 0x1234}, 1700000000, 1731536000);
  ParsedCrl parsed = parse_crl(crl);
  ASSERT_EQ(parsed.revoked_serials.size(), 3u);
  EXPECT_EQ(parsed.revoked_serials[0], Bytes{0x80});
  EXPECT_EQ(parsed.revoked_serials[1], Bytes{0x05});
  EXPECT_EQ(parsed.revoked_serials[2], (Bytes{0x12, 0x34}));
}

TEST(ParseCrl, EmptyRevocationList) {
  const auto& pki = cached_pki(KeyKind::kP256, 1);
  ParsedCrl parsed = parse_crl(pki.crl_der);
  EXPECT_TRUE(parsed.revoked_serials.empty());
  EXPECT_EQ(parsed.issuer_der, parse_certificate(pki.root_der).subject_der);
}

Bytes crl_without_next_update(const fixtures::Pki& pki) {
  Bytes alg = der::sequence({der::oid(oid::kEcdsaWithSha256)});
  Bytes tbs = der::sequence({der::integer(uint64_t{1}), alg,
                             fixtures::encode_name(pki.spec.root.subject),
                             der::time(1700000000)});
  Bytes sig = sign_deterministic(pki.root_key, tbs);
  return der::sequence({tbs, alg, der::bit_string(sig)});
}

TEST(ParseCrl, MissingNextUpdate) {
  const auto& pki = cached_pki(KeyKind::kP256, 1);
  Bytes crl = crl_without_next_update(pki);
  ASSERT_TRUE(openssl_crl(crl)) << "OpenSSL accepts the structure";
  EXPECT_EQ(pkix_code([&] { parse_crl(crl); }), PkixErrc::kMissingNextUpdate);
}

TEST(ParseCrl, TruncatedIsMalformed) {
  const Bytes& crl = cached_pki(KeyKind::kP256, 1).crl_der;
  Bytes head(crl.begin(), crl.begin() + 10);
  EXPECT_EQ(pkix_code([&] { parse_crl(head); }), PkixErrc::kMalformedDer);
}

TEST(ExtractDnField, PresentAndAbsent) {
  DistinguishedName dn = {{oid::kCountry, "KR"}, {oid::kOrganization, "KFTC"},
                          {oid::kCommonName, "user"}};
  EXPECT_EQ(extract_dn_field(dn, DnField::kCountry), std::optional<std::string>("KR"));
  EXPECT_EQ(extract_dn_field(dn, DnField::kCommonName),
            std::optional<std::string>("user"));
  EXPECT_FALSE(extract_dn_field(dn, DnField::kOrgUnit).has_value());
  EXPECT_FALSE(extract_dn_field({}, DnField::kCountry).has_value());
}

TEST(ExtractDnField, TwoOrganizationsGivesFirstInDerOrder) {
  const auto& pki = cached_pki(KeyKind::kP256, 1);
  fixtures::CertificateParams params;
  params.serial = 9;
  params.issuer = pki.spec.root.subject;
  params.subject = {{DnField::kCountry, "KR"},
                    {DnField::kOrganization, "First Org"},
                    {DnField::kOrganization, "Second Org"},
                    {DnField::kCommonName, "two orgs"}};
  params.not_before = 1700000000;
  params.not_after = 1731536000;
  params.subject_spki = pki.user_key.spki_der();
  Bytes der = fixtures::issue_certificate(params, pki.root_key);

  ParsedCertificate cert = parse_certificate(der);
  EXPECT_EQ(extract_dn_field(cert.subject_dn, DnField::kOrganization),
            std::optional<std::string>("First Org"));

  auto x = openssl_cert(der);
  ASSERT_TRUE(x);
  X509_NAME* name = X509_get_subject_name(x.get());
  int first = X509_NAME_get_index_by_NID(name, NID_organizationName, -1);
  ASSERT_GE(first, 0);
  ASN1_STRING* value = X509_NAME_ENTRY_get_data(X509_NAME_get_entry(name, first));
  EXPECT_EQ(std::string(reinterpret_cast<const char*>(ASN1_STRING_get0_data(value)),
                        static_cast<size_t>(ASN1_STRING_length(value))),
            "First Org");
}

TEST(DnDecoding, Utf8Values) {
  const auto& pki = cached_pki(KeyKind::kP256, 1);
  fixtures::CertificateParams params;
  params.issuer = pki.spec.root.subject;
  params.subject = {{DnField::kCountry, "KR"}, {DnField::kCommonName, "\xed\x99\x8d\xea\xb8\xb8\xeb\x8f\x99"}};
  params.not_before = 1700000000;
  params.not_after = 1731536000;
  params.subject_spki = pki.user_key.spki_der();
  ParsedCertificate cert =
      parse_certificate(fixtures::issue_certificate(params, pki.root_key));
  EXPECT_EQ(extract_dn_field(cert.subject_dn, DnField::kCommonName),
            std::optional<std::string>("\xed\x99\x8d\xea\xb8\xb8\xeb\x8f\x99"));
}

TEST(TemporalValid, Boundaries) {
  ParsedCertificate c = parse_certificate(cached_pki(KeyKind::kP256, 1).user_der);
  EXPECT_TRUE(temporal_valid(c, c.not_before));
  EXPECT_TRUE(temporal_valid(c, c.not_after));
  EXPECT_FALSE(temporal_valid(c, c.not_after + 1));
  EXPECT_FALSE(temporal_valid(c, c.not_before - 1));
}

TEST(NormalizeSerial, StripsSignByte) {
  EXPECT_EQ(normalize_serial(Bytes{0x00, 0x80}), Bytes{0x80});
  EXPECT_EQ(normalize_serial(Bytes{0x05}), Bytes{0x05});
  EXPECT_EQ(normalize_serial(Bytes{0x00}), Bytes{0x00});
}

}  // namespace
}  // namespace zkx509
