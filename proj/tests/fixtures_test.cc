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

#include "zkx509/fixtures.h"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "corruption_matrix.h"
#include "json.hpp"
#include "test_support.h"

namespace zkx509 {
namespace {

using namespace zkx509::testing;
using fixtures::CorruptStrategy;

TEST(BuildPki, SameSeedSameBytes) {
  for (KeyKind kind : {KeyKind::kRsa, KeyKind::kP384}) {
    fixtures::Pki a = fixtures::build_pki(fixtures::default_spec(7, 3, kind));
    fixtures::Pki b = fixtures::build_pki(fixtures::default_spec(7, 3, kind));
    EXPECT_EQ(a.certificates, b.certificates);
    EXPECT_EQ(a.crl_der, b.crl_der);
    EXPECT_EQ(a.user_key.private_der(), b.user_key.private_der());
    fixtures::Pki c = fixtures::build_pki(fixtures::default_spec(8, 3, kind));
    EXPECT_NE(a.root_der, c.root_der);
  }
}

TEST(BuildPki, ShapeBySerialAndDepth) {
  for (int depth : {1, 2, 3}) {
    const auto& pki = cached_pki(KeyKind::kP256, depth);
    size_t inter = depth == 3 ? 1 : 0;
    EXPECT_EQ(pki.intermediate_ders.size(), inter);
    EXPECT_EQ(pki.certificates.size(), inter + 2);
    EXPECT_EQ(pki.certificates.front(), pki.user_der);
    EXPECT_EQ(pki.certificates.back(), pki.root_der);
    EXPECT_EQ(pki.witness_chain().back(), pki.root_spki);
    EXPECT_EQ(pki.witness_chain().size(), inter + 1);
    EXPECT_EQ(pki.ca_leaf(), sha256(pki.root_spki));
    for (size_t i = 0; i < pki.certificates.size(); ++i) {
      ParsedCertificate c = parse_certificate(pki.certificates[i]);
      uint64_t expected = i == pki.certificates.size() - 1 ? 1 : pki.certificates.size() - i;
      EXPECT_EQ(c.serial, serial_bytes(expected));
    }
  }
}

TEST(BuildPki, EveryLinkVerifiesAndDnsMatch) {
  for (KeyKind kind : {KeyKind::kRsa, KeyKind::kP256, KeyKind::kP384}) {
    const auto& pki = cached_pki(kind, 3);
    for (size_t i = 0; i + 1 < pki.certificates.size(); ++i) {
      ParsedCertificate c = parse_certificate(pki.certificates[i]);
      ParsedCertificate issuer = parse_certificate(pki.certificates[i + 1]);
      EXPECT_EQ(c.issuer_der, issuer.subject_der);
      EXPECT_TRUE(verify_cert_signature(issuer.spki_der, c.tbs_bytes, c.signature,
                                        c.sig_alg_oid, issuer.spki_named_curve));
    }
    ParsedCrl crl = parse_crl(pki.crl_der);
    ParsedCertificate issuer = parse_certificate(pki.intermediate_ders[0]);
    EXPECT_EQ(crl.issuer_der, issuer.subject_der);
    EXPECT_TRUE(verify_cert_signature(issuer.spki_der, crl.tbs_bytes, crl.signature,
                                      crl.sig_alg_oid, issuer.spki_named_curve));
  }
}

TEST(BuildPki, PerTierDigestsAndKinds) {
  fixtures::PkiSpec spec = fixtures::default_spec(3, 3, KeyKind::kRsa);
  spec.intermediates[0].key_kind = KeyKind::kP384;
  spec.intermediates[0].digest = Digest::kSha1;  // root (RSA) signs with SHA-1
  spec.user.key_kind = KeyKind::kP256;
  spec.user.digest = Digest::kSha384;            // P-384 intermediate, SHA-384
  fixtures::Pki pki = fixtures::build_pki(spec);
  EXPECT_EQ(parse_certificate(pki.intermediate_ders[0]).sig_alg_oid, oid::kSha1WithRsa);
  EXPECT_EQ(parse_certificate(pki.user_der).sig_alg_oid, oid::kEcdsaWithSha384);
  Evaluation ev = evaluate_statement(happy_witness(pki));
  EXPECT_TRUE(ev.ok()) << ev.failure->describe();
}

TEST(ValidateSpec, RejectsBadShapes) {
  fixtures::PkiSpec s = fixtures::default_spec(1, 3, KeyKind::kP256);
  EXPECT_NO_THROW(fixtures::validate(s));
  auto bad = s;
  bad.chain_depth = 4;
  EXPECT_THROW(fixtures::validate(bad), fixtures::FixtureError);
  bad = s;
  bad.chain_depth = 0;
  EXPECT_THROW(fixtures::validate(bad), fixtures::FixtureError);
  bad = s;
  bad.intermediates.clear();
  EXPECT_THROW(fixtures::validate(bad), fixtures::FixtureError);
  bad = s;
  bad.crl_next_update = bad.crl_this_update - 1;
  EXPECT_THROW(fixtures::validate(bad), fixtures::FixtureError);
  bad = s;
  bad.user.not_after = bad.user.not_before - 1;
  EXPECT_THROW(fixtures::validate(bad), fixtures::FixtureError);
  bad = s;
  bad.user.key_kind = KeyKind::kP256;
  bad.user.digest = Digest::kSha1;
  bad.intermediates[0].key_kind = KeyKind::kP256;
  EXPECT_THROW(fixtures::build_pki(bad), std::exception);
}

TEST(BuildCrl, WindowGuardAndEmptyPath) {
  const auto& pki = cached_pki(KeyKind::kP256, 2);
  EXPECT_THROW(fixtures::build_crl(pki.root_key, pki.spec.root.subject, {}, 200, 100),
               fixtures::FixtureError);
  Bytes crl = fixtures::build_crl(pki.root_key, pki.spec.root.subject, {}, 1700000000,
                                  1731536000);
  EXPECT_TRUE(parse_crl(crl).revoked_serials.empty());
  ProveRequest r = standard_request(pki);
  r.crl_der = crl;
  EXPECT_TRUE(evaluate_statement(happy_witness(pki, r)).ok());
}

TEST(Corrupt, SpecExamples) {
  const auto& pki = cached_pki(KeyKind::kRsa, 2);
  Witness flipped = happy_witness(pki);
  flipped.cert_der = fixtures::corrupt(flipped.cert_der, CorruptStrategy::kFlipSignatureBit);
  Evaluation a = evaluate_statement(flipped);
  ASSERT_FALSE(a.ok());
  EXPECT_EQ(a.failure->code, StatementErrc::kChainSigInvalid);
  EXPECT_EQ(a.failure->index, std::optional<uint32_t>(0));

  Witness expired = happy_witness(pki);
  expired.cert_der =
      fixtures::corrupt(expired.cert_der, CorruptStrategy::kExpire, &pki.root_key);
  Evaluation b = evaluate_statement(expired);
  ASSERT_FALSE(b.ok());
  EXPECT_EQ(b.failure->code, StatementErrc::kCertExpired);

  Witness swapped = happy_witness(pki);
  swapped.crl_der =
      fixtures::corrupt(swapped.crl_der, CorruptStrategy::kSwapIssuer, &pki.root_key);
  Evaluation c = evaluate_statement(swapped);
  ASSERT_FALSE(c.ok());
  EXPECT_EQ(c.failure->code, StatementErrc::kCrlIssuerMismatch);
}

TEST(Corrupt, Inapplicable) {
  const auto& pki = cached_pki(KeyKind::kP256, 1);
  EXPECT_THROW(fixtures::corrupt(Bytes{}, CorruptStrategy::kTruncate),
               fixtures::StrategyInapplicable);
  EXPECT_THROW(fixtures::corrupt(pki.user_der, CorruptStrategy::kExpire),
               fixtures::StrategyInapplicable);
  EXPECT_THROW(fixtures::corrupt(Bytes{0x01, 0x02}, CorruptStrategy::kFlipSignatureBit),
               fixtures::StrategyInapplicable);
  EXPECT_THROW(fixtures::corrupt(pki.root_spki, CorruptStrategy::kSwapIssuer, &pki.root_key),
               fixtures::StrategyInapplicable);
}

TEST(Corrupt, StrategyNames) {
  for (auto s : {CorruptStrategy::kFlipSignatureBit, CorruptStrategy::kTruncate,
                 CorruptStrategy::kExpire, CorruptStrategy::kSwapIssuer}) {
    EXPECT_EQ(fixtures::corrupt_strategy_from_string(fixtures::to_string(s)), s);
  }
  EXPECT_THROW(fixtures::corrupt_strategy_from_string("melt"), fixtures::FixtureError);
}

class CorruptionMatrix : public ::testing::TestWithParam<size_t> {};

TEST_P(CorruptionMatrix, FailsExactlyItsTarget) {
  const auto cases = corruption_matrix();
  const auto& c = cases.at(GetParam());
  for (KeyKind kind : {KeyKind::kRsa, KeyKind::kP256, KeyKind::kP384}) {
    CaseOutcome out = run_corruption_case(c, cached_pki(kind, 3));
    EXPECT_TRUE(out.ok) << c.name << " / " << to_string(kind) << ": " << out.detail;
  }
}

INSTANTIATE_TEST_SUITE_P(Cases, CorruptionMatrix, ::testing::Range<size_t>(0, 12));

TEST(WriteDirectory, LayoutAndManifest) {
  const auto& pki = cached_pki(KeyKind::kP256, 3);
  auto dir = std::filesystem::temp_directory_path() / "zkx509_fixture_dir_test";
  std::filesystem::remove_all(dir);
  fixtures::write_directory(pki, dir);
  for (const char* f : {"root.der", "inter0.der", "user.der", "user.key", "crl.der",
                        "manifest.json"}) {
    EXPECT_TRUE(std::filesystem::exists(dir / f)) << f;
  }
  PkiDirectory loaded = load_pki_directory(dir);
  EXPECT_EQ(loaded.user_der, pki.user_der);
  EXPECT_EQ(loaded.witness_chain(), pki.witness_chain());
  EXPECT_EQ(loaded.crl_der, pki.crl_der);
  std::ifstream in(dir / "manifest.json");
  nlohmann::json manifest = nlohmann::json::parse(in);
  EXPECT_EQ(manifest["chain_depth"], 3);
  EXPECT_EQ(manifest["seed"], 42);
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace zkx509
