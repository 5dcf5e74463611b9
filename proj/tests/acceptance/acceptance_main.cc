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

// Acceptance run: one PASS/FAIL line per criterion, non-zero exit if any
// criterion fails.

#include <openssl/x509.h>

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "abi_oracle.h"
#include "corruption_matrix.h"
#include "json.hpp"
#include "merkle_mutations.h"
#include "registry_traces.h"
#include "test_support.h"
#include "zkx509/cli.h"

namespace zkx509::acceptance {
namespace {

namespace fs = std::filesystem;
using namespace zkx509::testing;
using nlohmann::json;

// Pinned tolerances and limits.
constexpr double kLifecycleSeconds = 10.0;
constexpr double kAnalyticTolerance = 0.01;
constexpr double kExpectedMaxP = 0.68;
constexpr double kExpectedBits = 0.56;
constexpr size_t kSecurityTraces = 1000;
constexpr size_t kTraceSteps = 60;
constexpr int kMerkleTrials = 200;
constexpr size_t kMaxCaLeaves = 6;
constexpr size_t kMaxCrlSerials = 8;
constexpr int kRegistryOps = 1000;
constexpr int kEncodingTrials = 100;

struct Result {
  bool pass = true;
  std::string detail;
};

class Checker {
 public:
  void expect(bool cond, const std::string& what) {
    if (!cond) {
      if (result_.pass) result_.detail = what;
      result_.pass = false;
    }
  }
  void note(const std::string& s) {
    if (result_.pass) result_.detail = s;
  }
  Result result() const { return result_; }

 private:
  Result result_;
};

struct CliResult {
  int code;
  std::string out;
};

CliResult cli_run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = cli::run_cli(args, out, err);
  return {code, out.str()};
}

std::string hex_addr(uint8_t b) { return to_hex0x(fill_address(b)); }

fs::path scratch(const std::string& name) {
  fs::path p = fs::temp_directory_path() / ("zkx509_acceptance_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

template <typename Fn>
RegistryErrc registry_error(Fn&& fn) {
  try {
    fn();
  } catch (const RegistryError& e) {
    return e.code();
  }
  return static_cast<RegistryErrc>(-1);
}

// 1 ---------------------------------------------------------------------------
Result lifecycle() {
  Checker c;
  fs::path dir = scratch("lifecycle");
  std::string state = (dir / "registry.json").string();
  std::string user = hex_addr(0xaa);
  auto start = std::chrono::steady_clock::now();

  c.expect(cli_run({"gen-pki", "--depth", "3", "--alg", "rsa2048", "--digest", "sha256",
                    "--seed", "1", "--out", (dir / "pki").string()}).code == 0,
           "gen-pki failed");
  c.expect(cli_run({"registry", "--state", state, "new", "--owner", hex_addr(1),
                    "--self-address", hex_addr(0xbb), "--ca-pki", (dir / "pki").string(),
                    "--clock", "1710000000"}).code == 0,
           "registry new failed");
  c.expect(cli_run({"prove", "--pki", (dir / "pki").string(), "--registrant", user,
                    "--registry", state, "--crl-tree", "--out",
                    (dir / "bundle.json").string()}).code == 0,
           "prove failed");
  c.expect(cli_run({"registry", "--state", state, "register", "--sender", user, "--bundle",
                    (dir / "bundle.json").string()}).code == 0,
           "register failed");
  auto verified = [&] {
    CliResult r = cli_run({"--json", "registry", "--state", state, "status", "--address", user});
    return r.code == 0 && json::parse(r.out)["wallets"][0]["verified"].get<bool>();
  };
  c.expect(verified(), "not verified after register");
  c.expect(cli_run({"registry", "--state", state, "advance-clock", "--to", "1731536001"}).code == 0,
           "advance-clock failed");
  c.expect(!verified(), "still verified past not_after");

  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  c.expect(secs < kLifecycleSeconds, "runtime " + std::to_string(secs) + " s");
  std::ostringstream d;
  d.precision(2);
  d << std::fixed << "RSA-2048/SHA-256 depth 3, verified then lapsed, " << secs << " s";
  c.note(d.str());
  fs::remove_all(dir);
  return c.result();
}

// 2 ---------------------------------------------------------------------------
Result check_independence() {
  Checker c;
  auto cases = corruption_matrix();
  size_t passed = 0;
  for (KeyKind kind : {KeyKind::kRsa, KeyKind::kP256, KeyKind::kP384}) {
    const auto& pki = cached_pki(kind, 3);
    for (const auto& cs : cases) {
      CaseOutcome out = run_corruption_case(cs, pki);
      c.expect(out.ok, cs.name + " (" + to_string(kind) + "): " + out.detail);
      passed += out.ok;
    }
  }
  c.expect(cases.size() == 12, "matrix does not have 12 cases");
  c.note(std::to_string(cases.size()) + " fixtures x 3 key kinds, " + std::to_string(passed) +
         " fail exactly their target");
  return c.result();
}

// 3 ---------------------------------------------------------------------------
struct Bundle {
  Bytes pv;
  Hash32 token{};
  Hash32 nullifier{};
};

Bundle bundle_for(const fixtures::Pki& pki, const ProveRequest& r) {
  ProofBundle b = prove(happy_witness(pki, r));
  return {b.encoded_public_values(), b.token(), b.public_values().nullifier};
}

Result security_games() {
  Checker c;
  const auto& pki = cached_pki(KeyKind::kP256, 3);
  Address alice = kRegistrant, bob = fill_address(0xb0);
  ProveRequest ra = standard_request(pki);
  ra.max_wallets = 1;
  ProveRequest rb = ra;
  rb.registrant = bob;
  Bundle pa = bundle_for(pki, ra), pb = bundle_for(pki, rb);

  // (a)
  RegistryState s = matching_registry(pki, 1);
  register_identity(s, alice, kProofTime, pa.pv, pa.token);
  c.expect(registry_error([&] { register_identity(s, bob, kProofTime, pb.pv, pb.token); }) ==
               RegistryErrc::kNullifierTaken,
           "(a) double registration not rejected with NullifierTaken");

  // (b)
  RegistryState fresh = matching_registry(pki, 1);
  c.expect(registry_error([&] { register_identity(fresh, bob, kProofTime, pa.pv, pa.token); }) ==
               RegistryErrc::kRegistrantMismatch,
           "(b) front-run replay not rejected with RegistrantMismatch");

  // (c) change the last byte of each word: padding stays canonical.
  size_t rejected = 0;
  for (size_t w = 0; w < kPublicValuesWords; ++w) {
    Bytes m = pa.pv;
    m[w * 32 + 31] ^= 0x01;
    bool accepted = verify_attestation(statement_vkey_id(), m, pa.token);
    bool registered = registry_error([&] {
      RegistryState t = matching_registry(pki, 1);
      register_identity(t, alice, kProofTime, m, pa.token);
    }) == static_cast<RegistryErrc>(-1);
    c.expect(!accepted && !registered, "(c) word " + std::to_string(w) + " mutation accepted");
    rejected += !accepted && !registered;
  }

  // (d)
  RegistryConfig cfg;
  cfg.owner = kOwner;
  cfg.max_wallets_per_cert = 1;
  cfg.self_address = kRegistryAddress;
  cfg.chain_id = 137;
  RegistryState other_chain = make_registry(cfg);
  add_cas(other_chain, kOwner, kProofTime, ca_list_with(pki.ca_leaf()));
  c.expect(registry_error([&] { register_identity(other_chain, alice, kProofTime, pa.pv, pa.token); }) ==
               RegistryErrc::kChainIdMismatch,
           "(d) cross-chain replay not rejected with ChainIdMismatch");
  cfg.chain_id = kChainId;
  cfg.self_address = fill_address(0xbc);
  RegistryState other_registry = make_registry(cfg);
  add_cas(other_registry, kOwner, kProofTime, ca_list_with(pki.ca_leaf()));
  c.expect(registry_error([&] { register_identity(other_registry, alice, kProofTime, pa.pv, pa.token); }) ==
               RegistryErrc::kRegistryAddressMismatch,
           "(d) cross-registry replay not rejected with RegistryAddressMismatch");

  // (e)
  ProveRequest re = ra;
  re.registry_address = fill_address(0xbc);
  c.expect(bundle_for(pki, re).nullifier != pa.nullifier, "(e) nullifiers coincide across registries");

  // (f)
  TraceWorld world = build_trace_world();
  TraceStats stats;
  for (uint64_t seed = 0; seed < kSecurityTraces; ++seed) run_trace(world, seed, kTraceSteps, stats);
  c.expect(stats.violations.empty(),
           "(f) " + (stats.violations.empty() ? std::string() : stats.violations.front()));
  c.expect(stats.revoked_attempts > 0, "(f) traces never retried a revoked nullifier");
  c.note("a-e hold, " + std::to_string(rejected) + "/13 word mutations rejected, " +
         std::to_string(kSecurityTraces) + " traces: " + std::to_string(stats.registrations) +
         " registrations, " + std::to_string(stats.revoked_attempts) +
         " revoked retries all rejected");
  return c.result();
}

// 4 ---------------------------------------------------------------------------
Result merkle_equivalence() {
  Checker c;
  std::mt19937_64 rng(0x4d45524b);
  size_t ca_checks = 0, crl_checks = 0;
  for (int trial = 0; trial < kMerkleTrials; ++trial) {
    size_t n = 1 + static_cast<size_t>(trial) % kMaxCaLeaves;
    std::vector<Hash32> leaves;
    for (size_t i = 0; i < n; ++i) leaves.push_back(random_hash(rng));
    Hash32 root = ca_root(leaves);
    std::vector<std::vector<Hash32>> paths;
    for (const Hash32& l : leaves) paths.push_back(ca_prove(leaves, l));
    for (size_t i = 0; i < n; ++i) {
      c.expect(ca_verify(leaves[i], paths[i], root), "CA round trip failed");
      for (size_t j = 0; j < n; ++j) {
        if (i == j) continue;
        c.expect(!ca_verify(leaves[i], paths[j], root), "CA path substitution accepted");
        ++ca_checks;
      }
    }
  }
  for (int trial = 0; trial < kMerkleTrials; ++trial) {
    size_t n = static_cast<size_t>(trial) % (kMaxCrlSerials + 1);
    std::vector<Bytes> serials;
    // Serials drawn from 0..15 so that present and absent targets both occur.
    for (size_t i = 0; i < n; ++i) serials.push_back(Bytes{static_cast<uint8_t>(rng() % 16)});
    CrlSortedTree tree = CrlSortedTree::build(serials);
    for (int t = 0; t < 16; ++t) {
      Bytes target_serial{static_cast<uint8_t>(t)};
      bool absent = std::find(serials.begin(), serials.end(), target_serial) == serials.end();
      Hash32 target = crl_leaf(target_serial);
      bool produced = false;
      try {
        NonMembershipProof p = crl_prove_absent(tree, target);
        produced = true;
        c.expect(crl_verify_absent(target, p, tree.root()), "honest non-membership rejected");
        for (const auto& m : single_field_mutations(p)) {
          c.expect(!crl_verify_absent(target, m, tree.root()), "mutated proof accepted");
          ++crl_checks;
        }
      } catch (const MerkleError&) {
      }
      c.expect(produced == absent, "proof existence differs from absence");
    }
  }
  c.note(std::to_string(kMerkleTrials) + " CA trees (<= 6 leaves, " + std::to_string(ca_checks) +
         " substitutions), " + std::to_string(kMerkleTrials) + " CRL trees (<= 8 serials, " +
         std::to_string(crl_checks) + " mutations)");
  return c.result();
}

// 5 ---------------------------------------------------------------------------
Result registry_roots() {
  Checker c;
  std::mt19937_64 rng(0x524f4f54);
  RegistryState s = make_registry(RegistryConfig{.owner = kOwner});
  for (int i = 0; i < kRegistryOps; ++i) {
    if (s.ca_leaves.empty() || rng() % 3 != 0) {
      add_ca(s, kOwner, static_cast<uint64_t>(i), random_hash(rng));
    } else {
      remove_ca(s, kOwner, static_cast<uint64_t>(i), rng() % s.ca_leaves.size());
    }
    c.expect(s.ca_merkle_root == ca_root(s.ca_leaves), "root drift at op " + std::to_string(i));
  }

  const auto& pki = cached_pki(KeyKind::kP256, 2);
  RegistryState g = matching_registry(pki);
  set_max_proof_age(g, kOwner, kProofTime, kMaxProofAge);
  uint64_t t1 = kProofTime + 500;
  add_ca(g, kOwner, t1, fill_hash(0x5a));
  uint64_t grace = g.ca_root_grace_period;
  ProveRequest r = standard_request(pki);
  r.timestamp = t1 + grace - 60;
  Bundle old_root = bundle_for(pki, r);
  bool at_grace = registry_error([&] {
    validate_proof(g, kRegistrant, t1 + grace, old_root.pv, old_root.token);
  }) == static_cast<RegistryErrc>(-1);
  bool past_grace = registry_error([&] {
    validate_proof(g, kRegistrant, t1 + grace + 1, old_root.pv, old_root.token);
  }) == RegistryErrc::kCaRootMismatch;
  c.expect(at_grace, "previous root rejected at now - updated_at = grace");
  c.expect(past_grace, "previous root accepted at grace + 1");
  c.note(std::to_string(kRegistryOps) + " add/remove ops consistent, " +
         std::to_string(s.ca_leaves.size()) + " leaves at end; grace " + std::to_string(grace) +
         " s accepted, grace + 1 rejected");
  return c.result();
}

// 6 ---------------------------------------------------------------------------
Result encoding() {
  Checker c;
  std::mt19937_64 rng(0x454e43);
  for (int i = 0; i < kEncodingTrials; ++i) {
    PublicValues pv;
    pv.nullifier = random_hash(rng);
    pv.ca_merkle_root = random_hash(rng);
    pv.timestamp = rng();
    pv.registrant = random_address(rng);
    pv.wallet_index = static_cast<uint32_t>(rng());
    pv.not_after = rng();
    pv.chain_id = rng();
    pv.registry_address = random_address(rng);
    pv.crl_merkle_root = random_hash(rng);
    pv.country_hash = random_hash(rng);
    pv.org_hash = random_hash(rng);
    pv.org_unit_hash = random_hash(rng);
    pv.common_name_hash = random_hash(rng);
    Bytes enc = encode_public_values(pv);
    c.expect(enc.size() == 416, "length " + std::to_string(enc.size()));
    c.expect(decode_public_values(enc) == pv, "round trip differs");
    c.expect(enc == abi::encode_public_values_oracle(pv), "differs from oracle encoder");
  }
  // The oracle encoder itself against a third-party ABI library's output.
  PublicValues fixed;
  auto word = [](int i) { return fill_hash(static_cast<uint8_t>(i + 1)); };
  fixed.nullifier = word(0);
  fixed.ca_merkle_root = word(1);
  fixed.timestamp = 1710000000;
  fixed.registrant = fill_address(0x11);
  fixed.wallet_index = 7;
  fixed.not_after = 1731536000;
  fixed.chain_id = 137;
  fixed.registry_address = fill_address(0xde);
  fixed.registry_address[19] = 0xad;
  fixed.crl_merkle_root = word(8);
  fixed.country_hash = word(9);
  fixed.org_hash = word(10);
  fixed.org_unit_hash = word(11);
  fixed.common_name_hash = word(12);
  Bytes reference = oracle_bytes(oracles()["abi"]["encoded"]);
  c.expect(abi::encode_public_values_oracle(fixed) == reference, "oracle encoder disagrees with eth_abi");
  c.expect(encode_public_values(fixed) == reference, "encoder disagrees with eth_abi");
  c.note(std::to_string(kEncodingTrials) + " random structs: 416 bytes, round trip, oracle identical");
  return c.result();
}

// 7 ---------------------------------------------------------------------------
Result analytic() {
  Checker c;
  CliResult r = cli_run({"--json", "min-entropy", "20", "1.3", "46"});
  c.expect(r.code == 0, "min-entropy command failed");
  if (r.code != 0) return c.result();
  json doc = json::parse(r.out);
  double max_p = doc["max_probability"].get<double>();
  double bits = doc["min_entropy_bits"].get<double>();
  std::ostringstream d;
  d.precision(6);
  d << std::fixed << "max p = " << max_p << " (want " << kExpectedMaxP << " +/- "
    << kAnalyticTolerance << "), H = " << bits << " bits (want " << kExpectedBits
    << " +/- " << kAnalyticTolerance << ")";
  c.expect(std::fabs(max_p - kExpectedMaxP) <= kAnalyticTolerance, d.str());
  c.expect(std::fabs(bits - kExpectedBits) <= kAnalyticTolerance, d.str());
  c.note(d.str());
  return c.result();
}

// 8 ---------------------------------------------------------------------------
bool openssl_verifies(const Bytes& cert_der, const Bytes& issuer_spki) {
  const unsigned char* p = cert_der.data();
  X509* x = d2i_X509(nullptr, &p, static_cast<long>(cert_der.size()));
  const unsigned char* k = issuer_spki.data();
  EVP_PKEY* key = d2i_PUBKEY(nullptr, &k, static_cast<long>(issuer_spki.size()));
  bool ok = x && key && X509_verify(x, key) == 1;
  X509_free(x);
  EVP_PKEY_free(key);
  return ok;
}

Result algorithm_coverage() {
  Checker c;
  struct Case {
    const char* label;
    KeyKind issuer;
    Digest digest;
    std::string oid;
  };
  const std::vector<Case> cases = {
      {"sha1WithRSAEncryption", KeyKind::kRsa, Digest::kSha1, oid::kSha1WithRsa},
      {"sha256WithRSAEncryption", KeyKind::kRsa, Digest::kSha256, oid::kSha256WithRsa},
      {"sha384WithRSAEncryption", KeyKind::kRsa, Digest::kSha384, oid::kSha384WithRsa},
      {"sha512WithRSAEncryption", KeyKind::kRsa, Digest::kSha512, oid::kSha512WithRsa},
      {"ecdsa-with-SHA256 (P-256)", KeyKind::kP256, Digest::kSha256, oid::kEcdsaWithSha256},
      {"ecdsa-with-SHA384 (P-384)", KeyKind::kP384, Digest::kSha384, oid::kEcdsaWithSha384},
      {"ecdsa-with-SHA256 (P-384, mixed)", KeyKind::kP384, Digest::kSha256, oid::kEcdsaWithSha256},
  };
  std::set<std::string> oids;
  for (const Case& k : cases) {
    fixtures::PkiSpec spec = fixtures::default_spec(88, 2, k.issuer);
    spec.user.key_kind = KeyKind::kP256;
    spec.user.digest = k.digest;
    spec.crl_digest = k.digest;
    fixtures::Pki pki = fixtures::build_pki(spec);
    ParsedCertificate user = parse_certificate(pki.user_der);
    c.expect(user.sig_alg_oid == k.oid, std::string(k.label) + ": wrong OID " + user.sig_alg_oid);
    ParsedCertificate root = parse_certificate(pki.root_der);
    c.expect(verify_cert_signature(pki.root_spki, user.tbs_bytes, user.signature,
                                   user.sig_alg_oid, root.spki_named_curve),
             std::string(k.label) + ": rejected by sigcrypto");
    c.expect(openssl_verifies(pki.user_der, pki.root_spki),
             std::string(k.label) + ": rejected by OpenSSL X509_verify");
    Evaluation ev = evaluate_statement(happy_witness(pki));
    c.expect(ev.ok(), std::string(k.label) + ": statement failed " +
                          (ev.failure ? ev.failure->describe() : ""));
    oids.insert(k.oid);
  }
  c.expect(oids.size() == 6, "expected six distinct OIDs");
  c.note(std::to_string(oids.size()) + " OIDs incl. SHA-1 and P-384 under ecdsa-with-SHA256, "
         "sigcrypto and OpenSSL agree");
  return c.result();
}

// 9 ---------------------------------------------------------------------------
struct PipelineOutput {
  std::vector<Bytes> ders;
  Hash32 nullifier{};
  Bytes encoded_pv;
  Hash32 token{};
  bool operator==(const PipelineOutput&) const = default;
};

PipelineOutput pipeline(KeyKind kind, uint64_t seed) {
  fixtures::Pki pki = fixtures::build_pki(fixtures::default_spec(seed, 3, kind));
  ProofBundle b = prove(happy_witness(pki));
  PipelineOutput out;
  out.ders = pki.certificates;
  out.ders.push_back(pki.crl_der);
  out.ders.push_back(pki.user_key.private_der());
  out.nullifier = b.public_values().nullifier;
  out.encoded_pv = b.encoded_public_values();
  out.token = b.token();
  return out;
}

std::vector<Bytes> directory_bytes(const fs::path& dir) {
  std::vector<Bytes> out;
  for (const char* f : {"root.der", "inter0.der", "user.der", "user.key", "crl.der",
                        "manifest.json"}) {
    std::ifstream in(dir / f, std::ios::binary);
    out.emplace_back(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  }
  return out;
}

Result determinism() {
  Checker c;
  for (KeyKind kind : {KeyKind::kRsa, KeyKind::kP256, KeyKind::kP384}) {
    c.expect(pipeline(kind, 2024) == pipeline(kind, 2024),
             std::string("library pipeline differs for ") + to_string(kind));
  }
  c.expect(!(pipeline(KeyKind::kP256, 2024) == pipeline(KeyKind::kP256, 2025)),
           "different seeds gave identical output");
  fs::path a = scratch("det_a"), b = scratch("det_b");
  for (const fs::path& d : {a, b}) {
    cli_run({"gen-pki", "--depth", "3", "--alg", "p384", "--seed", "77", "--out",
             (d / "pki").string()});
  }
  c.expect(directory_bytes(a / "pki") == directory_bytes(b / "pki"), "gen-pki output differs");
  fs::remove_all(a);
  fs::remove_all(b);
  c.note("3 key kinds: DERs, keys, nullifier, encoded pv and token identical; gen-pki files identical");
  return c.result();
}

}  // namespace
}  // namespace zkx509::acceptance

int main() {
  using namespace zkx509::acceptance;
  struct Criterion {
    int id;
    const char* name;
    std::function<Result()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "end-to-end lifecycle", lifecycle},
      {2, "check-independence matrix", check_independence},
      {3, "security games", security_games},
      {4, "merkle brute-force equivalence", merkle_equivalence},
      {5, "registry root consistency", registry_roots},
      {6, "encoding conformance", encoding},
      {7, "analytical reproduction", analytic},
      {8, "algorithm coverage", algorithm_coverage},
      {9, "determinism", determinism},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Result r;
    try {
      r = c.run();
    } catch (const std::exception& e) {
      r = {false, std::string("exception: ") + e.what()};
    }
    failed += !r.pass;
    std::cout << (r.pass ? "PASS" : "FAIL") << "  [" << c.id << "] " << c.name << ": "
              << r.detail << std::endl;
  }
  std::cout << (criteria.size() - static_cast<size_t>(failed)) << "/" << criteria.size()
            << " criteria passed" << std::endl;
  return failed == 0 ? 0 : 1;
}
