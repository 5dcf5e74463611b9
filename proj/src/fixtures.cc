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

#include <fstream>

#include "json.hpp"
#include "zkx509/der.h"

namespace zkx509::fixtures {

namespace {

constexpr int64_t kUserNotBefore = 1700000000;
constexpr int64_t kUserNotAfter = 1731536000;

Bytes name_value(std::string_view oid_dotted, std::string_view value) {
  Bytes v = oid_dotted == oid::kCountry ? der::printable_string(value)
                                        : der::utf8_string(value);
  return der::set({der::sequence({der::oid(oid_dotted), v})});
}

Bytes algorithm_identifier(const std::string& sig_oid) {
  // RSA signature algorithms carry explicit NULL parameters; ECDSA omits them.
  if (sig_oid.rfind("1.2.840.113549.", 0) == 0) {
    return der::sequence({der::oid(sig_oid), der::null_value()});
  }
  return der::sequence({der::oid(sig_oid)});
}

Bytes key_seed(uint64_t seed, const std::string& tier) {
  Bytes out;
  append_be(out, seed, 8);
  append(out, to_bytes(tier));
  return out;
}

Bytes sign_tbs(const Bytes& tbs, const Bytes& alg_id, Digest digest,
               const SignerKey& key) {
  Bytes sig = sign_deterministic(key, tbs, digest);
  return der::sequence({tbs, alg_id, der::bit_string(sig)});
}

Bytes concat(const std::vector<Bytes>& parts) {
  Bytes out;
  for (const Bytes& p : parts) append(out, p);
  return out;
}

void check_window(int64_t from, int64_t to, const std::string& what) {
  if (to < from) throw FixtureError(what + ": end precedes start");
}

// Outer structure of a signed certificate or CRL, split for rewriting.
struct SignedObject {
  std::vector<Bytes> tbs_fields;
  Bytes alg_id;
  std::string sig_oid;
  bool is_certificate = false;
  size_t offset = 0;  // index of the field after the optional version
};

SignedObject split(ByteView input) {
  try {
    der::Parser outer = der::Parser(input).read_constructed();
    SignedObject obj;
    der::Parser tbs = outer.read_constructed();
    der::Element alg = outer.read(der::tag::kSequence);
    obj.alg_id.assign(alg.encoded.begin(), alg.encoded.end());
    obj.sig_oid = der::decode_oid(der::Parser(alg.value).read(der::tag::kOid));
    while (!tbs.empty()) {
      der::Element e = tbs.read();
      obj.tbs_fields.emplace_back(e.encoded.begin(), e.encoded.end());
    }
    const auto& f = obj.tbs_fields;
    if (f.size() < 4) throw StrategyInapplicable("unrecognised signed object");
    uint8_t first = f[0][0];
    if (first == der::tag::context(0, true)) {
      obj.is_certificate = true;
      obj.offset = 1;
    } else if (first == der::tag::kInteger) {
      obj.is_certificate = f[3][0] == der::tag::kSequence;
      obj.offset = obj.is_certificate ? 0 : 1;
    } else {
      obj.offset = 0;
    }
    return obj;
  } catch (const der::DerError& e) {
    throw StrategyInapplicable(std::string("input is not DER: ") + e.what());
  }
}

Bytes resign(const SignedObject& obj, const SignerKey& key) {
  auto digest = signature_digest(obj.sig_oid);
  if (!digest) throw StrategyInapplicable("unknown signature OID " + obj.sig_oid);
  Bytes tbs = der::tlv(der::tag::kSequence, concat(obj.tbs_fields));
  return sign_tbs(tbs, obj.alg_id, *digest, key);
}

// Distinct from the original: the CN gets a suffix, or a CN is appended.
Bytes swapped_name(ByteView name_der) {
  der::Parser rdns = der::Parser(name_der).read_constructed();
  std::vector<std::pair<std::string, std::string>> attrs;
  while (!rdns.empty()) {
    der::Parser set = rdns.read_constructed(der::tag::kSet);
    while (!set.empty()) {
      der::Parser atv = set.read_constructed();
      std::string o = der::decode_oid(atv.read(der::tag::kOid));
      der::Element v = atv.read();
      attrs.emplace_back(o, std::string(v.value.begin(), v.value.end()));
    }
  }
  bool changed = false;
  for (auto& [o, v] : attrs) {
    if (o == oid::kCommonName && !changed) {
      v += " (swapped)";
      changed = true;
    }
  }
  if (!changed) attrs.emplace_back(oid::kCommonName, "swapped issuer");
  std::vector<Bytes> parts;
  for (const auto& [o, v] : attrs) parts.push_back(name_value(o, v));
  return der::sequence(parts);
}

nlohmann::json dn_json(const DnSpec& dn) {
  static const char* kNames[] = {"C", "O", "OU", "CN"};
  nlohmann::json out = nlohmann::json::array();
  for (const auto& [field, value] : dn) {
    out.push_back({kNames[static_cast<int>(field)], value});
  }
  return out;
}

nlohmann::json tier_json(const TierSpec& t) {
  return {{"key_kind", to_string(t.key_kind)},
          {"digest", to_string(t.digest)},
          {"not_before", t.not_before},
          {"not_after", t.not_after},
          {"subject", dn_json(t.subject)}};
}

void write_file(const std::filesystem::path& p, ByteView data) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  out.write(reinterpret_cast<const char*>(data.data()),
            static_cast<std::streamsize>(data.size()));
  if (!out) throw std::runtime_error("cannot write " + p.string());
}

}  // namespace

Bytes encode_name(const DnSpec& dn) {
  std::vector<Bytes> rdns;
  for (const auto& [field, value] : dn) {
    rdns.push_back(name_value(dn_field_oid(field), value));
  }
  return der::sequence(rdns);
}

PkiSpec default_spec(uint64_t seed, int chain_depth, KeyKind kind) {
  PkiSpec spec;
  spec.seed = seed;
  spec.chain_depth = chain_depth;
  spec.root = {kind, Digest::kSha256, 1600000000, 1900000000,
               {{DnField::kCountry, "KR"},
                {DnField::kOrganization, "zkx509 Test Root"},
                {DnField::kCommonName, "zkx509 Root CA"}}};
  for (int i = 0; i < std::max(0, chain_depth - 2); ++i) {
    std::string n = std::to_string(i);
    spec.intermediates.push_back(
        {kind, Digest::kSha256, 1650000000, 1850000000,
         {{DnField::kCountry, "KR"},
          {DnField::kOrganization, "zkx509 Test CA"},
          {DnField::kOrgUnit, "Intermediate " + n},
          {DnField::kCommonName, "zkx509 Intermediate CA " + n}}});
  }
  spec.user = {kind, Digest::kSha256, kUserNotBefore, kUserNotAfter,
               {{DnField::kCountry, "KR"},
                {DnField::kOrganization, "zkx509 Test Bank"},
                {DnField::kOrgUnit, "Personal"},
                {DnField::kCommonName, "Test User"}}};
  spec.crl_this_update = kUserNotBefore;
  spec.crl_next_update = kUserNotAfter;
  return spec;
}

void validate(const PkiSpec& spec) {
  if (spec.chain_depth < 1 || spec.chain_depth > 3) {
    throw FixtureError("chain_depth must be 1..3");
  }
  if (spec.intermediates.size() !=
      static_cast<size_t>(std::max(0, spec.chain_depth - 2))) {
    throw FixtureError("intermediates must number max(0, chain_depth - 2)");
  }
  check_window(spec.root.not_before, spec.root.not_after, "root validity");
  for (const TierSpec& t : spec.intermediates) {
    check_window(t.not_before, t.not_after, "intermediate validity");
  }
  check_window(spec.user.not_before, spec.user.not_after, "user validity");
  check_window(spec.crl_this_update, spec.crl_next_update, "CRL window");
  auto check_pair = [](KeyKind signer, Digest d) {
    try {
      signature_oid(signer, d);
    } catch (const SigCryptoError& e) {
      throw FixtureError(e.what());
    }
  };
  // Each tier's digest is used by that tier's issuer.
  check_pair(spec.root.key_kind, spec.root.digest);
  KeyKind issuer = spec.root.key_kind;
  for (auto it = spec.intermediates.rbegin(); it != spec.intermediates.rend();
       ++it) {
    check_pair(issuer, it->digest);
    issuer = it->key_kind;
  }
  check_pair(issuer, spec.user.digest);
  check_pair(issuer, spec.crl_digest);
}

const SignerKey& Pki::user_issuer_key() const {
  return intermediate_keys.empty() ? root_key : intermediate_keys.front();
}

const DnSpec& Pki::user_issuer_dn() const {
  return spec.intermediates.empty() ? spec.root.subject
                                    : spec.intermediates.front().subject;
}

std::vector<Bytes> Pki::witness_chain() const {
  std::vector<Bytes> chain = intermediate_ders;
  chain.push_back(root_spki);
  return chain;
}

Hash32 Pki::ca_leaf() const { return sha256(root_spki); }

Bytes issue_certificate(const CertificateParams& p,
                        const SignerKey& issuer_key) {
  check_window(p.not_before, p.not_after, "certificate validity");
  std::string sig_oid =
      p.signature_oid ? *p.signature_oid : signature_oid(issuer_key.kind(), p.digest);
  Bytes alg_id = algorithm_identifier(sig_oid);
  Bytes tbs = der::sequence({
      der::explicit_context(0, der::integer(uint64_t{2})),
      der::integer(p.serial),
      alg_id,
      encode_name(p.issuer),
      der::sequence({der::time(p.not_before), der::time(p.not_after)}),
      encode_name(p.subject),
      p.subject_spki,
  });
  return sign_tbs(tbs, alg_id, p.digest, issuer_key);
}

Bytes build_crl(const SignerKey& issuer_key, const DnSpec& issuer_dn,
                const std::vector<uint64_t>& revoked, int64_t this_update,
                int64_t next_update, Digest digest) {
  check_window(this_update, next_update, "CRL window");
  Bytes alg_id = algorithm_identifier(signature_oid(issuer_key.kind(), digest));
  std::vector<Bytes> fields = {der::integer(uint64_t{1}), alg_id,
                               encode_name(issuer_dn), der::time(this_update),
                               der::time(next_update)};
  if (!revoked.empty()) {
    std::vector<Bytes> entries;
    for (uint64_t serial : revoked) {
      entries.push_back(
          der::sequence({der::integer(serial), der::time(this_update)}));
    }
    fields.push_back(der::sequence(entries));
  }
  return sign_tbs(der::sequence(fields), alg_id, digest, issuer_key);
}

Pki build_pki(const PkiSpec& spec) {
  validate(spec);
  SignerKey root_key = SignerKey::derive(spec.root.key_kind,
                                         key_seed(spec.seed, "root"));
  std::vector<SignerKey> inter_keys;
  for (size_t i = 0; i < spec.intermediates.size(); ++i) {
    inter_keys.push_back(SignerKey::derive(
        spec.intermediates[i].key_kind,
        key_seed(spec.seed, "inter" + std::to_string(i))));
  }
  SignerKey user_key =
      SignerKey::derive(spec.user.key_kind, key_seed(spec.seed, "user"));

  uint64_t serial = 1;
  Bytes root_der = issue_certificate(
      {serial++, spec.root.subject, spec.root.subject, spec.root.not_before,
       spec.root.not_after, root_key.spki_der(), spec.root.digest, {}},
      root_key);

  // Intermediates are issued root-down; intermediates[last] sits under root.
  size_t n = spec.intermediates.size();
  std::vector<Bytes> inter_ders(n);
  const SignerKey* issuer_key = &root_key;
  const DnSpec* issuer_dn = &spec.root.subject;
  for (size_t j = n; j-- > 0;) {
    const TierSpec& t = spec.intermediates[j];
    inter_ders[j] = issue_certificate(
        {serial++, *issuer_dn, t.subject, t.not_before, t.not_after,
         inter_keys[j].spki_der(), t.digest, {}},
        *issuer_key);
    issuer_key = &inter_keys[j];
    issuer_dn = &t.subject;
  }
  Bytes user_der = issue_certificate(
      {serial++, *issuer_dn, spec.user.subject, spec.user.not_before,
       spec.user.not_after, user_key.spki_der(), spec.user.digest, {}},
      *issuer_key);
  Bytes crl_der = build_crl(*issuer_key, *issuer_dn, spec.crl_revoked_serials,
                            spec.crl_this_update, spec.crl_next_update,
                            spec.crl_digest);

  std::vector<Bytes> certs{user_der};
  certs.insert(certs.end(), inter_ders.begin(), inter_ders.end());
  certs.push_back(root_der);
  Bytes root_spki = root_key.spki_der();
  return Pki{spec,          std::move(certs),     std::move(root_der),
             root_spki,     std::move(inter_ders), std::move(user_der),
             std::move(crl_der), std::move(root_key), std::move(inter_keys),
             std::move(user_key)};
}

const char* to_string(CorruptStrategy s) {
  switch (s) {
    case CorruptStrategy::kFlipSignatureBit:
      return "flip-signature-bit";
    case CorruptStrategy::kTruncate:
      return "truncate";
    case CorruptStrategy::kExpire:
      return "expire";
    case CorruptStrategy::kSwapIssuer:
      return "swap-issuer";
  }
  return "unknown";
}

CorruptStrategy corrupt_strategy_from_string(std::string_view s) {
  for (CorruptStrategy c :
       {CorruptStrategy::kFlipSignatureBit, CorruptStrategy::kTruncate,
        CorruptStrategy::kExpire, CorruptStrategy::kSwapIssuer}) {
    if (s == to_string(c)) return c;
  }
  throw FixtureError("unknown corrupt strategy: " + std::string(s));
}

Bytes corrupt(ByteView der_in, CorruptStrategy strategy,
              const SignerKey* resign_key) {
  if (der_in.empty()) throw StrategyInapplicable("empty input");
  Bytes out(der_in.begin(), der_in.end());
  switch (strategy) {
    case CorruptStrategy::kFlipSignatureBit:
      // The signature BIT STRING is the last field, so the final octet is
      // signature payload.
      split(der_in);
      out.back() ^= 0x01;
      return out;
    case CorruptStrategy::kTruncate:
      out.pop_back();
      return out;
    case CorruptStrategy::kExpire:
    case CorruptStrategy::kSwapIssuer:
      break;
  }
  if (resign_key == nullptr) {
    throw StrategyInapplicable(std::string(to_string(strategy)) +
                               " needs the issuer key to re-sign");
  }
  SignedObject obj = split(der_in);
  size_t off = obj.offset;
  if (strategy == CorruptStrategy::kSwapIssuer) {
    size_t issuer = obj.is_certificate ? off + 2 : off + 1;
    obj.tbs_fields[issuer] = swapped_name(obj.tbs_fields[issuer]);
    return resign(obj, *resign_key);
  }
  if (obj.is_certificate) {
    Bytes& validity = obj.tbs_fields[off + 3];
    der::Parser v = der::Parser(validity).read_constructed();
    der::Element nb = v.read();
    Bytes nb_bytes(nb.encoded.begin(), nb.encoded.end());
    validity = der::sequence({nb_bytes, der::time(der::decode_time(nb))});
  } else {
    size_t this_idx = off + 2;
    size_t next_idx = off + 3;
    if (next_idx >= obj.tbs_fields.size() ||
        (obj.tbs_fields[next_idx][0] != der::tag::kUtcTime &&
         obj.tbs_fields[next_idx][0] != der::tag::kGeneralizedTime)) {
      throw StrategyInapplicable("CRL has no nextUpdate to expire");
    }
    obj.tbs_fields[next_idx] = der::time(
        der::decode_time(der::read_single(obj.tbs_fields[this_idx])));
  }
  return resign(obj, *resign_key);
}

void write_directory(const Pki& pki, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  write_file(dir / "root.der", pki.root_der);
  for (size_t i = 0; i < pki.intermediate_ders.size(); ++i) {
    write_file(dir / ("inter" + std::to_string(i) + ".der"),
               pki.intermediate_ders[i]);
  }
  write_file(dir / "user.der", pki.user_der);
  write_file(dir / "user.key", pki.user_key.private_der());
  write_file(dir / "crl.der", pki.crl_der);

  const PkiSpec& s = pki.spec;
  nlohmann::json inters = nlohmann::json::array();
  for (const TierSpec& t : s.intermediates) inters.push_back(tier_json(t));
  nlohmann::json manifest = {
      {"seed", s.seed},
      {"chain_depth", s.chain_depth},
      {"root", tier_json(s.root)},
      {"intermediates", inters},
      {"user", tier_json(s.user)},
      {"crl",
       {{"revoked_serials", s.crl_revoked_serials},
        {"this_update", s.crl_this_update},
        {"next_update", s.crl_next_update},
        {"digest", to_string(s.crl_digest)}}},
      {"ca_leaf", to_hex0x(pki.ca_leaf())},
  };
  std::ofstream out(dir / "manifest.json", std::ios::trunc);
  out << manifest.dump(2) << "\n";
  if (!out) throw std::runtime_error("cannot write manifest.json");
}

}  // namespace zkx509::fixtures
