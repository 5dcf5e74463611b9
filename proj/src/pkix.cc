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

#include <openssl/evp.h>

#include <algorithm>
#include <memory>
#include <set>
#include <string_view>

#include "zkx509/der.h"

namespace zkx509 {

namespace {

[[noreturn]] void malformed(const std::string& what) {
  throw PkixError(PkixErrc::kMalformedDer, what);
}

struct AlgorithmIdentifier {
  std::string oid;
  std::optional<der::Element> params;
};

AlgorithmIdentifier read_algorithm(der::Parser& p) {
  der::Parser seq = p.read_constructed();
  AlgorithmIdentifier alg;
  alg.oid = der::decode_oid(seq.read(der::tag::kOid));
  if (!seq.empty()) alg.params = seq.read();
  seq.expect_end();
  return alg;
}

DistinguishedName read_name(const der::Element& name) {
  if (name.tag != der::tag::kSequence) malformed("Name is not a SEQUENCE");
  DistinguishedName dn;
  der::Parser rdns(name.value);
  while (!rdns.empty()) {
    der::Parser rdn = rdns.read_constructed(der::tag::kSet);
    if (rdn.empty()) malformed("empty RelativeDistinguishedName");
    while (!rdn.empty()) {
      der::Parser atv = rdn.read_constructed();
      DnAttribute attr;
      attr.oid = der::decode_oid(atv.read(der::tag::kOid));
      der::Element value = atv.read();
      atv.expect_end();
      switch (value.tag) {
        case der::tag::kPrintableString:
        case der::tag::kUtf8String:
        case der::tag::kIa5String:
          attr.value.assign(value.value.begin(), value.value.end());
          break;
        default:
          throw PkixError(PkixErrc::kUnsupportedFeature,
                          "name attribute " + attr.oid +
                              " uses an unsupported string type");
      }
      dn.push_back(std::move(attr));
    }
  }
  return dn;
}

Bytes copy(ByteView v) { return Bytes(v.begin(), v.end()); }

SubjectPublicKeyInfo read_spki(const der::Element& e) {
  if (e.tag != der::tag::kSequence) malformed("SPKI is not a SEQUENCE");
  SubjectPublicKeyInfo spki;
  spki.der = copy(e.encoded);
  der::Parser p(e.value);
  AlgorithmIdentifier alg = read_algorithm(p);
  spki.alg_oid = alg.oid;
  spki.key_bytes = copy(der::bit_string_payload(p.read(der::tag::kBitString)));
  p.expect_end();
  if (spki.is_ec()) {
    if (!alg.params || alg.params->tag != der::tag::kOid) {
      throw PkixError(PkixErrc::kUnsupportedFeature,
                      "EC key without a namedCurve parameter");
    }
    spki.named_curve = der::decode_oid(*alg.params);
  }
  return spki;
}

int64_t read_time(der::Parser& p) { return der::decode_time(p.read()); }

bool is_time_tag(std::optional<uint8_t> t) {
  return t == der::tag::kUtcTime || t == der::tag::kGeneralizedTime;
}

struct SignedEnvelope {
  der::Element tbs;
  AlgorithmIdentifier outer_alg;
  Bytes signature;
};

SignedEnvelope read_envelope(ByteView der_bytes) {
  der::Element top = der::read_single(der_bytes);
  if (top.tag != der::tag::kSequence) malformed("top level is not a SEQUENCE");
  der::Parser p(top.value);
  SignedEnvelope env;
  env.tbs = p.read(der::tag::kSequence);
  env.outer_alg = read_algorithm(p);
  env.signature = copy(der::bit_string_payload(p.read(der::tag::kBitString)));
  p.expect_end();
  return env;
}

ParsedCertificate parse_certificate_der(ByteView input) {
  SignedEnvelope env = read_envelope(input);
  ParsedCertificate cert;
  cert.tbs_bytes = copy(env.tbs.encoded);
  cert.sig_alg_oid = env.outer_alg.oid;
  cert.signature = std::move(env.signature);

  der::Parser tbs(env.tbs.value);
  if (auto version = tbs.read_optional(der::tag::context(0, true))) {
    der::Parser v(version->value);
    uint64_t n = der::read_uint64(v.read(der::tag::kInteger));
    v.expect_end();
    if (n > 2) malformed("unknown certificate version");
  }
  cert.serial = normalize_serial(
      der::integer_contents(tbs.read(der::tag::kInteger)));
  AlgorithmIdentifier inner_alg = read_algorithm(tbs);
  if (inner_alg.oid != cert.sig_alg_oid) {
    malformed("TBSCertificate.signature differs from signatureAlgorithm");
  }
  der::Element issuer = tbs.read(der::tag::kSequence);
  cert.issuer_der = copy(issuer.encoded);
  cert.issuer_dn = read_name(issuer);

  der::Parser validity = tbs.read_constructed();
  cert.not_before = read_time(validity);
  cert.not_after = read_time(validity);
  validity.expect_end();
  if (cert.not_before > cert.not_after) malformed("notBefore after notAfter");

  der::Element subject = tbs.read(der::tag::kSequence);
  cert.subject_der = copy(subject.encoded);
  cert.subject_dn = read_name(subject);

  SubjectPublicKeyInfo spki = read_spki(tbs.read(der::tag::kSequence));
  cert.spki_alg_oid = std::move(spki.alg_oid);
  cert.spki_named_curve = std::move(spki.named_curve);
  cert.spki_key_bytes = std::move(spki.key_bytes);
  cert.spki_der = std::move(spki.der);

  tbs.read_optional(der::tag::context(1, false));  // issuerUniqueID
  tbs.read_optional(der::tag::context(2, false));  // subjectUniqueID
  if (auto ext = tbs.read_optional(der::tag::context(3, true))) {
    // Structure is validated; contents are kept verbatim.
    der::Parser exts = der::Parser(ext->value).read_constructed();
    while (!exts.empty()) exts.read(der::tag::kSequence);
    cert.extensions_der = copy(ext->value);
  }
  tbs.expect_end();
  return cert;
}

ParsedCrl parse_crl_der(ByteView input) {
  SignedEnvelope env = read_envelope(input);
  ParsedCrl crl;
  crl.tbs_bytes = copy(env.tbs.encoded);
  crl.sig_alg_oid = env.outer_alg.oid;
  crl.signature = std::move(env.signature);

  der::Parser tbs(env.tbs.value);
  if (auto version = tbs.read_optional(der::tag::kInteger)) {
    if (der::read_uint64(*version) != 1) malformed("unknown CRL version");
  }
  AlgorithmIdentifier inner_alg = read_algorithm(tbs);
  if (inner_alg.oid != crl.sig_alg_oid) {
    malformed("TBSCertList.signature differs from signatureAlgorithm");
  }
  der::Element issuer = tbs.read(der::tag::kSequence);
  crl.issuer_der = copy(issuer.encoded);
  crl.issuer_dn = read_name(issuer);
  crl.this_update = read_time(tbs);
  if (!is_time_tag(tbs.peek_tag())) {
    throw PkixError(PkixErrc::kMissingNextUpdate, "CRL has no nextUpdate");
  }
  crl.next_update = read_time(tbs);
  if (crl.this_update > crl.next_update) {
    malformed("thisUpdate after nextUpdate");
  }

  if (tbs.peek_tag() == der::tag::kSequence) {
    std::set<Bytes> seen;
    der::Parser entries = tbs.read_constructed();
    while (!entries.empty()) {
      der::Parser entry = entries.read_constructed();
      Bytes serial =
          normalize_serial(der::integer_contents(entry.read(der::tag::kInteger)));
      read_time(entry);
      entry.read_optional(der::tag::kSequence);  // crlEntryExtensions
      entry.expect_end();
      if (!seen.insert(serial).second) malformed("duplicate revoked serial");
      crl.revoked_serials.push_back(std::move(serial));
    }
  }
  tbs.read_optional(der::tag::context(0, true));  // crlExtensions
  tbs.expect_end();
  return crl;
}

struct DecodeCtxDeleter {
  void operator()(EVP_ENCODE_CTX* ctx) const { EVP_ENCODE_CTX_free(ctx); }
};

}  // namespace

const char* to_string(PkixErrc code) {
  switch (code) {
    case PkixErrc::kMalformedDer:
      return "MalformedDer";
    case PkixErrc::kUnsupportedFeature:
      return "UnsupportedFeature";
    case PkixErrc::kMissingNextUpdate:
      return "MissingNextUpdate";
  }
  return "Unknown";
}

const char* dn_field_oid(DnField field) {
  switch (field) {
    case DnField::kCountry:
      return oid::kCountry;
    case DnField::kOrganization:
      return oid::kOrganization;
    case DnField::kOrgUnit:
      return oid::kOrgUnit;
    case DnField::kCommonName:
      return oid::kCommonName;
  }
  return "";
}

std::optional<std::string> extract_dn_field(const DistinguishedName& dn,
                                            DnField field) {
  std::string_view want = dn_field_oid(field);
  auto it = std::find_if(dn.begin(), dn.end(),
                         [&](const DnAttribute& a) { return a.oid == want; });
  if (it == dn.end()) return std::nullopt;
  return it->value;
}

Bytes normalize_serial(ByteView contents) {
  if (contents.size() > 1 && contents[0] == 0x00) contents = contents.subspan(1);
  return copy(contents);
}

Bytes pem_to_der(ByteView input) {
  std::string_view text(reinterpret_cast<const char*>(input.data()),
                        input.size());
  if (!text.starts_with("-----")) return copy(input);
  size_t begin = text.find("-----BEGIN ");
  if (begin == std::string_view::npos) malformed("PEM without BEGIN marker");
  size_t body = text.find('\n', begin);
  size_t end = text.find("-----END ", begin);
  if (body == std::string_view::npos || end == std::string_view::npos ||
      end < body) {
    malformed("PEM without END marker");
  }
  std::string_view b64 = text.substr(body + 1, end - body - 1);

  std::unique_ptr<EVP_ENCODE_CTX, DecodeCtxDeleter> ctx(EVP_ENCODE_CTX_new());
  Bytes out(b64.size());
  int n = 0;
  int tail = 0;
  EVP_DecodeInit(ctx.get());
  if (EVP_DecodeUpdate(ctx.get(), out.data(), &n,
                       reinterpret_cast<const unsigned char*>(b64.data()),
                       static_cast<int>(b64.size())) < 0 ||
      EVP_DecodeFinal(ctx.get(), out.data() + n, &tail) < 0) {
    malformed("bad base64 in PEM body");
  }
  out.resize(static_cast<size_t>(n + tail));
  return out;
}

ParsedCertificate parse_certificate(ByteView input) {
  Bytes der_bytes = pem_to_der(input);
  try {
    return parse_certificate_der(der_bytes);
  } catch (const der::DerError& e) {
    malformed(e.what());
  }
}

ParsedCrl parse_crl(ByteView input) {
  Bytes der_bytes = pem_to_der(input);
  try {
    return parse_crl_der(der_bytes);
  } catch (const der::DerError& e) {
    malformed(e.what());
  }
}

SubjectPublicKeyInfo parse_spki(ByteView input) {
  try {
    return read_spki(der::read_single(input));
  } catch (const der::DerError& e) {
    malformed(e.what());
  }
}

bool temporal_valid(const ParsedCertificate& cert, int64_t t) {
  return cert.not_before <= t && t <= cert.not_after;
}

}  // namespace zkx509
