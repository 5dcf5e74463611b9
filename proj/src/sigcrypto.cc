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

#include "zkx509/sigcrypto.h"

#include <openssl/bn.h>
#include <openssl/core_names.h>
#include <openssl/ec.h>
#include <openssl/err.h>
#include <openssl/evp.h>
#include <openssl/hmac.h>
#include <openssl/obj_mac.h>
#include <openssl/param_build.h>
#include <openssl/pem.h>
#include <openssl/x509.h>

#include <cstring>

#include "zkx509/der.h"
#include "zkx509/pkix.h"

namespace zkx509 {

namespace {

template <typename T, void (*F)(T*)>
struct Free {
  void operator()(T* p) const { F(p); }
};

using BnPtr = std::unique_ptr<BIGNUM, Free<BIGNUM, BN_free>>;
using BnCtxPtr = std::unique_ptr<BN_CTX, Free<BN_CTX, BN_CTX_free>>;
using GroupPtr = std::unique_ptr<EC_GROUP, Free<EC_GROUP, EC_GROUP_free>>;
using PointPtr = std::unique_ptr<EC_POINT, Free<EC_POINT, EC_POINT_free>>;
using PkeyCtxPtr =
    std::unique_ptr<EVP_PKEY_CTX, Free<EVP_PKEY_CTX, EVP_PKEY_CTX_free>>;
using MdCtxPtr = std::unique_ptr<EVP_MD_CTX, Free<EVP_MD_CTX, EVP_MD_CTX_free>>;
using ParamBldPtr =
    std::unique_ptr<OSSL_PARAM_BLD, Free<OSSL_PARAM_BLD, OSSL_PARAM_BLD_free>>;
using ParamPtr = std::unique_ptr<OSSL_PARAM, Free<OSSL_PARAM, OSSL_PARAM_free>>;
using BioPtr = std::unique_ptr<BIO, Free<BIO, BIO_free_all>>;

std::shared_ptr<EVP_PKEY> share(EVP_PKEY* raw) {
  return std::shared_ptr<EVP_PKEY>(raw, EVP_PKEY_free);
}

[[noreturn]] void bad_key(const std::string& what) {
  ERR_clear_error();
  throw SigCryptoError(SigCryptoErrc::kBadKey, what);
}

[[noreturn]] void crypto_failure(const char* what) {
  ERR_clear_error();
  throw std::runtime_error(std::string("libcrypto failure: ") + what);
}

BnPtr new_bn() {
  BnPtr bn(BN_new());
  if (!bn) crypto_failure("BN_new");
  return bn;
}

BnPtr bn_from(ByteView be) {
  BnPtr bn(BN_bin2bn(be.data(), static_cast<int>(be.size()), nullptr));
  if (!bn) crypto_failure("BN_bin2bn");
  return bn;
}

Bytes bn_to_fixed(const BIGNUM* bn, size_t width) {
  Bytes out(width);
  if (BN_bn2binpad(bn, out.data(), static_cast<int>(width)) < 0) {
    crypto_failure("BN_bn2binpad");
  }
  return out;
}

Bytes bn_to_bytes(const BIGNUM* bn) {
  Bytes out(static_cast<size_t>(BN_num_bytes(bn)));
  BN_bn2bin(bn, out.data());
  return out;
}

const EVP_MD* md_for(Digest alg) {
  switch (alg) {
    case Digest::kSha1:
      return EVP_sha1();
    case Digest::kSha256:
      return EVP_sha256();
    case Digest::kSha384:
      return EVP_sha384();
    case Digest::kSha512:
      return EVP_sha512();
  }
  return EVP_sha256();
}

int curve_nid(KeyKind kind) {
  return kind == KeyKind::kP384 ? NID_secp384r1 : NID_X9_62_prime256v1;
}

const char* curve_group_name(KeyKind kind) {
  return kind == KeyKind::kP384 ? SN_secp384r1 : SN_X9_62_prime256v1;
}

std::optional<KeyKind> curve_from_oid(std::string_view curve_oid) {
  if (curve_oid == oid::kP256) return KeyKind::kP256;
  if (curve_oid == oid::kP384) return KeyKind::kP384;
  return std::nullopt;
}

std::optional<KeyKind> curve_of(EVP_PKEY* pkey) {
  char name[64] = {};
  size_t len = 0;
  if (!EVP_PKEY_get_utf8_string_param(pkey, OSSL_PKEY_PARAM_GROUP_NAME, name,
                                      sizeof(name), &len)) {
    return std::nullopt;
  }
  std::string_view n(name, len);
  if (n == SN_X9_62_prime256v1) return KeyKind::kP256;
  if (n == SN_secp384r1) return KeyKind::kP384;
  return std::nullopt;
}

struct SigAlg {
  bool ecdsa;
  Digest digest;
};

std::optional<SigAlg> lookup_sig_alg(std::string_view o) {
  if (o == oid::kSha1WithRsa) return SigAlg{false, Digest::kSha1};
  if (o == oid::kSha256WithRsa) return SigAlg{false, Digest::kSha256};
  if (o == oid::kSha384WithRsa) return SigAlg{false, Digest::kSha384};
  if (o == oid::kSha512WithRsa) return SigAlg{false, Digest::kSha512};
  if (o == oid::kEcdsaWithSha256) return SigAlg{true, Digest::kSha256};
  if (o == oid::kEcdsaWithSha384) return SigAlg{true, Digest::kSha384};
  return std::nullopt;
}

// SHA-256 in counter mode over the seed; the key-derivation byte source.
class SeedStream {
 public:
  SeedStream(ByteView seed, std::string_view label) : seed_(seed.begin(), seed.end()) {
    append(seed_, to_bytes(label));
  }

  Bytes next(size_t n) {
    Bytes out;
    while (out.size() < n) {
      Bytes block = seed_;
      append_be(block, counter_++, 4);
      Hash32 h = sha256(block);
      append(out, h);
    }
    out.resize(n);
    return out;
  }

 private:
  Bytes seed_;
  uint32_t counter_ = 0;
};

struct Curve {
  GroupPtr group;
  BnPtr order;
  size_t qlen_bits = 0;
  size_t rlen_bytes = 0;
};

Curve load_curve(KeyKind kind) {
  Curve c;
  c.group.reset(EC_GROUP_new_by_curve_name(curve_nid(kind)));
  if (!c.group) crypto_failure("EC_GROUP_new_by_curve_name");
  c.order.reset(BN_dup(EC_GROUP_get0_order(c.group.get())));
  c.qlen_bits = static_cast<size_t>(BN_num_bits(c.order.get()));
  c.rlen_bytes = (c.qlen_bits + 7) / 8;
  return c;
}

BnPtr bits2int(const Curve& c, ByteView b) {
  BnPtr v = bn_from(b);
  size_t blen = b.size() * 8;
  if (blen > c.qlen_bits) {
    BN_rshift(v.get(), v.get(), static_cast<int>(blen - c.qlen_bits));
  }
  return v;
}

Bytes bits2octets(const Curve& c, ByteView b) {
  BnPtr z = bits2int(c, b);
  if (BN_cmp(z.get(), c.order.get()) >= 0) {
    BN_sub(z.get(), z.get(), c.order.get());
  }
  return bn_to_fixed(z.get(), c.rlen_bytes);
}

// HMAC_DRBG nonce sequence of RFC 6979 section 3.2 (steps b through h).
class NonceGenerator {
 public:
  NonceGenerator(const Curve& curve, const BIGNUM* x, ByteView h1, Digest alg)
      : curve_(curve), alg_(alg) {
    size_t hlen = static_cast<size_t>(EVP_MD_get_size(md_for(alg)));
    v_.assign(hlen, 0x01);
    k_.assign(hlen, 0x00);
    Bytes xo = bn_to_fixed(x, curve.rlen_bytes);
    Bytes ho = bits2octets(curve, h1);
    for (uint8_t sep : {uint8_t{0x00}, uint8_t{0x01}}) {
      Bytes msg = v_;
      msg.push_back(sep);
      append(msg, xo);
      append(msg, ho);
      k_ = hmac(alg_, k_, msg);
      v_ = hmac(alg_, k_, v_);
    }
  }

  BnPtr next() {
    for (;;) {
      Bytes t;
      while (t.size() * 8 < curve_.qlen_bits) {
        v_ = hmac(alg_, k_, v_);
        append(t, v_);
      }
      BnPtr k = bits2int(curve_, t);
      bool ok = !BN_is_zero(k.get()) && BN_cmp(k.get(), curve_.order.get()) < 0;
      Bytes msg = v_;
      msg.push_back(0x00);
      k_ = hmac(alg_, k_, msg);
      v_ = hmac(alg_, k_, v_);
      if (ok) return k;
    }
  }

 private:
  const Curve& curve_;
  Digest alg_;
  Bytes v_;
  Bytes k_;
};

BnPtr private_scalar(EVP_PKEY* pkey) {
  BIGNUM* raw = nullptr;
  if (!EVP_PKEY_get_bn_param(pkey, OSSL_PKEY_PARAM_PRIV_KEY, &raw)) {
    bad_key("EC key without a private scalar");
  }
  return BnPtr(raw);
}

Bytes ecdsa_sign(const SignerKey& key, ByteView message, Digest alg) {
  Curve curve = load_curve(key.kind());
  BnCtxPtr ctx(BN_CTX_new());
  BnPtr x = private_scalar(key.pkey());
  Bytes h1 = digest(alg, message);
  BnPtr e = bits2int(curve, h1);
  NonceGenerator nonces(curve, x.get(), h1, alg);
  PointPtr point(EC_POINT_new(curve.group.get()));
  BnPtr r = new_bn();
  BnPtr s = new_bn();
  BnPtr tmp = new_bn();
  for (;;) {
    BnPtr k = nonces.next();
    if (!EC_POINT_mul(curve.group.get(), point.get(), k.get(), nullptr,
                      nullptr, ctx.get()) ||
        !EC_POINT_get_affine_coordinates(curve.group.get(), point.get(),
                                         r.get(), nullptr, ctx.get()) ||
        !BN_nnmod(r.get(), r.get(), curve.order.get(), ctx.get())) {
      crypto_failure("EC_POINT_mul");
    }
    if (BN_is_zero(r.get())) continue;
    // s = k^-1 (e + r x) mod n
    if (!BN_mod_mul(tmp.get(), r.get(), x.get(), curve.order.get(), ctx.get()) ||
        !BN_mod_add(tmp.get(), tmp.get(), e.get(), curve.order.get(),
                    ctx.get()) ||
        !BN_mod_inverse(k.get(), k.get(), curve.order.get(), ctx.get()) ||
        !BN_mod_mul(s.get(), k.get(), tmp.get(), curve.order.get(), ctx.get())) {
      crypto_failure("ECDSA scalar arithmetic");
    }
    if (BN_is_zero(s.get())) continue;
    break;
  }
  return der::sequence({der::integer(bn_to_bytes(r.get())),
                        der::integer(bn_to_bytes(s.get()))});
}

Bytes rsa_sign(const SignerKey& key, ByteView message, Digest alg) {
  MdCtxPtr ctx(EVP_MD_CTX_new());
  size_t len = 0;
  if (EVP_DigestSignInit(ctx.get(), nullptr, md_for(alg), nullptr,
                         key.pkey()) != 1 ||
      EVP_DigestSign(ctx.get(), nullptr, &len, message.data(),
                     message.size()) != 1) {
    crypto_failure("EVP_DigestSign");
  }
  Bytes sig(len);
  if (EVP_DigestSign(ctx.get(), sig.data(), &len, message.data(),
                     message.size()) != 1) {
    crypto_failure("EVP_DigestSign");
  }
  sig.resize(len);
  return sig;
}

std::shared_ptr<EVP_PKEY> ec_from_scalar(KeyKind kind, const BIGNUM* d) {
  Curve curve = load_curve(kind);
  BnCtxPtr ctx(BN_CTX_new());
  PointPtr pub(EC_POINT_new(curve.group.get()));
  if (!EC_POINT_mul(curve.group.get(), pub.get(), d, nullptr, nullptr,
                    ctx.get())) {
    crypto_failure("EC_POINT_mul");
  }
  Bytes pub_oct(1 + 2 * curve.rlen_bytes);
  if (EC_POINT_point2oct(curve.group.get(), pub.get(),
                         POINT_CONVERSION_UNCOMPRESSED, pub_oct.data(),
                         pub_oct.size(), ctx.get()) != pub_oct.size()) {
    crypto_failure("EC_POINT_point2oct");
  }
  ParamBldPtr bld(OSSL_PARAM_BLD_new());
  OSSL_PARAM_BLD_push_utf8_string(bld.get(), OSSL_PKEY_PARAM_GROUP_NAME,
                                  curve_group_name(kind), 0);
  OSSL_PARAM_BLD_push_BN(bld.get(), OSSL_PKEY_PARAM_PRIV_KEY, d);
  OSSL_PARAM_BLD_push_octet_string(bld.get(), OSSL_PKEY_PARAM_PUB_KEY,
                                   pub_oct.data(), pub_oct.size());
  ParamPtr params(OSSL_PARAM_BLD_to_param(bld.get()));
  PkeyCtxPtr pctx(EVP_PKEY_CTX_new_from_name(nullptr, "EC", nullptr));
  EVP_PKEY* raw = nullptr;
  if (!params || !pctx || EVP_PKEY_fromdata_init(pctx.get()) != 1 ||
      EVP_PKEY_fromdata(pctx.get(), &raw, EVP_PKEY_KEYPAIR, params.get()) != 1) {
    crypto_failure("EVP_PKEY_fromdata(EC)");
  }
  return share(raw);
}

std::shared_ptr<EVP_PKEY> derive_ec(KeyKind kind, ByteView seed) {
  Curve curve = load_curve(kind);
  SeedStream stream(seed, "zkx509-ec-key");
  for (;;) {
    BnPtr d = bits2int(curve, stream.next(curve.rlen_bytes));
    if (!BN_is_zero(d.get()) && BN_cmp(d.get(), curve.order.get()) < 0) {
      return ec_from_scalar(kind, d.get());
    }
  }
}

BnPtr next_prime(SeedStream& stream, const BIGNUM* e, BN_CTX* ctx) {
  BnPtr p = bn_from(stream.next(128));
  BN_set_bit(p.get(), 1023);
  BN_set_bit(p.get(), 1022);
  BN_set_bit(p.get(), 0);
  BnPtr pm1 = new_bn();
  BnPtr rem = new_bn();
  for (;;) {
    if (BN_check_prime(p.get(), ctx, nullptr) == 1) {
      BN_sub(pm1.get(), p.get(), BN_value_one());
      BN_mod(rem.get(), pm1.get(), e, ctx);
      if (!BN_is_zero(rem.get())) return p;
    }
    BN_add_word(p.get(), 2);
  }
}

std::shared_ptr<EVP_PKEY> derive_rsa(ByteView seed) {
  SeedStream stream(seed, "zkx509-rsa-key");
  BnCtxPtr ctx(BN_CTX_new());
  BnPtr e = new_bn();
  BN_set_word(e.get(), 65537);
  BnPtr p = next_prime(stream, e.get(), ctx.get());
  BnPtr q = next_prime(stream, e.get(), ctx.get());
  while (BN_cmp(p.get(), q.get()) == 0) q = next_prime(stream, e.get(), ctx.get());
  if (BN_cmp(p.get(), q.get()) < 0) std::swap(p, q);

  BnPtr n = new_bn(), d = new_bn(), dp = new_bn(), dq = new_bn(),
        qinv = new_bn(), pm1 = new_bn(), qm1 = new_bn(), phi = new_bn();
  BN_mul(n.get(), p.get(), q.get(), ctx.get());
  BN_sub(pm1.get(), p.get(), BN_value_one());
  BN_sub(qm1.get(), q.get(), BN_value_one());
  BN_mul(phi.get(), pm1.get(), qm1.get(), ctx.get());
  if (!BN_mod_inverse(d.get(), e.get(), phi.get(), ctx.get()) ||
      !BN_mod(dp.get(), d.get(), pm1.get(), ctx.get()) ||
      !BN_mod(dq.get(), d.get(), qm1.get(), ctx.get()) ||
      !BN_mod_inverse(qinv.get(), q.get(), p.get(), ctx.get())) {
    crypto_failure("RSA key arithmetic");
  }

  ParamBldPtr bld(OSSL_PARAM_BLD_new());
  OSSL_PARAM_BLD_push_BN(bld.get(), OSSL_PKEY_PARAM_RSA_N, n.get());
  OSSL_PARAM_BLD_push_BN(bld.get(), OSSL_PKEY_PARAM_RSA_E, e.get());
  OSSL_PARAM_BLD_push_BN(bld.get(), OSSL_PKEY_PARAM_RSA_D, d.get());
  OSSL_PARAM_BLD_push_BN(bld.get(), OSSL_PKEY_PARAM_RSA_FACTOR1, p.get());
  OSSL_PARAM_BLD_push_BN(bld.get(), OSSL_PKEY_PARAM_RSA_FACTOR2, q.get());
  OSSL_PARAM_BLD_push_BN(bld.get(), OSSL_PKEY_PARAM_RSA_EXPONENT1, dp.get());
  OSSL_PARAM_BLD_push_BN(bld.get(), OSSL_PKEY_PARAM_RSA_EXPONENT2, dq.get());
  OSSL_PARAM_BLD_push_BN(bld.get(), OSSL_PKEY_PARAM_RSA_COEFFICIENT1,
                         qinv.get());
  ParamPtr params(OSSL_PARAM_BLD_to_param(bld.get()));
  PkeyCtxPtr pctx(EVP_PKEY_CTX_new_from_name(nullptr, "RSA", nullptr));
  EVP_PKEY* raw = nullptr;
  if (!params || !pctx || EVP_PKEY_fromdata_init(pctx.get()) != 1 ||
      EVP_PKEY_fromdata(pctx.get(), &raw, EVP_PKEY_KEYPAIR, params.get()) != 1) {
    crypto_failure("EVP_PKEY_fromdata(RSA)");
  }
  return share(raw);
}

}  // namespace

const char* to_string(KeyKind kind) {
  switch (kind) {
    case KeyKind::kRsa:
      return "rsa2048";
    case KeyKind::kP256:
      return "p256";
    case KeyKind::kP384:
      return "p384";
  }
  return "unknown";
}

const char* to_string(Digest d) {
  switch (d) {
    case Digest::kSha1:
      return "sha1";
    case Digest::kSha256:
      return "sha256";
    case Digest::kSha384:
      return "sha384";
    case Digest::kSha512:
      return "sha512";
  }
  return "unknown";
}

KeyKind key_kind_from_string(std::string_view s) {
  if (s == "rsa2048" || s == "rsa") return KeyKind::kRsa;
  if (s == "p256") return KeyKind::kP256;
  if (s == "p384") return KeyKind::kP384;
  throw std::invalid_argument("unknown key kind: " + std::string(s));
}

Digest digest_from_string(std::string_view s) {
  if (s == "sha1") return Digest::kSha1;
  if (s == "sha256") return Digest::kSha256;
  if (s == "sha384") return Digest::kSha384;
  if (s == "sha512") return Digest::kSha512;
  throw std::invalid_argument("unknown digest: " + std::string(s));
}

const char* to_string(SigCryptoErrc code) {
  switch (code) {
    case SigCryptoErrc::kUnsupportedAlgorithm:
      return "UnsupportedAlgorithm";
    case SigCryptoErrc::kCurveMismatch:
      return "CurveMismatch";
    case SigCryptoErrc::kBadKey:
      return "BadKey";
  }
  return "Unknown";
}

Hash32 sha256(ByteView data) {
  Hash32 out{};
  if (!EVP_Digest(data.data(), data.size(), out.data(), nullptr, EVP_sha256(),
                  nullptr)) {
    crypto_failure("EVP_Digest");
  }
  return out;
}

Bytes digest(Digest alg, ByteView data) {
  const EVP_MD* md = md_for(alg);
  Bytes out(static_cast<size_t>(EVP_MD_get_size(md)));
  if (!EVP_Digest(data.data(), data.size(), out.data(), nullptr, md, nullptr)) {
    crypto_failure("EVP_Digest");
  }
  return out;
}

Bytes hmac(Digest alg, ByteView key, ByteView data) {
  Bytes out(EVP_MAX_MD_SIZE);
  unsigned int len = 0;
  if (!HMAC(md_for(alg), key.data(), static_cast<int>(key.size()), data.data(),
            data.size(), out.data(), &len)) {
    crypto_failure("HMAC");
  }
  out.resize(len);
  return out;
}

std::string signature_oid(KeyKind kind, Digest alg) {
  if (kind == KeyKind::kRsa) {
    switch (alg) {
      case Digest::kSha1:
        return oid::kSha1WithRsa;
      case Digest::kSha256:
        return oid::kSha256WithRsa;
      case Digest::kSha384:
        return oid::kSha384WithRsa;
      case Digest::kSha512:
        return oid::kSha512WithRsa;
    }
  }
  if (alg == Digest::kSha256) return oid::kEcdsaWithSha256;
  if (alg == Digest::kSha384) return oid::kEcdsaWithSha384;
  throw SigCryptoError(SigCryptoErrc::kUnsupportedAlgorithm,
                       std::string("ECDSA with ") + to_string(alg));
}

std::optional<Digest> signature_digest(std::string_view sig_alg_oid) {
  auto alg = lookup_sig_alg(sig_alg_oid);
  if (!alg) return std::nullopt;
  return alg->digest;
}

std::string default_signature_oid(std::string_view spki_alg_oid) {
  if (spki_alg_oid == oid::kRsaEncryption) return oid::kSha256WithRsa;
  if (spki_alg_oid == oid::kEcPublicKey) return oid::kEcdsaWithSha256;
  throw SigCryptoError(SigCryptoErrc::kUnsupportedAlgorithm,
                       "key algorithm " + std::string(spki_alg_oid));
}

SignerKey::SignerKey(std::shared_ptr<EVP_PKEY> pkey) : pkey_(std::move(pkey)) {
  switch (EVP_PKEY_get_base_id(pkey_.get())) {
    case EVP_PKEY_RSA:
      kind_ = KeyKind::kRsa;
      break;
    case EVP_PKEY_EC: {
      auto curve = curve_of(pkey_.get());
      if (!curve) bad_key("unsupported EC curve");
      kind_ = *curve;
      break;
    }
    default:
      bad_key("unsupported key type");
  }
  PkeyCtxPtr check(EVP_PKEY_CTX_new_from_pkey(nullptr, pkey_.get(), nullptr));
  if (!check || EVP_PKEY_pairwise_check(check.get()) != 1) {
    bad_key("private and public key halves are inconsistent");
  }
  unsigned char* buf = nullptr;
  int len = i2d_PrivateKey(pkey_.get(), &buf);
  if (len <= 0) bad_key("cannot encode private key");
  private_der_.assign(buf, buf + len);
  OPENSSL_free(buf);
  buf = nullptr;
  len = i2d_PUBKEY(pkey_.get(), &buf);
  if (len <= 0) bad_key("cannot encode public key");
  spki_der_.assign(buf, buf + len);
  OPENSSL_free(buf);
}

SignerKey SignerKey::load(ByteView material) {
  EVP_PKEY* raw = nullptr;
  if (material.size() >= 5 && std::memcmp(material.data(), "-----", 5) == 0) {
    BioPtr bio(BIO_new_mem_buf(material.data(), static_cast<int>(material.size())));
    raw = PEM_read_bio_PrivateKey(bio.get(), nullptr, nullptr, nullptr);
  } else {
    const unsigned char* p = material.data();
    raw = d2i_AutoPrivateKey(nullptr, &p, static_cast<long>(material.size()));
  }
  if (!raw) bad_key("private key does not parse");
  return SignerKey(share(raw));
}

SignerKey SignerKey::derive(KeyKind kind, ByteView seed) {
  return SignerKey(kind == KeyKind::kRsa ? derive_rsa(seed)
                                         : derive_ec(kind, seed));
}

Bytes sign_deterministic(const SignerKey& key, ByteView message, Digest alg) {
  if (key.kind() == KeyKind::kRsa) return rsa_sign(key, message, alg);
  if (alg != Digest::kSha256 && alg != Digest::kSha384) {
    throw SigCryptoError(SigCryptoErrc::kUnsupportedAlgorithm,
                         std::string("ECDSA with ") + to_string(alg));
  }
  return ecdsa_sign(key, message, alg);
}

Bytes rfc6979_nonce(KeyKind curve_kind, ByteView private_scalar_be,
                    ByteView h1, Digest alg) {
  if (curve_kind == KeyKind::kRsa) {
    throw std::invalid_argument("RFC 6979 nonces need an EC curve");
  }
  Curve curve = load_curve(curve_kind);
  BnPtr x = bn_from(private_scalar_be);
  NonceGenerator gen(curve, x.get(), h1, alg);
  return bn_to_fixed(gen.next().get(), curve.rlen_bytes);
}

bool verify_cert_signature(ByteView signer_spki, ByteView signed_bytes,
                           ByteView signature, std::string_view sig_alg_oid,
                           const std::optional<std::string>& signer_named_curve) {
  auto alg = lookup_sig_alg(sig_alg_oid);
  if (!alg) {
    throw SigCryptoError(SigCryptoErrc::kUnsupportedAlgorithm,
                         "signature OID " + std::string(sig_alg_oid));
  }
  const unsigned char* p = signer_spki.data();
  std::shared_ptr<EVP_PKEY> key =
      share(d2i_PUBKEY(nullptr, &p, static_cast<long>(signer_spki.size())));
  if (!key) {
    ERR_clear_error();
    return false;
  }
  int base = EVP_PKEY_get_base_id(key.get());
  if (alg->ecdsa) {
    if (base != EVP_PKEY_EC) return false;
    std::optional<KeyKind> claimed;
    if (signer_named_curve) claimed = curve_from_oid(*signer_named_curve);
    if (!claimed) {
      throw SigCryptoError(SigCryptoErrc::kCurveMismatch,
                           "ECDSA signature without a supported signer curve");
    }
    if (curve_of(key.get()) != claimed) return false;
  } else if (base != EVP_PKEY_RSA) {
    return false;
  }

  MdCtxPtr ctx(EVP_MD_CTX_new());
  bool ok = EVP_DigestVerifyInit(ctx.get(), nullptr, md_for(alg->digest),
                                 nullptr, key.get()) == 1 &&
            EVP_DigestVerify(ctx.get(), signature.data(), signature.size(),
                             signed_bytes.data(), signed_bytes.size()) == 1;
  ERR_clear_error();
  return ok;
}

}  // namespace zkx509
