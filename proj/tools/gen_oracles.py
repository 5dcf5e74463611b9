#!/usr/bin/env python3
# Copyright 2026 The zkx509 Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Regenerates tests/data/oracles.json and the key files beside it.

Every value here comes from hashlib, python-ecdsa, eth_abi or cryptography,
never from the C++ code under test. Run once; the output is checked in.
"""

import hashlib
import json
import math
import os
import struct

import ecdsa
import eth_abi
from cryptography.hazmat.primitives import hashes, serialization
from cryptography.hazmat.primitives.asymmetric import padding, rsa

OUT = os.path.join(os.path.dirname(__file__), "..", "tests", "data")


def h(b):
    return hashlib.sha256(b).hexdigest()


def be4(v):
    return struct.pack(">I", v)


def be8(v):
    return struct.pack(">Q", v)


def preimages():
    serial = bytes.fromhex("0a1b")
    registrant = b"\x11" * 20
    registry = b"\x22" * 20
    sig = bytes(range(64))
    salt = hashlib.sha256(b"zk-X509-Disclosure-Salt-v1" + sig).digest()
    vkey = b"\x33" * 32
    pv = bytes(i % 251 for i in range(416))
    return {
        "serial": serial.hex(),
        "registrant": registrant.hex(),
        "registry": registry.hex(),
        "wallet_index": 3,
        "timestamp": 1710000000,
        "chain_id": 137,
        "sig": sig.hex(),
        "challenge": h(serial + registrant + be4(3) + be8(1710000000) + be8(137)),
        "domain": h(b"zk-X509-Nullifier-v2" + registry + be8(137)),
        "nullifier": h(sig + be4(3)),
        "salt": salt.hex(),
        "country_hash_kr": h(b"KR" + salt),
        "vkey": vkey.hex(),
        "token": h(b"zk-X509-MockProof-v1" + vkey + pv),
    }


def merkle():
    a = hashlib.sha256(b"a").digest()
    b = hashlib.sha256(b"b").digest()
    lo, hi = min(a, b), max(a, b)
    zero, ff = b"\x00" * 32, b"\xff" * 32
    s = hashlib.sha256(b"\x02").digest()
    leaves = sorted([zero, s, ff])
    one = hashlib.sha256(hashlib.sha256(leaves[0] + leaves[1]).digest() + leaves[2])
    return {
        "a": a.hex(),
        "b": b.hex(),
        "ca_root_ab": h(lo + hi),
        "crl_empty_root": h(zero + ff),
        "crl_one_serial_02_root": one.hexdigest(),
    }


def abi():
    types = ["bytes32", "bytes32", "uint64", "address", "uint32", "uint64",
             "uint64", "address", "bytes32", "bytes32", "bytes32", "bytes32",
             "bytes32"]
    words = [bytes([i + 1]) * 32 for i in range(13)]
    values = [words[0], words[1], 1710000000,
              "0x" + "11" * 20, 7, 1731536000, 137,
              "0x" + "de" * 19 + "ad", words[8], words[9], words[10],
              words[11], words[12]]
    return {"encoded": eth_abi.encode(types, values).hex()}


def ecdsa_vectors():
    out = {}
    cases = [
        ("p256", ecdsa.NIST256p, hashlib.sha256,
         0xC9AFA9D845BA75166B5C215767B1D6934E50C3DB36E89B127B8A622B120F6721),
        ("p384", ecdsa.NIST384p, hashlib.sha384,
          int("6B9D3DAD2E1B8C1C05B19875B6659F4DE23C3B667BF297BA"
             "9AA47740787137D896D5724E4C70A825F872C9EA60D2EDF5", 16)),
    ]
    for name, curve, hf, x in cases:
        sk = ecdsa.SigningKey.from_secret_exponent(x, curve=curve, hashfunc=hf)
        msg = b"sample"
        digest = hf(msg).digest()
        k = ecdsa.rfc6979.generate_k(curve.order, x, hf, digest)
        sig = sk.sign_deterministic(msg, hashfunc=hf,
                                    sigencode=ecdsa.util.sigencode_strings)
        der_sig = sk.sign_deterministic(msg, hashfunc=hf,
                                        sigencode=ecdsa.util.sigencode_der)
        # SHA-256 over P-384: the mixed digest/curve case.
        mixed = sk.sign_deterministic(msg, hashfunc=hashlib.sha256,
                                      sigencode=ecdsa.util.sigencode_der)
        out[name] = {
            "x": format(x, "x"),
            "key_der": sk.to_der(format="ssleay").hex(),
            "h1": digest.hex(),
            "k": format(k, "x"),
            "r": sig[0].hex(),
            "s": sig[1].hex(),
            "sig_der": der_sig.hex(),
            "sig_der_sha256": mixed.hex(),
        }
    return out


def rsa_vector():
    # Primes derived from a fixed label keep the file reproducible.
    seed = hashlib.sha256(b"zkx509 oracle rsa").digest()

    def prime_from(label):
        n = int.from_bytes(hashlib.sha512(seed + label).digest() * 2, "big")
        n |= (3 << 1022) | 1
        n &= (1 << 1024) - 1
        while True:
            if n % 65537 != 1 and is_probable_prime(n):
                return n
            n += 2

    p = prime_from(b"p")
    q = prime_from(b"q")
    e = 65537
    d = pow(e, -1, (p - 1) * (q - 1))
    priv = rsa.RSAPrivateNumbers(
        p, q, d, d % (p - 1), d % (q - 1), pow(q, -1, p),
        rsa.RSAPublicNumbers(e, p * q)).private_key()
    der = priv.private_bytes(serialization.Encoding.DER,
                             serialization.PrivateFormat.TraditionalOpenSSL,
                             serialization.NoEncryption())
    msgs = {}
    for name, alg in [("sha1", hashes.SHA1()), ("sha256", hashes.SHA256()),
                      ("sha384", hashes.SHA384()), ("sha512", hashes.SHA512())]:
        msgs[name] = priv.sign(b"sample", padding.PKCS1v15(), alg).hex()
    return {"key_der": der.hex(), "sig_sample": msgs}


def is_probable_prime(n):
    if n < 2:
        return False
    for sp in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % sp == 0:
            return n == sp
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = pow(x, 2, n)
            if x == n - 1:
                break
        else:
            return False
    return True


def main():
    total = 20 + 1.3 + 46
    p = [20 / total, 1.3 / total, 46 / total]
    uniform = [0.25] * 4
    data = {
        "sha256_1mib_zero": h(b"\x00" * (1 << 20)),
        "preimages": preimages(),
        "merkle": merkle(),
        "abi": abi(),
        "ecdsa": ecdsa_vectors(),
        "rsa": rsa_vector(),
        "min_entropy": {
            "p": p,
            "max_p": max(p),
            "bits": -math.log2(max(p)),
            "uniform4_bits": -math.log2(max(uniform)),
        },
    }
    os.makedirs(OUT, exist_ok=True)
    with open(os.path.join(OUT, "oracles.json"), "w") as f:
        json.dump(data, f, indent=2, sort_keys=True)
        f.write("\n")


if __name__ == "__main__":
    main()
