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

#include "zkx509/prover.h"

#include <fstream>
#include <iterator>

#include "zkx509/merkle.h"
#include "zkx509/pkix.h"

namespace zkx509 {

namespace {

Bytes read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + p.string());
  return Bytes(std::istreambuf_iterator<char>(in), {});
}

}  // namespace

Bytes serial_bytes(uint64_t serial) {
  Bytes out;
  append_be(out, serial, 8);
  size_t lead = 0;
  while (lead + 1 < out.size() && out[lead] == 0) ++lead;
  out.erase(out.begin(), out.begin() + static_cast<std::ptrdiff_t>(lead));
  return out;
}

Witness build_witness(const SignerKey& user_key, ByteView user_cert_der,
                      std::vector<Bytes> chain, const ProveRequest& r) {
  ParsedCertificate cert = parse_certificate(user_cert_der);
  Witness w;
  w.cert_der = pem_to_der(user_cert_der);
  w.current_timestamp = r.timestamp;
  w.registrant = r.registrant;
  w.wallet_index = r.wallet_index;
  w.max_wallets = r.max_wallets;
  w.disclosure_mask = r.disclosure_mask;
  w.registry_address = r.registry_address;
  w.chain_id = r.chain_id;
  w.crl_der = r.crl_der;
  w.ownership_sig = sign_deterministic(
      user_key, ownership_challenge(cert.serial, r.registrant, r.wallet_index,
                                    r.timestamp, r.chain_id));
  w.nullifier_sig = sign_deterministic(
      user_key, nullifier_domain(r.registry_address, r.chain_id));

  if (chain.empty()) throw std::invalid_argument("chain must end with root SPKI");
  Hash32 leaf = sha256(chain.back());
  std::vector<Hash32> leaves = r.ca_leaves.empty() ? std::vector<Hash32>{leaf}
                                                   : r.ca_leaves;
  w.ca_merkle_proof = ca_prove(leaves, leaf);
  w.ca_merkle_root = ca_root(leaves);
  w.cert_chain = std::move(chain);

  if (r.crl_tree_serials) {
    CrlSortedTree tree = CrlSortedTree::build(*r.crl_tree_serials);
    w.crl_merkle_root = tree.root();
    w.crl_proof = crl_prove_absent(tree, crl_leaf(cert.serial));
  }
  return w;
}

std::vector<Bytes> PkiDirectory::witness_chain() const {
  std::vector<Bytes> chain = intermediate_ders;
  chain.push_back(root_spki);
  return chain;
}

PkiDirectory load_pki_directory(const std::filesystem::path& dir) {
  PkiDirectory d;
  d.user_der = read_file(dir / "user.der");
  d.user_key = read_file(dir / "user.key");
  d.root_der = read_file(dir / "root.der");
  for (int i = 0;; ++i) {
    auto p = dir / ("inter" + std::to_string(i) + ".der");
    if (!std::filesystem::exists(p)) break;
    d.intermediate_ders.push_back(read_file(p));
  }
  if (std::filesystem::exists(dir / "crl.der")) d.crl_der = read_file(dir / "crl.der");
  d.root_spki = parse_certificate(d.root_der).spki_der;
  return d;
}

}  // namespace zkx509
