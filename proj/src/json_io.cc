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

#include "zkx509/json_io.h"

#include <functional>

namespace zkx509 {

using nlohmann::json;

namespace {

template <typename T>
T guarded(const char* what, const std::function<T()>& fn) {
  try {
    return fn();
  } catch (const json::exception& e) {
    throw JsonFormatError(std::string(what) + ": " + e.what());
  } catch (const HexError& e) {
    throw JsonFormatError(std::string(what) + ": " + e.what());
  }
}

Bytes bytes_at(const json& j, const char* key) {
  return from_hex(j.at(key).get<std::string>());
}

template <size_t N>
std::array<uint8_t, N> fixed_at(const json& j, const char* key) {
  return fixed_from_hex<N>(j.at(key).get<std::string>());
}

json hash_list(const std::vector<Hash32>& v) {
  json out = json::array();
  for (const Hash32& h : v) out.push_back(to_hex0x(h));
  return out;
}

std::vector<Hash32> hash_list_at(const json& j, const char* key) {
  std::vector<Hash32> out;
  for (const json& e : j.at(key)) out.push_back(fixed_from_hex<32>(e.get<std::string>()));
  return out;
}

std::vector<bool> bool_list_at(const json& j, const char* key) {
  std::vector<bool> out;
  for (const json& e : j.at(key)) out.push_back(e.get<bool>());
  return out;
}

json bool_list(const std::vector<bool>& v) {
  json out = json::array();
  for (bool b : v) out.push_back(b);
  return out;
}

template <typename Set>
json hash_set(const Set& s) {
  json out = json::array();
  for (const auto& h : s) out.push_back(to_hex0x(h));
  return out;
}

}  // namespace

json non_membership_to_json(const NonMembershipProof& p) {
  return {
      {"left_leaf", to_hex0x(p.left_leaf)},
      {"right_leaf", to_hex0x(p.right_leaf)},
      {"left_proof", hash_list(p.left_proof)},
      {"right_proof", hash_list(p.right_proof)},
      {"left_dirs", bool_list(p.left_dirs)},
      {"right_dirs", bool_list(p.right_dirs)},
      {"left_index", p.left_index},
      {"right_index", p.right_index},
  };
}

NonMembershipProof non_membership_from_json(const json& j) {
  return guarded<NonMembershipProof>("non-membership proof", [&] {
    NonMembershipProof p;
    p.left_leaf = fixed_at<32>(j, "left_leaf");
    p.right_leaf = fixed_at<32>(j, "right_leaf");
    p.left_proof = hash_list_at(j, "left_proof");
    p.right_proof = hash_list_at(j, "right_proof");
    p.left_dirs = bool_list_at(j, "left_dirs");
    p.right_dirs = bool_list_at(j, "right_dirs");
    p.left_index = j.at("left_index").get<uint32_t>();
    p.right_index = j.at("right_index").get<uint32_t>();
    return p;
  });
}

json witness_to_json(const Witness& w) {
  json chain = json::array();
  for (const Bytes& c : w.cert_chain) chain.push_back(to_hex0x(c));
  return {
      {"cert_der", to_hex0x(w.cert_der)},
      {"ownership_sig", to_hex0x(w.ownership_sig)},
      {"nullifier_sig", to_hex0x(w.nullifier_sig)},
      {"cert_chain", chain},
      {"current_timestamp", w.current_timestamp},
      {"crl_der", to_hex0x(w.crl_der)},
      {"registrant", to_hex0x(w.registrant)},
      {"wallet_index", w.wallet_index},
      {"max_wallets", w.max_wallets},
      {"disclosure_mask", w.disclosure_mask},
      {"ca_merkle_proof", hash_list(w.ca_merkle_proof)},
      {"ca_merkle_root", to_hex0x(w.ca_merkle_root)},
      {"registry_address", to_hex0x(w.registry_address)},
      {"chain_id", w.chain_id},
      {"crl_merkle_root", to_hex0x(w.crl_merkle_root)},
      {"crl_left_leaf", to_hex0x(w.crl_proof.left_leaf)},
      {"crl_right_leaf", to_hex0x(w.crl_proof.right_leaf)},
      {"crl_left_proof", hash_list(w.crl_proof.left_proof)},
      {"crl_right_proof", hash_list(w.crl_proof.right_proof)},
      {"crl_left_dirs", bool_list(w.crl_proof.left_dirs)},
      {"crl_right_dirs", bool_list(w.crl_proof.right_dirs)},
      {"crl_left_index", w.crl_proof.left_index},
      {"crl_right_index", w.crl_proof.right_index},
  };
}

Witness witness_from_json(const json& j) {
  return guarded<Witness>("witness", [&] {
    Witness w;
    w.cert_der = bytes_at(j, "cert_der");
    w.ownership_sig = bytes_at(j, "ownership_sig");
    w.nullifier_sig = bytes_at(j, "nullifier_sig");
    for (const json& c : j.at("cert_chain")) {
      w.cert_chain.push_back(from_hex(c.get<std::string>()));
    }
    w.current_timestamp = j.at("current_timestamp").get<uint64_t>();
    w.crl_der = bytes_at(j, "crl_der");
    w.registrant = fixed_at<20>(j, "registrant");
    w.wallet_index = j.at("wallet_index").get<uint32_t>();
    w.max_wallets = j.at("max_wallets").get<uint32_t>();
    w.disclosure_mask = j.at("disclosure_mask").get<uint8_t>();
    w.ca_merkle_proof = hash_list_at(j, "ca_merkle_proof");
    w.ca_merkle_root = fixed_at<32>(j, "ca_merkle_root");
    w.registry_address = fixed_at<20>(j, "registry_address");
    w.chain_id = j.at("chain_id").get<uint64_t>();
    w.crl_merkle_root = fixed_at<32>(j, "crl_merkle_root");
    w.crl_proof.left_leaf = fixed_at<32>(j, "crl_left_leaf");
    w.crl_proof.right_leaf = fixed_at<32>(j, "crl_right_leaf");
    w.crl_proof.left_proof = hash_list_at(j, "crl_left_proof");
    w.crl_proof.right_proof = hash_list_at(j, "crl_right_proof");
    w.crl_proof.left_dirs = bool_list_at(j, "crl_left_dirs");
    w.crl_proof.right_dirs = bool_list_at(j, "crl_right_dirs");
    w.crl_proof.left_index = j.at("crl_left_index").get<uint32_t>();
    w.crl_proof.right_index = j.at("crl_right_index").get<uint32_t>();
    return w;
  });
}

json public_values_to_json(const PublicValues& pv) {
  return {
      {"nullifier", to_hex0x(pv.nullifier)},
      {"ca_merkle_root", to_hex0x(pv.ca_merkle_root)},
      {"timestamp", pv.timestamp},
      {"registrant", to_hex0x(pv.registrant)},
      {"wallet_index", pv.wallet_index},
      {"not_after", pv.not_after},
      {"chain_id", pv.chain_id},
      {"registry_address", to_hex0x(pv.registry_address)},
      {"crl_merkle_root", to_hex0x(pv.crl_merkle_root)},
      {"country_hash", to_hex0x(pv.country_hash)},
      {"org_hash", to_hex0x(pv.org_hash)},
      {"org_unit_hash", to_hex0x(pv.org_unit_hash)},
      {"common_name_hash", to_hex0x(pv.common_name_hash)},
  };
}

json trace_to_json(const CheckTrace& trace) {
  json out = json::array();
  for (const CheckEntry& e : trace) {
    json entry = {{"check", to_string(e.id)}, {"status", to_string(e.status)}};
    if (e.index) entry["index"] = *e.index;
    if (!e.detail.empty()) entry["detail"] = e.detail;
    out.push_back(std::move(entry));
  }
  return out;
}

json failure_to_json(const StatementFailure& f) {
  json out = {{"error", to_string(f.code)}, {"detail", f.detail}};
  if (f.index) out["index"] = *f.index;
  return out;
}

json bundle_to_json(const ProofBundle& bundle) {
  return {
      {"encoded_public_values", to_hex0x(bundle.encoded_public_values())},
      {"token", to_hex0x(bundle.token())},
      {"vkey_id", to_hex0x(bundle.vkey_id())},
      {"public_values", public_values_to_json(bundle.public_values())},
      {"trace", trace_to_json(bundle.trace())},
  };
}

BundleDocument bundle_from_json(const json& j) {
  return guarded<BundleDocument>("proof bundle", [&] {
    BundleDocument doc;
    doc.encoded_public_values = bytes_at(j, "encoded_public_values");
    doc.token = fixed_at<32>(j, "token");
    doc.vkey_id = fixed_at<32>(j, "vkey_id");
    return doc;
  });
}

json registry_to_json(const Registry& r) {
  const RegistryState& s = r.state;
  json owners = json::object();
  for (const auto& [n, a] : s.nullifier_owner) owners[to_hex0x(n)] = to_hex0x(a);
  json until = json::object();
  for (const auto& [a, t] : s.verified_until) until[to_hex0x(a)] = t;
  json events = json::array();
  for (const RegistryEvent& e : s.events) {
    events.push_back({{"name", e.name}, {"at", e.at}, {"fields", e.fields}});
  }
  json ops = json::array();
  for (const OpRecord& op : r.op_log) {
    ops.push_back({{"op", op.op},
                   {"sender", to_hex0x(op.sender)},
                   {"now", op.now},
                   {"outcome", op.outcome}});
  }
  return {
      {"clock", r.clock},
      {"vkey_id", to_hex0x(s.vkey_id)},
      {"max_wallets_per_cert", s.max_wallets_per_cert},
      {"min_disclosure_mask", s.min_disclosure_mask},
      {"chain_id", s.chain_id},
      {"self_address", to_hex0x(s.self_address)},
      {"ca_leaves", hash_list(s.ca_leaves)},
      {"ca_exists", hash_set(s.ca_exists)},
      {"ca_merkle_root", to_hex0x(s.ca_merkle_root)},
      {"previous_ca_merkle_root", to_hex0x(s.previous_ca_merkle_root)},
      {"ca_merkle_root_updated_at", s.ca_merkle_root_updated_at},
      {"ca_root_grace_period", s.ca_root_grace_period},
      {"crl_merkle_root", to_hex0x(s.crl_merkle_root)},
      {"nullifier_owner", owners},
      {"revoked_nullifiers", hash_set(s.revoked_nullifiers)},
      {"verified_until", until},
      {"owner", to_hex0x(s.owner)},
      {"pending_owner",
       s.pending_owner ? json(to_hex0x(*s.pending_owner)) : json(nullptr)},
      {"max_proof_age", s.max_proof_age},
      {"paused", s.paused},
      {"events", events},
      {"op_log", ops},
  };
}

Registry registry_from_json(const json& j) {
  return guarded<Registry>("registry state", [&] {
    Registry r;
    RegistryState& s = r.state;
    r.clock = j.at("clock").get<uint64_t>();
    s.vkey_id = fixed_at<32>(j, "vkey_id");
    s.max_wallets_per_cert = j.at("max_wallets_per_cert").get<uint32_t>();
    s.min_disclosure_mask = j.at("min_disclosure_mask").get<uint8_t>();
    s.chain_id = j.at("chain_id").get<uint64_t>();
    s.self_address = fixed_at<20>(j, "self_address");
    s.ca_leaves = hash_list_at(j, "ca_leaves");
    for (const Hash32& h : hash_list_at(j, "ca_exists")) s.ca_exists.insert(h);
    s.ca_merkle_root = fixed_at<32>(j, "ca_merkle_root");
    s.previous_ca_merkle_root = fixed_at<32>(j, "previous_ca_merkle_root");
    s.ca_merkle_root_updated_at = j.at("ca_merkle_root_updated_at").get<uint64_t>();
    s.ca_root_grace_period = j.at("ca_root_grace_period").get<uint64_t>();
    s.crl_merkle_root = fixed_at<32>(j, "crl_merkle_root");
    for (const auto& [n, a] : j.at("nullifier_owner").items()) {
      s.nullifier_owner[fixed_from_hex<32>(n)] =
          fixed_from_hex<20>(a.get<std::string>());
    }
    for (const Hash32& h : hash_list_at(j, "revoked_nullifiers")) {
      s.revoked_nullifiers.insert(h);
    }
    for (const auto& [a, t] : j.at("verified_until").items()) {
      s.verified_until[fixed_from_hex<20>(a)] = t.get<uint64_t>();
    }
    s.owner = fixed_at<20>(j, "owner");
    if (!j.at("pending_owner").is_null()) {
      s.pending_owner = fixed_at<20>(j, "pending_owner");
    }
    s.max_proof_age = j.at("max_proof_age").get<uint64_t>();
    s.paused = j.at("paused").get<bool>();
    for (const json& e : j.at("events")) {
      s.events.push_back({e.at("name").get<std::string>(),
                          e.at("at").get<uint64_t>(),
                          e.at("fields").get<std::map<std::string, std::string>>()});
    }
    for (const json& op : j.at("op_log")) {
      r.op_log.push_back({op.at("op").get<std::string>(),
                          fixed_at<20>(op, "sender"), op.at("now").get<uint64_t>(),
                          op.at("outcome").get<std::string>()});
    }
    if (s.ca_exists != std::set<Hash32>(s.ca_leaves.begin(), s.ca_leaves.end()) ||
        s.ca_exists.size() != s.ca_leaves.size()) {
      throw JsonFormatError("registry state: ca_exists does not mirror ca_leaves");
    }
    return r;
  });
}

}  // namespace zkx509
