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

#include "zkx509/cli.h"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "zkx509/anonymity.h"
#include "zkx509/fixtures.h"
#include "zkx509/json_io.h"
#include "zkx509/merkle.h"
#include "zkx509/pkix.h"
#include "zkx509/prover.h"

namespace zkx509::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct CliFailure : std::runtime_error {
  CliFailure(int code, std::string name, const std::string& detail,
             json extra = json::object())
      : std::runtime_error(detail),
        code(code),
        name(std::move(name)),
        extra(std::move(extra)) {}
  int code;
  std::string name;
  json extra;
};

[[noreturn]] void bad_input(const std::string& detail) {
  throw CliFailure(exit_code::kBadInput, "BadInput", detail);
}

class Reporter {
 public:
  Reporter(bool json_mode, std::ostream& out, std::ostream& err)
      : json_(json_mode), out_(out), err_(err) {}

  void ok(json doc, const std::string& text) {
    if (json_) {
      doc["ok"] = true;
      out_ << doc.dump(2) << "\n";
    } else {
      out_ << text;
    }
  }

  int fail(const CliFailure& f) {
    if (json_) {
      json doc = f.extra;
      doc["ok"] = false;
      doc["error"] = f.name;
      doc["detail"] = f.what();
      doc["exit_code"] = f.code;
      out_ << doc.dump(2) << "\n";
    } else {
      err_ << "error: " << f.name << ": " << f.what() << "\n";
      if (f.extra.contains("trace")) {
        for (const json& e : f.extra["trace"]) {
          if (e["status"] == "fail") {
            err_ << "  failed check: " << e["check"].get<std::string>();
            if (e.contains("index")) err_ << "[" << e["index"] << "]";
            err_ << "\n";
          }
        }
      }
    }
    return f.code;
  }

 private:
  bool json_;
  std::ostream& out_;
  std::ostream& err_;
};

// --- parsing helpers ---------------------------------------------------------

Address parse_address(const std::string& s, const char* what) {
  try {
    return fixed_from_hex<20>(s);
  } catch (const HexError& e) {
    bad_input(std::string(what) + ": " + e.what());
  }
}

Hash32 parse_hash(const std::string& s, const char* what) {
  try {
    return fixed_from_hex<32>(s);
  } catch (const HexError& e) {
    bad_input(std::string(what) + ": " + e.what());
  }
}

uint8_t parse_mask(const std::string& s) {
  unsigned long v = 0;
  try {
    size_t used = 0;
    if (s.rfind("0b", 0) == 0 || s.rfind("0B", 0) == 0) {
      v = std::stoul(s.substr(2), &used, 2);
      used += 2;
    } else {
      v = std::stoul(s, &used, 0);
    }
    if (used != s.size()) throw std::invalid_argument(s);
  } catch (const std::exception&) {
    bad_input("mask: cannot parse '" + s + "'");
  }
  if (v > 0xff) bad_input("mask: exceeds 8 bits");
  return static_cast<uint8_t>(v);
}

Bytes read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) bad_input("cannot read " + p.string());
  return Bytes(std::istreambuf_iterator<char>(in), {});
}

json read_json(const fs::path& p) {
  Bytes raw = read_file(p);
  try {
    return json::parse(raw.begin(), raw.end());
  } catch (const json::exception& e) {
    bad_input(p.string() + ": " + e.what());
  }
}

void write_text(const fs::path& p, const std::string& text) {
  fs::path tmp = p;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    out << text;
    if (!out) bad_input("cannot write " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, p, ec);
  if (ec) bad_input("cannot replace " + p.string() + ": " + ec.message());
}

// --- registry state file -------------------------------------------------------

fs::path state_path(const std::string& flag) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv(kStateEnvVar); env && *env) return env;
  return kDefaultStatePath;
}

class StateLock {
 public:
  explicit StateLock(const fs::path& state) {
    fs::path lock = state;
    lock += ".lock";
    fd_ = ::open(lock.c_str(), O_CREAT | O_RDWR | O_CLOEXEC, 0644);
    if (fd_ < 0) {
      throw CliFailure(exit_code::kStateFile, "StateFile",
                       "cannot open lock file " + lock.string());
    }
    if (::flock(fd_, LOCK_EX | LOCK_NB) != 0) {
      ::close(fd_);
      throw CliFailure(exit_code::kStateFile, "StateFile",
                       "state file is locked by another process");
    }
  }
  ~StateLock() {
    ::flock(fd_, LOCK_UN);
    ::close(fd_);
  }
  StateLock(const StateLock&) = delete;
  StateLock& operator=(const StateLock&) = delete;

 private:
  int fd_ = -1;
};

Registry load_registry(const fs::path& p) {
  if (!fs::exists(p)) {
    throw CliFailure(exit_code::kStateFile, "StateFile",
                     "no registry state at " + p.string());
  }
  try {
    return registry_from_json(read_json(p));
  } catch (const JsonFormatError& e) {
    bad_input(e.what());
  }
}

void save_registry(const fs::path& p, const Registry& r) {
  write_text(p, registry_to_json(r).dump(2) + "\n");
}

json events_since(const Registry& r, size_t from) {
  json out = json::array();
  for (size_t i = from; i < r.state.events.size(); ++i) {
    const RegistryEvent& e = r.state.events[i];
    out.push_back({{"name", e.name}, {"at", e.at}, {"fields", e.fields}});
  }
  return out;
}

std::string events_text(const json& events) {
  std::string out;
  for (const json& e : events) {
    out += "event " + e["name"].get<std::string>();
    for (const auto& [k, v] : e["fields"].items()) {
      out += " " + k + "=" + v.get<std::string>();
    }
    out += "\n";
  }
  return out;
}

// --- commands -----------------------------------------------------------------

struct GenPkiArgs {
  int depth = 3;
  std::string alg = "rsa2048";
  std::string digest = "sha256";
  uint64_t seed = 0;
  std::string out;
  std::vector<uint64_t> revoke;
};

void cmd_gen_pki(const GenPkiArgs& a, Reporter& rep) {
  fixtures::Pki pki = [&] {
    try {
      fixtures::PkiSpec spec =
          fixtures::default_spec(a.seed, a.depth, key_kind_from_string(a.alg));
      Digest d = digest_from_string(a.digest);
      spec.root.digest = d;
      for (auto& t : spec.intermediates) t.digest = d;
      spec.user.digest = d;
      spec.crl_digest = d;
      spec.crl_revoked_serials = a.revoke;
      return fixtures::build_pki(spec);
    } catch (const fixtures::FixtureError& e) {
      bad_input(std::string("bad spec: ") + e.what());
    } catch (const SigCryptoError& e) {
      bad_input(std::string("bad spec: ") + e.what());
    }
  }();
  fixtures::write_directory(pki, a.out);
  json files = json::array({"root.der"});
  for (size_t i = 0; i < pki.intermediate_ders.size(); ++i) {
    files.push_back("inter" + std::to_string(i) + ".der");
  }
  for (const char* f : {"user.der", "user.key", "crl.der", "manifest.json"}) {
    files.push_back(f);
  }
  rep.ok({{"out", a.out},
          {"ca_leaf", to_hex0x(pki.ca_leaf())},
          {"certificates", pki.certificates.size()},
          {"files", files}},
         "ca_leaf " + to_hex0x(pki.ca_leaf()) + "\nwrote " + a.out + "\n");
}

struct ProveArgs {
  std::string pki;
  std::string registrant;
  uint32_t wallet_index = 0;
  std::optional<uint32_t> max_wallets;
  std::string registry_address;
  std::optional<uint64_t> chain_id;
  std::string mask = "0";
  std::optional<uint64_t> timestamp;
  std::string registry;
  bool no_crl = false;
  std::string crl;
  bool crl_tree = false;
  std::vector<std::string> ca_leaves;
  std::string out;
  std::string witness_out;
};

std::string failure_detail(const StatementFailure& f) {
  std::string out = f.index ? "index " + std::to_string(*f.index) + ": " : "";
  return out + f.detail;
}

json failure_extra(const Evaluation& ev) {
  return {{"trace", trace_to_json(ev.trace)},
          {"check_error", failure_to_json(*ev.failure)}};
}

void cmd_prove(const ProveArgs& a, Reporter& rep) {
  PkiDirectory dir;
  SignerKey key = [&] {
    try {
      dir = load_pki_directory(a.pki);
      return SignerKey::load(dir.user_key);
    } catch (const PkixError& e) {
      throw CliFailure(exit_code::kMalformedPki, "MalformedPki", e.what());
    } catch (const SigCryptoError& e) {
      throw CliFailure(exit_code::kMalformedPki, "MalformedPki", e.what());
    } catch (const std::runtime_error& e) {
      bad_input(e.what());
    }
  }();

  std::optional<Registry> reg;
  if (!a.registry.empty()) reg = load_registry(a.registry);

  ProveRequest r;
  r.registrant = parse_address(a.registrant, "registrant");
  r.wallet_index = a.wallet_index;
  r.max_wallets = a.max_wallets.value_or(reg ? reg->state.max_wallets_per_cert : 1);
  if (!a.registry_address.empty()) {
    r.registry_address = parse_address(a.registry_address, "registry-address");
  } else if (reg) {
    r.registry_address = reg->state.self_address;
  }
  r.chain_id = a.chain_id.value_or(reg ? reg->state.chain_id : 1);
  r.disclosure_mask = parse_mask(a.mask);
  if (a.timestamp) {
    r.timestamp = *a.timestamp;
  } else if (reg) {
    r.timestamp = reg->clock;
  } else {
    bad_input("--timestamp is required without --registry");
  }
  if (!a.no_crl) r.crl_der = a.crl.empty() ? dir.crl_der : read_file(a.crl);
  for (const std::string& h : a.ca_leaves) r.ca_leaves.push_back(parse_hash(h, "ca-leaf"));
  if (r.ca_leaves.empty() && reg && !reg->state.ca_leaves.empty()) {
    r.ca_leaves = reg->state.ca_leaves;
  }
  if (a.crl_tree) {
    Bytes source = a.crl.empty() ? dir.crl_der : read_file(a.crl);
    try {
      r.crl_tree_serials = parse_crl(source).revoked_serials;
    } catch (const PkixError& e) {
      throw CliFailure(exit_code::kMalformedPki, "MalformedPki", e.what());
    }
  }

  Witness w;
  try {
    w = build_witness(key, dir.user_der, dir.witness_chain(), r);
  } catch (const MerkleError& e) {
    if (e.code() == MerkleErrc::kTargetPresent) {
      throw CliFailure(exit_code::kSerialInCrlTree, "SerialInCrlTree", e.what());
    }
    throw CliFailure(exit_code::kNotWhitelisted, "NotWhitelisted", e.what());
  } catch (const PkixError& e) {
    throw CliFailure(exit_code::kMalformedPki, "MalformedPki", e.what());
  }
  if (!a.witness_out.empty()) write_text(a.witness_out, witness_to_json(w).dump(2) + "\n");

  Evaluation ev = evaluate_statement(w);
  if (!ev.ok()) {
    throw CliFailure(exit_code_for(ev.failure->code), to_string(ev.failure->code),
                     failure_detail(*ev.failure), failure_extra(ev));
  }
  ProofBundle bundle = prove(w);
  json doc = bundle_to_json(bundle);
  std::string text = "nullifier " + to_hex0x(bundle.public_values().nullifier) +
                     "\ntoken " + to_hex0x(bundle.token()) + "\n";
  if (!a.out.empty()) {
    write_text(a.out, doc.dump(2) + "\n");
    text += "wrote " + a.out + "\n";
    doc = {{"out", a.out},
           {"nullifier", to_hex0x(bundle.public_values().nullifier)},
           {"token", to_hex0x(bundle.token())}};
  }
  rep.ok(doc, text);
}

void cmd_evaluate(const std::string& witness_file, Reporter& rep) {
  Witness w;
  try {
    w = witness_from_json(read_json(witness_file));
  } catch (const JsonFormatError& e) {
    bad_input(e.what());
  }
  Evaluation ev = evaluate_statement(w);
  if (!ev.ok()) {
    json extra = ev.trace.empty() ? json::object() : failure_extra(ev);
    throw CliFailure(exit_code_for(ev.failure->code), to_string(ev.failure->code),
                     failure_detail(*ev.failure), extra);
  }
  std::string text;
  for (const CheckEntry& e : ev.trace) {
    text += std::string(to_string(e.status)) + " " + to_string(e.id);
    if (e.index) text += "[" + std::to_string(*e.index) + "]";
    text += "\n";
  }
  Bytes encoded = encode_public_values(*ev.public_values);
  text += "encoded_public_values " + to_hex0x(encoded) + "\n";
  rep.ok({{"trace", trace_to_json(ev.trace)},
          {"public_values", public_values_to_json(*ev.public_values)},
          {"encoded_public_values", to_hex0x(encoded)}},
         text);
}

void cmd_min_entropy(const std::vector<double>& populations, Reporter& rep) {
  MinEntropy m;
  try {
    m = min_entropy(populations);
  } catch (const std::invalid_argument& e) {
    throw CliFailure(exit_code::kBadPopulation, "BadPopulation", e.what());
  }
  auto fixed2 = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return std::string(buf);
  };
  std::string text = "p =";
  json rounded = json::array();
  for (double p : m.probabilities) {
    text += " " + fixed2(p);
    rounded.push_back(fixed2(p));
  }
  text += "\nmax_p = " + fixed2(m.max_probability) +
          "\nmin_entropy_bits = " + fixed2(m.bits) + "\n";
  rep.ok({{"probabilities", m.probabilities},
          {"max_probability", m.max_probability},
          {"min_entropy_bits", m.bits},
          {"display",
           {{"probabilities", rounded},
            {"max_probability", fixed2(m.max_probability)},
            {"min_entropy_bits", fixed2(m.bits)}}}},
         text);
}

// One registry operation under the state lock. Failed operations are saved
// too, so the op log shows them.
template <typename Fn>
void registry_op(const fs::path& path, const std::string& op,
                 const Address& sender, Reporter& rep, Fn&& fn) {
  StateLock lock(path);
  Registry reg = load_registry(path);
  size_t first_event = reg.state.events.size();
  try {
    reg.apply(op, sender, fn);
  } catch (const RegistryError& e) {
    save_registry(path, reg);
    throw CliFailure(exit_code_for(e.code()), to_string(e.code()), e.what(),
                     {{"op", op}, {"clock", reg.clock}});
  }
  save_registry(path, reg);
  json events = events_since(reg, first_event);
  rep.ok({{"op", op}, {"clock", reg.clock}, {"events", events}},
         "ok " + op + " at " + std::to_string(reg.clock) + "\n" +
             events_text(events));
}

BundleDocument load_bundle(const std::string& file) {
  try {
    return bundle_from_json(read_json(file));
  } catch (const JsonFormatError& e) {
    bad_input(e.what());
  }
}

Hash32 ca_leaf_of_pki(const std::string& dir) {
  try {
    return sha256(load_pki_directory(dir).root_spki);
  } catch (const PkixError& e) {
    throw CliFailure(exit_code::kMalformedPki, "MalformedPki", e.what());
  } catch (const std::runtime_error& e) {
    bad_input(e.what());
  }
}

void cmd_status(const fs::path& path, const std::string& address,
                Reporter& rep) {
  Registry reg = load_registry(path);
  const RegistryState& s = reg.state;
  json doc = {{"clock", reg.clock},
              {"owner", to_hex0x(s.owner)},
              {"paused", s.paused},
              {"chain_id", s.chain_id},
              {"self_address", to_hex0x(s.self_address)},
              {"ca_count", get_ca_count(s)},
              {"ca_merkle_root", to_hex0x(s.ca_merkle_root)},
              {"crl_merkle_root", to_hex0x(s.crl_merkle_root)},
              {"max_proof_age", s.max_proof_age},
              {"registered_nullifiers", s.nullifier_owner.size()},
              {"revoked_nullifiers", s.revoked_nullifiers.size()}};
  std::ostringstream text;
  text << "clock " << reg.clock << "\nowner " << to_hex0x(s.owner)
       << "\npaused " << (s.paused ? "true" : "false") << "\nca_count "
       << get_ca_count(s) << "\nca_merkle_root " << to_hex0x(s.ca_merkle_root)
       << "\ncrl_merkle_root " << to_hex0x(s.crl_merkle_root) << "\n";
  json wallets = json::array();
  for (const auto& [addr, until] : s.verified_until) {
    if (!address.empty() && addr != parse_address(address, "address")) continue;
    bool ok = is_verified(s, addr, reg.clock);
    wallets.push_back(
        {{"address", to_hex0x(addr)}, {"verified_until", until}, {"verified", ok}});
    text << "wallet " << to_hex0x(addr) << " verified_until " << until
         << (ok ? " verified" : " not-verified") << "\n";
  }
  if (!address.empty() && wallets.empty()) {
    Address addr = parse_address(address, "address");
    wallets.push_back(
        {{"address", to_hex0x(addr)}, {"verified_until", 0}, {"verified", false}});
    text << "wallet " << to_hex0x(addr) << " verified_until 0 not-verified\n";
  }
  doc["wallets"] = wallets;
  rep.ok(doc, text.str());
}

struct RegistryArgs {
  std::string state;
  std::string sender;
  // new
  std::string owner;
  uint64_t chain_id = 1;
  std::string self_address;
  uint32_t max_wallets = 1;
  std::string min_disclosure_mask = "0";
  std::string vkey;
  uint64_t clock = 0;
  std::vector<std::string> cas;
  std::vector<std::string> ca_pkis;
  bool force = false;
  // operations
  std::string bundle;
  uint64_t index = 0;
  std::string nullifier;
  std::string reason;
  uint64_t seconds = 0;
  std::string root;
  std::string crl;
  std::string to;
  std::optional<uint64_t> by;
  std::optional<uint64_t> to_time;
  std::string address;
};

void cmd_registry_new(const RegistryArgs& a, Reporter& rep) {
  fs::path path = state_path(a.state);
  StateLock lock(path);
  if (fs::exists(path) && !a.force) {
    throw CliFailure(exit_code::kStateFile, "StateFile",
                     path.string() + " exists (use --force to replace)");
  }
  RegistryConfig cfg;
  cfg.owner = parse_address(a.owner, "owner");
  cfg.chain_id = a.chain_id;
  cfg.self_address = parse_address(a.self_address, "self-address");
  cfg.max_wallets_per_cert = a.max_wallets;
  cfg.min_disclosure_mask = parse_mask(a.min_disclosure_mask);
  if (!a.vkey.empty()) cfg.vkey_id = parse_hash(a.vkey, "vkey");
  if (cfg.max_wallets_per_cert == 0) bad_input("max-wallets must be positive");
  Registry reg;
  reg.state = make_registry(cfg);
  reg.clock = a.clock;
  reg.op_log.push_back({"new", cfg.owner, reg.clock, "ok"});
  std::vector<Hash32> leaves;
  for (const std::string& h : a.cas) leaves.push_back(parse_hash(h, "ca"));
  for (const std::string& d : a.ca_pkis) leaves.push_back(ca_leaf_of_pki(d));
  if (!leaves.empty()) {
    try {
      reg.apply("add-ca", cfg.owner, [&](RegistryState& s, const Address& who,
                                         uint64_t now) {
        add_cas(s, who, now, leaves);
      });
    } catch (const RegistryError& e) {
      throw CliFailure(exit_code_for(e.code()), to_string(e.code()), e.what());
    }
  }
  save_registry(path, reg);
  json events = events_since(reg, 0);
  rep.ok({{"state", path.string()},
          {"clock", reg.clock},
          {"ca_merkle_root", to_hex0x(reg.state.ca_merkle_root)},
          {"events", events}},
         "created " + path.string() + "\nca_merkle_root " +
             to_hex0x(reg.state.ca_merkle_root) + "\n" + events_text(events));
}

void cmd_advance_clock(const RegistryArgs& a, Reporter& rep) {
  fs::path path = state_path(a.state);
  StateLock lock(path);
  Registry reg = load_registry(path);
  uint64_t target = reg.clock;
  if (a.by && a.to_time) bad_input("give either --by or --to");
  if (a.by) target = reg.clock + *a.by;
  if (a.to_time) {
    if (*a.to_time < reg.clock) bad_input("the clock only moves forward");
    target = *a.to_time;
  }
  reg.clock = target;
  reg.op_log.push_back({"advance-clock", kZeroAddress, reg.clock, "ok"});
  save_registry(path, reg);
  rep.ok({{"clock", reg.clock}}, "clock " + std::to_string(reg.clock) + "\n");
}

int dispatch(const std::vector<std::string>& args, std::ostream& out,
             std::ostream& err) {
  CLI::App app{"X.509 identity binding pipeline (mock attestation)", "zkx509"};
  app.require_subcommand(1);
  app.fallthrough();
  bool json_mode = false;
  app.add_flag("--json", json_mode, "Machine-readable output on stdout");

  GenPkiArgs gen;
  auto* gen_cmd = app.add_subcommand("gen-pki", "Generate a deterministic test PKI");
  gen_cmd->add_option("--depth", gen.depth, "Hierarchy depth 1..3")
      ->check(CLI::Range(1, 3));
  gen_cmd->add_option("--alg", gen.alg, "rsa2048, p256 or p384");
  gen_cmd->add_option("--digest", gen.digest, "sha1, sha256, sha384 or sha512");
  gen_cmd->add_option("--seed", gen.seed, "64-bit seed");
  gen_cmd->add_option("--out", gen.out, "Output directory")->required();
  gen_cmd->add_option("--revoke", gen.revoke, "Serials listed in crl.der");

  ProveArgs pr;
  auto* prove_cmd = app.add_subcommand("prove", "Sign, build the witness, evaluate");
  prove_cmd->add_option("--pki", pr.pki, "Fixture directory")->required();
  prove_cmd->add_option("--registrant", pr.registrant, "Wallet address")->required();
  prove_cmd->add_option("--wallet-index", pr.wallet_index);
  prove_cmd->add_option("--max-wallets", pr.max_wallets);
  prove_cmd->add_option("--registry-address", pr.registry_address);
  prove_cmd->add_option("--chain-id", pr.chain_id);
  prove_cmd->add_option("--mask", pr.mask, "Disclosure mask, e.g. 0b1111");
  prove_cmd->add_option("--timestamp", pr.timestamp);
  prove_cmd->add_option("--registry", pr.registry,
                        "Registry state supplying defaults and the CA list");
  prove_cmd->add_flag("--no-crl", pr.no_crl, "Skip the full-CRL path");
  prove_cmd->add_option("--crl", pr.crl, "CRL file instead of <pki>/crl.der");
  prove_cmd->add_flag("--crl-tree", pr.crl_tree,
                      "Prove non-membership in the sorted tree of the CRL");
  prove_cmd->add_option("--ca-leaf", pr.ca_leaves, "CA whitelist, in order");
  prove_cmd->add_option("--out", pr.out, "Proof bundle file");
  prove_cmd->add_option("--witness-out", pr.witness_out, "Also write the witness");

  std::string witness_file;
  auto* eval_cmd = app.add_subcommand("evaluate", "Evaluate a witness file");
  eval_cmd->add_option("--witness", witness_file)->required();

  std::vector<double> populations;
  auto* me_cmd = app.add_subcommand("min-entropy", "CA anonymity-set min-entropy");
  me_cmd->add_option("populations", populations, "User count per CA")->required();

  RegistryArgs ra;
  auto* reg_cmd = app.add_subcommand("registry", "Drive the persisted registry");
  reg_cmd->require_subcommand(1);
  reg_cmd->fallthrough();
  reg_cmd->add_option("--state", ra.state,
                      std::string("State file (default $") + kStateEnvVar +
                          " or " + kDefaultStatePath + ")");

  auto* r_new = reg_cmd->add_subcommand("new", "Create a registry");
  r_new->add_option("--owner", ra.owner)->required();
  r_new->add_option("--self-address", ra.self_address)->required();
  r_new->add_option("--chain-id", ra.chain_id);
  r_new->add_option("--max-wallets", ra.max_wallets);
  r_new->add_option("--min-disclosure-mask", ra.min_disclosure_mask);
  r_new->add_option("--vkey", ra.vkey);
  r_new->add_option("--clock", ra.clock);
  r_new->add_option("--ca", ra.cas, "Initial CA leaf hashes");
  r_new->add_option("--ca-pki", ra.ca_pkis, "Whitelist the root of a fixture dir");
  r_new->add_flag("--force", ra.force);

  auto add_sender = [&](CLI::App* c) {
    c->add_option("--sender", ra.sender)->required();
    return c;
  };
  auto* r_reg = add_sender(reg_cmd->add_subcommand("register", "register()"));
  r_reg->add_option("--bundle", ra.bundle)->required();
  auto* r_rereg = add_sender(reg_cmd->add_subcommand("re-register", "reRegister()"));
  r_rereg->add_option("--bundle", ra.bundle)->required();
  auto* r_add = add_sender(reg_cmd->add_subcommand("add-ca", "addCA()/addCAs()"));
  r_add->add_option("--ca", ra.cas);
  r_add->add_option("--pki", ra.ca_pkis);
  auto* r_rm = add_sender(reg_cmd->add_subcommand("remove-ca", "removeCA()"));
  r_rm->add_option("--index", ra.index)->required();
  auto* r_rev = add_sender(reg_cmd->add_subcommand("revoke", "revokeIdentity()"));
  r_rev->add_option("--nullifier", ra.nullifier)->required();
  r_rev->add_option("--reason", ra.reason);
  auto* r_age = add_sender(reg_cmd->add_subcommand("set-proof-age", "setMaxProofAge()"));
  r_age->add_option("--seconds", ra.seconds)->required();
  auto* r_pause = add_sender(reg_cmd->add_subcommand("pause", "pause()"));
  auto* r_unpause = add_sender(reg_cmd->add_subcommand("unpause", "unpause()"));
  auto* r_crl = add_sender(
      reg_cmd->add_subcommand("update-crl-root", "updateCrlMerkleRoot()"));
  r_crl->add_option("--root", ra.root);
  r_crl->add_option("--crl", ra.crl, "Compute the root from a CRL file");
  auto* r_ca_root = add_sender(
      reg_cmd->add_subcommand("update-ca-root", "updateCaMerkleRoot()"));
  r_ca_root->add_option("--root", ra.root)->required();
  auto* r_xfer = add_sender(
      reg_cmd->add_subcommand("transfer-ownership", "transferOwnership()"));
  r_xfer->add_option("--to", ra.to)->required();
  auto* r_accept = add_sender(
      reg_cmd->add_subcommand("accept-ownership", "acceptOwnership()"));
  auto* r_status = reg_cmd->add_subcommand("status", "Show state");
  r_status->add_option("--address", ra.address);
  auto* r_clock = reg_cmd->add_subcommand("advance-clock", "Move the logical clock");
  r_clock->add_option("--by", ra.by);
  r_clock->add_option("--to", ra.to_time);

  std::vector<const char*> argv{"zkx509"};
  for (const std::string& s : args) argv.push_back(s.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    bool wants_json =
        std::find(args.begin(), args.end(), "--json") != args.end();
    if (!wants_json) {
      app.exit(e, out, err);
      return exit_code::kUsage;
    }
    app.exit(e, err, err);
    Reporter(true, out, err)
        .fail(CliFailure(exit_code::kUsage, "Usage", e.what()));
    return exit_code::kUsage;
  }

  Reporter rep(json_mode, out, err);
  try {
    if (*gen_cmd) {
      cmd_gen_pki(gen, rep);
    } else if (*prove_cmd) {
      cmd_prove(pr, rep);
    } else if (*eval_cmd) {
      cmd_evaluate(witness_file, rep);
    } else if (*me_cmd) {
      cmd_min_entropy(populations, rep);
    } else if (*reg_cmd) {
      fs::path path = state_path(ra.state);
      auto sender = [&] { return parse_address(ra.sender, "sender"); };
      if (*r_new) {
        cmd_registry_new(ra, rep);
      } else if (*r_status) {
        cmd_status(path, ra.address, rep);
      } else if (*r_clock) {
        cmd_advance_clock(ra, rep);
      } else if (*r_reg || *r_rereg) {
        BundleDocument b = load_bundle(ra.bundle);
        bool fresh = r_reg->parsed();
        registry_op(path, fresh ? "register" : "re-register", sender(), rep,
                    [&](RegistryState& s, const Address& who, uint64_t now) {
                      if (fresh) {
                        register_identity(s, who, now, b.encoded_public_values, b.token);
                      } else {
                        re_register(s, who, now, b.encoded_public_values, b.token);
                      }
                    });
      } else if (*r_add) {
        std::vector<Hash32> leaves;
        for (const std::string& h : ra.cas) leaves.push_back(parse_hash(h, "ca"));
        for (const std::string& d : ra.ca_pkis) leaves.push_back(ca_leaf_of_pki(d));
        if (leaves.empty()) bad_input("add-ca needs --ca or --pki");
        registry_op(path, "add-ca", sender(), rep,
                    [&](RegistryState& s, const Address& who, uint64_t now) {
                      if (leaves.size() == 1) {
                        add_ca(s, who, now, leaves.front());
                      } else {
                        add_cas(s, who, now, leaves);
                      }
                    });
      } else if (*r_rm) {
        registry_op(path, "remove-ca", sender(), rep,
                    [&](RegistryState& s, const Address& who, uint64_t now) {
                      remove_ca(s, who, now, ra.index);
                    });
      } else if (*r_rev) {
        Hash32 n = parse_hash(ra.nullifier, "nullifier");
        Hash32 reason = ra.reason.empty() ? kZeroHash : parse_hash(ra.reason, "reason");
        registry_op(path, "revoke", sender(), rep,
                    [&](RegistryState& s, const Address& who, uint64_t now) {
                      revoke_identity(s, who, now, n, reason);
                    });
      } else if (*r_age) {
        registry_op(path, "set-proof-age", sender(), rep,
                    [&](RegistryState& s, const Address& who, uint64_t now) {
                      set_max_proof_age(s, who, now, ra.seconds);
                    });
      } else if (*r_pause || *r_unpause) {
        bool halt = r_pause->parsed();
        registry_op(path, halt ? "pause" : "unpause", sender(), rep,
                    [&](RegistryState& s, const Address& who, uint64_t now) {
                      halt ? pause(s, who, now) : unpause(s, who, now);
                    });
      } else if (*r_crl) {
        Hash32 root{};
        if (!ra.root.empty() == !ra.crl.empty()) {
          bad_input("update-crl-root needs exactly one of --root or --crl");
        }
        if (!ra.root.empty()) {
          root = parse_hash(ra.root, "root");
        } else {
          try {
            root = CrlSortedTree::build(parse_crl(read_file(ra.crl)).revoked_serials)
                       .root();
          } catch (const PkixError& e) {
            throw CliFailure(exit_code::kMalformedPki, "MalformedPki", e.what());
          }
        }
        registry_op(path, "update-crl-root", sender(), rep,
                    [&](RegistryState& s, const Address& who, uint64_t now) {
                      update_crl_merkle_root(s, who, now, root);
                    });
      } else if (*r_ca_root) {
        Hash32 root = parse_hash(ra.root, "root");
        registry_op(path, "update-ca-root", sender(), rep,
                    [&](RegistryState& s, const Address& who, uint64_t now) {
                      update_ca_merkle_root(s, who, now, root);
                    });
      } else if (*r_xfer) {
        Address to = parse_address(ra.to, "to");
        registry_op(path, "transfer-ownership", sender(), rep,
                    [&](RegistryState& s, const Address& who, uint64_t now) {
                      transfer_ownership(s, who, now, to);
                    });
      } else if (*r_accept) {
        registry_op(path, "accept-ownership", sender(), rep,
                    [&](RegistryState& s, const Address& who, uint64_t now) {
                      accept_ownership(s, who, now);
                    });
      }
    }
    return exit_code::kOk;
  } catch (const CliFailure& f) {
    return rep.fail(f);
  } catch (const std::exception& e) {
    return rep.fail(CliFailure(exit_code::kInternal, "Internal", e.what()));
  }
}

}  // namespace

int exit_code_for(StatementErrc code) {
  return exit_code::kStatementBase + static_cast<int>(code);
}

int exit_code_for(RegistryErrc code) {
  return exit_code::kRegistryBase + static_cast<int>(code);
}

std::vector<ExitCodeEntry> exit_code_table() {
  std::vector<ExitCodeEntry> t = {
      {exit_code::kOk, "Ok"},
      {exit_code::kInternal, "Internal"},
      {exit_code::kUsage, "Usage"},
      {exit_code::kBadInput, "BadInput"},
      {exit_code::kStateFile, "StateFile"},
      {exit_code::kNotWhitelisted, "NotWhitelisted"},
      {exit_code::kSerialInCrlTree, "SerialInCrlTree"},
      {exit_code::kMalformedPki, "MalformedPki"},
      {exit_code::kBadPopulation, "BadPopulation"},
  };
  for (int i = 0; i <= static_cast<int>(StatementErrc::kCrlNonMembershipInvalid); ++i) {
    auto c = static_cast<StatementErrc>(i);
    t.push_back({exit_code_for(c), to_string(c)});
  }
  for (RegistryErrc c : kAllRegistryErrors) t.push_back({exit_code_for(c), to_string(c)});
  return t;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  return dispatch(args, out, err);
}

int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return dispatch(args, out, err);
}

}  // namespace zkx509::cli
