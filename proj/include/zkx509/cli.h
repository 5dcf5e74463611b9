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

// The zkx509 command line, callable in-process.
//
//   zkx509 gen-pki --depth 3 --alg rsa2048 --seed 42 --out ./pki
//   zkx509 prove --pki ./pki --registrant 0x.. --registry state.json --out p.json
//   zkx509 registry register --bundle p.json --sender 0x..
//   zkx509 min-entropy 20 1.3 46
//
// With --json, stdout carries exactly one JSON document, including on
// failure. Every failure kind has its own exit code (see exit_code_table()).

#ifndef ZKX509_CLI_H_
#define ZKX509_CLI_H_

#include <ostream>
#include <string>
#include <vector>

#include "zkx509/registry.h"
#include "zkx509/statement.h"

namespace zkx509::cli {

inline constexpr char kStateEnvVar[] = "ZKX509_STATE";
inline constexpr char kDefaultStatePath[] = "registry.json";

namespace exit_code {
inline constexpr int kOk = 0;
inline constexpr int kInternal = 1;
inline constexpr int kUsage = 2;
inline constexpr int kBadInput = 3;      // unreadable file, bad JSON, bad spec
inline constexpr int kStateFile = 4;     // missing, existing, or locked state
inline constexpr int kNotWhitelisted = 5;  // prove: root not in the CA list
inline constexpr int kSerialInCrlTree = 6;  // prove: user serial is revoked
inline constexpr int kMalformedPki = 7;  // prove: PKI inputs do not parse
inline constexpr int kBadPopulation = 8;
inline constexpr int kStatementBase = 10;  // + StatementErrc
inline constexpr int kRegistryBase = 30;   // + RegistryErrc
}  // namespace exit_code

int exit_code_for(StatementErrc code);
int exit_code_for(RegistryErrc code);

struct ExitCodeEntry {
  int code;
  std::string name;
};

// Every exit code the CLI can return, with its error name.
std::vector<ExitCodeEntry> exit_code_table();

int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err);
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace zkx509::cli

#endif  // ZKX509_CLI_H_
