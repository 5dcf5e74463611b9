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

// Minimal strict DER reader and writer. The reader never copies: every
// Element views into the caller's buffer, so the exact encoded bytes of any
// sub-structure (e.g. a TBSCertificate) can be recovered without
// re-serialization.

#ifndef ZKX509_DER_H_
#define ZKX509_DER_H_

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "zkx509/bytes.h"

namespace zkx509::der {

namespace tag {
inline constexpr uint8_t kBoolean = 0x01;
inline constexpr uint8_t kInteger = 0x02;
inline constexpr uint8_t kBitString = 0x03;
inline constexpr uint8_t kOctetString = 0x04;
inline constexpr uint8_t kNull = 0x05;
inline constexpr uint8_t kOid = 0x06;
inline constexpr uint8_t kUtf8String = 0x0c;
inline constexpr uint8_t kPrintableString = 0x13;
inline constexpr uint8_t kIa5String = 0x16;
inline constexpr uint8_t kUtcTime = 0x17;
inline constexpr uint8_t kGeneralizedTime = 0x18;
inline constexpr uint8_t kBmpString = 0x1e;
inline constexpr uint8_t kSequence = 0x30;
inline constexpr uint8_t kSet = 0x31;

constexpr uint8_t context(unsigned n, bool constructed) {
  return static_cast<uint8_t>(0x80 | (constructed ? 0x20 : 0) | (n & 0x1f));
}
}  // namespace tag

class DerError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Element {
  uint8_t tag = 0;
  ByteView value;    // contents octets
  ByteView encoded;  // full TLV
};

class Parser {
 public:
  explicit Parser(ByteView input) : rest_(input) {}

  bool empty() const { return rest_.empty(); }
  std::optional<uint8_t> peek_tag() const;

  Element read();
  Element read(uint8_t expected_tag);
  std::optional<Element> read_optional(uint8_t expected_tag);

  // Reads a constructed element of `expected_tag` and returns a parser over
  // its contents.
  Parser read_constructed(uint8_t expected_tag = tag::kSequence);

  void expect_end() const;

 private:
  ByteView rest_;
};

// Parses exactly one top-level element spanning all of `input`.
Element read_single(ByteView input);

// INTEGER contents with minimal-encoding validation. Returned bytes are the
// raw two's-complement contents.
ByteView integer_contents(const Element& e);
uint64_t read_uint64(const Element& e);

std::string decode_oid(const Element& e);

// BIT STRING with zero unused bits; returns the payload after the
// unused-bits octet.
ByteView bit_string_payload(const Element& e);

// UTCTime or GeneralizedTime ("...Z" forms only) to Unix seconds.
int64_t decode_time(const Element& e);

// --- writer -----------------------------------------------------------------

Bytes tlv(uint8_t tag, ByteView content);
Bytes sequence(const std::vector<Bytes>& children);
Bytes set(const std::vector<Bytes>& children);
Bytes explicit_context(unsigned n, ByteView inner);

// Unsigned big-endian magnitude; leading zeros are trimmed and a 0x00 sign
// byte is inserted when needed.
Bytes integer(ByteView magnitude);
Bytes integer(uint64_t value);
Bytes oid(std::string_view dotted);
Bytes bit_string(ByteView payload);
Bytes null_value();
Bytes octet_string(ByteView content);
Bytes boolean(bool value);
Bytes printable_string(std::string_view s);
Bytes utf8_string(std::string_view s);

// UTCTime for 1950..2049, GeneralizedTime otherwise.
Bytes time(int64_t unix_seconds);

}  // namespace zkx509::der

#endif  // ZKX509_DER_H_
