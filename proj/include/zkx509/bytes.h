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

#ifndef ZKX509_BYTES_H_
#define ZKX509_BYTES_H_

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace zkx509 {

using Bytes = std::vector<uint8_t>;
using ByteView = std::span<const uint8_t>;

// Fixed-width byte strings. Hash32 carries SHA-256 digests and Merkle nodes;
// Address carries 20-byte account addresses.
using Hash32 = std::array<uint8_t, 32>;
using Address = std::array<uint8_t, 20>;

inline constexpr Hash32 kZeroHash{};
inline constexpr Address kZeroAddress{};

class HexError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Lowercase hex without prefix.
std::string to_hex(ByteView data);

// Lowercase hex with a "0x" prefix.
std::string to_hex0x(ByteView data);

// Accepts an optional "0x"/"0X" prefix and either case. Throws HexError on
// odd length or a non-hex digit.
Bytes from_hex(std::string_view text);

template <size_t N>
std::array<uint8_t, N> fixed_from_hex(std::string_view text) {
  Bytes raw = from_hex(text);
  if (raw.size() != N) {
    throw HexError("expected " + std::to_string(N) + " bytes, got " +
                   std::to_string(raw.size()));
  }
  std::array<uint8_t, N> out{};
  std::copy(raw.begin(), raw.end(), out.begin());
  return out;
}

inline Bytes to_bytes(std::string_view s) { return Bytes(s.begin(), s.end()); }

inline void append(Bytes& out, ByteView data) {
  out.insert(out.end(), data.begin(), data.end());
}

// Appends `value` as a `width`-byte big-endian integer.
inline void append_be(Bytes& out, uint64_t value, size_t width) {
  for (size_t i = width; i-- > 0;) {
    out.push_back(static_cast<uint8_t>(i >= 8 ? 0 : (value >> (8 * i)) & 0xff));
  }
}

inline Hash32 to_hash32(ByteView data) {
  if (data.size() != 32) throw std::invalid_argument("expected 32 bytes");
  Hash32 h{};
  std::copy(data.begin(), data.end(), h.begin());
  return h;
}

}  // namespace zkx509

#endif  // ZKX509_BYTES_H_
