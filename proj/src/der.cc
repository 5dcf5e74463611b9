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

#include "zkx509/der.h"

#include <charconv>
#include <chrono>
#include <cstdio>

namespace zkx509::der {

namespace {

std::string tag_name(uint8_t t) {
  static constexpr char kDigits[] = "0123456789abcdef";
  return std::string("0x") + kDigits[t >> 4] + kDigits[t & 0xf];
}

Bytes encode_length(size_t len) {
  Bytes out;
  if (len < 0x80) {
    out.push_back(static_cast<uint8_t>(len));
    return out;
  }
  Bytes be;
  while (len > 0) {
    be.insert(be.begin(), static_cast<uint8_t>(len & 0xff));
    len >>= 8;
  }
  out.push_back(static_cast<uint8_t>(0x80 | be.size()));
  append(out, be);
  return out;
}

int digits(std::string_view s, size_t pos, size_t n) {
  int v = 0;
  for (size_t i = pos; i < pos + n; ++i) {
    if (s[i] < '0' || s[i] > '9') throw DerError("non-digit in time value");
    v = v * 10 + (s[i] - '0');
  }
  return v;
}

int64_t civil_to_unix(int y, int mo, int d, int h, int mi, int sec) {
  using namespace std::chrono;
  year_month_day ymd{year{y}, month{static_cast<unsigned>(mo)},
                     day{static_cast<unsigned>(d)}};
  if (!ymd.ok() || h > 23 || mi > 59 || sec > 59) {
    throw DerError("time value out of range");
  }
  return sys_days{ymd}.time_since_epoch().count() * 86400LL + h * 3600LL +
         mi * 60LL + sec;
}

}  // namespace

std::optional<uint8_t> Parser::peek_tag() const {
  if (rest_.empty()) return std::nullopt;
  return rest_[0];
}

Element Parser::read() {
  if (rest_.size() < 2) throw DerError("truncated element header");
  Element e;
  e.tag = rest_[0];
  if ((e.tag & 0x1f) == 0x1f) throw DerError("high tag numbers unsupported");
  size_t pos = 1;
  size_t len = rest_[pos++];
  if (len == 0x80) throw DerError("indefinite length is not DER");
  if (len & 0x80) {
    size_t n = len & 0x7f;
    if (n > sizeof(size_t) || n > 4) throw DerError("length too large");
    if (rest_.size() < pos + n) throw DerError("truncated length");
    if (rest_[pos] == 0) throw DerError("non-minimal length");
    len = 0;
    for (size_t i = 0; i < n; ++i) len = (len << 8) | rest_[pos++];
    if (len < 0x80) throw DerError("non-minimal length");
  }
  if (rest_.size() - pos < len) throw DerError("truncated contents");
  e.value = rest_.subspan(pos, len);
  e.encoded = rest_.subspan(0, pos + len);
  rest_ = rest_.subspan(pos + len);
  return e;
}

Element Parser::read(uint8_t expected_tag) {
  auto t = peek_tag();
  if (!t) throw DerError("expected " + tag_name(expected_tag) + ", got end");
  if (*t != expected_tag) {
    throw DerError("expected " + tag_name(expected_tag) + ", got " +
                   tag_name(*t));
  }
  return read();
}

std::optional<Element> Parser::read_optional(uint8_t expected_tag) {
  if (peek_tag() != expected_tag) return std::nullopt;
  return read();
}

Parser Parser::read_constructed(uint8_t expected_tag) {
  return Parser(read(expected_tag).value);
}

void Parser::expect_end() const {
  if (!rest_.empty()) throw DerError("trailing data");
}

Element read_single(ByteView input) {
  Parser p(input);
  Element e = p.read();
  p.expect_end();
  return e;
}

ByteView integer_contents(const Element& e) {
  if (e.tag != tag::kInteger) throw DerError("expected INTEGER");
  if (e.value.empty()) throw DerError("empty INTEGER");
  if (e.value.size() > 1) {
    if ((e.value[0] == 0x00 && !(e.value[1] & 0x80)) ||
        (e.value[0] == 0xff && (e.value[1] & 0x80))) {
      throw DerError("non-minimal INTEGER");
    }
  }
  return e.value;
}

uint64_t read_uint64(const Element& e) {
  ByteView v = integer_contents(e);
  if (v[0] & 0x80) throw DerError("negative INTEGER");
  if (v[0] == 0) v = v.subspan(1);
  if (v.size() > 8) throw DerError("INTEGER too large");
  uint64_t out = 0;
  for (uint8_t b : v) out = (out << 8) | b;
  return out;
}

std::string decode_oid(const Element& e) {
  if (e.tag != tag::kOid) throw DerError("expected OBJECT IDENTIFIER");
  if (e.value.empty()) throw DerError("empty OID");
  std::vector<uint64_t> arcs;
  uint64_t acc = 0;
  bool in_arc = false;
  for (uint8_t b : e.value) {
    if (!in_arc && b == 0x80) throw DerError("non-minimal OID arc");
    if (acc > (UINT64_MAX >> 7)) throw DerError("OID arc overflow");
    acc = (acc << 7) | (b & 0x7f);
    in_arc = true;
    if (!(b & 0x80)) {
      arcs.push_back(acc);
      acc = 0;
      in_arc = false;
    }
  }
  if (in_arc) throw DerError("truncated OID arc");
  uint64_t first = arcs[0];
  std::string out;
  if (first < 40) {
    out = "0." + std::to_string(first);
  } else if (first < 80) {
    out = "1." + std::to_string(first - 40);
  } else {
    out = "2." + std::to_string(first - 80);
  }
  for (size_t i = 1; i < arcs.size(); ++i) out += "." + std::to_string(arcs[i]);
  return out;
}

ByteView bit_string_payload(const Element& e) {
  if (e.tag != tag::kBitString) throw DerError("expected BIT STRING");
  if (e.value.empty()) throw DerError("empty BIT STRING");
  if (e.value[0] != 0) throw DerError("BIT STRING with unused bits");
  return e.value.subspan(1);
}

int64_t decode_time(const Element& e) {
  std::string_view s(reinterpret_cast<const char*>(e.value.data()),
                     e.value.size());
  int year = 0;
  size_t pos = 0;
  if (e.tag == tag::kUtcTime) {
    if (s.size() != 13 || s.back() != 'Z') throw DerError("bad UTCTime");
    int yy = digits(s, 0, 2);
    year = yy < 50 ? 2000 + yy : 1900 + yy;
    pos = 2;
  } else if (e.tag == tag::kGeneralizedTime) {
    if (s.size() != 15 || s.back() != 'Z') {
      throw DerError("bad GeneralizedTime");
    }
    year = digits(s, 0, 4);
    pos = 4;
  } else {
    throw DerError("expected UTCTime or GeneralizedTime");
  }
  return civil_to_unix(year, digits(s, pos, 2), digits(s, pos + 2, 2),
                       digits(s, pos + 4, 2), digits(s, pos + 6, 2),
                       digits(s, pos + 8, 2));
}

Bytes tlv(uint8_t t, ByteView content) {
  Bytes out{t};
  append(out, encode_length(content.size()));
  append(out, content);
  return out;
}

Bytes sequence(const std::vector<Bytes>& children) {
  Bytes body;
  for (const auto& c : children) append(body, c);
  return tlv(tag::kSequence, body);
}

Bytes set(const std::vector<Bytes>& children) {
  Bytes body;
  for (const auto& c : children) append(body, c);
  return tlv(tag::kSet, body);
}

Bytes explicit_context(unsigned n, ByteView inner) {
  return tlv(tag::context(n, true), inner);
}

Bytes integer(ByteView magnitude) {
  size_t i = 0;
  while (i + 1 < magnitude.size() && magnitude[i] == 0) ++i;
  Bytes body;
  if (magnitude.empty()) {
    body.push_back(0);
  } else {
    if (magnitude[i] & 0x80) body.push_back(0);
    body.insert(body.end(), magnitude.begin() + i, magnitude.end());
  }
  return tlv(tag::kInteger, body);
}

Bytes integer(uint64_t value) {
  Bytes be;
  append_be(be, value, 8);
  return integer(be);
}

Bytes oid(std::string_view dotted) {
  std::vector<uint64_t> arcs;
  while (!dotted.empty()) {
    size_t dot = dotted.find('.');
    std::string_view part = dotted.substr(0, dot);
    uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
    if (ec != std::errc() || ptr != part.data() + part.size()) {
      throw DerError("bad OID text");
    }
    arcs.push_back(v);
    if (dot == std::string_view::npos) break;
    dotted.remove_prefix(dot + 1);
  }
  if (arcs.size() < 2) throw DerError("OID needs at least two arcs");
  Bytes body;
  auto put = [&body](uint64_t v) {
    Bytes rev{static_cast<uint8_t>(v & 0x7f)};
    v >>= 7;
    while (v > 0) {
      rev.push_back(static_cast<uint8_t>(0x80 | (v & 0x7f)));
      v >>= 7;
    }
    body.insert(body.end(), rev.rbegin(), rev.rend());
  };
  put(arcs[0] * 40 + arcs[1]);
  for (size_t i = 2; i < arcs.size(); ++i) put(arcs[i]);
  return tlv(tag::kOid, body);
}

Bytes bit_string(ByteView payload) {
  Bytes body{0};
  append(body, payload);
  return tlv(tag::kBitString, body);
}

Bytes null_value() { return {tag::kNull, 0}; }

Bytes octet_string(ByteView content) { return tlv(tag::kOctetString, content); }

Bytes boolean(bool value) {
  return {tag::kBoolean, 1, static_cast<uint8_t>(value ? 0xff : 0x00)};
}

Bytes printable_string(std::string_view s) {
  return tlv(tag::kPrintableString, to_bytes(s));
}

Bytes utf8_string(std::string_view s) {
  return tlv(tag::kUtf8String, to_bytes(s));
}

Bytes time(int64_t unix_seconds) {
  using namespace std::chrono;
  sys_seconds tp{seconds{unix_seconds}};
  sys_days day_point = floor<days>(tp);
  year_month_day ymd{day_point};
  hh_mm_ss hms{tp - day_point};
  int y = static_cast<int>(ymd.year());
  if (y < 0 || y > 9999) throw DerError("year out of range");
  char buf[32];
  bool utc = y >= 1950 && y < 2050;
  int n = std::snprintf(buf, sizeof(buf),
                        utc ? "%02d%02u%02u%02ld%02ld%02ldZ"
                            : "%04d%02u%02u%02ld%02ld%02ldZ",
                        utc ? y % 100 : y, static_cast<unsigned>(ymd.month()),
                        static_cast<unsigned>(ymd.day()),
                        static_cast<long>(hms.hours().count()),
                        static_cast<long>(hms.minutes().count()),
                        static_cast<long>(hms.seconds().count()));
  return tlv(utc ? tag::kUtcTime : tag::kGeneralizedTime,
             ByteView(reinterpret_cast<const uint8_t*>(buf),
                      static_cast<size_t>(n)));
}

}  // namespace zkx509::der
