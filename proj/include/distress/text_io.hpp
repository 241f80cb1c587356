// Copyright 2026 The Distress Authors.
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

#ifndef DISTRESS_TEXT_IO_HPP_
#define DISTRESS_TEXT_IO_HPP_

#include <cstdint>
#include <cstring>
#include <filesystem>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace distress {

// Escapes tab, newline, carriage return and backslash as \t, \n, \r, \\.
std::string escape_field(std::string_view raw);
std::string unescape_field(std::string_view escaped);

std::vector<std::string_view> split(std::string_view line, char sep);

// RFC 4180 style quoting when the field contains a comma, quote or newline.
std::string csv_field(std::string_view value);
// Splits one CSV line honoring double-quoted fields.
std::vector<std::string> parse_csv_line(std::string_view line);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view contents);

std::uint64_t fnv1a64(std::string_view bytes);
std::string hex64(std::uint64_t value);

// Little-endian binary writer/reader for model files.
class BinaryWriter {
 public:
  explicit BinaryWriter(std::ostream& out) : out_(out) {}

  void bytes(std::string_view data) { out_.write(data.data(), data.size()); }
  void u32(std::uint32_t v) { put_le(v); }
  void u64(std::uint64_t v) { put_le(v); }
  void i32(std::int32_t v) { put_le(static_cast<std::uint32_t>(v)); }
  void f32(float v) {
    std::uint32_t bits;
    std::memcpy(&bits, &v, sizeof bits);
    put_le(bits);
  }
  void f64(double v) {
    std::uint64_t bits;
    std::memcpy(&bits, &v, sizeof bits);
    put_le(bits);
  }
  void str(std::string_view s) {
    u32(static_cast<std::uint32_t>(s.size()));
    bytes(s);
  }
  void f32s(std::span<const float> values) {
    for (float v : values) f32(v);
  }
  void f64s(std::span<const double> values) {
    for (double v : values) f64(v);
  }

 private:
  template <typename U>
  void put_le(U v) {
    char buf[sizeof(U)];
    for (std::size_t i = 0; i < sizeof(U); ++i) {
      buf[i] = static_cast<char>((v >> (8 * i)) & 0xff);
    }
    out_.write(buf, sizeof(U));
  }

  std::ostream& out_;
};

class BinaryReader {
 public:
  explicit BinaryReader(std::istream& in) : in_(in) {}

  std::string bytes(std::size_t n);
  std::uint32_t u32() { return get_le<std::uint32_t>(); }
  std::uint64_t u64() { return get_le<std::uint64_t>(); }
  std::int32_t i32() { return static_cast<std::int32_t>(get_le<std::uint32_t>()); }
  float f32() {
    const auto bits = get_le<std::uint32_t>();
    float v;
    std::memcpy(&v, &bits, sizeof v);
    return v;
  }
  double f64() {
    const auto bits = get_le<std::uint64_t>();
    double v;
    std::memcpy(&v, &bits, sizeof v);
    return v;
  }
  std::string str();
  void f32s(std::span<float> out) {
    for (float& v : out) v = f32();
  }
  void f64s(std::span<double> out) {
    for (double& v : out) v = f64();
  }

 private:
  template <typename U>
  U get_le() {
    unsigned char buf[sizeof(U)];
    read_exact(reinterpret_cast<char*>(buf), sizeof(U));
    U v = 0;
    for (std::size_t i = 0; i < sizeof(U); ++i) v |= static_cast<U>(buf[i]) << (8 * i);
    return v;
  }
  void read_exact(char* dst, std::size_t n);

  std::istream& in_;
};

}  // namespace distress

#endif  // DISTRESS_TEXT_IO_HPP_
