#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace fc {

using Bytes = std::vector<std::uint8_t>;
using ByteView = std::span<const std::uint8_t>;

/// 256-bit digest. Ordered lexicographically, which is the tie-break order
/// used by fork choice and by every sorted listing.
using Hash32 = std::array<std::uint8_t, 32>;

class DecodeError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

std::string to_hex(ByteView bytes);
template <std::size_t N>
std::string to_hex(const std::array<std::uint8_t, N>& a) {
  return to_hex(ByteView(a.data(), a.size()));
}

Bytes from_hex(std::string_view hex);
Hash32 hash_from_hex(std::string_view hex);

/// Append-only encoder for the canonical byte formats.
class ByteWriter {
public:
  void u8(std::uint8_t v) { buf_.push_back(v); }
  void leb(std::uint64_t v);
  void raw(ByteView b) { buf_.insert(buf_.end(), b.begin(), b.end()); }
  template <std::size_t N>
  void raw(const std::array<std::uint8_t, N>& a) {
    buf_.insert(buf_.end(), a.begin(), a.end());
  }
  /// LEB128 length followed by the bytes.
  void blob(ByteView b) {
    leb(b.size());
    raw(b);
  }
  void str(std::string_view s) {
    leb(s.size());
    buf_.insert(buf_.end(), s.begin(), s.end());
  }

  const Bytes& bytes() const& { return buf_; }
  Bytes take() && { return std::move(buf_); }

private:
  Bytes buf_;
};

/// Bounds-checked decoder; every failure throws DecodeError.
class ByteReader {
public:
  explicit ByteReader(ByteView b) : data_(b) {}

  std::uint8_t u8();
  std::uint8_t peek() const;
  std::uint64_t leb();
  ByteView raw(std::size_t n);
  template <std::size_t N>
  std::array<std::uint8_t, N> fixed() {
    auto v = raw(N);
    std::array<std::uint8_t, N> out{};
    std::copy(v.begin(), v.end(), out.begin());
    return out;
  }
  Bytes blob();
  std::string str();

  bool done() const { return pos_ == data_.size(); }
  std::size_t remaining() const { return data_.size() - pos_; }
  void expect_done() const;

private:
  ByteView data_;
  std::size_t pos_ = 0;
};

}  // namespace fc
