#include "fc/bytes.hpp"

namespace fc {

namespace {
constexpr char kHexDigits[] = "0123456789abcdef";

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}
}  // namespace

std::string to_hex(ByteView bytes) {
  std::string out;
  out.reserve(bytes.size() * 2);
  for (auto b : bytes) {
    out.push_back(kHexDigits[b >> 4]);
    out.push_back(kHexDigits[b & 0xf]);
  }
  return out;
}

Bytes from_hex(std::string_view hex) {
  if (hex.size() % 2 != 0) throw DecodeError("odd-length hex string");
  Bytes out;
  out.reserve(hex.size() / 2);
  for (std::size_t i = 0; i < hex.size(); i += 2) {
    int hi = hex_value(hex[i]);
    int lo = hex_value(hex[i + 1]);
    if (hi < 0 || lo < 0) throw DecodeError("invalid hex digit");
    out.push_back(static_cast<std::uint8_t>(hi << 4 | lo));
  }
  return out;
}

Hash32 hash_from_hex(std::string_view hex) {
  if (hex.size() != 64) throw DecodeError("expected 64 hex digits");
  auto b = from_hex(hex);
  Hash32 h{};
  std::copy(b.begin(), b.end(), h.begin());
  return h;
}

void ByteWriter::leb(std::uint64_t v) {
  do {
    std::uint8_t byte = v & 0x7f;
    v >>= 7;
    if (v != 0) byte |= 0x80;
    buf_.push_back(byte);
  } while (v != 0);
}

std::uint8_t ByteReader::u8() {
  if (pos_ >= data_.size()) throw DecodeError("unexpected end of input");
  return data_[pos_++];
}

std::uint8_t ByteReader::peek() const {
  if (pos_ >= data_.size()) throw DecodeError("unexpected end of input");
  return data_[pos_];
}

std::uint64_t ByteReader::leb() {
  std::uint64_t v = 0;
  for (int shift = 0; shift < 64; shift += 7) {
    std::uint8_t b = u8();
    if (shift == 63 && (b & 0x7e) != 0) throw DecodeError("LEB128 overflow");
    v |= static_cast<std::uint64_t>(b & 0x7f) << shift;
    if ((b & 0x80) == 0) {
      // Canonical form only: no redundant trailing zero groups.
      if (b == 0 && shift != 0) throw DecodeError("non-canonical LEB128");
      return v;
    }
  }
  throw DecodeError("LEB128 too long");
}

ByteView ByteReader::raw(std::size_t n) {
  if (n > remaining()) throw DecodeError("unexpected end of input");
  auto v = data_.subspan(pos_, n);
  pos_ += n;
  return v;
}

Bytes ByteReader::blob() {
  auto n = leb();
  if (n > remaining()) throw DecodeError("blob length exceeds input");
  auto v = raw(static_cast<std::size_t>(n));
  return Bytes(v.begin(), v.end());
}

std::string ByteReader::str() {
  auto b = blob();
  return std::string(b.begin(), b.end());
}

void ByteReader::expect_done() const {
  if (!done()) throw DecodeError("trailing bytes after value");
}

}  // namespace fc
