#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "fc/bytes.hpp"

namespace fc::crypto {

using PublicKey = std::array<std::uint8_t, 32>;
using Signature = std::array<std::uint8_t, 64>;

Hash32 sha256(ByteView data);

/// Deterministic Ed25519 test key. The 32-byte secret seed is
/// SHA-256(LEB128(seed)), so `keygen --seed N` is reproducible everywhere.
class KeyPair {
public:
  static KeyPair from_seed(std::uint64_t seed);
  static KeyPair from_secret_seed(const Hash32& secret_seed);

  const PublicKey& public_key() const { return pk_; }
  const Hash32& secret_seed() const { return seed_; }
  Signature sign(ByteView message) const;

private:
  Hash32 seed_{};
  PublicKey pk_{};
  std::array<std::uint8_t, 64> sk_{};
};

bool verify(const PublicKey& pk, ByteView message, const Signature& sig);

/// One detached signature check for the batch verifiers.
struct SigCheck {
  PublicKey pk;
  Hash32 message;
  Signature sig;
};

/// Serial reference verifier.
std::vector<std::uint8_t> verify_batch_serial(std::span<const SigCheck> checks);

/// OpenMP verifier; result is element-wise identical to the serial one.
std::vector<std::uint8_t> verify_batch(std::span<const SigCheck> checks);

}  // namespace fc::crypto
