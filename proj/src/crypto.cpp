#include "fc/crypto.hpp"

#include <sodium.h>

#include <mutex>
#include <stdexcept>

namespace fc::crypto {

namespace {
void ensure_init() {
  static std::once_flag once;
  std::call_once(once, [] {
    if (sodium_init() < 0) throw std::runtime_error("libsodium initialisation failed");
  });
}
}  // namespace

Hash32 sha256(ByteView data) {
  Hash32 out{};
  crypto_hash_sha256(out.data(), data.data(), data.size());
  return out;
}

KeyPair KeyPair::from_seed(std::uint64_t seed) {
  ByteWriter w;
  w.leb(seed);
  return from_secret_seed(sha256(w.bytes()));
}

KeyPair KeyPair::from_secret_seed(const Hash32& secret_seed) {
  ensure_init();
  KeyPair kp;
  kp.seed_ = secret_seed;
  crypto_sign_seed_keypair(kp.pk_.data(), kp.sk_.data(), secret_seed.data());
  return kp;
}

Signature KeyPair::sign(ByteView message) const {
  Signature sig{};
  crypto_sign_detached(sig.data(), nullptr, message.data(), message.size(), sk_.data());
  return sig;
}

bool verify(const PublicKey& pk, ByteView message, const Signature& sig) {
  ensure_init();
  return crypto_sign_verify_detached(sig.data(), message.data(), message.size(), pk.data()) == 0;
}

std::vector<std::uint8_t> verify_batch_serial(std::span<const SigCheck> checks) {
  std::vector<std::uint8_t> ok(checks.size(), 0);
  for (std::size_t i = 0; i < checks.size(); ++i) {
    const auto& c = checks[i];
    ok[i] = verify(c.pk, ByteView(c.message.data(), c.message.size()), c.sig) ? 1 : 0;
  }
  return ok;
}

std::vector<std::uint8_t> verify_batch(std::span<const SigCheck> checks) {
  ensure_init();
  std::vector<std::uint8_t> ok(checks.size(), 0);
  const auto n = static_cast<std::int64_t>(checks.size());
#pragma omp parallel for schedule(static) if (n > 16)
  for (std::int64_t i = 0; i < n; ++i) {
    const auto& c = checks[static_cast<std::size_t>(i)];
    ok[static_cast<std::size_t>(i)] =
        crypto_sign_verify_detached(c.sig.data(), c.message.data(), c.message.size(), c.pk.data()) == 0;
  }
  return ok;
}

}  // namespace fc::crypto
