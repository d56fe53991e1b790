#pragma once

// Transaction and block construction for wallets, scenarios and tests.
// Builders pick inputs deterministically (ascending asset id) and return
// change to the sender.

#include <optional>

#include "fc/ledger/state.hpp"

namespace fc::ledger {

class BuildError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Live Currency assets controlled by `key`, ascending by id.
std::vector<const Asset*> spendable(const ChainState& st, const PublicKey& key);
std::uint64_t balance(const ChainState& st, const Addr& a);

Tx make_transfer(const ChainState& st, const crypto::KeyPair& from, const Addr& to, std::uint64_t amount,
                 std::uint64_t fee = 0);
Tx make_bounty(const ChainState& st, const crypto::KeyPair& from, const Addr& prop, std::uint64_t amount,
               std::uint64_t fee = 0);
/// Commits to `doc` (to be published by `from`); costs `fee`, which must be > 0
/// since every transaction needs an input.
Tx make_marker(const ChainState& st, const crypto::KeyPair& from, const docform::Document& doc,
               std::uint64_t fee);
Tx make_theory_pub(const ChainState& st, const crypto::KeyPair& from, const docform::TheorySpec& spec,
                   std::uint64_t fee);
/// Publishes `doc`, consuming the matching marker of `from`; the outputs are
/// the ones validate_tx expects at `st`.
Tx make_doc_pub(const ChainState& st, const crypto::KeyPair& from, const docform::Document& doc,
                std::uint64_t fee = 0);
/// Spends every bounty at `prop` into a Currency output for `from`.
Tx make_collect(const ChainState& st, const crypto::KeyPair& from, const Addr& prop, std::uint64_t fee = 0);

/// Coinbase for a block at `height` on top of `parent`: the subsidy to
/// `payee`, less the automatic bounty where one is due.
Tx make_coinbase(const ChainParams& p, std::uint64_t height, const BlockHash& parent, const Addr& payee);

/// Accumulates transactions for the next block; each one is validated
/// against the state left by the previous ones, so later transactions can
/// spend earlier outputs.
class BlockBuilder {
public:
  explicit BlockBuilder(const ChainState& parent);
  /// State after the transactions added so far (coinbase excluded).
  const ChainState& view() const { return view_; }
  std::uint64_t height() const { return parent_.height + 1; }
  const TxEffect& add(Tx tx);
  const std::vector<Tx>& txs() const { return txs_; }
  Block finish(const crypto::KeyPair& producer, std::optional<std::uint64_t> timestamp = std::nullopt) const;

private:
  ChainState parent_;
  ChainState view_;
  std::vector<Tx> txs_;
  std::vector<TxEffect> effects_;
};

/// Assembles and signs a block on top of `parent`.
Block make_block(const ChainState& parent, const crypto::KeyPair& producer, std::vector<Tx> txs,
                 std::optional<std::uint64_t> timestamp = std::nullopt);
void sign_block(Block& b, const crypto::KeyPair& producer);

}  // namespace fc::ledger
