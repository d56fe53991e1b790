#pragma once

// A single node: block tree, mempool, explorer index and optional block
// store behind one lock. Writers are serialized; readers take the index
// snapshot or run under the lock.

#include <mutex>

#include "fc/indexer/index.hpp"
#include "fc/ledger/build.hpp"

namespace fc::api {

struct NodeOptions {
  std::optional<std::filesystem::path> store;  // replayed on open, appended on submit
  indexer::RefreshConfig refresh;
};

class Node {
public:
  explicit Node(const ledger::ChainParams& params, NodeOptions opts = {});
  ~Node();
  Node(const Node&) = delete;
  Node& operator=(const Node&) = delete;

  ledger::SubmitResult submit_block(const ledger::Block& b);
  /// Validates against the tip plus pending transactions and queues `tx`;
  /// throws TxError.
  ledger::TxEffect submit_tx(const ledger::Tx& tx);
  /// Builds, signs and submits a block with the pending transactions.
  ledger::SubmitResult produce(const crypto::KeyPair& producer, std::optional<std::uint64_t> timestamp = {});

  std::shared_ptr<const indexer::IndexSnapshot> snapshot() const { return index_.snapshot(); }
  const ledger::ChainParams& params() const { return params_; }

  template <class F>
  auto read(F&& f) const {
    std::lock_guard lock(mu_);
    return f(tree_, mempool_);
  }

private:
  ledger::SubmitResult submit_locked(const ledger::Block& b, bool store);

  ledger::ChainParams params_;
  mutable std::mutex mu_;
  ledger::ChainTree tree_;
  ledger::Mempool mempool_;
  indexer::Indexer index_;
  std::unique_ptr<ledger::BlockStore> store_;
};

}  // namespace fc::api
