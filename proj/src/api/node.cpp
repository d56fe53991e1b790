#include "fc/api/node.hpp"

namespace fc::api {

using namespace ledger;

Node::Node(const ChainParams& params, NodeOptions opts) : params_(params), tree_(params), index_(tree_, opts.refresh) {
  if (opts.store) {
    store_ = std::make_unique<BlockStore>(*opts.store);
    for (const auto& b : store_->load_all()) submit_locked(b, false);
  }
  if (opts.refresh.rebuild_interval.count() > 0)
    index_.start_timer([this](const std::function<void(const ChainTree&)>& f) {
      std::lock_guard lock(mu_);
      f(tree_);
    });
}

Node::~Node() { index_.stop_timer(); }

SubmitResult Node::submit_locked(const Block& b, bool store) {
  auto r = tree_.submit(b);
  if (store && store_ && r.outcome != SubmitOutcome::Duplicate) store_->append(b);
  index_.on_events(r.events);
  for (const auto& ev : r.events)
    if (ev.kind == ChainEvent::Connect) mempool_.remove_included(*ev.node->block);
  return r;
}

SubmitResult Node::submit_block(const Block& b) {
  std::lock_guard lock(mu_);
  return submit_locked(b, true);
}

TxEffect Node::submit_tx(const Tx& tx) {
  std::lock_guard lock(mu_);
  return mempool_.add(*tree_.tip_state(), tx);
}

SubmitResult Node::produce(const crypto::KeyPair& producer, std::optional<std::uint64_t> timestamp) {
  std::lock_guard lock(mu_);
  const auto& tip = *tree_.tip_state();
  BlockBuilder bb(tip);
  for (const auto& tx : mempool_.select(tip)) {
    try {
      bb.add(tx);
    } catch (const TxError&) {
    }
  }
  return submit_locked(bb.finish(producer, timestamp), true);
}

}  // namespace fc::api
