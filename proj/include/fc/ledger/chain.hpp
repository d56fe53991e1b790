#pragma once

// Block tree with fork choice, orphan handling and reorg events, plus the
// append-only block store and a simple mempool.

#include <cstdio>
#include <deque>
#include <filesystem>
#include <map>
#include <memory>

#include "fc/ledger/state.hpp"

namespace fc::ledger {

enum class BlockStatus { Valid, Invalid, Orphan, Missing };

const char* block_status_name(BlockStatus s);

struct ChainNode {
  BlockHash hash{};
  std::optional<BlockHash> parent;  // unknown for Missing placeholders
  std::uint64_t height = 0;
  std::optional<Block> block;       // absent for Missing placeholders
  BlockStatus status = BlockStatus::Missing;
  NodeClass content = NodeClass::Plain;
  std::string reason;
  std::shared_ptr<const ChainState> state;  // Valid nodes only
  std::vector<TxEffect> effects;            // Valid nodes only
  std::vector<BlockHash> children;
  std::uint64_t seq = 0;

  /// Graph class: red and yellow override the content class.
  NodeClass cls() const;
};

struct ChainEvent {
  enum Kind { Connect, Disconnect } kind;
  const ChainNode* node;
};

struct GraphNode {
  BlockHash id{};
  std::optional<BlockHash> parent;
  std::uint64_t height = 0;
  NodeClass cls = NodeClass::Plain;
  std::string reason;
  bool main_chain = false;
};

/// Graphviz rendering of a graph() listing: one filled node per block in the
/// given order, colored by class, then the parent edges.
std::string graph_dot(const std::vector<GraphNode>& graph);

enum class SubmitOutcome { Accepted, Duplicate, Orphaned, Invalid };

const char* submit_outcome_name(SubmitOutcome o);

struct SubmitResult {
  SubmitOutcome outcome = SubmitOutcome::Accepted;
  BlockHash hash{};
  std::string reason;
  std::vector<ChainEvent> events;  // disconnects (old tip first), then connects
  bool tip_changed() const { return !events.empty(); }
};

class ChainTree {
public:
  static constexpr std::size_t kOrphanCapacity = 64;

  explicit ChainTree(const ChainParams& params);

  SubmitResult submit(const Block& b);

  const ChainParams& params() const { return *params_; }
  const BlockHash& genesis() const { return genesis_; }
  const BlockHash& tip() const { return tip_; }
  const ChainNode& tip_node() const { return *nodes_.at(tip_); }
  std::shared_ptr<const ChainState> tip_state() const { return tip_node().state; }
  const ChainNode* find(const BlockHash& h) const;
  bool contains_block(const BlockHash& h) const;
  std::size_t size() const { return nodes_.size(); }
  std::size_t orphan_count() const { return orphans_.size(); }

  /// Hashes from genesis to the tip.
  std::vector<BlockHash> main_chain() const;
  bool on_main_chain(const BlockHash& h) const;
  /// Every node in (height, hash) order.
  std::vector<GraphNode> graph() const;

private:
  ChainNode& attach(const Block& b, const BlockHash& h);
  void resolve(const BlockHash& h, std::vector<BlockHash>& accepted);
  void evict_orphans();
  void drop_placeholder_if_unused(const BlockHash& h);
  std::vector<ChainEvent> switch_tip(const BlockHash& new_tip);
  bool better(const ChainNode& a, const ChainNode& b) const;

  std::shared_ptr<const ChainParams> params_;
  std::map<BlockHash, std::unique_ptr<ChainNode>> nodes_;
  std::deque<BlockHash> orphans_;
  BlockHash genesis_{};
  BlockHash tip_{};
  std::uint64_t seq_ = 0;
};

/// Append-only block file (records: LEB length, block bytes) with an
/// in-memory hash -> offset index rebuilt on open.
class BlockStore {
public:
  explicit BlockStore(std::filesystem::path path);
  ~BlockStore();
  BlockStore(const BlockStore&) = delete;
  BlockStore& operator=(const BlockStore&) = delete;

  bool contains(const BlockHash& h) const { return index_.contains(h); }
  void append(const Block& b);
  std::optional<Block> get(const BlockHash& h) const;
  /// Every stored block in file order.
  std::vector<Block> load_all() const;
  std::size_t size() const { return index_.size(); }

private:
  std::filesystem::path path_;
  std::FILE* file_ = nullptr;
  std::map<BlockHash, std::uint64_t> index_;
};

/// Pending transactions in arrival order; admission runs validate_tx against
/// the tip state extended by the earlier pending transactions.
class Mempool {
public:
  TxEffect add(const ChainState& tip, const Tx& tx);
  /// Transactions still valid on `tip`, in order; invalid ones are dropped.
  std::vector<Tx> select(const ChainState& tip, std::size_t max = SIZE_MAX);
  void remove_included(const Block& b);
  bool contains(const TxId& id) const { return ids_.contains(id); }
  std::size_t size() const { return txs_.size(); }
  const std::vector<Tx>& txs() const { return txs_; }

private:
  std::vector<Tx> txs_;
  std::set<TxId> ids_;
};

}  // namespace fc::ledger
