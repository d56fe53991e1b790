#pragma once

// Explorer cache derived from the main chain. One value with named
// sub-maps; connect and disconnect update it incrementally and rebuild()
// recomputes it from genesis.

#include <chrono>
#include <condition_variable>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <thread>

#include "fc/ledger/chain.hpp"

namespace fc::indexer {

using ledger::Addr;
using ledger::AssetId;
using ledger::BlockHash;
using ledger::TxId;

enum class PubKind { Theory, Axiom, Def, Thm, Conj, Refutation };
const char* pub_kind_name(PubKind k);

struct Publication {
  PubKind kind = PubKind::Def;
  std::string name;
  std::string tag;  // Conj only
  TxId tx{};        // zero for the built-in theory
  BlockHash block{};
  std::uint64_t height = 0;
  std::optional<Addr> publisher;
  bool fresh = true;
  Hash32 doc{};
  friend bool operator==(const Publication&, const Publication&) = default;
};

/// A theory, object or proposition, keyed by its address in its theory.
struct Entity {
  Addr addr;
  Hash32 id{};
  kernel::TheoryId theory{};
  std::optional<kernel::Ty> ty;     // objects
  std::optional<kernel::Term> stmt;  // propositions
  std::vector<Hash32> deps;
  std::vector<Publication> pubs;     // chain order; the first one created the entity

  PubKind kind() const { return pubs.front().kind; }
  const std::string& name() const { return pubs.front().name; }
  /// conjecture, proven or disproven; empty for objects and theories.
  std::string status() const;
  /// Holder of the ownership minted by the first fresh publication.
  std::optional<Addr> owner() const;
  std::string tag() const;
  friend bool operator==(const Entity&, const Entity&) = default;
};

struct Collection {
  std::uint64_t height = 0;
  TxId tx{};
  BlockHash block{};
  Addr collector;
  bool by_disproof = false;
  friend bool operator==(const Collection&, const Collection&) = default;
};

struct BountyRecord {
  AssetId asset{};
  Addr addr;
  std::uint64_t amount = 0;
  std::uint64_t height = 0;
  TxId tx{};
  BlockHash block{};
  bool automatic = false;
  std::optional<Addr> placer;
  std::optional<kernel::Term> stmt;  // known for automatic bounties
  std::optional<Collection> collected;
  friend bool operator==(const BountyRecord&, const BountyRecord&) = default;
};

struct TxLocation {
  BlockHash block{};
  std::uint64_t height = 0;
  std::uint32_t index = 0;
  friend bool operator==(const TxLocation&, const TxLocation&) = default;
};

struct Stats {
  std::uint64_t height = 0;
  std::uint64_t address_count = 0;
  std::uint64_t tx_count = 0;   // non-coinbase transactions
  std::uint64_t tx_volume = 0;  // Currency outputs of non-coinbase transactions
  std::uint64_t coin_circulation = 0;
  std::uint64_t blocks = 0;
  friend bool operator==(const Stats&, const Stats&) = default;
};

struct IndexSnapshot {
  BlockHash tip{};
  std::map<Addr, Entity> entities;
  std::map<Hash32, std::set<Addr>> by_id;  // id -> addresses (one per theory)
  std::map<AssetId, BountyRecord> bounties;
  std::map<Addr, std::vector<Addr>> deps;  // entity -> referenced entities
  std::map<Addr, std::vector<Addr>> authorship;
  std::map<Addr, std::uint64_t> holdings;  // live asset count per address
  std::map<Addr, std::vector<TxId>> addr_txs;
  std::map<TxId, TxLocation> txs;
  Stats stats;

  const Entity* entity(const Addr& a) const;
  Bytes serialize() const;
  Hash32 digest() const;
  friend bool operator==(const IndexSnapshot&, const IndexSnapshot&) = default;
};

class InconsistentEvent : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

void apply_connect(IndexSnapshot& snap, const ledger::ChainNode& node);
void apply_disconnect(IndexSnapshot& snap, const ledger::ChainNode& node);
void apply_events(IndexSnapshot& snap, const std::vector<ledger::ChainEvent>& events);
/// Full scan of the main chain ending at `tip` (the tree's tip by default).
IndexSnapshot rebuild(const ledger::ChainTree& tree, std::optional<BlockHash> tip = std::nullopt);

struct OpenBounty {
  Addr addr;
  std::uint64_t amount = 0;  // sum of the open bounties at the address
  std::size_t count = 0;
  std::string tag;
};

struct CollectedBounty {
  Addr addr;
  AssetId asset{};
  std::uint64_t amount = 0;
  Collection collection;
  std::string tag;
};

struct CategoryTotals {
  std::uint64_t open = 0;
  std::uint64_t collected = 0;
};

struct BountyViews {
  std::vector<OpenBounty> highest_open;  // amount desc, then address asc
  std::vector<CollectedBounty> highest_collected;  // amount desc, then height, then asset
  std::map<std::string, CategoryTotals> categories;
};

BountyViews bounty_views(const IndexSnapshot& snap);
/// Category of the proposition at `a`: its conjecture tag, else "Other".
std::string category_of(const IndexSnapshot& snap, const Addr& a);

struct RefreshConfig {
  /// Full rebuild period; zero disables the timer (incremental only).
  std::chrono::milliseconds rebuild_interval{0};
};

/// Holds the current snapshot and swaps it atomically. Readers get an
/// immutable shared snapshot; writers are the chain events and the optional
/// rebuild timer.
class Indexer {
public:
  using TreeAccess = std::function<void(const std::function<void(const ledger::ChainTree&)>&)>;

  explicit Indexer(const ledger::ChainTree& tree, RefreshConfig cfg = {});
  ~Indexer();
  Indexer(const Indexer&) = delete;
  Indexer& operator=(const Indexer&) = delete;

  std::shared_ptr<const IndexSnapshot> snapshot() const;
  /// Incremental update; call with the events of each submit.
  void on_events(const std::vector<ledger::ChainEvent>& events);
  /// Rebuilds from `tree` and swaps the result in.
  void rebuild_now(const ledger::ChainTree& tree);
  /// Starts the rebuild timer; `access` must run its argument while holding
  /// whatever lock protects the tree.
  void start_timer(TreeAccess access);
  void stop_timer();
  std::uint64_t rebuild_count() const;

private:
  void swap_in(std::shared_ptr<const IndexSnapshot> s);

  RefreshConfig cfg_;
  mutable std::mutex mu_;
  std::shared_ptr<const IndexSnapshot> current_;
  std::uint64_t rebuilds_ = 0;
  std::thread timer_;
  std::mutex timer_mu_;
  std::condition_variable timer_cv_;
  bool stopping_ = false;
};

}  // namespace fc::indexer
