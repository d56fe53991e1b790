#pragma once

// Deterministic multi-node simulation. Nodes exchange inv/getdata/block/tx
// messages over FIFO links with seeded delays on a virtual clock; scenario
// steps produce blocks (optionally corrupted), submit transactions,
// partition nodes and let the network run.

#include <filesystem>
#include <queue>
#include <random>
#include <variant>

#include "fc/indexer/index.hpp"
#include "fc/simnet/workload.hpp"

namespace fc::simnet {

class ScenarioError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Declarative transaction, built against the state it will be applied to.
struct TxSpec {
  enum Kind { Transfer, Bounty, Marker, PublishDoc, PublishTheory, Collect } kind = Transfer;
  std::uint64_t from = 0;  // key seed
  std::uint64_t to = 0;    // key seed (Transfer)
  std::uint64_t amount = 0;
  std::uint64_t fee = 0;
  std::string doc;     // fixture path (Marker, PublishDoc)
  std::string theory;  // fixture path (PublishTheory)
  std::string target;  // "doc#item", "doc#item!neg" or an address in hex (Bounty, Collect)
};

struct BlockFlags {
  bool corrupt_proof = false;  // replace one proof node of the first document
  bool double_spend = false;   // repeat an input of the first transaction
  bool bad_sig = false;        // flip a bit of the first input signature
  bool orphan_parent = false;  // point at a parent nobody has
};

struct ProduceStep {
  std::string label;
  std::size_t node = 0;
  std::string parent = "tip";  // "tip", "tip~k" (k blocks below the tip) or an earlier label
  std::vector<TxSpec> txs;
  std::size_t random_txs = 0;  // extra workload attempts
  bool mempool = true;         // include pending transactions when extending the tip
  BlockFlags flags;
};

/// Runs the network: until it is quiet, or for `ms` of virtual time.
struct DeliverStep {
  std::optional<std::uint64_t> ms;
};

/// Cuts `nodes` off from the others for `ms` of virtual time.
struct PartitionStep {
  std::vector<std::size_t> nodes;
  std::uint64_t ms = 0;
};

struct SubmitTxStep {
  std::size_t node = 0;
  TxSpec tx;
};

using Step = std::variant<ProduceStep, DeliverStep, PartitionStep, SubmitTxStep>;

struct Scenario {
  std::string name;
  std::uint64_t seed = 0;
  std::size_t nodes = 3;
  ledger::ChainParams params;
  std::vector<std::uint64_t> producer_seeds{0};
  std::vector<std::uint64_t> user_seeds;  // workload keys (producers are added)
  std::vector<std::string> theories;      // fixture paths known to document parsing
  std::vector<std::string> docs;          // fixture paths for the random workload
  std::uint64_t base_delay_ms = 20;
  std::uint64_t jitter_ms = 80;
  std::vector<Step> steps;
  /// Expected graph class counts at node 0 (color -> count), if given.
  std::map<std::string, std::size_t> expect_classes;
};

/// Reads the scenario file format (see docs/scenarios.md).
Scenario scenario_from_json(const std::string& text);
Scenario load_scenario(const std::filesystem::path& path);
/// A generated scenario: forks from concurrent producers, random workload,
/// occasional faulty blocks and partitions.
Scenario random_scenario(std::uint64_t seed);

struct NodeReport {
  ledger::BlockHash tip{};
  std::uint64_t height = 0;
  Hash32 state_digest{};
  Hash32 index_digest{};
  bool index_matches_rebuild = false;
  std::vector<ledger::GraphNode> graph;
  std::string dot;
};

struct RunReport {
  std::vector<NodeReport> nodes;
  std::map<std::string, ledger::BlockHash> labels;
  std::uint64_t messages = 0;
  std::uint64_t dropped = 0;
  std::uint64_t rejected_txs = 0;  // submit_tx steps that did not build or validate
  std::uint64_t end_time_ms = 0;
  /// Every node has the same tip and snapshot digest.
  bool converged() const;
  /// Class counts at node 0 keyed by color.
  std::map<std::string, std::size_t> class_counts(std::size_t node = 0) const;
};

/// Runs every step and then lets the network go quiet.
RunReport run_scenario(const Scenario& sc, const std::filesystem::path& fixture_dir);

struct Inv {
  std::vector<ledger::BlockHash> blocks;
};
struct GetData {
  ledger::BlockHash block{};
};
struct BlockMsg {
  ledger::Block block;
};
struct TxMsg {
  ledger::Tx tx;
};
using Message = std::variant<Inv, GetData, BlockMsg, TxMsg>;

struct SimNode {
  explicit SimNode(const ledger::ChainParams& p) : tree(p), index(tree) {}
  ledger::ChainTree tree;
  ledger::Mempool mempool;
  indexer::Indexer index;
  std::set<ledger::BlockHash> requested;
};

class Simulation {
public:
  Simulation(const Scenario& sc, std::filesystem::path fixture_dir);

  void run_step(const Step& step);
  /// Processes events until the queue is empty or the clock passes `until`.
  void run(std::optional<std::uint64_t> until = std::nullopt);
  RunReport report() const;

  SimNode& node(std::size_t i) { return *nodes_.at(i); }
  std::uint64_t now() const { return now_; }
  /// Builds `spec` against `st` (keys and fixtures resolved by the scenario).
  ledger::Tx build_tx(const ledger::ChainState& st, const TxSpec& spec);

private:
  struct Event {
    std::uint64_t time;
    std::uint64_t seq;
    std::size_t from, to;  // to == SIZE_MAX: partition heal
    Message msg;
    bool operator>(const Event& o) const { return time != o.time ? time > o.time : seq > o.seq; }
  };

  void produce(const ProduceStep& p);
  void apply_flags(ledger::Block& b, const BlockFlags& f, const std::string& label);
  void resign_tx(ledger::Tx& tx);
  void send(std::size_t from, std::size_t to, Message m);
  void broadcast(std::size_t from, const Message& m, std::size_t except = SIZE_MAX);
  void deliver(const Event& e);
  void on_block(std::size_t at, std::size_t from, const ledger::Block& b);
  bool linked(std::size_t a, std::size_t b) const;
  const docform::Document& doc(const std::string& path);
  ledger::Addr resolve_target(const std::string& target);
  const crypto::KeyPair& key(std::uint64_t seed);

  Scenario sc_;
  std::filesystem::path fixtures_;
  std::vector<docform::TheorySpec> theories_;
  std::map<std::string, docform::Document> docs_;
  std::map<std::uint64_t, crypto::KeyPair> keys_;
  std::optional<Workload> workload_;
  std::vector<std::unique_ptr<SimNode>> nodes_;
  std::map<std::string, ledger::BlockHash> labels_;
  std::mt19937_64 rng_;
  std::priority_queue<Event, std::vector<Event>, std::greater<>> queue_;
  std::map<std::pair<std::size_t, std::size_t>, std::uint64_t> link_clock_;
  std::set<std::size_t> cut_;  // the partitioned side, while now_ < cut_until_
  std::uint64_t cut_until_ = 0;
  std::uint64_t now_ = 0;
  std::uint64_t seq_ = 0;
  std::uint64_t produced_ = 0;
  std::uint64_t messages_ = 0;
  std::uint64_t dropped_ = 0;
  std::uint64_t rejected_txs_ = 0;
};

}  // namespace fc::simnet
