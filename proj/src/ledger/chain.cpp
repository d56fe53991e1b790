#include "fc/ledger/chain.hpp"

#include <algorithm>
#include <fstream>

namespace fc::ledger {

const char* block_status_name(BlockStatus s) {
  switch (s) {
    case BlockStatus::Valid: return "valid";
    case BlockStatus::Invalid: return "invalid";
    case BlockStatus::Orphan: return "orphan";
    case BlockStatus::Missing: return "missing";
  }
  return "?";
}

const char* submit_outcome_name(SubmitOutcome o) {
  switch (o) {
    case SubmitOutcome::Accepted: return "accepted";
    case SubmitOutcome::Duplicate: return "duplicate";
    case SubmitOutcome::Orphaned: return "orphaned";
    case SubmitOutcome::Invalid: return "invalid";
  }
  return "?";
}

NodeClass ChainNode::cls() const {
  if (status == BlockStatus::Missing) return NodeClass::Missing;
  if (status == BlockStatus::Invalid) return NodeClass::Invalid;
  return content;
}

ChainTree::ChainTree(const ChainParams& params) : params_(std::make_shared<const ChainParams>(params)) {
  auto g = genesis_state(params);
  auto block = make_genesis(params);
  genesis_ = block_hash(block);
  auto n = std::make_unique<ChainNode>();
  n->hash = genesis_;
  n->height = 0;
  n->block = std::move(block);
  n->status = BlockStatus::Valid;
  n->content = NodeClass::Plain;
  g.state.params = params_;
  n->state = std::make_shared<const ChainState>(std::move(g.state));
  n->effects = std::move(g.effects);
  n->seq = seq_++;
  nodes_.emplace(genesis_, std::move(n));
  tip_ = genesis_;
}

const ChainNode* ChainTree::find(const BlockHash& h) const {
  auto it = nodes_.find(h);
  return it == nodes_.end() ? nullptr : it->second.get();
}

bool ChainTree::contains_block(const BlockHash& h) const {
  const auto* n = find(h);
  return n && n->status != BlockStatus::Missing;
}

bool ChainTree::better(const ChainNode& a, const ChainNode& b) const {
  return a.height > b.height || (a.height == b.height && a.hash < b.hash);
}

ChainNode& ChainTree::attach(const Block& b, const BlockHash& h) {
  auto& slot = nodes_[h];
  if (!slot) slot = std::make_unique<ChainNode>();
  auto& n = *slot;
  n.hash = h;
  n.parent = b.header.parent;
  n.height = b.header.height;
  n.block = b;
  n.status = BlockStatus::Orphan;
  n.content = classify_content(b);
  n.seq = seq_++;
  auto& pslot = nodes_[b.header.parent];
  if (!pslot) {
    pslot = std::make_unique<ChainNode>();
    pslot->hash = b.header.parent;
    pslot->height = b.header.height > 0 ? b.header.height - 1 : 0;
    pslot->status = BlockStatus::Missing;
    pslot->seq = seq_++;
  }
  if (std::find(pslot->children.begin(), pslot->children.end(), h) == pslot->children.end())
    pslot->children.push_back(h);
  return n;
}

void ChainTree::resolve(const BlockHash& h, std::vector<BlockHash>& accepted) {
  auto& n = *nodes_.at(h);
  const auto& p = *nodes_.at(*n.parent);
  if (p.status == BlockStatus::Missing || p.status == BlockStatus::Orphan) {
    if (std::find(orphans_.begin(), orphans_.end(), h) == orphans_.end()) orphans_.push_back(h);
    return;
  }
  orphans_.erase(std::remove(orphans_.begin(), orphans_.end(), h), orphans_.end());
  if (p.status == BlockStatus::Invalid) {
    n.status = BlockStatus::Invalid;
    n.reason = "invalid parent";
  } else {
    try {
      auto r = validate_block(*p.state, *n.block);
      n.status = BlockStatus::Valid;
      n.state = std::make_shared<const ChainState>(std::move(r.state));
      n.effects = std::move(r.effects);
      accepted.push_back(h);
    } catch (const BlockError& e) {
      n.status = BlockStatus::Invalid;
      n.reason = e.reason();
    }
  }
  for (const auto& c : std::vector<BlockHash>(n.children))
    if (nodes_.at(c)->status == BlockStatus::Orphan) resolve(c, accepted);
}

void ChainTree::drop_placeholder_if_unused(const BlockHash& h) {
  auto it = nodes_.find(h);
  if (it != nodes_.end() && it->second->status == BlockStatus::Missing && it->second->children.empty())
    nodes_.erase(it);
}

void ChainTree::evict_orphans() {
  while (orphans_.size() > kOrphanCapacity) {
    auto h = orphans_.front();
    orphans_.pop_front();
    auto& n = *nodes_.at(h);
    auto parent = *n.parent;
    auto& siblings = nodes_.at(parent)->children;
    siblings.erase(std::remove(siblings.begin(), siblings.end(), h), siblings.end());
    if (n.children.empty()) {
      nodes_.erase(h);
    } else {
      n.block.reset();
      n.parent.reset();
      n.status = BlockStatus::Missing;
      n.content = NodeClass::Plain;
    }
    drop_placeholder_if_unused(parent);
  }
}

std::vector<ChainEvent> ChainTree::switch_tip(const BlockHash& new_tip) {
  std::vector<ChainEvent> out;
  const ChainNode* x = nodes_.at(tip_).get();
  const ChainNode* y = nodes_.at(new_tip).get();
  std::vector<const ChainNode*> connect;
  while (x->height > y->height) {
    out.push_back({ChainEvent::Disconnect, x});
    x = nodes_.at(*x->parent).get();
  }
  while (y->height > x->height) {
    connect.push_back(y);
    y = nodes_.at(*y->parent).get();
  }
  while (x != y) {
    out.push_back({ChainEvent::Disconnect, x});
    connect.push_back(y);
    x = nodes_.at(*x->parent).get();
    y = nodes_.at(*y->parent).get();
  }
  for (auto it = connect.rbegin(); it != connect.rend(); ++it) out.push_back({ChainEvent::Connect, *it});
  tip_ = new_tip;
  return out;
}

SubmitResult ChainTree::submit(const Block& b) {
  SubmitResult res;
  res.hash = block_hash(b);
  if (contains_block(res.hash)) {
    res.outcome = SubmitOutcome::Duplicate;
    return res;
  }
  attach(b, res.hash);
  std::vector<BlockHash> accepted;
  resolve(res.hash, accepted);

  const ChainNode* best = nodes_.at(tip_).get();
  for (const auto& h : accepted) {
    const auto* n = nodes_.at(h).get();
    if (better(*n, *best)) best = n;
  }
  if (best->hash != tip_) res.events = switch_tip(best->hash);

  const auto& n = *nodes_.at(res.hash);
  switch (n.status) {
    case BlockStatus::Valid: res.outcome = SubmitOutcome::Accepted; break;
    case BlockStatus::Invalid:
      res.outcome = SubmitOutcome::Invalid;
      res.reason = n.reason;
      break;
    default:
      res.outcome = SubmitOutcome::Orphaned;
      res.reason = "unknown parent " + to_hex(*n.parent);
  }
  evict_orphans();
  return res;
}

std::vector<BlockHash> ChainTree::main_chain() const {
  std::vector<BlockHash> out;
  const ChainNode* n = nodes_.at(tip_).get();
  for (;;) {
    out.push_back(n->hash);
    if (!n->parent) break;
    n = nodes_.at(*n->parent).get();
  }
  std::reverse(out.begin(), out.end());
  return out;
}

bool ChainTree::on_main_chain(const BlockHash& h) const {
  const auto* n = find(h);
  if (!n || n->status != BlockStatus::Valid || n->height > tip_node().height) return false;
  const ChainNode* x = &tip_node();
  while (x->height > n->height) x = nodes_.at(*x->parent).get();
  return x == n;
}

std::vector<GraphNode> ChainTree::graph() const {
  std::vector<GraphNode> out;
  auto main = main_chain();
  std::set<BlockHash> on_main(main.begin(), main.end());
  for (const auto& [h, n] : nodes_) {
    GraphNode g;
    g.id = h;
    g.parent = n->parent;
    g.height = n->height;
    g.cls = n->cls();
    g.reason = n->reason;
    g.main_chain = on_main.contains(h);
    out.push_back(std::move(g));
  }
  std::sort(out.begin(), out.end(), [](const GraphNode& a, const GraphNode& b) {
    return a.height != b.height ? a.height < b.height : a.id < b.id;
  });
  return out;
}

namespace {

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace

std::string graph_dot(const std::vector<GraphNode>& graph) {
  std::string out = "digraph chain {\n  rankdir=LR;\n  node [shape=box, style=filled, fontname=\"monospace\"];\n";
  for (const auto& g : graph) {
    auto id = to_hex(g.id);
    out += "  \"" + id + "\" [label=\"" + std::to_string(g.height) + " " + id.substr(0, 8) + "\", fillcolor=" +
           node_class_name(g.cls) + ", class=" + node_class_label(g.cls);
    if (g.main_chain) out += ", penwidth=2";
    if (!g.reason.empty()) out += ", tooltip=\"" + dot_escape(g.reason) + "\"";
    out += "];\n";
  }
  for (const auto& g : graph)
    if (g.parent) out += "  \"" + to_hex(*g.parent) + "\" -> \"" + to_hex(g.id) + "\";\n";
  out += "}\n";
  return out;
}

// ---------------------------------------------------------------- store

namespace {

Bytes read_all(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return Bytes(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

}  // namespace

BlockStore::BlockStore(std::filesystem::path path) : path_(std::move(path)) {
  if (std::filesystem::exists(path_)) {
    auto data = read_all(path_);
    ByteReader r(data);
    std::uint64_t good = 0;
    try {
      while (!r.done()) {
        auto start = data.size() - r.remaining();
        auto bytes = r.blob();
        auto b = decode_block(bytes);
        index_.emplace(block_hash(b), start);
        good = data.size() - r.remaining();
      }
    } catch (const DecodeError&) {
      // A torn final record is dropped.
    }
    if (good != data.size()) std::filesystem::resize_file(path_, good);
  }
  file_ = std::fopen(path_.c_str(), "ab");
  if (!file_) throw std::runtime_error("cannot open block store " + path_.string());
}

BlockStore::~BlockStore() {
  if (file_) std::fclose(file_);
}

void BlockStore::append(const Block& b) {
  auto h = block_hash(b);
  if (contains(h)) return;
  ByteWriter w;
  w.blob(serialize(b));
  auto offset = static_cast<std::uint64_t>(std::filesystem::file_size(path_));
  const auto& bytes = w.bytes();
  if (std::fwrite(bytes.data(), 1, bytes.size(), file_) != bytes.size() || std::fflush(file_) != 0)
    throw std::runtime_error("block store write failed");
  index_.emplace(h, offset);
}

std::optional<Block> BlockStore::get(const BlockHash& h) const {
  auto it = index_.find(h);
  if (it == index_.end()) return std::nullopt;
  std::ifstream in(path_, std::ios::binary);
  in.seekg(static_cast<std::streamoff>(it->second));
  Bytes rest((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  ByteReader r(rest);
  return decode_block(r.blob());
}

std::vector<Block> BlockStore::load_all() const {
  auto data = read_all(path_);
  ByteReader r(data);
  std::vector<Block> out;
  while (!r.done()) out.push_back(decode_block(r.blob()));
  return out;
}

// ---------------------------------------------------------------- mempool

TxEffect Mempool::add(const ChainState& tip, const Tx& tx) {
  auto id = txid(tx);
  if (ids_.contains(id)) throw TxError(TxErrorCode::DoubleSpend, "transaction already pending");
  ChainState scratch = tip;
  for (const auto& p : txs_) {
    try {
      apply_tx(scratch, validate_tx(scratch, p, tip.height + 1));
    } catch (const TxError&) {
    }
  }
  auto eff = validate_tx(scratch, tx, tip.height + 1);
  txs_.push_back(tx);
  ids_.insert(id);
  return eff;
}

std::vector<Tx> Mempool::select(const ChainState& tip, std::size_t max) {
  ChainState scratch = tip;
  std::vector<Tx> keep, out;
  for (const auto& tx : txs_) {
    try {
      apply_tx(scratch, validate_tx(scratch, tx, tip.height + 1));
    } catch (const TxError&) {
      ids_.erase(txid(tx));
      continue;
    }
    keep.push_back(tx);
    if (out.size() < max) out.push_back(tx);
  }
  txs_ = std::move(keep);
  return out;
}

void Mempool::remove_included(const Block& b) {
  std::set<TxId> inc;
  for (const auto& tx : b.txs) inc.insert(txid(tx));
  std::erase_if(txs_, [&](const Tx& tx) { return inc.contains(txid(tx)); });
  for (const auto& id : inc) ids_.erase(id);
}

}  // namespace fc::ledger
