#include "fc/indexer/index.hpp"

#include <algorithm>

#include "fc/kernel/codec.hpp"

namespace fc::indexer {

using ledger::ChainNode;
using ledger::Tx;
using ledger::TxEffect;

const char* pub_kind_name(PubKind k) {
  switch (k) {
    case PubKind::Theory: return "theory";
    case PubKind::Axiom: return "axiom";
    case PubKind::Def: return "def";
    case PubKind::Thm: return "thm";
    case PubKind::Conj: return "conj";
    case PubKind::Refutation: return "refutation";
  }
  return "?";
}

std::string Entity::status() const {
  bool proven = false;
  for (const auto& p : pubs) {
    if (p.kind == PubKind::Refutation) return "disproven";
    if (p.kind == PubKind::Thm || p.kind == PubKind::Axiom) proven = true;
  }
  if (kind() == PubKind::Def || kind() == PubKind::Theory) return "";
  return proven ? "proven" : "conjecture";
}

std::optional<Addr> Entity::owner() const {
  for (const auto& p : pubs)
    if (p.fresh && (p.kind == PubKind::Def || p.kind == PubKind::Thm || p.kind == PubKind::Theory))
      return p.publisher;
  return std::nullopt;
}

std::string Entity::tag() const {
  for (const auto& p : pubs)
    if (p.kind == PubKind::Conj) return p.tag;
  return "Other";
}

const Entity* IndexSnapshot::entity(const Addr& a) const {
  auto it = entities.find(a);
  return it == entities.end() ? nullptr : &it->second;
}

namespace {

// One entity publication derived from a transaction. Connect applies the
// list front to back, disconnect undoes it back to front.
struct EntityOp {
  Addr addr;
  Entity seed;  // fields used when the entity does not exist yet
  Publication pub;
};

Publication base_pub(PubKind kind, std::string name, const TxId& tx, const ChainNode& node) {
  Publication p;
  p.kind = kind;
  p.name = std::move(name);
  p.tx = tx;
  p.block = node.hash;
  p.height = node.height;
  return p;
}

void theory_ops(std::vector<EntityOp>& ops, const kernel::TheoryId& th, const ledger::TheoryEntry& entry,
                const TxId& tx, const ChainNode& node, const std::optional<Addr>& publisher) {
  EntityOp op;
  op.addr = ledger::prop_addr(th, th);
  op.seed.addr = op.addr;
  op.seed.id = th;
  op.seed.theory = th;
  op.pub = base_pub(PubKind::Theory, entry.spec.name, tx, node);
  op.pub.publisher = publisher;
  ops.push_back(op);
  for (const auto& ax : entry.spec.axioms) {
    auto id = kernel::prop_id(entry.sig, ax.stmt);
    EntityOp a;
    a.addr = ledger::prop_addr(th, id);
    a.seed.addr = a.addr;
    a.seed.id = id;
    a.seed.theory = th;
    a.seed.stmt = ax.stmt;
    a.pub = base_pub(PubKind::Axiom, ax.name, tx, node);
    a.pub.publisher = publisher;
    ops.push_back(std::move(a));
  }
}

std::vector<EntityOp> entity_ops(const ChainNode& node, std::size_t i) {
  std::vector<EntityOp> ops;
  const Tx& tx = node.block->txs[i];
  const TxEffect& eff = node.effects[i];
  if (node.height == 0 && i == 0) {
    auto th = ledger::builtin_theory_id();
    const auto* entry = node.state->theory(th);
    if (!entry) throw InconsistentEvent("genesis state lacks the built-in theory");
    theory_ops(ops, th, *entry, TxId{}, node, std::nullopt);
    return ops;
  }
  std::optional<Addr> signer;
  if (!tx.inputs.empty()) signer = ledger::derive_addr(tx.inputs.front().pubkey);
  if (eff.theory) {
    if (!eff.theory_entry) throw InconsistentEvent("theory effect without its entry");
    theory_ops(ops, *eff.theory, *eff.theory_entry, eff.id, node, signer);
  }
  if (!eff.doc_id) return ops;
  const auto& th = eff.doc_theory;
  auto add = [&](PubKind kind, const std::string& name, const Hash32& id, bool fresh) -> EntityOp& {
    EntityOp op;
    op.addr = ledger::prop_addr(th, id);
    op.seed.addr = op.addr;
    op.seed.id = id;
    op.seed.theory = th;
    op.pub = base_pub(kind, name, eff.id, node);
    op.pub.publisher = eff.publisher;
    op.pub.fresh = fresh;
    op.pub.doc = *eff.doc_id;
    ops.push_back(std::move(op));
    return ops.back();
  };
  // Items in document order; a refutation follows its theorem.
  std::vector<std::pair<std::size_t, std::function<void()>>> items;
  for (const auto& d : eff.doc.defs)
    items.emplace_back(d.item, [&add, &d] {
      auto& op = add(PubKind::Def, d.name, d.id, d.fresh);
      op.seed.ty = d.ty;
      op.seed.deps = d.deps;
    });
  for (const auto& t : eff.doc.thms)
    items.emplace_back(t.item, [&add, &t] {
      auto& op = add(PubKind::Thm, t.name, t.id, t.fresh);
      op.seed.stmt = t.stmt;
      op.seed.deps = t.deps;
      if (t.refutes) {
        auto& r = add(PubKind::Refutation, t.name, *t.refutes, t.fresh);
        r.seed.stmt = t.refuted_stmt;
        r.seed.deps = docform::term_deps(*t.refuted_stmt);
      }
    });
  for (const auto& c : eff.doc.conjs)
    items.emplace_back(c.item, [&add, &c] {
      auto& op = add(PubKind::Conj, c.name, c.id, true);
      op.seed.stmt = c.stmt;
      op.seed.deps = c.deps;
      op.pub.tag = c.tag;
    });
  std::sort(items.begin(), items.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  for (auto& [_, f] : items) f();
  return ops;
}

template <class K, class V>
void pop_value(std::map<K, std::vector<V>>& m, const K& k, const V& v, const char* what) {
  auto it = m.find(k);
  if (it == m.end() || it->second.empty() || !(it->second.back() == v))
    throw InconsistentEvent(std::string("disconnect does not match ") + what);
  it->second.pop_back();
  if (it->second.empty()) m.erase(it);
}

void connect_entity(IndexSnapshot& s, const EntityOp& op) {
  auto it = s.entities.find(op.addr);
  if (it == s.entities.end()) {
    Entity e = op.seed;
    e.pubs.push_back(op.pub);
    std::vector<Addr> edges;
    for (const auto& d : e.deps) edges.push_back(ledger::prop_addr(e.theory, d));
    if (!edges.empty()) s.deps[op.addr] = std::move(edges);
    s.by_id[e.id].insert(op.addr);
    s.entities.emplace(op.addr, std::move(e));
  } else {
    it->second.pubs.push_back(op.pub);
  }
  if (op.pub.fresh && op.pub.publisher) s.authorship[*op.pub.publisher].push_back(op.addr);
}

void disconnect_entity(IndexSnapshot& s, const EntityOp& op) {
  if (op.pub.fresh && op.pub.publisher) pop_value(s.authorship, *op.pub.publisher, op.addr, "authorship");
  auto it = s.entities.find(op.addr);
  if (it == s.entities.end() || it->second.pubs.empty() || !(it->second.pubs.back() == op.pub))
    throw InconsistentEvent("unknown entity " + op.addr.hex());
  it->second.pubs.pop_back();
  if (!it->second.pubs.empty()) return;
  auto id = it->second.id;
  s.entities.erase(it);
  s.deps.erase(op.addr);
  auto b = s.by_id.find(id);
  if (b != s.by_id.end()) {
    b->second.erase(op.addr);
    if (b->second.empty()) s.by_id.erase(b);
  }
}

// Addresses a transaction touches, sorted and distinct.
std::vector<Addr> touched(const TxEffect& eff) {
  std::set<Addr> out;
  for (const auto& a : eff.spent) out.insert(a.addr);
  for (const auto& a : eff.created) out.insert(a.addr);
  return {out.begin(), out.end()};
}

std::uint64_t currency_out(const TxEffect& eff) {
  std::uint64_t sum = 0;
  for (const auto& a : eff.created)
    if (std::holds_alternative<ledger::Currency>(a.payload)) sum += value_of(a.payload);
  return sum;
}

std::uint64_t value_out(const TxEffect& eff) {
  std::uint64_t sum = 0;
  for (const auto& a : eff.created) sum += value_of(a.payload);
  return sum;
}

BountyRecord bounty_record(const ChainNode& node, std::size_t i, const ledger::Asset& a) {
  BountyRecord r;
  r.asset = a.id;
  r.addr = a.addr;
  r.amount = value_of(a.payload);
  r.height = node.height;
  r.tx = node.effects[i].id;
  r.block = node.hash;
  const Tx& tx = node.block->txs[i];
  if (i == 0) {
    r.automatic = true;
    if (node.parent) r.stmt = ledger::gen_random_prop(*node.parent);
  } else {
    r.placer = ledger::derive_addr(tx.inputs.front().pubkey);
  }
  return r;
}

void check_node(const ChainNode& node) {
  if (node.status != ledger::BlockStatus::Valid || !node.block || !node.state ||
      node.effects.size() != node.block->txs.size())
    throw InconsistentEvent("event for a block without effects");
}

}  // namespace

void apply_connect(IndexSnapshot& s, const ChainNode& node) {
  check_node(node);
  if (node.height > 0 && (!node.parent || *node.parent != s.tip))
    throw InconsistentEvent("connect does not extend the indexed tip");
  for (std::size_t i = 0; i < node.effects.size(); ++i) {
    const auto& eff = node.effects[i];
    s.txs[eff.id] = {node.hash, node.height, static_cast<std::uint32_t>(i)};
    for (const auto& a : touched(eff)) s.addr_txs[a].push_back(eff.id);
    for (const auto& a : eff.spent) {
      auto it = s.holdings.find(a.addr);
      if (it == s.holdings.end()) throw InconsistentEvent("spend from an address without assets");
      if (--it->second == 0) s.holdings.erase(it);
    }
    for (const auto& a : eff.created) ++s.holdings[a.addr];
    if (i == 0) {
      s.stats.coin_circulation += value_out(eff);
    } else {
      ++s.stats.tx_count;
      s.stats.tx_volume += currency_out(eff);
      s.stats.coin_circulation -= eff.fee;
    }
    for (const auto& a : eff.created)
      if (std::holds_alternative<ledger::Bounty>(a.payload)) s.bounties[a.id] = bounty_record(node, i, a);
    for (const auto& c : eff.collections) {
      auto it = s.bounties.find(c.bounty.id);
      if (it == s.bounties.end() || it->second.collected)
        throw InconsistentEvent("collection of unknown bounty " + to_hex(c.bounty.id));
      it->second.collected = Collection{node.height, eff.id, node.hash, c.collector, c.by_disproof};
    }
    for (const auto& op : entity_ops(node, i)) connect_entity(s, op);
  }
  s.tip = node.hash;
  s.stats.height = node.height;
  ++s.stats.blocks;
  s.stats.address_count = s.holdings.size();
}

void apply_disconnect(IndexSnapshot& s, const ChainNode& node) {
  check_node(node);
  if (s.tip != node.hash) throw InconsistentEvent("disconnect of a block that is not the indexed tip");
  for (std::size_t n = node.effects.size(); n-- > 0;) {
    const auto& eff = node.effects[n];
    auto ops = entity_ops(node, n);
    for (auto it = ops.rbegin(); it != ops.rend(); ++it) disconnect_entity(s, *it);
    for (const auto& c : eff.collections) {
      auto it = s.bounties.find(c.bounty.id);
      if (it == s.bounties.end() || !it->second.collected)
        throw InconsistentEvent("uncollect of unknown bounty " + to_hex(c.bounty.id));
      it->second.collected.reset();
    }
    for (const auto& a : eff.created)
      if (std::holds_alternative<ledger::Bounty>(a.payload) && !s.bounties.erase(a.id))
        throw InconsistentEvent("unknown bounty " + to_hex(a.id));
    if (n == 0) {
      s.stats.coin_circulation -= value_out(eff);
    } else {
      --s.stats.tx_count;
      s.stats.tx_volume -= currency_out(eff);
      s.stats.coin_circulation += eff.fee;
    }
    for (const auto& a : eff.created) {
      auto it = s.holdings.find(a.addr);
      if (it == s.holdings.end()) throw InconsistentEvent("created asset missing from holdings");
      if (--it->second == 0) s.holdings.erase(it);
    }
    for (const auto& a : eff.spent) ++s.holdings[a.addr];
    for (const auto& a : touched(eff)) pop_value(s.addr_txs, a, eff.id, "address history");
    if (!s.txs.erase(eff.id)) throw InconsistentEvent("unknown tx " + to_hex(eff.id));
  }
  s.tip = node.parent.value_or(BlockHash{});
  s.stats.height = node.height > 0 ? node.height - 1 : 0;
  --s.stats.blocks;
  s.stats.address_count = s.holdings.size();
}

void apply_events(IndexSnapshot& s, const std::vector<ledger::ChainEvent>& events) {
  for (const auto& ev : events) {
    if (ev.kind == ledger::ChainEvent::Connect)
      apply_connect(s, *ev.node);
    else
      apply_disconnect(s, *ev.node);
  }
}

IndexSnapshot rebuild(const ledger::ChainTree& tree, std::optional<BlockHash> tip) {
  std::vector<const ChainNode*> path;
  const ChainNode* n = tree.find(tip.value_or(tree.tip()));
  if (!n) throw InconsistentEvent("rebuild from an unknown tip");
  while (n) {
    path.push_back(n);
    n = n->parent ? tree.find(*n->parent) : nullptr;
  }
  IndexSnapshot s;
  for (auto it = path.rbegin(); it != path.rend(); ++it) apply_connect(s, **it);
  return s;
}

// ---------------------------------------------------------------- encoding

namespace {

void put(ByteWriter& w, const Addr& a) {
  w.u8(a.kind);
  w.raw(a.hash);
}

void put(ByteWriter& w, const std::optional<Addr>& a) {
  w.u8(a ? 1 : 0);
  if (a) put(w, *a);
}

void put(ByteWriter& w, const Publication& p) {
  w.u8(static_cast<std::uint8_t>(p.kind));
  w.str(p.name);
  w.str(p.tag);
  w.raw(p.tx);
  w.raw(p.block);
  w.leb(p.height);
  put(w, p.publisher);
  w.u8(p.fresh);
  w.raw(p.doc);
}

void put(ByteWriter& w, const Entity& e) {
  put(w, e.addr);
  w.raw(e.id);
  w.raw(e.theory);
  w.u8(e.ty ? 1 : 0);
  if (e.ty) kernel::encode(w, *e.ty);
  w.u8(e.stmt ? 1 : 0);
  if (e.stmt) kernel::encode(w, *e.stmt);
  w.leb(e.deps.size());
  for (const auto& d : e.deps) w.raw(d);
  w.leb(e.pubs.size());
  for (const auto& p : e.pubs) put(w, p);
}

void put(ByteWriter& w, const BountyRecord& b) {
  w.raw(b.asset);
  put(w, b.addr);
  w.leb(b.amount);
  w.leb(b.height);
  w.raw(b.tx);
  w.raw(b.block);
  w.u8(b.automatic);
  put(w, b.placer);
  w.u8(b.stmt ? 1 : 0);
  if (b.stmt) kernel::encode(w, *b.stmt);
  w.u8(b.collected ? 1 : 0);
  if (const auto& c = b.collected) {
    w.leb(c->height);
    w.raw(c->tx);
    w.raw(c->block);
    put(w, c->collector);
    w.u8(c->by_disproof);
  }
}

}  // namespace

Bytes IndexSnapshot::serialize() const {
  ByteWriter w;
  w.raw(tip);
  w.leb(stats.height);
  w.leb(stats.address_count);
  w.leb(stats.tx_count);
  w.leb(stats.tx_volume);
  w.leb(stats.coin_circulation);
  w.leb(stats.blocks);
  w.leb(entities.size());
  for (const auto& [_, e] : entities) put(w, e);
  w.leb(by_id.size());
  for (const auto& [id, addrs] : by_id) {
    w.raw(id);
    w.leb(addrs.size());
    for (const auto& a : addrs) put(w, a);
  }
  w.leb(bounties.size());
  for (const auto& [_, b] : bounties) put(w, b);
  for (const auto* m : {&deps, &authorship}) {
    w.leb(m->size());
    for (const auto& [k, v] : *m) {
      put(w, k);
      w.leb(v.size());
      for (const auto& a : v) put(w, a);
    }
  }
  w.leb(holdings.size());
  for (const auto& [a, n] : holdings) {
    put(w, a);
    w.leb(n);
  }
  w.leb(addr_txs.size());
  for (const auto& [a, v] : addr_txs) {
    put(w, a);
    w.leb(v.size());
    for (const auto& t : v) w.raw(t);
  }
  w.leb(txs.size());
  for (const auto& [id, loc] : txs) {
    w.raw(id);
    w.raw(loc.block);
    w.leb(loc.height);
    w.leb(loc.index);
  }
  return std::move(w).take();
}

Hash32 IndexSnapshot::digest() const { return crypto::sha256(serialize()); }

// ---------------------------------------------------------------- views

std::string category_of(const IndexSnapshot& snap, const Addr& a) {
  const auto* e = snap.entity(a);
  return e ? e->tag() : "Other";
}

BountyViews bounty_views(const IndexSnapshot& snap) {
  BountyViews v;
  std::map<Addr, OpenBounty> open;
  for (const auto& [id, b] : snap.bounties) {
    auto tag = category_of(snap, b.addr);
    if (b.collected) {
      v.highest_collected.push_back({b.addr, id, b.amount, *b.collected, tag});
      v.categories[tag].collected += b.amount;
    } else {
      auto& o = open[b.addr];
      o.addr = b.addr;
      o.amount += b.amount;
      ++o.count;
      o.tag = tag;
      v.categories[tag].open += b.amount;
    }
  }
  for (auto& [_, o] : open) v.highest_open.push_back(std::move(o));
  std::stable_sort(v.highest_open.begin(), v.highest_open.end(),
                   [](const OpenBounty& a, const OpenBounty& b) { return a.amount > b.amount; });
  std::sort(v.highest_collected.begin(), v.highest_collected.end(),
            [](const CollectedBounty& a, const CollectedBounty& b) {
              if (a.amount != b.amount) return a.amount > b.amount;
              if (a.collection.height != b.collection.height) return a.collection.height < b.collection.height;
              return a.asset < b.asset;
            });
  return v;
}

// ---------------------------------------------------------------- Indexer

Indexer::Indexer(const ledger::ChainTree& tree, RefreshConfig cfg)
    : cfg_(cfg), current_(std::make_shared<const IndexSnapshot>(rebuild(tree))) {}

Indexer::~Indexer() { stop_timer(); }

std::shared_ptr<const IndexSnapshot> Indexer::snapshot() const {
  std::lock_guard lock(mu_);
  return current_;
}

void Indexer::swap_in(std::shared_ptr<const IndexSnapshot> s) {
  std::lock_guard lock(mu_);
  current_ = std::move(s);
}

void Indexer::on_events(const std::vector<ledger::ChainEvent>& events) {
  if (events.empty()) return;
  auto next = std::make_shared<IndexSnapshot>(*snapshot());
  apply_events(*next, events);
  swap_in(std::move(next));
}

void Indexer::rebuild_now(const ledger::ChainTree& tree) {
  auto next = std::make_shared<const IndexSnapshot>(rebuild(tree));
  std::lock_guard lock(mu_);
  current_ = std::move(next);
  ++rebuilds_;
}

std::uint64_t Indexer::rebuild_count() const {
  std::lock_guard lock(mu_);
  return rebuilds_;
}

void Indexer::start_timer(TreeAccess access) {
  if (cfg_.rebuild_interval.count() <= 0 || timer_.joinable()) return;
  stopping_ = false;
  timer_ = std::thread([this, access = std::move(access)] {
    std::unique_lock lock(timer_mu_);
    while (!timer_cv_.wait_for(lock, cfg_.rebuild_interval, [this] { return stopping_; })) {
      lock.unlock();
      access([this](const ledger::ChainTree& tree) { rebuild_now(tree); });
      lock.lock();
    }
  });
}

void Indexer::stop_timer() {
  {
    std::lock_guard lock(timer_mu_);
    stopping_ = true;
  }
  timer_cv_.notify_all();
  if (timer_.joinable()) timer_.join();
}

}  // namespace fc::indexer
