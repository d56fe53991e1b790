#include "fc/simnet/sim.hpp"

#include <algorithm>

#include "fc/docform/corpus.hpp"
#include "json.hpp"

namespace fc::simnet {

using namespace ledger;
using nlohmann::json;

// ---------------------------------------------------------------- scenario files

namespace {

std::uint64_t atoms(const json& j, const std::string& bars_key, const std::string& atoms_key) {
  if (j.contains(atoms_key)) return j.at(atoms_key).get<std::uint64_t>();
  if (j.contains(bars_key)) return j.at(bars_key).get<std::uint64_t>() * kAtomsPerBar;
  return 0;
}

TxSpec tx_from_json(const json& j) {
  static const std::map<std::string, TxSpec::Kind> kinds = {
      {"transfer", TxSpec::Transfer},         {"bounty", TxSpec::Bounty},   {"marker", TxSpec::Marker},
      {"publish_doc", TxSpec::PublishDoc},    {"publish_theory", TxSpec::PublishTheory},
      {"collect", TxSpec::Collect}};
  if (!j.is_object() || j.size() != 1) throw ScenarioError("transaction must be a one-key object");
  auto it = kinds.find(j.begin().key());
  if (it == kinds.end()) throw ScenarioError("unknown transaction kind " + j.begin().key());
  const auto& b = j.begin().value();
  TxSpec t;
  t.kind = it->second;
  t.from = b.value("from", std::uint64_t{0});
  t.to = b.value("to", std::uint64_t{0});
  t.amount = atoms(b, "amount", "amount_atoms");
  t.fee = atoms(b, "fee", "fee_atoms");
  t.doc = b.value("doc", "");
  t.theory = b.value("theory", "");
  t.target = b.value("target", "");
  return t;
}

BlockFlags flags_from_json(const json& j) {
  BlockFlags f;
  for (const auto& name : j) {
    auto s = name.get<std::string>();
    if (s == "corrupt_proof")
      f.corrupt_proof = true;
    else if (s == "double_spend")
      f.double_spend = true;
    else if (s == "bad_sig")
      f.bad_sig = true;
    else if (s == "orphan_parent")
      f.orphan_parent = true;
    else
      throw ScenarioError("unknown flag " + s);
  }
  return f;
}

Step step_from_json(const json& j) {
  if (!j.is_object() || j.size() != 1) throw ScenarioError("step must be a one-key object");
  const auto& kind = j.begin().key();
  const auto& b = j.begin().value();
  if (kind == "produce") {
    ProduceStep p;
    p.label = b.value("label", "");
    p.node = b.value("node", std::size_t{0});
    p.parent = b.value("parent", "tip");
    p.random_txs = b.value("random_txs", std::size_t{0});
    p.mempool = b.value("mempool", true);
    if (b.contains("txs"))
      for (const auto& t : b.at("txs")) p.txs.push_back(tx_from_json(t));
    if (b.contains("flags")) p.flags = flags_from_json(b.at("flags"));
    return p;
  }
  if (kind == "deliver") {
    DeliverStep d;
    if (b.is_object() && b.contains("ms")) d.ms = b.at("ms").get<std::uint64_t>();
    return d;
  }
  if (kind == "partition") return PartitionStep{b.at("nodes").get<std::vector<std::size_t>>(), b.at("ms").get<std::uint64_t>()};
  if (kind == "submit_tx") return SubmitTxStep{b.value("node", std::size_t{0}), tx_from_json(b.at("tx"))};
  throw ScenarioError("unknown step " + kind);
}

}  // namespace

Scenario scenario_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ScenarioError(std::string("scenario is not JSON: ") + e.what());
  }
  try {
    Scenario sc;
    sc.name = j.value("name", "");
    sc.seed = j.value("seed", std::uint64_t{0});
    sc.nodes = j.value("nodes", std::size_t{3});
    sc.producer_seeds = j.value("producers", std::vector<std::uint64_t>{0});
    sc.user_seeds = j.value("users", std::vector<std::uint64_t>{});
    sc.theories = j.value("theories", std::vector<std::string>{});
    sc.docs = j.value("docs", std::vector<std::string>{});
    if (j.contains("delay_ms")) {
      sc.base_delay_ms = j["delay_ms"].value("base", sc.base_delay_ms);
      sc.jitter_ms = j["delay_ms"].value("jitter", sc.jitter_ms);
    }
    auto& p = sc.params;
    for (auto s : sc.producer_seeds) p.producers.push_back(crypto::KeyPair::from_seed(s).public_key());
    if (j.contains("params")) {
      const auto& q = j["params"];
      p.genesis_timestamp = q.value("genesis_timestamp", p.genesis_timestamp);
      if (q.contains("subsidy")) p.subsidy = q["subsidy"].get<std::uint64_t>() * kAtomsPerBar;
      p.auto_bounty_blocks = q.value("auto_bounty_blocks", p.auto_bounty_blocks);
      if (q.contains("auto_bounty")) p.auto_bounty_amount = q["auto_bounty"].get<std::uint64_t>() * kAtomsPerBar;
      p.marker_maturity = q.value("marker_maturity", p.marker_maturity);
    }
    for (const auto& s : j.value("steps", json::array())) sc.steps.push_back(step_from_json(s));
    if (j.contains("expect") && j["expect"].contains("classes"))
      sc.expect_classes = j["expect"]["classes"].get<std::map<std::string, std::size_t>>();
    if (sc.nodes == 0) throw ScenarioError("a scenario needs at least one node");
    if (sc.producer_seeds.empty()) throw ScenarioError("a scenario needs at least one producer");
    return sc;
  } catch (const json::exception& e) {
    throw ScenarioError(std::string("bad scenario: ") + e.what());
  }
}

Scenario load_scenario(const std::filesystem::path& path) {
  auto sc = scenario_from_json(docform::read_file(path));
  if (sc.name.empty()) sc.name = path.stem().string();
  return sc;
}

Scenario random_scenario(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto below = [&](std::uint64_t n) { return rng() % n; };
  Scenario sc;
  sc.name = "random-" + std::to_string(seed);
  sc.seed = seed;
  sc.nodes = 3 + below(3);
  sc.producer_seeds = {0, 1, 2};
  sc.producer_seeds.resize(2 + below(2));
  for (auto s : sc.producer_seeds) sc.params.producers.push_back(crypto::KeyPair::from_seed(s).public_key());
  sc.params.genesis_timestamp = 1'700'000'000;
  sc.params.subsidy = 1000 * kAtomsPerBar;
  sc.user_seeds = {10, 11, 12};
  sc.theories = {"theories/minihotg.pfgt"};
  sc.docs = {"docs/lifecycle/conjectures.pfgd", "docs/lifecycle/prove_singleton_mem.pfgd",
             "docs/lifecycle/refute_empty_self_member.pfgd", "docs/proofs/identity.pfgd", "docs/proofs/refute.pfgd"};
  std::size_t blocks = 12 + below(14);
  for (std::size_t i = 0; i < blocks; ++i) {
    ProduceStep p;
    p.label = "b" + std::to_string(i);
    p.node = below(sc.nodes);
    if (below(5) == 0) p.parent = "tip~" + std::to_string(below(3));
    p.random_txs = below(5);
    switch (below(14)) {
      case 0: p.flags.double_spend = true; break;
      case 1: p.flags.bad_sig = true; break;
      case 2: p.flags.orphan_parent = true; break;
      default: break;
    }
    sc.steps.push_back(p);
    if (below(7) == 0) {
      TxSpec t;
      t.from = sc.user_seeds[below(3)];
      t.to = sc.user_seeds[below(3)];
      t.amount = (1 + below(20)) * kAtomsPerBar;
      sc.steps.push_back(SubmitTxStep{below(sc.nodes), t});
    }
    if (below(25) == 0) sc.steps.push_back(PartitionStep{{below(sc.nodes)}, 200 + below(1000)});
    if (below(2) == 0) sc.steps.push_back(DeliverStep{below(3) == 0 ? std::nullopt : std::optional(below(150))});
  }
  return sc;
}

// ---------------------------------------------------------------- reports

bool RunReport::converged() const {
  for (const auto& n : nodes)
    if (n.tip != nodes.front().tip || n.index_digest != nodes.front().index_digest) return false;
  return true;
}

std::map<std::string, std::size_t> RunReport::class_counts(std::size_t node) const {
  std::map<std::string, std::size_t> out;
  for (const auto& g : nodes.at(node).graph) ++out[node_class_name(g.cls)];
  return out;
}

// ---------------------------------------------------------------- simulation

Simulation::Simulation(const Scenario& sc, std::filesystem::path fixture_dir)
    : sc_(sc), fixtures_(std::move(fixture_dir)), rng_(sc.seed) {
  theories_.push_back(docform::builtin_theory());
  for (const auto& t : sc_.theories) theories_.push_back(docform::load_theory(fixtures_ / t));
  for (std::size_t i = 0; i < sc_.nodes; ++i) nodes_.push_back(std::make_unique<SimNode>(sc_.params));
  WorkloadConfig wc;
  wc.user_seeds = sc_.producer_seeds;
  for (auto s : sc_.user_seeds)
    if (std::find(wc.user_seeds.begin(), wc.user_seeds.end(), s) == wc.user_seeds.end()) wc.user_seeds.push_back(s);
  for (auto s : wc.user_seeds) key(s);
  for (const auto& d : sc_.docs) wc.docs.push_back(doc(d));
  wc.theories.assign(theories_.begin() + 1, theories_.end());
  workload_.emplace(std::move(wc));
}

const crypto::KeyPair& Simulation::key(std::uint64_t seed) {
  auto it = keys_.find(seed);
  if (it == keys_.end()) it = keys_.emplace(seed, crypto::KeyPair::from_seed(seed)).first;
  return it->second;
}

const docform::Document& Simulation::doc(const std::string& path) {
  auto it = docs_.find(path);
  if (it != docs_.end()) return it->second;
  try {
    auto d = docform::parse_doc(docform::read_file(fixtures_ / path), docform::resolver_for(theories_));
    return docs_.emplace(path, std::move(d)).first->second;
  } catch (const std::exception& e) {
    throw ScenarioError("cannot load " + path + ": " + e.what());
  }
}

Addr Simulation::resolve_target(const std::string& target) {
  auto hash = target.find('#');
  if (hash == std::string::npos) return Addr::from_hex(target);
  auto item = target.substr(hash + 1);
  bool neg = item.size() > 4 && item.ends_with("!neg");
  if (neg) item.resize(item.size() - 4);
  const auto& d = doc(target.substr(0, hash));
  const docform::TheorySpec* spec = nullptr;
  for (const auto& t : theories_)
    if (docform::theory_id(t) == d.theory) spec = &t;
  if (!spec) throw ScenarioError("unknown theory for " + target);
  auto eff = docform::check_doc(docform::theory_signature(*spec), d);
  for (const auto& c : eff.conjs)
    if (c.name == item && !neg) return prop_addr(d.theory, c.id);
  for (const auto& t : eff.thms) {
    if (t.name != item) continue;
    if (!neg) return prop_addr(d.theory, t.id);
    if (t.refutes) return prop_addr(d.theory, *t.refutes);
  }
  for (const auto& df : eff.defs)
    if (df.name == item && !neg) return prop_addr(d.theory, df.id);
  throw ScenarioError("no item " + item + " in " + target.substr(0, hash));
}

Tx Simulation::build_tx(const ChainState& st, const TxSpec& t) {
  const auto& from = key(t.from);
  switch (t.kind) {
    case TxSpec::Transfer: return make_transfer(st, from, derive_addr(key(t.to).public_key()), t.amount, t.fee);
    case TxSpec::Bounty: return make_bounty(st, from, resolve_target(t.target), t.amount, t.fee);
    case TxSpec::Marker: return make_marker(st, from, doc(t.doc), std::max<std::uint64_t>(t.fee, 1));
    case TxSpec::PublishDoc: return make_doc_pub(st, from, doc(t.doc), t.fee);
    case TxSpec::PublishTheory: {
      auto spec = docform::load_theory(fixtures_ / t.theory);
      return make_theory_pub(st, from, spec, std::max<std::uint64_t>(t.fee, 1));
    }
    case TxSpec::Collect: return make_collect(st, from, resolve_target(t.target), t.fee);
  }
  throw ScenarioError("bad transaction kind");
}

void Simulation::resign_tx(Tx& tx) {
  for (const auto& [seed, k] : keys_) sign_inputs(tx, k);
}

namespace {

kernel::Proof break_proof(const kernel::Proof& p, std::size_t& target) {
  using kernel::Proof;
  if (target == 0) return Proof::hyp(1u << 20);  // never bound
  --target;
  switch (p.kind()) {
    case Proof::Kind::PrAp:
      if (target < p.left().size()) return Proof::pr_ap(break_proof(p.left(), target), p.right());
      target -= p.left().size();
      return Proof::pr_ap(p.left(), break_proof(p.right(), target));
    case Proof::Kind::TmAp: return Proof::tm_ap(break_proof(p.left(), target), p.term());
    case Proof::Kind::PrLa: return Proof::pr_la(p.term(), break_proof(p.left(), target));
    case Proof::Kind::TmLa: return Proof::tm_la(p.ty(), break_proof(p.left(), target));
    default: return p;
  }
}

}  // namespace

void Simulation::apply_flags(Block& b, const BlockFlags& f, const std::string& label) {
  auto first_spend = [&]() -> Tx& {
    for (std::size_t i = 1; i < b.txs.size(); ++i)
      if (!b.txs[i].inputs.empty()) return b.txs[i];
    throw ScenarioError(label + ": flag needs a transaction with inputs");
  };
  if (f.corrupt_proof) {
    bool done = false;
    for (auto& tx : b.txs) {
      auto* d = std::get_if<docform::Document>(&tx.attachment);
      if (!d) continue;
      for (auto& item : d->items) {
        auto* thm = std::get_if<docform::ThmItem>(&item);
        if (!thm) continue;
        std::size_t target = rng_() % thm->proof.size();
        thm->proof = break_proof(thm->proof, target);
        done = true;
        break;
      }
      if (done) {
        resign_tx(tx);
        break;
      }
    }
    if (!done) throw ScenarioError(label + ": corrupt_proof needs a document with a theorem");
  }
  if (f.double_spend) {
    auto& tx = first_spend();
    tx.inputs.push_back(tx.inputs.front());
    resign_tx(tx);
  }
  if (f.bad_sig) first_spend().inputs.front().sig[0] ^= 1;
  if (f.orphan_parent) {
    ByteWriter w;
    w.str("unknown parent " + label);
    w.leb(sc_.seed);
    b.header.parent = crypto::sha256(w.bytes());
  }
}

void Simulation::produce(const ProduceStep& p) {
  if (p.node >= nodes_.size()) throw ScenarioError("no node " + std::to_string(p.node));
  auto& n = *nodes_[p.node];
  const ChainNode* parent = &n.tree.tip_node();
  if (p.parent.starts_with("tip~")) {
    auto k = std::stoull(p.parent.substr(4));
    for (; k > 0 && parent->parent; --k) parent = n.tree.find(*parent->parent);
  } else if (p.parent != "tip") {
    auto it = labels_.find(p.parent);
    if (it == labels_.end()) throw ScenarioError("unknown label " + p.parent);
    parent = n.tree.find(it->second);
    if (!parent) throw ScenarioError("node " + std::to_string(p.node) + " does not have " + p.parent);
  }
  if (parent->status != BlockStatus::Valid) throw ScenarioError("parent " + p.parent + " is not valid");
  const auto& st = *parent->state;
  BlockBuilder bb(st);
  bool need_tx = p.flags.double_spend || p.flags.bad_sig;
  for (const auto& spec : p.txs) {
    try {
      bb.add(build_tx(bb.view(), spec));
    } catch (const ScenarioError&) {
      throw;
    } catch (const std::exception& e) {
      throw ScenarioError((p.label.empty() ? "block" : p.label) + ": " + e.what());
    }
  }
  if (p.mempool && parent->hash == n.tree.tip())
    for (const auto& tx : n.mempool.select(st)) {
      try {
        bb.add(tx);
      } catch (const TxError&) {
      }
    }
  workload_->fill(bb, rng_, p.random_txs);
  if (need_tx && std::none_of(bb.txs().begin(), bb.txs().end(), [](const Tx& t) { return !t.inputs.empty(); })) {
    for (const auto& [seed, k] : keys_) {
      try {
        bb.add(make_transfer(bb.view(), k, derive_addr(k.public_key()), 1));
        break;
      } catch (const BuildError&) {
      }
    }
  }
  auto h = st.height + 1;
  const auto& producer = key(sc_.producer_seeds[h % sc_.producer_seeds.size()]);
  auto block = bb.finish(producer, sc_.params.genesis_timestamp + 60 * h + produced_++ % 60);
  const auto& f = p.flags;
  if (f.corrupt_proof || f.double_spend || f.bad_sig || f.orphan_parent) {
    apply_flags(block, f, p.label.empty() ? "block" : p.label);
    sign_block(block, producer);
  }
  if (!p.label.empty()) labels_[p.label] = block_hash(block);
  on_block(p.node, SIZE_MAX, block);
}

bool Simulation::linked(std::size_t a, std::size_t b) const {
  return now_ >= cut_until_ || cut_.contains(a) == cut_.contains(b);
}

void Simulation::send(std::size_t from, std::size_t to, Message m) {
  auto delay = sc_.base_delay_ms + (sc_.jitter_ms ? rng_() % (sc_.jitter_ms + 1) : 0);
  auto& last = link_clock_[{from, to}];
  auto at = std::max(now_ + delay, last);  // FIFO per link
  last = at;
  queue_.push({at, seq_++, from, to, std::move(m)});
}

void Simulation::broadcast(std::size_t from, const Message& m, std::size_t except) {
  for (std::size_t i = 0; i < nodes_.size(); ++i)
    if (i != from && i != except) send(from, i, m);
}

void Simulation::on_block(std::size_t at, std::size_t from, const Block& b) {
  auto& n = *nodes_[at];
  auto h = block_hash(b);
  n.requested.erase(h);
  if (n.tree.contains_block(h)) return;
  auto r = n.tree.submit(b);
  n.index.on_events(r.events);
  for (const auto& ev : r.events)
    if (ev.kind == ChainEvent::Connect) n.mempool.remove_included(*ev.node->block);
  // Producers push whatever they made; receivers only relay what they accept.
  if (from == SIZE_MAX || r.outcome == SubmitOutcome::Accepted || r.outcome == SubmitOutcome::Orphaned)
    broadcast(at, Inv{{h}}, from);
  if (r.outcome == SubmitOutcome::Orphaned && from != SIZE_MAX && !n.requested.contains(b.header.parent)) {
    n.requested.insert(b.header.parent);
    send(at, from, GetData{b.header.parent});
  }
}

void Simulation::deliver(const Event& e) {
  if (e.to == SIZE_MAX) {
    // Partition healed: everyone re-announces what it has.
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      nodes_[i]->requested.clear();
      Inv inv;
      for (const auto& g : nodes_[i]->tree.graph()) {
        const auto* node = nodes_[i]->tree.find(g.id);
        if (node->status == BlockStatus::Valid || node->status == BlockStatus::Orphan) inv.blocks.push_back(g.id);
      }
      broadcast(i, inv);
    }
    return;
  }
  if (!linked(e.from, e.to)) {
    ++dropped_;
    return;
  }
  ++messages_;
  auto& n = *nodes_[e.to];
  std::visit(
      [&](const auto& m) {
        using M = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<M, Inv>) {
          for (const auto& h : m.blocks) {
            if (n.tree.contains_block(h) || n.requested.contains(h)) continue;
            n.requested.insert(h);
            send(e.to, e.from, GetData{h});
          }
        } else if constexpr (std::is_same_v<M, GetData>) {
          const auto* node = n.tree.find(m.block);
          if (node && node->block) send(e.to, e.from, BlockMsg{*node->block});
        } else if constexpr (std::is_same_v<M, BlockMsg>) {
          on_block(e.to, e.from, m.block);
        } else {
          auto id = txid(m.tx);
          if (n.mempool.contains(id)) return;
          try {
            n.mempool.add(*n.tree.tip_state(), m.tx);
          } catch (const TxError&) {
            return;
          }
          broadcast(e.to, TxMsg{m.tx}, e.from);
        }
      },
      e.msg);
}

void Simulation::run(std::optional<std::uint64_t> until) {
  while (!queue_.empty()) {
    if (until && queue_.top().time > *until) break;
    auto e = queue_.top();
    queue_.pop();
    now_ = std::max(now_, e.time);
    deliver(e);
  }
  if (until) now_ = std::max(now_, *until);
}

void Simulation::run_step(const Step& step) {
  std::visit(
      [&](const auto& s) {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, ProduceStep>) {
          produce(s);
        } else if constexpr (std::is_same_v<S, DeliverStep>) {
          run(s.ms ? std::optional(now_ + *s.ms) : std::nullopt);
        } else if constexpr (std::is_same_v<S, PartitionStep>) {
          for (auto i : s.nodes)
            if (i >= nodes_.size()) throw ScenarioError("no node " + std::to_string(i));
          cut_ = {s.nodes.begin(), s.nodes.end()};
          cut_until_ = now_ + s.ms;
          queue_.push({cut_until_, seq_++, 0, SIZE_MAX, Inv{}});
        } else {
          if (s.node >= nodes_.size()) throw ScenarioError("no node " + std::to_string(s.node));
          auto& n = *nodes_[s.node];
          try {
            auto tx = build_tx(*n.tree.tip_state(), s.tx);
            n.mempool.add(*n.tree.tip_state(), tx);
            broadcast(s.node, TxMsg{tx});
          } catch (const BuildError&) {
            ++rejected_txs_;
          } catch (const TxError&) {
            ++rejected_txs_;
          }
        }
      },
      step);
}

RunReport Simulation::report() const {
  RunReport r;
  r.labels = labels_;
  r.messages = messages_;
  r.dropped = dropped_;
  r.rejected_txs = rejected_txs_;
  r.end_time_ms = now_;
  for (const auto& n : nodes_) {
    NodeReport nr;
    nr.tip = n->tree.tip();
    nr.height = n->tree.tip_node().height;
    nr.state_digest = n->tree.tip_state()->digest();
    auto snap = n->index.snapshot();
    nr.index_digest = snap->digest();
    nr.index_matches_rebuild = *snap == indexer::rebuild(n->tree);
    nr.graph = n->tree.graph();
    nr.dot = graph_dot(nr.graph);
    r.nodes.push_back(std::move(nr));
  }
  return r;
}

RunReport run_scenario(const Scenario& sc, const std::filesystem::path& fixture_dir) {
  Simulation sim(sc, fixture_dir);
  for (const auto& step : sc.steps) sim.run_step(step);
  sim.run();
  return sim.report();
}

}  // namespace fc::simnet
