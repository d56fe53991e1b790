#include <gtest/gtest.h>

#include <atomic>
#include <random>

#include "chain_harness.hpp"
#include "fc/indexer/index.hpp"
#include "fc/simnet/workload.hpp"

using namespace fc;
using namespace fc::ledger;
using namespace fc::testing;
using namespace fc::indexer;

namespace {

std::uint64_t distinct_holders(const ChainState& st) {
  std::uint64_t n = 0;
  for (const auto& [addr, ids] : st.by_addr) n += !ids.empty();
  return n;
}

void expect_consistent(const IndexSnapshot& s, const ChainState& st) {
  EXPECT_EQ(s.stats.coin_circulation, st.coin_supply());
  EXPECT_EQ(s.stats.address_count, distinct_holders(st));
  EXPECT_EQ(s.stats.height, st.height);
  EXPECT_EQ(s.tip, st.tip);
  for (const auto& [from, to] : s.deps)
    for (const auto& a : to) EXPECT_TRUE(s.entities.contains(a)) << from.hex() << " -> " << a.hex();
  for (const auto& [id, b] : s.bounties) EXPECT_EQ(b.collected.has_value(), st.spent.contains(id));
}

// Follows a tree through its submit events, as the node does.
struct Tracked {
  explicit Tracked(ChainParams p) : h(std::move(p)), snap(rebuild(h.tree)) {}
  Harness h;
  IndexSnapshot snap;

  SubmitResult track(SubmitResult r) {
    apply_events(snap, r.events);
    return r;
  }
  SubmitResult mine(const std::vector<Tx>& txs = {}) { return track(h.mine(txs)); }
  SubmitResult mine_with(const std::function<void(BlockBuilder&)>& fill) { return track(h.mine_with(fill)); }
};

const std::vector<docform::Document>& workload_docs() {
  static const auto docs = [] {
    std::vector<docform::Document> out;
    for (const auto* rel : {"lifecycle/conjectures.pfgd", "lifecycle/prove_singleton_mem.pfgd",
                            "lifecycle/refute_empty_self_member.pfgd", "proofs/identity.pfgd",
                            "proofs/k_combinator.pfgd", "proofs/refute.pfgd", "category.pfgd"})
      out.push_back(load_doc(rel));
    return out;
  }();
  return docs;
}

simnet::Workload make_workload() {
  simnet::WorkloadConfig cfg;
  cfg.user_seeds = {0, 1, 10, 11};
  cfg.docs = workload_docs();
  cfg.theories = {theories()[1]};
  return simnet::Workload(cfg);
}

}  // namespace

TEST(Index, EmptySnapshotHasZeroStats) {
  IndexSnapshot s;
  EXPECT_EQ(s.stats, Stats{});
  auto v = bounty_views(s);
  EXPECT_TRUE(v.highest_open.empty());
  EXPECT_TRUE(v.highest_collected.empty());
  EXPECT_TRUE(v.categories.empty());
}

TEST(Index, GenesisOnly) {
  ChainTree tree(params_for({0}));
  auto s = rebuild(tree);
  EXPECT_EQ(s.stats.height, 0u);
  EXPECT_EQ(s.stats.blocks, 1u);
  EXPECT_EQ(s.stats.coin_circulation, 1000 * kBar);
  EXPECT_EQ(s.stats.address_count, 1u);
  EXPECT_EQ(s.stats.tx_count, 0u);
  auto th = builtin_theory_id();
  const auto* e = s.entity(prop_addr(th, th));
  ASSERT_NE(e, nullptr);
  EXPECT_EQ(e->kind(), PubKind::Theory);
  EXPECT_EQ(e->name(), "minihf");
  std::size_t axioms = 0;
  for (const auto& [a, ent] : s.entities) axioms += ent.kind() == PubKind::Axiom;
  EXPECT_EQ(axioms, docform::builtin_theory().axioms.size());
  EXPECT_EQ(s.entities.size(), axioms + 1);
  expect_consistent(s, *tree.tip_state());
}

TEST(Index, DocumentAddsOneEntityPerItem) {
  Tracked t(params_for({0}));
  auto alice = KeyPair::from_seed(0);
  auto doc = load_doc("lifecycle/conjectures.pfgd");
  t.mine({make_marker(t.h.tip(), alice, doc, kBar)});
  for (int i = 0; i < 4; ++i) t.mine();
  auto before = t.snap.entities.size();
  ASSERT_EQ(t.mine({make_doc_pub(t.h.tip(), alice, doc)}).outcome, SubmitOutcome::Accepted);
  EXPECT_EQ(t.snap.entities.size(), before + 3);
  const auto* e = t.snap.entity(conj_addr("singleton_mem"));
  ASSERT_NE(e, nullptr);
  EXPECT_EQ(e->kind(), PubKind::Conj);
  EXPECT_EQ(e->status(), "conjecture");
  EXPECT_EQ(e->tag(), "AbstrHF");
  EXPECT_FALSE(e->owner());
  auto me = derive_addr(alice.public_key());
  EXPECT_EQ(t.snap.authorship.at(me).size(), 3u);
  EXPECT_EQ(t.snap, rebuild(t.h.tree));
  expect_consistent(t.snap, t.h.tip());
}

namespace {

// 750 on P and 100 on Q, one automatic 25; P proven (or refuted) and collected.
Tracked bounty_scenario(bool disproof) {
  auto p = params_for({0});
  p.auto_bounty_blocks = 1;
  Tracked t(p);
  auto bob = KeyPair::from_seed(11);
  auto alice = KeyPair::from_seed(10);
  auto P = conj_addr(disproof ? "empty_self_member" : "singleton_mem");
  auto Q = conj_addr("empty_in_pair");
  auto conjs = load_doc("lifecycle/conjectures.pfgd");
  auto proof = load_doc(disproof ? "lifecycle/refute_empty_self_member.pfgd" : "lifecycle/prove_singleton_mem.pfgd");
  t.mine();
  t.mine_with([&](BlockBuilder& bb) {
    bb.add(make_transfer(bb.view(), t.h.producer, derive_addr(bob.public_key()), 900 * kBar));
    bb.add(make_transfer(bb.view(), t.h.producer, derive_addr(alice.public_key()), 20 * kBar));
  });
  t.mine_with([&](BlockBuilder& bb) {
    bb.add(make_bounty(bb.view(), bob, P, 750 * kBar, kBar));
    bb.add(make_bounty(bb.view(), bob, Q, 100 * kBar));
    bb.add(make_marker(bb.view(), t.h.producer, conjs, kBar));
    bb.add(make_marker(bb.view(), alice, proof, kBar));
  });
  for (int i = 0; i < 4; ++i) t.mine();
  t.mine({make_doc_pub(t.h.tip(), t.h.producer, conjs)});
  t.mine({make_doc_pub(t.h.tip(), alice, proof)});
  auto r = t.mine({make_collect(t.h.tip(), alice, P)});
  EXPECT_EQ(r.outcome, SubmitOutcome::Accepted) << r.reason;
  return t;
}

}  // namespace

TEST(BountyViews, OpenAndCollected) {
  for (bool disproof : {false, true}) {
    auto t = bounty_scenario(disproof);
    auto v = bounty_views(t.snap);
    ASSERT_EQ(v.highest_open.size(), 2u);
    EXPECT_EQ(v.highest_open[0].amount, 100 * kBar);
    EXPECT_EQ(v.highest_open[0].addr, conj_addr("empty_in_pair"));
    EXPECT_EQ(v.highest_open[1].amount, 25 * kBar);
    ASSERT_EQ(v.highest_collected.size(), 1u);
    EXPECT_EQ(v.highest_collected[0].amount, 750 * kBar);
    EXPECT_EQ(v.highest_collected[0].collection.by_disproof, disproof);
    EXPECT_EQ(v.highest_collected[0].collection.collector, derive_addr(KeyPair::from_seed(10).public_key()));
    EXPECT_EQ(v.categories.at("AbstrHF").collected, 750 * kBar);
    EXPECT_EQ(v.categories.at("AbstrHF").open, 0u);
    EXPECT_EQ(v.categories.at("Other").open, 125 * kBar);

    auto P = conj_addr(disproof ? "empty_self_member" : "singleton_mem");
    const auto* e = t.snap.entity(P);
    ASSERT_NE(e, nullptr);
    EXPECT_EQ(e->status(), disproof ? "disproven" : "proven");
    EXPECT_EQ(e->pubs.size(), 2u);
    EXPECT_EQ(t.snap, rebuild(t.h.tree));
    expect_consistent(t.snap, t.h.tip());
  }
}

TEST(BountyViews, AutomaticBountyKnowsItsStatement) {
  auto t = bounty_scenario(false);
  std::size_t automatic = 0;
  for (const auto& [id, b] : t.snap.bounties) {
    if (!b.automatic) continue;
    ++automatic;
    ASSERT_TRUE(b.stmt);
    EXPECT_EQ(b.addr, auto_bounty_addr(t.h.tree.genesis()));
    EXPECT_FALSE(b.placer);
  }
  EXPECT_EQ(automatic, 1u);
}

TEST(BountyViews, EqualOpenBountiesOrderByAddress) {
  Tracked t(params_for({0}));
  auto a = conj_addr("singleton_mem"), b = conj_addr("empty_in_pair"), c = conj_addr("empty_self_member");
  t.mine();
  t.mine_with([&](BlockBuilder& bb) {
    for (const auto& addr : {a, b, c}) bb.add(make_bounty(bb.view(), t.h.producer, addr, 40 * kBar));
  });
  auto v = bounty_views(t.snap);
  std::vector<Addr> forty;
  for (const auto& o : v.highest_open)
    if (o.amount == 40 * kBar) forty.push_back(o.addr);
  ASSERT_EQ(forty.size(), 3u);
  EXPECT_TRUE(std::is_sorted(forty.begin(), forty.end()));
  for (std::size_t i = 1; i < v.highest_open.size(); ++i)
    EXPECT_GE(v.highest_open[i - 1].amount, v.highest_open[i].amount);
}

TEST(Index, ConnectThenDisconnectIsIdentity) {
  auto t = bounty_scenario(true);
  auto chain = t.h.tree.main_chain();
  IndexSnapshot s;
  for (const auto& h : chain) {
    const auto& node = *t.h.tree.find(h);
    auto before = s;
    apply_connect(s, node);
    auto after = s;
    apply_disconnect(s, node);
    EXPECT_EQ(s, before) << "height " << node.height;
    EXPECT_EQ(s.digest(), before.digest());
    s = std::move(after);
  }
  EXPECT_EQ(s, t.snap);
}

TEST(Index, InconsistentEventsAreRejected) {
  auto t = bounty_scenario(false);
  const auto& tip = t.h.tree.tip_node();
  auto s = t.snap;
  EXPECT_THROW(apply_connect(s, tip), InconsistentEvent);  // does not extend the tip
  IndexSnapshot empty;
  EXPECT_THROW(apply_disconnect(empty, tip), InconsistentEvent);
}

TEST(Index, SerializationIsCanonical) {
  auto a = bounty_scenario(false);
  auto b = bounty_scenario(false);
  EXPECT_EQ(a.snap.serialize(), b.snap.serialize());
  auto c = bounty_scenario(true);
  EXPECT_NE(a.snap.digest(), c.snap.digest());
}

namespace {

// Random chain with forks: each block extends either the tip or a random
// earlier valid node, so submits regularly reorganize.
void random_chain(std::uint64_t seed, const std::function<void(ChainTree&, const SubmitResult&)>& after) {
  std::mt19937_64 rng(seed);
  auto params = params_for({0, 1});
  ChainTree tree(params);
  static const auto workload = make_workload();
  std::vector<BlockHash> valid{tree.genesis()};
  int blocks = std::uniform_int_distribution<int>(12, 24)(rng);
  for (int i = 0; i < blocks; ++i) {
    BlockHash parent = tree.tip();
    if (std::uniform_int_distribution<int>(0, 3)(rng) == 0) parent = valid[rng() % valid.size()];
    const auto& node = *tree.find(parent);
    BlockBuilder bb(*node.state);
    workload.fill(bb, rng);
    auto producer = KeyPair::from_seed((node.height + 1) % 2);
    auto ts = params.genesis_timestamp + 60 * (node.height + 1) + rng() % 60;
    auto r = tree.submit(bb.finish(producer, ts));
    ASSERT_EQ(r.outcome, SubmitOutcome::Accepted) << r.reason;
    valid.push_back(r.hash);
    after(tree, r);
  }
}

}  // namespace

TEST(IndexOracle, RandomScenariosMatchRebuild) {
  std::size_t reorgs = 0, docs = 0, collections = 0, theories_published = 0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    std::optional<IndexSnapshot> snap;
    random_chain(seed, [&](ChainTree& tree, const SubmitResult& r) {
      if (!snap) snap = rebuild(tree, tree.genesis());
      for (const auto& ev : r.events) {
        if (ev.kind == ChainEvent::Disconnect) ++reorgs;
        if (ev.kind == ChainEvent::Connect)
          for (const auto& eff : ev.node->effects) {
            docs += eff.doc_id.has_value();
            theories_published += eff.theory.has_value();
            collections += eff.collections.size();
          }
      }
      apply_events(*snap, r.events);
      ASSERT_EQ(*snap, rebuild(tree)) << "seed " << seed << " height " << tree.tip_node().height;
      expect_consistent(*snap, *tree.tip_state());
    });
  }
  EXPECT_GT(reorgs, 0u);
  EXPECT_GT(docs, 0u);
  EXPECT_GT(collections, 0u);
  EXPECT_GT(theories_published, 0u);
}

TEST(Indexer, TimerRebuildMatchesIncremental) {
  Harness h(params_for({0}));
  std::mutex tree_mu;
  Indexer idx(h.tree, RefreshConfig{std::chrono::milliseconds(5)});
  idx.start_timer([&](const std::function<void(const ChainTree&)>& f) {
    std::lock_guard lock(tree_mu);
    f(h.tree);
  });
  for (int i = 0; i < 6; ++i) {
    std::lock_guard lock(tree_mu);
    auto r = h.mine();
    idx.on_events(r.events);
  }
  auto deadline = std::chrono::steady_clock::now() + std::chrono::seconds(5);
  while (idx.rebuild_count() < 2 && std::chrono::steady_clock::now() < deadline)
    std::this_thread::sleep_for(std::chrono::milliseconds(2));
  idx.stop_timer();
  EXPECT_GE(idx.rebuild_count(), 2u);
  std::lock_guard lock(tree_mu);
  EXPECT_EQ(*idx.snapshot(), rebuild(h.tree));
  EXPECT_EQ(idx.snapshot()->stats.height, 6u);
}

TEST(Indexer, ReadersKeepTheirSnapshot) {
  Harness h(params_for({0}));
  Indexer idx(h.tree);
  auto old = idx.snapshot();
  idx.on_events(h.mine().events);
  EXPECT_EQ(old->stats.height, 0u);
  EXPECT_EQ(idx.snapshot()->stats.height, 1u);
  std::atomic<bool> stop{false};
  std::atomic<std::size_t> torn{0};
  std::thread reader([&] {
    while (!stop) {
      auto s = idx.snapshot();
      if (s->stats.blocks != s->stats.height + 1) ++torn;
    }
  });
  for (int i = 0; i < 20; ++i) {
    idx.on_events(h.mine().events);
    if (i % 5 == 0) idx.rebuild_now(h.tree);
  }
  stop = true;
  reader.join();
  EXPECT_EQ(torn.load(), 0u);
  EXPECT_EQ(*idx.snapshot(), rebuild(h.tree));
}
