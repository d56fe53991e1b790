// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <chrono>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "chain_harness.hpp"
#include "fc/api/api.hpp"
#include "fc/docform/check.hpp"
#include "fc/docform/text.hpp"
#include "fc/simnet/sim.hpp"
#include "json.hpp"
#include "lambda_oracle.hpp"
#include "mutate.hpp"

using namespace fc;
using namespace fc::ledger;
using namespace fc::testing;
using kernel::Ty;
namespace fs = std::filesystem;

namespace {

const fs::path kGolden = FC_GOLDEN_DIR;

struct Failed : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void need(bool ok, const std::string& what) {
  if (!ok) throw Failed(what);
}

using Clock = std::chrono::steady_clock;
double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

std::string fmt(double s) {
  std::ostringstream o;
  o.precision(2);
  o << std::fixed << s << " s";
  return o.str();
}

std::vector<fs::path> proof_docs() {
  std::vector<fs::path> out;
  for (const auto& e : fs::directory_iterator(kFixtures / "docs/proofs")) out.push_back(e.path());
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::string> shipped_scenarios() {
  std::vector<std::string> out;
  for (const auto& e : fs::directory_iterator(kFixtures / "scenarios")) out.push_back(e.path().filename().string());
  std::sort(out.begin(), out.end());
  return out;
}

simnet::Scenario shipped(const std::string& name) { return simnet::load_scenario(kFixtures / "scenarios" / name); }

// ------------------------------------------------------------------ 1

std::string kernel_fixture_suite() {
  constexpr double kLimit = 10.0;
  constexpr int kMutations = 200;
  auto t0 = Clock::now();
  auto base = docform::theory_signature(docform::builtin_theory());
  std::size_t docs = 0, thms = 0, rejected = 0, harmless = 0;
  for (const auto& p : proof_docs()) {
    auto doc = load_doc("proofs/" + p.filename().string());
    auto sig = base;
    docform::check_doc(sig, doc);
    ++docs;
    for (std::size_t i = 0; i < doc.items.size(); ++i) {
      if (const auto* thm = std::get_if<docform::ThmItem>(&doc.items[i])) {
        ++thms;
        auto stated = kernel::normalize(sig, thm->stmt, false);
        oracle::ProofMutator mut(sig, i * 1000003 + std::hash<std::string>{}(p.filename().string()));
        for (int k = 0; k < kMutations; ++k) {
          auto bad = mut.mutate(thm->proof);
          try {
            auto got = kernel::check_theorem(sig, thm->stmt, bad);
            need(got == stated, p.filename().string() + ": a mutation proved a different statement");
            ++harmless;
          } catch (const kernel::KernelError&) {
            ++rejected;
          }
        }
      }
      docform::Document prefix{doc.theory, {doc.items[i]}};
      docform::apply_effect(sig, docform::check_doc(sig, prefix));
    }
  }
  auto s = seconds_since(t0);
  need(docs >= 15, std::to_string(docs) + " proof documents, need 15");
  need(s < kLimit, "took " + fmt(s));
  return std::to_string(docs) + " documents, " + std::to_string(thms) + " theorems, " +
         std::to_string(rejected + harmless) + " mutations (" + std::to_string(rejected) + " rejected, " +
         std::to_string(harmless) + " alpha-equal) in " + fmt(s) + " (limit 10 s)";
}

// ------------------------------------------------------------------ 2

std::string normalization_oracle() {
  constexpr double kLimit = 60.0;
  constexpr std::size_t kMaxSize = 7;
  auto t0 = Clock::now();
  auto msig = oracle::two_constant_sig();
  kernel::Signature sig;
  sig.prims = msig.prims;
  auto terms = oracle::closed_well_typed(msig, kMaxSize, oracle::small_binder_types());
  std::size_t graph_nodes = 0;
  for (const auto& t : terms) {
    auto ex = oracle::explore_all_orders(t);
    graph_nodes += ex.visited;
    need(ex.normal_forms.size() == 1, "not confluent: " + oracle::key(t));
    need(kernel::normalize(sig, t, false) == ex.normal_forms.front(), "normal form differs: " + oracle::key(t));
  }
  auto s = seconds_since(t0);
  need(s < kLimit, "took " + fmt(s));
  return std::to_string(terms.size()) + " closed well-typed terms of size <= 7, " + std::to_string(graph_nodes) +
         " reducts explored, one normal form each, kernel agrees, in " + fmt(s) + " (limit 60 s)";
}

// ------------------------------------------------------------------ 3

std::map<std::string, std::string> computed_ids() {
  std::map<std::string, std::string> g;
  const auto sig = docform::theory_signature(docform::builtin_theory());
  g["term_id_identity_set"] = to_hex(kernel::term_id(sig, kernel::Term::la(Ty::set(), kernel::Term::db(0))));
  auto falsum = kernel::Term::all(Ty::prop(), kernel::Term::db(0));
  auto ff = kernel::Term::imp(falsum, falsum);
  g["prop_id_false_implies_false"] = to_hex(kernel::prop_id(sig, ff));
  g["theory_id_minihf"] = to_hex(builtin_theory_id());
  for (std::uint64_t s : {0, 1, 7}) {
    auto pk = KeyPair::from_seed(s).public_key();
    g["pubkey_seed_" + std::to_string(s)] = to_hex(pk);
    g["addr_seed_" + std::to_string(s)] = derive_addr(pk).hex();
  }
  g["prop_addr_minihf_false_implies_false"] = prop_addr(builtin_theory_id(), kernel::prop_id(sig, ff)).hex();
  Hash32 zero{};
  auto rp = gen_random_prop(zero);
  g["random_prop_zero_seed_bytes"] = to_hex(kernel::serialize(rp));
  g["random_prop_zero_seed_id"] = to_hex(kernel::prop_id(sig, rp));
  g["auto_bounty_addr_zero_parent"] = auto_bounty_addr(zero).hex();
  return g;
}

std::string corpus_record() {
  auto sig = docform::theory_signature(docform::builtin_theory());
  std::ostringstream record;
  for (const auto& p : proof_docs()) {
    auto effect = docform::check_doc(sig, load_doc("proofs/" + p.filename().string()));
    for (const auto& t : effect.thms) record << p.filename().string() << " " << t.name << " " << to_hex(t.id) << "\n";
  }
  return record.str();
}

std::string golden_ids() {
  std::map<std::string, std::string> golden;
  std::ifstream in(kGolden / "ids.txt");
  for (std::string k, v; in >> k >> v;) golden[k] = v;
  need(!golden.empty(), "no golden ids file");
  auto first = computed_ids();
  need(first == computed_ids(), "ids differ between two computations");
  for (const auto& [k, v] : golden) {
    need(first.contains(k), "no computation for " + k);
    need(first[k] == v, k + " is " + first[k] + ", golden " + v);
  }
  std::ifstream cf(kGolden / "proof_corpus.txt");
  std::string corpus{std::istreambuf_iterator<char>(cf), {}};
  auto rec = corpus_record();
  need(rec == corpus, "proof corpus theorem ids differ from the golden file");
  auto lines = std::count(rec.begin(), rec.end(), '\n');
  return std::to_string(golden.size()) + " term/theory/address vectors and " + std::to_string(lines) +
         " corpus theorem ids equal the reference-oracle files";
}

// ------------------------------------------------------------------ 4

std::string bounty_lifecycle() {
  auto sc = shipped("lifecycle.json");
  simnet::Simulation sim(sc, kFixtures);
  for (const auto& s : sc.steps) sim.run_step(s);
  sim.run();
  auto report = sim.report();
  need(report.converged(), "nodes disagree");
  need(report.rejected_txs == 0, "a scripted transaction was rejected");
  const auto proved = conj_addr("singleton_mem"), refuted = conj_addr("empty_self_member"),
             open = conj_addr("empty_in_pair");
  // Hand-computed sheet (bars): producers alternate by height parity, each coinbase
  // pays 975 after the 25-bar automatic bounty.
  const std::map<std::uint64_t, std::uint64_t> currency = {{0, 3959}, {1, 3900}, {10, 769}, {11, 24}, {12, 119}};
  for (std::size_t i = 0; i < sc.nodes; ++i) {
    const auto& st = *sim.node(i).tree.tip_state();
    auto at = "node " + std::to_string(i) + ": ";
    need(st.height == 8, at + "height " + std::to_string(st.height));
    for (const auto& [seed, bars] : currency) {
      std::uint64_t sum = 0;
      for (const auto* a : spendable(st, KeyPair::from_seed(seed).public_key())) sum += value_of(a->payload);
      need(sum == bars * kBar, at + "key " + std::to_string(seed) + " holds " + std::to_string(sum));
    }
    need(st.fees_burned == 4 * kBar, at + "fees");
    need(st.subsidies == 9000 * kBar, at + "subsidies");
    std::uint64_t auto_open = 0, user_open = 0;
    for (const auto& [id, a] : st.live) {
      if (!std::holds_alternative<Bounty>(a.payload)) continue;
      (a.addr == open ? user_open : auto_open) += value_of(a.payload);
      need(!(a.addr == proved) && !(a.addr == refuted), at + "collected bounty still live");
    }
    need(auto_open == 200 * kBar && user_open == 25 * kBar, at + "open bounties");
    auto owner = [&](const Addr& prop, bool neg) -> std::optional<Addr> {
      for (const auto* a : st.assets_at(prop)) {
        if (const auto* o = std::get_if<OwnsProp>(&a->payload); o && !neg) return o->holder;
        if (const auto* o = std::get_if<OwnsNegProp>(&a->payload); o && neg) return o->holder;
      }
      return std::nullopt;
    };
    need(owner(proved, false) == derive_addr(KeyPair::from_seed(10).public_key()), at + "proof ownership");
    need(owner(refuted, true) == derive_addr(KeyPair::from_seed(12).public_key()), at + "disproof ownership");
    auto snap = sim.node(i).index.snapshot();
    std::size_t by_proof = 0, by_disproof = 0;
    for (const auto& [id, b] : snap->bounties)
      if (b.collected) (b.collected->by_disproof ? by_disproof : by_proof) += b.amount;
    need(by_proof == 750 * kBar && by_disproof == 100 * kBar, at + "collections in the index");
  }
  return "750 collected by proof, 100 by disproof via OwnsNegProp; balances, fees, subsidies and open bounties "
         "equal the hand-computed sheet on all " +
         std::to_string(sc.nodes) + " nodes";
}

// ------------------------------------------------------------------ 5

std::string graph_classification() {
  const std::map<std::string, std::size_t> fixture = {{"green", 1}, {"blue", 2}, {"pink", 4},
                                                      {"yellow", 1}, {"red", 1}, {"gray", 3}};
  auto sc = shipped("contested.json");
  need(sc.expect_classes == fixture, "scenario file expectation differs from the fixture");
  auto a = simnet::run_scenario(sc, kFixtures);
  auto b = simnet::run_scenario(sc, kFixtures);
  for (std::size_t i = 0; i < a.nodes.size(); ++i) {
    need(a.nodes[i].graph.size() == 12, "node " + std::to_string(i) + " has " + std::to_string(a.nodes[i].graph.size()) + " graph nodes");
    need(a.class_counts(i) == fixture, "node " + std::to_string(i) + " class counts differ");
    need(a.nodes[i].dot == b.nodes[i].dot, "DOT differs between runs at node " + std::to_string(i));
  }
  return "12 blocks at each of " + std::to_string(a.nodes.size()) +
         " nodes: green 1, blue 2, pink 4, yellow 1, red 1, plain 3; DOT byte-identical across runs";
}

// ------------------------------------------------------------------ 6

// Disconnects the main chain down to genesis and reconnects it.
bool round_trips(const ChainTree& tree) {
  auto snap = indexer::rebuild(tree);
  auto orig = snap;
  auto chain = tree.main_chain();
  for (auto it = chain.rbegin(); it + 1 != chain.rend(); ++it) indexer::apply_disconnect(snap, *tree.find(*it));
  if (!(snap == indexer::rebuild(tree, tree.genesis()))) return false;
  for (std::size_t i = 1; i < chain.size(); ++i) indexer::apply_connect(snap, *tree.find(chain[i]));
  return snap == orig;
}

std::string indexer_oracle() {
  std::size_t runs = 0, nodes = 0;
  auto check = [&](const simnet::Scenario& sc, const std::string& name) {
    simnet::Simulation sim(sc, kFixtures);
    for (const auto& s : sc.steps) sim.run_step(s);
    sim.run();
    auto r = sim.report();
    for (std::size_t i = 0; i < r.nodes.size(); ++i) {
      need(r.nodes[i].index_matches_rebuild, name + " node " + std::to_string(i) + ": incremental differs from rebuild");
      need(round_trips(sim.node(i).tree), name + " node " + std::to_string(i) + ": connect/disconnect not inverse");
      ++nodes;
    }
    ++runs;
  };
  for (const auto& f : shipped_scenarios()) check(shipped(f), f);
  for (std::uint64_t seed = 1; seed <= 100; ++seed) check(simnet::random_scenario(seed), "seed " + std::to_string(seed));
  return std::to_string(runs) + " scenarios (shipped + 100 random), " + std::to_string(nodes) +
         " node indexes equal full rebuild; disconnect-to-genesis then reconnect is identity";
}

// ------------------------------------------------------------------ 7

std::string reorg_correctness() {
  std::size_t checked = 0, reorged = 0;
  auto check = [&](const simnet::Scenario& sc, const std::string& name) {
    simnet::Simulation sim(sc, kFixtures);
    for (const auto& s : sc.steps) sim.run_step(s);
    sim.run();
    for (std::size_t i = 0; i < sc.nodes; ++i) {
      const auto& tree = sim.node(i).tree;
      bool abandoned = false;
      for (const auto& g : tree.graph())
        abandoned |= !g.main_chain && tree.find(g.id)->status == BlockStatus::Valid;
      if (!abandoned) continue;
      ChainTree fresh(tree.params());
      auto chain = tree.main_chain();
      for (std::size_t k = 1; k < chain.size(); ++k) fresh.submit(*tree.find(chain[k])->block);
      need(fresh.tip() == tree.tip(), name + ": replay reached a different tip");
      need(fresh.tip_state()->digest() == tree.tip_state()->digest(), name + ": state digest differs from replay");
      need(*fresh.tip_state() == *tree.tip_state(), name + ": state differs from replay");
      ++reorged;
    }
    ++checked;
  };
  check(shipped("fork.json"), "fork.json");
  need(reorged > 0, "fork.json produced no abandoned branch");
  for (std::uint64_t seed = 1; seed <= 20; ++seed) check(simnet::random_scenario(seed), "seed " + std::to_string(seed));
  return std::to_string(reorged) + " node states with abandoned branches (fork.json + 20 random) equal a fresh "
         "replay of the winning chain";
}

// ------------------------------------------------------------------ 8

std::string auto_bounties() {
  Harness h(params_for({0}, 50));
  const auto& p = h.tree.params();
  need(p.auto_bounty_blocks == 10, "auto bounty window is not 10");
  const auto sig = docform::theory_signature(docform::builtin_theory());
  std::size_t rejected = 0;
  for (std::uint64_t height = 1; height <= 12; ++height) {
    auto parent = h.tip().tip;
    auto b = make_block(h.tip(), h.producer, {});
    // The address is recomputed here from the proposition itself.
    auto expect = prop_addr(builtin_theory_id(), kernel::prop_id(sig, gen_random_prop(parent)));
    std::size_t found = 0;
    for (const auto& o : b.txs[0].outputs)
      if (const auto* bo = std::get_if<Bounty>(&o.payload)) {
        need(o.addr == expect, "bounty at the wrong address at height " + std::to_string(height));
        need(bo->amount == p.auto_bounty_amount, "bounty amount at height " + std::to_string(height));
        ++found;
      }
    need(found == (height <= 10 ? 1u : 0u), "height " + std::to_string(height) + " carries " + std::to_string(found));
    if (height <= 10) {
      auto bad = b;
      bad.txs[0].outputs = {{derive_addr(h.producer.public_key()), Currency{p.subsidy}}};
      sign_block(bad, h.producer);
      try {
        validate_block(h.tip(), bad);
        need(false, "block without the bounty accepted at height " + std::to_string(height));
      } catch (const BlockError& e) {
        need(e.code() == BlockErrorCode::AutoBountyMissing, "wrong rejection reason");
        ++rejected;
      }
    }
    need(h.tree.submit(b).outcome == SubmitOutcome::Accepted, "honest block rejected");
  }
  return "blocks 1-10 carry 25 bars at the address of gen_random_prop(parent), 11-12 carry none; " +
         std::to_string(rejected) + " blocks omitting it rejected (AutoBountyMissing)";
}

// ------------------------------------------------------------------ 9

std::string category_corpus() {
  constexpr double kLimit = 5.0;
  auto t0 = Clock::now();
  const auto& th = theories()[1];
  auto text = docform::read_file(kFixtures / "docs/category.pfgd");
  auto doc = docform::parse_doc(text, docform::resolver_for(theories()));
  auto sig = docform::theory_signature(th);
  auto effect = docform::check_doc(sig, doc);
  std::set<std::string> names;
  for (const auto& item : doc.items) names.insert(docform::item_name(item));
  for (const auto* n : {"lam_id_mem", "BinRelnHom_char", "MetaCat_sets", "IrrPartOrd_left_adjoint_forgetful", "F0", "F1",
                        "eta", "eps"})
    need(names.contains(n), std::string("missing item ") + n);
  // Declared types: each definition body has its declared type, each conjecture is a proposition.
  auto check_sig = docform::theory_signature(th);
  docform::apply_effect(check_sig, effect);
  for (const auto& item : doc.items) {
    if (const auto* d = std::get_if<docform::DefItem>(&item))
      need(kernel::typecheck(check_sig, {}, d->body) == d->ty, d->name + " has another type");
    if (const auto* c = std::get_if<docform::ConjItem>(&item))
      need(kernel::typecheck(check_sig, {}, c->stmt) == Ty::prop(), c->name + " is not a proposition");
  }
  auto printed = docform::print_doc(doc, th);
  auto again = docform::parse_doc(printed, docform::resolver_for(theories()));
  need(again == doc, "print/parse round trip changed the document");
  need(docform::print_doc(again, th) == printed, "printing is not stable");
  auto s = seconds_since(t0);
  need(s < kLimit, "took " + fmt(s));
  return std::to_string(effect.defs.size()) + " definitions and " + std::to_string(effect.conjs.size()) +
         " conjectures parse, typecheck and round-trip in " + fmt(s) + " (limit 5 s)";
}

// ------------------------------------------------------------------ 10

std::string simnet_convergence() {
  std::size_t runs = 0;
  auto check = [&](const simnet::Scenario& sc, const std::string& name) {
    auto r = simnet::run_scenario(sc, kFixtures);
    need(r.converged(), name + " did not converge");
    for (const auto& n : r.nodes)
      need(n.state_digest == r.nodes[0].state_digest && n.index_digest == r.nodes[0].index_digest,
           name + ": digests differ");
    auto again = simnet::run_scenario(sc, kFixtures);
    need(again.nodes[0].index_digest == r.nodes[0].index_digest, name + " is not deterministic");
    ++runs;
  };
  for (const auto& f : shipped_scenarios()) check(shipped(f), f);
  for (std::uint64_t seed = 1; seed <= 50; ++seed) check(simnet::random_scenario(seed), "seed " + std::to_string(seed));
  return std::to_string(runs) + " scenarios (shipped + 50 random): one tip and equal state and index digests per run, "
         "identical on rerun";
}

// ------------------------------------------------------------------ 11

std::map<std::string, std::string> crawl(const api::Node& node) {
  api::Api a(node.params().producers.empty() ? throw Failed("no producers") : const_cast<api::Node&>(node));
  std::map<std::string, std::string> out;
  for (const auto& p : api::enumerate_get_paths(node)) {
    auto r = a.handle({"GET", p, {}, ""});
    need(r.status == 200, p + " returned " + std::to_string(r.status));
    out[p] = r.body;
  }
  return out;
}

std::string api_purity() {
  auto sc = shipped("contested.json");
  simnet::Simulation sim(sc, kFixtures);
  for (const auto& s : sc.steps) sim.run_step(s);
  sim.run();
  auto dir = fs::temp_directory_path() / ("fc-accept-" + std::to_string(std::random_device{}()));
  fs::create_directories(dir);
  struct Cleanup {
    fs::path p;
    ~Cleanup() { fs::remove_all(p); }
  } cleanup{dir};
  std::map<std::string, std::string> first;
  Hash32 digest{};
  {
    api::Node node(sc.params, {dir / "blocks.dat", {}});
    const auto& tree = sim.node(0).tree;
    for (const auto& g : tree.graph())
      if (const auto* n = tree.find(g.id); n && n->block) node.submit_block(*n->block);
    digest = node.snapshot()->digest();
    first = crawl(node);
  }
  for (int restart = 1; restart <= 2; ++restart) {
    api::Node node(sc.params, {dir / "blocks.dat", {}});
    need(node.snapshot()->digest() == digest, "snapshot digest changed after restart");
    need(crawl(node) == first, "a GET body changed after restart " + std::to_string(restart));
  }

  // POST /tx against direct validation on a view extended by the accepted ones.
  api::Node node(params_for({0}));
  KeyPair producer = KeyPair::from_seed(0);
  std::vector<KeyPair> users;
  for (std::uint64_t s = 20; s < 24; ++s) users.push_back(KeyPair::from_seed(s));
  auto tip = [&] { return node.read([](const ChainTree& t, const Mempool&) { return *t.tip_state(); }); };
  node.produce(producer);
  for (const auto& u : users) {
    node.submit_tx(make_transfer(tip(), producer, derive_addr(u.public_key()), 100 * kBar, 1));
    node.produce(producer);
  }
  api::Api a(node);
  ChainState view = tip(), stale = view;
  std::mt19937_64 rng(11);
  std::size_t accepted = 0, rejected = 0, total = 0;
  const std::vector<std::string> docs = {"proofs/and.pfgd", "proofs/iff.pfgd", "proofs/eq.pfgd"};
  while (total < 30) {
    const auto& from = users[rng() % users.size()];
    auto to = derive_addr(users[rng() % users.size()].public_key());
    Tx tx;
    try {
      switch (total % 6) {
        case 0: tx = make_transfer(view, from, to, (1 + rng() % 40) * kBar, 1); break;
        case 1: tx = make_marker(view, from, load_doc(docs[rng() % docs.size()]), 1); break;
        case 2: tx = make_bounty(view, from, conj_addr("singleton_mem"), (1 + rng() % 5) * kBar, 1); break;
        case 3: tx = make_transfer(stale, from, to, 2 * kBar, 1); break;
        case 4:
          tx = make_transfer(view, from, to, kBar, 1);
          tx.inputs[0].sig[0] ^= 1;
          break;
        default:
          tx = make_transfer(view, from, to, kBar, 1);
          tx.outputs[0].payload = Currency{1'000'000 * kBar};
          break;
      }
    } catch (const BuildError&) {
      continue;
    }
    ++total;
    auto r = a.handle({"POST", "/tx", {}, to_hex(serialize(tx))});
    std::optional<std::string> direct;
    try {
      apply_tx(view, validate_tx(view, tx, view.height + 1));
    } catch (const TxError& e) {
      direct = tx_error_name(e.code());
    }
    if (!direct) {
      need(r.status == 200, "tx " + std::to_string(total) + " valid directly, rejected by the API");
      ++accepted;
    } else {
      auto j = nlohmann::json::parse(r.body);
      need(r.status == 400 && j["error"]["reason"] == *direct,
           "tx " + std::to_string(total) + " rejected directly (" + *direct + "), API said " + r.body);
      ++rejected;
    }
  }
  return std::to_string(first.size()) + " GET bodies byte-identical across 2 restarts; 30 POST /tx decisions (" +
         std::to_string(accepted) + " accepted, " + std::to_string(rejected) + " rejected) equal validate_tx";
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::string (*)()>> criteria = {
      {"kernel fixture suite", kernel_fixture_suite},
      {"normalization oracle", normalization_oracle},
      {"golden ids", golden_ids},
      {"bounty lifecycle", bounty_lifecycle},
      {"graph classification", graph_classification},
      {"indexer oracle", indexer_oracle},
      {"reorg correctness", reorg_correctness},
      {"auto-bounties", auto_bounties},
      {"category corpus", category_corpus},
      {"simnet convergence", simnet_convergence},
      {"api purity", api_purity},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto& [name, run] = criteria[i];
    std::string status = "PASS", detail;
    try {
      detail = run();
    } catch (const std::exception& e) {
      status = "FAIL";
      detail = e.what();
      ++failed;
    }
    std::cout << status << " " << (i + 1) << " " << name << ": " << detail << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
