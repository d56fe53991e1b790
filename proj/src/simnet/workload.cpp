#include "fc/simnet/workload.hpp"

#include <algorithm>

#include "fc/docform/corpus.hpp"

namespace fc::simnet {

using namespace ledger;

namespace {

template <class T>
const T& pick(const std::vector<T>& v, std::mt19937_64& rng) {
  return v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng)];
}

}  // namespace

Workload::Workload(WorkloadConfig cfg) : cfg_(std::move(cfg)) {
  for (auto s : cfg_.user_seeds) users_.push_back(crypto::KeyPair::from_seed(s));
  std::set<Addr> seen;
  for (const auto& doc : cfg_.docs) {
    std::optional<kernel::Signature> sig;
    if (doc.theory == builtin_theory_id()) sig = docform::theory_signature(docform::builtin_theory());
    for (const auto& th : cfg_.theories)
      if (docform::theory_id(th) == doc.theory) sig = docform::theory_signature(th);
    if (!sig) continue;
    try {
      auto eff = docform::check_doc(*sig, doc);
      for (const auto& c : eff.conjs) seen.insert(prop_addr(doc.theory, c.id));
      for (const auto& t : eff.thms) {
        seen.insert(prop_addr(doc.theory, t.id));
        if (t.refutes) seen.insert(prop_addr(doc.theory, *t.refutes));
      }
    } catch (const docform::DocError&) {
    }
  }
  targets_.assign(seen.begin(), seen.end());
}

std::optional<Tx> Workload::attempt(const ChainState& st, std::mt19937_64& rng) const {
  const auto& me = pick(users_, rng);
  auto fee = std::uniform_int_distribution<std::uint64_t>(0, 2)(rng) * (kAtomsPerBar / 100);
  auto amount = std::uniform_int_distribution<std::uint64_t>(1, cfg_.max_amount)(rng);
  switch (std::uniform_int_distribution<int>(0, 9)(rng)) {
    case 0:
    case 1:
    case 2:
      return make_transfer(st, me, derive_addr(pick(users_, rng).public_key()), amount, fee);
    case 3:
    case 4:
      if (targets_.empty()) return std::nullopt;
      return make_bounty(st, me, pick(targets_, rng), amount, fee);
    case 5:
    case 6:
      if (cfg_.docs.empty()) return std::nullopt;
      return make_marker(st, me, pick(cfg_.docs, rng), fee + 1);
    case 7:
      if (cfg_.docs.empty()) return std::nullopt;
      return make_doc_pub(st, me, pick(cfg_.docs, rng), fee);
    case 8: {
      // Only bounties this user can redeem; random targets would almost never be.
      auto mine = derive_addr(me.public_key());
      std::vector<Addr> redeemable;
      for (const auto& t : targets_) {
        bool owns = false, bounty = false;
        for (const auto* a : st.assets_at(t)) {
          bounty |= std::holds_alternative<Bounty>(a->payload);
          if (const auto* o = std::get_if<OwnsProp>(&a->payload)) owns |= o->holder == mine;
          if (const auto* o = std::get_if<OwnsNegProp>(&a->payload)) owns |= o->holder == mine;
        }
        if (owns && bounty) redeemable.push_back(t);
      }
      if (redeemable.empty()) return std::nullopt;
      return make_collect(st, me, pick(redeemable, rng));
    }
    default:
      if (cfg_.theories.empty()) return std::nullopt;
      return make_theory_pub(st, me, pick(cfg_.theories, rng), fee + 1);
  }
}

void Workload::fill(BlockBuilder& bb, std::mt19937_64& rng, std::optional<std::size_t> attempts) const {
  if (users_.empty()) return;
  for (std::size_t i = 0, n = attempts.value_or(cfg_.max_txs); i < n; ++i) {
    try {
      auto tx = attempt(bb.view(), rng);
      if (tx) bb.add(std::move(*tx));
    } catch (const BuildError&) {
    } catch (const TxError&) {
    } catch (const docform::DocError&) {
    }
  }
}

}  // namespace fc::simnet
