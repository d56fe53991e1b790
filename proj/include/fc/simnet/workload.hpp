#pragma once

// Random but reproducible transaction mix for simulated chains: transfers,
// bounties, commit markers, theory and document publications, collections.

#include <random>

#include "fc/ledger/build.hpp"

namespace fc::simnet {

struct WorkloadConfig {
  std::vector<std::uint64_t> user_seeds;  // keys that transact; include producers so someone has coins
  std::vector<docform::Document> docs;
  std::vector<docform::TheorySpec> theories;  // publishable theories
  std::size_t max_txs = 4;                    // attempts per block
  std::uint64_t max_amount = 50 * ledger::kAtomsPerBar;
};

class Workload {
public:
  explicit Workload(WorkloadConfig cfg);

  /// Makes `attempts` (default max_txs) random transactions on bb's view and
  /// adds those that build and validate.
  void fill(ledger::BlockBuilder& bb, std::mt19937_64& rng, std::optional<std::size_t> attempts = {}) const;
  /// Proposition addresses the documents mention (bounty targets).
  const std::vector<ledger::Addr>& targets() const { return targets_; }
  const std::vector<crypto::KeyPair>& users() const { return users_; }

private:
  std::optional<ledger::Tx> attempt(const ledger::ChainState& st, std::mt19937_64& rng) const;

  WorkloadConfig cfg_;
  std::vector<crypto::KeyPair> users_;
  std::vector<ledger::Addr> targets_;
};

}  // namespace fc::simnet
