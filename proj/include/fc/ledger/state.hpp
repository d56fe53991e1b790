#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "fc/docform/check.hpp"
#include "fc/ledger/types.hpp"

namespace fc::ledger {

struct ChainParams {
  std::vector<PublicKey> producers;
  std::uint64_t genesis_timestamp = 0;
  std::uint64_t subsidy = 50 * kAtomsPerBar;
  std::uint64_t auto_bounty_blocks = 10;
  std::uint64_t auto_bounty_amount = 25 * kAtomsPerBar;
  std::uint64_t marker_maturity = 4;
  friend bool operator==(const ChainParams&, const ChainParams&) = default;
};

/// Reads the genesis file format: producers are given either as
/// {"seed": n} (deterministic test keys) or {"pubkey": "<hex>"}.
ChainParams params_from_json(const std::string& text);
std::string params_to_json(const ChainParams& p);

struct TheoryEntry {
  docform::TheorySpec spec;
  kernel::Signature sig;
};

struct ChainState {
  std::shared_ptr<const ChainParams> params;
  std::uint64_t height = 0;
  BlockHash tip{};
  std::map<kernel::TheoryId, std::shared_ptr<const TheoryEntry>> theories;
  std::map<AssetId, Asset> live;
  std::map<Addr, std::set<AssetId>> by_addr;
  std::set<AssetId> spent;
  std::uint64_t subsidies = 0;
  std::uint64_t fees_burned = 0;

  std::uint64_t coin_supply() const { return subsidies - fees_burned; }
  const Asset* find(const AssetId& id) const;
  std::vector<const Asset*> assets_at(const Addr& a) const;
  const TheoryEntry* theory(const kernel::TheoryId& id) const;

  /// Canonical bytes of everything above; equal states have equal bytes.
  Bytes serialize() const;
  Hash32 digest() const;
  friend bool operator==(const ChainState& a, const ChainState& b);
};

enum class TxErrorCode {
  MissingInput,
  DoubleSpend,
  BadSignature,
  ValueCreated,
  BadOutput,
  MarkerMissing,
  MarkerImmature,
  CommitmentMismatch,
  DocCheckFailed,
  OwnershipOutputsWrong,
  BountyNotRedeemable,
};

const char* tx_error_name(TxErrorCode c);

class TxError : public std::runtime_error {
public:
  TxError(TxErrorCode code, const std::string& detail, std::optional<kernel::ErrorCode> kernel = std::nullopt,
          std::optional<std::size_t> item = std::nullopt);
  TxErrorCode code() const { return code_; }
  const std::string& detail() const { return detail_; }
  std::optional<kernel::ErrorCode> kernel_code() const { return kernel_; }
  std::optional<std::size_t> item() const { return item_; }

private:
  TxErrorCode code_;
  std::string detail_;
  std::optional<kernel::ErrorCode> kernel_;
  std::optional<std::size_t> item_;
};

struct BountyCollection {
  Asset bounty;
  Addr collector;
  bool by_disproof = false;
};

struct TxEffect {
  TxId id{};
  std::vector<Asset> spent;
  std::vector<Asset> created;
  std::uint64_t fee = 0;
  std::optional<kernel::TheoryId> theory;  // set when the tx publishes a theory
  std::shared_ptr<const TheoryEntry> theory_entry;
  std::optional<Hash32> doc_id;            // set when the tx publishes a document
  kernel::TheoryId doc_theory{};
  Addr publisher;
  docform::DocEffect doc;
  std::vector<BountyCollection> collections;
};

/// Ownership outputs a document publication must carry, in canonical order.
std::vector<TxOutput> expected_doc_outputs(const ChainState& st, const docform::Document& doc,
                                           const docform::DocEffect& effect, const Addr& publisher);

/// Checks a non-coinbase transaction against `st` as if included at `height`.
/// `sig_ok`, when given, holds precomputed per-input signature results.
TxEffect validate_tx(const ChainState& st, const Tx& tx, std::uint64_t height,
                     const std::vector<std::uint8_t>* sig_ok = nullptr);
void apply_tx(ChainState& st, const TxEffect& effect);

/// Deterministic pseudorandom closed proposition over the built-in theory.
kernel::Term gen_random_prop(const Hash32& seed);
kernel::TheoryId builtin_theory_id();
/// Address of the automatic bounty of the block on top of `parent`.
Addr auto_bounty_addr(const BlockHash& parent);

enum class NodeClass { Theory, Proof, TxOrBounty, Missing, Invalid, Plain };

const char* node_class_name(NodeClass c);  // green, blue, pink, yellow, red, gray
const char* node_class_label(NodeClass c);
/// Content classification of a block (validation status aside).
NodeClass classify_content(const Block& b);

enum class BlockErrorCode {
  UnknownParent,
  InvalidParent,
  BadHeight,
  BadProducer,
  BadHeaderSig,
  BadBodyHash,
  BadCoinbase,
  AutoBountyMissing,
  TxInvalid,
};

const char* block_error_name(BlockErrorCode c);

class BlockError : public std::runtime_error {
public:
  BlockError(BlockErrorCode code, const std::string& detail, std::optional<std::size_t> tx = std::nullopt,
             std::optional<TxError> tx_error = std::nullopt);
  BlockErrorCode code() const { return code_; }
  std::optional<std::size_t> tx_index() const { return tx_; }
  const std::optional<TxError>& tx_error() const { return tx_error_; }
  /// Human-readable reason, e.g. "invalid proof steps: tx 1 item 0 (ConvFailure)".
  std::string reason() const;

private:
  BlockErrorCode code_;
  std::optional<std::size_t> tx_;
  std::optional<TxError> tx_error_;
};

struct BlockResult {
  ChainState state;
  NodeClass cls = NodeClass::Plain;
  std::vector<TxEffect> effects;  // coinbase first
};

/// Validates `b` on top of `parent` (whose tip must be b's parent).
BlockResult validate_block(const ChainState& parent, const Block& b);

/// The unsigned genesis block fixed by the parameters, and the state after it.
Block make_genesis(const ChainParams& params);
BlockResult genesis_state(const ChainParams& params);

}  // namespace fc::ledger
