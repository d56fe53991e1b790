#pragma once

// Addresses, assets, transactions and blocks with their canonical encodings.
//
//   Addr:    kind(1) hash(20); 0x30 = proposition address, 0x31 = pay-to-key
//   Payload: 0x40 amount Currency | 0x41 amount Bounty | 0x42 addr OwnsProp
//            0x43 addr OwnsNegProp | 0x44 addr OwnsObj | 0x45 <32> Marker
//            0x46 <32> TheoryPub | 0x47 <32> DocPub
//   Tx:      nonce ninputs (asset_id pubkey)* noutputs (addr payload)*
//            attachment(0 | 1 theory | 2 document), then one signature per
//            input. The txid hashes everything before the signatures.
//   Header:  parent height timestamp producer body_hash signature
//   Body:    ntx (len tx)*

#include <compare>
#include <optional>
#include <variant>
#include <vector>

#include "fc/crypto.hpp"
#include "fc/docform/ast.hpp"

namespace fc::ledger {

using crypto::PublicKey;
using AssetId = Hash32;
using TxId = Hash32;
using BlockHash = Hash32;

constexpr std::uint64_t kAtomsPerBar = 100'000'000;

struct Addr {
  enum Kind : std::uint8_t { Prop = 0x30, Key = 0x31 };
  std::uint8_t kind = Key;
  std::array<std::uint8_t, 20> hash{};

  bool is_prop() const { return kind == Prop; }
  bool is_key() const { return kind == Key; }
  std::string hex() const;
  static Addr from_hex(std::string_view s);
  friend auto operator<=>(const Addr&, const Addr&) = default;
};

Addr derive_addr(const PublicKey& pk);
/// Address of a proposition, object, document or theory inside a theory.
Addr prop_addr(const kernel::TheoryId& th, const Hash32& id);

struct Currency {
  std::uint64_t amount;
  friend bool operator==(const Currency&, const Currency&) = default;
};
struct Bounty {
  std::uint64_t amount;
  friend bool operator==(const Bounty&, const Bounty&) = default;
};
struct OwnsProp {
  Addr holder;
  friend bool operator==(const OwnsProp&, const OwnsProp&) = default;
};
struct OwnsNegProp {
  Addr holder;
  friend bool operator==(const OwnsNegProp&, const OwnsNegProp&) = default;
};
struct OwnsObj {
  Addr holder;
  friend bool operator==(const OwnsObj&, const OwnsObj&) = default;
};
struct Marker {
  Hash32 commitment;
  friend bool operator==(const Marker&, const Marker&) = default;
};
struct TheoryPub {
  kernel::TheoryId theory;
  friend bool operator==(const TheoryPub&, const TheoryPub&) = default;
};
struct DocPub {
  Hash32 doc;
  friend bool operator==(const DocPub&, const DocPub&) = default;
};

using Payload = std::variant<Currency, Bounty, OwnsProp, OwnsNegProp, OwnsObj, Marker, TheoryPub, DocPub>;

const char* payload_kind(const Payload& p);
/// Currency or Bounty amount; 0 for the other payloads.
std::uint64_t value_of(const Payload& p);

struct TxOutput {
  Addr addr;
  Payload payload;
  friend bool operator==(const TxOutput&, const TxOutput&) = default;
};

struct Asset {
  AssetId id{};
  Addr addr;
  Payload payload;
  std::uint64_t born = 0;
  friend bool operator==(const Asset&, const Asset&) = default;
};

struct TxInput {
  AssetId asset{};
  PublicKey pubkey{};
  crypto::Signature sig{};
  friend bool operator==(const TxInput&, const TxInput&) = default;
};

using Attachment = std::variant<std::monostate, docform::TheorySpec, docform::Document>;

struct Tx {
  std::uint64_t nonce = 0;
  std::vector<TxInput> inputs;
  std::vector<TxOutput> outputs;
  Attachment attachment;

  bool is_coinbase_shape() const { return inputs.empty(); }
  const docform::TheorySpec* theory() const { return std::get_if<docform::TheorySpec>(&attachment); }
  const docform::Document* document() const { return std::get_if<docform::Document>(&attachment); }
  friend bool operator==(const Tx&, const Tx&) = default;
};

void encode_output(ByteWriter& w, const TxOutput& o);
Bytes unsigned_bytes(const Tx& tx);
Bytes serialize(const Tx& tx);
Tx decode_tx(ByteReader& r);
Tx decode_tx(ByteView bytes);
TxId txid(const Tx& tx);
AssetId asset_id(const TxId& tx, std::uint64_t output_index);

/// Signs every input whose pubkey matches `key`.
void sign_inputs(Tx& tx, const crypto::KeyPair& key);

struct BlockHeader {
  BlockHash parent{};
  std::uint64_t height = 0;
  std::uint64_t timestamp = 0;
  PublicKey producer{};
  Hash32 body_hash{};
  crypto::Signature sig{};
  friend bool operator==(const BlockHeader&, const BlockHeader&) = default;
};

struct Block {
  BlockHeader header;
  std::vector<Tx> txs;
  friend bool operator==(const Block&, const Block&) = default;
};

Bytes header_signing_bytes(const BlockHeader& h);
Bytes serialize(const BlockHeader& h);
Bytes body_bytes(const std::vector<Tx>& txs);
Hash32 body_hash(const std::vector<Tx>& txs);
BlockHash block_hash(const BlockHeader& h);
inline BlockHash block_hash(const Block& b) { return block_hash(b.header); }
Bytes serialize(const Block& b);
Block decode_block(ByteReader& r);
Block decode_block(ByteView bytes);

/// Commitment a Marker must carry for `doc` published by `publisher`.
Hash32 marker_commitment(const docform::Document& doc, const PublicKey& publisher);

}  // namespace fc::ledger
