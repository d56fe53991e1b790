#include "fc/ledger/build.hpp"

namespace fc::ledger {

namespace {

struct Funding {
  std::vector<TxInput> inputs;
  std::uint64_t change = 0;
};

Funding fund(const ChainState& st, const crypto::KeyPair& from, std::uint64_t need) {
  Funding f;
  std::uint64_t got = 0;
  for (const auto* a : spendable(st, from.public_key())) {
    if (got >= need && !f.inputs.empty()) break;
    f.inputs.push_back({a->id, from.public_key(), {}});
    got += value_of(a->payload);
  }
  if (got < need || f.inputs.empty())
    throw BuildError("insufficient funds: need " + std::to_string(need) + ", have " + std::to_string(got));
  f.change = got - need;
  return f;
}

Tx funded(const ChainState& st, const crypto::KeyPair& from, std::vector<TxOutput> outs, std::uint64_t need) {
  auto f = fund(st, from, need);
  Tx tx;
  tx.inputs = std::move(f.inputs);
  tx.outputs = std::move(outs);
  if (f.change > 0) tx.outputs.push_back({derive_addr(from.public_key()), Currency{f.change}});
  return tx;
}

}  // namespace

std::vector<const Asset*> spendable(const ChainState& st, const PublicKey& key) {
  std::vector<const Asset*> out;
  for (const auto* a : st.assets_at(derive_addr(key)))
    if (std::holds_alternative<Currency>(a->payload)) out.push_back(a);
  return out;
}

std::uint64_t balance(const ChainState& st, const Addr& a) {
  std::uint64_t sum = 0;
  for (const auto* asset : st.assets_at(a)) sum += value_of(asset->payload);
  return sum;
}

Tx make_transfer(const ChainState& st, const crypto::KeyPair& from, const Addr& to, std::uint64_t amount,
                 std::uint64_t fee) {
  auto tx = funded(st, from, {{to, Currency{amount}}}, amount + fee);
  sign_inputs(tx, from);
  return tx;
}

Tx make_bounty(const ChainState& st, const crypto::KeyPair& from, const Addr& prop, std::uint64_t amount,
               std::uint64_t fee) {
  auto tx = funded(st, from, {{prop, Bounty{amount}}}, amount + fee);
  sign_inputs(tx, from);
  return tx;
}

Tx make_marker(const ChainState& st, const crypto::KeyPair& from, const docform::Document& doc,
               std::uint64_t fee) {
  auto m = marker_commitment(doc, from.public_key());
  auto tx = funded(st, from, {{derive_addr(from.public_key()), Marker{m}}}, fee);
  sign_inputs(tx, from);
  return tx;
}

Tx make_theory_pub(const ChainState& st, const crypto::KeyPair& from, const docform::TheorySpec& spec,
                   std::uint64_t fee) {
  auto th = docform::theory_id(spec);
  auto tx = funded(st, from, {{prop_addr(th, th), TheoryPub{th}}}, fee);
  tx.attachment = spec;
  sign_inputs(tx, from);
  return tx;
}

Tx make_doc_pub(const ChainState& st, const crypto::KeyPair& from, const docform::Document& doc,
                std::uint64_t fee) {
  const auto* entry = st.theory(doc.theory);
  if (!entry) throw BuildError("unknown theory " + to_hex(doc.theory));
  auto effect = docform::check_doc(entry->sig, doc);
  auto me = derive_addr(from.public_key());
  auto commitment = marker_commitment(doc, from.public_key());
  const Asset* marker = nullptr;
  for (const auto* a : st.assets_at(me)) {
    const auto* m = std::get_if<Marker>(&a->payload);
    if (m && m->commitment == commitment) {
      marker = a;
      break;
    }
  }
  if (!marker) throw BuildError("no marker for this document");
  Tx tx;
  tx.inputs.push_back({marker->id, from.public_key(), {}});
  tx.outputs = expected_doc_outputs(st, doc, effect, me);
  if (fee > 0) {
    auto f = fund(st, from, fee);
    tx.inputs.insert(tx.inputs.end(), f.inputs.begin(), f.inputs.end());
    if (f.change > 0) tx.outputs.push_back({me, Currency{f.change}});
  }
  tx.attachment = doc;
  sign_inputs(tx, from);
  return tx;
}

Tx make_collect(const ChainState& st, const crypto::KeyPair& from, const Addr& prop, std::uint64_t fee) {
  Tx tx;
  std::uint64_t total = 0;
  for (const auto* a : st.assets_at(prop)) {
    if (!std::holds_alternative<Bounty>(a->payload)) continue;
    tx.inputs.push_back({a->id, from.public_key(), {}});
    total += value_of(a->payload);
  }
  if (tx.inputs.empty()) throw BuildError("no bounty at " + prop.hex());
  if (total <= fee) throw BuildError("bounty does not cover the fee");
  tx.outputs.push_back({derive_addr(from.public_key()), Currency{total - fee}});
  sign_inputs(tx, from);
  return tx;
}

Tx make_coinbase(const ChainParams& p, std::uint64_t height, const BlockHash& parent, const Addr& payee) {
  Tx cb;
  cb.nonce = height;
  std::uint64_t pay = p.subsidy;
  if (height >= 1 && height <= p.auto_bounty_blocks) {
    cb.outputs.push_back({auto_bounty_addr(parent), Bounty{p.auto_bounty_amount}});
    pay -= p.auto_bounty_amount;
  }
  if (pay > 0) cb.outputs.push_back({payee, Currency{pay}});
  return cb;
}

void sign_block(Block& b, const crypto::KeyPair& producer) {
  b.header.producer = producer.public_key();
  b.header.body_hash = body_hash(b.txs);
  b.header.sig = producer.sign(crypto::sha256(header_signing_bytes(b.header)));
}

Block make_block(const ChainState& parent, const crypto::KeyPair& producer, std::vector<Tx> txs,
                 std::optional<std::uint64_t> timestamp) {
  const auto& p = *parent.params;
  Block b;
  b.header.parent = parent.tip;
  b.header.height = parent.height + 1;
  b.header.timestamp = timestamp.value_or(p.genesis_timestamp + 60 * b.header.height);
  b.txs.push_back(make_coinbase(p, b.header.height, parent.tip, derive_addr(producer.public_key())));
  for (auto& tx : txs) b.txs.push_back(std::move(tx));
  sign_block(b, producer);
  return b;
}

BlockBuilder::BlockBuilder(const ChainState& parent) : parent_(parent), view_(parent) {}

const TxEffect& BlockBuilder::add(Tx tx) {
  auto eff = validate_tx(view_, tx, height());
  apply_tx(view_, eff);
  txs_.push_back(std::move(tx));
  effects_.push_back(std::move(eff));
  return effects_.back();
}

Block BlockBuilder::finish(const crypto::KeyPair& producer, std::optional<std::uint64_t> timestamp) const {
  return make_block(parent_, producer, txs_, timestamp);
}

}  // namespace fc::ledger
