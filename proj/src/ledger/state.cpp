#include "fc/ledger/state.hpp"

#include <algorithm>

#include "fc/docform/corpus.hpp"
#include "fc/kernel/codec.hpp"
#include "json.hpp"

namespace fc::ledger {

using kernel::Term;
using kernel::Ty;

// ---------------------------------------------------------------- params

ChainParams params_from_json(const std::string& text) {
  auto j = nlohmann::json::parse(text);
  ChainParams p;
  for (const auto& prod : j.at("producers")) {
    if (prod.contains("seed")) {
      p.producers.push_back(crypto::KeyPair::from_seed(prod.at("seed").get<std::uint64_t>()).public_key());
    } else {
      auto b = from_hex(prod.at("pubkey").get<std::string>());
      if (b.size() != 32) throw std::runtime_error("producer pubkey must be 32 bytes");
      PublicKey pk{};
      std::copy(b.begin(), b.end(), pk.begin());
      p.producers.push_back(pk);
    }
  }
  if (p.producers.empty()) throw std::runtime_error("genesis needs at least one producer");
  p.genesis_timestamp = j.value("genesis_timestamp", p.genesis_timestamp);
  p.subsidy = j.value("subsidy", p.subsidy);
  p.auto_bounty_blocks = j.value("auto_bounty_blocks", p.auto_bounty_blocks);
  p.auto_bounty_amount = j.value("auto_bounty_amount", p.auto_bounty_amount);
  p.marker_maturity = j.value("marker_maturity", p.marker_maturity);
  if (p.auto_bounty_blocks > 0 && p.auto_bounty_amount >= p.subsidy)
    throw std::runtime_error("auto bounty must be smaller than the subsidy");
  return p;
}

std::string params_to_json(const ChainParams& p) {
  nlohmann::json j;
  j["producers"] = nlohmann::json::array();
  for (const auto& pk : p.producers) j["producers"].push_back({{"pubkey", to_hex(pk)}});
  j["genesis_timestamp"] = p.genesis_timestamp;
  j["subsidy"] = p.subsidy;
  j["auto_bounty_blocks"] = p.auto_bounty_blocks;
  j["auto_bounty_amount"] = p.auto_bounty_amount;
  j["marker_maturity"] = p.marker_maturity;
  return j.dump(2);
}

// ---------------------------------------------------------------- state

const Asset* ChainState::find(const AssetId& id) const {
  auto it = live.find(id);
  return it == live.end() ? nullptr : &it->second;
}

std::vector<const Asset*> ChainState::assets_at(const Addr& a) const {
  std::vector<const Asset*> out;
  auto it = by_addr.find(a);
  if (it == by_addr.end()) return out;
  for (const auto& id : it->second) out.push_back(&live.at(id));
  return out;
}

const TheoryEntry* ChainState::theory(const kernel::TheoryId& id) const {
  auto it = theories.find(id);
  return it == theories.end() ? nullptr : it->second.get();
}

namespace {

void encode_asset(ByteWriter& w, const Asset& a) {
  w.raw(a.id);
  encode_output(w, {a.addr, a.payload});
  w.leb(a.born);
}

}  // namespace

Bytes ChainState::serialize() const {
  ByteWriter w;
  w.leb(height);
  w.raw(tip);
  w.leb(theories.size());
  for (const auto& [id, entry] : theories) {
    w.raw(id);
    w.raw(docform::serialize(entry->spec));
    w.leb(entry->sig.defs.size());
    for (const auto& [oid, def] : entry->sig.defs) {
      w.raw(oid);
      kernel::encode(w, def.ty);
      w.u8(def.body ? 1 : 0);
      if (def.body) kernel::encode(w, *def.body);
    }
    w.leb(entry->sig.thms.size());
    for (const auto& [pid, stmt] : entry->sig.thms) {
      w.raw(pid);
      kernel::encode(w, stmt);
    }
  }
  w.leb(live.size());
  for (const auto& [id, a] : live) encode_asset(w, a);
  w.leb(spent.size());
  for (const auto& id : spent) w.raw(id);
  w.leb(subsidies);
  w.leb(fees_burned);
  return std::move(w).take();
}

Hash32 ChainState::digest() const { return crypto::sha256(serialize()); }

bool operator==(const ChainState& a, const ChainState& b) { return a.serialize() == b.serialize(); }

// ---------------------------------------------------------------- errors

const char* tx_error_name(TxErrorCode c) {
  switch (c) {
    case TxErrorCode::MissingInput: return "MissingInput";
    case TxErrorCode::DoubleSpend: return "DoubleSpend";
    case TxErrorCode::BadSignature: return "BadSignature";
    case TxErrorCode::ValueCreated: return "ValueCreated";
    case TxErrorCode::BadOutput: return "BadOutput";
    case TxErrorCode::MarkerMissing: return "MarkerMissing";
    case TxErrorCode::MarkerImmature: return "MarkerImmature";
    case TxErrorCode::CommitmentMismatch: return "CommitmentMismatch";
    case TxErrorCode::DocCheckFailed: return "DocCheckFailed";
    case TxErrorCode::OwnershipOutputsWrong: return "OwnershipOutputsWrong";
    case TxErrorCode::BountyNotRedeemable: return "BountyNotRedeemable";
  }
  return "?";
}

TxError::TxError(TxErrorCode code, const std::string& detail, std::optional<kernel::ErrorCode> kernel,
                 std::optional<std::size_t> item)
    : std::runtime_error(std::string(tx_error_name(code)) + ": " + detail),
      code_(code),
      detail_(detail),
      kernel_(kernel),
      item_(item) {}

const char* block_error_name(BlockErrorCode c) {
  switch (c) {
    case BlockErrorCode::UnknownParent: return "UnknownParent";
    case BlockErrorCode::InvalidParent: return "InvalidParent";
    case BlockErrorCode::BadHeight: return "BadHeight";
    case BlockErrorCode::BadProducer: return "BadProducer";
    case BlockErrorCode::BadHeaderSig: return "BadHeaderSig";
    case BlockErrorCode::BadBodyHash: return "BadBodyHash";
    case BlockErrorCode::BadCoinbase: return "BadCoinbase";
    case BlockErrorCode::AutoBountyMissing: return "AutoBountyMissing";
    case BlockErrorCode::TxInvalid: return "TxInvalid";
  }
  return "?";
}

BlockError::BlockError(BlockErrorCode code, const std::string& detail, std::optional<std::size_t> tx,
                       std::optional<TxError> tx_error)
    : std::runtime_error(std::string(block_error_name(code)) + ": " + detail),
      code_(code),
      tx_(tx),
      tx_error_(std::move(tx_error)) {}

std::string BlockError::reason() const {
  if (code_ != BlockErrorCode::TxInvalid || !tx_error_) return what();
  const auto& e = *tx_error_;
  std::string where = "tx " + std::to_string(*tx_);
  switch (e.code()) {
    case TxErrorCode::DocCheckFailed: {
      std::string s = "invalid proof steps: " + where;
      if (e.item()) s += " item " + std::to_string(*e.item());
      if (e.kernel_code()) s += std::string(" (") + kernel::error_name(*e.kernel_code()) + ")";
      return s;
    }
    case TxErrorCode::MissingInput: return "spends non-existing asset: " + where;
    case TxErrorCode::DoubleSpend: return "spends already spent asset: " + where;
    default: return std::string(tx_error_name(e.code())) + ": " + where + ": " + e.detail();
  }
}

// ---------------------------------------------------------------- transactions

namespace {

bool add_overflows(std::uint64_t& acc, std::uint64_t v) {
  if (acc > UINT64_MAX - v) return true;
  acc += v;
  return false;
}

bool is_pub_output(const Payload& p) {
  return std::holds_alternative<OwnsProp>(p) || std::holds_alternative<OwnsNegProp>(p) ||
         std::holds_alternative<OwnsObj>(p) || std::holds_alternative<TheoryPub>(p) ||
         std::holds_alternative<DocPub>(p);
}

Bytes output_key(const TxOutput& o) {
  ByteWriter w;
  encode_output(w, o);
  return std::move(w).take();
}

void sort_outputs(std::vector<TxOutput>& outs) {
  std::sort(outs.begin(), outs.end(),
            [](const TxOutput& a, const TxOutput& b) { return output_key(a) < output_key(b); });
}

void check_basic_output(const TxOutput& o) {
  if (std::holds_alternative<Currency>(o.payload) || std::holds_alternative<Bounty>(o.payload)) {
    if (value_of(o.payload) == 0) throw TxError(TxErrorCode::BadOutput, "zero amount");
  }
  if ((std::holds_alternative<Currency>(o.payload) || std::holds_alternative<Marker>(o.payload)) && !o.addr.is_key())
    throw TxError(TxErrorCode::BadOutput, std::string(payload_kind(o.payload)) + " must sit at a key address");
  if (std::holds_alternative<Bounty>(o.payload) && !o.addr.is_prop())
    throw TxError(TxErrorCode::BadOutput, "bounty must sit at a proposition address");
}

// A live OwnsProp or OwnsNegProp at `a` held by `holder`; 1 = prop, 2 = neg.
int ownership_kind(const ChainState& st, const Addr& a, const Addr& holder) {
  int found = 0;
  for (const auto* asset : st.assets_at(a)) {
    if (const auto* o = std::get_if<OwnsProp>(&asset->payload); o && o->holder == holder) return 1;
    if (const auto* n = std::get_if<OwnsNegProp>(&asset->payload); n && n->holder == holder) found = 2;
  }
  return found;
}

bool has_neg_ownership(const ChainState& st, const Addr& a) {
  for (const auto* asset : st.assets_at(a))
    if (std::holds_alternative<OwnsNegProp>(asset->payload)) return true;
  return false;
}

}  // namespace

std::vector<TxOutput> expected_doc_outputs(const ChainState& st, const docform::Document& doc,
                                           const docform::DocEffect& effect, const Addr& publisher) {
  const auto& th = doc.theory;
  std::vector<TxOutput> out;
  auto id = docform::doc_id(doc);
  out.push_back({prop_addr(th, id), DocPub{id}});
  for (const auto& d : effect.defs)
    if (d.fresh) out.push_back({prop_addr(th, d.id), OwnsObj{publisher}});
  std::set<Addr> neg;
  for (const auto& t : effect.thms) {
    if (!t.fresh) continue;
    out.push_back({prop_addr(th, t.id), OwnsProp{publisher}});
    if (t.refutes) {
      auto a = prop_addr(th, *t.refutes);
      if (!has_neg_ownership(st, a) && neg.insert(a).second) out.push_back({a, OwnsNegProp{publisher}});
    }
  }
  sort_outputs(out);
  return out;
}

TxEffect validate_tx(const ChainState& st, const Tx& tx, std::uint64_t height, const std::vector<std::uint8_t>* sig_ok) {
  TxEffect eff;
  eff.id = txid(tx);
  if (tx.inputs.empty()) throw TxError(TxErrorCode::MissingInput, "transaction has no inputs");

  std::set<AssetId> seen;
  std::uint64_t in_value = 0;
  for (std::size_t i = 0; i < tx.inputs.size(); ++i) {
    const auto& in = tx.inputs[i];
    if (!seen.insert(in.asset).second)
      throw TxError(TxErrorCode::DoubleSpend, "asset " + to_hex(in.asset) + " spent twice in one transaction");
    const Asset* a = st.find(in.asset);
    if (!a) {
      if (st.spent.contains(in.asset))
        throw TxError(TxErrorCode::DoubleSpend, "asset " + to_hex(in.asset) + " already spent");
      throw TxError(TxErrorCode::MissingInput, "asset " + to_hex(in.asset) + " does not exist");
    }
    bool ok = sig_ok ? (*sig_ok)[i] != 0 : crypto::verify(in.pubkey, eff.id, in.sig);
    if (!ok) throw TxError(TxErrorCode::BadSignature, "input " + std::to_string(i) + " signature does not verify");
    auto signer = derive_addr(in.pubkey);
    if (std::holds_alternative<Bounty>(a->payload)) {
      int kind = ownership_kind(st, a->addr, signer);
      if (kind == 0)
        throw TxError(TxErrorCode::BountyNotRedeemable,
                      "signer holds no ownership of the proposition at " + a->addr.hex());
      eff.collections.push_back({*a, signer, kind == 2});
    } else if (!(a->addr == signer)) {
      throw TxError(TxErrorCode::BadSignature, "input " + std::to_string(i) + " key does not control " + a->addr.hex());
    }
    if (add_overflows(in_value, value_of(a->payload))) throw TxError(TxErrorCode::ValueCreated, "input overflow");
    eff.spent.push_back(*a);
  }

  std::uint64_t out_value = 0;
  std::vector<TxOutput> pub;
  for (const auto& o : tx.outputs) {
    check_basic_output(o);
    if (add_overflows(out_value, value_of(o.payload))) throw TxError(TxErrorCode::ValueCreated, "output overflow");
    if (is_pub_output(o.payload)) pub.push_back(o);
  }
  if (out_value > in_value)
    throw TxError(TxErrorCode::ValueCreated,
                  "outputs " + std::to_string(out_value) + " exceed inputs " + std::to_string(in_value));
  eff.fee = in_value - out_value;

  std::vector<TxOutput> expected;
  if (const auto* spec = tx.theory()) {
    auto th = docform::theory_id(*spec);
    if (st.theory(th)) throw TxError(TxErrorCode::DocCheckFailed, "theory already published");
    auto entry = std::make_shared<TheoryEntry>();
    entry->spec = *spec;
    try {
      entry->sig = docform::theory_signature(*spec);
    } catch (const kernel::KernelError& e) {
      throw TxError(TxErrorCode::DocCheckFailed, e.what(), e.code());
    }
    eff.theory = th;
    eff.theory_entry = std::move(entry);
    expected.push_back({prop_addr(th, th), TheoryPub{th}});
  } else if (const auto* doc = tx.document()) {
    const auto* entry = st.theory(doc->theory);
    if (!entry) throw TxError(TxErrorCode::DocCheckFailed, "unknown theory " + to_hex(doc->theory));
    try {
      eff.doc = docform::check_doc(entry->sig, *doc);
    } catch (const docform::DocError& e) {
      throw TxError(TxErrorCode::DocCheckFailed, e.what(), e.code(), e.item());
    }
    const TxInput* marker_in = nullptr;
    const Asset* marker = nullptr;
    for (std::size_t i = 0; i < tx.inputs.size(); ++i) {
      const auto& a = eff.spent[i];
      if (!std::holds_alternative<Marker>(a.payload)) continue;
      if (marker) throw TxError(TxErrorCode::MarkerMissing, "more than one marker input");
      marker = &a;
      marker_in = &tx.inputs[i];
    }
    if (!marker) throw TxError(TxErrorCode::MarkerMissing, "document publication consumes no marker");
    auto maturity = st.params ? st.params->marker_maturity : 0;
    if (marker->born + maturity > height)
      throw TxError(TxErrorCode::MarkerImmature, "marker born at " + std::to_string(marker->born) +
                                                     " is not mature at " + std::to_string(height));
    if (!(std::get<Marker>(marker->payload).commitment == marker_commitment(*doc, marker_in->pubkey)))
      throw TxError(TxErrorCode::CommitmentMismatch, "marker does not commit to this document and key");
    eff.doc_id = docform::doc_id(*doc);
    eff.doc_theory = doc->theory;
    eff.publisher = derive_addr(marker_in->pubkey);
    expected = expected_doc_outputs(st, *doc, eff.doc, eff.publisher);
  }
  sort_outputs(pub);
  sort_outputs(expected);
  if (pub != expected)
    throw TxError(TxErrorCode::OwnershipOutputsWrong, "expected " + std::to_string(expected.size()) +
                                                          " ownership/publication outputs, found " +
                                                          std::to_string(pub.size()) + " or different ones");

  for (std::size_t i = 0; i < tx.outputs.size(); ++i)
    eff.created.push_back({asset_id(eff.id, i), tx.outputs[i].addr, tx.outputs[i].payload, height});
  return eff;
}

void apply_tx(ChainState& st, const TxEffect& eff) {
  for (const auto& a : eff.spent) {
    st.live.erase(a.id);
    auto it = st.by_addr.find(a.addr);
    it->second.erase(a.id);
    if (it->second.empty()) st.by_addr.erase(it);
    st.spent.insert(a.id);
  }
  for (const auto& a : eff.created) {
    st.live.emplace(a.id, a);
    st.by_addr[a.addr].insert(a.id);
  }
  st.fees_burned += eff.fee;
  if (eff.theory) st.theories[*eff.theory] = eff.theory_entry;
  if (eff.doc_id) {
    const auto* old = st.theory(eff.doc_theory);
    auto entry = std::make_shared<TheoryEntry>(*old);
    docform::apply_effect(entry->sig, eff.doc);
    st.theories[eff.doc_theory] = std::move(entry);
  }
}

// ---------------------------------------------------------------- random propositions

namespace {

class SeedStream {
public:
  explicit SeedStream(const Hash32& seed) : seed_(seed) {}
  std::uint8_t next() {
    if (pos_ == block_.size()) {
      ByteWriter w;
      w.raw(seed_);
      w.leb(counter_++);
      block_ = crypto::sha256(w.bytes());
      pos_ = 0;
    }
    return block_[pos_++];
  }

private:
  Hash32 seed_;
  Hash32 block_{};
  std::size_t pos_ = 32;
  std::uint64_t counter_ = 0;
};

// Primitive indices of the built-in theory.
constexpr std::uint32_t kMem = 0, kEmpty = 1, kAdjoin = 2;

Term random_set(SeedStream& s, int depth, std::uint32_t nvars) {
  std::uint32_t options = (nvars > 0 ? 1 : 0) + 1 + (depth < 2 ? 1 : 0);
  std::uint32_t c = s.next() % options;
  if (nvars == 0) ++c;
  if (c == 0) return Term::db(s.next() % nvars);
  if (c == 1) return Term::prim(kEmpty);
  Term a = random_set(s, depth + 1, nvars);
  Term b = random_set(s, depth + 1, nvars);
  return Term::ap(Term::ap(Term::prim(kAdjoin), a), b);
}

Term random_prop(SeedStream& s, int depth, std::uint32_t nvars) {
  std::uint32_t c = 2;
  if (depth == 0)
    c = 0;
  else if (depth < 3)
    c = s.next() % 2;
  else if (depth < 5)
    c = s.next() % 3;
  if (c == 0) {
    Term a = random_prop(s, depth + 1, nvars);
    Term b = random_prop(s, depth + 1, nvars);
    return Term::imp(a, b);
  }
  if (c == 1) return Term::all(Ty::set(), random_prop(s, depth + 1, nvars + 1));
  Term x = random_set(s, 0, nvars);
  Term y = random_set(s, 0, nvars);
  return Term::ap(Term::ap(Term::prim(kMem), x), y);
}

const kernel::Signature& builtin_sig() {
  static const kernel::Signature sig = docform::theory_signature(docform::builtin_theory());
  return sig;
}

}  // namespace

Term gen_random_prop(const Hash32& seed) {
  SeedStream s(seed);
  return random_prop(s, 0, 0);
}

kernel::TheoryId builtin_theory_id() {
  static const auto id = docform::theory_id(docform::builtin_theory());
  return id;
}

Addr auto_bounty_addr(const BlockHash& parent) {
  return prop_addr(builtin_theory_id(), kernel::prop_id(builtin_sig(), gen_random_prop(parent)));
}

// ---------------------------------------------------------------- blocks

const char* node_class_name(NodeClass c) {
  switch (c) {
    case NodeClass::Theory: return "green";
    case NodeClass::Proof: return "blue";
    case NodeClass::TxOrBounty: return "pink";
    case NodeClass::Missing: return "yellow";
    case NodeClass::Invalid: return "red";
    case NodeClass::Plain: return "gray";
  }
  return "?";
}

const char* node_class_label(NodeClass c) {
  switch (c) {
    case NodeClass::Theory: return "theory";
    case NodeClass::Proof: return "proof";
    case NodeClass::TxOrBounty: return "tx_or_bounty";
    case NodeClass::Missing: return "missing";
    case NodeClass::Invalid: return "invalid";
    case NodeClass::Plain: return "plain";
  }
  return "?";
}

NodeClass classify_content(const Block& b) {
  bool theory = false, doc = false, other = false;
  for (std::size_t i = 0; i < b.txs.size(); ++i) {
    const auto& tx = b.txs[i];
    if (tx.theory())
      theory = true;
    else if (tx.document())
      doc = true;
    else if (i > 0 || !tx.inputs.empty())
      other = true;
  }
  if (theory) return NodeClass::Theory;
  if (doc) return NodeClass::Proof;
  if (other) return NodeClass::TxOrBounty;
  return NodeClass::Plain;
}

namespace {

void install_theory(ChainState& st, const docform::TheorySpec& spec) {
  auto entry = std::make_shared<TheoryEntry>();
  entry->spec = spec;
  entry->sig = docform::theory_signature(spec);
  st.theories[docform::theory_id(spec)] = std::move(entry);
}

TxEffect coinbase_effect(const ChainState& st, const Tx& cb, std::uint64_t height, const BlockHash& parent) {
  const auto& p = *st.params;
  if (!cb.inputs.empty() || !std::holds_alternative<std::monostate>(cb.attachment) || cb.nonce != height)
    throw BlockError(BlockErrorCode::BadCoinbase, "first transaction is not a coinbase for this height");
  bool wants_bounty = height >= 1 && height <= p.auto_bounty_blocks;
  Addr bounty_addr = wants_bounty ? auto_bounty_addr(parent) : Addr{};
  std::uint64_t total = 0;
  int bounties = 0;
  for (const auto& o : cb.outputs) {
    if (const auto* c = std::get_if<Currency>(&o.payload)) {
      if (c->amount == 0 || !o.addr.is_key()) throw BlockError(BlockErrorCode::BadCoinbase, "bad coinbase currency output");
      total += c->amount;
    } else if (const auto* b = std::get_if<Bounty>(&o.payload)) {
      if (!wants_bounty || !(o.addr == bounty_addr) || b->amount != p.auto_bounty_amount)
        throw BlockError(BlockErrorCode::AutoBountyMissing, "unexpected bounty in coinbase");
      ++bounties;
      total += b->amount;
    } else {
      throw BlockError(BlockErrorCode::BadCoinbase, "coinbase may only pay currency and the automatic bounty");
    }
    if (total > p.subsidy) throw BlockError(BlockErrorCode::BadCoinbase, "coinbase exceeds subsidy");
  }
  if (wants_bounty && bounties != 1)
    throw BlockError(BlockErrorCode::AutoBountyMissing, "block must place the automatic bounty at " + bounty_addr.hex());
  if (total != p.subsidy) throw BlockError(BlockErrorCode::BadCoinbase, "coinbase must pay exactly the subsidy");
  TxEffect eff;
  eff.id = txid(cb);
  for (std::size_t i = 0; i < cb.outputs.size(); ++i)
    eff.created.push_back({asset_id(eff.id, i), cb.outputs[i].addr, cb.outputs[i].payload, height});
  return eff;
}

Hash32 header_message(const BlockHeader& h) { return crypto::sha256(header_signing_bytes(h)); }

}  // namespace

BlockResult validate_block(const ChainState& parent, const Block& b) {
  const auto& h = b.header;
  const auto& p = *parent.params;
  if (!(h.parent == parent.tip)) throw BlockError(BlockErrorCode::UnknownParent, "parent is not the given state");
  if (h.height != parent.height + 1)
    throw BlockError(BlockErrorCode::BadHeight, "height " + std::to_string(h.height) + " after " +
                                                    std::to_string(parent.height));
  if (!(h.producer == p.producers[h.height % p.producers.size()]))
    throw BlockError(BlockErrorCode::BadProducer, "producer is not scheduled for this height");
  if (!crypto::verify(h.producer, header_message(h), h.sig))
    throw BlockError(BlockErrorCode::BadHeaderSig, "header signature does not verify");
  if (!(h.body_hash == body_hash(b.txs))) throw BlockError(BlockErrorCode::BadBodyHash, "body hash mismatch");
  if (b.txs.empty()) throw BlockError(BlockErrorCode::BadCoinbase, "block has no coinbase");

  // All input signatures of the block are checked in one batch.
  std::vector<crypto::SigCheck> checks;
  std::vector<std::size_t> first(b.txs.size() + 1, 0);
  for (std::size_t t = 1; t < b.txs.size(); ++t) {
    first[t] = checks.size();
    auto id = txid(b.txs[t]);
    for (const auto& in : b.txs[t].inputs) checks.push_back({in.pubkey, id, in.sig});
  }
  auto sig_results = crypto::verify_batch(checks);

  BlockResult r;
  r.state = parent;
  r.state.height = h.height;
  r.state.tip = block_hash(h);
  auto cb = coinbase_effect(parent, b.txs[0], h.height, h.parent);
  apply_tx(r.state, cb);
  r.state.subsidies += p.subsidy;
  r.effects.push_back(std::move(cb));
  for (std::size_t t = 1; t < b.txs.size(); ++t) {
    std::vector<std::uint8_t> oks(sig_results.begin() + static_cast<long>(first[t]),
                                  sig_results.begin() + static_cast<long>(first[t] + b.txs[t].inputs.size()));
    try {
      auto eff = validate_tx(r.state, b.txs[t], h.height, &oks);
      apply_tx(r.state, eff);
      r.effects.push_back(std::move(eff));
    } catch (const TxError& e) {
      throw BlockError(BlockErrorCode::TxInvalid, std::string("tx ") + std::to_string(t) + ": " + e.what(), t, e);
    }
  }
  r.cls = classify_content(b);
  return r;
}

Block make_genesis(const ChainParams& params) {
  Block g;
  g.header.height = 0;
  g.header.timestamp = params.genesis_timestamp;
  g.header.producer = params.producers.at(0);
  Tx cb;
  cb.nonce = 0;
  cb.outputs.push_back({derive_addr(params.producers.at(0)), Currency{params.subsidy}});
  g.txs.push_back(std::move(cb));
  g.header.body_hash = body_hash(g.txs);
  return g;
}

BlockResult genesis_state(const ChainParams& params) {
  BlockResult r;
  r.state.params = std::make_shared<const ChainParams>(params);
  install_theory(r.state, docform::builtin_theory());
  auto g = make_genesis(params);
  r.state.tip = block_hash(g);
  r.state.height = 0;
  TxEffect eff;
  eff.id = txid(g.txs[0]);
  eff.created.push_back({asset_id(eff.id, 0), g.txs[0].outputs[0].addr, g.txs[0].outputs[0].payload, 0});
  apply_tx(r.state, eff);
  r.state.subsidies = params.subsidy;
  r.effects.push_back(std::move(eff));
  r.cls = NodeClass::Plain;
  return r;
}

}  // namespace fc::ledger
