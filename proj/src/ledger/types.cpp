#include "fc/ledger/types.hpp"

namespace fc::ledger {

namespace {

enum : std::uint8_t {
  kCurrency = 0x40,
  kBounty = 0x41,
  kOwnsProp = 0x42,
  kOwnsNegProp = 0x43,
  kOwnsObj = 0x44,
  kMarker = 0x45,
  kTheoryPub = 0x46,
  kDocPub = 0x47,
};

enum : std::uint8_t { kNoAttachment = 0, kTheoryAttachment = 1, kDocAttachment = 2 };

// Upper bounds that keep decoding of hostile input cheap.
constexpr std::uint64_t kMaxListLen = 1 << 20;

Addr truncated(std::uint8_t kind, const Hash32& h) {
  Addr a;
  a.kind = kind;
  std::copy_n(h.begin(), a.hash.size(), a.hash.begin());
  return a;
}

void encode_addr(ByteWriter& w, const Addr& a) {
  w.u8(a.kind);
  w.raw(a.hash);
}

Addr decode_addr(ByteReader& r) {
  Addr a;
  a.kind = r.u8();
  if (a.kind != Addr::Prop && a.kind != Addr::Key) throw DecodeError("bad address kind");
  a.hash = r.fixed<20>();
  return a;
}

void encode_payload(ByteWriter& w, const Payload& p) {
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Currency>) {
          w.u8(kCurrency);
          w.leb(v.amount);
        } else if constexpr (std::is_same_v<T, Bounty>) {
          w.u8(kBounty);
          w.leb(v.amount);
        } else if constexpr (std::is_same_v<T, OwnsProp>) {
          w.u8(kOwnsProp);
          encode_addr(w, v.holder);
        } else if constexpr (std::is_same_v<T, OwnsNegProp>) {
          w.u8(kOwnsNegProp);
          encode_addr(w, v.holder);
        } else if constexpr (std::is_same_v<T, OwnsObj>) {
          w.u8(kOwnsObj);
          encode_addr(w, v.holder);
        } else if constexpr (std::is_same_v<T, Marker>) {
          w.u8(kMarker);
          w.raw(v.commitment);
        } else if constexpr (std::is_same_v<T, TheoryPub>) {
          w.u8(kTheoryPub);
          w.raw(v.theory);
        } else {
          w.u8(kDocPub);
          w.raw(v.doc);
        }
      },
      p);
}

Payload decode_payload(ByteReader& r) {
  switch (r.u8()) {
    case kCurrency: return Currency{r.leb()};
    case kBounty: return Bounty{r.leb()};
    case kOwnsProp: return OwnsProp{decode_addr(r)};
    case kOwnsNegProp: return OwnsNegProp{decode_addr(r)};
    case kOwnsObj: return OwnsObj{decode_addr(r)};
    case kMarker: return Marker{r.fixed<32>()};
    case kTheoryPub: return TheoryPub{r.fixed<32>()};
    case kDocPub: return DocPub{r.fixed<32>()};
    default: throw DecodeError("bad payload tag");
  }
}

}  // namespace

void encode_output(ByteWriter& w, const TxOutput& o);

namespace {

void encode_unsigned(ByteWriter& w, const Tx& tx) {
  w.leb(tx.nonce);
  w.leb(tx.inputs.size());
  for (const auto& in : tx.inputs) {
    w.raw(in.asset);
    w.raw(in.pubkey);
  }
  w.leb(tx.outputs.size());
  for (const auto& out : tx.outputs) encode_output(w, out);
  if (const auto* th = tx.theory()) {
    w.u8(kTheoryAttachment);
    w.raw(docform::serialize(*th));
  } else if (const auto* doc = tx.document()) {
    w.u8(kDocAttachment);
    w.raw(docform::serialize(*doc));
  } else {
    w.u8(kNoAttachment);
  }
}

std::uint64_t list_len(ByteReader& r) {
  auto n = r.leb();
  if (n > kMaxListLen || n > r.remaining()) throw DecodeError("list length exceeds input");
  return n;
}

}  // namespace

void encode_output(ByteWriter& w, const TxOutput& o) {
  encode_addr(w, o.addr);
  encode_payload(w, o.payload);
}

std::string Addr::hex() const {
  Bytes b{kind};
  b.insert(b.end(), hash.begin(), hash.end());
  return to_hex(b);
}

Addr Addr::from_hex(std::string_view s) {
  auto b = fc::from_hex(s);
  if (b.size() != 21) throw DecodeError("address must be 21 bytes");
  ByteReader r(b);
  return decode_addr(r);
}

Addr derive_addr(const PublicKey& pk) { return truncated(Addr::Key, crypto::sha256(pk)); }

Addr prop_addr(const kernel::TheoryId& th, const Hash32& id) {
  Bytes b(th.begin(), th.end());
  b.insert(b.end(), id.begin(), id.end());
  return truncated(Addr::Prop, crypto::sha256(b));
}

const char* payload_kind(const Payload& p) {
  static const char* names[] = {"currency", "bounty", "owns_prop", "owns_neg_prop",
                                "owns_obj", "marker", "theory_pub", "doc_pub"};
  return names[p.index()];
}

std::uint64_t value_of(const Payload& p) {
  if (const auto* c = std::get_if<Currency>(&p)) return c->amount;
  if (const auto* b = std::get_if<Bounty>(&p)) return b->amount;
  return 0;
}

Bytes unsigned_bytes(const Tx& tx) {
  ByteWriter w;
  encode_unsigned(w, tx);
  return std::move(w).take();
}

Bytes serialize(const Tx& tx) {
  ByteWriter w;
  encode_unsigned(w, tx);
  for (const auto& in : tx.inputs) w.raw(in.sig);
  return std::move(w).take();
}

Tx decode_tx(ByteReader& r) {
  Tx tx;
  tx.nonce = r.leb();
  auto ni = list_len(r);
  for (std::uint64_t i = 0; i < ni; ++i) {
    TxInput in;
    in.asset = r.fixed<32>();
    in.pubkey = r.fixed<32>();
    tx.inputs.push_back(in);
  }
  auto no = list_len(r);
  for (std::uint64_t i = 0; i < no; ++i) {
    auto addr = decode_addr(r);
    tx.outputs.push_back({addr, decode_payload(r)});
  }
  switch (r.u8()) {
    case kNoAttachment: break;
    case kTheoryAttachment: tx.attachment = docform::decode_theory(r); break;
    case kDocAttachment: tx.attachment = docform::decode_document(r); break;
    default: throw DecodeError("bad attachment tag");
  }
  for (auto& in : tx.inputs) in.sig = r.fixed<64>();
  return tx;
}

Tx decode_tx(ByteView bytes) {
  ByteReader r(bytes);
  auto tx = decode_tx(r);
  r.expect_done();
  return tx;
}

TxId txid(const Tx& tx) { return crypto::sha256(unsigned_bytes(tx)); }

AssetId asset_id(const TxId& tx, std::uint64_t output_index) {
  ByteWriter w;
  w.raw(tx);
  w.leb(output_index);
  return crypto::sha256(w.bytes());
}

void sign_inputs(Tx& tx, const crypto::KeyPair& key) {
  auto id = txid(tx);
  auto sig = key.sign(id);
  for (auto& in : tx.inputs)
    if (in.pubkey == key.public_key()) in.sig = sig;
}

Bytes header_signing_bytes(const BlockHeader& h) {
  ByteWriter w;
  w.raw(h.parent);
  w.leb(h.height);
  w.leb(h.timestamp);
  w.raw(h.producer);
  w.raw(h.body_hash);
  return std::move(w).take();
}

Bytes serialize(const BlockHeader& h) {
  auto b = header_signing_bytes(h);
  b.insert(b.end(), h.sig.begin(), h.sig.end());
  return b;
}

Bytes body_bytes(const std::vector<Tx>& txs) {
  ByteWriter w;
  w.leb(txs.size());
  for (const auto& tx : txs) w.blob(serialize(tx));
  return std::move(w).take();
}

Hash32 body_hash(const std::vector<Tx>& txs) { return crypto::sha256(body_bytes(txs)); }

BlockHash block_hash(const BlockHeader& h) { return crypto::sha256(serialize(h)); }

Bytes serialize(const Block& b) {
  auto out = serialize(b.header);
  auto body = body_bytes(b.txs);
  out.insert(out.end(), body.begin(), body.end());
  return out;
}

Block decode_block(ByteReader& r) {
  Block b;
  b.header.parent = r.fixed<32>();
  b.header.height = r.leb();
  b.header.timestamp = r.leb();
  b.header.producer = r.fixed<32>();
  b.header.body_hash = r.fixed<32>();
  b.header.sig = r.fixed<64>();
  auto n = list_len(r);
  for (std::uint64_t i = 0; i < n; ++i) {
    auto bytes = r.blob();
    b.txs.push_back(decode_tx(bytes));
  }
  return b;
}

Block decode_block(ByteView bytes) {
  ByteReader r(bytes);
  auto b = decode_block(r);
  r.expect_done();
  return b;
}

Hash32 marker_commitment(const docform::Document& doc, const PublicKey& publisher) {
  auto b = docform::serialize(doc);
  b.insert(b.end(), publisher.begin(), publisher.end());
  return crypto::sha256(b);
}

}  // namespace fc::ledger
