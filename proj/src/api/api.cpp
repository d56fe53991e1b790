#include "fc/api/api.hpp"

#include <algorithm>
#include <charconv>

#include "fc/docform/text.hpp"
#include "fc/kernel/codec.hpp"
#include "httplib.h"
#include "json.hpp"

namespace fc::api {

using namespace ledger;
using indexer::Entity;
using indexer::IndexSnapshot;
using indexer::PubKind;
using nlohmann::json;

namespace {

struct HttpError {
  int status;
  std::string code;
  std::string message;
  json extra = json::object();
};

[[noreturn]] void not_found(const std::string& what) { throw HttpError{404, "NotFound", what + " not found"}; }
[[noreturn]] void bad_request(const std::string& msg) { throw HttpError{400, "BadRequest", msg}; }

Response json_response(const json& j, int status = 200) { return {status, "application/json", j.dump() + "\n"}; }

Response error_response(const HttpError& e) {
  json err = e.extra;
  err["code"] = e.code;
  err["message"] = e.message;
  return json_response({{"error", err}}, e.status);
}

std::vector<std::string> split_path(const std::string& path) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < path.size()) {
    auto j = path.find('/', i);
    if (j == std::string::npos) j = path.size();
    if (j > i) out.push_back(path.substr(i, j - i));
    i = j + 1;
  }
  return out;
}

Hash32 parse_hash(const std::string& s, const std::string& what) {
  try {
    return hash_from_hex(s);
  } catch (const DecodeError&) {
    not_found(what + " " + s);
  }
}

std::optional<std::uint64_t> parse_u64(const std::string& s) {
  std::uint64_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size() || s.empty()) return std::nullopt;
  return v;
}

std::string hex(const Hash32& h) { return to_hex(h); }

json opt_addr(const std::optional<Addr>& a) { return a ? json(a->hex()) : json(nullptr); }

json payload_json(const Payload& p) {
  json j{{"kind", payload_kind(p)}};
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Currency> || std::is_same_v<T, Bounty>)
          j["amount"] = v.amount;
        else if constexpr (std::is_same_v<T, OwnsProp> || std::is_same_v<T, OwnsNegProp> || std::is_same_v<T, OwnsObj>)
          j["holder"] = v.holder.hex();
        else if constexpr (std::is_same_v<T, Marker>)
          j["commitment"] = hex(v.commitment);
        else if constexpr (std::is_same_v<T, TheoryPub>)
          j["theory"] = hex(v.theory);
        else
          j["doc"] = hex(v.doc);
      },
      p);
  return j;
}

json asset_json(const Asset& a) {
  auto j = payload_json(a.payload);
  j["asset"] = hex(a.id);
  j["addr"] = a.addr.hex();
  j["born"] = a.born;
  return j;
}

// Everything a handler reads, captured once per request.
struct View {
  const ChainTree& tree;
  const ChainState& tip;
  std::shared_ptr<const IndexSnapshot> snap;
  const ApiConfig& cfg;
  const Request& req;

  const docform::TheorySpec* spec(const kernel::TheoryId& th) const {
    const auto* e = tip.theory(th);
    return e ? &e->spec : nullptr;
  }

  std::string print(const kernel::Term& t, const kernel::TheoryId& th) const {
    const auto* s = spec(th);
    if (!s) return "";
    docform::ExternalNames names{[this, th](const Hash32& id) -> const std::string* {
      const auto* e = snap->entity(prop_addr(th, id));
      return e ? &e->name() : nullptr;
    }};
    return docform::print_term(t, *s, names);
  }

  std::pair<std::size_t, std::size_t> page() const {
    std::size_t offset = 0, limit = cfg.page_size;
    if (auto it = req.query.find("offset"); it != req.query.end()) {
      auto v = parse_u64(it->second);
      if (!v) bad_request("offset must be a number");
      offset = *v;
    }
    if (auto it = req.query.find("limit"); it != req.query.end()) {
      auto v = parse_u64(it->second);
      if (!v || *v == 0) bad_request("limit must be a positive number");
      if (*v > cfg.max_page_size) bad_request("limit exceeds " + std::to_string(cfg.max_page_size));
      limit = *v;
    }
    return {offset, limit};
  }

  template <class T, class F>
  json paged(const std::vector<T>& items, F&& render) const {
    auto [offset, limit] = page();
    json out = json::array();
    for (std::size_t i = offset; i < items.size() && i < offset + limit; ++i) out.push_back(render(items[i]));
    return {{"total", items.size()}, {"offset", offset}, {"limit", limit}, {"items", out}};
  }

  json entity_ref(const Addr& a) const {
    const auto* e = snap->entity(a);
    if (!e) return {{"addr", a.hex()}};
    return {{"addr", a.hex()}, {"id", hex(e->id)}, {"kind", indexer::pub_kind_name(e->kind())}, {"name", e->name()}};
  }

  json ownership(const Addr& a) const {
    json j = json::object();
    for (const auto* asset : tip.assets_at(a)) {
      if (const auto* o = std::get_if<OwnsProp>(&asset->payload)) j["owner"] = o->holder.hex();
      if (const auto* o = std::get_if<OwnsObj>(&asset->payload)) j["owner"] = o->holder.hex();
      if (const auto* o = std::get_if<OwnsNegProp>(&asset->payload)) j["neg_owner"] = o->holder.hex();
    }
    return j;
  }

  json entity_json(const Entity& e) const {
    json j{{"addr", e.addr.hex()}, {"id", hex(e.id)}, {"theory", hex(e.theory)},
           {"kind", indexer::pub_kind_name(e.kind())}, {"name", e.name()}};
    if (e.ty) j["type"] = docform::print_type(*e.ty);
    if (e.stmt) j["statement"] = print(*e.stmt, e.theory);
    auto status = e.status();
    if (!status.empty()) j["status"] = status;
    if (e.kind() == PubKind::Conj) j["tag"] = e.tag();
    auto own = ownership(e.addr);
    j["owner"] = own.contains("owner") ? own["owner"] : opt_addr(e.owner());
    if (own.contains("neg_owner")) j["neg_owner"] = own["neg_owner"];
    json deps = json::array();
    if (auto it = snap->deps.find(e.addr); it != snap->deps.end())
      for (const auto& d : it->second) deps.push_back(entity_ref(d));
    j["deps"] = deps;
    json pubs = json::array();
    for (const auto& p : e.pubs) {
      json pj{{"kind", indexer::pub_kind_name(p.kind)}, {"name", p.name}, {"tx", hex(p.tx)},
              {"block", hex(p.block)}, {"height", p.height}, {"publisher", opt_addr(p.publisher)},
              {"fresh", p.fresh}};
      if (p.kind == PubKind::Conj) pj["tag"] = p.tag;
      if (p.doc != Hash32{}) pj["doc"] = hex(p.doc);
      pubs.push_back(pj);
    }
    j["publications"] = pubs;
    return j;
  }

  json bounty_json(const indexer::BountyRecord& b) const {
    json j{{"asset", hex(b.asset)}, {"addr", b.addr.hex()},   {"amount", b.amount},
           {"height", b.height},    {"tx", hex(b.tx)},        {"block", hex(b.block)},
           {"automatic", b.automatic}, {"placer", opt_addr(b.placer)}};
    if (b.stmt) j["statement"] = print(*b.stmt, builtin_theory_id());
    if (const auto& c = b.collected)
      j["collected"] = {{"height", c->height}, {"tx", hex(c->tx)}, {"block", hex(c->block)},
                        {"collector", c->collector.hex()}, {"by_disproof", c->by_disproof}};
    else
      j["collected"] = nullptr;
    return j;
  }

  // Entity by 64-hex id (optionally ?theory=) or by 42-hex address.
  const Entity& find_entity(const std::string& key, const std::string& what) const {
    if (key.size() == 42) {
      try {
        if (const auto* e = snap->entity(Addr::from_hex(key))) return *e;
      } catch (const DecodeError&) {
      }
      not_found(what + " " + key);
    }
    auto id = parse_hash(key, what);
    auto it = snap->by_id.find(id);
    if (it == snap->by_id.end()) not_found(what + " " + key);
    if (auto th = req.query.find("theory"); th != req.query.end()) {
      auto a = prop_addr(parse_hash(th->second, "theory"), id);
      if (!it->second.contains(a)) not_found(what + " " + key + " in theory " + th->second);
      return *snap->entity(a);
    }
    return *snap->entity(*it->second.begin());
  }
};

// ---------------------------------------------------------------- GET handlers

json status_json(const View& v) {
  const auto& s = v.snap->stats;
  return {{"height", s.height},
          {"blocks", s.blocks},
          {"address_count", s.address_count},
          {"tx_count", s.tx_count},
          {"tx_volume", s.tx_volume},
          {"coin_circulation", s.coin_circulation},
          {"tip_hash", hex(v.snap->tip)},
          {"genesis_hash", hex(v.tree.genesis())},
          {"snapshot_digest", hex(v.snap->digest())}};
}

json graph_nodes_json(const std::vector<GraphNode>& graph, const BlockHash& tip) {
  json nodes = json::array();
  for (const auto& g : graph)
    nodes.push_back({{"id", hex(g.id)},
                     {"parent", g.parent ? json(hex(*g.parent)) : json(nullptr)},
                     {"height", g.height},
                     {"class", node_class_label(g.cls)},
                     {"color", node_class_name(g.cls)},
                     {"reason", g.reason},
                     {"main_chain", g.main_chain}});
  return {{"tip", hex(tip)}, {"nodes", nodes}};
}

json graph_json(const View& v) { return graph_nodes_json(v.tree.graph(), v.tree.tip()); }

const char* tx_summary_kind(const Tx& tx, bool coinbase) {
  if (coinbase) return "coinbase";
  if (tx.theory()) return "theory";
  if (tx.document()) return "document";
  for (const auto& o : tx.outputs)
    if (std::holds_alternative<Bounty>(o.payload)) return "bounty";
  for (const auto& o : tx.outputs)
    if (std::holds_alternative<Marker>(o.payload)) return "marker";
  return "transfer";
}

json block_json(const View& v, const ChainNode& n) {
  json j{{"hash", hex(n.hash)},
         {"parent", n.parent ? json(hex(*n.parent)) : json(nullptr)},
         {"height", n.height},
         {"status", block_status_name(n.status)},
         {"class", node_class_label(n.cls())},
         {"color", node_class_name(n.cls())},
         {"reason", n.reason},
         {"main_chain", v.tree.on_main_chain(n.hash)}};
  json children = json::array();
  for (const auto& c : n.children) children.push_back(hex(c));
  j["children"] = children;
  if (!n.block) return j;
  const auto& h = n.block->header;
  j["timestamp"] = h.timestamp;
  j["producer"] = to_hex(h.producer);
  j["body_hash"] = hex(h.body_hash);
  json txs = json::array();
  for (std::size_t i = 0; i < n.block->txs.size(); ++i) {
    const auto& tx = n.block->txs[i];
    json t{{"txid", hex(txid(tx))},
           {"kind", tx_summary_kind(tx, i == 0)},
           {"inputs", tx.inputs.size()},
           {"outputs", tx.outputs.size()}};
    if (i < n.effects.size() && i > 0) t["fee"] = n.effects[i].fee;
    txs.push_back(t);
  }
  j["txs"] = txs;
  return j;
}

const ChainNode& find_block(const View& v, const std::string& key) {
  if (key.size() < 64) {
    auto hgt = parse_u64(key);
    if (!hgt) not_found("block " + key);
    auto chain = v.tree.main_chain();
    if (*hgt >= chain.size()) not_found("block at height " + key);
    return *v.tree.find(chain[*hgt]);
  }
  const auto* n = v.tree.find(parse_hash(key, "block"));
  if (!n) not_found("block " + key);
  return *n;
}

json theory_json(const View& v, const kernel::TheoryId& th, const docform::TheorySpec& spec) {
  json prims = json::array();
  for (const auto& p : spec.prims) prims.push_back({{"name", p.name}, {"type", docform::print_type(p.ty)}});
  json axioms = json::array();
  const auto* entry = v.tip.theory(th);
  for (const auto& a : spec.axioms) {
    json aj{{"name", a.name}, {"statement", v.print(a.stmt, th)}};
    if (entry) aj["addr"] = prop_addr(th, kernel::prop_id(entry->sig, a.stmt)).hex();
    axioms.push_back(aj);
  }
  return {{"id", hex(th)}, {"name", spec.name}, {"bases", spec.bases}, {"prims", prims}, {"axioms", axioms}};
}

json doc_items_json(const View& v, const docform::Document& doc, const docform::DocEffect& eff) {
  const auto& th = doc.theory;
  std::map<std::size_t, json> items;
  for (std::size_t i = 0; i < doc.items.size(); ++i)
    if (const auto* p = std::get_if<docform::ParamItem>(&doc.items[i]))
      items[i] = {{"index", i}, {"kind", "param"}, {"name", p->name}, {"id", hex(p->id)},
                  {"addr", prop_addr(th, p->id).hex()}};
  for (const auto& d : eff.defs)
    items[d.item] = {{"index", d.item}, {"kind", "def"},   {"name", d.name}, {"id", hex(d.id)},
                     {"addr", prop_addr(th, d.id).hex()}, {"fresh", d.fresh}, {"type", docform::print_type(d.ty)}};
  for (const auto& t : eff.thms) {
    json j{{"index", t.item}, {"kind", "thm"},   {"name", t.name}, {"id", hex(t.id)},
           {"addr", prop_addr(th, t.id).hex()}, {"fresh", t.fresh}, {"statement", v.print(t.stmt, th)}};
    if (t.refutes) {
      j["refutes"] = {{"id", hex(*t.refutes)}, {"addr", prop_addr(th, *t.refutes).hex()}};
      if (t.refuted_stmt) j["refutes"]["statement"] = v.print(*t.refuted_stmt, th);
    }
    items[t.item] = j;
  }
  for (const auto& c : eff.conjs)
    items[c.item] = {{"index", c.item}, {"kind", "conj"}, {"name", c.name}, {"id", hex(c.id)},
                     {"addr", prop_addr(th, c.id).hex()}, {"tag", c.tag}, {"statement", v.print(c.stmt, th)}};
  json out = json::array();
  for (auto& [_, j] : items) out.push_back(std::move(j));
  return out;
}

json tx_json(const View& v, const TxId& id) {
  auto loc = v.snap->txs.find(id);
  if (loc == v.snap->txs.end()) not_found("transaction " + hex(id));
  const auto* node = v.tree.find(loc->second.block);
  if (!node || !node->block) not_found("transaction " + hex(id));
  auto i = loc->second.index;
  const auto& tx = node->block->txs.at(i);
  const auto& eff = node->effects.at(i);
  json j{{"txid", hex(id)},     {"block", hex(node->hash)}, {"height", node->height}, {"index", i},
         {"coinbase", i == 0},  {"nonce", tx.nonce},        {"fee", eff.fee},
         {"kind", tx_summary_kind(tx, i == 0)}};
  json inputs = json::array();
  for (std::size_t k = 0; k < tx.inputs.size(); ++k) {
    json in{{"asset", hex(tx.inputs[k].asset)}, {"pubkey", to_hex(tx.inputs[k].pubkey)}};
    if (k < eff.spent.size()) in.update(asset_json(eff.spent[k]));
    inputs.push_back(in);
  }
  j["inputs"] = inputs;
  json outputs = json::array();
  for (std::size_t k = 0; k < tx.outputs.size(); ++k) {
    auto o = payload_json(tx.outputs[k].payload);
    o["index"] = k;
    o["addr"] = tx.outputs[k].addr.hex();
    o["asset"] = hex(asset_id(id, k));
    outputs.push_back(o);
  }
  j["outputs"] = outputs;
  json collections = json::array();
  for (const auto& c : eff.collections)
    collections.push_back({{"asset", hex(c.bounty.id)}, {"addr", c.bounty.addr.hex()},
                           {"amount", value_of(c.bounty.payload)}, {"collector", c.collector.hex()},
                           {"by_disproof", c.by_disproof}});
  j["collections"] = collections;
  if (const auto* spec = tx.theory()) {
    auto th = docform::theory_id(*spec);
    auto tj = theory_json(v, th, *spec);
    tj["type"] = "theory";
    j["attachment"] = tj;
  } else if (const auto* doc = tx.document()) {
    json dj{{"type", "document"}, {"id", hex(docform::doc_id(*doc))}, {"theory", hex(doc->theory)}};
    dj["items"] = doc_items_json(v, *doc, eff.doc);
    if (const auto* s = v.spec(doc->theory)) dj["source"] = docform::print_doc(*doc, *s);
    j["attachment"] = dj;
  } else {
    j["attachment"] = nullptr;
  }
  return j;
}

json address_json(const View& v, const std::string& key) {
  Addr a;
  try {
    a = Addr::from_hex(key);
  } catch (const DecodeError&) {
    not_found("address " + key);
  }
  auto assets = v.tip.assets_at(a);
  auto hist = v.snap->addr_txs.find(a);
  const auto* entity = v.snap->entity(a);
  auto authored = v.snap->authorship.find(a);
  if (assets.empty() && hist == v.snap->addr_txs.end() && !entity && authored == v.snap->authorship.end())
    not_found("address " + key);
  std::uint64_t balance = 0, bounty = 0;
  json aj = json::array();
  for (const auto* asset : assets) {
    if (std::holds_alternative<Currency>(asset->payload)) balance += value_of(asset->payload);
    if (std::holds_alternative<Bounty>(asset->payload)) bounty += value_of(asset->payload);
    aj.push_back(asset_json(*asset));
  }
  json j{{"addr", a.hex()}, {"kind", a.is_key() ? "key" : "prop"}, {"balance", balance},
         {"bounty", bounty}, {"assets", aj}};
  std::vector<TxId> txs;
  if (hist != v.snap->addr_txs.end()) txs.assign(hist->second.rbegin(), hist->second.rend());  // newest first
  j["txs"] = v.paged(txs, [](const TxId& t) { return hex(t); });
  json au = json::array();
  if (authored != v.snap->authorship.end())
    for (const auto& e : authored->second) au.push_back(v.entity_ref(e));
  j["authored"] = au;
  j["entity"] = entity ? v.entity_ref(a) : json(nullptr);
  return j;
}

json prop_json(const View& v, const Entity& e) {
  auto j = v.entity_json(e);
  json bounties = json::array();
  std::uint64_t open = 0, collected = 0;
  for (const auto& [id, b] : v.snap->bounties) {
    if (b.addr != e.addr) continue;
    (b.collected ? collected : open) += b.amount;
    bounties.push_back(v.bounty_json(b));
  }
  j["bounties"] = bounties;
  j["bounty_open"] = open;
  j["bounty_collected"] = collected;
  j["category"] = indexer::category_of(*v.snap, e.addr);
  return j;
}

json bounties_json(const View& v, const std::string& which) {
  auto views = indexer::bounty_views(*v.snap);
  auto name_of = [&](const Addr& a) {
    const auto* e = v.snap->entity(a);
    return e ? json(e->name()) : json(nullptr);
  };
  if (which == "open")
    return v.paged(views.highest_open, [&](const indexer::OpenBounty& o) {
      return json{{"addr", o.addr.hex()}, {"amount", o.amount}, {"count", o.count}, {"tag", o.tag},
                  {"name", name_of(o.addr)}};
    });
  if (which == "collected")
    return v.paged(views.highest_collected, [&](const indexer::CollectedBounty& c) {
      return json{{"addr", c.addr.hex()},
                  {"asset", hex(c.asset)},
                  {"amount", c.amount},
                  {"tag", c.tag},
                  {"name", name_of(c.addr)},
                  {"height", c.collection.height},
                  {"tx", hex(c.collection.tx)},
                  {"collector", c.collection.collector.hex()},
                  {"by_disproof", c.collection.by_disproof}};
    });
  if (which == "categories") {
    json cats = json::array();
    for (const auto& [tag, t] : views.categories) cats.push_back({{"tag", tag}, {"open", t.open}, {"collected", t.collected}});
    return {{"categories", cats}};
  }
  not_found("bounty view " + which);
}

json theories_json(const View& v) {
  json out = json::array();
  for (const auto& [th, entry] : v.tip.theories) {
    json t{{"id", hex(th)}, {"name", entry->spec.name}, {"prims", entry->spec.prims.size()},
           {"axioms", entry->spec.axioms.size()}, {"defs", entry->sig.defs.size()}, {"thms", entry->sig.thms.size()}};
    out.push_back(t);
  }
  return {{"theories", out}};
}

// ---------------------------------------------------------------- POST handlers

json tx_error_json(const TxError& e) {
  json j{{"reason", tx_error_name(e.code())}, {"detail", e.detail()}};
  if (e.kernel_code()) j["kernel"] = kernel::error_name(*e.kernel_code());
  if (e.item()) j["item"] = *e.item();
  return j;
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

json post_tx(Node& node, const std::string& body) {
  Tx tx;
  try {
    tx = decode_tx(from_hex(trim(body)));
  } catch (const DecodeError& e) {
    throw HttpError{400, "DecodeError", e.what()};
  }
  try {
    auto eff = node.submit_tx(tx);
    return {{"txid", hex(eff.id)}, {"fee", eff.fee}};
  } catch (const TxError& e) {
    throw HttpError{400, "TxInvalid", e.what(), tx_error_json(e)};
  }
}

json post_doc_check(const ChainState& tip, const std::string& body, std::span<const docform::TheorySpec> extra) {
  std::map<kernel::TheoryId, std::pair<const docform::TheorySpec*, kernel::Signature>> offline;
  for (const auto& spec : extra) {
    auto id = docform::theory_id(spec);
    if (!tip.theory(id)) offline.emplace(id, std::pair{&spec, docform::theory_signature(spec)});
  }
  auto by_id = [&](const kernel::TheoryId& id) -> const docform::TheorySpec* {
    if (const auto* e = tip.theory(id)) return &e->spec;
    auto it = offline.find(id);
    return it == offline.end() ? nullptr : it->second.first;
  };
  docform::TheoryResolver resolver{by_id, [&](std::string_view name) -> const docform::TheorySpec* {
                                     for (const auto& [th, e] : tip.theories)
                                       if (e->spec.name == name) return &e->spec;
                                     for (const auto& [th, o] : offline)
                                       if (o.first->name == name) return o.first;
                                     return nullptr;
                                   }};
  docform::Document doc;
  try {
    doc = docform::parse_doc(body, resolver);
  } catch (const docform::ParseError& e) {
    throw HttpError{400, "ParseError", e.detail(),
                    {{"kind", docform::parse_error_name(e.kind())}, {"line", e.line()}, {"col", e.col()}}};
  }
  const kernel::Signature* sig = nullptr;
  if (const auto* e = tip.theory(doc.theory))
    sig = &e->sig;
  else if (auto it = offline.find(doc.theory); it != offline.end())
    sig = &it->second.second;
  if (!sig) throw HttpError{404, "UnknownTheory", "theory " + hex(doc.theory) + " is not published"};
  json items = json::array();
  bool ok = true;
  for (const auto& it : docform::check_doc_report(*sig, doc)) {
    ok &= it.status == "ok";
    items.push_back({{"name", it.name}, {"kind", it.kind}, {"status", it.status}, {"error", it.error},
                     {"detail", it.detail}});
  }
  return {{"theory", hex(doc.theory)}, {"doc_id", hex(docform::doc_id(doc))}, {"ok", ok}, {"items", items}};
}

std::string endpoint_name(const std::vector<std::string>& parts) {
  if (parts.empty()) return "";
  if (parts[0] == "doc" && parts.size() > 1) return "doc/" + parts[1];
  return parts[0];
}

}  // namespace

std::string graph_to_json(const std::vector<GraphNode>& graph, const BlockHash& tip) {
  return graph_nodes_json(graph, tip).dump() + "\n";
}

Response check_document(const ChainState& tip, const std::string& text, std::span<const docform::TheorySpec> extra) {
  try {
    return json_response(post_doc_check(tip, text, extra));
  } catch (const HttpError& e) {
    return error_response(e);
  }
}

Api::Api(Node& node, ApiConfig cfg) : node_(node), cfg_(std::move(cfg)) {
  if (cfg_.max_page_size > kPageSizeLimit || cfg_.page_size > cfg_.max_page_size || cfg_.page_size == 0)
    throw std::invalid_argument("page sizes must satisfy 0 < page_size <= max_page_size <= 500");
}

Response Api::handle(const Request& req) const {
  try {
    auto parts = split_path(req.path);
    auto name = endpoint_name(parts);
    if (cfg_.disabled.contains(name)) throw HttpError{404, "EndpointDisabled", "endpoint " + name + " is disabled"};
    if (req.method == "POST") {
      if (name != "tx" && name != "doc/check") not_found("endpoint " + req.path);
      if (cfg_.read_only) throw HttpError{403, "ReadOnly", "this node does not accept submissions"};
      if (name == "tx" && parts.size() == 1) return json_response(post_tx(node_, req.body));
      if (name == "doc/check" && parts.size() == 2)
        return node_.read([&](const ChainTree& tree, const Mempool&) {
          return json_response(post_doc_check(*tree.tip_state(), req.body, {}));
        });
      not_found("endpoint " + req.path);
    }
    if (req.method != "GET") throw HttpError{405, "MethodNotAllowed", req.method + " is not supported"};
    return node_.read([&](const ChainTree& tree, const Mempool&) -> Response {
      View v{tree, *tree.tip_state(), node_.snapshot(), cfg_, req};
      auto arg = [&](std::size_t n) -> const std::string& {
        if (parts.size() != n + 1) not_found("endpoint " + req.path);
        return parts[n];
      };
      if (name == "status" && parts.size() == 1) return json_response(status_json(v));
      if (name == "graph" && parts.size() == 1) return json_response(graph_json(v));
      if (name == "graph.dot" && parts.size() == 1)
        return {200, "text/vnd.graphviz", graph_dot(tree.graph())};
      if (name == "theories" && parts.size() == 1) return json_response(theories_json(v));
      if (name == "block") return json_response(block_json(v, find_block(v, arg(1))));
      if (name == "tx") return json_response(tx_json(v, parse_hash(arg(1), "transaction")));
      if (name == "address") return json_response(address_json(v, arg(1)));
      if (name == "bounties") return json_response(bounties_json(v, arg(1)));
      if (name == "theory") {
        const auto& e = v.find_entity(arg(1), "theory");
        if (e.kind() != PubKind::Theory) not_found("theory " + parts[1]);
        const auto* s = v.spec(e.id);
        if (!s) not_found("theory " + parts[1]);
        auto j = theory_json(v, e.id, *s);
        j["publications"] = v.entity_json(e)["publications"];
        j["owner"] = opt_addr(e.owner());
        return json_response(j);
      }
      if (name == "object") {
        const auto& e = v.find_entity(arg(1), "object");
        if (e.kind() != PubKind::Def) not_found("object " + parts[1]);
        return json_response(v.entity_json(e));
      }
      if (name == "prop") {
        const auto& e = v.find_entity(arg(1), "proposition");
        if (e.kind() == PubKind::Def || e.kind() == PubKind::Theory) not_found("proposition " + parts[1]);
        return json_response(prop_json(v, e));
      }
      not_found("endpoint " + req.path);
    });
  } catch (const HttpError& e) {
    return error_response(e);
  }
}

std::vector<std::string> enumerate_get_paths(const Node& node) {
  std::vector<std::string> out = {"/status", "/graph", "/graph.dot", "/theories", "/bounties/open",
                                  "/bounties/collected", "/bounties/categories"};
  auto snap = node.snapshot();
  node.read([&](const ChainTree& tree, const Mempool&) {
    for (const auto& g : tree.graph()) out.push_back("/block/" + to_hex(g.id));
    return 0;
  });
  for (const auto& [id, _] : snap->txs) out.push_back("/tx/" + to_hex(id));
  std::set<Addr> addrs;
  for (const auto& [a, _] : snap->holdings) addrs.insert(a);
  for (const auto& [a, _] : snap->addr_txs) addrs.insert(a);
  for (const auto& a : addrs) out.push_back("/address/" + a.hex());
  for (const auto& [a, e] : snap->entities) {
    switch (e.kind()) {
      case PubKind::Theory: out.push_back("/theory/" + to_hex(e.id)); break;
      case PubKind::Def: out.push_back("/object/" + a.hex()); break;
      default: out.push_back("/prop/" + a.hex()); break;
    }
  }
  return out;
}

struct Api::Server {
  httplib::Server http;
};

void Api::serve() {
  server_ = std::make_shared<Server>();
  auto& http = server_->http;
  auto cors = [this](const httplib::Request& in, httplib::Response& out) {
    if (cfg_.cors_allow.empty()) return;
    auto origin = in.get_header_value("Origin");
    bool any = std::find(cfg_.cors_allow.begin(), cfg_.cors_allow.end(), "*") != cfg_.cors_allow.end();
    if (any)
      out.set_header("Access-Control-Allow-Origin", "*");
    else if (std::find(cfg_.cors_allow.begin(), cfg_.cors_allow.end(), origin) != cfg_.cors_allow.end())
      out.set_header("Access-Control-Allow-Origin", origin);
    else
      return;
    out.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
    out.set_header("Access-Control-Allow-Headers", "Content-Type");
  };
  auto route = [this, cors](const httplib::Request& in, httplib::Response& out) {
    Request req{in.method, in.path, {}, in.body};
    for (const auto& [k, v] : in.params) req.query.emplace(k, v);
    auto r = handle(req);
    cors(in, out);
    out.status = r.status;
    out.set_content(r.body, r.content_type);
  };
  http.Get(".*", route);
  http.Post(".*", route);
  http.Options(".*", [cors](const httplib::Request& in, httplib::Response& out) {
    cors(in, out);
    out.status = 204;
  });
  if (!http.listen(cfg_.host, cfg_.port)) throw std::runtime_error("cannot listen on " + cfg_.host + ":" + std::to_string(cfg_.port));
}

void Api::stop() {
  if (server_) server_->http.stop();
}

}  // namespace fc::api
