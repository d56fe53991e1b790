#include "fc/cli/cli.hpp"

#include <sodium.h>

#include <atomic>
#include <csignal>
#include <fstream>
#include <thread>

#include "CLI11.hpp"
#include "fc/api/api.hpp"
#include "fc/docform/corpus.hpp"
#include "fc/kernel/codec.hpp"
#include "fc/simnet/sim.hpp"
#include "httplib.h"
#include "json.hpp"

namespace fc::cli {

using namespace ledger;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Failure {
  int exit;
  std::string code;
  std::string message;
  json extra = json::object();
};

[[noreturn]] void usage(const std::string& msg) { throw Failure{kUsage, "UsageError", msg}; }
[[noreturn]] void invalid(const std::string& code, const std::string& msg, json extra = json::object()) {
  throw Failure{kInvalid, code, msg, std::move(extra)};
}

std::string read_text(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) usage("cannot read " + p.string());
  return {std::istreambuf_iterator<char>(in), {}};
}

void write_text(const fs::path& p, const std::string& text) {
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream f(p, std::ios::binary);
  if (!f) usage("cannot write " + p.string());
  f << text;
}

// "12", "0.5" (bars) -> atoms.
std::uint64_t parse_bars(const std::string& s) {
  auto dot = s.find('.');
  auto whole = s.substr(0, dot);
  auto frac = dot == std::string::npos ? std::string() : s.substr(dot + 1);
  if ((whole.empty() && frac.empty()) || frac.size() > 8 || whole.find_first_not_of("0123456789") != std::string::npos ||
      frac.find_first_not_of("0123456789") != std::string::npos)
    usage("bad amount " + s);
  frac.resize(8, '0');
  std::uint64_t w = whole.empty() ? 0 : std::stoull(whole);
  if (w > UINT64_MAX / kAtomsPerBar) usage("amount too large: " + s);
  return w * kAtomsPerBar + std::stoull(frac);
}

Addr parse_addr(const std::string& s) {
  try {
    return Addr::from_hex(s);
  } catch (const std::exception&) {
    usage("bad address " + s);
  }
}

Hash32 parse_hash(const std::string& s, const std::string& what) {
  try {
    return hash_from_hex(s);
  } catch (const std::exception&) {
    usage("bad " + what + " " + s);
  }
}

// A proposition address, or a 64-hex id inside `theory` (default: builtin).
Addr parse_prop(const std::string& s, const std::string& theory) {
  if (s.size() == 42) return parse_addr(s);
  auto th = theory.empty() ? builtin_theory_id() : parse_hash(theory, "theory id");
  return prop_addr(th, parse_hash(s, "proposition id"));
}

json key_json(const crypto::KeyPair& k) {
  return {{"public_key", to_hex(k.public_key())}, {"address", derive_addr(k.public_key()).hex()}};
}

// --------------------------------------------------------------------- options

struct Options {
  bool json_out = false;
  std::string home;
  std::string genesis;
  std::string node_url;

  std::string listen = "127.0.0.1:8080";
  bool read_only = false;
  std::vector<std::string> cors, disabled;
  std::size_t page_size = 100;
  std::string produce_key;
  std::uint64_t block_ms = 0;
  std::uint64_t rebuild_ms = 0;
  std::size_t count = 1;

  std::optional<std::uint64_t> seed;
  std::string out;

  std::string file;
  std::vector<std::string> theories;

  std::string key;
  std::string to, amount = "0", fee = "0", doc, theory_file, prop, theory;

  std::optional<std::size_t> nodes;
  std::string dot, graph_json;
};

fs::path home_dir(const Options& o) {
  if (!o.home.empty()) return o.home;
  if (const char* h = std::getenv("PFG_HOME"); h && *h) return h;
  if (const char* h = std::getenv("HOME"); h && *h) return fs::path(h) / ".pfg";
  return ".pfg";
}

crypto::KeyPair load_key(const std::string& spec) {
  if (spec.empty()) usage("--key is required");
  if (spec.rfind("seed:", 0) == 0) {
    try {
      return crypto::KeyPair::from_seed(std::stoull(spec.substr(5)));
    } catch (const std::logic_error&) {
      usage("bad key " + spec);
    }
  }
  try {
    auto j = json::parse(read_text(spec));
    return crypto::KeyPair::from_secret_seed(hash_from_hex(j.at("secret_seed").get<std::string>()));
  } catch (const Failure&) {
    throw;
  } catch (const std::exception& e) {
    usage("bad key file " + spec + ": " + e.what());
  }
}

// The chain in the data directory with its pending transactions.
struct Local {
  fs::path home;
  ChainParams params;
  std::unique_ptr<api::Node> node;

  fs::path pending_path() const { return home / "pending.txs"; }

  ChainState view() const {
    return node->read([](const ChainTree& t, const Mempool& m) {
      ChainState st = *t.tip_state();
      for (const auto& tx : m.txs()) apply_tx(st, validate_tx(st, tx, st.height + 1));
      return st;
    });
  }

  void save_pending() const {
    std::string text;
    node->read([&](const ChainTree&, const Mempool& m) {
      for (const auto& tx : m.txs()) text += to_hex(serialize(tx)) + "\n";
      return 0;
    });
    write_text(pending_path(), text);
  }
};

ChainParams read_genesis(const fs::path& p) {
  try {
    return params_from_json(read_text(p));
  } catch (const Failure&) {
    throw;
  } catch (const std::exception& e) {
    usage("bad genesis file " + p.string() + ": " + e.what());
  }
}

Local open_local(const Options& o, indexer::RefreshConfig refresh = {}) {
  Local l;
  l.home = home_dir(o);
  auto stored = l.home / "genesis.json";
  if (!o.genesis.empty()) {
    l.params = read_genesis(o.genesis);
    if (fs::exists(stored) && read_genesis(stored) != l.params)
      usage(l.home.string() + " holds a different chain");
    fs::create_directories(l.home);
    write_text(stored, params_to_json(l.params));
  } else if (fs::exists(stored)) {
    l.params = read_genesis(stored);
  } else {
    usage("no chain in " + l.home.string() + " (start one with node run --genesis FILE)");
  }
  l.node = std::make_unique<api::Node>(l.params, api::NodeOptions{l.home / "blocks.dat", refresh});
  if (fs::exists(l.pending_path())) {
    std::istringstream in(read_text(l.pending_path()));
    for (std::string line; std::getline(in, line);) {
      if (line.empty()) continue;
      try {
        l.node->submit_tx(decode_tx(from_hex(line)));
      } catch (const std::exception&) {
        // included or invalidated since it was queued
      }
    }
  }
  return l;
}

json http_call(const std::string& url, const std::string& method, const std::string& path, const std::string& body = {}) {
  httplib::Client cli(url);
  cli.set_connection_timeout(5);
  auto res = method == "GET" ? cli.Get(path) : cli.Post(path, body, "text/plain");
  if (!res) invalid("Unreachable", "cannot reach " + url + ": " + httplib::to_string(res.error()));
  json j;
  try {
    j = json::parse(res->body);
  } catch (const json::exception&) {
    invalid("BadResponse", "non-JSON response from " + url);
  }
  if (res->status != 200) {
    auto err = j.value("error", json::object());
    invalid(err.value("code", "HttpError"), err.value("message", "status " + std::to_string(res->status)), err);
  }
  return j;
}

json local_get(const Local& l, const std::string& path) {
  api::Api a(*l.node);
  auto r = a.handle({"GET", path, {}, ""});
  return json::parse(r.body);
}

// --------------------------------------------------------------------- commands

json cmd_keygen(const Options& o) {
  crypto::KeyPair k = [&] {
    if (o.seed) return crypto::KeyPair::from_seed(*o.seed);
    Hash32 secret;
    if (sodium_init() < 0) throw std::runtime_error("libsodium unavailable");
    randombytes_buf(secret.data(), secret.size());
    return crypto::KeyPair::from_secret_seed(secret);
  }();
  auto j = key_json(k);
  if (!o.out.empty()) {
    auto file = j;
    file["secret_seed"] = to_hex(k.secret_seed());
    write_text(o.out, file.dump(2) + "\n");
    j["key_file"] = o.out;
  } else {
    j["secret_seed"] = to_hex(k.secret_seed());
  }
  return j;
}

json cmd_doc_check(const Options& o) {
  std::vector<docform::TheorySpec> extra;
  std::optional<Hash32> expect_theory;
  for (const auto& t : o.theories) {
    if (fs::exists(t)) {
      try {
        extra.push_back(docform::load_theory(t));
      } catch (const std::exception& e) {
        invalid("TheoryError", t + ": " + e.what());
      }
    } else {
      expect_theory = parse_hash(t, "theory id");
    }
  }
  auto text = read_text(o.file);
  // Checked against the local chain when there is one, else genesis only.
  std::shared_ptr<const ChainState> tip;
  auto home = home_dir(o);
  if (!o.genesis.empty() || fs::exists(home / "genesis.json")) {
    auto l = open_local(o);
    tip = l.node->read([](const ChainTree& t, const Mempool&) { return t.tip_state(); });
  } else {
    ChainParams p;
    p.producers.push_back(crypto::KeyPair::from_seed(0).public_key());
    tip = ChainTree(p).tip_state();
  }
  auto r = api::check_document(*tip, text, extra);
  auto j = json::parse(r.body);
  if (r.status != 200) {
    auto err = j["error"];
    invalid(err["code"], err["message"], err);
  }
  if (expect_theory && j["theory"] != to_hex(*expect_theory))
    invalid("TheoryMismatch", "document is in theory " + j["theory"].get<std::string>());
  j["file"] = o.file;
  if (!j["ok"].get<bool>()) {
    std::string first;
    for (const auto& it : j["items"])
      if (it["status"] == "error") {
        first = it["name"].get<std::string>() + ": " + it["error"].get<std::string>();
        break;
      }
    invalid("DocInvalid", first, j);
  }
  return j;
}

Tx build_tx(const std::string& kind, const Options& o, const ChainState& view, const crypto::KeyPair& key) {
  try {
    auto fee = parse_bars(o.fee);
    if (kind == "transfer") return make_transfer(view, key, parse_addr(o.to), parse_bars(o.amount), fee);
    if (kind == "bounty") return make_bounty(view, key, parse_prop(o.prop, o.theory), parse_bars(o.amount), fee);
    if (kind == "collect") return make_collect(view, key, parse_prop(o.prop, o.theory), fee);
    if (kind == "publish-theory") return make_theory_pub(view, key, docform::load_theory(o.theory_file), fee);
    if (kind == "marker" || kind == "publish-doc") {
      docform::TheoryResolver resolver{
          [&](const kernel::TheoryId& id) -> const docform::TheorySpec* {
            const auto* e = view.theory(id);
            return e ? &e->spec : nullptr;
          },
          [&](std::string_view name) -> const docform::TheorySpec* {
            for (const auto& [id, e] : view.theories)
              if (e->spec.name == name) return &e->spec;
            return nullptr;
          }};
      auto doc = docform::parse_doc(read_text(o.doc), resolver);
      if (kind == "marker") return make_marker(view, key, doc, fee == 0 ? 1 : fee);
      return make_doc_pub(view, key, doc, fee);
    }
  } catch (const BuildError& e) {
    invalid("BuildError", e.what());
  } catch (const docform::ParseError& e) {
    invalid("ParseError", e.what());
  } catch (const TxError& e) {
    invalid("TxInvalid", e.what(), {{"reason", tx_error_name(e.code())}});
  } catch (const DecodeError& e) {
    usage(e.what());
  }
  usage("unknown transaction kind " + kind);
}

std::string tx_text(const Tx& tx) { return to_hex(serialize(tx)); }

json tx_output(const Options& o, const Tx& tx, bool is_signed) {
  json j{{"txid", to_hex(txid(tx))}, {"signed", is_signed}};
  if (o.out.empty()) {
    j["hex"] = tx_text(tx);
  } else {
    write_text(o.out, tx_text(tx) + "\n");
    j["file"] = o.out;
  }
  return j;
}

Tx read_tx(const std::string& path) {
  auto text = read_text(path);
  text.erase(std::remove_if(text.begin(), text.end(), [](char c) { return std::isspace(static_cast<unsigned char>(c)); }),
             text.end());
  try {
    return decode_tx(from_hex(text));
  } catch (const std::exception& e) {
    invalid("DecodeError", path + ": " + e.what());
  }
}

json cmd_tx_build(const std::string& kind, const Options& o) {
  auto l = open_local(o);
  auto key = load_key(o.key);
  auto tx = build_tx(kind, o, l.view(), key);
  for (auto& in : tx.inputs) in.sig = {};
  auto j = tx_output(o, tx, false);
  j["kind"] = kind;
  return j;
}

json cmd_tx_sign(const Options& o) {
  auto tx = read_tx(o.file);
  auto key = load_key(o.key);
  bool mine = false;
  for (const auto& in : tx.inputs) mine |= in.pubkey == key.public_key();
  if (!mine) invalid("NoInputs", "no input of this transaction belongs to the key");
  sign_inputs(tx, key);
  return tx_output(o, tx, true);
}

json submit(const Options& o, const Tx& tx) {
  auto hex = tx_text(tx);
  if (!o.node_url.empty()) return http_call(o.node_url, "POST", "/tx", hex);
  auto l = open_local(o);
  try {
    auto eff = l.node->submit_tx(tx);
    l.save_pending();
    return {{"txid", to_hex(eff.id)}, {"fee", eff.fee}, {"pending", true}};
  } catch (const TxError& e) {
    json extra{{"reason", tx_error_name(e.code())}, {"detail", e.detail()}};
    if (e.kernel_code()) extra["kernel"] = kernel::error_name(*e.kernel_code());
    if (e.item()) extra["item"] = *e.item();
    invalid("TxInvalid", e.what(), extra);
  }
}

json cmd_tx_submit(const Options& o) { return submit(o, read_tx(o.file)); }

json cmd_bounty_place(const Options& o) {
  auto key = load_key(o.key);
  Tx tx;
  if (o.node_url.empty()) {
    auto l = open_local(o);
    tx = build_tx("bounty", o, l.view(), key);
  } else {
    usage("bounty place builds against the local chain; use tx build and tx submit --node");
  }
  auto j = submit(o, tx);
  j["prop"] = parse_prop(o.prop, o.theory).hex();
  j["amount"] = parse_bars(o.amount);
  return j;
}

json cmd_node_produce(const Options& o) {
  auto l = open_local(o);
  auto key = load_key(o.key);
  json blocks = json::array();
  for (std::size_t i = 0; i < o.count; ++i) {
    auto r = l.node->produce(key);
    if (r.outcome == SubmitOutcome::Invalid) invalid("BlockInvalid", r.reason);
    auto h = l.node->read([&](const ChainTree& t, const Mempool&) { return t.find(r.hash)->height; });
    blocks.push_back({{"hash", to_hex(r.hash)}, {"height", h}, {"outcome", submit_outcome_name(r.outcome)}});
  }
  l.save_pending();
  return {{"blocks", blocks}};
}

std::atomic<bool> g_stop{false};
extern "C" void on_signal(int) { g_stop = true; }

json cmd_node_run(const Options& o, std::ostream& err) {
  indexer::RefreshConfig refresh;
  refresh.rebuild_interval = std::chrono::milliseconds(o.rebuild_ms);
  auto l = open_local(o, refresh);
  api::ApiConfig cfg;
  auto colon = o.listen.rfind(':');
  if (colon == std::string::npos) usage("--listen wants HOST:PORT");
  cfg.host = o.listen.substr(0, colon);
  try {
    cfg.port = std::stoi(o.listen.substr(colon + 1));
  } catch (const std::logic_error&) {
    usage("bad port in " + o.listen);
  }
  cfg.read_only = o.read_only;
  cfg.cors_allow = o.cors;
  cfg.disabled = {o.disabled.begin(), o.disabled.end()};
  cfg.page_size = o.page_size;
  std::optional<crypto::KeyPair> producer;
  if (!o.produce_key.empty()) producer = load_key(o.produce_key);
  if (producer && o.block_ms == 0) usage("--produce needs --block-ms");
  std::unique_ptr<api::Api> server;
  try {
    server = std::make_unique<api::Api>(*l.node, cfg);
  } catch (const std::invalid_argument& e) {
    usage(e.what());
  }
  g_stop = false;
  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);
  std::string failure;
  std::thread http([&] {
    try {
      server->serve();
    } catch (const std::exception& e) {
      failure = e.what();
    }
    g_stop = true;
  });
  err << "serving " << o.listen << (o.read_only ? " (read-only)" : "") << "\n";
  auto next = std::chrono::steady_clock::now() + std::chrono::milliseconds(o.block_ms);
  std::uint64_t produced = 0;
  while (!g_stop) {
    std::this_thread::sleep_for(std::chrono::milliseconds(50));
    if (producer && std::chrono::steady_clock::now() >= next) {
      auto r = l.node->produce(*producer);
      if (r.outcome == SubmitOutcome::Accepted) ++produced;
      next += std::chrono::milliseconds(o.block_ms);
    }
  }
  server->stop();
  http.join();
  l.save_pending();
  if (!failure.empty()) invalid("ServeError", failure);
  return {{"stopped", true}, {"produced", produced}};
}

json cmd_scenario_run(const Options& o) {
  simnet::Scenario sc;
  fs::path fixtures = FC_FIXTURE_DIR;
  try {
    if (!o.file.empty()) {
      if (!fs::exists(o.file)) usage("no scenario file " + o.file);
      sc = simnet::load_scenario(o.file);
      // Scenario files name fixtures relative to the fixture root above them.
      for (auto p = fs::absolute(o.file).parent_path(); p.has_relative_path(); p = p.parent_path())
        if (fs::exists(p / "docs") || fs::exists(p / "theories")) {
          fixtures = p;
          break;
        }
      if (o.seed) sc.seed = *o.seed;
    } else {
      sc = simnet::random_scenario(o.seed.value_or(1));
    }
  } catch (const simnet::ScenarioError& e) {
    usage(e.what());
  }
  if (o.nodes) {
    if (*o.nodes == 0) usage("--nodes must be positive");
    sc.nodes = *o.nodes;
  }
  simnet::RunReport r;
  try {
    r = simnet::run_scenario(sc, fixtures);
  } catch (const simnet::ScenarioError& e) {
    invalid("ScenarioError", e.what());
  }
  json nodes = json::array();
  for (std::size_t i = 0; i < r.nodes.size(); ++i) {
    const auto& n = r.nodes[i];
    nodes.push_back({{"tip", to_hex(n.tip)},
                     {"height", n.height},
                     {"state_digest", to_hex(n.state_digest)},
                     {"index_digest", to_hex(n.index_digest)},
                     {"index_matches_rebuild", n.index_matches_rebuild}});
    if (!o.out.empty()) {
      auto base = fs::path(o.out) / ("node" + std::to_string(i));
      write_text(base.string() + ".graph.json", api::graph_to_json(n.graph, n.tip));
      write_text(base.string() + ".dot", n.dot);
    }
  }
  json labels = json::object();
  for (const auto& [k, v] : r.labels) labels[k] = to_hex(v);
  json j{{"name", sc.name},         {"seed", sc.seed},       {"converged", r.converged()},
         {"messages", r.messages},  {"dropped", r.dropped},  {"end_time_ms", r.end_time_ms},
         {"nodes", nodes},          {"labels", labels},      {"classes", r.class_counts()}};
  bool classes_ok = sc.expect_classes.empty() || r.class_counts() == sc.expect_classes;
  if (!sc.expect_classes.empty()) j["expected_classes"] = sc.expect_classes;
  if (!o.out.empty()) {
    write_text(fs::path(o.out) / "digests.json", j.dump(2) + "\n");
    j["out"] = o.out;
  }
  if (!r.converged()) invalid("NotConverged", "nodes disagree after the run", j);
  if (!classes_ok) invalid("ClassMismatch", "graph classes differ from the expected counts", j);
  return j;
}

json cmd_graph_export(const Options& o) {
  if (o.dot.empty() && o.graph_json.empty()) usage("give --dot FILE and/or --json-out FILE");
  auto l = open_local(o);
  auto [graph, tip] = l.node->read([](const ChainTree& t, const Mempool&) { return std::pair{t.graph(), t.tip()}; });
  json j{{"blocks", graph.size()}, {"tip", to_hex(tip)}};
  if (!o.dot.empty()) {
    write_text(o.dot, graph_dot(graph));
    j["dot"] = o.dot;
  }
  if (!o.graph_json.empty()) {
    write_text(o.graph_json, api::graph_to_json(graph, tip));
    j["json"] = o.graph_json;
  }
  return j;
}

json cmd_index_rebuild(const Options& o) {
  auto l = open_local(o);
  auto incremental = l.node->snapshot();
  auto rebuilt = l.node->read([](const ChainTree& t, const Mempool&) { return indexer::rebuild(t); });
  json j{{"digest", to_hex(rebuilt.digest())},
         {"incremental_digest", to_hex(incremental->digest())},
         {"matches", rebuilt == *incremental},
         {"entities", rebuilt.entities.size()},
         {"height", rebuilt.stats.height}};
  if (!(rebuilt == *incremental)) invalid("IndexMismatch", "incremental index differs from a rebuild", j);
  return j;
}

json cmd_status(const Options& o) {
  if (!o.node_url.empty()) return http_call(o.node_url, "GET", "/status");
  return local_get(open_local(o), "/status");
}

// --------------------------------------------------------------------- output

void print_human(std::ostream& out, const json& j) {
  if (j.contains("hex") && j.size() <= 4) {
    out << j["hex"].get<std::string>() << "\n";
    return;
  }
  for (const auto& [k, v] : j.items()) {
    if (k == "items" && v.is_array()) {
      for (const auto& it : v) {
        out << "  " << it.value("name", "") << " [" << it.value("kind", "") << "] " << it.value("status", "");
        if (it.value("error", "") != "") out << ": " << it["error"].get<std::string>() << " " << it.value("detail", "");
        out << "\n";
      }
      continue;
    }
    out << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Proof-carrying ledger node and explorer", "fcnode"};
  app.require_subcommand(1);
  app.add_flag("--json", o.json_out, "Print results as JSON");
  app.add_option("--home", o.home, "Data directory (default $PFG_HOME, else ~/.pfg)");
  app.add_option("--genesis", o.genesis, "Genesis file; stored in the data directory on first use");
  auto default_config = home_dir(o) / "fcnode.conf";
  app.set_config("--config", fs::exists(default_config) ? default_config.string() : "",
                 "Config file (key = value), overridden by flags");

  auto* node = app.add_subcommand("node", "Run or extend the local node")->require_subcommand(1);
  auto* node_run = node->add_subcommand("run", "Serve the HTTP API");
  node_run->add_option("--listen", o.listen, "HOST:PORT")->capture_default_str();
  node_run->add_flag("--read-only", o.read_only, "Reject POST requests");
  node_run->add_option("--cors", o.cors, "Allowed origin (repeatable, * for any)");
  node_run->add_option("--disable", o.disabled, "Endpoint to disable, e.g. graph.dot or doc/check");
  node_run->add_option("--page-size", o.page_size, "Default list length")->capture_default_str();
  node_run->add_option("--produce", o.produce_key, "Produce blocks with this key");
  node_run->add_option("--block-ms", o.block_ms, "Block interval when producing");
  node_run->add_option("--rebuild-ms", o.rebuild_ms, "Full index rebuild interval (0 = off)");
  auto* node_produce = node->add_subcommand("produce", "Produce blocks from the pending transactions");
  node_produce->add_option("--key", o.key, "Producer key file or seed:N")->required();
  node_produce->add_option("--count", o.count, "Blocks to produce")->capture_default_str();

  auto* keygen = app.add_subcommand("keygen", "Generate a key");
  keygen->add_option("--seed", o.seed, "Deterministic test key from a number");
  keygen->add_option("--out", o.out, "Write the key file here");

  auto* doc = app.add_subcommand("doc", "Documents")->require_subcommand(1);
  auto* doc_check = doc->add_subcommand("check", "Check a document");
  doc_check->add_option("file", o.file, "Document file")->required();
  doc_check->add_option("--theory", o.theories, "Theory file to make available, or the theory id to expect");

  auto* tx = app.add_subcommand("tx", "Transactions")->require_subcommand(1);
  auto* tx_build = tx->add_subcommand("build", "Build an unsigned transaction")->require_subcommand(1);
  std::vector<std::pair<std::string, CLI::App*>> kinds;
  for (const auto* kind : {"transfer", "bounty", "marker", "publish-doc", "publish-theory", "collect"}) {
    auto* k = tx_build->add_subcommand(kind);
    k->add_option("--key", o.key, "Key file or seed:N of the spender")->required();
    k->add_option("--fee", o.fee, "Fee in bars");
    k->add_option("--out", o.out, "Write the hex here");
    std::string s = kind;
    if (s == "transfer") {
      k->add_option("--to", o.to, "Recipient address")->required();
      k->add_option("--amount", o.amount, "Amount in bars")->required();
    } else if (s == "bounty" || s == "collect") {
      k->add_option("--prop", o.prop, "Proposition address or id")->required();
      k->add_option("--theory", o.theory, "Theory id for a proposition id");
      if (s == "bounty") k->add_option("--amount", o.amount, "Amount in bars")->required();
    } else if (s == "publish-theory") {
      k->add_option("--theory-file", o.theory_file, "Theory file")->required();
    } else {
      k->add_option("--doc", o.doc, "Document file")->required();
    }
    kinds.emplace_back(s, k);
  }
  auto* tx_sign = tx->add_subcommand("sign", "Sign a transaction");
  tx_sign->add_option("file", o.file, "Transaction hex file")->required();
  tx_sign->add_option("--key", o.key, "Key file or seed:N")->required();
  tx_sign->add_option("--out", o.out, "Write the hex here");
  auto* tx_submit = tx->add_subcommand("submit", "Submit a signed transaction");
  tx_submit->add_option("file", o.file, "Transaction hex file")->required();
  tx_submit->add_option("--node", o.node_url, "Node URL; without it the transaction is queued locally");

  auto* bounty = app.add_subcommand("bounty", "Bounties")->require_subcommand(1);
  auto* bounty_place = bounty->add_subcommand("place", "Place a bounty on a proposition");
  bounty_place->add_option("--prop", o.prop, "Proposition address or id")->required();
  bounty_place->add_option("--amount", o.amount, "Amount in bars")->required();
  bounty_place->add_option("--key", o.key, "Key file or seed:N")->required();
  bounty_place->add_option("--fee", o.fee, "Fee in bars");
  bounty_place->add_option("--theory", o.theory, "Theory id for a proposition id");

  auto* scenario = app.add_subcommand("scenario", "Network simulation")->require_subcommand(1);
  auto* scenario_run = scenario->add_subcommand("run", "Run a scenario file, or a random one");
  scenario_run->add_option("file", o.file, "Scenario file");
  scenario_run->add_option("--seed", o.seed, "Seed (overrides the file)");
  scenario_run->add_option("--nodes", o.nodes, "Node count (overrides the file)");
  scenario_run->add_option("--out", o.out, "Write graphs (JSON and DOT) and digests here");

  auto* graph = app.add_subcommand("graph", "Block graph")->require_subcommand(1);
  auto* graph_export = graph->add_subcommand("export", "Export the block graph");
  graph_export->add_option("--dot", o.dot, "DOT output file");
  graph_export->add_option("--json-out", o.graph_json, "JSON output file");

  auto* index = app.add_subcommand("index", "Explorer index")->require_subcommand(1);
  auto* index_rebuild = index->add_subcommand("rebuild", "Rebuild the index and compare");

  auto* status = app.add_subcommand("status", "Chain status");
  status->add_option("--node", o.node_url, "Node URL; without it the local chain is read");

  std::function<void(CLI::App*)> inherit = [&](CLI::App* a) {
    for (auto* s : a->get_subcommands({})) {
      s->fallthrough();
      inherit(s);
    }
  };
  inherit(&app);


  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    auto* sub = &app;
    for (auto* s = app.get_subcommands().empty() ? nullptr : app.get_subcommands().front(); s;
         s = s->get_subcommands().empty() ? nullptr : s->get_subcommands().front())
      sub = s;
    if (o.json_out)
      out << json{{"error", {{"code", "UsageError"}, {"message", e.what()}}}}.dump(2) << "\n";
    else
      err << "error: " << e.what() << "\n\n" << sub->help();
    return kUsage;
  }

  try {
    json result;
    if (node_run->parsed())
      result = cmd_node_run(o, err);
    else if (node_produce->parsed())
      result = cmd_node_produce(o);
    else if (keygen->parsed())
      result = cmd_keygen(o);
    else if (doc_check->parsed())
      result = cmd_doc_check(o);
    else if (tx_sign->parsed())
      result = cmd_tx_sign(o);
    else if (tx_submit->parsed())
      result = cmd_tx_submit(o);
    else if (bounty_place->parsed())
      result = cmd_bounty_place(o);
    else if (scenario_run->parsed())
      result = cmd_scenario_run(o);
    else if (graph_export->parsed())
      result = cmd_graph_export(o);
    else if (index_rebuild->parsed())
      result = cmd_index_rebuild(o);
    else if (status->parsed())
      result = cmd_status(o);
    else
      for (const auto& [kind, sub] : kinds)
        if (sub->parsed()) result = cmd_tx_build(kind, o);
    if (o.json_out)
      out << result.dump(2) << "\n";
    else
      print_human(out, result);
    return kOk;
  } catch (const Failure& f) {
    json e = f.extra;
    e["code"] = f.code;
    e["message"] = f.message;
    if (o.json_out) {
      out << json{{"error", e}}.dump(2) << "\n";
    } else {
      err << "error: " << f.code << ": " << f.message << "\n";
      if (e.contains("items")) print_human(err, json{{"items", e["items"]}});
    }
    return f.exit;
  } catch (const std::exception& ex) {
    if (o.json_out)
      out << json{{"error", {{"code", "Internal"}, {"message", ex.what()}}}}.dump(2) << "\n";
    else
      err << "error: " << ex.what() << "\n";
    return kInvalid;
  }
}

}  // namespace fc::cli
