#pragma once

// HTTP/JSON interface over a node. Handlers are plain functions of a
// Request so they can be exercised without sockets; serve() binds them to
// an HTTP server.

#include <map>
#include <set>
#include <span>
#include <string>

#include "fc/api/node.hpp"

namespace fc::api {

struct ApiConfig {
  std::string host = "127.0.0.1";
  int port = 8080;
  bool read_only = false;              // disables POST
  std::vector<std::string> cors_allow;  // allowed origins; "*" allows any
  std::size_t page_size = 100;          // default list length
  std::size_t max_page_size = 500;
  std::set<std::string> disabled;       // endpoint names, e.g. "graph.dot", "doc/check"
};

constexpr std::size_t kPageSizeLimit = 500;

struct Request {
  std::string method = "GET";
  std::string path;
  std::map<std::string, std::string> query;
  std::string body;
};

struct Response {
  int status = 200;
  std::string content_type = "application/json";
  std::string body;
};

class Api {
public:
  /// Throws std::invalid_argument when the page sizes exceed kPageSizeLimit.
  Api(Node& node, ApiConfig cfg = {});

  Response handle(const Request& req) const;
  /// Blocks serving HTTP until stop() is called from another thread.
  void serve();
  void stop();
  const ApiConfig& config() const { return cfg_; }

private:
  Node& node_;
  ApiConfig cfg_;
  struct Server;
  std::shared_ptr<Server> server_;
};

/// The GET /graph body.
std::string graph_to_json(const std::vector<ledger::GraphNode>& graph, const ledger::BlockHash& tip);

/// The POST /doc/check response for `text`, checked against the theories
/// published in `tip` plus `extra` (offline theory files).
Response check_document(const ledger::ChainState& tip, const std::string& text,
                        std::span<const docform::TheorySpec> extra = {});

/// The GET paths that exist for the current chain (used by tests and the
/// purity check): every block, tx, address, theory, object and proposition.
std::vector<std::string> enumerate_get_paths(const Node& node);

}  // namespace fc::api
