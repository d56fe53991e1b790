#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fc/docform/ast.hpp"

namespace fc::docform {

struct NewDef {
  std::size_t item = 0;
  std::string name;
  ObjId id{};
  Ty ty = Ty::prop();
  Term body = Term::db(0);
  bool fresh = true;  // false when the same object was already published
  std::vector<Hash32> deps;
  friend bool operator==(const NewDef&, const NewDef&) = default;
};

struct NewThm {
  std::size_t item = 0;
  std::string name;
  PropId id{};
  Term stmt = Term::db(0);  // normal form, Refs folded
  bool fresh = true;
  /// Set when the statement normalises to Imp(Q, False): the refuted Q.
  std::optional<PropId> refutes;
  std::optional<Term> refuted_stmt;
  std::vector<Hash32> deps;
  friend bool operator==(const NewThm&, const NewThm&) = default;
};

struct NewConj {
  std::size_t item = 0;
  std::string name;
  PropId id{};
  Term stmt = Term::db(0);
  std::string tag;
  std::vector<Hash32> deps;
  friend bool operator==(const NewConj&, const NewConj&) = default;
};

/// What a checked document adds to its theory.
struct DocEffect {
  std::vector<NewDef> defs;
  std::vector<NewThm> thms;
  std::vector<NewConj> conjs;
  friend bool operator==(const DocEffect&, const DocEffect&) = default;
};

class DocError : public std::runtime_error {
public:
  DocError(std::size_t item, std::string name, kernel::ErrorCode code, const std::string& detail);
  std::size_t item() const { return item_; }
  const std::string& name() const { return name_; }
  kernel::ErrorCode code() const { return code_; }

private:
  std::size_t item_;
  std::string name_;
  kernel::ErrorCode code_;
};

/// Checks every item left to right against `sig`, which must be the
/// signature of doc.theory. Throws DocError at the first failing item.
DocEffect check_doc(const kernel::Signature& sig, const Document& doc);

/// Adds the effect's fresh definitions and theorems to `sig`.
void apply_effect(kernel::Signature& sig, const DocEffect& effect);

struct ItemStatus {
  std::string name;
  std::string kind;
  std::string status;  // "ok", "error", "skipped"
  std::string error;   // kernel error name when status == "error"
  std::string detail;
};

/// Per-item report; items after the first failure are reported as skipped.
std::vector<ItemStatus> check_doc_report(const kernel::Signature& sig, const Document& doc);

/// If `stmt` (normal, folded) has the shape Imp(Q, False) after unfolding
/// head definitions, returns Q in folded normal form.
std::optional<Term> refuted_prop(const kernel::Signature& sig, const Term& stmt);

/// Ids referenced by a term (Refs) or proof (Refs and Knowns), sorted.
std::vector<Hash32> term_deps(const Term& t);
std::vector<Hash32> proof_deps(const Proof& p);

}  // namespace fc::docform
