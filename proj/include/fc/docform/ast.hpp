#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "fc/kernel/kernel.hpp"

namespace fc::docform {

using kernel::ObjId;
using kernel::Proof;
using kernel::PropId;
using kernel::Term;
using kernel::TheoryId;
using kernel::Ty;

struct PrimDecl {
  std::string name;
  Ty ty;
  friend bool operator==(const PrimDecl&, const PrimDecl&) = default;
};

struct AxiomDecl {
  std::string name;
  Term stmt;
  friend bool operator==(const AxiomDecl&, const AxiomDecl&) = default;
};

struct TheorySpec {
  std::string name;
  std::uint32_t bases = 1;
  std::vector<PrimDecl> prims;
  std::vector<AxiomDecl> axioms;
  friend bool operator==(const TheorySpec&, const TheorySpec&) = default;
};

/// Import of a previously published object (with its type) or proposition.
struct ParamItem {
  std::string name;
  Hash32 id;
  std::optional<Ty> ty;
  bool is_object() const { return ty.has_value(); }
  friend bool operator==(const ParamItem&, const ParamItem&) = default;
};

struct DefItem {
  std::string name;
  Ty ty;
  Term body;
  friend bool operator==(const DefItem&, const DefItem&) = default;
};

struct ThmItem {
  std::string name;
  Term stmt;
  Proof proof;
  friend bool operator==(const ThmItem&, const ThmItem&) = default;
};

struct ConjItem {
  std::string name;
  Term stmt;
  std::string tag = "Other";
  friend bool operator==(const ConjItem&, const ConjItem&) = default;
};

using Item = std::variant<ParamItem, DefItem, ThmItem, ConjItem>;

const std::string& item_name(const Item& item);
const char* item_kind(const Item& item);

struct Document {
  TheoryId theory{};
  std::vector<Item> items;
  friend bool operator==(const Document&, const Document&) = default;
};

/// Canonical bytes of a document; the doc id is their SHA-256.
Bytes serialize(const Document& doc);
Document decode_document(ByteReader& r);
Hash32 doc_id(const Document& doc);

Bytes serialize(const TheorySpec& spec);
TheorySpec decode_theory(ByteReader& r);

/// The kernel-level identity of a theory (name hints excluded).
TheoryId theory_id(const TheorySpec& spec);
/// Signature with the theory's primitives and axioms; checks the axioms.
kernel::Signature theory_signature(const TheorySpec& spec);

}  // namespace fc::docform
