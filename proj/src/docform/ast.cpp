#include "fc/docform/ast.hpp"

#include "fc/crypto.hpp"
#include "fc/kernel/codec.hpp"

namespace fc::docform {

namespace {
constexpr std::uint8_t kDocTag = 0x21;
constexpr std::uint8_t kParamTag = 0x22;
constexpr std::uint8_t kDefTag = 0x23;
constexpr std::uint8_t kThmTag = 0x24;
constexpr std::uint8_t kConjTag = 0x25;
constexpr std::uint8_t kTheorySpecTag = 0x26;

template <class... Fs>
struct overloaded : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
overloaded(Fs...) -> overloaded<Fs...>;
}  // namespace

const std::string& item_name(const Item& item) {
  return std::visit([](const auto& i) -> const std::string& { return i.name; }, item);
}

const char* item_kind(const Item& item) {
  return std::visit(overloaded{[](const ParamItem&) { return "param"; }, [](const DefItem&) { return "def"; },
                               [](const ThmItem&) { return "thm"; }, [](const ConjItem&) { return "conj"; }},
                    item);
}

Bytes serialize(const Document& doc) {
  ByteWriter w;
  w.u8(kDocTag);
  w.raw(doc.theory);
  w.leb(doc.items.size());
  for (const auto& item : doc.items) {
    std::visit(overloaded{[&](const ParamItem& p) {
                            w.u8(kParamTag);
                            w.str(p.name);
                            w.raw(p.id);
                            w.u8(p.ty ? 1 : 0);
                            if (p.ty) kernel::encode(w, *p.ty);
                          },
                          [&](const DefItem& d) {
                            w.u8(kDefTag);
                            w.str(d.name);
                            kernel::encode(w, d.ty);
                            kernel::encode(w, d.body);
                          },
                          [&](const ThmItem& t) {
                            w.u8(kThmTag);
                            w.str(t.name);
                            kernel::encode(w, t.stmt);
                            kernel::encode(w, t.proof);
                          },
                          [&](const ConjItem& c) {
                            w.u8(kConjTag);
                            w.str(c.name);
                            kernel::encode(w, c.stmt);
                            w.str(c.tag);
                          }},
               item);
  }
  return std::move(w).take();
}

Document decode_document(ByteReader& r) {
  if (r.u8() != kDocTag) throw DecodeError("not a document");
  Document doc;
  doc.theory = r.fixed<32>();
  auto n = r.leb();
  if (n > r.remaining()) throw DecodeError("item count exceeds input");
  for (std::uint64_t i = 0; i < n; ++i) {
    switch (r.u8()) {
      case kParamTag: {
        ParamItem p;
        p.name = r.str();
        p.id = r.fixed<32>();
        auto has_ty = r.u8();
        if (has_ty > 1) throw DecodeError("bad param flag");
        if (has_ty) p.ty = kernel::decode_ty(r);
        doc.items.emplace_back(std::move(p));
        break;
      }
      case kDefTag: {
        auto name = r.str();
        auto ty = kernel::decode_ty(r);
        auto body = kernel::decode_term(r);
        doc.items.emplace_back(DefItem{std::move(name), std::move(ty), std::move(body)});
        break;
      }
      case kThmTag: {
        auto name = r.str();
        auto stmt = kernel::decode_term(r);
        auto proof = kernel::decode_proof(r);
        doc.items.emplace_back(ThmItem{std::move(name), std::move(stmt), std::move(proof)});
        break;
      }
      case kConjTag: {
        auto name = r.str();
        auto stmt = kernel::decode_term(r);
        auto tag = r.str();
        doc.items.emplace_back(ConjItem{std::move(name), std::move(stmt), std::move(tag)});
        break;
      }
      default: throw DecodeError("bad document item tag");
    }
  }
  return doc;
}

Hash32 doc_id(const Document& doc) { return crypto::sha256(serialize(doc)); }

Bytes serialize(const TheorySpec& spec) {
  ByteWriter w;
  w.u8(kTheorySpecTag);
  w.str(spec.name);
  w.leb(spec.bases);
  w.leb(spec.prims.size());
  for (const auto& p : spec.prims) {
    w.str(p.name);
    kernel::encode(w, p.ty);
  }
  w.leb(spec.axioms.size());
  for (const auto& a : spec.axioms) {
    w.str(a.name);
    kernel::encode(w, a.stmt);
  }
  return std::move(w).take();
}

TheorySpec decode_theory(ByteReader& r) {
  if (r.u8() != kTheorySpecTag) throw DecodeError("not a theory specification");
  TheorySpec spec;
  spec.name = r.str();
  auto bases = r.leb();
  if (bases > 0xffff) throw DecodeError("too many base types");
  spec.bases = static_cast<std::uint32_t>(bases);
  auto np = r.leb();
  if (np > r.remaining()) throw DecodeError("prim count exceeds input");
  for (std::uint64_t i = 0; i < np; ++i) {
    auto name = r.str();
    spec.prims.push_back({std::move(name), kernel::decode_ty(r)});
  }
  auto na = r.leb();
  if (na > r.remaining()) throw DecodeError("axiom count exceeds input");
  for (std::uint64_t i = 0; i < na; ++i) {
    auto name = r.str();
    spec.axioms.push_back({std::move(name), kernel::decode_term(r)});
  }
  return spec;
}

namespace {
std::vector<Ty> prim_types(const TheorySpec& spec) {
  std::vector<Ty> out;
  for (const auto& p : spec.prims) out.push_back(p.ty);
  return out;
}
}  // namespace

TheoryId theory_id(const TheorySpec& spec) {
  std::vector<Term> axioms;
  for (const auto& a : spec.axioms) axioms.push_back(a.stmt);
  return kernel::theory_id(spec.bases, prim_types(spec), axioms);
}

kernel::Signature theory_signature(const TheorySpec& spec) {
  kernel::Signature sig;
  sig.bases = spec.bases;
  sig.prims = prim_types(spec);
  for (const auto& p : sig.prims) kernel::check_ty(sig, p);
  for (const auto& a : spec.axioms) {
    kernel::check_proposition(sig, a.stmt);
    sig.axioms.emplace(kernel::prop_id(sig, a.stmt), kernel::normalize(sig, a.stmt, false));
  }
  return sig;
}

}  // namespace fc::docform
