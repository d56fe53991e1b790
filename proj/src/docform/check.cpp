#include "fc/docform/check.hpp"

#include <algorithm>
#include <functional>

#include "fc/kernel/codec.hpp"

namespace fc::docform {

using kernel::ErrorCode;
using kernel::KernelError;
using kernel::Signature;

DocError::DocError(std::size_t item, std::string name, ErrorCode code, const std::string& detail)
    : std::runtime_error("item " + std::to_string(item) + " (" + name + "): " + detail),
      item_(item),
      name_(std::move(name)),
      code_(code) {}

namespace {

void collect_refs(const Term& t, std::vector<Hash32>& out) {
  switch (t.kind()) {
    case Term::Kind::Ref: out.push_back(t.ref_id()); break;
    case Term::Kind::Ap:
    case Term::Kind::Imp:
      collect_refs(t.left(), out);
      collect_refs(t.right(), out);
      break;
    case Term::Kind::La:
    case Term::Kind::All: collect_refs(t.body(), out); break;
    default: break;
  }
}

void collect_proof(const Proof& p, std::vector<Hash32>& out) {
  switch (p.kind()) {
    case Proof::Kind::Known: out.push_back(p.known_id()); break;
    case Proof::Kind::PrAp:
      collect_proof(p.left(), out);
      collect_proof(p.right(), out);
      break;
    case Proof::Kind::TmAp:
      collect_proof(p.left(), out);
      collect_refs(p.term(), out);
      break;
    case Proof::Kind::PrLa:
      collect_refs(p.term(), out);
      collect_proof(p.left(), out);
      break;
    case Proof::Kind::TmLa: collect_proof(p.left(), out); break;
    default: break;
  }
}

void sort_unique(std::vector<Hash32>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

// Checks one item against `work` and extends `work` and `effect` with it.
void check_item(Signature& work, DocEffect& effect, std::size_t index, const Item& item) {
  if (const auto* p = std::get_if<ParamItem>(&item)) {
    if (p->ty) {
      auto it = work.defs.find(p->id);
      if (it == work.defs.end()) throw KernelError(ErrorCode::UnknownRef, "object " + to_hex(p->id) + " not published");
      kernel::check_ty(work, *p->ty);
      if (!(it->second.ty == *p->ty)) throw KernelError(ErrorCode::TypeMismatch, "param type differs from published type");
    } else if (!work.known(p->id)) {
      throw KernelError(ErrorCode::UnknownKnown, "proposition " + to_hex(p->id) + " not published");
    }
    return;
  }
  if (const auto* d = std::get_if<DefItem>(&item)) {
    kernel::check_ty(work, d->ty);
    if (!d->body.closed()) throw KernelError(ErrorCode::NotClosed, "definition body has free variables");
    auto ty = kernel::typecheck(work, {}, d->body);
    if (!(ty == d->ty)) throw KernelError(ErrorCode::TypeMismatch, "definition body does not have the declared type");
    NewDef nd;
    nd.item = index;
    nd.name = d->name;
    nd.id = kernel::term_id(work, d->body);
    nd.ty = d->ty;
    nd.body = d->body;
    nd.fresh = !work.defs.contains(nd.id);
    collect_refs(d->body, nd.deps);
    sort_unique(nd.deps);
    if (nd.fresh) work.defs.emplace(nd.id, kernel::Definition{d->ty, d->body});
    effect.defs.push_back(std::move(nd));
    return;
  }
  if (const auto* t = std::get_if<ThmItem>(&item)) {
    NewThm nt;
    nt.item = index;
    nt.name = t->name;
    nt.stmt = kernel::check_theorem(work, t->stmt, t->proof);
    nt.id = kernel::prop_id(work, t->stmt);
    nt.fresh = work.known(nt.id) == nullptr;
    if (auto q = refuted_prop(work, nt.stmt)) {
      nt.refutes = kernel::prop_id(work, *q);
      nt.refuted_stmt = std::move(q);
    }
    collect_refs(t->stmt, nt.deps);
    collect_proof(t->proof, nt.deps);
    sort_unique(nt.deps);
    if (nt.fresh) work.thms.emplace(nt.id, nt.stmt);
    effect.thms.push_back(std::move(nt));
    return;
  }
  const auto& c = std::get<ConjItem>(item);
  kernel::check_proposition(work, c.stmt);
  NewConj nc;
  nc.item = index;
  nc.name = c.name;
  nc.id = kernel::prop_id(work, c.stmt);
  nc.stmt = kernel::normalize(work, c.stmt, false);
  nc.tag = c.tag;
  collect_refs(c.stmt, nc.deps);
  sort_unique(nc.deps);
  effect.conjs.push_back(std::move(nc));
}

}  // namespace

DocEffect check_doc(const Signature& sig, const Document& doc) {
  Signature work = sig;
  DocEffect effect;
  for (std::size_t i = 0; i < doc.items.size(); ++i) {
    try {
      check_item(work, effect, i, doc.items[i]);
    } catch (const KernelError& e) {
      throw DocError(i, item_name(doc.items[i]), e.code(), e.what());
    }
  }
  return effect;
}

void apply_effect(Signature& sig, const DocEffect& effect) {
  for (const auto& d : effect.defs)
    if (d.fresh) sig.defs.emplace(d.id, kernel::Definition{d.ty, d.body});
  for (const auto& t : effect.thms)
    if (t.fresh) sig.thms.emplace(t.id, t.stmt);
}

std::vector<ItemStatus> check_doc_report(const Signature& sig, const Document& doc) {
  Signature work = sig;
  DocEffect effect;
  std::vector<ItemStatus> out;
  bool failed = false;
  for (std::size_t i = 0; i < doc.items.size(); ++i) {
    ItemStatus st{item_name(doc.items[i]), item_kind(doc.items[i]), "ok", "", ""};
    if (failed) {
      st.status = "skipped";
    } else {
      try {
        check_item(work, effect, i, doc.items[i]);
      } catch (const KernelError& e) {
        failed = true;
        st.status = "error";
        st.error = kernel::error_name(e.code());
        st.detail = e.what();
      }
    }
    out.push_back(std::move(st));
  }
  return out;
}

std::optional<Term> refuted_prop(const Signature& sig, const Term& stmt) {
  auto head = kernel::unfold_head(sig, stmt);
  if (head.kind() != Term::Kind::Imp) return std::nullopt;
  static const Term falsum = Term::all(Ty::prop(), Term::db(0));
  if (!(kernel::normalize(sig, head.right(), true) == falsum)) return std::nullopt;
  return kernel::normalize(sig, head.left(), false);
}

std::vector<Hash32> term_deps(const Term& t) {
  std::vector<Hash32> out;
  collect_refs(t, out);
  sort_unique(out);
  return out;
}

std::vector<Hash32> proof_deps(const Proof& p) {
  std::vector<Hash32> out;
  collect_proof(p, out);
  sort_unique(out);
  return out;
}

}  // namespace fc::docform
