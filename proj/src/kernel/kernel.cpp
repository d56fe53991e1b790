#include "fc/kernel/kernel.hpp"

#include <algorithm>

namespace fc::kernel {

const char* error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::UnboundVariable: return "UnboundVariable";
    case ErrorCode::UnknownRef: return "UnknownRef";
    case ErrorCode::UnknownPrim: return "UnknownPrim";
    case ErrorCode::BadBaseType: return "BadBaseType";
    case ErrorCode::TypeMismatch: return "TypeMismatch";
    case ErrorCode::BadHyp: return "BadHyp";
    case ErrorCode::UnknownKnown: return "UnknownKnown";
    case ErrorCode::NotAnImplication: return "NotAnImplication";
    case ErrorCode::NotAForall: return "NotAForall";
    case ErrorCode::ConvFailure: return "ConvFailure";
    case ErrorCode::IllTypedWitness: return "IllTypedWitness";
    case ErrorCode::NotClosed: return "NotClosed";
    case ErrorCode::IllTyped: return "IllTyped";
  }
  return "Unknown";
}

const Term* Signature::known(const PropId& id) const {
  if (auto it = axioms.find(id); it != axioms.end()) return &it->second;
  if (auto it = thms.find(id); it != thms.end()) return &it->second;
  return nullptr;
}

void check_ty(const Signature& sig, const Ty& ty) {
  switch (ty.kind()) {
    case Ty::Kind::Prop: return;
    case Ty::Kind::Base:
      if (ty.base_index() >= sig.bases)
        throw KernelError(ErrorCode::BadBaseType, "base type " + std::to_string(ty.base_index()) +
                                                      " not declared by the theory");
      return;
    case Ty::Kind::Func:
      check_ty(sig, ty.dom());
      check_ty(sig, ty.cod());
      return;
  }
}

namespace {

Ty infer(const Signature& sig, Context& ctx, const Term& t) {
  switch (t.kind()) {
    case Term::Kind::DB:
      if (t.index() >= ctx.size())
        throw KernelError(ErrorCode::UnboundVariable, "DB " + std::to_string(t.index()));
      return ctx[ctx.size() - 1 - t.index()];
    case Term::Kind::Prim:
      if (t.index() >= sig.prims.size())
        throw KernelError(ErrorCode::UnknownPrim, "Prim " + std::to_string(t.index()));
      return sig.prims[t.index()];
    case Term::Kind::Ref: {
      auto it = sig.defs.find(t.ref_id());
      if (it == sig.defs.end()) throw KernelError(ErrorCode::UnknownRef, to_hex(t.ref_id()));
      return it->second.ty;
    }
    case Term::Kind::Ap: {
      Ty fn = infer(sig, ctx, t.left());
      if (!fn.is_func())
        throw KernelError(ErrorCode::TypeMismatch,
                          "expected a function type, found " + debug_string(fn));
      Ty arg = infer(sig, ctx, t.right());
      if (!(arg == fn.dom()))
        throw KernelError(ErrorCode::TypeMismatch,
                          "expected " + debug_string(fn.dom()) + ", found " + debug_string(arg));
      return fn.cod();
    }
    case Term::Kind::La: {
      check_ty(sig, t.binder_ty());
      ctx.push_back(t.binder_ty());
      Ty body = infer(sig, ctx, t.body());
      ctx.pop_back();
      return Ty::func(t.binder_ty(), body);
    }
    case Term::Kind::Imp: {
      for (const Term* side : {&t.left(), &t.right()}) {
        Ty s = infer(sig, ctx, *side);
        if (!s.is_prop())
          throw KernelError(ErrorCode::TypeMismatch, "expected prop, found " + debug_string(s));
      }
      return Ty::prop();
    }
    case Term::Kind::All: {
      check_ty(sig, t.binder_ty());
      ctx.push_back(t.binder_ty());
      Ty body = infer(sig, ctx, t.body());
      ctx.pop_back();
      if (!body.is_prop())
        throw KernelError(ErrorCode::TypeMismatch, "expected prop, found " + debug_string(body));
      return Ty::prop();
    }
  }
  throw KernelError(ErrorCode::IllTyped, "corrupt term");
}

}  // namespace

Ty typecheck(const Signature& sig, const Context& ctx, const Term& t) {
  Context scratch = ctx;
  return infer(sig, scratch, t);
}

void check_proposition(const Signature& sig, const Term& t) {
  if (!t.closed()) throw KernelError(ErrorCode::NotClosed, "proposition has free variables");
  Ty ty = typecheck(sig, {}, t);
  if (!ty.is_prop()) throw KernelError(ErrorCode::TypeMismatch, "expected prop, found " + debug_string(ty));
}

Term shift(const Term& t, std::int64_t d, std::uint32_t cutoff) {
  if (d == 0 || t.loose() <= cutoff) return t;
  switch (t.kind()) {
    case Term::Kind::DB:
      return Term::db(static_cast<std::uint32_t>(static_cast<std::int64_t>(t.index()) + d));
    case Term::Kind::Prim:
    case Term::Kind::Ref: return t;
    case Term::Kind::Ap: return Term::ap(shift(t.left(), d, cutoff), shift(t.right(), d, cutoff));
    case Term::Kind::Imp: return Term::imp(shift(t.left(), d, cutoff), shift(t.right(), d, cutoff));
    case Term::Kind::La: return Term::la(t.binder_ty(), shift(t.body(), d, cutoff + 1));
    case Term::Kind::All: return Term::all(t.binder_ty(), shift(t.body(), d, cutoff + 1));
  }
  return t;
}

namespace {

// Substitutes `arg` (valid at the outer level) for DB `depth`, lowering
// higher indices by one.
Term subst_at(const Term& t, const Term& arg, std::uint32_t depth) {
  if (t.loose() <= depth) return t;
  switch (t.kind()) {
    case Term::Kind::DB:
      if (t.index() == depth) return shift(arg, depth);
      return Term::db(t.index() - 1);
    case Term::Kind::Prim:
    case Term::Kind::Ref: return t;
    case Term::Kind::Ap: return Term::ap(subst_at(t.left(), arg, depth), subst_at(t.right(), arg, depth));
    case Term::Kind::Imp: return Term::imp(subst_at(t.left(), arg, depth), subst_at(t.right(), arg, depth));
    case Term::Kind::La: return Term::la(t.binder_ty(), subst_at(t.body(), arg, depth + 1));
    case Term::Kind::All: return Term::all(t.binder_ty(), subst_at(t.body(), arg, depth + 1));
  }
  return t;
}

bool occurs(const Term& t, std::uint32_t index) {
  if (t.loose() <= index) return false;
  switch (t.kind()) {
    case Term::Kind::DB: return t.index() == index;
    case Term::Kind::Prim:
    case Term::Kind::Ref: return false;
    case Term::Kind::Ap:
    case Term::Kind::Imp: return occurs(t.left(), index) || occurs(t.right(), index);
    case Term::Kind::La:
    case Term::Kind::All: return occurs(t.body(), index + 1);
  }
  return false;
}

class Normalizer {
public:
  Normalizer(const Signature& sig, bool unfold) : sig_(sig), unfold_(unfold) {}

  Term nf(const Term& t) {
    switch (t.kind()) {
      case Term::Kind::DB:
      case Term::Kind::Prim: return t;
      case Term::Kind::Ref: {
        if (!unfold_) return t;
        auto it = sig_.defs.find(t.ref_id());
        if (it == sig_.defs.end()) throw KernelError(ErrorCode::UnknownRef, to_hex(t.ref_id()));
        if (!it->second.body) return t;
        return nf(*it->second.body);
      }
      case Term::Kind::Ap: return apply(nf(t.left()), nf(t.right()));
      case Term::Kind::Imp: return Term::imp(nf(t.left()), nf(t.right()));
      case Term::Kind::All: return Term::all(t.binder_ty(), nf(t.body()));
      case Term::Kind::La: return eta(t.binder_ty(), nf(t.body()));
    }
    return t;
  }

private:
  Term apply(Term fn, Term arg) {
    if (fn.kind() == Term::Kind::La) return nf(instantiate(fn.body(), arg));
    return Term::ap(std::move(fn), std::move(arg));
  }

  static Term eta(const Ty& dom, Term body) {
    if (body.kind() == Term::Kind::Ap && body.right().kind() == Term::Kind::DB &&
        body.right().index() == 0 && !occurs(body.left(), 0))
      return shift(body.left(), -1);
    return Term::la(dom, std::move(body));
  }

  const Signature& sig_;
  bool unfold_;
};

}  // namespace

Term instantiate(const Term& body, const Term& arg) { return subst_at(body, arg, 0); }

Term normalize(const Signature& sig, const Term& t, bool unfold) {
  return Normalizer(sig, unfold).nf(t);
}

bool conv(const Signature& sig, const Term& a, const Term& b) {
  if (a == b) return true;
  return normalize(sig, a, true) == normalize(sig, b, true);
}

Term leibniz_eq(const Ty& ty, const Term& a, const Term& b) {
  auto pred = Term::db(0);
  return Term::all(Ty::func(ty, Ty::prop()),
                   Term::imp(Term::ap(pred, shift(a, 1)), Term::ap(pred, shift(b, 1))));
}

Term ext_prop(const Ty& dom, const Ty& cod) {
  const Ty fn = Ty::func(dom, cod);
  // Under binders f, g, x: f = DB 2, g = DB 1, x = DB 0.
  Term pointwise = Term::all(dom, leibniz_eq(cod, Term::ap(Term::db(2), Term::db(0)),
                                             Term::ap(Term::db(1), Term::db(0))));
  Term equal = leibniz_eq(fn, Term::db(1), Term::db(0));
  return Term::all(fn, Term::all(fn, Term::imp(pointwise, equal)));
}

namespace {

// Unfolds defined constants at the head of a normal term until the head is
// no longer a transparent Ref, re-normalising without further unfolding.
Term unfold_head_once(const Signature& sig, const Term& t, bool& changed) {
  changed = false;
  std::vector<Term> args;
  const Term* head = &t;
  while (head->kind() == Term::Kind::Ap) {
    args.push_back(head->right());
    head = &head->left();
  }
  if (head->kind() != Term::Kind::Ref) return t;
  auto it = sig.defs.find(head->ref_id());
  if (it == sig.defs.end()) throw KernelError(ErrorCode::UnknownRef, to_hex(head->ref_id()));
  if (!it->second.body) return t;
  Term out = *it->second.body;
  for (auto a = args.rbegin(); a != args.rend(); ++a) out = Term::ap(out, *a);
  changed = true;
  return normalize(sig, out, false);
}

Term expose(const Signature& sig, Term t, Term::Kind want) {
  // Definitions are acyclic, so this terminates.
  while (t.kind() != want) {
    bool changed = false;
    t = unfold_head_once(sig, t, changed);
    if (!changed) break;
  }
  return t;
}

}  // namespace

Term unfold_head(const Signature& sig, const Term& t) {
  Term cur = t;
  for (bool changed = true; changed;) cur = unfold_head_once(sig, cur, changed);
  return cur;
}

namespace {

class ProofChecker {
public:
  explicit ProofChecker(const Signature& sig) : sig_(sig) {}

  Term check(std::vector<Term>& hyps, const Proof& p) {
    switch (p.kind()) {
      case Proof::Kind::Hyp:
        if (p.index() >= hyps.size())
          throw KernelError(ErrorCode::BadHyp, "Hyp " + std::to_string(p.index()));
        return hyps[p.index()];
      case Proof::Kind::Known: {
        const Term* stmt = sig_.known(p.known_id());
        if (!stmt) throw KernelError(ErrorCode::UnknownKnown, to_hex(p.known_id()));
        return normalize(sig_, *stmt, false);
      }
      case Proof::Kind::PrAp: {
        Term fn = expose(sig_, check(hyps, p.left()), Term::Kind::Imp);
        if (fn.kind() != Term::Kind::Imp)
          throw KernelError(ErrorCode::NotAnImplication, debug_string(fn));
        Term arg = check(hyps, p.right());
        if (!conv(sig_, fn.left(), arg))
          throw KernelError(ErrorCode::ConvFailure,
                            "expected " + debug_string(fn.left()) + ", found " + debug_string(arg));
        return fn.right();
      }
      case Proof::Kind::TmAp: {
        Term fn = expose(sig_, check(hyps, p.left()), Term::Kind::All);
        if (fn.kind() != Term::Kind::All) throw KernelError(ErrorCode::NotAForall, debug_string(fn));
        Ty witness_ty = [&] {
          try {
            return infer(sig_, ctx_, p.term());
          } catch (const KernelError& e) {
            throw KernelError(ErrorCode::IllTypedWitness, e.what());
          }
        }();
        if (!(witness_ty == fn.binder_ty()))
          throw KernelError(ErrorCode::IllTypedWitness, "expected " + debug_string(fn.binder_ty()) +
                                                            ", found " + debug_string(witness_ty));
        return normalize(sig_, instantiate(fn.body(), p.term()), false);
      }
      case Proof::Kind::PrLa: {
        Ty ty = infer(sig_, ctx_, p.term());
        if (!ty.is_prop())
          throw KernelError(ErrorCode::TypeMismatch, "hypothesis must be a prop, found " + debug_string(ty));
        Term hyp = normalize(sig_, p.term(), false);
        hyps.push_back(hyp);
        Term body = check(hyps, p.left());
        hyps.pop_back();
        return Term::imp(std::move(hyp), std::move(body));
      }
      case Proof::Kind::TmLa: {
        check_ty(sig_, p.ty());
        std::vector<Term> inner;
        inner.reserve(hyps.size());
        for (const auto& h : hyps) inner.push_back(shift(h, 1));
        ctx_.push_back(p.ty());
        Term body = check(inner, p.left());
        ctx_.pop_back();
        return Term::all(p.ty(), std::move(body));
      }
      case Proof::Kind::Ext:
        check_ty(sig_, p.ty());
        check_ty(sig_, p.ty2());
        return ext_prop(p.ty(), p.ty2());
    }
    throw KernelError(ErrorCode::IllTyped, "corrupt proof");
  }

private:
  const Signature& sig_;
  Context ctx_;
};

}  // namespace

Term check_proof(const Signature& sig, std::span<const Term> hyps, const Proof& p) {
  std::vector<Term> normal;
  normal.reserve(hyps.size());
  for (const auto& h : hyps) {
    check_proposition(sig, h);
    normal.push_back(normalize(sig, h, false));
  }
  return ProofChecker(sig).check(normal, p);
}

Term check_theorem(const Signature& sig, const Term& statement, const Proof& proof) {
  check_proposition(sig, statement);
  Term proved = check_proof(sig, {}, proof);
  if (!conv(sig, proved, statement))
    throw KernelError(ErrorCode::ConvFailure, "proof concludes " + debug_string(proved) +
                                                  ", statement is " + debug_string(statement));
  return normalize(sig, statement, false);
}

}  // namespace fc::kernel
