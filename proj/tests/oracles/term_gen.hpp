#pragma once

// Seeded random generator of well-typed terms, used by property tests.

#include <cstdint>
#include <random>
#include <vector>

#include "fc/kernel/syntax.hpp"

namespace fc::oracle {

class TermGen {
public:
  using Term = kernel::Term;
  using Ty = kernel::Ty;

  /// `prims` must include a constant of every base type that is requested.
  TermGen(std::vector<Ty> prims, std::uint64_t seed) : prims_(std::move(prims)), rng_(seed) {}

  Term gen(const Ty& ty, int depth) {
    std::vector<Ty> ctx;
    return gen(ty, ctx, depth);
  }

  Term gen(const Ty& ty, std::vector<Ty>& ctx, int depth) {
    std::vector<Term> leaves;
    for (std::size_t i = 0; i < ctx.size(); ++i)
      if (ctx[ctx.size() - 1 - i] == ty) leaves.push_back(Term::db(static_cast<std::uint32_t>(i)));
    for (std::size_t i = 0; i < prims_.size(); ++i)
      if (prims_[i] == ty) leaves.push_back(Term::prim(static_cast<std::uint32_t>(i)));

    if (depth <= 0) {
      if (!leaves.empty()) return leaves[pick(leaves.size())];
      return fallback(ty, ctx);
    }
    switch (pick(5)) {
      case 0:
        if (!leaves.empty()) return leaves[pick(leaves.size())];
        [[fallthrough]];
      case 1: return structural(ty, ctx, depth);
      case 2: {  // beta redex
        Ty arg = small_type();
        ctx.push_back(arg);
        Term body = gen(ty, ctx, depth - 1);
        ctx.pop_back();
        return Term::ap(Term::la(arg, body), gen(arg, ctx, depth - 1));
      }
      case 3: {  // application of a generated function
        Ty arg = small_type();
        Term fn = gen(Ty::func(arg, ty), ctx, depth - 1);
        return Term::ap(fn, gen(arg, ctx, depth - 1));
      }
      default: {  // eta-expanded form when possible
        if (ty.is_func()) {
          Term inner = gen(ty, ctx, depth - 1);
          ctx.push_back(ty.dom());
          Term body = Term::ap(shift_up(inner), Term::db(0));
          ctx.pop_back();
          return Term::la(ty.dom(), body);
        }
        return structural(ty, ctx, depth);
      }
    }
  }

  Ty small_type() {
    switch (pick(4)) {
      case 0: return Ty::prop();
      case 1: return Ty::func(Ty::set(), Ty::set());
      case 2: return Ty::func(Ty::set(), Ty::prop());
      default: return Ty::set();
    }
  }

  std::size_t pick(std::size_t n) { return static_cast<std::size_t>(rng_() % n); }

private:
  Term structural(const Ty& ty, std::vector<Ty>& ctx, int depth) {
    if (ty.is_func()) {
      ctx.push_back(ty.dom());
      Term body = gen(ty.cod(), ctx, depth - 1);
      ctx.pop_back();
      return Term::la(ty.dom(), body);
    }
    if (ty.is_prop()) {
      if (pick(2) == 0) return Term::imp(gen(ty, ctx, depth - 1), gen(ty, ctx, depth - 1));
      Ty b = small_type();
      ctx.push_back(b);
      Term body = gen(ty, ctx, depth - 1);
      ctx.pop_back();
      return Term::all(b, body);
    }
    return fallback(ty, ctx);
  }

  Term fallback(const Ty& ty, std::vector<Ty>& ctx) {
    if (ty.is_prop()) return Term::all(Ty::prop(), Term::db(0));
    if (ty.is_func()) {
      ctx.push_back(ty.dom());
      Term body = gen(ty.cod(), ctx, 0);
      ctx.pop_back();
      return Term::la(ty.dom(), body);
    }
    for (std::size_t i = 0; i < prims_.size(); ++i)
      if (prims_[i] == ty) return Term::prim(static_cast<std::uint32_t>(i));
    // Base type without a constant: apply a function-typed prim if present.
    for (std::size_t i = 0; i < prims_.size(); ++i)
      if (prims_[i].is_func() && prims_[i].cod() == ty)
        return Term::ap(Term::prim(static_cast<std::uint32_t>(i)), fallback(prims_[i].dom(), ctx));
    return Term::db(0);  // unreachable with the signatures used in tests
  }

  static Term shift_up(const Term& t, std::uint32_t cutoff = 0) {
    switch (t.kind()) {
      case Term::Kind::DB: return t.index() >= cutoff ? Term::db(t.index() + 1) : t;
      case Term::Kind::Ap: return Term::ap(shift_up(t.left(), cutoff), shift_up(t.right(), cutoff));
      case Term::Kind::Imp: return Term::imp(shift_up(t.left(), cutoff), shift_up(t.right(), cutoff));
      case Term::Kind::La: return Term::la(t.binder_ty(), shift_up(t.body(), cutoff + 1));
      case Term::Kind::All: return Term::all(t.binder_ty(), shift_up(t.body(), cutoff + 1));
      default: return t;
    }
  }

  std::vector<Ty> prims_;
  std::mt19937_64 rng_;
};

}  // namespace fc::oracle
