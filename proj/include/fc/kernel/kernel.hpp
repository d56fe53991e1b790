#pragma once

#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "fc/kernel/syntax.hpp"

namespace fc::kernel {

enum class ErrorCode {
  UnboundVariable,
  UnknownRef,
  UnknownPrim,
  BadBaseType,
  TypeMismatch,
  BadHyp,
  UnknownKnown,
  NotAnImplication,
  NotAForall,
  ConvFailure,
  IllTypedWitness,
  NotClosed,
  IllTyped,
};

const char* error_name(ErrorCode code);

class KernelError : public std::runtime_error {
public:
  KernelError(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(error_name(code)) + ": " + detail), code_(code) {}
  ErrorCode code() const { return code_; }

private:
  ErrorCode code_;
};

struct Definition {
  Ty ty;
  /// Absent for opaque imports; an opaque Ref never unfolds.
  std::optional<Term> body;
  friend bool operator==(const Definition&, const Definition&) = default;
};

/// Everything a term or proof may refer to inside one theory.
struct Signature {
  std::uint32_t bases = 1;
  std::vector<Ty> prims;
  std::map<PropId, Term> axioms;
  std::map<ObjId, Definition> defs;
  std::map<PropId, Term> thms;

  /// Statement of an axiom or theorem, or nullptr.
  const Term* known(const PropId& id) const;
  friend bool operator==(const Signature&, const Signature&) = default;
};

/// Typing context; the last entry is the type of DB 0.
using Context = std::vector<Ty>;

void check_ty(const Signature& sig, const Ty& ty);
Ty typecheck(const Signature& sig, const Context& ctx, const Term& t);
/// Throws unless `t` is a closed proposition.
void check_proposition(const Signature& sig, const Term& t);

/// Adds `d` to every DB index >= cutoff.
Term shift(const Term& t, std::int64_t d, std::uint32_t cutoff = 0);
/// Replaces DB 0 in `body` by `arg` and lowers the other free indices by one.
Term instantiate(const Term& body, const Term& arg);

/// Beta-eta normal form. With `unfold`, Ref constants with a body are
/// replaced by their (normalised) definitions first.
Term normalize(const Signature& sig, const Term& t, bool unfold);
bool conv(const Signature& sig, const Term& a, const Term& b);

/// Unfolds transparent definitions in head position of a normal term until
/// the head is rigid; arguments stay folded.
Term unfold_head(const Signature& sig, const Term& t);

/// Leibniz equality at type `ty`: all p : ty -> prop. p a -> p b.
Term leibniz_eq(const Ty& ty, const Term& a, const Term& b);
/// The functional-extensionality instance proved by Proof::ext(dom, cod).
Term ext_prop(const Ty& dom, const Ty& cod);

/// Returns the proposition proved by `p`, in beta-eta normal form.
/// `hyps` are closed propositions; Hyp i names hyps[i].
Term check_proof(const Signature& sig, std::span<const Term> hyps, const Proof& p);

/// Checks that `proof` proves `statement` up to conversion; returns the
/// statement's normal form.
Term check_theorem(const Signature& sig, const Term& statement, const Proof& proof);

}  // namespace fc::kernel
