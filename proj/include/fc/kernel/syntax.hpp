#pragma once

// Types, terms and proofs of the higher-order logic. All three are immutable
// trees with shared structure; copies are cheap and values may be handed
// between threads freely.

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>

#include "fc/bytes.hpp"

namespace fc::kernel {

using ObjId = Hash32;
using PropId = Hash32;
using TheoryId = Hash32;

class Ty {
public:
  enum class Kind : std::uint8_t { Prop, Base, Func };

  static Ty prop();
  static Ty base(std::uint32_t index);
  static Ty set() { return base(0); }
  static Ty func(Ty dom, Ty cod);

  Kind kind() const;
  bool is_prop() const;
  bool is_func() const;
  std::uint32_t base_index() const;
  const Ty& dom() const;
  const Ty& cod() const;

  friend bool operator==(const Ty& a, const Ty& b);

private:
  struct Node;
  explicit Ty(std::shared_ptr<const Node> n) : n_(std::move(n)) {}
  std::shared_ptr<const Node> n_;
};

struct Ty::Node {
  Kind kind;
  std::uint32_t index = 0;
  Ty dom{nullptr};

  Ty cod{nullptr};
};

inline Ty::Kind Ty::kind() const { return n_->kind; }
inline bool Ty::is_prop() const { return n_->kind == Kind::Prop; }
inline bool Ty::is_func() const { return n_->kind == Kind::Func; }
inline std::uint32_t Ty::base_index() const { return n_->index; }
inline const Ty& Ty::dom() const { return n_->dom; }
inline const Ty& Ty::cod() const { return n_->cod; }

class Term {
public:
  enum class Kind : std::uint8_t { DB, Prim, Ref, Ap, La, Imp, All };

  static Term db(std::uint32_t index);
  static Term prim(std::uint32_t index);
  static Term ref(const ObjId& id);
  static Term ap(Term fn, Term arg);
  static Term la(Ty dom, Term body);
  static Term imp(Term antecedent, Term consequent);
  static Term all(Ty dom, Term body);

  Kind kind() const;
  std::uint32_t index() const;
  const ObjId& ref_id() const;
  const Ty& binder_ty() const;
  /// Ap: function; Imp: antecedent; La/All: body.
  const Term& left() const;
  /// Ap: argument; Imp: consequent.
  const Term& right() const;
  const Term& body() const;

  /// One past the largest de Bruijn index free in this term; 0 when closed.
  std::uint32_t loose() const;
  bool closed() const;
  std::size_t size() const;

  bool same_node(const Term& o) const { return n_ == o.n_; }
  friend bool operator==(const Term& a, const Term& b);

private:
  struct Node;
  explicit Term(std::shared_ptr<const Node> n) : n_(std::move(n)) {}
  std::shared_ptr<const Node> n_;
};

struct Term::Node {
  Kind kind;
  std::uint32_t index = 0;
  std::uint32_t loose = 0;
  std::size_t size = 1;
  ObjId ref{};

  Ty ty = Ty::prop();
  Term left{nullptr};
  Term right{nullptr};
};

inline Term::Kind Term::kind() const { return n_->kind; }
inline std::uint32_t Term::index() const { return n_->index; }
inline const ObjId& Term::ref_id() const { return n_->ref; }
inline const Ty& Term::binder_ty() const { return n_->ty; }
inline const Term& Term::left() const { return n_->left; }
inline const Term& Term::right() const { return n_->right; }
inline const Term& Term::body() const { return n_->left; }
inline std::uint32_t Term::loose() const { return n_->loose; }
inline bool Term::closed() const { return n_->loose == 0; }
inline std::size_t Term::size() const { return n_->size; }

class Proof {
public:
  enum class Kind : std::uint8_t { Hyp, Known, PrAp, TmAp, PrLa, TmLa, Ext };

  static Proof hyp(std::uint32_t index);
  static Proof known(const PropId& id);
  static Proof pr_ap(Proof fn, Proof arg);
  static Proof tm_ap(Proof fn, Term witness);
  static Proof pr_la(Term hyp, Proof body);
  static Proof tm_la(Ty dom, Proof body);
  static Proof ext(Ty dom, Ty cod);

  Kind kind() const;
  std::uint32_t index() const;
  const PropId& known_id() const;
  /// TmAp: witness; PrLa: hypothesis.
  const Term& term() const;
  /// TmLa: binder; Ext: domain.
  const Ty& ty() const;
  /// Ext: codomain.
  const Ty& ty2() const;
  /// PrAp/TmAp: function side; PrLa/TmLa: body.
  const Proof& left() const;
  /// PrAp: argument.
  const Proof& right() const;

  std::size_t size() const;
  friend bool operator==(const Proof& a, const Proof& b);

private:
  struct Node;
  explicit Proof(std::shared_ptr<const Node> n) : n_(std::move(n)) {}
  std::shared_ptr<const Node> n_;
};

struct Proof::Node {
  Kind kind;
  std::uint32_t index = 0;
  std::size_t size = 1;
  PropId id{};

  Term term = Term::db(0);
  Ty ty = Ty::prop();
  Ty ty2 = Ty::prop();
  Proof left{nullptr};
  Proof right{nullptr};
};

inline Proof::Kind Proof::kind() const { return n_->kind; }
inline std::uint32_t Proof::index() const { return n_->index; }
inline const PropId& Proof::known_id() const { return n_->id; }
inline const Term& Proof::term() const { return n_->term; }
inline const Ty& Proof::ty() const { return n_->ty; }
inline const Ty& Proof::ty2() const { return n_->ty2; }
inline const Proof& Proof::left() const { return n_->left; }
inline const Proof& Proof::right() const { return n_->right; }
inline std::size_t Proof::size() const { return n_->size; }

/// Debug rendering in constructor notation, e.g. `La(set, DB 0)`.
std::string debug_string(const Ty& t);
std::string debug_string(const Term& t);
std::string debug_string(const Proof& p);
std::ostream& operator<<(std::ostream& os, const Ty& t);
std::ostream& operator<<(std::ostream& os, const Term& t);
std::ostream& operator<<(std::ostream& os, const Proof& p);

}  // namespace fc::kernel
