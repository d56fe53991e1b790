#include "fc/kernel/syntax.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

namespace fc::kernel {

Ty Ty::prop() {
  static const Ty p(std::make_shared<const Node>(Node{Kind::Prop}));
  return p;
}

Ty Ty::base(std::uint32_t index) {
  if (index == 0) {
    static const Ty s(std::make_shared<const Node>(Node{Kind::Base, 0}));
    return s;
  }
  return Ty(std::make_shared<const Node>(Node{Kind::Base, index}));
}

Ty Ty::func(Ty dom, Ty cod) {
  return Ty(std::make_shared<const Node>(Node{Kind::Func, 0, std::move(dom), std::move(cod)}));
}

bool operator==(const Ty& a, const Ty& b) {
  if (a.n_ == b.n_) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Ty::Kind::Prop: return true;
    case Ty::Kind::Base: return a.base_index() == b.base_index();
    case Ty::Kind::Func: return a.dom() == b.dom() && a.cod() == b.cod();
  }
  return false;
}

namespace {
std::uint32_t under_binder(std::uint32_t loose) { return loose == 0 ? 0 : loose - 1; }
}  // namespace

Term Term::db(std::uint32_t index) {
  Node n{Kind::DB};
  n.index = index;
  n.loose = index + 1;
  return Term(std::make_shared<const Node>(std::move(n)));
}

Term Term::prim(std::uint32_t index) {
  Node n{Kind::Prim};
  n.index = index;
  return Term(std::make_shared<const Node>(std::move(n)));
}

Term Term::ref(const ObjId& id) {
  Node n{Kind::Ref};
  n.ref = id;
  return Term(std::make_shared<const Node>(std::move(n)));
}

Term Term::ap(Term fn, Term arg) {
  Node n{Kind::Ap};
  n.loose = std::max(fn.loose(), arg.loose());
  n.size = 1 + fn.size() + arg.size();
  n.left = std::move(fn);
  n.right = std::move(arg);
  return Term(std::make_shared<const Node>(std::move(n)));
}

Term Term::la(Ty dom, Term body) {
  Node n{Kind::La};
  n.loose = under_binder(body.loose());
  n.size = 1 + body.size();
  n.ty = std::move(dom);
  n.left = std::move(body);
  return Term(std::make_shared<const Node>(std::move(n)));
}

Term Term::imp(Term antecedent, Term consequent) {
  Node n{Kind::Imp};
  n.loose = std::max(antecedent.loose(), consequent.loose());
  n.size = 1 + antecedent.size() + consequent.size();
  n.left = std::move(antecedent);
  n.right = std::move(consequent);
  return Term(std::make_shared<const Node>(std::move(n)));
}

Term Term::all(Ty dom, Term body) {
  Node n{Kind::All};
  n.loose = under_binder(body.loose());
  n.size = 1 + body.size();
  n.ty = std::move(dom);
  n.left = std::move(body);
  return Term(std::make_shared<const Node>(std::move(n)));
}

bool operator==(const Term& a, const Term& b) {
  if (a.n_ == b.n_) return true;
  if (a.kind() != b.kind() || a.size() != b.size() || a.loose() != b.loose()) return false;
  switch (a.kind()) {
    case Term::Kind::DB:
    case Term::Kind::Prim: return a.index() == b.index();
    case Term::Kind::Ref: return a.ref_id() == b.ref_id();
    case Term::Kind::Ap:
    case Term::Kind::Imp: return a.left() == b.left() && a.right() == b.right();
    case Term::Kind::La:
    case Term::Kind::All: return a.binder_ty() == b.binder_ty() && a.body() == b.body();
  }
  return false;
}

Proof Proof::hyp(std::uint32_t index) {
  Node n{Kind::Hyp};
  n.index = index;
  return Proof(std::make_shared<const Node>(std::move(n)));
}

Proof Proof::known(const PropId& id) {
  Node n{Kind::Known};
  n.id = id;
  return Proof(std::make_shared<const Node>(std::move(n)));
}

Proof Proof::pr_ap(Proof fn, Proof arg) {
  Node n{Kind::PrAp};
  n.size = 1 + fn.size() + arg.size();
  n.left = std::move(fn);
  n.right = std::move(arg);
  return Proof(std::make_shared<const Node>(std::move(n)));
}

Proof Proof::tm_ap(Proof fn, Term witness) {
  Node n{Kind::TmAp};
  n.size = 1 + fn.size();
  n.left = std::move(fn);
  n.term = std::move(witness);
  return Proof(std::make_shared<const Node>(std::move(n)));
}

Proof Proof::pr_la(Term hyp, Proof body) {
  Node n{Kind::PrLa};
  n.size = 1 + body.size();
  n.term = std::move(hyp);
  n.left = std::move(body);
  return Proof(std::make_shared<const Node>(std::move(n)));
}

Proof Proof::tm_la(Ty dom, Proof body) {
  Node n{Kind::TmLa};
  n.size = 1 + body.size();
  n.ty = std::move(dom);
  n.left = std::move(body);
  return Proof(std::make_shared<const Node>(std::move(n)));
}

Proof Proof::ext(Ty dom, Ty cod) {
  Node n{Kind::Ext};
  n.ty = std::move(dom);
  n.ty2 = std::move(cod);
  return Proof(std::make_shared<const Node>(std::move(n)));
}

bool operator==(const Proof& a, const Proof& b) {
  if (a.n_ == b.n_) return true;
  if (a.kind() != b.kind() || a.size() != b.size()) return false;
  switch (a.kind()) {
    case Proof::Kind::Hyp: return a.index() == b.index();
    case Proof::Kind::Known: return a.known_id() == b.known_id();
    case Proof::Kind::PrAp: return a.left() == b.left() && a.right() == b.right();
    case Proof::Kind::TmAp: return a.left() == b.left() && a.term() == b.term();
    case Proof::Kind::PrLa: return a.term() == b.term() && a.left() == b.left();
    case Proof::Kind::TmLa: return a.ty() == b.ty() && a.left() == b.left();
    case Proof::Kind::Ext: return a.ty() == b.ty() && a.ty2() == b.ty2();
  }
  return false;
}

namespace {

void render(std::ostream& os, const Ty& t) {
  switch (t.kind()) {
    case Ty::Kind::Prop: os << "prop"; break;
    case Ty::Kind::Base:
      if (t.base_index() == 0)
        os << "set";
      else
        os << "b" << t.base_index();
      break;
    case Ty::Kind::Func:
      os << "(";
      render(os, t.dom());
      os << " -> ";
      render(os, t.cod());
      os << ")";
      break;
  }
}

void render(std::ostream& os, const Term& t) {
  switch (t.kind()) {
    case Term::Kind::DB: os << "DB " << t.index(); break;
    case Term::Kind::Prim: os << "Prim " << t.index(); break;
    case Term::Kind::Ref: os << "Ref " << to_hex(t.ref_id()).substr(0, 12); break;
    case Term::Kind::Ap:
      os << "Ap(";
      render(os, t.left());
      os << ", ";
      render(os, t.right());
      os << ")";
      break;
    case Term::Kind::Imp:
      os << "Imp(";
      render(os, t.left());
      os << ", ";
      render(os, t.right());
      os << ")";
      break;
    case Term::Kind::La:
    case Term::Kind::All:
      os << (t.kind() == Term::Kind::La ? "La(" : "All(");
      render(os, t.binder_ty());
      os << ", ";
      render(os, t.body());
      os << ")";
      break;
  }
}

void render(std::ostream& os, const Proof& p) {
  switch (p.kind()) {
    case Proof::Kind::Hyp: os << "Hyp " << p.index(); break;
    case Proof::Kind::Known: os << "Known " << to_hex(p.known_id()).substr(0, 12); break;
    case Proof::Kind::PrAp:
      os << "PrAp(";
      render(os, p.left());
      os << ", ";
      render(os, p.right());
      os << ")";
      break;
    case Proof::Kind::TmAp:
      os << "TmAp(";
      render(os, p.left());
      os << ", ";
      render(os, p.term());
      os << ")";
      break;
    case Proof::Kind::PrLa:
      os << "PrLa(";
      render(os, p.term());
      os << ", ";
      render(os, p.left());
      os << ")";
      break;
    case Proof::Kind::TmLa:
      os << "TmLa(";
      render(os, p.ty());
      os << ", ";
      render(os, p.left());
      os << ")";
      break;
    case Proof::Kind::Ext:
      os << "Ext(";
      render(os, p.ty());
      os << ", ";
      render(os, p.ty2());
      os << ")";
      break;
  }
}

template <class T>
std::string to_debug(const T& v) {
  std::ostringstream os;
  render(os, v);
  return os.str();
}

}  // namespace

std::string debug_string(const Ty& t) { return to_debug(t); }
std::string debug_string(const Term& t) { return to_debug(t); }
std::string debug_string(const Proof& p) { return to_debug(p); }
std::ostream& operator<<(std::ostream& os, const Ty& t) { render(os, t); return os; }
std::ostream& operator<<(std::ostream& os, const Term& t) { render(os, t); return os; }
std::ostream& operator<<(std::ostream& os, const Proof& p) { render(os, p); return os; }

}  // namespace fc::kernel
