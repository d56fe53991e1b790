#include "fc/kernel/codec.hpp"

#include "fc/crypto.hpp"

namespace fc::kernel {

namespace {
// Decoder recursion bound; real terms are far shallower.
constexpr int kMaxDepth = 4096;

std::uint32_t small_nat(ByteReader& r) {
  auto v = r.leb();
  if (v > 0xffffffffu) throw DecodeError("index out of range");
  return static_cast<std::uint32_t>(v);
}

Ty decode_ty_at(ByteReader& r, int depth) {
  if (depth > kMaxDepth) throw DecodeError("type nesting too deep");
  switch (r.u8()) {
    case 0x00: return Ty::prop();
    case 0x01: return Ty::base(small_nat(r));
    case 0x02: {
      Ty dom = decode_ty_at(r, depth + 1);
      Ty cod = decode_ty_at(r, depth + 1);
      return Ty::func(std::move(dom), std::move(cod));
    }
    default: throw DecodeError("bad type tag");
  }
}

Term decode_term_at(ByteReader& r, int depth) {
  if (depth > kMaxDepth) throw DecodeError("term nesting too deep");
  switch (r.u8()) {
    case 0x10: return Term::db(small_nat(r));
    case 0x11: return Term::prim(small_nat(r));
    case 0x12: return Term::ref(r.fixed<32>());
    case 0x13: {
      Term f = decode_term_at(r, depth + 1);
      Term a = decode_term_at(r, depth + 1);
      return Term::ap(std::move(f), std::move(a));
    }
    case 0x14: {
      Ty ty = decode_ty_at(r, depth + 1);
      return Term::la(std::move(ty), decode_term_at(r, depth + 1));
    }
    case 0x15: {
      Term a = decode_term_at(r, depth + 1);
      Term b = decode_term_at(r, depth + 1);
      return Term::imp(std::move(a), std::move(b));
    }
    case 0x16: {
      Ty ty = decode_ty_at(r, depth + 1);
      return Term::all(std::move(ty), decode_term_at(r, depth + 1));
    }
    default: throw DecodeError("bad term tag");
  }
}

Proof decode_proof_at(ByteReader& r, int depth) {
  if (depth > kMaxDepth) throw DecodeError("proof nesting too deep");
  switch (r.u8()) {
    case 0x18: return Proof::hyp(small_nat(r));
    case 0x19: return Proof::known(r.fixed<32>());
    case 0x1a: {
      Proof p = decode_proof_at(r, depth + 1);
      Proof q = decode_proof_at(r, depth + 1);
      return Proof::pr_ap(std::move(p), std::move(q));
    }
    case 0x1b: {
      Proof p = decode_proof_at(r, depth + 1);
      return Proof::tm_ap(std::move(p), decode_term_at(r, depth + 1));
    }
    case 0x1c: {
      Term t = decode_term_at(r, depth + 1);
      return Proof::pr_la(std::move(t), decode_proof_at(r, depth + 1));
    }
    case 0x1d: {
      Ty ty = decode_ty_at(r, depth + 1);
      return Proof::tm_la(std::move(ty), decode_proof_at(r, depth + 1));
    }
    case 0x1e: {
      Ty a = decode_ty_at(r, depth + 1);
      Ty b = decode_ty_at(r, depth + 1);
      return Proof::ext(std::move(a), std::move(b));
    }
    default: throw DecodeError("bad proof tag");
  }
}

}  // namespace

void encode(ByteWriter& w, const Ty& t) {
  switch (t.kind()) {
    case Ty::Kind::Prop: w.u8(0x00); return;
    case Ty::Kind::Base:
      w.u8(0x01);
      w.leb(t.base_index());
      return;
    case Ty::Kind::Func:
      w.u8(0x02);
      encode(w, t.dom());
      encode(w, t.cod());
      return;
  }
}

void encode(ByteWriter& w, const Term& t) {
  switch (t.kind()) {
    case Term::Kind::DB:
      w.u8(0x10);
      w.leb(t.index());
      return;
    case Term::Kind::Prim:
      w.u8(0x11);
      w.leb(t.index());
      return;
    case Term::Kind::Ref:
      w.u8(0x12);
      w.raw(t.ref_id());
      return;
    case Term::Kind::Ap:
      w.u8(0x13);
      encode(w, t.left());
      encode(w, t.right());
      return;
    case Term::Kind::La:
      w.u8(0x14);
      encode(w, t.binder_ty());
      encode(w, t.body());
      return;
    case Term::Kind::Imp:
      w.u8(0x15);
      encode(w, t.left());
      encode(w, t.right());
      return;
    case Term::Kind::All:
      w.u8(0x16);
      encode(w, t.binder_ty());
      encode(w, t.body());
      return;
  }
}

void encode(ByteWriter& w, const Proof& p) {
  switch (p.kind()) {
    case Proof::Kind::Hyp:
      w.u8(0x18);
      w.leb(p.index());
      return;
    case Proof::Kind::Known:
      w.u8(0x19);
      w.raw(p.known_id());
      return;
    case Proof::Kind::PrAp:
      w.u8(0x1a);
      encode(w, p.left());
      encode(w, p.right());
      return;
    case Proof::Kind::TmAp:
      w.u8(0x1b);
      encode(w, p.left());
      encode(w, p.term());
      return;
    case Proof::Kind::PrLa:
      w.u8(0x1c);
      encode(w, p.term());
      encode(w, p.left());
      return;
    case Proof::Kind::TmLa:
      w.u8(0x1d);
      encode(w, p.ty());
      encode(w, p.left());
      return;
    case Proof::Kind::Ext:
      w.u8(0x1e);
      encode(w, p.ty());
      encode(w, p.ty2());
      return;
  }
}

Ty decode_ty(ByteReader& r) { return decode_ty_at(r, 0); }
Term decode_term(ByteReader& r) { return decode_term_at(r, 0); }
Proof decode_proof(ByteReader& r) { return decode_proof_at(r, 0); }

Bytes serialize(const Term& t) {
  ByteWriter w;
  encode(w, t);
  return std::move(w).take();
}

Hash32 content_hash(const Term& t) { return crypto::sha256(serialize(t)); }

ObjId term_id(const Signature& sig, const Term& t) {
  if (!t.closed()) throw KernelError(ErrorCode::NotClosed, "cannot identify an open term");
  try {
    typecheck(sig, {}, t);
  } catch (const KernelError& e) {
    throw KernelError(ErrorCode::IllTyped, e.what());
  }
  return content_hash(normalize(sig, t, false));
}

PropId prop_id(const Signature& sig, const Term& t) {
  if (!t.closed()) throw KernelError(ErrorCode::NotClosed, "cannot identify an open term");
  Ty ty = [&] {
    try {
      return typecheck(sig, {}, t);
    } catch (const KernelError& e) {
      throw KernelError(ErrorCode::IllTyped, e.what());
    }
  }();
  if (!ty.is_prop()) throw KernelError(ErrorCode::IllTyped, "expected prop, found " + debug_string(ty));
  return content_hash(normalize(sig, t, false));
}

Bytes theory_bytes(std::uint32_t bases, std::span<const Ty> prims, std::span<const Term> axioms) {
  Signature sig;
  sig.bases = bases;
  sig.prims.assign(prims.begin(), prims.end());
  for (const auto& p : prims) check_ty(sig, p);
  ByteWriter w;
  w.u8(0x20);
  w.leb(bases);
  w.leb(prims.size());
  for (const auto& p : prims) encode(w, p);
  w.leb(axioms.size());
  for (const auto& a : axioms) {
    check_proposition(sig, a);
    encode(w, normalize(sig, a, false));
  }
  return std::move(w).take();
}

TheoryId theory_id(std::uint32_t bases, std::span<const Ty> prims, std::span<const Term> axioms) {
  return crypto::sha256(theory_bytes(bases, prims, axioms));
}

}  // namespace fc::kernel
