#pragma once

// Canonical byte encoding of kernel values and the content identifiers
// derived from it.
//
//   Ty:     0x00 Prop | 0x01 idx Base | 0x02 dom cod Func
//   Term:   0x10 idx DB | 0x11 idx Prim | 0x12 <32 bytes> Ref | 0x13 f a Ap
//           0x14 ty body La | 0x15 a b Imp | 0x16 ty body All
//   Proof:  0x18 idx Hyp | 0x19 <32> Known | 0x1a p q PrAp | 0x1b p t TmAp
//           0x1c t p PrLa | 0x1d ty p TmLa | 0x1e ty ty Ext
//   Theory: 0x20 bases nprims prim-ty* naxioms axiom-term*
//
// Naturals are unsigned LEB128.

#include <span>

#include "fc/bytes.hpp"
#include "fc/kernel/kernel.hpp"

namespace fc::kernel {

void encode(ByteWriter& w, const Ty& t);
void encode(ByteWriter& w, const Term& t);
void encode(ByteWriter& w, const Proof& p);

Ty decode_ty(ByteReader& r);
Term decode_term(ByteReader& r);
Proof decode_proof(ByteReader& r);

Bytes serialize(const Term& t);

/// SHA-256 of the term's bytes as given; no normalisation or checking.
Hash32 content_hash(const Term& t);

/// Hash of the beta-eta normal form (Refs folded). Requires `t` closed and
/// well typed in `sig`.
ObjId term_id(const Signature& sig, const Term& t);
/// As term_id, additionally requiring type prop.
PropId prop_id(const Signature& sig, const Term& t);

/// Theory identity over base count, primitive types and axioms. Axioms are
/// checked against the primitives and hashed in normal form.
TheoryId theory_id(std::uint32_t bases, std::span<const Ty> prims, std::span<const Term> axioms);
Bytes theory_bytes(std::uint32_t bases, std::span<const Ty> prims, std::span<const Term> axioms);

}  // namespace fc::kernel
