#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>
#include <map>
#include <random>

#include "fc/docform/check.hpp"
#include "fc/docform/corpus.hpp"
#include "fc/kernel/codec.hpp"
#include "mutate.hpp"
#include "term_gen.hpp"

using namespace fc;
using namespace fc::docform;
using kernel::ErrorCode;

namespace {

const std::filesystem::path kFixtures = FC_FIXTURE_DIR;
const std::filesystem::path kGolden = FC_GOLDEN_DIR;

const std::vector<TheorySpec>& theories() {
  static const std::vector<TheorySpec> all = {builtin_theory(), load_theory(kFixtures / "theories/minihotg.pfgt")};
  return all;
}

const TheorySpec& theory_of(const Document& d) {
  for (const auto& t : theories())
    if (theory_id(t) == d.theory) return t;
  throw std::runtime_error("unknown theory");
}

Document load_doc(const std::filesystem::path& p) { return parse_doc(read_file(p), resolver_for(theories())); }

std::vector<std::filesystem::path> proof_docs() {
  std::vector<std::filesystem::path> out;
  for (const auto& e : std::filesystem::directory_iterator(kFixtures / "docs/proofs")) out.push_back(e.path());
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::filesystem::path> all_docs() {
  auto out = proof_docs();
  out.push_back(kFixtures / "docs/category.pfgd");
  out.push_back(kFixtures / "docs/bad/wrong_statement.pfgd");
  return out;
}

ParseErrorKind parse_kind(const std::string& text) {
  try {
    parse_doc(text, resolver_for(theories()));
  } catch (const ParseError& e) {
    return e.kind();
  }
  ADD_FAILURE() << "parsed without error";
  return ParseErrorKind::SyntaxError;
}

}  // namespace

TEST(Parse, DefinitionOfIdentity) {
  auto doc = parse_doc("theory minihf\ndef idf : set -> set := fun x : set => x\n", resolver_for(theories()));
  ASSERT_EQ(doc.items.size(), 1u);
  const auto& d = std::get<DefItem>(doc.items[0]);
  EXPECT_EQ(d.name, "idf");
  EXPECT_EQ(d.ty, Ty::func(Ty::set(), Ty::set()));
  EXPECT_EQ(d.body, Term::la(Ty::set(), Term::db(0)));
  EXPECT_EQ(doc.theory, theory_id(builtin_theory()));
}

TEST(Parse, TruncatedInputFailsAtEnd) {
  std::string text = "theory minihf\ndef idf : set -> set := fun x : set =>";
  try {
    parse_doc(text, resolver_for(theories()));
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.kind(), ParseErrorKind::SyntaxError);
    EXPECT_EQ(e.line(), 2);
    EXPECT_EQ(e.col(), 39);
    EXPECT_NE(e.detail().find("end of input"), std::string::npos);
  }
}

TEST(Parse, ErrorKinds) {
  EXPECT_EQ(parse_kind("theory minihf\ndef a : set := nosuch"), ParseErrorKind::UnknownName);
  EXPECT_EQ(parse_kind("theory nosuch"), ParseErrorKind::UnknownName);
  EXPECT_EQ(parse_kind("theory minihf\nthm t : all (p : prop) => p -> p := allintro (p : prop) => assume (h : p) => apply h"),
            ParseErrorKind::ArityError);
  EXPECT_EQ(parse_kind("theory minihf\nthm t : all (p : prop) => p := allelim (known empty_ax)"),
            ParseErrorKind::ArityError);
  EXPECT_EQ(parse_kind("theory minihf\ndef mem : set := empty"), ParseErrorKind::SyntaxError);
  EXPECT_EQ(parse_kind("theory minihf\nconj c : mem empty empty tag \"open"), ParseErrorKind::SyntaxError);
  EXPECT_EQ(parse_kind("theory minihf\nparam prop p = #abc"), ParseErrorKind::SyntaxError);
}

TEST(Parse, BindersAndPrecedence) {
  auto doc = parse_doc(
      "theory minihf\n"
      "conj c : all (x y : set) (q : set -> prop) => q x -> mem x y -> q y\n"
      "conj d : all x y : set => (mem x y -> mem y x) -> mem (adjoin x y) empty\n",
      resolver_for(theories()));
  using T = Term;
  auto mem = [](T a, T b) { return T::ap(T::ap(T::prim(0), a), b); };
  auto c = std::get<ConjItem>(doc.items[0]).stmt;
  EXPECT_EQ(c, T::all(Ty::set(), T::all(Ty::set(), T::all(Ty::func(Ty::set(), Ty::prop()),
                                                           T::imp(T::ap(T::db(0), T::db(2)),
                                                                  T::imp(mem(T::db(2), T::db(1)),
                                                                         T::ap(T::db(0), T::db(1))))))));
  auto d = std::get<ConjItem>(doc.items[1]).stmt;
  EXPECT_EQ(d, T::all(Ty::set(), T::all(Ty::set(), T::imp(T::imp(mem(T::db(1), T::db(0)), mem(T::db(0), T::db(1))),
                                                            mem(T::ap(T::ap(T::prim(2), T::db(1)), T::db(0)),
                                                                T::prim(1))))));
}

TEST(Theory, MiniHotgFixture) {
  const auto& hotg = theories()[1];
  EXPECT_EQ(hotg.name, "minihotg");
  EXPECT_EQ(hotg.prims.size(), 15u);
  EXPECT_EQ(hotg.axioms.size(), 4u);
  auto sig = theory_signature(hotg);
  EXPECT_EQ(sig.axioms.size(), 4u);
}

TEST(Theory, BuiltinMatchesFixtureFile) {
  EXPECT_EQ(builtin_theory(), load_theory(kFixtures / "theories/minihf.pfgt"));
  EXPECT_EQ(builtin_theory().prims.size(), 3u);
  EXPECT_EQ(builtin_theory().axioms.size(), 5u);
}

TEST(Category, AllItemsTypecheck) {
  auto doc = load_doc(kFixtures / "docs/category.pfgd");
  auto sig = theory_signature(theories()[1]);
  auto effect = check_doc(sig, doc);
  EXPECT_EQ(effect.defs.size(), 18u);
  EXPECT_EQ(effect.thms.size(), 0u);
  ASSERT_EQ(effect.conjs.size(), 9u);
  for (const auto& item : doc.items) {
    if (const auto* d = std::get_if<DefItem>(&item)) {
      EXPECT_TRUE(d->body.closed());
    } else if (const auto* c = std::get_if<ConjItem>(&item)) {
      EXPECT_TRUE(c->stmt.closed());
      EXPECT_FALSE(c->tag.empty());
    }
  }
  std::map<std::string, std::string> tags;
  for (const auto& c : effect.conjs) tags[c.name] = c.tag;
  EXPECT_EQ(tags["MetaCat_sets"], "CatSet");
  EXPECT_EQ(tags["IrrPartOrd_left_adjoint_forgetful"], "CatStruct");
  // eps has the same body as struct_id and so the same identity.
  std::map<std::string, NewDef> defs;
  for (const auto& d : effect.defs) defs.emplace(d.name, d);
  EXPECT_EQ(defs.at("eps").id, defs.at("struct_id").id);
  EXPECT_FALSE(defs.at("eps").fresh);
  EXPECT_TRUE(defs.at("eta").fresh);
}

TEST(Category, WitnessDefinitions) {
  auto doc = load_doc(kFixtures / "docs/category.pfgd");
  auto sig = theory_signature(theories()[1]);
  apply_effect(sig, check_doc(sig, doc));
  std::map<std::string, DefItem> defs;
  for (const auto& item : doc.items)
    if (const auto* d = std::get_if<DefItem>(&item)) defs.emplace(d->name, *d);
  auto s2s = Ty::func(Ty::set(), Ty::set());
  EXPECT_EQ(kernel::typecheck(sig, {}, defs.at("F0").body), s2s);
  EXPECT_EQ(kernel::typecheck(sig, {}, defs.at("F1").body),
            Ty::func(Ty::set(), Ty::func(Ty::set(), Ty::func(Ty::set(), Ty::set()))));
  EXPECT_EQ(kernel::typecheck(sig, {}, defs.at("eta").body), s2s);
  EXPECT_EQ(kernel::typecheck(sig, {}, defs.at("eps").body), s2s);
  // F0 X unfolds to pack_r X applied to the everywhere-false relation.
  auto f0 = kernel::normalize(sig, defs.at("F0").body, true);
  ASSERT_EQ(f0.kind(), Term::Kind::La);
  auto rel = f0.body().right();
  EXPECT_EQ(rel, Term::la(Ty::set(), Term::la(Ty::set(), Term::all(Ty::prop(), Term::db(0)))));
}

TEST(RoundTrip, Fixtures) {
  for (const auto& t : theories()) {
    auto text = print_theory(t);
    EXPECT_EQ(parse_theory(text), t) << text;
  }
  for (const auto& p : all_docs()) {
    auto doc = load_doc(p);
    auto text = print_doc(doc, theory_of(doc));
    auto again = parse_doc(text, resolver_for(theories()));
    EXPECT_EQ(again, doc) << p << "\n" << text;
    EXPECT_EQ(print_doc(again, theory_of(again)), text);
  }
}

namespace {

class RandomDoc {
public:
  explicit RandomDoc(std::uint64_t seed) : gen_(builtin_theory_signature().prims, seed), rng_(seed * 7 + 1) {}

  Document make() {
    Document d;
    d.theory = theory_id(builtin_theory());
    std::size_t n = 1 + pick(5);
    for (std::size_t i = 0; i < n; ++i) {
      std::string name = "n" + std::to_string(i);
      switch (pick(5)) {
        case 0: {
          Ty ty = gen_.small_type();
          d.items.emplace_back(DefItem{name, ty, gen_.gen(ty, 3)});
          break;
        }
        case 1: d.items.emplace_back(ThmItem{name, gen_.gen(Ty::prop(), 3), proof(3)}); break;
        case 2: {
          static const char* tags[] = {"Other", "CatSet", "with \"quotes\"", "back\\slash", "x y"};
          d.items.emplace_back(ConjItem{name, gen_.gen(Ty::prop(), 3), tags[pick(5)]});
          break;
        }
        case 3: d.items.emplace_back(ParamItem{name, hash(), gen_.small_type()}); break;
        default: d.items.emplace_back(ParamItem{name, hash(), std::nullopt}); break;
      }
    }
    return d;
  }

private:
  static const kernel::Signature& builtin_theory_signature() {
    static const auto sig = theory_signature(builtin_theory());
    return sig;
  }

  Proof proof(int depth) {
    std::size_t choice = depth <= 0 ? pick(3) : pick(8);
    switch (choice) {
      case 0:
        if (nhyps_ > 0) return Proof::hyp(static_cast<std::uint32_t>(pick(nhyps_)));
        [[fallthrough]];
      case 1: return Proof::known(hash());
      case 2: return Proof::ext(gen_.small_type(), gen_.small_type());
      case 3: return Proof::pr_ap(proof(depth - 1), proof(depth - 1));
      case 4: return Proof::tm_ap(proof(depth - 1), gen_.gen(gen_.small_type(), ctx_, 2));
      case 5: {
        Term h = gen_.gen(Ty::prop(), ctx_, 2);
        ++nhyps_;
        Proof body = proof(depth - 1);
        --nhyps_;
        return Proof::pr_la(h, body);
      }
      default: {
        Ty ty = gen_.small_type();
        ctx_.push_back(ty);
        Proof body = proof(depth - 1);
        ctx_.pop_back();
        return Proof::tm_la(ty, body);
      }
    }
  }

  Hash32 hash() {
    Hash32 h{};
    for (auto& b : h) b = static_cast<std::uint8_t>(rng_());
    return h;
  }

  std::size_t pick(std::size_t n) { return static_cast<std::size_t>(rng_() % n); }

  oracle::TermGen gen_;
  std::mt19937_64 rng_;
  std::vector<Ty> ctx_;
  std::size_t nhyps_ = 0;
};

}  // namespace

TEST(RoundTrip, RandomDocuments) {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    auto doc = RandomDoc(seed).make();
    auto text = print_doc(doc, builtin_theory());
    Document again;
    ASSERT_NO_THROW(again = parse_doc(text, resolver_for(theories()))) << text;
    ASSERT_EQ(again, doc) << "seed " << seed << "\n" << text;
  }
}

TEST(RoundTrip, Serialization) {
  for (const auto& p : all_docs()) {
    auto doc = load_doc(p);
    auto bytes = serialize(doc);
    ByteReader r(bytes);
    auto back = decode_document(r);
    r.expect_done();
    EXPECT_EQ(back, doc);
    EXPECT_EQ(doc_id(back), doc_id(doc));
  }
  for (const auto& t : theories()) {
    auto bytes = serialize(t);
    ByteReader r(bytes);
    EXPECT_EQ(decode_theory(r), t);
  }
}

TEST(Serialization, RejectsTruncation) {
  auto bytes = serialize(load_doc(kFixtures / "docs/proofs/and.pfgd"));
  for (std::size_t cut = 0; cut < bytes.size(); cut += 7) {
    Bytes part(bytes.begin(), bytes.begin() + static_cast<long>(cut));
    ByteReader r(part);
    EXPECT_THROW(decode_document(r), DecodeError);
  }
}

TEST(ProofCorpus, EveryTheoremChecks) {
  auto sig = theory_signature(builtin_theory());
  std::size_t docs = 0, thms = 0;
  std::ostringstream record;
  for (const auto& p : proof_docs()) {
    auto doc = load_doc(p);
    auto effect = check_doc(sig, doc);
    ++docs;
    for (const auto& t : effect.thms) {
      ++thms;
      const auto& item = std::get<ThmItem>(doc.items[t.item]);
      EXPECT_EQ(t.stmt, kernel::normalize(sig, item.stmt, false));
      record << p.filename().string() << " " << t.name << " " << to_hex(t.id) << "\n";
    }
  }
  EXPECT_GE(docs, 15u);
  EXPECT_GE(thms, 20u);
  auto golden_path = kGolden / "proof_corpus.txt";
  if (std::getenv("FC_REGEN_GOLDEN")) std::ofstream(golden_path) << record.str();
  EXPECT_EQ(record.str(), read_file(golden_path));
}

TEST(ProofCorpus, MutationsAreRejectedOrHarmless) {
  auto base = theory_signature(builtin_theory());
  std::size_t rejected = 0, total = 0;
  for (const auto& p : proof_docs()) {
    auto doc = load_doc(p);
    auto sig = base;
    for (std::size_t i = 0; i < doc.items.size(); ++i) {
      const auto* thm = std::get_if<ThmItem>(&doc.items[i]);
      if (thm) {
        auto stated = kernel::normalize(sig, thm->stmt, false);
        oracle::ProofMutator mut(sig, i * 1000003 + std::hash<std::string>{}(p.filename().string()));
        for (int k = 0; k < 200; ++k) {
          auto bad = mut.mutate(thm->proof);
          ++total;
          try {
            auto got = kernel::check_theorem(sig, thm->stmt, bad);
            EXPECT_EQ(got, stated) << p;
            EXPECT_TRUE(kernel::conv(sig, kernel::check_proof(sig, {}, bad), stated));
          } catch (const kernel::KernelError&) {
            ++rejected;
          }
        }
      }
      Document prefix{doc.theory, {doc.items[i]}};
      apply_effect(sig, check_doc(sig, prefix));
    }
  }
  EXPECT_GT(rejected, total * 3 / 4);
}

TEST(CheckDoc, ConvFailureAtItem) {
  auto doc = load_doc(kFixtures / "docs/bad/wrong_statement.pfgd");
  auto sig = theory_signature(builtin_theory());
  try {
    check_doc(sig, doc);
    FAIL();
  } catch (const DocError& e) {
    EXPECT_EQ(e.item(), 0u);
    EXPECT_EQ(e.name(), "wrong_conclusion");
    EXPECT_EQ(e.code(), ErrorCode::ConvFailure);
  }
  auto report = check_doc_report(sig, doc);
  ASSERT_EQ(report.size(), 1u);
  EXPECT_EQ(report[0].status, "error");
  EXPECT_EQ(report[0].error, "ConvFailure");
}

TEST(CheckDoc, ReportSkipsAfterFailure) {
  auto sig = theory_signature(builtin_theory());
  auto doc = parse_doc(
      "theory minihf\n"
      "thm a : all (p : prop) => p -> p := allintro (p : prop) => assume (h : p) => h\n"
      "thm b : all (p q : prop) => p -> q -> q := allintro (p q : prop) => assume (x : p) => assume (y : q) => x\n"
      "conj c : mem empty empty\n",
      resolver_for(theories()));
  auto report = check_doc_report(sig, doc);
  ASSERT_EQ(report.size(), 3u);
  EXPECT_EQ(report[0].status, "ok");
  EXPECT_EQ(report[1].status, "error");
  EXPECT_EQ(report[2].status, "skipped");
  EXPECT_EQ(report[2].kind, "conj");
}

TEST(CheckDoc, OrderSensitive) {
  EXPECT_EQ(parse_kind(read_file(kFixtures / "docs/bad/use_before_def.pfgd")), ParseErrorKind::UnknownName);
  // The same at the AST level: a Ref to a definition that comes later.
  auto good = load_doc(kFixtures / "docs/proofs/eq.pfgd");
  auto sig = theory_signature(builtin_theory());
  EXPECT_NO_THROW(check_doc(sig, good));
  auto swapped = good;
  std::swap(swapped.items[0], swapped.items[1]);
  try {
    check_doc(sig, swapped);
    FAIL();
  } catch (const DocError& e) {
    EXPECT_EQ(e.item(), 0u);
    EXPECT_EQ(e.code(), ErrorCode::UnknownRef);
  }
}

TEST(CheckDoc, Params) {
  auto sig = theory_signature(builtin_theory());
  auto first = load_doc(kFixtures / "docs/proofs/eq.pfgd");
  auto effect = check_doc(sig, first);
  apply_effect(sig, effect);
  const auto& eq_def = effect.defs.at(0);
  const auto& refl = effect.thms.at(0);
  auto text = "theory minihf\nparam obj eq : set -> set -> prop = #" + to_hex(eq_def.id) +
              "\nparam prop eq_refl = #" + to_hex(refl.id) +
              "\nthm refl_empty : eq empty empty := allelim (known eq_refl) empty\n";
  auto doc = parse_doc(text, resolver_for(theories()));
  auto e2 = check_doc(sig, doc);
  ASSERT_EQ(e2.thms.size(), 1u);
  EXPECT_TRUE(e2.thms[0].fresh);
  EXPECT_EQ(e2.thms[0].deps.size(), 2u);

  auto fresh_sig = theory_signature(builtin_theory());
  try {
    check_doc(fresh_sig, doc);
    FAIL();
  } catch (const DocError& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnknownRef);
  }
  auto wrong_ty = parse_doc("theory minihf\nparam obj eq : set -> prop = #" + to_hex(eq_def.id) + "\n",
                            resolver_for(theories()));
  try {
    check_doc(sig, wrong_ty);
    FAIL();
  } catch (const DocError& e) {
    EXPECT_EQ(e.code(), ErrorCode::TypeMismatch);
  }
  auto unknown_prop = parse_doc("theory minihf\nparam prop x = #" + std::string(64, '7') + "\n", resolver_for(theories()));
  try {
    check_doc(sig, unknown_prop);
    FAIL();
  } catch (const DocError& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnknownKnown);
  }
}

TEST(CheckDoc, DuplicateTheoremIsNotFresh) {
  auto sig = theory_signature(builtin_theory());
  auto doc = load_doc(kFixtures / "docs/proofs/identity.pfgd");
  apply_effect(sig, check_doc(sig, doc));
  auto again = check_doc(sig, doc);
  ASSERT_EQ(again.thms.size(), 1u);
  EXPECT_FALSE(again.thms[0].fresh);
}

TEST(CheckDoc, Refutation) {
  auto sig = theory_signature(builtin_theory());
  auto effect = check_doc(sig, load_doc(kFixtures / "docs/proofs/refute.pfgd"));
  ASSERT_EQ(effect.thms.size(), 1u);
  auto mem_ee = Term::ap(Term::ap(Term::prim(0), Term::prim(1)), Term::prim(1));
  ASSERT_TRUE(effect.thms[0].refutes.has_value());
  EXPECT_EQ(*effect.thms[0].refutes, kernel::prop_id(sig, mem_ee));
  auto id_effect = check_doc(sig, load_doc(kFixtures / "docs/proofs/identity.pfgd"));
  EXPECT_FALSE(id_effect.thms[0].refutes.has_value());
}

TEST(CheckDoc, AlphaInvariantIds) {
  auto a = parse_doc("theory minihf\nconj c : all (x y : set) => mem x y -> mem x (adjoin x y)\n", resolver_for(theories()));
  auto b = parse_doc("theory minihf\nconj d : all (u : set) (v : set) => mem u v -> mem u (adjoin u v) tag \"AbstrHF\"\n",
                     resolver_for(theories()));
  auto sig = theory_signature(builtin_theory());
  EXPECT_EQ(check_doc(sig, a).conjs[0].id, check_doc(sig, b).conjs[0].id);
}

TEST(CheckDoc, Deps) {
  auto doc = load_doc(kFixtures / "docs/proofs/notnot.pfgd");
  auto sig = theory_signature(builtin_theory());
  auto effect = check_doc(sig, doc);
  ASSERT_EQ(effect.defs.size(), 2u);
  EXPECT_TRUE(effect.defs[0].deps.empty());
  EXPECT_EQ(effect.defs[1].deps, std::vector<Hash32>{effect.defs[0].id});
  EXPECT_EQ(effect.thms[0].deps, std::vector<Hash32>{effect.defs[1].id});
}
