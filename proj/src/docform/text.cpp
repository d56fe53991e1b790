#include "fc/docform/text.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>

#include "fc/kernel/codec.hpp"

namespace fc::docform {

ParseError::ParseError(ParseErrorKind kind, int line, int col, const std::string& detail)
    : std::runtime_error(std::string(parse_error_name(kind)) + " at " + std::to_string(line) + ":" +
                         std::to_string(col) + ": " + detail),
      kind_(kind),
      line_(line),
      col_(col),
      detail_(detail) {}

const char* parse_error_name(ParseErrorKind kind) {
  switch (kind) {
    case ParseErrorKind::SyntaxError: return "SyntaxError";
    case ParseErrorKind::UnknownName: return "UnknownName";
    case ParseErrorKind::ArityError: return "ArityError";
  }
  return "?";
}

namespace {

const std::set<std::string, std::less<>> kKeywords = {
    "theory", "bases", "prim",   "axiom",    "param", "obj",     "prop",  "def", "thm", "conj",
    "tag",    "fun",   "all",    "assume",   "apply", "allintro", "allelim", "known", "ext", "set"};

bool is_base_type_name(std::string_view s) {
  if (s.size() < 2 || s[0] != 'b') return false;
  return std::all_of(s.begin() + 1, s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

bool reserved(std::string_view s) { return kKeywords.contains(s) || is_base_type_name(s); }

// ---------------------------------------------------------------- lexer

enum class Tok { Ident, Hex, Nat, String, LParen, RParen, Colon, Define, Arrow, FatArrow, Equals, End };

struct Token {
  Tok kind;
  std::string text;
  int line;
  int col;
};

const char* tok_name(Tok t) {
  switch (t) {
    case Tok::Ident: return "name";
    case Tok::Hex: return "#id";
    case Tok::Nat: return "number";
    case Tok::String: return "string";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::Colon: return "':'";
    case Tok::Define: return "':='";
    case Tok::Arrow: return "'->'";
    case Tok::FatArrow: return "'=>'";
    case Tok::Equals: return "'='";
    case Tok::End: return "end of input";
  }
  return "?";
}

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'' || c == '.';
}

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n && i < src.size(); ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  auto fail = [&](const std::string& msg) { throw ParseError(ParseErrorKind::SyntaxError, line, col, msg); };
  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (src.substr(i, 2) == "--") {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    Token t{Tok::End, "", line, col};
    if (ident_start(c)) {
      std::size_t j = i;
      while (j < src.size() && ident_char(src[j])) ++j;
      t.kind = Tok::Ident;
      t.text = std::string(src.substr(i, j - i));
      advance(j - i);
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      if (j - i > 9) fail("number too large");
      t.kind = Tok::Nat;
      t.text = std::string(src.substr(i, j - i));
      advance(j - i);
    } else if (c == '#') {
      std::size_t j = i + 1;
      while (j < src.size() && std::isxdigit(static_cast<unsigned char>(src[j]))) ++j;
      if (j - i - 1 != 64) fail("expected 64 hex digits after '#'");
      t.kind = Tok::Hex;
      t.text = std::string(src.substr(i + 1, 64));
      std::transform(t.text.begin(), t.text.end(), t.text.begin(),
                     [](char ch) { return static_cast<char>(std::tolower(static_cast<unsigned char>(ch))); });
      advance(j - i);
    } else if (c == '"') {
      advance(1);
      t.kind = Tok::String;
      for (;;) {
        if (i >= src.size() || src[i] == '\n') fail("unterminated string");
        char ch = src[i];
        if (ch == '"') {
          advance(1);
          break;
        }
        if (ch == '\\') {
          if (i + 1 >= src.size() || (src[i + 1] != '"' && src[i + 1] != '\\')) fail("bad escape in string");
          t.text.push_back(src[i + 1]);
          advance(2);
          continue;
        }
        t.text.push_back(ch);
        advance(1);
      }
    } else if (src.substr(i, 2) == ":=") {
      t.kind = Tok::Define;
      advance(2);
    } else if (src.substr(i, 2) == "->") {
      t.kind = Tok::Arrow;
      advance(2);
    } else if (src.substr(i, 2) == "=>") {
      t.kind = Tok::FatArrow;
      advance(2);
    } else if (c == '(' || c == ')' || c == ':' || c == '=') {
      t.kind = c == '(' ? Tok::LParen : c == ')' ? Tok::RParen : c == ':' ? Tok::Colon : Tok::Equals;
      advance(1);
    } else {
      fail(std::string("unexpected character '") + c + "'");
    }
    out.push_back(std::move(t));
  }
  out.push_back({Tok::End, "", line, col});
  return out;
}

// ---------------------------------------------------------------- parser

struct Binder {
  std::string name;
  Ty ty;
};

class Parser {
public:
  explicit Parser(std::string_view src) : toks_(lex(src)) {}

  // Names visible at item level.
  std::map<std::string, std::uint32_t, std::less<>> prims;
  std::map<std::string, Hash32, std::less<>> objects;
  std::map<std::string, Hash32, std::less<>> props;

  const Token& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
  bool at(Tok k) const { return peek().kind == k; }
  bool at_kw(std::string_view kw) const { return peek().kind == Tok::Ident && peek().text == kw; }
  const Token& next() {
    const Token& t = toks_[pos_];
    if (pos_ + 1 < toks_.size()) ++pos_;
    return t;
  }

  [[noreturn]] void fail(ParseErrorKind kind, const Token& at, const std::string& msg) const {
    throw ParseError(kind, at.line, at.col, msg);
  }
  [[noreturn]] void unexpected(const std::string& wanted) const {
    const auto& t = peek();
    std::string got = t.kind == Tok::Ident ? "'" + t.text + "'" : tok_name(t.kind);
    fail(ParseErrorKind::SyntaxError, t, "expected " + wanted + ", found " + got);
  }

  const Token& expect(Tok k) {
    if (!at(k)) unexpected(tok_name(k));
    return next();
  }
  void expect_kw(std::string_view kw) {
    if (!at_kw(kw)) unexpected("'" + std::string(kw) + "'");
    next();
  }
  std::string name() {
    if (!at(Tok::Ident) || reserved(peek().text)) unexpected("a name");
    return next().text;
  }
  std::uint32_t nat() { return static_cast<std::uint32_t>(std::stoul(expect(Tok::Nat).text)); }
  Hash32 hex() { return hash_from_hex(expect(Tok::Hex).text); }

  // types
  Ty type() {
    Ty dom = type_atom();
    if (at(Tok::Arrow)) {
      next();
      return Ty::func(dom, type());
    }
    return dom;
  }
  Ty type_atom() {
    if (at(Tok::LParen)) {
      next();
      Ty t = type();
      expect(Tok::RParen);
      return t;
    }
    if (at_kw("set")) {
      next();
      return Ty::set();
    }
    if (at_kw("prop")) {
      next();
      return Ty::prop();
    }
    if (at(Tok::Ident) && is_base_type_name(peek().text)) {
      const auto& t = next();
      auto digits = t.text.substr(1);
      if (digits.size() > 9) fail(ParseErrorKind::SyntaxError, t, "base type index too large");
      return Ty::base(static_cast<std::uint32_t>(std::stoul(digits)));
    }
    unexpected("a type");
  }

  // terms; `vars` holds the bound names, innermost last
  std::vector<std::string> vars;

  bool starts_atom() const { return at(Tok::Ident) ? !reserved(peek().text) : at(Tok::Hex) || at(Tok::LParen); }

  std::vector<Binder> binders() {
    std::vector<Binder> out;
    if (at(Tok::LParen)) {
      while (at(Tok::LParen)) {
        next();
        std::vector<std::string> names{name()};
        while (at(Tok::Ident) && !at(Tok::Colon)) names.push_back(name());
        expect(Tok::Colon);
        Ty ty = type();
        expect(Tok::RParen);
        for (auto& n : names) out.push_back({std::move(n), ty});
      }
      return out;
    }
    std::vector<std::string> names{name()};
    while (at(Tok::Ident)) names.push_back(name());
    expect(Tok::Colon);
    Ty ty = type();
    for (auto& n : names) out.push_back({std::move(n), ty});
    return out;
  }

  Term term() {
    if (at_kw("fun") || at_kw("all")) {
      bool is_fun = peek().text == "fun";
      next();
      auto bs = binders();
      expect(Tok::FatArrow);
      for (const auto& b : bs) vars.push_back(b.name);
      Term body = term();
      vars.resize(vars.size() - bs.size());
      for (auto b = bs.rbegin(); b != bs.rend(); ++b) body = is_fun ? Term::la(b->ty, body) : Term::all(b->ty, body);
      return body;
    }
    Term lhs = app();
    if (at(Tok::Arrow)) {
      next();
      return Term::imp(lhs, term());
    }
    return lhs;
  }
  Term app() {
    Term t = atom();
    while (starts_atom()) t = Term::ap(t, atom());
    return t;
  }
  Term atom() {
    if (at(Tok::LParen)) {
      next();
      Term t = term();
      expect(Tok::RParen);
      return t;
    }
    if (at(Tok::Hex)) return Term::ref(hex());
    if (!at(Tok::Ident) || reserved(peek().text)) unexpected("a term");
    const Token& tok = next();
    for (std::size_t k = vars.size(); k-- > 0;)
      if (vars[k] == tok.text) return Term::db(static_cast<std::uint32_t>(vars.size() - 1 - k));
    if (auto it = objects.find(tok.text); it != objects.end()) return Term::ref(it->second);
    if (auto it = prims.find(tok.text); it != prims.end()) return Term::prim(it->second);
    fail(ParseErrorKind::UnknownName, tok, "unknown name '" + tok.text + "'");
  }

  // proofs; `hyps` holds hypothesis names by absolute index
  std::vector<std::string> hyps;

  bool starts_patom() const {
    if (at(Tok::LParen)) return true;
    if (!at(Tok::Ident)) return false;
    return at_kw("known") || at_kw("ext") || !reserved(peek().text);
  }

  Proof proof() {
    if (at_kw("assume")) {
      next();
      bool paren = at(Tok::LParen);
      if (paren) next();
      std::string h = name();
      expect(Tok::Colon);
      Term hyp = term();
      if (paren) expect(Tok::RParen);
      expect(Tok::FatArrow);
      hyps.push_back(h);
      Proof body = proof();
      hyps.pop_back();
      return Proof::pr_la(hyp, body);
    }
    if (at_kw("allintro")) {
      next();
      auto bs = binders();
      expect(Tok::FatArrow);
      for (const auto& b : bs) vars.push_back(b.name);
      Proof body = proof();
      vars.resize(vars.size() - bs.size());
      for (auto b = bs.rbegin(); b != bs.rend(); ++b) body = Proof::tm_la(b->ty, body);
      return body;
    }
    if (at_kw("apply")) {
      const Token& kw = next();
      Proof p = patom();
      if (!starts_patom()) fail(ParseErrorKind::ArityError, kw, "'apply' needs at least one argument");
      while (starts_patom()) p = Proof::pr_ap(p, patom());
      return p;
    }
    if (at_kw("allelim")) {
      const Token& kw = next();
      Proof p = patom();
      if (!starts_atom()) fail(ParseErrorKind::ArityError, kw, "'allelim' needs at least one witness");
      while (starts_atom()) p = Proof::tm_ap(p, atom());
      return p;
    }
    return patom();
  }
  Proof patom() {
    if (at(Tok::LParen)) {
      next();
      Proof p = proof();
      expect(Tok::RParen);
      return p;
    }
    if (at_kw("known")) {
      next();
      if (at(Tok::Hex)) return Proof::known(hex());
      const Token& tok = peek();
      std::string n = name();
      auto it = props.find(n);
      if (it == props.end()) fail(ParseErrorKind::UnknownName, tok, "unknown proposition '" + n + "'");
      return Proof::known(it->second);
    }
    if (at_kw("ext")) {
      next();
      Ty dom = type_atom();
      Ty cod = type_atom();
      return Proof::ext(dom, cod);
    }
    const Token& tok = peek();
    std::string n = name();
    for (std::size_t k = hyps.size(); k-- > 0;)
      if (hyps[k] == n) return Proof::hyp(static_cast<std::uint32_t>(k));
    if (auto it = props.find(n); it != props.end()) return Proof::known(it->second);
    fail(ParseErrorKind::UnknownName, tok, "unknown hypothesis '" + n + "'");
  }

  bool done() const { return at(Tok::End); }

private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

void check_item_name(const Parser& p, const Token& tok, const std::string& name) {
  if (p.prims.contains(name)) p.fail(ParseErrorKind::SyntaxError, tok, "'" + name + "' is a primitive of the theory");
}

// Ids the kernel would assign, or a content hash when the item does not check;
// the document checker reports the latter.
Hash32 object_id(const kernel::Signature& sig, const Term& t) {
  try {
    return kernel::term_id(sig, t);
  } catch (const kernel::KernelError&) {
    return kernel::content_hash(t);
  }
}

Hash32 proposition_id(const kernel::Signature& sig, const Term& t) {
  try {
    return kernel::prop_id(sig, t);
  } catch (const kernel::KernelError&) {
    return kernel::content_hash(t);
  }
}

}  // namespace

TheorySpec parse_theory(std::string_view text) {
  Parser p(text);
  TheorySpec spec;
  p.expect_kw("theory");
  spec.name = p.name();
  if (p.at_kw("bases")) {
    p.next();
    const Token& tok = p.peek();
    spec.bases = p.nat();
    if (spec.bases == 0) p.fail(ParseErrorKind::SyntaxError, tok, "a theory needs at least one base type");
  }
  std::set<std::string> axiom_names;
  while (!p.done()) {
    if (p.at_kw("prim")) {
      p.next();
      const Token& tok = p.peek();
      auto n = p.name();
      if (p.prims.contains(n)) p.fail(ParseErrorKind::SyntaxError, tok, "duplicate primitive '" + n + "'");
      p.expect(Tok::Colon);
      Ty ty = p.type();
      p.prims.emplace(n, static_cast<std::uint32_t>(spec.prims.size()));
      spec.prims.push_back({n, ty});
    } else if (p.at_kw("axiom")) {
      p.next();
      const Token& tok = p.peek();
      auto n = p.name();
      if (!axiom_names.insert(n).second) p.fail(ParseErrorKind::SyntaxError, tok, "duplicate axiom '" + n + "'");
      p.expect(Tok::Colon);
      spec.axioms.push_back({n, p.term()});
    } else {
      p.unexpected("'prim' or 'axiom'");
    }
  }
  return spec;
}

Document parse_doc(std::string_view text, const TheoryResolver& resolver) {
  Parser p(text);
  Document doc;
  p.expect_kw("theory");
  const Token& ttok = p.peek();
  const TheorySpec* spec = nullptr;
  if (p.at(Tok::Hex)) {
    auto id = p.hex();
    spec = resolver.by_id ? resolver.by_id(id) : nullptr;
    if (!spec) p.fail(ParseErrorKind::UnknownName, ttok, "unknown theory #" + to_hex(id));
  } else {
    auto n = p.name();
    spec = resolver.by_name ? resolver.by_name(n) : nullptr;
    if (!spec) p.fail(ParseErrorKind::UnknownName, ttok, "unknown theory '" + n + "'");
  }
  kernel::Signature sig = theory_signature(*spec);
  doc.theory = theory_id(*spec);
  for (std::size_t i = 0; i < spec->prims.size(); ++i)
    p.prims.emplace(spec->prims[i].name, static_cast<std::uint32_t>(i));
  for (const auto& a : spec->axioms) p.props[a.name] = kernel::prop_id(sig, a.stmt);

  while (!p.done()) {
    if (p.at_kw("param")) {
      p.next();
      bool obj = p.at_kw("obj");
      if (!obj && !p.at_kw("prop")) p.unexpected("'obj' or 'prop'");
      p.next();
      const Token& tok = p.peek();
      ParamItem item;
      item.name = p.name();
      check_item_name(p, tok, item.name);
      if (obj) {
        p.expect(Tok::Colon);
        item.ty = p.type();
      }
      p.expect(Tok::Equals);
      item.id = p.hex();
      if (obj) {
        p.objects[item.name] = item.id;
        sig.defs.emplace(item.id, kernel::Definition{*item.ty, std::nullopt});
      } else {
        p.props[item.name] = item.id;
      }
      doc.items.emplace_back(std::move(item));
    } else if (p.at_kw("def")) {
      p.next();
      const Token& tok = p.peek();
      auto n = p.name();
      check_item_name(p, tok, n);
      p.expect(Tok::Colon);
      Ty ty = p.type();
      p.expect(Tok::Define);
      Term body = p.term();
      auto id = object_id(sig, body);
      sig.defs.emplace(id, kernel::Definition{ty, body});
      p.objects[n] = id;
      doc.items.emplace_back(DefItem{n, ty, body});
    } else if (p.at_kw("thm")) {
      p.next();
      const Token& tok = p.peek();
      auto n = p.name();
      check_item_name(p, tok, n);
      p.expect(Tok::Colon);
      Term stmt = p.term();
      p.expect(Tok::Define);
      Proof pf = p.proof();
      p.props[n] = proposition_id(sig, stmt);
      doc.items.emplace_back(ThmItem{n, stmt, pf});
    } else if (p.at_kw("conj")) {
      p.next();
      const Token& tok = p.peek();
      auto n = p.name();
      check_item_name(p, tok, n);
      p.expect(Tok::Colon);
      ConjItem c{n, p.term(), "Other"};
      if (p.at_kw("tag")) {
        p.next();
        c.tag = p.expect(Tok::String).text;
      }
      p.props[n] = proposition_id(sig, c.stmt);
      doc.items.emplace_back(std::move(c));
    } else {
      p.unexpected("'param', 'def', 'thm' or 'conj'");
    }
  }
  return doc;
}

// ---------------------------------------------------------------- printer

namespace {

std::string type_str(const Ty& t, bool atom) {
  switch (t.kind()) {
    case Ty::Kind::Prop: return "prop";
    case Ty::Kind::Base: return t.base_index() == 0 ? "set" : "b" + std::to_string(t.base_index());
    case Ty::Kind::Func: {
      auto s = type_str(t.dom(), true) + " -> " + type_str(t.cod(), false);
      return atom ? "(" + s + ")" : s;
    }
  }
  return "?";
}

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out + "\"";
}

class Printer {
public:
  explicit Printer(const TheorySpec& theory, const ExternalNames& ext) : theory_(theory), ext_(ext) {
    for (const auto& pr : theory.prims) globals_.insert(pr.name);
  }

  // Current item-level bindings, mirroring the parser.
  std::map<std::string, Hash32> objects;
  std::map<std::string, Hash32> props;

  void add_global(const std::string& n) { globals_.insert(n); }

  std::string term(const Term& t, int level = 0) {
    switch (t.kind()) {
      case Term::Kind::DB:
        if (t.index() >= vars_.size()) return "?" + std::to_string(t.index());
        return vars_[vars_.size() - 1 - t.index()];
      case Term::Kind::Prim: return theory_.prims.at(t.index()).name;
      case Term::Kind::Ref: return ref_name(t.ref_id());
      case Term::Kind::Ap: {
        std::vector<const Term*> args;
        const Term* head = &t;
        while (head->kind() == Term::Kind::Ap) {
          args.push_back(&head->right());
          head = &head->left();
        }
        std::string s = term(*head, 2);
        for (auto a = args.rbegin(); a != args.rend(); ++a) s += " " + term(**a, 2);
        return level > 1 ? "(" + s + ")" : s;
      }
      case Term::Kind::Imp: {
        auto s = term(t.left(), 1) + " -> " + term(t.right(), 0);
        return level > 0 ? "(" + s + ")" : s;
      }
      case Term::Kind::La:
      case Term::Kind::All: {
        auto kind = t.kind();
        const Term* body = &t;
        std::size_t n = 0;
        std::vector<std::pair<std::string, Ty>> bs;
        while (body->kind() == kind) {
          bs.emplace_back(push_var(body->binder_ty()), body->binder_ty());
          body = &body->body();
          ++n;
        }
        auto s = std::string(kind == Term::Kind::La ? "fun " : "all ") + binder_groups(bs) + " => " + term(*body, 0);
        vars_.resize(vars_.size() - n);
        return level > 0 ? "(" + s + ")" : s;
      }
    }
    return "?";
  }

  std::string proof(const Proof& p, int level = 0) {
    switch (p.kind()) {
      case Proof::Kind::Hyp: return "h" + std::to_string(p.index());
      case Proof::Kind::Known: return "known " + prop_name(p.known_id());
      case Proof::Kind::Ext: {
        auto s = "ext " + type_str(p.ty(), true) + " " + type_str(p.ty2(), true);
        return level > 0 ? "(" + s + ")" : s;
      }
      case Proof::Kind::PrAp:
      case Proof::Kind::TmAp: {
        auto kind = p.kind();
        std::vector<const Proof*> spine;
        const Proof* head = &p;
        while (head->kind() == kind) {
          spine.push_back(head);
          head = &head->left();
        }
        std::string s = (kind == Proof::Kind::PrAp ? "apply " : "allelim ") + proof(*head, 1);
        for (auto a = spine.rbegin(); a != spine.rend(); ++a)
          s += " " + (kind == Proof::Kind::PrAp ? proof((*a)->right(), 1) : term((*a)->term(), 2));
        return level > 0 ? "(" + s + ")" : s;
      }
      case Proof::Kind::PrLa: {
        auto h = "h" + std::to_string(nhyps_);
        auto s = "assume (" + h + " : " + term(p.term(), 0) + ") => ";
        ++nhyps_;
        s += proof(p.left(), 0);
        --nhyps_;
        return level > 0 ? "(" + s + ")" : s;
      }
      case Proof::Kind::TmLa: {
        const Proof* body = &p;
        std::size_t n = 0;
        std::vector<std::pair<std::string, Ty>> bs;
        while (body->kind() == Proof::Kind::TmLa) {
          bs.emplace_back(push_var(body->ty()), body->ty());
          body = &body->left();
          ++n;
        }
        auto s = "allintro " + binder_groups(bs) + " => " + proof(*body, 0);
        vars_.resize(vars_.size() - n);
        return level > 0 ? "(" + s + ")" : s;
      }
    }
    return "?";
  }

private:
  std::string push_var(const Ty& ty) {
    std::string stem = ty.is_prop() ? "p" : ty.is_func() ? "f" : "x";
    std::string n = stem + std::to_string(vars_.size());
    while (globals_.contains(n) || objects.contains(n) || reserved(n) ||
           std::find(vars_.begin(), vars_.end(), n) != vars_.end())
      n += "'";
    vars_.push_back(n);
    return n;
  }

  static std::string binder_groups(const std::vector<std::pair<std::string, Ty>>& bs) {
    std::string s;
    for (std::size_t i = 0; i < bs.size();) {
      std::size_t j = i;
      std::string names;
      while (j < bs.size() && bs[j].second == bs[i].second) {
        names += (j == i ? "" : " ") + bs[j].first;
        ++j;
      }
      s += (i == 0 ? "" : " ") + std::string("(") + names + " : " + type_str(bs[i].second, false) + ")";
      i = j;
    }
    return s;
  }

  bool visible(const std::string& n) const {
    return std::find(vars_.begin(), vars_.end(), n) == vars_.end() && !reserved(n) && !globals_.contains(n);
  }

  std::string ref_name(const Hash32& id) {
    for (const auto& [n, v] : objects)
      if (v == id && std::find(vars_.begin(), vars_.end(), n) == vars_.end()) return n;
    if (ext_.lookup) {
      if (const auto* n = ext_.lookup(id); n && visible(*n) && !objects.contains(*n)) return *n;
    }
    return "#" + to_hex(id);
  }

  std::string prop_name(const Hash32& id) {
    for (const auto& [n, v] : props)
      if (v == id) return n;
    if (ext_.lookup) {
      if (const auto* n = ext_.lookup(id); n && !reserved(*n) && !props.contains(*n)) return *n;
    }
    return "#" + to_hex(id);
  }

  const TheorySpec& theory_;
  const ExternalNames& ext_;
  std::set<std::string> globals_;
  std::vector<std::string> vars_;
  std::size_t nhyps_ = 0;
};

}  // namespace

std::string print_type(const Ty& t) { return type_str(t, false); }

std::string print_term(const Term& t, const TheorySpec& theory, const ExternalNames& names) {
  Printer pr(theory, names);
  return pr.term(t);
}

std::string print_theory(const TheorySpec& spec) {
  std::ostringstream os;
  os << "theory " << spec.name;
  if (spec.bases != 1) os << " bases " << spec.bases;
  os << "\n\n";
  for (const auto& p : spec.prims) os << "prim " << p.name << " : " << print_type(p.ty) << "\n";
  if (!spec.axioms.empty()) os << "\n";
  ExternalNames none;
  Printer pr(spec, none);
  for (const auto& a : spec.axioms) os << "axiom " << a.name << " : " << pr.term(a.stmt) << "\n";
  return os.str();
}

std::string print_doc(const Document& doc, const TheorySpec& theory) {
  std::ostringstream os;
  os << "theory #" << to_hex(doc.theory) << " -- " << theory.name << "\n";
  ExternalNames none;
  Printer pr(theory, none);
  kernel::Signature sig = theory_signature(theory);
  for (const auto& a : theory.axioms) pr.props[a.name] = kernel::prop_id(sig, a.stmt);
  for (const auto& item : doc.items) {
    os << "\n";
    if (const auto* p = std::get_if<ParamItem>(&item)) {
      if (p->ty) {
        os << "param obj " << p->name << " : " << print_type(*p->ty) << " = #" << to_hex(p->id) << "\n";
        pr.objects[p->name] = p->id;
        sig.defs.emplace(p->id, kernel::Definition{*p->ty, std::nullopt});
      } else {
        os << "param prop " << p->name << " = #" << to_hex(p->id) << "\n";
        pr.props[p->name] = p->id;
      }
    } else if (const auto* d = std::get_if<DefItem>(&item)) {
      os << "def " << d->name << " : " << print_type(d->ty) << " :=\n  " << pr.term(d->body) << "\n";
      auto id = object_id(sig, d->body);
      sig.defs.emplace(id, kernel::Definition{d->ty, d->body});
      pr.objects[d->name] = id;
    } else if (const auto* t = std::get_if<ThmItem>(&item)) {
      os << "thm " << t->name << " : " << pr.term(t->stmt) << " :=\n  " << pr.proof(t->proof) << "\n";
      pr.props[t->name] = proposition_id(sig, t->stmt);
    } else {
      const auto& c = std::get<ConjItem>(item);
      os << "conj " << c.name << " : " << pr.term(c.stmt);
      if (c.tag != "Other") os << " tag " << quote(c.tag);
      os << "\n";
      pr.props[c.name] = proposition_id(sig, c.stmt);
    }
  }
  return os.str();
}

}  // namespace fc::docform
