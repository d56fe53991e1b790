#pragma once

// Surface syntax for theories (.pfgt) and documents (.pfgd).
//
//   theory-file := 'theory' NAME ['bases' NAT] { 'prim' NAME ':' type | 'axiom' NAME ':' term }
//   doc-file    := 'theory' (NAME | HEX) { item }
//   item        := 'param' 'obj' NAME ':' type '=' HEX
//                | 'param' 'prop' NAME '=' HEX
//                | 'def' NAME ':' type ':=' term
//                | 'thm' NAME ':' term ':=' proof
//                | 'conj' NAME ':' term ['tag' STRING]
//   type        := tatom ['->' type]            tatom := 'set' | 'prop' | 'b'NAT | '(' type ')'
//   term        := ('fun' | 'all') binders '=>' term | app ['->' term]
//   app         := atom {atom}                  atom  := NAME | HEX | '(' term ')'
//   binders     := NAME {NAME} ':' type | { '(' NAME {NAME} ':' type ')' }
//   proof       := 'assume' hyp '=>' proof | 'allintro' binders '=>' proof
//                | 'apply' patom patom {patom} | 'allelim' patom atom {atom} | patom
//   hyp         := NAME ':' term | '(' NAME ':' term ')'
//   patom       := NAME | 'known' (NAME | HEX) | 'ext' tatom tatom | '(' proof ')'
//
// HEX is '#' followed by 64 hex digits. Comments run from '--' to end of line.

#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "fc/docform/ast.hpp"

namespace fc::docform {

enum class ParseErrorKind { SyntaxError, UnknownName, ArityError };

class ParseError : public std::runtime_error {
public:
  ParseError(ParseErrorKind kind, int line, int col, const std::string& detail);
  ParseErrorKind kind() const { return kind_; }
  int line() const { return line_; }
  int col() const { return col_; }
  const std::string& detail() const { return detail_; }

private:
  ParseErrorKind kind_;
  int line_;
  int col_;
  std::string detail_;
};

const char* parse_error_name(ParseErrorKind kind);

/// Looks up a published theory by id or by name hint; nullptr when unknown.
struct TheoryResolver {
  std::function<const TheorySpec*(const TheoryId&)> by_id;
  std::function<const TheorySpec*(std::string_view)> by_name;
};

/// Optional names for objects/propositions published outside the document,
/// used by the printer when a Ref is not introduced by a param or def.
struct ExternalNames {
  std::function<const std::string*(const Hash32&)> lookup;
};

TheorySpec parse_theory(std::string_view text);
Document parse_doc(std::string_view text, const TheoryResolver& resolver);

std::string print_theory(const TheorySpec& spec);
std::string print_doc(const Document& doc, const TheorySpec& theory);

/// Renders a single closed term using the theory's primitive names and the
/// given extra names for Refs; unknown Refs print as HEX.
std::string print_term(const Term& t, const TheorySpec& theory, const ExternalNames& names = {});
std::string print_type(const Ty& t);

}  // namespace fc::docform
