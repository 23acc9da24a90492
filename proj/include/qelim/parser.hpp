// qelim :: surface syntax for successor-theory formulas
//
//   formula := 'forall' NAME '.' formula | 'exists' NAME '.' formula
//            | disj [ '->' formula ]
//   disj    := conj { '|' conj }
//   conj    := unary { '&' unary }
//   unary   := '~' unary | quantifier | 'false' | 'true' | '(' formula ')' | atom
//   atom    := term '=' term | term '!=' term
//   term    := NAME [ '+' NAT ] | NAT [ '+' NAME ]
//
// Quantifier bodies extend as far right as possible. `true` is ~false and
// `a != b` is ~(a = b).

#ifndef QELIM_PARSER_HPP_
#define QELIM_PARSER_HPP_

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qelim/successor.hpp"

namespace qelim::parser {

class ParseError : public std::runtime_error {
public:
  ParseError(std::size_t position, const std::string& message);
  std::size_t position() const { return position_; }
  const std::string& detail() const { return detail_; }

private:
  std::size_t position_;
  std::string detail_;
};

class UnboundNameError : public ParseError {
public:
  UnboundNameError(std::size_t position, std::string name);
  const std::string& name() const { return name_; }

private:
  std::string name_;
};

// Names that occur unbound in `text`, in order of first occurrence.
std::vector<std::string> free_names(std::string_view text);

// Formula of arity free_vars.size(). A free name at position i of free_vars
// becomes index (binder depth + i).
sn::Formula parse(std::string_view text, std::span<const std::string> free_vars);

// Inverse of parse: parse(pretty(f, ns), ns) == f. Bound variables are named
// x0, x1, ... skipping anything in free_names.
std::string pretty(const sn::Formula& f, std::span<const std::string> free_names);

}  // namespace qelim::parser

#endif  // QELIM_PARSER_HPP_
