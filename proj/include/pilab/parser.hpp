#pragma once

#include "pilab/ncpoly.hpp"

#include <memory>
#include <string>
#include <vector>

namespace pilab {

// Expression tree for the CLI polynomial syntax. Kept around (instead of
// expanding straight to NcPoly) so that downstream code can see commutator
// and product structure, e.g. for factored evaluation and the reordering op.
struct Expr {
  enum class Kind { Num, Var, Sum, Prod, Comm };
  Kind kind = Kind::Num;
  Rat value;                                     // Num
  uint32_t var = 0;                              // Var
  std::vector<std::shared_ptr<Expr>> children;   // Sum / Prod / Comm
  std::vector<Rat> weights;                      // Sum: per-child coefficient

  NcPoly to_poly() const;
};

using ExprPtr = std::shared_ptr<Expr>;

// Grammar:
//   expr    := ['-'] term (('+'|'-') term)*
//   term    := factor (['*'] factor)*
//   factor  := rational | var | '(' expr ')' | '[' expr (',' expr)+ ']'
//   var     := 'x' digits
// '[a,b,...]' is the left-normed commutator. Juxtaposition multiplies.
ExprPtr parse_expr(const std::string &text);
NcPoly parse_poly(const std::string &text);

} // namespace pilab
