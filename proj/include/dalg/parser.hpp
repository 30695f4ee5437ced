#pragma once

#include <string>
#include <vector>

#include "dalg/dynsys.hpp"

namespace dalg {

struct ParsedEquation {
    DiffPoly poly;                 // numerator of lhs - rhs
    DiffPoly cleared_denominator;  // denominator multiplied away (1 if none)
};

struct ParsedSystem {
    std::shared_ptr<DiffRing> ring;
    std::vector<ParsedEquation> equations;
    std::string target_name;
    RatExpr target;
};

// Parses a textual ADE system:
//   system := decl* equation+ target ;
//   decl := "vars" ident+ ";" | "func" ident "(" ident ("," ident)* ")" ";" ;
//   equation := expr "=" expr ";" ;  target := ident "=" expr ";" ;
// Identifiers resolve to independent variables, declared or D-inferred
// indeterminates, or (by default) parameters. '#' starts a line comment.
ParsedSystem parse_system(const std::string& text);

// Expression parsing against an existing session; used by the verify
// subcommand and by golden tests to state expected polynomials.
RatExpr parse_rat_expression(const std::shared_ptr<DiffRing>& ring, const std::string& text);

}  // namespace dalg
