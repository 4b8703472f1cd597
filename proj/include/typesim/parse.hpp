#pragma once

#include <string>

#include "typesim/formula.hpp"

namespace typesim {

// Parses full first-order syntax: quantifiers `(forall x)(...)` /
// `(exists x)(...)`, conjunction `&`, disjunction `|`, negation `~`,
// equality `=` / `!=`, relation atoms `R(t, ...)`, prefix terms `f(t, ...)`
// and infix terms `t * u` for symbolically named binary functions. The
// unicode spellings ∀ ∃ ∧ ∨ ¬ ≠ are accepted.
//
// Bound variables may use any name and are renamed to z1, z2, ... by
// quantifier nesting depth; free variables must be pool-named (y, z1, ...).
// Negation of an equation or relation atom is lowered onto the literal.
FormulaPtr parse_general(const std::string& text, const Signature& sig);

// parse_general + conjunctive-fragment validation; throws validation_error
// listing the offending nodes if the formula is not conjunctive.
FormulaPtr parse_formula(const std::string& text, const Signature& sig);

}  // namespace typesim
