#pragma once

#include <vector>

#include "typesim/common.hpp"
#include "typesim/formula.hpp"

namespace typesim {

// All terms of depth <= t over the pool prefix [y, z1, ..., z_{nvars-1}]
// (pass nvars = 0 for variable-free terms), in canonical term order.
std::vector<TermPtr> context_terms(const Signature& sig, int nvars, int t);

// All literals over the pool prefix with term depth <= t, in canonical
// order: equations (one per unordered term pair, larger side left), their
// negations, relation atoms over every argument tuple, their negations.
std::vector<FormulaPtr> literal_formulas(const Signature& sig, int nvars, int t,
                                         const Limits& lim = {});

// Every conjunctive formula within the bounds whose free variables lie in
// {y}, in canonical order with no duplicates. Sentences count: a formula
// with no free variables at all qualifies.
//
// Equations are oriented larger-term-left, so each unordered pair of terms
// (including the reflexive ones) appears exactly once. Conjunctions take
// 2..c distinct non-And conjuncts; quantified conjuncts may nest further
// conjunctions, each And node bounded by c on its own.
//
// Purely syntactic: no structure is consulted, so the count explodes with
// the bounds. The max_formulas cap aborts with resource_limit_error.
std::vector<FormulaPtr> enumerate_formulas(const Signature& sig, const Bounds& b,
                                           const Limits& lim = {});

// All terms of depth <= t over z1, ..., zv in canonical variable numbering:
// reading the term left to right, the i-th distinct variable met is z_i.
// Used by the term-equation fragment, where y never appears inside terms.
std::vector<TermPtr> enumerate_terms(const Signature& sig, int t, int v,
                                     const Limits& lim = {});

}  // namespace typesim
