#pragma once

#include <vector>

#include "typesim/bitset.hpp"
#include "typesim/formula.hpp"
#include "typesim/structure.hpp"

namespace typesim {

// Variable assignment: asg[i] = element index for pool variable i, or -1
// for unassigned. Evaluating a term or formula whose free variables are not
// all assigned throws validation_error.
using Assignment = std::vector<int>;

int eval_term(const Structure& s, const TermPtr& t, const Assignment& asg);

// Tarskian truth. Quantifiers range over the whole domain; evaluation is
// plain recursion and serves as the reference everything faster is checked
// against.
bool evaluate(const Structure& s, const FormulaPtr& f, const Assignment& asg);

// All satisfying assignments of f over the context [y, z1, ..., z_{nvars-1}]
// as a bitmap: bit(a0 + a1*n + a2*n^2 + ...) corresponds to y=a0, z1=a1, ...
// Free variables of f must lie inside the context.
Bitset extension_table(const Structure& s, const FormulaPtr& f, int nvars);

// Context helpers shared by the engines: projections collapse variable
// `var` (pool index, must be >= 1); the result is a table over the same
// context that no longer depends on that coordinate.
Bitset project_exists(const Bitset& table, int var, int domain);
Bitset project_forall(const Bitset& table, int var, int domain);

// True iff membership is independent of the `var` coordinate.
bool cylindrical(const Bitset& table, int var, int domain);

// Removes the last coordinate of a table over `nvars` variables that is
// cylindrical in it, keeping the slice at value 0 (they all agree).
Bitset drop_last(const Bitset& table, int nvars, int domain);

// Collapses a table over [y, z1, ..., z_{k}] to its y-column (the set of a
// with (a, b, ...) in the table for some b, ...). For tables cylindrical in
// every non-y variable this is exactly the defined extension.
Bitset y_column(const Bitset& table, int domain);

}  // namespace typesim
