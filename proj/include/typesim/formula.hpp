#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "typesim/term.hpp"

namespace typesim {

// ── AST ───────────────────────────────────────────────────────────────────
//
// One node type covers full first-order syntax so the validator can point
// at offending nodes; the conjunctive fragment is the subset with no Or and
// no Not (negation is lowered onto atoms as Neq / NegAtom at parse time
// whenever the operand is atomic).
//
// Quantifier nodes store the bound variable's pool index. Canonical
// formulas bind z1, z2, ... by nesting depth from the root; parsed input
// with other names is alpha-renamed to that scheme.

enum class FKind : std::uint8_t {
  Eq,       // lhs = rhs
  Neq,      // lhs != rhs
  Atom,     // R(args)
  NegAtom,  // ~R(args)
  Exists,   // (exists z_i) body
  Forall,   // (forall z_i) body
  And,      // children, flat, size >= 2
  Or,       // outside the conjunctive fragment
  Not,      // general negation, outside the conjunctive fragment
};

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

struct Formula {
  FKind kind;
  TermPtr lhs, rhs;                 // Eq / Neq
  int rel = -1;                     // Atom / NegAtom
  std::vector<TermPtr> args;        // Atom / NegAtom
  int var = -1;                     // Exists / Forall
  FormulaPtr body;                  // Exists / Forall / Not
  std::vector<FormulaPtr> children; // And / Or
  std::size_t pos = 0;              // source byte offset, 0 if synthesized
};

// Node builders. `conj` flattens nested Ands, sorts children canonically and
// drops structural duplicates (collapsing to the single child if one is
// left); `conj_keep_order` only flattens, preserving the written order.
FormulaPtr make_eq(TermPtr l, TermPtr r);
FormulaPtr make_neq(TermPtr l, TermPtr r);
FormulaPtr make_atom(int rel, std::vector<TermPtr> args);
FormulaPtr make_neg_atom(int rel, std::vector<TermPtr> args);
FormulaPtr make_exists(int var, FormulaPtr body);
FormulaPtr make_forall(int var, FormulaPtr body);
FormulaPtr conj(std::vector<FormulaPtr> children);
FormulaPtr conj_keep_order(std::vector<FormulaPtr> children);
FormulaPtr make_or(std::vector<FormulaPtr> children);
FormulaPtr make_not(FormulaPtr body);

// ── Derived attributes ────────────────────────────────────────────────────

int quantifier_depth(const FormulaPtr& f);
std::uint32_t free_var_mask(const FormulaPtr& f);  // bit i = variable i free
int max_conjuncts(const FormulaPtr& f);            // widest And node, 1 if none
int max_term_depth(const FormulaPtr& f);
int var_span(const FormulaPtr& f);                 // 1 + highest pool index used

// Canonical total order; literals sort before quantified formulas, And nodes
// last and graded by width. Returns <0, 0, >0.
int formula_cmp(const FormulaPtr& a, const FormulaPtr& b);
bool formula_eq(const FormulaPtr& a, const FormulaPtr& b);

// ── Conjunctive fragment ──────────────────────────────────────────────────

struct FragmentViolation {
  std::string message;
  std::size_t pos;  // source offset of the offending node
};

// Collects every node outside the conjunctive fragment (Or anywhere,
// Not on a non-atom). Empty result means the formula is conjunctive.
std::vector<FragmentViolation> validate_conjunctive(const FormulaPtr& f);

// ── Bounds ────────────────────────────────────────────────────────────────

// Enumeration bounds: quantifier depth, conjuncts per And node, term depth,
// and variable pool span (v admits y, z1, ..., z_{v-1}). kNoLimit disables
// one bound.
struct Bounds {
  static constexpr int kNoLimit = 1 << 20;
  int q = 2, c = 2, t = 1, v = 2;
  bool within(const FormulaPtr& f) const;
  std::string describe() const;  // "q=2,c=2,t=1,v=2"
};

// ── Formatting ────────────────────────────────────────────────────────────

// Canonical text: "(forall z1)(f(y) = y & R(y, z1))". Symbolic binary
// functions render infix. parse_formula(format_formula(f)) reproduces f
// node for node.
std::string format_formula(const FormulaPtr& f, const Signature& sig);

}  // namespace typesim
