#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "typesim/signature.hpp"

namespace typesim {

// Variables are indices into the fixed pool y, z1, z2, ...; index 0 is the
// distinguished variable y. Terms are immutable and shared, so copying a
// formula never copies term trees.
struct Term;
using TermPtr = std::shared_ptr<const Term>;

struct Term {
  int var = -1;              // >= 0: variable index, and fn/args unused
  int fn = -1;               // >= 0: function symbol id
  std::vector<TermPtr> args; // size == arity of fn

  bool is_var() const { return var >= 0; }

  static TermPtr variable(int index);
  static TermPtr apply(int fn, std::vector<TermPtr> args);

  int depth() const;                   // variables 0, applications 1 + max over args
  std::uint32_t var_mask() const;      // bit i set iff variable i occurs
};

std::string var_name(int index);                 // 0 -> "y", i -> "z<i>"
int var_index(const std::string& name);          // inverse; -1 if not pool-shaped

// Total order used for canonical forms: variables first (by index), then
// applications by (symbol id, arguments lexicographically).
int term_cmp(const TermPtr& a, const TermPtr& b);
bool term_eq(const TermPtr& a, const TermPtr& b);

// Infix rendering for binary function symbols ("y * z1"), prefix otherwise.
std::string format_term(const TermPtr& t, const Signature& sig);

}  // namespace typesim
