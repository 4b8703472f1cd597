#pragma once

#include <optional>
#include <string>
#include <vector>

#include "typesim/common.hpp"

namespace typesim {

struct Symbol {
  std::string name;
  int arity = 0;
};

// Names that start with a non-alphanumeric, non-underscore character
// (e.g. "*", "⊙") are symbolic: binary symbolic functions print and
// parse as infix operators.
bool symbolic_name(const std::string& name);

// Finite relational signature: function symbols (arity >= 0, so constants
// are allowed) and relation symbols (arity >= 1). Equality is built in and
// never appears here. Symbol ids are indices into the declaration order,
// which fixes the canonical order used everywhere downstream.
class Signature {
 public:
  int add_function(std::string name, int arity);
  int add_relation(std::string name, int arity);

  const std::vector<Symbol>& functions() const { return funcs_; }
  const std::vector<Symbol>& relations() const { return rels_; }

  std::optional<int> function_id(const std::string& name) const;
  std::optional<int> relation_id(const std::string& name) const;
  bool has_symbol(const std::string& name) const {
    return function_id(name) || relation_id(name);
  }

  bool operator==(const Signature& o) const;

  // Short text form, e.g. "f:1,R:2" (functions first, declaration order).
  std::string describe() const;

  // Parses a comma-separated list like "f:1,R:2". Names starting with an
  // uppercase letter become relations, everything else functions; an
  // explicit "rel " / "fun " prefix overrides.
  static Signature parse_spec(const std::string& spec);

 private:
  std::vector<Symbol> funcs_, rels_;
};

}  // namespace typesim
