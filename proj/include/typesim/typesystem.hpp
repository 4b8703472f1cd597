#pragma once

#include <string>
#include <vector>

#include "typesim/enumerate.hpp"
#include "typesim/eval.hpp"
#include "typesim/structure.hpp"

namespace typesim {

// A semantic class of formulas over a structure pair: all bounded
// conjunctive formulas phi(y) whose defined sets on the two structures are
// exactly (left, right). The witness is one such formula; for the
// enumeration engine it is the canonically least one.
struct TypeClass {
  Bitset left, right;
  FormulaPtr witness;
};

enum class Engine { Enum, Closure };
const char* engine_name(Engine e);

struct EngineOptions {
  Engine engine = Engine::Enum;
  bool parallel = true;  // use OpenMP when available; results are identical
  Limits limits;
};

// The bounded type machinery for one structure pair. The type of an element
// is the set of classes whose defined set contains it; comparisons between
// types are bitset inclusions over `classes`.
struct TypeSystem {
  StructurePair pair;
  Bounds bounds;
  Engine engine = Engine::Enum;
  std::vector<TypeClass> classes;

  // Bitsets over class indices.
  Bitset type_left(int a) const;
  Bitset type_right(int b) const;
  Bitset shared_type(int a, int b) const;

  // Mirror for the reverse direction: same classes, sides exchanged.
  // Rebuilding on the swapped pair produces exactly this system.
  TypeSystem swapped() const;
};

// Enumeration engine: builds the classes scope by scope, mirroring the
// syntactic enumeration but collapsing semantically equal candidates as
// they appear, so the class count is bounded by the structures rather than
// the grammar. Class order equals the canonical order of least witnesses.
//
// Closure engine: works in the fixed v-variable context, seeding with all
// depth <= t literals and closing under pairwise intersection and per-
// variable exists/forall projection; ignores bounds.q and bounds.c. The
// classes are the fixpoint tables that define an element set on both sides
// (cylindrical in every z), in derivation order.
TypeSystem build_typesystem(const StructurePair& pair, const Bounds& bounds,
                            const EngineOptions& opt = {});

// Reference construction: evaluates the given formulas (free variables
// inside {y}) one by one and keeps the first witness of each distinct
// defined-set pair. With enumerate_formulas input this is the slow oracle
// the enumeration engine is checked against.
TypeSystem typesystem_from_formulas(const StructurePair& pair,
                                    const std::vector<FormulaPtr>& formulas,
                                    const Bounds& recorded);

}  // namespace typesim
