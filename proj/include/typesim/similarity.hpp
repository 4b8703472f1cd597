#pragma once

#include <optional>
#include <vector>

#include "typesim/typesystem.hpp"

namespace typesim {

// One direction of an element comparison. `holds` means no eligible rival
// realizes a strictly larger shared type with the left element than the
// compared partner does; on failure `dominator` is the least such rival and
// `separating` one formula the rival shares but the partner does not.
struct ElementVerdict {
  bool holds = true;
  int dominator = -1;
  FormulaPtr separating;
};

// a from the left structure against partner b on the right. Rivals range
// over the right domain except b itself and, under the label-identity
// policy, the element carrying a's own label.
ElementVerdict check_lesssim(const TypeSystem& ts, int a, int b);

// The mirrored direction: b against rivals on the left.
ElementVerdict check_lesssim_back(const TypeSystem& ts, int a, int b);

struct CompareVerdict {
  ElementVerdict forward, backward;
  bool approx = false;
};
CompareVerdict compare_elements(const TypeSystem& ts, int a, int b);

// Structure-level relation: every left element needs an approximately
// similar right partner (or merely a dominating-free one, with via_lesssim).
struct StructureVerdict {
  bool holds = true;
  std::vector<int> partner;  // least partner per left element, -1 if none
  int failing = -1;          // least left element without a partner
};
StructureVerdict check_structures(const TypeSystem& ts, bool via_lesssim = false);

// Type-inclusion shortcuts: inclusion of the full bounded type forces the
// one-directional relation, equality forces it both ways.
bool type_included(const TypeSystem& ts, int a, int b);
bool type_equal(const TypeSystem& ts, int a, int b);

// Up to `count` members of the shared type in canonical formula order, as
// justification exemplars for a holding verdict.
std::vector<FormulaPtr> justification_sample(const TypeSystem& ts, int a, int b,
                                             std::size_t count);

// Characteristic check, by direct evaluation on the structures: every
// member of J must hold of a on the left and of b on the right, and no
// eligible rival may satisfy all of J at once.
struct CharacteristicCheck {
  bool ok = true;
  FormulaPtr not_shared;  // first member of J outside the shared type
  int rival = -1;         // least rival satisfying every member of J
};
CharacteristicCheck is_characteristic(const StructurePair& pair, int a, int b,
                                      const std::vector<FormulaPtr>& J);

// Smallest characteristic set drawn from the bounded shared type classes,
// searched by size 0, 1, ..., max_size in canonical order and confirmed by
// direct evaluation. Relative to the bounds: empty result proves nothing.
std::optional<std::vector<FormulaPtr>> find_characteristic(const TypeSystem& ts, int a, int b,
                                                           int max_size);

// One notch more search depth: q+1 for the enumeration engine, t+1 for the
// closure engine.
Bounds bumped_bounds(const Bounds& b, Engine e);

// Rebuilds the system at bumped_bounds with the same engine; nullopt when
// the deeper run exceeds its resource limits.
std::optional<TypeSystem> deepen(const TypeSystem& ts, const EngineOptions& opt = {});

// Verdict agreement for the stabilization flag: same decision and the same
// counterexample elements; separating exemplars may differ between depths.
bool same_outcome(const ElementVerdict& x, const ElementVerdict& y);
bool same_outcome(const CompareVerdict& x, const CompareVerdict& y);
bool same_outcome(const StructureVerdict& x, const StructureVerdict& y);

}  // namespace typesim
