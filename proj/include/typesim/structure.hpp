#pragma once

#include <memory>
#include <string>
#include <vector>

#include "typesim/signature.hpp"

namespace typesim {

// Finite structure over a shared signature. Elements are dense indices;
// labels are kept for I/O and for the cross-structure identity policy
// (two elements are "the same" iff their labels match).
//
// Function tables are total: func_tables[fn][encode(args)] = element.
// Relation tables are bitmaps over all tuples. Tuples encode little-endian:
// encode(t) = t[0] + t[1]*n + t[2]*n^2 + ...
struct Structure {
  std::string name;
  std::shared_ptr<const Signature> sig;
  std::vector<std::string> labels;
  std::vector<std::vector<int>> func_tables;
  std::vector<std::vector<char>> rel_tables;

  int size() const { return static_cast<int>(labels.size()); }
  int element(const std::string& label) const;  // -1 if absent

  std::size_t tuple_count(int arity) const;  // size()^arity
  std::size_t encode(const std::vector<int>& tuple) const;

  // Structural checks: total in-domain tables, non-empty domain, distinct
  // labels. Throws validation_error.
  void validate() const;

  // Serializes back to the structure-file body (no signature block).
  std::string to_text() const;
};

// A left/right pair sharing one signature. `identity` is the label-identity
// policy: when set, an element of the left structure whose label also names
// a right element counts as being "in" the right structure (and vice versa).
struct StructurePair {
  Structure left, right;
  bool identity = true;

  // Index in `right` of the element sharing `left` element a's label,
  // -1 if none or if the identity policy is off.
  int right_twin(int a) const;
  int left_twin(int b) const;

  StructurePair swapped() const { return {right, left, identity}; }
};

// Element map between two structures over the same signature.
struct Mapping {
  std::vector<int> to;  // to[a] = image of left element a
};

struct MapReport {
  bool ok = true;
  std::string message;  // first violation, deterministic order
};

enum class MapKind { Homomorphism, Isomorphism };

MapReport check_mapping(const Structure& from, const Structure& to, const Mapping& m,
                        MapKind kind);

// Copy of `a` with fresh labels (and optionally a new name); the i-th
// element keeps index i, so Mapping{identity} is an isomorphism witness.
Structure relabel(const Structure& a, const std::vector<std::string>& new_labels,
                  const std::string& new_name);

// The pair over an extended signature: one fresh constant per label the two
// domains share, interpreted on each side by the element carrying it, so
// formulas can name the common elements directly. Throws validation_error
// when a shared label collides with an existing symbol.
StructurePair with_element_params(const StructurePair& pair);

// ── File parsing ──────────────────────────────────────────────────────────

struct StructureFile {
  std::shared_ptr<const Signature> sig;
  std::vector<Structure> structures;

  const Structure& get(const std::string& name) const;
};

// Parses a structure file: one `signature { ... }` block followed by any
// number of `structure NAME { domain ...; fun ...; rel ...; }` blocks.
// `#` starts a to-end-of-line comment.
StructureFile parse_structures(const std::string& text);
StructureFile load_structures(const std::string& path);

std::string format_structure_file(const StructureFile& file);

}  // namespace typesim
