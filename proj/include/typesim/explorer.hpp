#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "typesim/similarity.hpp"
#include "typesim/typesystem.hpp"

namespace typesim {

// Random and exhaustive generation of small structures, mechanical checks
// of the exact laws (isomorphism theorems, symmetry, reflexivity), and
// counterexample search for the properties that genuinely fail.

// Uniform random structure: every function table entry and relation bit is
// drawn independently; the same (sig, size, seed, prefix) always yields the
// same structure. Labels are prefix0, prefix1, ...; name defaults to "A".
Structure random_structure(const Signature& sig, int size, std::uint64_t seed,
                           const std::string& label_prefix = "e");

// Image of `a` under the bijection perm: element perm[i] of the result
// interprets exactly like element i of `a`, so perm itself is an
// isomorphism witness from `a` to the result.
Structure permuted(const Structure& a, const std::vector<int>& perm,
                   const std::string& label_prefix, const std::string& new_name);

// Every structure over the signature with domain labels prefix+"0" ..,
// tables in odometer order (function entries little-endian first, then
// relation bitmaps). Throws resource_limit_error when the table space
// exceeds lim.max_formulas structures.
std::vector<Structure> all_structures(const Signature& sig, int size,
                                      const std::string& label_prefix = "",
                                      const Limits& lim = {});

// First representative of each isomorphism class of all_structures, keyed
// by the least table encoding over all label permutations.
std::vector<Structure> canonical_structures(const Signature& sig, int size,
                                            const std::string& label_prefix = "",
                                            const Limits& lim = {});

// ── Law suites ────────────────────────────────────────────────────────────

struct Violation {
  std::string detail;      // one line: trial, elements, verdict
  std::string reproducer;  // structure file text that replays the verdict
};

struct TrialReport {
  std::string property;
  int trials = 0;
  std::vector<Violation> violations;
  double elapsed_seconds = 0;
};

struct TrialConfig {
  int trials = 100;
  int min_size = 1;
  int max_size = 4;
  Bounds bounds;
  std::uint64_t seed = 1;
  EngineOptions options;
};

// Checks one exact law on `trials` random instances; sizes cycle through
// [min_size, max_size] and per-trial randomness derives deterministically
// from cfg.seed, so reports are reproducible bit for bit. Properties:
//
//   fit           a ~ F(a) for a random bijective relabeling F
//   sit           a ~ b iff F(a) ~ G(b) for random bijections F, G
//   iso-lemma     type fingerprint sets equal along F (same trials as fit)
//   symmetry      approx(a, b) unchanged when the pair is rebuilt swapped
//   reflexivity   a ~ a inside a single structure
//
// These hold at any bounds, so a non-empty violation list means an
// implementation bug, never a property of the inputs.
TrialReport verify_theorem(const std::string& property, const Signature& sig,
                           const TrialConfig& cfg);

// ── Counterexample search ─────────────────────────────────────────────────

struct SearchHit {
  bool found = false;
  std::uint64_t examined = 0;  // candidate instances inspected
  std::vector<Structure> structures;
  std::vector<int> elements;  // the elements exhibiting the failure
  std::string detail;
  std::string reproducer;  // structure file text of the found instance
};

// Exhaustive search in canonical order, smallest sizes first, skipping
// relabelings of already-seen instances; stops at the first hit. Every hit
// is re-verified against the formula-list reference and the other engine
// before being returned. Properties:
//
//   pair-reflexivity     shared-label pair and element with a !~ a
//   transitivity         triple with a <~ b, b <~ c and a !<~ c
//   hom-incompatibility  homomorphism F and element with a !~ F(a)
SearchHit search_counterexample(const std::string& property, const Signature& sig,
                                int max_size, const Bounds& bounds,
                                const EngineOptions& opt = {});

// ── Classification data (open question support) ──────────────────────────

// Empirical buckets over all canonical structures up to max_size: does the
// relation stay reflexive against every same-size companion, and is it
// transitive within the structure itself. Data, not a characterization.
struct ClassifyRow {
  Structure structure;
  bool pair_reflexive = true;  // a ~ a in (A, B) for every companion B
  bool transitive = true;      // <~ transitive inside (A, A)
};
std::vector<ClassifyRow> classify_structures(const Signature& sig, int max_size,
                                             const Bounds& bounds,
                                             const EngineOptions& opt = {});

// ── Preorder helpers (engine cross-validation) ────────────────────────────

// Type-inclusion preorder: row a, column b set iff the bounded left type of
// a is included in the bounded right type of b.
std::vector<std::vector<char>> inclusion_preorder(const TypeSystem& ts);

// Enumeration-engine preorder rebuilt with q and c raised together until it
// stops changing; the returned matrix is the first stable one. Throws
// resource_limit_error if the build overflows before stabilizing.
std::vector<std::vector<char>> stabilized_enum_preorder(const StructurePair& pair,
                                                        const Bounds& start,
                                                        const EngineOptions& opt = {});

}  // namespace typesim
