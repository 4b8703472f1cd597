#pragma once

#include <optional>
#include <vector>

#include "typesim/similarity.hpp"
#include "typesim/typesystem.hpp"

namespace typesim {

// The term fragment: with every term s over z1..zk we associate the formula
// (exists z1)...(exists zk)(y = s), true of exactly the image of the term
// function. Every such formula is conjunctive, so the whole similarity
// machinery applies unchanged to type systems built from this fragment.
struct GFormula {
  TermPtr term;        // s; never mentions y
  FormulaPtr formula;  // the quantified equation, y on the left
};

// Wraps s in the equation and the exists block over exactly its variables,
// smallest variable outermost. Throws validation_error if s mentions y.
GFormula gformula_of(const TermPtr& s);

// One GFormula per canonical term of depth <= t over z1..z_nz, in term
// enumeration order. Constants give ground equations with no quantifier.
std::vector<GFormula> enumerate_gformulas(const Signature& sig, int t, int nz,
                                          const Limits& lim = {});

// Syntactic test for the fragment shape: an exists chain binding z1..zk in
// order whose body is one equation between y and a term over exactly those
// variables, y on either side. This is what the general enumeration emits
// for the fragment, so it doubles as the filter in the consistency check.
bool is_gformula(const FormulaPtr& f);

// Type system whose classes are the distinct defined-set pairs of the term
// fragment at term depth bounds.t over z1..z_{v-1} (the z part of the
// variable pool); bounds.q and bounds.c play no role. Witnesses are the
// first term in canonical order realizing the class.
TypeSystem build_gtypesystem(const StructurePair& pair, const Bounds& bounds,
                             const Limits& lim = {});

// Element similarity with types restricted to the term fragment.
CompareVerdict g_approx(const StructurePair& pair, int a, int b, const Bounds& bounds,
                        const Limits& lim = {});

// Rebuild one notch deeper (t + 1) for stabilization reports; nullopt when
// the deeper build trips a resource limit.
std::optional<TypeSystem> g_deepen(const TypeSystem& ts, const Limits& lim = {});

}  // namespace typesim
