#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "typesim/explorer.hpp"
#include "typesim/similarity.hpp"
#include "typesim/typesystem.hpp"

namespace typesim {

// Insertion-ordered documents: every serializer below emits its keys in a
// fixed order and no floating point unless stated, so equal inputs dump to
// equal bytes.
using Json = nlohmann::ordered_json;

// Two-space indent plus a trailing newline.
std::string dump_json(const Json& j);

Json bounds_json(const Bounds& b);

// Element verdict: {relation, left, right, holds, bounds, engine,
// dominator?, separating_formula?, justifications, stabilized}. The
// dominator block appears only on failing verdicts and comes from the
// direction that failed; a backward dominator names a left-domain element.
// `relation` selects which part of `v` decides: a *lesssim relation reads
// the forward direction, an *approx relation reads both.
Json element_verdict_json(const TypeSystem& ts, const std::string& relation, int a,
                          int b, const CompareVerdict& v, bool stabilized,
                          std::size_t justification_count);

// Structure verdict: same envelope with per-element partner labels (null
// where none) and the least unmatched element, no dominator block.
Json structure_verdict_json(const TypeSystem& ts, const StructureVerdict& v,
                            bool via_lesssim, bool stabilized);

// Class dump for one left element, or for the whole system when `element`
// is -1: variable context, witness text, both extension tables as sorted
// label tuples.
Json type_json(const TypeSystem& ts, int element);

// `elapsed_seconds` is emitted only with timings (it breaks byte equality
// between runs).
Json trial_report_json(const TrialReport& r, bool timings);

Json search_hit_json(const std::string& property, const SearchHit& h);

Json classify_json(const std::vector<ClassifyRow>& rows);

}  // namespace typesim
