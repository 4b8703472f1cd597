#include <chrono>
#include <cstdio>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "typesim/eval.hpp"
#include "typesim/explorer.hpp"
#include "typesim/gsim.hpp"
#include "typesim/parse.hpp"
#include "typesim/similarity.hpp"

// End-to-end gate over the bundled samples and the law suites. Each check
// prints one PASS/FAIL line; any failure makes the exit status nonzero.

namespace {

using namespace typesim;

StructureFile sample(const std::string& name) {
  return load_structures(std::string(TYPESIM_DATA_DIR) + "/" + name);
}

std::string run_trials(const std::string& property, const std::string& sigspec,
                       int trials, int min_size, int max_size, std::uint64_t seed) {
  TrialConfig cfg;
  cfg.trials = trials;
  cfg.min_size = min_size;
  cfg.max_size = max_size;
  cfg.seed = seed;
  TrialReport r = verify_theorem(property, Signature::parse_spec(sigspec), cfg);
  if (r.violations.empty()) return "";
  return property + " on " + sigspec + ": " + std::to_string(r.violations.size()) +
         " violations; first: " + r.violations.front().detail;
}

// The single-edge, two-cycle, reversed-edge triple: one-sided similarity
// holds along the first two comparisons and fails on the composite, with
// the same verdicts from both engines.
std::string non_transitive_triple() {
  StructureFile f = sample("tri.struct");
  const Bounds b{.q = 2, .c = 2, .t = 0, .v = 2};
  for (Engine e : {Engine::Enum, Engine::Closure}) {
    EngineOptions opt;
    opt.engine = e;
    TypeSystem ab = build_typesystem({f.get("A"), f.get("B"), true}, b, opt);
    TypeSystem bc = build_typesystem({f.get("B"), f.get("C"), true}, b, opt);
    TypeSystem ac = build_typesystem({f.get("A"), f.get("C"), true}, b, opt);
    if (!check_lesssim(ab, 0, 0).holds)
      return std::string("a <~ b fails under ") + engine_name(e);
    if (!check_lesssim(bc, 0, 0).holds)
      return std::string("b <~ c fails under ") + engine_name(e);
    ElementVerdict v = check_lesssim(ac, 0, 0);
    if (v.holds) return std::string("a <~ c unexpectedly holds under ") + engine_name(e);
    if (f.get("C").labels[static_cast<std::size_t>(v.dominator)] != "c'")
      return "the dominator is not c'";
  }
  return "";
}

// Collapsing a two-point function onto its fixpoint is a homomorphism, yet
// the image compares back strictly below the other point, so a !~ F(a).
std::string hom_incompatibility() {
  StructureFile f = sample("hom.struct");
  const Bounds b{.q = 1, .c = 2, .t = 2, .v = 2};
  StructurePair ba{f.get("B"), f.get("A"), true};
  TypeSystem ts = build_typesystem(ba, b);
  ElementVerdict v = check_lesssim(ts, 0, 0);
  if (v.holds) return "c <~ a unexpectedly holds";
  if (ba.right.labels[static_cast<std::size_t>(v.dominator)] != "b")
    return "the dominator is not b";
  FormulaPtr ref = parse_formula("f(y) = y", *ba.left.sig);
  if (!(extension_table(ba.left, v.separating, 1) ==
        extension_table(ba.left, ref, 1)) ||
      !(extension_table(ba.right, v.separating, 1) ==
        extension_table(ba.right, ref, 1)))
    return "the separating formula is not equivalent to f(y) = y";
  TypeSystem ab = build_typesystem({f.get("A"), f.get("B"), true}, b);
  if (compare_elements(ab, 0, 0).approx) return "a ~ F(a) unexpectedly holds";
  return "";
}

// Exhaustive search over one unary function, sizes up to 3, must produce a
// shared-label pair whose common element fails against itself, and the hit
// must replay under both engines.
std::string reflexivity_search() {
  SearchHit h = search_counterexample("pair-reflexivity", Signature::parse_spec("f:1"),
                                      3, Bounds{});
  if (!h.found) return "no failing pair up to size 3";
  StructureFile rf = parse_structures(h.reproducer);
  StructurePair pair{rf.get("A"), rf.get("B"), true};
  const int x = h.elements.at(0);
  for (Engine e : {Engine::Enum, Engine::Closure}) {
    EngineOptions opt;
    opt.engine = e;
    if (check_lesssim(build_typesystem(pair, Bounds{}, opt), x, x).holds)
      return std::string("the hit does not replay under ") + engine_name(e);
  }
  return "";
}

// The additive/lattice identity pair: both handwritten one-formula sets are
// characteristic, the search returns a singleton, and the pair is
// approximately similar at default bounds.
std::string characteristic_identity_pair() {
  StructureFile f = sample("nat4_pow2.struct");
  StructurePair pair{f.get("N"), f.get("P"), true};
  TypeSystem ts = build_typesystem(pair, Bounds{});
  if (!compare_elements(ts, 0, 0).approx) return "0 ~ empty fails at default bounds";
  auto J = find_characteristic(ts, 0, 0, 2);
  if (!J) return "no characteristic set up to size 2";
  if (J->size() != 1)
    return "expected a singleton, got size " + std::to_string(J->size());
  FormulaPtr phi = parse_formula("(forall z)(z * y = z)", *pair.left.sig);
  FormulaPtr psi = parse_formula("(forall z)(z ⊙ y = y)", *pair.left.sig);
  if (!is_characteristic(pair, 0, 0, {phi}).ok) return "{phi} is not accepted";
  if (!is_characteristic(pair, 0, 0, {psi}).ok) return "{psi} is not accepted";
  return "";
}

std::string relabeling_suite() {
  if (auto r = run_trials("fit", "f:1", 200, 1, 5, 11); !r.empty()) return r;
  return run_trials("fit", "R:2", 200, 1, 5, 11);
}

std::string two_sided_iso_suite() {
  if (auto r = run_trials("sit", "f:1", 100, 1, 4, 12); !r.empty()) return r;
  return run_trials("sit", "R:2", 100, 1, 4, 12);
}

// Same trials as the relabeling suite (same seeds), fingerprint-set form.
std::string fingerprint_suite() {
  if (auto r = run_trials("iso-lemma", "f:1", 200, 1, 5, 11); !r.empty()) return r;
  return run_trials("iso-lemma", "R:2", 200, 1, 5, 11);
}

std::string reflexivity_and_symmetry_suite() {
  for (const char* sig : {"f:1", "R:2"}) {
    if (auto r = run_trials("reflexivity", sig, 100, 1, 4, 13); !r.empty()) return r;
    if (auto r = run_trials("symmetry", sig, 100, 1, 4, 13); !r.empty()) return r;
  }
  return "";
}

// Bounded type inclusion must force the one-sided verdict, and bounded type
// equality the two-sided one, across every structure pair of every bundled
// sample at default bounds.
std::string inclusion_implies_similarity() {
  long checked = 0;
  for (const char* name : {"tri.struct", "hom.struct", "chain.struct",
                           "nat4_pow2.struct", "word4.struct"}) {
    StructureFile f = sample(name);
    for (const Structure& left : f.structures)
      for (const Structure& right : f.structures) {
        TypeSystem ts = build_typesystem({left, right, true}, Bounds{});
        for (int a = 0; a < left.size(); ++a)
          for (int b = 0; b < right.size(); ++b) {
            ++checked;
            if (type_included(ts, a, b) && !check_lesssim(ts, a, b).holds)
              return std::string(name) + ": inclusion without <~ at " +
                     left.labels[static_cast<std::size_t>(a)] + ":" +
                     right.labels[static_cast<std::size_t>(b)];
            if (type_equal(ts, a, b) && !compare_elements(ts, a, b).approx)
              return std::string(name) + ": type equality without ~ at " +
                     left.labels[static_cast<std::size_t>(a)] + ":" +
                     right.labels[static_cast<std::size_t>(b)];
          }
      }
  }
  return checked ? "" : "nothing was checked";
}

// The enumeration engine, deepened until its inclusion preorder stops
// moving, must land exactly on the closure engine's preorder at the same
// (t, v): exhaustively over one unary function up to size 3, and on a
// random sample over one binary relation.
std::string engine_preorder_equivalence() {
  const Bounds start{.q = 1, .c = 2, .t = 1, .v = 2};
  EngineOptions closure;
  closure.engine = Engine::Closure;

  std::vector<Structure> all;
  Signature f1 = Signature::parse_spec("f:1");
  for (int n = 1; n <= 3; ++n)
    for (Structure& s : all_structures(f1, n)) all.push_back(std::move(s));
  for (const Structure& left : all)
    for (const Structure& right : all) {
      StructurePair pair{left, right, true};
      if (stabilized_enum_preorder(pair, start) !=
          inclusion_preorder(build_typesystem(pair, start, closure)))
        return "preorders disagree on a unary-function pair";
    }

  Signature r2 = Signature::parse_spec("R:2");
  std::mt19937_64 rng(17);
  for (int i = 0; i < 200; ++i) {
    Structure left = random_structure(r2, 1 + i % 3, rng());
    Structure right = random_structure(r2, 1 + (i / 3) % 3, rng());
    StructurePair pair{left, right, true};
    if (stabilized_enum_preorder(pair, start) !=
        inclusion_preorder(build_typesystem(pair, start, closure)))
      return "preorders disagree on a random binary-relation pair (trial " +
             std::to_string(i) + ")";
  }
  return "";
}

// Every enumerated term-image formula is conjunctive, and the dedicated
// fragment builder gives the same verdicts as the general enumeration
// filtered down to those formulas.
std::string term_fragment_consistency() {
  Signature sig = Signature::parse_spec("*:2,f:1,e:0");
  auto gs = enumerate_gformulas(sig, 3, 3);
  if (gs.size() < 1000)
    return "only " + std::to_string(gs.size()) + " term-image formulas enumerated";
  for (const GFormula& g : gs)
    if (!validate_conjunctive(g.formula).empty())
      return "a term-image formula fell outside the conjunctive fragment";

  for (const char* name : {"hom.struct", "chain.struct"}) {
    StructureFile f = sample(name);
    StructurePair pair{f.structures[0], f.structures[1], true};
    const Bounds b{};
    TypeSystem gsys = build_gtypesystem(pair, b);
    std::vector<FormulaPtr> filtered;
    for (const FormulaPtr& fm : enumerate_formulas(*pair.left.sig, b))
      if (is_gformula(fm)) filtered.push_back(fm);
    TypeSystem csys = typesystem_from_formulas(pair, filtered, b);
    for (int a = 0; a < pair.left.size(); ++a)
      for (int bb = 0; bb < pair.right.size(); ++bb)
        if (!same_outcome(compare_elements(gsys, a, bb),
                          compare_elements(csys, a, bb)))
          return std::string(name) + ": fragment verdicts disagree at " +
                 std::to_string(a) + ":" + std::to_string(bb);
  }
  return "";
}

struct Check {
  const char* name;
  double budget_seconds;  // 0: no runtime requirement
  std::string (*run)();
};

}  // namespace

int main() {
  const std::vector<Check> checks = {
      {"one-sided similarity is not transitive on the bundled triple", 1.0,
       non_transitive_triple},
      {"homomorphic images need not stay similar", 1.0, hom_incompatibility},
      {"exhaustive search finds a reflexivity-breaking pair", 60.0,
       reflexivity_search},
      {"the identity pair has a one-formula characteristic justification", 10.0,
       characteristic_identity_pair},
      {"bijective relabelings preserve similarity (400 trials)", 60.0,
       relabeling_suite},
      {"similarity is invariant under isomorphisms on both sides (200 trials)", 0,
       two_sided_iso_suite},
      {"type fingerprints are carried along isomorphisms (400 trials)", 0,
       fingerprint_suite},
      {"self-similarity and symmetry hold on random instances (400 trials)", 0,
       reflexivity_and_symmetry_suite},
      {"type inclusion forces the verdict on every bundled sample", 0,
       inclusion_implies_similarity},
      {"the enumeration preorder stabilizes onto the closure preorder", 300.0,
       engine_preorder_equivalence},
      {"the term-image fragment matches filtered enumeration", 0,
       term_fragment_consistency},
  };

  int failed = 0;
  for (std::size_t i = 0; i < checks.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    std::string why;
    try {
      why = checks[i].run();
    } catch (const std::exception& e) {
      why = std::string("exception: ") + e.what();
    }
    const double dt =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (why.empty() && checks[i].budget_seconds > 0 && dt > checks[i].budget_seconds) {
      std::ostringstream over;
      over << "took " << dt << " s, budget " << checks[i].budget_seconds << " s";
      why = over.str();
    }
    std::printf("[%2zu] %s  %s (%.2f s)\n", i + 1, why.empty() ? "PASS" : "FAIL",
                checks[i].name, dt);
    if (!why.empty()) {
      std::printf("      %s\n", why.c_str());
      ++failed;
    }
  }
  std::printf("%zu/%zu checks passed\n", checks.size() - static_cast<std::size_t>(failed),
              checks.size());
  return failed ? 1 : 0;
}
