#include "doctest.h"

#include <string>
#include <vector>

#include "typesim/eval.hpp"
#include "typesim/parse.hpp"
#include "typesim/similarity.hpp"

using namespace typesim;

namespace {

StructureFile load(const char* name) {
  return load_structures(std::string(TYPESIM_DATA_DIR) + "/" + name);
}

StructurePair pair_of(const StructureFile& file, const char* l, const char* r,
                      bool identity = true) {
  return {file.get(l), file.get(r), identity};
}

EngineOptions opts(Engine e) {
  EngineOptions o;
  o.engine = e;
  return o;
}

std::string text(const FormulaPtr& f, const Signature& sig) { return format_formula(f, sig); }

}  // namespace

TEST_CASE("the element relation is not transitive") {
  StructureFile tri = load("tri.struct");
  const Bounds b{.q = 2, .c = 2, .t = 0, .v = 2};

  for (Engine engine : {Engine::Enum, Engine::Closure}) {
    CAPTURE(engine_name(engine));
    TypeSystem ab = build_typesystem(pair_of(tri, "A", "B"), b, opts(engine));
    TypeSystem bc = build_typesystem(pair_of(tri, "B", "C"), b, opts(engine));
    TypeSystem ac = build_typesystem(pair_of(tri, "A", "C"), b, opts(engine));

    CHECK(check_lesssim(ab, 0, 0).holds);  // a below b
    CHECK(check_lesssim(bc, 0, 0).holds);  // b below c

    ElementVerdict v = check_lesssim(ac, 0, 0);
    CHECK_FALSE(v.holds);
    CHECK(v.dominator == 1);  // c'
    REQUIRE(v.separating != nullptr);

    // The separating formula holds of a and the dominator but not of c,
    // and the dominated shared type is included in the dominator's.
    CHECK(evaluate(ac.pair.left, v.separating, {0}));
    CHECK(evaluate(ac.pair.right, v.separating, {1}));
    CHECK_FALSE(evaluate(ac.pair.right, v.separating, {0}));
    CHECK(ac.shared_type(0, 0).subset_of(ac.shared_type(0, 1)));

    if (engine == Engine::Enum)
      CHECK(text(v.separating, *tri.sig) == "(exists z1)(R(y, z1))");
  }
}

TEST_CASE("a homomorphic image is not automatically similar") {
  StructureFile hom = load("hom.struct");
  const Bounds b{.q = 1, .c = 2, .t = 2, .v = 2};

  // Back direction: the image c compared with a loses to the rival b.
  TypeSystem ba = build_typesystem(pair_of(hom, "B", "A"), b);
  ElementVerdict back = check_lesssim(ba, 0, 0);
  CHECK_FALSE(back.holds);
  CHECK(back.dominator == 1);  // b
  REQUIRE(back.separating != nullptr);
  CHECK(text(back.separating, *hom.sig) == "f(y) = y");

  // Forward a against c holds vacuously (no rivals), so approx fails on
  // the back direction alone.
  TypeSystem ab = build_typesystem(pair_of(hom, "A", "B"), b);
  CompareVerdict v = compare_elements(ab, 0, 0);
  CHECK(v.forward.holds);
  CHECK_FALSE(v.backward.holds);
  CHECK(v.backward.dominator == 1);
  CHECK_FALSE(v.approx);

  // The fixed point b, in contrast, is approximately similar to c.
  CHECK(compare_elements(ab, 1, 0).approx);
}

TEST_CASE("reflexivity fails across the relabeled chain pair") {
  StructureFile chain = load("chain.struct");
  TypeSystem ts = build_typesystem(pair_of(chain, "A", "B"), {});  // default bounds

  CompareVerdict refl = compare_elements(ts, 1, 1);
  CHECK_FALSE(refl.forward.holds);
  CHECK(refl.forward.dominator == 0);
  REQUIRE(refl.forward.separating != nullptr);
  CHECK(evaluate(ts.pair.right, refl.forward.separating, {0}));
  CHECK_FALSE(evaluate(ts.pair.right, refl.forward.separating, {1}));

  // Against its isomorphic image, every element is approximately similar.
  CHECK(compare_elements(ts, 0, 1).approx);
  CHECK(compare_elements(ts, 1, 0).approx);
  CHECK(compare_elements(ts, 2, 2).approx);
  CHECK(compare_elements(ts, 3, 3).approx);
}

TEST_CASE("type inclusion forces the relation") {
  StructureFile chain = load("chain.struct");
  TypeSystem ts = build_typesystem(pair_of(chain, "A", "B"), {});
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      CAPTURE(a);
      CAPTURE(b);
      if (type_included(ts, a, b)) CHECK(check_lesssim(ts, a, b).holds);
      if (type_equal(ts, a, b)) CHECK(compare_elements(ts, a, b).approx);
    }
  }
  // The isomorphic partner realizes the identical bounded type.
  CHECK(type_equal(ts, 1, 0));
  CHECK(type_included(ts, 1, 0));
}

TEST_CASE("the label-identity policy shields an element's own twin") {
  // u is a proper fixed point in both structures; w is not. Comparing u
  // with w, the only possible rival is u's twin, so the verdict flips
  // with the policy.
  const char* txt = R"(
signature { fun f:1; }
structure A { domain u, v; fun f { u -> u; v -> u; } }
structure B { domain u, w; fun f { u -> u; w -> u; } }
)";
  StructureFile file = parse_structures(txt);
  const Bounds b{.q = 1, .c = 2, .t = 1, .v = 2};

  TypeSystem with_twin = build_typesystem(pair_of(file, "A", "B", true), b);
  CHECK(check_lesssim(with_twin, 0, 1).holds);

  TypeSystem bare = build_typesystem(pair_of(file, "A", "B", false), b);
  ElementVerdict v = check_lesssim(bare, 0, 1);
  CHECK_FALSE(v.holds);
  CHECK(v.dominator == 0);
  REQUIRE(v.separating != nullptr);
  CHECK(text(v.separating, *file.sig) == "f(y) = y");
}

TEST_CASE("zero is approximately the empty set with a forall justification") {
  StructureFile np = load("nat4_pow2.struct");
  StructurePair pair = pair_of(np, "N", "P");
  TypeSystem ts = build_typesystem(pair, {});  // default bounds

  CHECK(compare_elements(ts, 0, 0).approx);

  auto J = find_characteristic(ts, 0, 0, 2);
  REQUIRE(J.has_value());
  REQUIRE(J->size() == 1);
  CHECK(text((*J)[0], *np.sig) == "(forall z1)(y * z1 = z1)");

  // Both of the handwritten characteristic justifications check out, in
  // the exact shape they were written.
  FormulaPtr phi = parse_formula("(forall z)(z * y = z)", *np.sig);
  FormulaPtr psi = parse_formula("(forall z)(z ⊙ y = y)", *np.sig);
  CHECK(is_characteristic(pair, 0, 0, {phi}).ok);
  CHECK(is_characteristic(pair, 0, 0, {psi}).ok);

  // A justification that fails to mention y cannot isolate the empty set.
  FormulaPtr loose = parse_formula("y * y = y", *np.sig);
  CharacteristicCheck c = is_characteristic(pair, 0, 0, {loose});
  CHECK_FALSE(c.ok);
  CHECK(c.rival == 1);  // p, the first rival checked
  // And one that does not even hold of the pair is rejected up front.
  FormulaPtr wrong = parse_formula("y * y != y", *np.sig);
  CharacteristicCheck w = is_characteristic(pair, 0, 0, {wrong});
  CHECK_FALSE(w.ok);
  CHECK(w.not_shared != nullptr);
}

TEST_CASE("an unrivaled pairing has the empty characteristic set") {
  StructureFile hom = load("hom.struct");
  StructurePair pair = pair_of(hom, "A", "B");
  TypeSystem ts = build_typesystem(pair, {.q = 1, .c = 2, .t = 1, .v = 2});

  CHECK(is_characteristic(pair, 0, 0, {}).ok);
  auto J = find_characteristic(ts, 0, 0, 2);
  REQUIRE(J.has_value());
  CHECK(J->empty());
}

TEST_CASE("indistinguishable rivals admit no characteristic set") {
  const char* txt = R"(
signature { rel R:2; }
structure D { domain u, v; rel R { } }
)";
  StructureFile file = parse_structures(txt);
  StructurePair pair{file.get("D"), file.get("D"), true};
  TypeSystem ts = build_typesystem(pair, {.q = 2, .c = 2, .t = 0, .v = 2});

  CHECK_FALSE(find_characteristic(ts, 0, 0, 3).has_value());
  CharacteristicCheck c = is_characteristic(pair, 0, 0, {});
  CHECK_FALSE(c.ok);
  CHECK(c.rival == 1);
}

TEST_CASE("structure-level similarity pairs every element") {
  StructureFile tri = load("tri.struct");
  const Bounds b{.q = 2, .c = 2, .t = 0, .v = 2};

  TypeSystem ac = build_typesystem(pair_of(tri, "A", "C"), b);
  StructureVerdict v = check_structures(ac);
  CHECK(v.holds);
  CHECK(v.failing == -1);
  CHECK(v.partner == std::vector<int>{1, 0});  // a pairs with c', a' with c

  TypeSystem ab = build_typesystem(pair_of(tri, "A", "B"), b);
  CHECK(check_structures(ab).holds);
  CHECK(check_structures(ab, true).holds);
}

TEST_CASE("structure-level similarity reports the first unpaired element") {
  StructureFile hom = load("hom.struct");
  TypeSystem ab = build_typesystem(pair_of(hom, "A", "B"), {.q = 1, .c = 2, .t = 2, .v = 2});

  StructureVerdict strict = check_structures(ab);
  CHECK_FALSE(strict.holds);
  CHECK(strict.failing == 0);
  CHECK(strict.partner == std::vector<int>{-1, 0});

  // One-directional pairing is weaker: a holds against c vacuously.
  StructureVerdict loose = check_structures(ab, true);
  CHECK(loose.holds);
  CHECK(loose.partner == std::vector<int>{0, 0});
}

TEST_CASE("justification samples come in canonical order") {
  StructureFile tri = load("tri.struct");
  TypeSystem ab = build_typesystem(pair_of(tri, "A", "B"), {.q = 2, .c = 2, .t = 0, .v = 2});

  auto all = justification_sample(ab, 0, 0, 1000);
  REQUIRE(!all.empty());
  CHECK(text(all[0], *tri.sig) == "y = y");
  for (std::size_t i = 1; i < all.size(); ++i)
    CHECK(formula_cmp(all[i - 1], all[i]) < 0);
  for (const FormulaPtr& f : all) {
    CHECK(evaluate(ab.pair.left, f, {0}));
    CHECK(evaluate(ab.pair.right, f, {0}));
  }

  CHECK(all.size() == 2);  // the full class and the out-edge class
  CHECK(justification_sample(ab, 0, 0, 1).size() == 1);
}

TEST_CASE("verdicts stabilize one notch deeper") {
  StructureFile chain = load("chain.struct");
  TypeSystem ts = build_typesystem(pair_of(chain, "A", "B"), {});

  CHECK(bumped_bounds(ts.bounds, Engine::Enum).q == ts.bounds.q + 1);
  CHECK(bumped_bounds(ts.bounds, Engine::Closure).t == ts.bounds.t + 1);

  auto deeper = deepen(ts);
  REQUIRE(deeper.has_value());
  CHECK(same_outcome(compare_elements(*deeper, 1, 1), compare_elements(ts, 1, 1)));
  CHECK(same_outcome(check_structures(*deeper), check_structures(ts)));

  // A deeper run that blows the resource guard reports as not stabilized.
  EngineOptions tiny;
  tiny.limits = Limits{.max_formulas = 10, .max_fingerprints = 100000};
  CHECK_FALSE(deepen(ts, tiny).has_value());
}

TEST_CASE("element comparisons validate their inputs") {
  StructureFile tri = load("tri.struct");
  TypeSystem ab = build_typesystem(pair_of(tri, "A", "B"), {.q = 0, .c = 1, .t = 0, .v = 1});
  CHECK_THROWS_AS(check_lesssim(ab, -1, 0), validation_error);
  CHECK_THROWS_AS(check_lesssim(ab, 0, 2), validation_error);
  CHECK_THROWS_AS(find_characteristic(ab, 0, 0, -1), validation_error);
  FormulaPtr stray = make_atom(0, {Term::variable(0), Term::variable(1)});
  CHECK_THROWS_AS(is_characteristic(ab.pair, 0, 0, {stray}), validation_error);
}
