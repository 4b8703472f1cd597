#include "typesim/similarity.hpp"

#include <algorithm>

#include "typesim/eval.hpp"

namespace typesim {

namespace {

void require_elements(const TypeSystem& ts, int a, int b) {
  if (a < 0 || a >= ts.pair.left.size())
    throw validation_error("left element index out of range");
  if (b < 0 || b >= ts.pair.right.size())
    throw validation_error("right element index out of range");
}

FormulaPtr least_separator(const TypeSystem& ts, const Bitset& base, const Bitset& larger) {
  for (std::size_t i = 0; i < ts.classes.size(); ++i)
    if (larger.test(i) && !base.test(i)) return ts.classes[i].witness;
  return nullptr;
}

}  // namespace

ElementVerdict check_lesssim(const TypeSystem& ts, int a, int b) {
  require_elements(ts, a, b);
  const Bitset base = ts.shared_type(a, b);
  const int twin = ts.pair.right_twin(a);
  ElementVerdict v;
  for (int rival = 0; rival < ts.pair.right.size(); ++rival) {
    if (rival == b || rival == twin) continue;
    Bitset other = ts.shared_type(a, rival);
    if (base.subset_of(other) && other != base) {
      v.holds = false;
      v.dominator = rival;
      v.separating = least_separator(ts, base, other);
      break;
    }
  }
  return v;
}

ElementVerdict check_lesssim_back(const TypeSystem& ts, int a, int b) {
  require_elements(ts, a, b);
  const Bitset base = ts.shared_type(a, b);
  const int twin = ts.pair.left_twin(b);
  ElementVerdict v;
  for (int rival = 0; rival < ts.pair.left.size(); ++rival) {
    if (rival == a || rival == twin) continue;
    Bitset other = ts.shared_type(rival, b);
    if (base.subset_of(other) && other != base) {
      v.holds = false;
      v.dominator = rival;
      v.separating = least_separator(ts, base, other);
      break;
    }
  }
  return v;
}

CompareVerdict compare_elements(const TypeSystem& ts, int a, int b) {
  CompareVerdict v{check_lesssim(ts, a, b), check_lesssim_back(ts, a, b), false};
  v.approx = v.forward.holds && v.backward.holds;
  return v;
}

StructureVerdict check_structures(const TypeSystem& ts, bool via_lesssim) {
  StructureVerdict v;
  v.partner.assign(static_cast<std::size_t>(ts.pair.left.size()), -1);
  for (int a = 0; a < ts.pair.left.size(); ++a) {
    for (int b = 0; b < ts.pair.right.size(); ++b) {
      bool good = via_lesssim ? check_lesssim(ts, a, b).holds : compare_elements(ts, a, b).approx;
      if (good) {
        v.partner[static_cast<std::size_t>(a)] = b;
        break;
      }
    }
    if (v.partner[static_cast<std::size_t>(a)] < 0 && v.failing < 0) v.failing = a;
  }
  v.holds = v.failing < 0;
  return v;
}

bool type_included(const TypeSystem& ts, int a, int b) {
  require_elements(ts, a, b);
  return ts.type_left(a).subset_of(ts.type_right(b));
}

bool type_equal(const TypeSystem& ts, int a, int b) {
  require_elements(ts, a, b);
  return ts.type_left(a) == ts.type_right(b);
}

std::vector<FormulaPtr> justification_sample(const TypeSystem& ts, int a, int b,
                                             std::size_t count) {
  require_elements(ts, a, b);
  std::vector<FormulaPtr> all;
  for (const TypeClass& c : ts.classes)
    if (c.left.test(static_cast<std::size_t>(a)) && c.right.test(static_cast<std::size_t>(b)))
      all.push_back(c.witness);
  std::sort(all.begin(), all.end(),
            [](const FormulaPtr& x, const FormulaPtr& y) { return formula_cmp(x, y) < 0; });
  if (all.size() > count) all.resize(count);
  return all;
}

CharacteristicCheck is_characteristic(const StructurePair& pair, int a, int b,
                                      const std::vector<FormulaPtr>& J) {
  if (a < 0 || a >= pair.left.size() || b < 0 || b >= pair.right.size())
    throw validation_error("element index out of range");
  CharacteristicCheck out;
  for (const FormulaPtr& f : J) {
    if ((free_var_mask(f) & ~1u) != 0)
      throw validation_error("justifications may only use y free");
    if (!evaluate(pair.left, f, {a}) || !evaluate(pair.right, f, {b})) {
      out.ok = false;
      out.not_shared = f;
      return out;
    }
  }
  const int twin = pair.right_twin(a);
  for (int rival = 0; rival < pair.right.size(); ++rival) {
    if (rival == b || rival == twin) continue;
    bool all = true;
    for (const FormulaPtr& f : J)
      if (!evaluate(pair.right, f, {rival})) {
        all = false;
        break;
      }
    if (all) {
      out.ok = false;
      out.rival = rival;
      return out;
    }
  }
  return out;
}

std::optional<std::vector<FormulaPtr>> find_characteristic(const TypeSystem& ts, int a, int b,
                                                           int max_size) {
  require_elements(ts, a, b);
  if (max_size < 0) throw validation_error("max_size must be >= 0");

  // Candidate classes containing (a, b), in canonical formula order. The
  // enumeration engine already emits classes in that order; the closure
  // engine's derivation order needs the sort.
  std::vector<int> cand;
  for (std::size_t i = 0; i < ts.classes.size(); ++i)
    if (ts.classes[i].left.test(static_cast<std::size_t>(a)) &&
        ts.classes[i].right.test(static_cast<std::size_t>(b)))
      cand.push_back(static_cast<int>(i));
  std::sort(cand.begin(), cand.end(), [&](int x, int y) {
    int c = formula_cmp(ts.classes[static_cast<std::size_t>(x)].witness,
                        ts.classes[static_cast<std::size_t>(y)].witness);
    return c != 0 ? c < 0 : x < y;
  });

  const int twin = ts.pair.right_twin(a);
  std::vector<int> rivals;
  for (int r = 0; r < ts.pair.right.size(); ++r)
    if (r != b && r != twin) rivals.push_back(r);

  // eliminated[i] = rivals the i-th candidate's class rules out.
  std::vector<Bitset> eliminated;
  eliminated.reserve(cand.size());
  for (int ci : cand) {
    Bitset e(rivals.size());
    for (std::size_t k = 0; k < rivals.size(); ++k)
      if (!ts.classes[static_cast<std::size_t>(ci)].right.test(
              static_cast<std::size_t>(rivals[k])))
        e.set(k);
    eliminated.push_back(std::move(e));
  }

  auto confirm = [&](const std::vector<int>& picks) -> std::optional<std::vector<FormulaPtr>> {
    std::vector<FormulaPtr> J;
    for (int p : picks) J.push_back(ts.classes[static_cast<std::size_t>(cand[static_cast<std::size_t>(p)])].witness);
    if (is_characteristic(ts.pair, a, b, J).ok) return J;
    return std::nullopt;
  };

  if (rivals.empty()) return confirm({});

  const int n = static_cast<int>(cand.size());
  for (int size = 1; size <= max_size; ++size) {
    if (size > n) break;
    // Lexicographic combinations over the canonical candidate order.
    std::vector<int> picks(static_cast<std::size_t>(size));
    for (int i = 0; i < size; ++i) picks[static_cast<std::size_t>(i)] = i;
    while (true) {
      Bitset covered(rivals.size());
      for (int p : picks) covered |= eliminated[static_cast<std::size_t>(p)];
      if (covered.all()) {
        if (auto J = confirm(picks)) return J;
      }
      int i = size - 1;
      while (i >= 0 && picks[static_cast<std::size_t>(i)] == n - size + i) --i;
      if (i < 0) break;
      ++picks[static_cast<std::size_t>(i)];
      for (int j = i + 1; j < size; ++j)
        picks[static_cast<std::size_t>(j)] = picks[static_cast<std::size_t>(j - 1)] + 1;
    }
  }
  return std::nullopt;
}

Bounds bumped_bounds(const Bounds& b, Engine e) {
  Bounds out = b;
  if (e == Engine::Enum)
    ++out.q;
  else
    ++out.t;
  return out;
}

std::optional<TypeSystem> deepen(const TypeSystem& ts, const EngineOptions& opt) {
  EngineOptions o = opt;
  o.engine = ts.engine;
  try {
    return build_typesystem(ts.pair, bumped_bounds(ts.bounds, ts.engine), o);
  } catch (const resource_limit_error&) {
    return std::nullopt;
  }
}

bool same_outcome(const ElementVerdict& x, const ElementVerdict& y) {
  return x.holds == y.holds && x.dominator == y.dominator;
}

bool same_outcome(const CompareVerdict& x, const CompareVerdict& y) {
  return same_outcome(x.forward, y.forward) && same_outcome(x.backward, y.backward) &&
         x.approx == y.approx;
}

bool same_outcome(const StructureVerdict& x, const StructureVerdict& y) {
  return x.holds == y.holds && x.partner == y.partner && x.failing == y.failing;
}

}  // namespace typesim
