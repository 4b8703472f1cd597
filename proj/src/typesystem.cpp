#include "typesim/typesystem.hpp"

#include <algorithm>
#include <unordered_map>
#include <utility>

namespace typesim {

const char* engine_name(Engine e) { return e == Engine::Enum ? "enum" : "closure"; }

Bitset TypeSystem::type_left(int a) const {
  Bitset out(classes.size());
  for (std::size_t i = 0; i < classes.size(); ++i)
    if (classes[i].left.test(static_cast<std::size_t>(a))) out.set(i);
  return out;
}

Bitset TypeSystem::type_right(int b) const {
  Bitset out(classes.size());
  for (std::size_t i = 0; i < classes.size(); ++i)
    if (classes[i].right.test(static_cast<std::size_t>(b))) out.set(i);
  return out;
}

Bitset TypeSystem::shared_type(int a, int b) const {
  Bitset out(classes.size());
  for (std::size_t i = 0; i < classes.size(); ++i)
    if (classes[i].left.test(static_cast<std::size_t>(a)) &&
        classes[i].right.test(static_cast<std::size_t>(b)))
      out.set(i);
  return out;
}

TypeSystem TypeSystem::swapped() const {
  TypeSystem out{pair.swapped(), bounds, engine, {}};
  out.classes.reserve(classes.size());
  for (const TypeClass& c : classes) out.classes.push_back({c.right, c.left, c.witness});
  return out;
}

namespace {

std::size_t pair_hash(const Bitset& l, const Bitset& r) {
  return l.hash() * 1000003u ^ r.hash();
}

// Deduplicates (left, right) table pairs, assigning dense indices in
// insertion order.
class PairIndex {
 public:
  // Returns the index and whether the pair was new.
  std::pair<int, bool> insert(const Bitset& l, const Bitset& r) {
    auto& bucket = buckets_[pair_hash(l, r)];
    for (int i : bucket)
      if (lefts_[static_cast<std::size_t>(i)] == l && rights_[static_cast<std::size_t>(i)] == r)
        return {i, false};
    int id = static_cast<int>(lefts_.size());
    bucket.push_back(id);
    lefts_.push_back(l);
    rights_.push_back(r);
    return {id, true};
  }

  int size() const { return static_cast<int>(lefts_.size()); }
  const Bitset& left(int i) const { return lefts_[static_cast<std::size_t>(i)]; }
  const Bitset& right(int i) const { return rights_[static_cast<std::size_t>(i)]; }

 private:
  std::unordered_map<std::size_t, std::vector<int>> buckets_;
  std::vector<Bitset> lefts_, rights_;
};

struct Guard {
  const Limits& lim;
  std::uint64_t candidates = 0;
  std::uint64_t classes = 0;

  void candidate(std::uint64_t n = 1) {
    candidates += n;
    if (candidates > lim.max_formulas)
      throw resource_limit_error("max_formulas", lim.max_formulas, candidates);
  }
  void cls() {
    if (++classes > lim.max_fingerprints)
      throw resource_limit_error("max_fingerprints", lim.max_fingerprints, classes);
  }
};

// ── Enumeration engine ─────────────────────────────────────────────────────

struct ScopeClasses {
  PairIndex index;
  std::vector<FormulaPtr> witness;

  int add_if_new(const Bitset& l, const Bitset& r, const FormulaPtr& w, Guard& guard) {
    auto [id, fresh] = index.insert(l, r);
    if (fresh) {
      guard.cls();
      witness.push_back(w);
    }
    return fresh ? id : -1;
  }
};

class EnumEngine {
 public:
  EnumEngine(const StructurePair& pair, const Bounds& b, const EngineOptions& opt)
      : pair_(pair), b_(b), opt_(opt), guard_{opt_.limits} {}

  TypeSystem run() {
    int deepest = std::min(b_.q, b_.v - 1);
    ScopeClasses below;
    for (int k = deepest; k >= 0; --k) {
      ScopeClasses scope = build_scope(k, k < deepest ? &below : nullptr);
      below = std::move(scope);
    }
    TypeSystem ts{pair_, b_, Engine::Enum, {}};
    for (int i = 0; i < below.index.size(); ++i)
      ts.classes.push_back(
          {below.index.left(i), below.index.right(i), below.witness[static_cast<std::size_t>(i)]});
    return ts;
  }

 private:
  const StructurePair& pair_;
  Bounds b_;
  EngineOptions opt_;
  Guard guard_;

  // One conjunction-search state: the accumulated tables, the index of the
  // last base class taken, and the accumulated witness.
  struct Entry {
    Bitset l, r;
    int last;
    FormulaPtr w;
  };

  ScopeClasses build_scope(int k, const ScopeClasses* deeper) {
    const int nvars = k + 1;
    ScopeClasses scope;

    // Literals, canonically ordered.
    std::vector<FormulaPtr> lits = literal_formulas(*pair_.left.sig, nvars, b_.t, opt_.limits);
    guard_.candidate(lits.size());
    std::vector<std::pair<Bitset, Bitset>> tables(lits.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) if (opt_.parallel)
#endif
    for (std::size_t i = 0; i < lits.size(); ++i)
      tables[i] = {extension_table(pair_.left, lits[i], nvars),
                   extension_table(pair_.right, lits[i], nvars)};
    for (std::size_t i = 0; i < lits.size(); ++i)
      scope.add_if_new(tables[i].first, tables[i].second, lits[i], guard_);

    // Quantified formulas over the next scope's classes: all exists first,
    // then all forall, each in class order, so witnesses stay canonically
    // least. The projected tables are cylindrical in z_{k+1}; dropping that
    // coordinate moves them into this scope's context.
    if (deeper) {
      const int nA = pair_.left.size(), nB = pair_.right.size();
      for (int pass = 0; pass < 2; ++pass) {
        bool exists = pass == 0;
        for (int i = 0; i < deeper->index.size(); ++i) {
          guard_.candidate();
          const Bitset& dl = deeper->index.left(i);
          const Bitset& dr = deeper->index.right(i);
          Bitset l = drop_last(exists ? project_exists(dl, nvars, nA)
                                      : project_forall(dl, nvars, nA),
                               nvars + 1, nA);
          Bitset r = drop_last(exists ? project_exists(dr, nvars, nB)
                                      : project_forall(dr, nvars, nB),
                               nvars + 1, nB);
          const FormulaPtr& body = deeper->witness[static_cast<std::size_t>(i)];
          scope.add_if_new(l, r, exists ? make_exists(nvars, body) : make_forall(nvars, body),
                           guard_);
        }
      }
    }

    conjunction_search(scope);
    return scope;
  }

  // Breadth-first over conjunction width. Entries carry the accumulated
  // table pair; extending an entry with a base class intersects tables.
  // An extension that changes nothing is dropped: any wider conjunction
  // through it is reachable without the redundant conjunct, at a width
  // that sorts earlier. Entries are deduplicated by (tables, last index):
  // a same-table entry with a different last index still reaches different
  // extensions, so it must stay.
  void conjunction_search(ScopeClasses& scope) {
    const int nbase = scope.index.size();
    if (b_.c < 2 || nbase == 0) return;

    std::vector<Entry> level;
    for (int i = 0; i < nbase; ++i)
      level.push_back({scope.index.left(i), scope.index.right(i), i,
                       scope.witness[static_cast<std::size_t>(i)]});

    for (int width = 2; width <= b_.c && !level.empty(); ++width) {
      // Tasks in lexicographic combination order; guard before building.
      std::uint64_t ntasks = 0;
      for (const Entry& e : level) ntasks += static_cast<std::uint64_t>(nbase - e.last - 1);
      guard_.candidate(ntasks);
      std::vector<std::pair<int, int>> tasks;
      tasks.reserve(ntasks);
      for (std::size_t e = 0; e < level.size(); ++e)
        for (int j = level[e].last + 1; j < nbase; ++j)
          tasks.emplace_back(static_cast<int>(e), j);

      std::vector<std::pair<Bitset, Bitset>> results(tasks.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (opt_.parallel)
#endif
      for (std::size_t t = 0; t < tasks.size(); ++t) {
        const Entry& e = level[static_cast<std::size_t>(tasks[t].first)];
        results[t] = {e.l & scope.index.left(tasks[t].second),
                      e.r & scope.index.right(tasks[t].second)};
      }

      std::vector<Entry> next;
      // (tables, last) dedup within the next level.
      std::unordered_map<std::size_t, std::vector<std::size_t>> seen_last;
      for (std::size_t t = 0; t < tasks.size(); ++t) {
        const Entry& e = level[static_cast<std::size_t>(tasks[t].first)];
        int j = tasks[t].second;
        Bitset& l = results[t].first;
        Bitset& r = results[t].second;
        if (l == e.l && r == e.r) continue;  // redundant conjunct

        FormulaPtr w = conj({e.w, scope.witness[static_cast<std::size_t>(j)]});
        scope.add_if_new(l, r, w, guard_);

        std::size_t key = pair_hash(l, r) * 31 + static_cast<std::size_t>(j);
        auto& bucket = seen_last[key];
        bool dup = false;
        for (std::size_t idx : bucket) {
          const Entry& o = next[idx];
          if (o.last == j && o.l == l && o.r == r) {
            dup = true;
            break;
          }
        }
        if (dup) continue;
        bucket.push_back(next.size());
        next.push_back({std::move(l), std::move(r), j, std::move(w)});
      }
      level = std::move(next);
    }
  }
};

// ── Closure engine ─────────────────────────────────────────────────────────

class ClosureEngine {
 public:
  ClosureEngine(const StructurePair& pair, const Bounds& b, const EngineOptions& opt)
      : pair_(pair), b_(b), opt_(opt), guard_{opt_.limits} {}

  TypeSystem run() {
    const int v = b_.v;
    const int nA = pair_.left.size(), nB = pair_.right.size();

    // Seeds: every literal over the full v-variable context.
    std::vector<FormulaPtr> lits =
        literal_formulas(*pair_.left.sig, v, b_.t, opt_.limits);
    guard_.candidate(lits.size());
    std::vector<std::pair<Bitset, Bitset>> tables(lits.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) if (opt_.parallel)
#endif
    for (std::size_t i = 0; i < lits.size(); ++i)
      tables[i] = {extension_table(pair_.left, lits[i], v),
                   extension_table(pair_.right, lits[i], v)};
    for (std::size_t i = 0; i < lits.size(); ++i)
      add(tables[i].first, tables[i].second, lits[i]);

    // Close under projection (per z variable, both quantifiers) and
    // pairwise intersection. Rounds keep the derivation order fixed:
    // projections of the round's new classes, then their meets with every
    // earlier class.
    int round_begin = 0;
    while (round_begin < index_.size()) {
      int round_end = index_.size();
      for (int i = round_begin; i < round_end; ++i) {
        for (int var = 1; var < v; ++var) {
          guard_.candidate(2);
          // Copies: add() below can grow the index and move its tables.
          Bitset l = index_.left(i);
          Bitset r = index_.right(i);
          add(project_exists(l, var, nA), project_exists(r, var, nB),
              make_exists(var, witness_[static_cast<std::size_t>(i)]));
          add(project_forall(l, var, nA), project_forall(r, var, nB),
              make_forall(var, witness_[static_cast<std::size_t>(i)]));
        }
      }
      for (int i = round_begin; i < round_end; ++i) {
        for (int j = 0; j < i; ++j) {
          guard_.candidate();
          add(index_.left(i) & index_.left(j), index_.right(i) & index_.right(j),
              conj({witness_[static_cast<std::size_t>(i)], witness_[static_cast<std::size_t>(j)]}));
        }
      }
      round_begin = round_end;
    }

    // Classes that define an element set on both sides: cylindrical in
    // every z coordinate. Such a table is determined by its y-column, so
    // distinct classes yield distinct column pairs.
    TypeSystem ts{pair_, b_, Engine::Closure, {}};
    for (int i = 0; i < index_.size(); ++i) {
      bool cyl = true;
      for (int var = 1; var < v && cyl; ++var)
        cyl = cylindrical(index_.left(i), var, nA) && cylindrical(index_.right(i), var, nB);
      if (!cyl) continue;
      ts.classes.push_back({y_column(index_.left(i), nA), y_column(index_.right(i), nB),
                            close_witness(witness_[static_cast<std::size_t>(i)])});
    }
    return ts;
  }

 private:
  const StructurePair& pair_;
  Bounds b_;
  EngineOptions opt_;
  Guard guard_;
  PairIndex index_;
  std::vector<FormulaPtr> witness_;

  void add(Bitset l, Bitset r, FormulaPtr w) {
    auto [id, fresh] = index_.insert(l, r);
    if (fresh) {
      guard_.cls();
      witness_.push_back(std::move(w));
    }
  }

  // A cylindrical table may be witnessed by a formula with leftover free
  // z variables (the table does not depend on them). Bind them so the
  // witness is a well-formed type member about y alone.
  static FormulaPtr close_witness(FormulaPtr w) {
    std::uint32_t mask = free_var_mask(w) & ~1u;
    for (int var = 31; var >= 1; --var)
      if (mask & (1u << var)) w = make_forall(var, w);
    return w;
  }
};

}  // namespace

TypeSystem build_typesystem(const StructurePair& pair, const Bounds& bounds,
                            const EngineOptions& opt) {
  if (bounds.q < 0 || bounds.c < 1 || bounds.t < 0 || bounds.v < 1)
    throw validation_error("bounds must satisfy q >= 0, c >= 1, t >= 0, v >= 1");
  if (!(*pair.left.sig == *pair.right.sig))
    throw validation_error("structure pair must share one signature");
  pair.left.validate();
  pair.right.validate();
  if (opt.engine == Engine::Enum) return EnumEngine(pair, bounds, opt).run();
  return ClosureEngine(pair, bounds, opt).run();
}

TypeSystem typesystem_from_formulas(const StructurePair& pair,
                                    const std::vector<FormulaPtr>& formulas,
                                    const Bounds& recorded) {
  const int nA = pair.left.size(), nB = pair.right.size();
  TypeSystem ts{pair, recorded, Engine::Enum, {}};
  PairIndex index;
  for (const auto& f : formulas) {
    if ((free_var_mask(f) & ~1u) != 0)
      throw validation_error("type member formulas may only use y free");
    Bitset l(static_cast<std::size_t>(nA)), r(static_cast<std::size_t>(nB));
    for (int a = 0; a < nA; ++a)
      if (evaluate(pair.left, f, {a})) l.set(static_cast<std::size_t>(a));
    for (int b = 0; b < nB; ++b)
      if (evaluate(pair.right, f, {b})) r.set(static_cast<std::size_t>(b));
    if (index.insert(l, r).second) ts.classes.push_back({std::move(l), std::move(r), f});
  }
  return ts;
}

}  // namespace typesim
