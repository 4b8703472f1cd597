#include "typesim/enumerate.hpp"

#include <algorithm>

namespace typesim {

namespace {

void sort_unique_terms(std::vector<TermPtr>& ts) {
  std::sort(ts.begin(), ts.end(),
            [](const TermPtr& a, const TermPtr& b) { return term_cmp(a, b) < 0; });
  ts.erase(std::unique(ts.begin(), ts.end(), term_eq), ts.end());
}

void sort_unique_formulas(std::vector<FormulaPtr>& fs) {
  std::sort(fs.begin(), fs.end(),
            [](const FormulaPtr& a, const FormulaPtr& b) { return formula_cmp(a, b) < 0; });
  fs.erase(std::unique(fs.begin(), fs.end(), formula_eq), fs.end());
}

std::vector<int> nvars_list(int nvars) {
  std::vector<int> vars;
  for (int i = 0; i < nvars; ++i) vars.push_back(i);
  return vars;
}

// Terms over an explicit variable list, grouped by exact depth so each
// level only combines what already exists.
std::vector<TermPtr> terms_over(const Signature& sig, const std::vector<int>& vars, int t,
                                std::uint64_t cap) {
  std::uint64_t made = 0;
  auto tick = [&] {
    if (++made > cap) throw resource_limit_error("max_formulas", cap, made);
  };
  std::vector<std::vector<TermPtr>> by_depth(static_cast<std::size_t>(t) + 1);
  for (int v : vars) by_depth[0].push_back(Term::variable(v));
  for (int d = 1; d <= t; ++d) {
    std::vector<TermPtr> shallower;
    for (int e = 0; e < d; ++e)
      shallower.insert(shallower.end(), by_depth[static_cast<std::size_t>(e)].begin(),
                       by_depth[static_cast<std::size_t>(e)].end());
    for (std::size_t fn = 0; fn < sig.functions().size(); ++fn) {
      int arity = sig.functions()[fn].arity;
      if (arity == 0) {
        if (d == 1) {
          tick();
          by_depth[static_cast<std::size_t>(d)].push_back(Term::apply(static_cast<int>(fn), {}));
        }
        continue;
      }
      // Every argument tuple from shallower levels with at least one
      // argument of depth d-1 (otherwise the term was built earlier).
      std::vector<std::size_t> pick(static_cast<std::size_t>(arity), 0);
      if (shallower.empty()) continue;
      while (true) {
        std::vector<TermPtr> args;
        int maxd = 0;
        for (std::size_t i = 0; i < pick.size(); ++i) {
          args.push_back(shallower[pick[i]]);
          maxd = std::max(maxd, args.back()->depth());
        }
        if (maxd == d - 1) {
          tick();
          by_depth[static_cast<std::size_t>(d)].push_back(
              Term::apply(static_cast<int>(fn), std::move(args)));
        }
        std::size_t i = pick.size();
        while (i > 0 && ++pick[i - 1] == shallower.size()) pick[--i] = 0;
        if (i == 0) break;
      }
    }
  }
  std::vector<TermPtr> all;
  for (auto& level : by_depth) all.insert(all.end(), level.begin(), level.end());
  sort_unique_terms(all);
  return all;
}

std::vector<FormulaPtr> make_literals(const Signature& sig, int nvars, int t,
                                      const Limits& lim) {
  std::vector<TermPtr> terms = terms_over(sig, nvars_list(nvars), t, lim.max_formulas);
  std::uint64_t made = 0;
  auto add = [&](std::vector<FormulaPtr>& out, FormulaPtr f) {
    if (++made > lim.max_formulas)
      throw resource_limit_error("max_formulas", lim.max_formulas, made);
    out.push_back(std::move(f));
  };
  std::vector<FormulaPtr> out;
  // One equation per unordered pair, reflexive pairs included; the
  // canonical orientation puts the larger term on the left.
  for (std::size_t i = 0; i < terms.size(); ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      add(out, make_eq(terms[i], terms[j]));
      add(out, make_neq(terms[i], terms[j]));
    }
  }
  for (std::size_t r = 0; r < sig.relations().size(); ++r) {
    int arity = sig.relations()[r].arity;
    if (terms.empty()) continue;
    std::vector<std::size_t> pick(static_cast<std::size_t>(arity), 0);
    while (true) {
      std::vector<TermPtr> args;
      for (std::size_t idx : pick) args.push_back(terms[idx]);
      add(out, make_atom(static_cast<int>(r), args));
      add(out, make_neg_atom(static_cast<int>(r), std::move(args)));
      std::size_t i = pick.size();
      while (i > 0 && ++pick[i - 1] == terms.size()) pick[--i] = 0;
      if (i == 0) break;
    }
  }
  sort_unique_formulas(out);
  return out;
}

class FormulaEnumerator {
 public:
  FormulaEnumerator(const Signature& sig, const Bounds& b, const Limits& lim)
      : sig_(sig), b_(b), lim_(lim) {}

  std::vector<FormulaPtr> run() {
    int deepest = std::min(b_.q, b_.v - 1);
    // Scope k: k binders are open, the context is [y, z1, ..., zk], and
    // q - k quantifier levels remain. Build deepest first.
    std::vector<std::vector<FormulaPtr>> scope(static_cast<std::size_t>(deepest) + 1);
    for (int k = deepest; k >= 0; --k) {
      std::vector<FormulaPtr> base = literals(k);
      if (k < deepest) {
        for (const auto& body : scope[static_cast<std::size_t>(k) + 1]) {
          add(base, make_exists(k + 1, body));
          add(base, make_forall(k + 1, body));
        }
      }
      sort_unique_formulas(base);
      std::vector<FormulaPtr> out = base;
      conjunctions(base, out);
      sort_unique_formulas(out);
      scope[static_cast<std::size_t>(k)] = std::move(out);
    }
    return std::move(scope[0]);
  }

 private:
  const Signature& sig_;
  Bounds b_;
  Limits lim_;
  std::uint64_t made_ = 0;

  void add(std::vector<FormulaPtr>& out, FormulaPtr f) {
    if (++made_ > lim_.max_formulas)
      throw resource_limit_error("max_formulas", lim_.max_formulas, made_);
    out.push_back(std::move(f));
  }

  std::vector<FormulaPtr> literals(int k) {
    std::vector<FormulaPtr> out = literal_formulas(sig_, k + 1, b_.t, lim_);
    made_ += out.size();
    if (made_ > lim_.max_formulas)
      throw resource_limit_error("max_formulas", lim_.max_formulas, made_);
    return out;
  }

  // And nodes over 2..c distinct base formulas. Base is sorted, so taking
  // ascending index combinations keeps children canonical with no resort.
  void conjunctions(const std::vector<FormulaPtr>& base, std::vector<FormulaPtr>& out) {
    std::vector<FormulaPtr> children;
    descend(base, 0, children, out);
  }

  void descend(const std::vector<FormulaPtr>& base, std::size_t from,
               std::vector<FormulaPtr>& children, std::vector<FormulaPtr>& out) {
    if (static_cast<int>(children.size()) >= b_.c) return;
    for (std::size_t i = from; i < base.size(); ++i) {
      children.push_back(base[i]);
      if (children.size() >= 2) add(out, conj(children));
      descend(base, i + 1, children, out);
      children.pop_back();
    }
  }
};

}  // namespace

std::vector<TermPtr> context_terms(const Signature& sig, int nvars, int t) {
  return terms_over(sig, nvars_list(nvars), t, Limits{}.max_formulas);
}

std::vector<FormulaPtr> literal_formulas(const Signature& sig, int nvars, int t,
                                         const Limits& lim) {
  return make_literals(sig, nvars, t, lim);
}

std::vector<FormulaPtr> enumerate_formulas(const Signature& sig, const Bounds& b,
                                           const Limits& lim) {
  if (b.q < 0 || b.c < 1 || b.t < 0 || b.v < 1)
    throw validation_error("bounds must satisfy q >= 0, c >= 1, t >= 0, v >= 1");
  return FormulaEnumerator(sig, b, lim).run();
}

std::vector<TermPtr> enumerate_terms(const Signature& sig, int t, int v, const Limits& lim) {
  if (t < 0 || v < 0) throw validation_error("bounds must satisfy t >= 0, v >= 0");
  std::vector<int> vars;
  for (int i = 1; i <= v; ++i) vars.push_back(i);
  std::vector<TermPtr> all = terms_over(sig, vars, t, lim.max_formulas);

  // Keep only canonically numbered terms: scanning left to right, the i-th
  // distinct variable to appear must be z_i.
  std::vector<TermPtr> out;
  for (const auto& term : all) {
    std::vector<int> order;
    bool canonical = true;
    auto walk = [&](auto&& self, const TermPtr& s) -> void {
      if (!canonical) return;
      if (s->is_var()) {
        if (std::find(order.begin(), order.end(), s->var) == order.end()) {
          order.push_back(s->var);
          if (s->var != static_cast<int>(order.size())) canonical = false;
        }
        return;
      }
      for (const auto& a : s->args) self(self, a);
    };
    walk(walk, term);
    if (canonical) out.push_back(term);
  }
  return out;
}

}  // namespace typesim
