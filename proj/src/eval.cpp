#include "typesim/eval.hpp"

namespace typesim {

int eval_term(const Structure& s, const TermPtr& t, const Assignment& asg) {
  if (t->is_var()) {
    if (t->var >= static_cast<int>(asg.size()) || asg[static_cast<std::size_t>(t->var)] < 0)
      throw validation_error("unassigned variable " + var_name(t->var));
    return asg[static_cast<std::size_t>(t->var)];
  }
  std::vector<int> vals(t->args.size());
  for (std::size_t i = 0; i < t->args.size(); ++i) vals[i] = eval_term(s, t->args[i], asg);
  return s.func_tables[static_cast<std::size_t>(t->fn)][s.encode(vals)];
}

bool evaluate(const Structure& s, const FormulaPtr& f, const Assignment& asg) {
  switch (f->kind) {
    case FKind::Eq:
      return eval_term(s, f->lhs, asg) == eval_term(s, f->rhs, asg);
    case FKind::Neq:
      return eval_term(s, f->lhs, asg) != eval_term(s, f->rhs, asg);
    case FKind::Atom:
    case FKind::NegAtom: {
      std::vector<int> vals(f->args.size());
      for (std::size_t i = 0; i < f->args.size(); ++i) vals[i] = eval_term(s, f->args[i], asg);
      bool held = s.rel_tables[static_cast<std::size_t>(f->rel)][s.encode(vals)] != 0;
      return f->kind == FKind::Atom ? held : !held;
    }
    case FKind::Exists:
    case FKind::Forall: {
      Assignment inner = asg;
      if (f->var >= static_cast<int>(inner.size())) inner.resize(static_cast<std::size_t>(f->var) + 1, -1);
      for (int e = 0; e < s.size(); ++e) {
        inner[static_cast<std::size_t>(f->var)] = e;
        bool held = evaluate(s, f->body, inner);
        if (f->kind == FKind::Exists && held) return true;
        if (f->kind == FKind::Forall && !held) return false;
      }
      return f->kind == FKind::Forall;
    }
    case FKind::Not:
      return !evaluate(s, f->body, asg);
    case FKind::And: {
      for (const auto& c : f->children)
        if (!evaluate(s, c, asg)) return false;
      return true;
    }
    case FKind::Or: {
      for (const auto& c : f->children)
        if (evaluate(s, c, asg)) return true;
      return false;
    }
  }
  return false;
}

Bitset extension_table(const Structure& s, const FormulaPtr& f, int nvars) {
  std::size_t cells = 1;
  for (int i = 0; i < nvars; ++i) cells *= static_cast<std::size_t>(s.size());
  Bitset out(cells);
  Assignment asg(static_cast<std::size_t>(nvars), -1);
  for (std::size_t idx = 0; idx < cells; ++idx) {
    std::size_t rest = idx;
    for (int i = 0; i < nvars; ++i) {
      asg[static_cast<std::size_t>(i)] = static_cast<int>(rest % static_cast<std::size_t>(s.size()));
      rest /= static_cast<std::size_t>(s.size());
    }
    if (evaluate(s, f, asg)) out.set(idx);
  }
  return out;
}

Bitset project_exists(const Bitset& table, int var, int domain) {
  std::size_t cells = table.size();
  Bitset out(cells);
  std::size_t stride = 1;
  for (int i = 0; i < var; ++i) stride *= static_cast<std::size_t>(domain);
  for (std::size_t idx = 0; idx < cells; ++idx) {
    std::size_t coord = (idx / stride) % static_cast<std::size_t>(domain);
    std::size_t base = idx - coord * stride;
    bool any = false;
    for (int e = 0; e < domain && !any; ++e)
      any = table.test(base + static_cast<std::size_t>(e) * stride);
    if (any) out.set(idx);
  }
  return out;
}

Bitset project_forall(const Bitset& table, int var, int domain) {
  std::size_t cells = table.size();
  Bitset out(cells);
  std::size_t stride = 1;
  for (int i = 0; i < var; ++i) stride *= static_cast<std::size_t>(domain);
  for (std::size_t idx = 0; idx < cells; ++idx) {
    std::size_t coord = (idx / stride) % static_cast<std::size_t>(domain);
    std::size_t base = idx - coord * stride;
    bool all = true;
    for (int e = 0; e < domain && all; ++e)
      all = table.test(base + static_cast<std::size_t>(e) * stride);
    if (all) out.set(idx);
  }
  return out;
}

bool cylindrical(const Bitset& table, int var, int domain) {
  std::size_t stride = 1;
  for (int i = 0; i < var; ++i) stride *= static_cast<std::size_t>(domain);
  for (std::size_t idx = 0; idx < table.size(); ++idx) {
    std::size_t coord = (idx / stride) % static_cast<std::size_t>(domain);
    if (coord != 0) continue;
    bool first = table.test(idx);
    for (int e = 1; e < domain; ++e)
      if (table.test(idx + static_cast<std::size_t>(e) * stride) != first) return false;
  }
  return true;
}

Bitset drop_last(const Bitset& table, int nvars, int domain) {
  std::size_t cells = 1;
  for (int i = 0; i + 1 < nvars; ++i) cells *= static_cast<std::size_t>(domain);
  Bitset out(cells);
  for (std::size_t i = 0; i < cells; ++i)
    if (table.test(i)) out.set(i);
  return out;
}

Bitset y_column(const Bitset& table, int domain) {
  Bitset out(static_cast<std::size_t>(domain));
  std::size_t cells = table.size();
  for (std::size_t idx = 0; idx < cells; ++idx)
    if (table.test(idx)) out.set(idx % static_cast<std::size_t>(domain));
  return out;
}

}  // namespace typesim
