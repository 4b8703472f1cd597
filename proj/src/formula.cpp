#include "typesim/formula.hpp"

#include <algorithm>

namespace typesim {

namespace {

std::shared_ptr<Formula> mut(FKind k) {
  auto f = std::make_shared<Formula>();
  f->kind = k;
  return f;
}

void flatten_into(std::vector<FormulaPtr>& out, const FormulaPtr& f) {
  if (f->kind == FKind::And)
    for (const auto& c : f->children) flatten_into(out, c);
  else
    out.push_back(f);
}

}  // namespace

FormulaPtr make_eq(TermPtr l, TermPtr r) {
  auto f = mut(FKind::Eq);
  f->lhs = std::move(l);
  f->rhs = std::move(r);
  return f;
}

FormulaPtr make_neq(TermPtr l, TermPtr r) {
  auto f = mut(FKind::Neq);
  f->lhs = std::move(l);
  f->rhs = std::move(r);
  return f;
}

FormulaPtr make_atom(int rel, std::vector<TermPtr> args) {
  auto f = mut(FKind::Atom);
  f->rel = rel;
  f->args = std::move(args);
  return f;
}

FormulaPtr make_neg_atom(int rel, std::vector<TermPtr> args) {
  auto f = mut(FKind::NegAtom);
  f->rel = rel;
  f->args = std::move(args);
  return f;
}

FormulaPtr make_exists(int var, FormulaPtr body) {
  auto f = mut(FKind::Exists);
  f->var = var;
  f->body = std::move(body);
  return f;
}

FormulaPtr make_forall(int var, FormulaPtr body) {
  auto f = mut(FKind::Forall);
  f->var = var;
  f->body = std::move(body);
  return f;
}

FormulaPtr conj(std::vector<FormulaPtr> children) {
  std::vector<FormulaPtr> flat;
  for (const auto& c : children) flatten_into(flat, c);
  std::sort(flat.begin(), flat.end(),
            [](const FormulaPtr& a, const FormulaPtr& b) { return formula_cmp(a, b) < 0; });
  flat.erase(std::unique(flat.begin(), flat.end(),
                         [](const FormulaPtr& a, const FormulaPtr& b) { return formula_eq(a, b); }),
             flat.end());
  if (flat.size() == 1) return flat[0];
  auto f = mut(FKind::And);
  f->children = std::move(flat);
  return f;
}

FormulaPtr conj_keep_order(std::vector<FormulaPtr> children) {
  std::vector<FormulaPtr> flat;
  for (const auto& c : children) flatten_into(flat, c);
  if (flat.size() == 1) return flat[0];
  auto f = mut(FKind::And);
  f->children = std::move(flat);
  return f;
}

FormulaPtr make_or(std::vector<FormulaPtr> children) {
  auto f = mut(FKind::Or);
  f->children = std::move(children);
  return f;
}

FormulaPtr make_not(FormulaPtr body) {
  auto f = mut(FKind::Not);
  f->body = std::move(body);
  return f;
}

int quantifier_depth(const FormulaPtr& f) {
  switch (f->kind) {
    case FKind::Eq:
    case FKind::Neq:
    case FKind::Atom:
    case FKind::NegAtom:
      return 0;
    case FKind::Exists:
    case FKind::Forall:
      return 1 + quantifier_depth(f->body);
    case FKind::Not:
      return quantifier_depth(f->body);
    case FKind::And:
    case FKind::Or: {
      int d = 0;
      for (const auto& c : f->children) d = std::max(d, quantifier_depth(c));
      return d;
    }
  }
  return 0;
}

std::uint32_t free_var_mask(const FormulaPtr& f) {
  switch (f->kind) {
    case FKind::Eq:
    case FKind::Neq:
      return f->lhs->var_mask() | f->rhs->var_mask();
    case FKind::Atom:
    case FKind::NegAtom: {
      std::uint32_t m = 0;
      for (const auto& a : f->args) m |= a->var_mask();
      return m;
    }
    case FKind::Exists:
    case FKind::Forall:
      return free_var_mask(f->body) & ~(1u << f->var);
    case FKind::Not:
      return free_var_mask(f->body);
    case FKind::And:
    case FKind::Or: {
      std::uint32_t m = 0;
      for (const auto& c : f->children) m |= free_var_mask(c);
      return m;
    }
  }
  return 0;
}

int max_conjuncts(const FormulaPtr& f) {
  switch (f->kind) {
    case FKind::Eq:
    case FKind::Neq:
    case FKind::Atom:
    case FKind::NegAtom:
      return 1;
    case FKind::Exists:
    case FKind::Forall:
    case FKind::Not:
      return max_conjuncts(f->body);
    case FKind::And:
    case FKind::Or: {
      int w = f->kind == FKind::And ? static_cast<int>(f->children.size()) : 1;
      for (const auto& c : f->children) w = std::max(w, max_conjuncts(c));
      return w;
    }
  }
  return 1;
}

int max_term_depth(const FormulaPtr& f) {
  switch (f->kind) {
    case FKind::Eq:
    case FKind::Neq:
      return std::max(f->lhs->depth(), f->rhs->depth());
    case FKind::Atom:
    case FKind::NegAtom: {
      int d = 0;
      for (const auto& a : f->args) d = std::max(d, a->depth());
      return d;
    }
    case FKind::Exists:
    case FKind::Forall:
    case FKind::Not:
      return max_term_depth(f->body);
    case FKind::And:
    case FKind::Or: {
      int d = 0;
      for (const auto& c : f->children) d = std::max(d, max_term_depth(c));
      return d;
    }
  }
  return 0;
}

namespace {
std::uint32_t all_var_mask(const FormulaPtr& f) {
  switch (f->kind) {
    case FKind::Eq:
    case FKind::Neq:
      return f->lhs->var_mask() | f->rhs->var_mask();
    case FKind::Atom:
    case FKind::NegAtom: {
      std::uint32_t m = 0;
      for (const auto& a : f->args) m |= a->var_mask();
      return m;
    }
    case FKind::Exists:
    case FKind::Forall:
      return all_var_mask(f->body) | (1u << f->var);
    case FKind::Not:
      return all_var_mask(f->body);
    case FKind::And:
    case FKind::Or: {
      std::uint32_t m = 0;
      for (const auto& c : f->children) m |= all_var_mask(c);
      return m;
    }
  }
  return 0;
}
}  // namespace

int var_span(const FormulaPtr& f) {
  std::uint32_t m = all_var_mask(f);
  return m ? 32 - __builtin_clz(m) : 0;
}

int formula_cmp(const FormulaPtr& a, const FormulaPtr& b) {
  if (a.get() == b.get()) return 0;
  if (a->kind != b->kind) return static_cast<int>(a->kind) - static_cast<int>(b->kind);
  switch (a->kind) {
    case FKind::Eq:
    case FKind::Neq:
      if (int c = term_cmp(a->lhs, b->lhs)) return c;
      return term_cmp(a->rhs, b->rhs);
    case FKind::Atom:
    case FKind::NegAtom:
      if (a->rel != b->rel) return a->rel - b->rel;
      for (std::size_t i = 0; i < a->args.size(); ++i)
        if (int c = term_cmp(a->args[i], b->args[i])) return c;
      return 0;
    case FKind::Exists:
    case FKind::Forall:
      if (a->var != b->var) return a->var - b->var;
      return formula_cmp(a->body, b->body);
    case FKind::Not:
      return formula_cmp(a->body, b->body);
    case FKind::And:
    case FKind::Or: {
      // Graded: narrower conjunctions first, then lexicographic.
      if (a->children.size() != b->children.size())
        return a->children.size() < b->children.size() ? -1 : 1;
      for (std::size_t i = 0; i < a->children.size(); ++i)
        if (int c = formula_cmp(a->children[i], b->children[i])) return c;
      return 0;
    }
  }
  return 0;
}

bool formula_eq(const FormulaPtr& a, const FormulaPtr& b) { return formula_cmp(a, b) == 0; }

namespace {
void collect_violations(const FormulaPtr& f, std::vector<FragmentViolation>& out) {
  switch (f->kind) {
    case FKind::Eq:
    case FKind::Neq:
    case FKind::Atom:
    case FKind::NegAtom:
      return;
    case FKind::Exists:
    case FKind::Forall:
      collect_violations(f->body, out);
      return;
    case FKind::Not:
      out.push_back({"negation of a non-atomic formula", f->pos});
      collect_violations(f->body, out);
      return;
    case FKind::Or:
      out.push_back({"disjunction", f->pos});
      for (const auto& c : f->children) collect_violations(c, out);
      return;
    case FKind::And:
      for (const auto& c : f->children) collect_violations(c, out);
      return;
  }
}
}  // namespace

std::vector<FragmentViolation> validate_conjunctive(const FormulaPtr& f) {
  std::vector<FragmentViolation> out;
  collect_violations(f, out);
  return out;
}

bool Bounds::within(const FormulaPtr& f) const {
  return quantifier_depth(f) <= q && max_conjuncts(f) <= c && max_term_depth(f) <= t &&
         var_span(f) <= v;
}

std::string Bounds::describe() const {
  return "q=" + std::to_string(q) + ",c=" + std::to_string(c) + ",t=" + std::to_string(t) +
         ",v=" + std::to_string(v);
}

std::string format_formula(const FormulaPtr& f, const Signature& sig) {
  switch (f->kind) {
    case FKind::Eq:
      return format_term(f->lhs, sig) + " = " + format_term(f->rhs, sig);
    case FKind::Neq:
      return format_term(f->lhs, sig) + " != " + format_term(f->rhs, sig);
    case FKind::Atom:
    case FKind::NegAtom: {
      std::string out = f->kind == FKind::NegAtom ? "~" : "";
      out += sig.relations().at(static_cast<std::size_t>(f->rel)).name + "(";
      for (std::size_t i = 0; i < f->args.size(); ++i) {
        if (i) out += ", ";
        out += format_term(f->args[i], sig);
      }
      return out + ")";
    }
    case FKind::Exists:
    case FKind::Forall:
      return std::string("(") + (f->kind == FKind::Exists ? "exists " : "forall ") +
             var_name(f->var) + ")(" + format_formula(f->body, sig) + ")";
    case FKind::Not:
      return "~(" + format_formula(f->body, sig) + ")";
    case FKind::And:
    case FKind::Or: {
      const char* sep = f->kind == FKind::And ? " & " : " | ";
      std::string out;
      for (std::size_t i = 0; i < f->children.size(); ++i) {
        if (i) out += sep;
        const auto& c = f->children[i];
        bool wrap = c->kind == FKind::And || c->kind == FKind::Or;
        out += wrap ? "(" + format_formula(c, sig) + ")" : format_formula(c, sig);
      }
      return out;
    }
  }
  return "";
}

}  // namespace typesim
