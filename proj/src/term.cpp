#include "typesim/term.hpp"

#include <algorithm>

namespace typesim {

TermPtr Term::variable(int index) {
  auto t = std::make_shared<Term>();
  t->var = index;
  return t;
}

TermPtr Term::apply(int fn, std::vector<TermPtr> args) {
  auto t = std::make_shared<Term>();
  t->fn = fn;
  t->args = std::move(args);
  return t;
}

int Term::depth() const {
  if (is_var()) return 0;
  int d = 0;
  for (const auto& a : args) d = std::max(d, a->depth());
  return d + 1;
}

std::uint32_t Term::var_mask() const {
  if (is_var()) return 1u << var;
  std::uint32_t m = 0;
  for (const auto& a : args) m |= a->var_mask();
  return m;
}

std::string var_name(int index) {
  return index == 0 ? std::string("y") : "z" + std::to_string(index);
}

int var_index(const std::string& name) {
  if (name == "y") return 0;
  if (name.size() >= 2 && name[0] == 'z') {
    for (std::size_t i = 1; i < name.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(name[i]))) return -1;
    int n = std::stoi(name.substr(1));
    return n >= 1 ? n : -1;
  }
  return -1;
}

int term_cmp(const TermPtr& a, const TermPtr& b) {
  if (a->is_var() != b->is_var()) return a->is_var() ? -1 : 1;
  if (a->is_var()) return a->var - b->var;
  if (a->fn != b->fn) return a->fn - b->fn;
  for (std::size_t i = 0; i < a->args.size(); ++i)
    if (int c = term_cmp(a->args[i], b->args[i])) return c;
  return 0;
}

bool term_eq(const TermPtr& a, const TermPtr& b) { return term_cmp(a, b) == 0; }

std::string format_term(const TermPtr& t, const Signature& sig) {
  if (t->is_var()) return var_name(t->var);
  const Symbol& sym = sig.functions().at(static_cast<std::size_t>(t->fn));
  if (t->args.size() == 2 && symbolic_name(sym.name)) {
    // Infix chains are left-associative, so only a right operand that is
    // itself infix needs parentheses to re-parse to the same tree.
    auto wrap = [&](const TermPtr& s, bool right) {
      std::string txt = format_term(s, sig);
      bool infix = !s->is_var() && s->args.size() == 2 &&
                   symbolic_name(sig.functions()[static_cast<std::size_t>(s->fn)].name);
      return right && infix ? "(" + txt + ")" : txt;
    };
    return wrap(t->args[0], false) + " " + sym.name + " " + wrap(t->args[1], true);
  }
  if (t->args.empty()) return sym.name;
  std::string out = sym.name + "(";
  for (std::size_t i = 0; i < t->args.size(); ++i) {
    if (i) out += ", ";
    out += format_term(t->args[i], sig);
  }
  return out + ")";
}

}  // namespace typesim
