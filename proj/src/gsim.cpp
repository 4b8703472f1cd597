#include "typesim/gsim.hpp"

namespace typesim {

GFormula gformula_of(const TermPtr& s) {
  std::uint32_t mask = s->var_mask();
  if (mask & 1u) throw validation_error("term fragment formulas cannot mention y");
  FormulaPtr f = make_eq(Term::variable(0), s);
  for (int v = 31; v >= 1; --v)
    if (mask >> v & 1u) f = make_exists(v, f);
  return {s, f};
}

std::vector<GFormula> enumerate_gformulas(const Signature& sig, int t, int nz,
                                          const Limits& lim) {
  std::vector<GFormula> out;
  for (const TermPtr& s : enumerate_terms(sig, t, nz, lim)) out.push_back(gformula_of(s));
  return out;
}

bool is_gformula(const FormulaPtr& f) {
  int k = 0;
  const Formula* g = f.get();
  while (g->kind == FKind::Exists) {
    if (g->var != ++k) return false;
    g = g->body.get();
  }
  if (g->kind != FKind::Eq) return false;
  TermPtr s;
  if (g->lhs->is_var() && g->lhs->var == 0) s = g->rhs;
  else if (g->rhs->is_var() && g->rhs->var == 0) s = g->lhs;
  else return false;
  // The term must use exactly the bound variables and never y.
  return s->var_mask() == ((std::uint32_t{1} << k) - 1u) << 1;
}

TypeSystem build_gtypesystem(const StructurePair& pair, const Bounds& bounds,
                             const Limits& lim) {
  if (bounds.t < 0 || bounds.v < 1)
    throw validation_error("bounds must satisfy t >= 0, v >= 1");
  if (!(*pair.left.sig == *pair.right.sig))
    throw validation_error("structure pair must share one signature");
  pair.left.validate();
  pair.right.validate();
  std::vector<FormulaPtr> fs;
  for (GFormula& g : enumerate_gformulas(*pair.left.sig, bounds.t, bounds.v - 1, lim))
    fs.push_back(std::move(g.formula));
  return typesystem_from_formulas(pair, fs, bounds);
}

CompareVerdict g_approx(const StructurePair& pair, int a, int b, const Bounds& bounds,
                        const Limits& lim) {
  return compare_elements(build_gtypesystem(pair, bounds, lim), a, b);
}

std::optional<TypeSystem> g_deepen(const TypeSystem& ts, const Limits& lim) {
  Bounds b = ts.bounds;
  ++b.t;
  try {
    return build_gtypesystem(ts.pair, b, lim);
  } catch (const resource_limit_error&) {
    return std::nullopt;
  }
}

}  // namespace typesim
