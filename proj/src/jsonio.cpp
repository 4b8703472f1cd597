#include "typesim/jsonio.hpp"

namespace typesim {

namespace {

Json label_tuples(const Structure& s, const Bitset& table) {
  Json out = Json::array();
  for (int i = 0; i < s.size(); ++i)
    if (table.test(static_cast<std::size_t>(i)))
      out.push_back(Json::array({s.labels[static_cast<std::size_t>(i)]}));
  return out;
}

}  // namespace

std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

Json bounds_json(const Bounds& b) {
  return Json{{"q", b.q}, {"c", b.c}, {"t", b.t}, {"v", b.v}};
}

Json element_verdict_json(const TypeSystem& ts, const std::string& relation, int a,
                          int b, const CompareVerdict& v, bool stabilized,
                          std::size_t justification_count) {
  const bool approx_mode = relation.find("approx") != std::string::npos;
  const bool holds = approx_mode ? v.approx : v.forward.holds;

  Json out;
  out["relation"] = relation;
  out["left"] = ts.pair.left.labels[static_cast<std::size_t>(a)];
  out["right"] = ts.pair.right.labels[static_cast<std::size_t>(b)];
  out["holds"] = holds;
  out["bounds"] = bounds_json(ts.bounds);
  out["engine"] = engine_name(ts.engine);
  if (!holds) {
    const bool backward = approx_mode && v.forward.holds;
    const ElementVerdict& fail = backward ? v.backward : v.forward;
    const Structure& side = backward ? ts.pair.left : ts.pair.right;
    out["dominator"] = side.labels[static_cast<std::size_t>(fail.dominator)];
    out["separating_formula"] = format_formula(fail.separating, *ts.pair.left.sig);
  }
  Json just = Json::array();
  for (const FormulaPtr& f : justification_sample(ts, a, b, justification_count))
    just.push_back(format_formula(f, *ts.pair.left.sig));
  out["justifications"] = just;
  out["stabilized"] = stabilized;
  return out;
}

Json structure_verdict_json(const TypeSystem& ts, const StructureVerdict& v,
                            bool via_lesssim, bool stabilized) {
  Json out;
  out["relation"] = "struct-lesssim";
  out["left"] = ts.pair.left.name;
  out["right"] = ts.pair.right.name;
  out["holds"] = v.holds;
  out["bounds"] = bounds_json(ts.bounds);
  out["engine"] = engine_name(ts.engine);
  out["via"] = via_lesssim ? "lesssim" : "approx";
  Json partners;
  for (int a = 0; a < ts.pair.left.size(); ++a) {
    int p = v.partner[static_cast<std::size_t>(a)];
    partners[ts.pair.left.labels[static_cast<std::size_t>(a)]] =
        p < 0 ? Json(nullptr) : Json(ts.pair.right.labels[static_cast<std::size_t>(p)]);
  }
  out["partners"] = partners;
  out["failing"] = v.failing < 0
                       ? Json(nullptr)
                       : Json(ts.pair.left.labels[static_cast<std::size_t>(v.failing)]);
  out["justifications"] = Json::array();
  out["stabilized"] = stabilized;
  return out;
}

Json type_json(const TypeSystem& ts, int element) {
  Json out;
  out["left"] = ts.pair.left.name;
  out["right"] = ts.pair.right.name;
  out["element"] =
      element < 0 ? Json(nullptr)
                  : Json(ts.pair.left.labels[static_cast<std::size_t>(element)]);
  out["bounds"] = bounds_json(ts.bounds);
  out["engine"] = engine_name(ts.engine);
  out["context"] = Json::array({"y"});
  Json classes = Json::array();
  for (const TypeClass& cl : ts.classes) {
    if (element >= 0 && !cl.left.test(static_cast<std::size_t>(element))) continue;
    Json c;
    c["witness"] = format_formula(cl.witness, *ts.pair.left.sig);
    c["left"] = label_tuples(ts.pair.left, cl.left);
    c["right"] = label_tuples(ts.pair.right, cl.right);
    classes.push_back(std::move(c));
  }
  out["classes"] = std::move(classes);
  return out;
}

Json trial_report_json(const TrialReport& r, bool timings) {
  Json out;
  out["property"] = r.property;
  out["trials"] = r.trials;
  Json viol = Json::array();
  for (const Violation& v : r.violations)
    viol.push_back(Json{{"detail", v.detail}, {"reproducer", v.reproducer}});
  out["violations"] = std::move(viol);
  if (timings) out["elapsed_seconds"] = r.elapsed_seconds;
  return out;
}

Json search_hit_json(const std::string& property, const SearchHit& h) {
  Json out;
  out["property"] = property;
  out["found"] = h.found;
  out["examined"] = h.examined;
  Json names = Json::array();
  for (const Structure& s : h.structures) names.push_back(s.name);
  out["structures"] = std::move(names);
  out["elements"] = h.elements;
  out["detail"] = h.detail;
  out["reproducer"] = h.reproducer;
  return out;
}

Json classify_json(const std::vector<ClassifyRow>& rows) {
  Json out = Json::array();
  for (const ClassifyRow& r : rows) {
    Json row;
    row["name"] = r.structure.name;
    row["size"] = r.structure.size();
    row["text"] = r.structure.to_text();
    row["pair_reflexive"] = r.pair_reflexive;
    row["transitive"] = r.transitive;
    out.push_back(std::move(row));
  }
  return out;
}

}  // namespace typesim
