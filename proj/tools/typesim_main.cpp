#include <cstdint>
#include <cstdio>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "typesim/explorer.hpp"
#include "typesim/gsim.hpp"
#include "typesim/jsonio.hpp"

namespace {

using namespace typesim;

// Modifiers shared by every subcommand, so invocations stay uniform.
struct Options {
  std::string bounds_text;
  std::string engine = "enum";
  std::string fragment = "c";
  bool distinct_domains = false;
  bool struct_via_lesssim = false;
  bool element_params = false;
  std::string format = "text";
  std::uint64_t seed = 1;
  std::uint64_t max_formulas = 0;
  bool assert_verdict = false;
  bool timings = false;

  bool json() const { return format == "json"; }

  Bounds bounds() const {
    Bounds b;
    if (bounds_text.empty()) return b;
    char tail = 0;
    if (std::sscanf(bounds_text.c_str(), "%d,%d,%d,%d%c", &b.q, &b.c, &b.t, &b.v,
                    &tail) != 4 ||
        b.q < 0 || b.c < 0 || b.t < 0 || b.v < 0)
      throw validation_error("--bounds wants four non-negative integers q,c,t,v");
    return b;
  }

  EngineOptions engine_options() const {
    EngineOptions opt;
    opt.engine = engine == "closure" ? Engine::Closure : Engine::Enum;
    if (max_formulas) opt.limits.max_formulas = max_formulas;
    return opt;
  }
};

void add_common(CLI::App* cmd, Options& o) {
  cmd->add_option("--bounds", o.bounds_text, "bounds as q,c,t,v (default 2,2,1,2)");
  cmd->add_option("--engine", o.engine, "type system engine")
      ->check(CLI::IsMember({"enum", "closure"}));
  cmd->add_option("--fragment", o.fragment, "conjunctive (c) or term-image (g) formulas")
      ->check(CLI::IsMember({"c", "g"}));
  cmd->add_flag("--distinct-domains", o.distinct_domains,
                "ignore label identity between the two structures");
  cmd->add_flag("--struct-via-lesssim", o.struct_via_lesssim,
                "structure verdict asks one-sided similarity per element");
  cmd->add_flag("--element-params", o.element_params,
                "add a constant for every label the two domains share");
  cmd->add_option("--format", o.format, "output format")
      ->check(CLI::IsMember({"text", "json"}));
  cmd->add_option("--seed", o.seed, "master seed for randomized suites");
  cmd->add_option("--max-formulas", o.max_formulas, "cap on enumerated formulas");
  cmd->add_flag("--assert", o.assert_verdict, "exit 1 when the computed relation fails");
  cmd->add_flag("--timings", o.timings, "include wall-clock timings in reports");
}

int element_of(const Structure& s, const std::string& label) {
  int i = s.element(label);
  if (i < 0)
    throw validation_error("no element '" + label + "' in structure " + s.name);
  return i;
}

std::pair<std::string, std::string> split_colon(const std::string& s) {
  auto p = s.find(':');
  if (p == std::string::npos || p == 0 || p + 1 == s.size())
    throw validation_error("element pair must look like LEFT:RIGHT, got '" + s + "'");
  return {s.substr(0, p), s.substr(p + 1)};
}

StructurePair load_pair(const std::string& path, const std::string& left,
                        const std::string& right, const Options& o) {
  StructureFile file = load_structures(path);
  StructurePair pair{file.get(left), file.get(right.empty() ? left : right),
                     !o.distinct_domains};
  if (o.element_params) pair = with_element_params(pair);
  return pair;
}

TypeSystem build_system(const StructurePair& pair, const Options& o) {
  if (o.fragment == "g") {
    if (o.engine == "closure")
      throw validation_error("the term-image fragment has no closure engine");
    return build_gtypesystem(pair, o.bounds(), o.engine_options().limits);
  }
  return build_typesystem(pair, o.bounds(), o.engine_options());
}

std::optional<TypeSystem> deepened(const TypeSystem& ts, const Options& o) {
  return o.fragment == "g" ? g_deepen(ts, o.engine_options().limits)
                           : deepen(ts, o.engine_options());
}

std::string relation_name(const Options& o, const std::string& base) {
  return o.fragment == "g" ? "g-" + base : base;
}

void print_header(const Options& o, const TypeSystem& ts) {
  std::cout << "# bounds " << ts.bounds.describe() << "; engine "
            << engine_name(ts.engine) << "; fragment " << o.fragment << "\n";
}

std::string label_set(const Structure& s, const Bitset& table) {
  std::string out = "{";
  bool first = true;
  for (int i = 0; i < s.size(); ++i)
    if (table.test(static_cast<std::size_t>(i))) {
      if (!first) out += ", ";
      out += s.labels[static_cast<std::size_t>(i)];
      first = false;
    }
  return out + "}";
}

void print_element_line(const TypeSystem& ts, const std::string& rel, int a, int b,
                        const CompareVerdict& v, bool approx_mode, bool stabilized) {
  const Structure& L = ts.pair.left;
  const Structure& R = ts.pair.right;
  const bool holds = approx_mode ? v.approx : v.forward.holds;
  std::cout << L.labels[static_cast<std::size_t>(a)] << " " << rel << " "
            << R.labels[static_cast<std::size_t>(b)] << ": "
            << (holds ? "holds" : "FAILS")
            << (stabilized ? " [stabilized]" : " [not stabilized]") << "\n";
  if (!holds) {
    const bool backward = approx_mode && v.forward.holds;
    const ElementVerdict& fail = backward ? v.backward : v.forward;
    const Structure& side = backward ? L : R;
    std::cout << "  dominator " << side.labels[static_cast<std::size_t>(fail.dominator)]
              << " (" << (backward ? "left" : "right") << "), separating "
              << format_formula(fail.separating, *L.sig) << "\n";
  }
}

// ── check ──────────────────────────────────────────────────────────────────

struct CheckArgs {
  std::vector<std::string> paths;
};

bool run_check(const CheckArgs& a, const Options& o) {
  Json rows = Json::array();
  std::vector<std::string> lines;
  bool all_ok = true;
  for (const std::string& path : a.paths) {
    Json row;
    row["path"] = path;
    try {
      StructureFile file = load_structures(path);
      row["ok"] = true;
      row["signature"] = file.sig->describe();
      Json names = Json::array();
      std::string joined;
      for (const Structure& s : file.structures) {
        names.push_back(s.name);
        joined += (joined.empty() ? "" : ", ") + s.name;
      }
      row["structures"] = std::move(names);
      lines.push_back(path + ": ok (signature " + file.sig->describe() +
                      "; structures " + joined + ")");
    } catch (const parse_error& e) {
      all_ok = false;
      row["ok"] = false;
      row["error"] = e.what();
      row["line"] = e.line;
      row["col"] = e.col;
      lines.push_back(path + ": error at " + std::to_string(e.line) + ":" +
                      std::to_string(e.col) + ": " + e.what());
    } catch (const std::exception& e) {
      all_ok = false;
      row["ok"] = false;
      row["error"] = e.what();
      lines.push_back(path + ": error: " + e.what());
    }
    rows.push_back(std::move(row));
  }
  if (o.json())
    std::cout << dump_json(rows);
  else
    for (const std::string& l : lines) std::cout << l << "\n";
  return !all_ok;
}

// ── type ───────────────────────────────────────────────────────────────────

struct TypeArgs {
  std::string path, left, right, element;
  std::string side = "left";
};

bool run_type(const TypeArgs& a, const Options& o) {
  StructurePair pair = load_pair(a.path, a.left, a.right, o);
  if (a.side == "right") pair = pair.swapped();
  TypeSystem ts = build_system(pair, o);
  const int idx = a.element.empty() ? -1 : element_of(pair.left, a.element);
  if (o.json()) {
    std::cout << dump_json(type_json(ts, idx));
    return false;
  }
  print_header(o, ts);
  int shown = 0;
  for (const TypeClass& cl : ts.classes) {
    if (idx >= 0 && !cl.left.test(static_cast<std::size_t>(idx))) continue;
    ++shown;
    std::cout << format_formula(cl.witness, *pair.left.sig) << "  left="
              << label_set(pair.left, cl.left) << "  right="
              << label_set(pair.right, cl.right) << "\n";
  }
  std::cout << "# " << shown << " classes\n";
  return false;
}

// ── compare ────────────────────────────────────────────────────────────────

struct CompareArgs {
  std::string path, left, right;
  std::string relation = "lesssim";
  std::vector<std::string> pairs;
};

bool run_compare(const CompareArgs& a, const Options& o) {
  StructurePair pair = load_pair(a.path, a.left, a.right, o);
  TypeSystem ts = build_system(pair, o);
  std::optional<TypeSystem> deep = deepened(ts, o);

  if (a.relation == "struct") {
    if (!a.pairs.empty())
      throw validation_error("--pairs makes no sense with --relation struct");
    StructureVerdict v = check_structures(ts, o.struct_via_lesssim);
    const bool stab =
        deep && same_outcome(v, check_structures(*deep, o.struct_via_lesssim));
    if (o.json()) {
      Json out = structure_verdict_json(ts, v, o.struct_via_lesssim, stab);
      out["relation"] = relation_name(o, "struct-lesssim");
      std::cout << dump_json(out);
    } else {
      print_header(o, ts);
      std::cout << pair.left.name << " " << relation_name(o, "struct-lesssim") << " "
                << pair.right.name << " (via "
                << (o.struct_via_lesssim ? "lesssim" : "approx")
                << "): " << (v.holds ? "holds" : "FAILS")
                << (stab ? " [stabilized]" : " [not stabilized]") << "\n";
      for (int x = 0; x < pair.left.size(); ++x) {
        int p = v.partner[static_cast<std::size_t>(x)];
        std::cout << "  " << pair.left.labels[static_cast<std::size_t>(x)] << " -> "
                  << (p < 0 ? std::string("(none)")
                            : pair.right.labels[static_cast<std::size_t>(p)])
                  << "\n";
      }
    }
    return !v.holds;
  }

  const bool approx_mode = a.relation == "approx";
  std::vector<std::pair<int, int>> want;
  for (const std::string& p : a.pairs) {
    auto [l, r] = split_colon(p);
    want.emplace_back(element_of(pair.left, l), element_of(pair.right, r));
  }
  if (want.empty())
    for (int x = 0; x < pair.left.size(); ++x)
      for (int y = 0; y < pair.right.size(); ++y) want.emplace_back(x, y);

  const std::string rel = relation_name(o, a.relation);
  Json arr = Json::array();
  bool all_hold = true;
  if (!o.json()) print_header(o, ts);
  for (auto [x, y] : want) {
    CompareVerdict v = compare_elements(ts, x, y);
    bool stab = false;
    if (deep) {
      CompareVerdict w = compare_elements(*deep, x, y);
      stab = approx_mode ? same_outcome(v, w) : same_outcome(v.forward, w.forward);
    }
    all_hold = all_hold && (approx_mode ? v.approx : v.forward.holds);
    if (o.json())
      arr.push_back(element_verdict_json(ts, rel, x, y, v, stab, 3));
    else
      print_element_line(ts, rel, x, y, v, approx_mode, stab);
  }
  if (o.json()) std::cout << dump_json(arr.size() == 1 ? arr.front() : arr);
  return !all_hold;
}

// ── justify ────────────────────────────────────────────────────────────────

struct JustifyArgs {
  std::string path, left, right, pair;
  bool characteristic = false;
  int max_size = 2;
  int count = 5;
};

bool run_justify(const JustifyArgs& a, const Options& o) {
  StructurePair pair = load_pair(a.path, a.left, a.right, o);
  TypeSystem ts = build_system(pair, o);
  auto [ll, rl] = split_colon(a.pair);
  const int x = element_of(pair.left, ll);
  const int y = element_of(pair.right, rl);

  CompareVerdict v = compare_elements(ts, x, y);
  std::optional<TypeSystem> deep = deepened(ts, o);
  const bool stab = deep && same_outcome(v, compare_elements(*deep, x, y));

  std::optional<std::vector<FormulaPtr>> J;
  if (a.characteristic) J = find_characteristic(ts, x, y, a.max_size);
  const std::string rel = relation_name(o, "approx");

  if (o.json()) {
    Json out = element_verdict_json(ts, rel, x, y, v, stab,
                                    static_cast<std::size_t>(a.count));
    if (a.characteristic) {
      out.erase("stabilized");
      if (J) {
        Json arr = Json::array();
        for (const FormulaPtr& f : *J) arr.push_back(format_formula(f, *pair.left.sig));
        out["characteristic"] = std::move(arr);
      } else {
        out["characteristic"] = nullptr;
      }
      out["stabilized"] = stab;
    }
    std::cout << dump_json(out);
  } else {
    print_header(o, ts);
    print_element_line(ts, rel, x, y, v, true, stab);
    std::cout << "justifications:\n";
    for (const FormulaPtr& f :
         justification_sample(ts, x, y, static_cast<std::size_t>(a.count)))
      std::cout << "  " << format_formula(f, *pair.left.sig) << "\n";
    if (a.characteristic) {
      if (J) {
        std::cout << "characteristic (size " << J->size() << "):\n";
        if (J->empty()) std::cout << "  (the empty set suffices)\n";
        for (const FormulaPtr& f : *J)
          std::cout << "  " << format_formula(f, *pair.left.sig) << "\n";
      } else {
        std::cout << "characteristic: none up to size " << a.max_size << "\n";
      }
    }
  }
  return !v.approx || (a.characteristic && !J);
}

// ── verify ─────────────────────────────────────────────────────────────────

struct VerifyArgs {
  std::string property;
  std::string signature = "f:1";
  std::string sizes;
  int trials = 100;
};

bool run_verify(const VerifyArgs& a, const Options& o) {
  if (o.fragment == "g")
    throw validation_error("verify runs on the conjunctive fragment");
  Signature sig = Signature::parse_spec(a.signature);
  TrialConfig cfg;
  cfg.trials = a.trials;
  cfg.bounds = o.bounds();
  cfg.seed = o.seed;
  cfg.options = o.engine_options();
  if (!a.sizes.empty()) {
    char tail = 0;
    if (std::sscanf(a.sizes.c_str(), "%d:%d%c", &cfg.min_size, &cfg.max_size, &tail) !=
            2 ||
        cfg.min_size < 1 || cfg.max_size < cfg.min_size)
      throw validation_error("--sizes wants MIN:MAX with 1 <= MIN <= MAX");
  }
  TrialReport r = verify_theorem(a.property, sig, cfg);
  if (o.json()) {
    std::cout << dump_json(trial_report_json(r, o.timings));
  } else {
    std::cout << r.property << ": " << r.trials << " trials, " << r.violations.size()
              << " violations";
    if (o.timings)
      std::cout << " (" << std::fixed << std::setprecision(2) << r.elapsed_seconds
                << " s)";
    std::cout << "\n";
    for (const Violation& v : r.violations) std::cout << "  " << v.detail << "\n";
  }
  return !r.violations.empty();
}

// ── search ─────────────────────────────────────────────────────────────────

struct SearchArgs {
  std::string property;
  std::string signature = "f:1";
  int max_size = 3;
  bool classify = false;
};

bool run_search(const SearchArgs& a, const Options& o) {
  if (o.fragment == "g")
    throw validation_error("search runs on the conjunctive fragment");
  Signature sig = Signature::parse_spec(a.signature);

  if (a.classify) {
    auto rows = classify_structures(sig, a.max_size, o.bounds(), o.engine_options());
    if (o.json()) {
      std::cout << dump_json(classify_json(rows));
    } else {
      std::cout << "#    size  pair-reflexive  transitive\n";
      for (std::size_t i = 0; i < rows.size(); ++i)
        std::cout << std::left << std::setw(5) << i << std::setw(6)
                  << rows[i].structure.size() << std::setw(16)
                  << (rows[i].pair_reflexive ? "yes" : "no")
                  << (rows[i].transitive ? "yes" : "no") << "\n";
    }
    return false;
  }

  if (a.property.empty())
    throw validation_error("search wants --property or --classify");
  SearchHit h = search_counterexample(a.property, sig, a.max_size, o.bounds(),
                                      o.engine_options());
  if (o.json()) {
    std::cout << dump_json(search_hit_json(a.property, h));
  } else if (h.found) {
    std::cout << a.property << ": counterexample found (" << h.examined
              << " candidates examined)\n"
              << "detail: " << h.detail << "\nreproducer:\n"
              << h.reproducer;
  } else {
    std::cout << a.property << ": no counterexample up to size " << a.max_size << " ("
              << h.examined << " candidates examined)\n";
  }
  return h.found;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"similarity of elements of finite structures via bounded conjunctive types"};
  app.require_subcommand(1);

  Options o;
  CheckArgs check_args;
  TypeArgs type_args;
  CompareArgs compare_args;
  JustifyArgs justify_args;
  VerifyArgs verify_args;
  SearchArgs search_args;

  CLI::App* c_check = app.add_subcommand("check", "parse and validate structure files");
  c_check->add_option("files", check_args.paths, "structure files")->required();
  add_common(c_check, o);

  CLI::App* c_type =
      app.add_subcommand("type", "dump the bounded type classes of an element");
  c_type->add_option("file", type_args.path, "structure file")->required();
  c_type->add_option("--left", type_args.left, "left structure name")->required();
  c_type->add_option("--right", type_args.right, "right structure name (default: left)");
  c_type->add_option("--element", type_args.element, "element label (default: all classes)");
  c_type->add_option("--side", type_args.side, "which side the element lives on")
      ->check(CLI::IsMember({"left", "right"}));
  add_common(c_type, o);

  CLI::App* c_compare =
      app.add_subcommand("compare", "element or structure similarity verdicts");
  c_compare->add_option("file", compare_args.path, "structure file")->required();
  c_compare->add_option("--left", compare_args.left, "left structure name")->required();
  c_compare->add_option("--right", compare_args.right, "right structure name (default: left)");
  c_compare->add_option("--pairs", compare_args.pairs,
                        "element pairs LEFT:RIGHT (default: full matrix)")
      ->delimiter(',');
  c_compare->add_option("--relation", compare_args.relation, "relation to decide")
      ->check(CLI::IsMember({"lesssim", "approx", "struct"}));
  add_common(c_compare, o);

  CLI::App* c_justify =
      app.add_subcommand("justify", "justifications and characteristic sets");
  c_justify->add_option("file", justify_args.path, "structure file")->required();
  c_justify->add_option("--left", justify_args.left, "left structure name")->required();
  c_justify->add_option("--right", justify_args.right, "right structure name (default: left)");
  c_justify->add_option("--pair", justify_args.pair, "element pair LEFT:RIGHT")->required();
  c_justify->add_flag("--characteristic", justify_args.characteristic,
                      "search for a smallest characteristic set");
  c_justify->add_option("--max-size", justify_args.max_size,
                        "largest characteristic set size to try");
  c_justify->add_option("--count", justify_args.count, "justification sample size");
  add_common(c_justify, o);

  CLI::App* c_verify = app.add_subcommand("verify", "run one exact-law trial suite");
  c_verify
      ->add_option("--property", verify_args.property,
                   "fit | sit | iso-lemma | symmetry | reflexivity")
      ->required();
  c_verify->add_option("--signature", verify_args.signature, "signature spec, e.g. f:1,R:2");
  c_verify->add_option("--trials", verify_args.trials, "number of trials");
  c_verify->add_option("--sizes", verify_args.sizes, "domain size range MIN:MAX");
  add_common(c_verify, o);

  CLI::App* c_search =
      app.add_subcommand("search", "exhaustive counterexample search or classification");
  c_search->add_option("--property", search_args.property,
                       "pair-reflexivity | transitivity | hom-incompatibility");
  c_search->add_option("--signature", search_args.signature, "signature spec");
  c_search->add_option("--max-size", search_args.max_size, "largest domain size");
  c_search->add_flag("--classify", search_args.classify,
                     "bucket all small structures by reflexivity/transitivity");
  add_common(c_search, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    bool failed = false;
    if (c_check->parsed()) failed = run_check(check_args, o);
    else if (c_type->parsed()) failed = run_type(type_args, o);
    else if (c_compare->parsed()) failed = run_compare(compare_args, o);
    else if (c_justify->parsed()) failed = run_justify(justify_args, o);
    else if (c_verify->parsed()) failed = run_verify(verify_args, o);
    else if (c_search->parsed()) failed = run_search(search_args, o);
    return failed && o.assert_verdict ? 1 : 0;
  } catch (const resource_limit_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const parse_error& e) {
    std::cerr << "error: " << e.what() << " (line " << e.line << ", column " << e.col
              << ")\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
