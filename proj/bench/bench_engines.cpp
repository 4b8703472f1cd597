#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "typesim/enumerate.hpp"
#include "typesim/explorer.hpp"
#include "typesim/typesystem.hpp"

// Wall-clock comparison of the engines against the formula-list reference on
// self-contained workloads. Where the parallel and serial enumeration runs
// both finish they must produce identical classes, and the reference the
// same class count; a "cap" cell means that path exceeded the default
// formula budget, which is itself part of the comparison.

namespace {

using namespace typesim;

std::optional<double> best_of(int reps, const std::function<std::size_t()>& fn,
                              std::size_t* classes = nullptr) {
  double best = 1e18;
  try {
    for (int i = 0; i < reps; ++i) {
      const auto t0 = std::chrono::steady_clock::now();
      const std::size_t n = fn();
      best = std::min(
          best,
          std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
              .count());
      if (classes) *classes = n;
    }
  } catch (const resource_limit_error&) {
    return std::nullopt;
  }
  return best;
}

void print_cell(const std::optional<double>& t) {
  if (t)
    std::printf(" %9.2f ms", *t * 1e3);
  else
    std::printf(" %12s", "cap");
}

// Saturating addition on 0..n-1: f(i, j) = min(i + j, n - 1).
Structure saturating_add(int n, const std::string& name) {
  Structure s;
  s.name = name;
  auto sig = std::make_shared<Signature>();
  sig->add_function("+", 2);
  s.sig = sig;
  for (int i = 0; i < n; ++i) s.labels.push_back(std::to_string(i));
  std::vector<int> table(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      table[static_cast<std::size_t>(i + j * n)] = std::min(i + j, n - 1);
  s.func_tables.push_back(std::move(table));
  s.validate();
  return s;
}

struct Work {
  std::string name;
  StructurePair pair;
  Bounds bounds;
};

}  // namespace

int main() {
  std::vector<Work> workloads;
  workloads.push_back({"add4 vs add5, q2 c1 t1 v2",
                       {saturating_add(4, "A"), saturating_add(5, "B"), true},
                       Bounds{.q = 2, .c = 1, .t = 1, .v = 2}});
  workloads.push_back({"add4 self, q2 c2 t1 v2",
                       {saturating_add(4, "A"), saturating_add(4, "B"), true},
                       Bounds{.q = 2, .c = 2, .t = 1, .v = 2}});
  {
    Signature r2 = Signature::parse_spec("R:2");
    workloads.push_back({"random R:2 n5, q2 c2 t1 v2",
                         {random_structure(r2, 5, 101), random_structure(r2, 5, 102),
                          true},
                         Bounds{.q = 2, .c = 2, .t = 1, .v = 2}});
  }
  {
    Signature f1 = Signature::parse_spec("f:1");
    workloads.push_back({"random f:1 n6, q3 c2 t1 v2",
                         {random_structure(f1, 6, 103), random_structure(f1, 6, 104),
                          true},
                         Bounds{.q = 3, .c = 2, .t = 1, .v = 2}});
  }

  std::printf("%-28s %8s %12s %12s %12s %12s %8s\n", "workload", "classes",
              "enum-par", "enum-serial", "reference", "closure", "par/ser");
  int bad = 0;
  for (const Work& w : workloads) {
    EngineOptions par;
    EngineOptions ser;
    ser.parallel = false;
    EngineOptions clo;
    clo.engine = Engine::Closure;

    std::optional<TypeSystem> sys_par, sys_ser, sys_ref;
    try {
      sys_par = build_typesystem(w.pair, w.bounds, par);
      sys_ser = build_typesystem(w.pair, w.bounds, ser);
    } catch (const resource_limit_error&) {
    }
    try {
      sys_ref = typesystem_from_formulas(
          w.pair, enumerate_formulas(*w.pair.left.sig, w.bounds), w.bounds);
    } catch (const resource_limit_error&) {
    }

    bool agree = true;
    if (sys_par && sys_ser) {
      agree = sys_par->classes.size() == sys_ser->classes.size();
      for (std::size_t i = 0; agree && i < sys_par->classes.size(); ++i)
        agree = sys_par->classes[i].left == sys_ser->classes[i].left &&
                sys_par->classes[i].right == sys_ser->classes[i].right;
    }
    if (sys_par && sys_ref)
      agree = agree && sys_par->classes.size() == sys_ref->classes.size();
    if (!agree) {
      std::printf("%-28s ENGINE DISAGREEMENT\n", w.name.c_str());
      ++bad;
      continue;
    }

    std::size_t classes = 0;
    const auto t_par = best_of(3, [&] {
      return build_typesystem(w.pair, w.bounds, par).classes.size();
    }, &classes);
    const auto t_ser = best_of(
        3, [&] { return build_typesystem(w.pair, w.bounds, ser).classes.size(); });
    const auto t_ref = best_of(1, [&] {
      return typesystem_from_formulas(
                 w.pair, enumerate_formulas(*w.pair.left.sig, w.bounds), w.bounds)
          .classes.size();
    });
    const auto t_clo = best_of(
        3, [&] { return build_typesystem(w.pair, w.bounds, clo).classes.size(); });

    if (t_par)
      std::printf("%-28s %8zu", w.name.c_str(), classes);
    else
      std::printf("%-28s %8s", w.name.c_str(), "-");
    print_cell(t_par);
    print_cell(t_ser);
    print_cell(t_ref);
    print_cell(t_clo);
    if (t_par && t_ser)
      std::printf(" %7.2fx\n", *t_ser / *t_par);
    else
      std::printf(" %8s\n", "-");
  }
  return bad ? 1 : 0;
}
