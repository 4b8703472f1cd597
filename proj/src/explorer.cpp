#include "typesim/explorer.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <set>

namespace typesim {

namespace {

// Unbiased draw from [0, n).
int next_below(std::mt19937_64& rng, int n) {
  const std::uint64_t bound = ~std::uint64_t{0} - ~std::uint64_t{0} % static_cast<std::uint64_t>(n);
  std::uint64_t x;
  do x = rng(); while (x >= bound);
  return static_cast<int>(x % static_cast<std::uint64_t>(n));
}

std::vector<std::string> make_labels(const std::string& prefix, int n) {
  std::vector<std::string> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

std::size_t pow_count(int base, int exp) {
  std::size_t r = 1;
  for (int i = 0; i < exp; ++i) r *= static_cast<std::size_t>(base);
  return r;
}

Structure blank_structure(const Signature& sig, int size, const std::string& prefix,
                          const std::string& name) {
  Structure s;
  s.name = name;
  s.sig = std::make_shared<Signature>(sig);
  s.labels = make_labels(prefix, size);
  for (const Symbol& f : sig.functions())
    s.func_tables.emplace_back(pow_count(size, f.arity), 0);
  for (const Symbol& r : sig.relations())
    s.rel_tables.emplace_back(pow_count(size, r.arity), 0);
  return s;
}

Structure random_structure_rng(const Signature& sig, int size, std::mt19937_64& rng,
                               const std::string& prefix, const std::string& name) {
  Structure s = blank_structure(sig, size, prefix, name);
  for (auto& table : s.func_tables)
    for (int& e : table) e = next_below(rng, size);
  for (auto& table : s.rel_tables)
    for (char& b : table) b = static_cast<char>(rng() & 1u);
  return s;
}

std::vector<int> random_perm(int n, std::mt19937_64& rng) {
  std::vector<int> p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  for (int i = n - 1; i > 0; --i) std::swap(p[static_cast<std::size_t>(i)],
                                            p[static_cast<std::size_t>(next_below(rng, i + 1))]);
  return p;
}

std::string table_key(const Structure& s) {
  std::string k;
  for (const auto& t : s.func_tables) {
    for (int e : t) {
      k += std::to_string(e);
      k += ',';
    }
    k += ';';
  }
  for (const auto& t : s.rel_tables) {
    for (char b : t) k += b ? '1' : '0';
    k += ';';
  }
  return k;
}

// Least table encoding over label permutations, applied jointly to every
// structure in the tuple (they share one label set).
std::string joint_canonical_key(const std::vector<const Structure*>& tuple) {
  const int n = tuple[0]->size();
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  std::string best;
  do {
    std::string k;
    for (const Structure* s : tuple) {
      k += table_key(permuted(*s, perm, "", s->name));
      k += '|';
    }
    if (best.empty() || k < best) best = std::move(k);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

std::string canonical_key(const Structure& s) { return joint_canonical_key({&s}); }

std::string file_text(const std::vector<Structure>& structures) {
  StructureFile file{structures.front().sig, structures};
  return format_structure_file(file);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

Structure random_structure(const Signature& sig, int size, std::uint64_t seed,
                           const std::string& label_prefix) {
  if (size < 1) throw validation_error("random structures need size >= 1");
  std::mt19937_64 rng(seed);
  return random_structure_rng(sig, size, rng, label_prefix, "A");
}

Structure permuted(const Structure& a, const std::vector<int>& perm,
                   const std::string& label_prefix, const std::string& new_name) {
  const int n = a.size();
  if (static_cast<int>(perm.size()) != n)
    throw validation_error("permutation size must match the domain");
  Structure b = blank_structure(*a.sig, n, label_prefix, new_name);

  const auto& funcs = a.sig->functions();
  for (std::size_t fn = 0; fn < funcs.size(); ++fn) {
    const int ar = funcs[fn].arity;
    std::vector<int> t(static_cast<std::size_t>(ar), 0);
    for (std::size_t idx = 0; idx < a.func_tables[fn].size(); ++idx) {
      std::vector<int> image(static_cast<std::size_t>(ar));
      for (int i = 0; i < ar; ++i) image[static_cast<std::size_t>(i)] = perm[static_cast<std::size_t>(t[static_cast<std::size_t>(i)])];
      b.func_tables[fn][b.encode(image)] = perm[static_cast<std::size_t>(a.func_tables[fn][idx])];
      for (int i = 0; i < ar && ++t[static_cast<std::size_t>(i)] == n; ++i) t[static_cast<std::size_t>(i)] = 0;
    }
  }
  const auto& rels = a.sig->relations();
  for (std::size_t r = 0; r < rels.size(); ++r) {
    const int ar = rels[r].arity;
    std::vector<int> t(static_cast<std::size_t>(ar), 0);
    for (std::size_t idx = 0; idx < a.rel_tables[r].size(); ++idx) {
      std::vector<int> image(static_cast<std::size_t>(ar));
      for (int i = 0; i < ar; ++i) image[static_cast<std::size_t>(i)] = perm[static_cast<std::size_t>(t[static_cast<std::size_t>(i)])];
      b.rel_tables[r][b.encode(image)] = a.rel_tables[r][idx];
      for (int i = 0; i < ar && ++t[static_cast<std::size_t>(i)] == n; ++i) t[static_cast<std::size_t>(i)] = 0;
    }
  }
  return b;
}

std::vector<Structure> all_structures(const Signature& sig, int size,
                                      const std::string& label_prefix, const Limits& lim) {
  if (size < 1) throw validation_error("structure enumeration needs size >= 1");

  // One digit per function entry (radix size) and relation tuple (radix 2).
  std::vector<int> radix;
  for (const Symbol& f : sig.functions())
    radix.insert(radix.end(), pow_count(size, f.arity), size);
  for (const Symbol& r : sig.relations())
    radix.insert(radix.end(), pow_count(size, r.arity), 2);

  double log_count = 0;
  for (int rx : radix) log_count += std::log2(static_cast<double>(rx));
  if (log_count > 60 || std::exp2(log_count) > static_cast<double>(lim.max_formulas))
    throw resource_limit_error("structure space", lim.max_formulas,
                               log_count > 60 ? ~std::uint64_t{0}
                                              : static_cast<std::uint64_t>(std::exp2(log_count)));

  std::vector<Structure> out;
  std::vector<int> digits(radix.size(), 0);
  for (;;) {
    Structure s = blank_structure(sig, size, label_prefix, "A");
    std::size_t d = 0;
    for (auto& table : s.func_tables)
      for (int& e : table) e = digits[d++];
    for (auto& table : s.rel_tables)
      for (char& b : table) b = static_cast<char>(digits[d++]);
    out.push_back(std::move(s));

    std::size_t i = 0;
    while (i < digits.size() && ++digits[i] == radix[i]) digits[i++] = 0;
    if (i == digits.size()) break;
  }
  return out;
}

std::vector<Structure> canonical_structures(const Signature& sig, int size,
                                            const std::string& label_prefix,
                                            const Limits& lim) {
  std::vector<Structure> out;
  std::set<std::string> seen;
  for (Structure& s : all_structures(sig, size, label_prefix, lim))
    if (seen.insert(canonical_key(s)).second) out.push_back(std::move(s));
  return out;
}

// ── Law suites ────────────────────────────────────────────────────────────

namespace {

enum class Law { Fit, Sit, IsoLemma, Symmetry, Reflexivity };

Law parse_law(const std::string& name) {
  if (name == "fit") return Law::Fit;
  if (name == "sit") return Law::Sit;
  if (name == "iso-lemma") return Law::IsoLemma;
  if (name == "symmetry") return Law::Symmetry;
  if (name == "reflexivity") return Law::Reflexivity;
  throw validation_error("unknown property: " + name);
}

}  // namespace

TrialReport verify_theorem(const std::string& property, const Signature& sig,
                           const TrialConfig& cfg) {
  const Law law = parse_law(property);
  if (cfg.trials < 1) throw validation_error("trial count must be >= 1");
  if (cfg.min_size < 1 || cfg.max_size < cfg.min_size)
    throw validation_error("size range must satisfy 1 <= min <= max");

  const auto t0 = std::chrono::steady_clock::now();
  TrialReport report;
  report.property = property;
  report.trials = cfg.trials;

  // Per-trial seeds are drawn up front so each trial is self-contained.
  std::mt19937_64 master(cfg.seed);
  std::vector<std::uint64_t> seeds(static_cast<std::size_t>(cfg.trials));
  for (auto& s : seeds) s = master();

  const int span = cfg.max_size - cfg.min_size + 1;
  for (int trial = 0; trial < cfg.trials; ++trial) {
    std::mt19937_64 rng(seeds[static_cast<std::size_t>(trial)]);
    const int n = cfg.min_size + trial % span;
    const auto header = [&](const std::string& what) {
      return "trial " + std::to_string(trial) + " (size " + std::to_string(n) + ", bounds " +
             cfg.bounds.describe() + "): " + what;
    };

    switch (law) {
      case Law::Fit:
      case Law::IsoLemma: {
        Structure a = random_structure_rng(sig, n, rng, "a", "A");
        std::vector<int> perm = random_perm(n, rng);
        Structure b = permuted(a, perm, "b", "B");
        TypeSystem ts = build_typesystem({a, b, true}, cfg.bounds, cfg.options);
        for (int x = 0; x < n; ++x) {
          const int fx = perm[static_cast<std::size_t>(x)];
          const bool bad = law == Law::Fit ? !compare_elements(ts, x, fx).approx
                                           : ts.type_left(x) != ts.type_right(fx);
          if (bad)
            report.violations.push_back(
                {header(a.labels[static_cast<std::size_t>(x)] +
                        (law == Law::Fit ? " !~ " : " type differs from ") +
                        b.labels[static_cast<std::size_t>(fx)]),
                 file_text({a, b})});
        }
        break;
      }
      case Law::Sit: {
        Structure a = random_structure_rng(sig, n, rng, "a", "A");
        Structure b = random_structure_rng(sig, n, rng, "b", "B");
        std::vector<int> pc = random_perm(n, rng), pd = random_perm(n, rng);
        Structure c = permuted(a, pc, "c", "C");
        Structure d = permuted(b, pd, "d", "D");
        TypeSystem ab = build_typesystem({a, b, true}, cfg.bounds, cfg.options);
        TypeSystem cd = build_typesystem({c, d, true}, cfg.bounds, cfg.options);
        for (int x = 0; x < n; ++x)
          for (int y = 0; y < n; ++y)
            if (compare_elements(ab, x, y).approx !=
                compare_elements(cd, pc[static_cast<std::size_t>(x)], pd[static_cast<std::size_t>(y)]).approx)
              report.violations.push_back(
                  {header("approx(" + a.labels[static_cast<std::size_t>(x)] + ", " +
                          b.labels[static_cast<std::size_t>(y)] + ") changed under relabeling"),
                   file_text({a, b, c, d})});
        break;
      }
      case Law::Symmetry: {
        Structure a = random_structure_rng(sig, n, rng, "e", "A");
        Structure b = random_structure_rng(sig, n, rng, "e", "B");
        TypeSystem ab = build_typesystem({a, b, true}, cfg.bounds, cfg.options);
        TypeSystem ba = build_typesystem({b, a, true}, cfg.bounds, cfg.options);
        for (int x = 0; x < n; ++x)
          for (int y = 0; y < n; ++y)
            if (compare_elements(ab, x, y).approx != compare_elements(ba, y, x).approx)
              report.violations.push_back(
                  {header("approx(" + a.labels[static_cast<std::size_t>(x)] + ", " +
                          b.labels[static_cast<std::size_t>(y)] + ") is not symmetric"),
                   file_text({a, b})});
        break;
      }
      case Law::Reflexivity: {
        Structure a = random_structure_rng(sig, n, rng, "e", "A");
        Structure twin = a;
        twin.name = "B";
        TypeSystem ts = build_typesystem({a, a, true}, cfg.bounds, cfg.options);
        for (int x = 0; x < n; ++x)
          if (!compare_elements(ts, x, x).approx)
            report.violations.push_back(
                {header(a.labels[static_cast<std::size_t>(x)] + " !~ itself"), file_text({a, twin})});
        break;
      }
    }
  }

  report.elapsed_seconds = seconds_since(t0);
  return report;
}

// ── Counterexample search ─────────────────────────────────────────────────

namespace {

enum class Expect { Lesssim, NotLesssim, NotApprox };

// Hits must replay on the reference construction and the other engine; a
// disagreement would mean an engine bug, so it stops everything.
void confirm_verdict(const StructurePair& pair, int a, int b, const Bounds& bounds,
                     const EngineOptions& opt, Expect expect) {
  EngineOptions other = opt;
  other.engine = opt.engine == Engine::Enum ? Engine::Closure : Engine::Enum;
  TypeSystem cross = build_typesystem(pair, bounds, other);
  TypeSystem oracle =
      typesystem_from_formulas(pair, enumerate_formulas(*pair.left.sig, bounds, opt.limits), bounds);
  for (const TypeSystem* ts : {&cross, &oracle}) {
    const bool ok = expect == Expect::Lesssim      ? check_lesssim(*ts, a, b).holds
                    : expect == Expect::NotLesssim ? !check_lesssim(*ts, a, b).holds
                                                   : !compare_elements(*ts, a, b).approx;
    if (!ok) throw validation_error("counterexample failed re-verification");
  }
}

SearchHit reflexivity_search(const Signature& sig, int max_size, const Bounds& bounds,
                             const EngineOptions& opt) {
  SearchHit hit;
  for (int n = 1; n <= max_size; ++n) {
    std::vector<Structure> all = all_structures(sig, n, "", opt.limits);
    std::set<std::string> seen;
    for (const Structure& a : all)
      for (const Structure& b : all) {
        if (!seen.insert(joint_canonical_key({&a, &b})).second) continue;
        ++hit.examined;
        StructurePair pair{a, b, true};
        pair.left.name = "A";
        pair.right.name = "B";
        TypeSystem ts = build_typesystem(pair, bounds, opt);
        for (int x = 0; x < n; ++x) {
          ElementVerdict v = check_lesssim(ts, x, x);
          if (v.holds) continue;
          confirm_verdict(pair, x, x, bounds, opt, Expect::NotLesssim);
          hit.found = true;
          hit.structures = {pair.left, pair.right};
          hit.elements = {x};
          hit.detail = "element " + a.labels[static_cast<std::size_t>(x)] +
                       ": A,B |= " + a.labels[static_cast<std::size_t>(x)] + " !<= " +
                       a.labels[static_cast<std::size_t>(x)] + " (dominator " +
                       b.labels[static_cast<std::size_t>(v.dominator)] + ")";
          hit.reproducer = file_text(hit.structures);
          return hit;
        }
      }
  }
  return hit;
}

SearchHit transitivity_search(const Signature& sig, int max_size, const Bounds& bounds,
                              const EngineOptions& opt) {
  SearchHit hit;
  for (int n = 1; n <= max_size; ++n) {
    std::vector<Structure> all = all_structures(sig, n, "", opt.limits);
    const int m = static_cast<int>(all.size());

    // lesssim matrices per ordered structure pair, built on first use.
    std::map<std::pair<int, int>, std::vector<std::vector<char>>> cache;
    auto holds = [&](int i, int j) -> const std::vector<std::vector<char>>& {
      auto it = cache.find({i, j});
      if (it != cache.end()) return it->second;
      TypeSystem ts = build_typesystem(
          {all[static_cast<std::size_t>(i)], all[static_cast<std::size_t>(j)], true}, bounds, opt);
      std::vector<std::vector<char>> p(static_cast<std::size_t>(n),
                                       std::vector<char>(static_cast<std::size_t>(n), 0));
      for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
          p[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)] =
              check_lesssim(ts, x, y).holds;
      return cache.emplace(std::make_pair(i, j), std::move(p)).first->second;
    };

    std::set<std::string> seen;
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        for (int k = 0; k < m; ++k) {
          const Structure &a = all[static_cast<std::size_t>(i)],
                          &b = all[static_cast<std::size_t>(j)],
                          &c = all[static_cast<std::size_t>(k)];
          if (!seen.insert(joint_canonical_key({&a, &b, &c})).second) continue;
          ++hit.examined;
          const auto &ab = holds(i, j), &bc = holds(j, k), &ac = holds(i, k);
          for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y)
              for (int z = 0; z < n; ++z) {
                if (!ab[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)] ||
                    !bc[static_cast<std::size_t>(y)][static_cast<std::size_t>(z)] ||
                    ac[static_cast<std::size_t>(x)][static_cast<std::size_t>(z)])
                  continue;
                StructurePair first{a, b, true}, third{a, c, true};
                confirm_verdict(first, x, y, bounds, opt, Expect::Lesssim);
                confirm_verdict(third, x, z, bounds, opt, Expect::NotLesssim);
                hit.found = true;
                hit.structures = {a, b, c};
                hit.structures[0].name = "A";
                hit.structures[1].name = "B";
                hit.structures[2].name = "C";
                hit.elements = {x, y, z};
                hit.detail = a.labels[static_cast<std::size_t>(x)] + " <= " +
                             b.labels[static_cast<std::size_t>(y)] + " and " +
                             b.labels[static_cast<std::size_t>(y)] + " <= " +
                             c.labels[static_cast<std::size_t>(z)] + " but " +
                             a.labels[static_cast<std::size_t>(x)] + " !<= " +
                             c.labels[static_cast<std::size_t>(z)];
                hit.reproducer = file_text(hit.structures);
                return hit;
              }
        }
  }
  return hit;
}

SearchHit hom_search(const Signature& sig, int max_size, const Bounds& bounds,
                     const EngineOptions& opt) {
  SearchHit hit;
  for (int na = 1; na <= max_size; ++na)
    for (int nb = 1; nb <= max_size; ++nb) {
      std::vector<Structure> lefts = canonical_structures(sig, na, "a", opt.limits);
      std::vector<Structure> rights = canonical_structures(sig, nb, "b", opt.limits);
      for (Structure& a : lefts)
        for (Structure& b : rights) {
          a.name = "A";
          b.name = "B";
          StructurePair pair{a, b, true};
          TypeSystem ts;
          bool built = false;

          // Odometer over all maps A -> B, keeping the homomorphisms.
          std::vector<int> f(static_cast<std::size_t>(na), 0);
          for (;;) {
            ++hit.examined;
            if (check_mapping(a, b, {f}, MapKind::Homomorphism).ok) {
              if (!built) {
                ts = build_typesystem(pair, bounds, opt);
                built = true;
              }
              for (int x = 0; x < na; ++x) {
                const int fx = f[static_cast<std::size_t>(x)];
                if (compare_elements(ts, x, fx).approx) continue;
                confirm_verdict(pair, x, fx, bounds, opt, Expect::NotApprox);
                hit.found = true;
                hit.structures = {a, b};
                hit.elements = {x, fx};
                hit.detail = "homomorphism sends " + a.labels[static_cast<std::size_t>(x)] +
                             " to " + b.labels[static_cast<std::size_t>(fx)] + " but " +
                             a.labels[static_cast<std::size_t>(x)] + " !~ " +
                             b.labels[static_cast<std::size_t>(fx)];
                hit.reproducer = file_text(hit.structures);
                return hit;
              }
            }
            std::size_t i = 0;
            while (i < f.size() && ++f[i] == nb) f[i++] = 0;
            if (i == f.size()) break;
          }
        }
    }
  return hit;
}

}  // namespace

SearchHit search_counterexample(const std::string& property, const Signature& sig,
                                int max_size, const Bounds& bounds, const EngineOptions& opt) {
  if (max_size < 1) throw validation_error("search needs max_size >= 1");
  if (property == "pair-reflexivity") return reflexivity_search(sig, max_size, bounds, opt);
  if (property == "transitivity") return transitivity_search(sig, max_size, bounds, opt);
  if (property == "hom-incompatibility") return hom_search(sig, max_size, bounds, opt);
  throw validation_error("unknown property: " + property);
}

// ── Classification data ───────────────────────────────────────────────────

std::vector<ClassifyRow> classify_structures(const Signature& sig, int max_size,
                                             const Bounds& bounds, const EngineOptions& opt) {
  std::vector<ClassifyRow> rows;
  for (int n = 1; n <= max_size; ++n) {
    std::vector<Structure> companions = all_structures(sig, n, "", opt.limits);
    for (Structure& a : canonical_structures(sig, n, "", opt.limits)) {
      ClassifyRow row{a, true, true};

      TypeSystem self = build_typesystem({a, a, true}, bounds, opt);
      std::vector<std::vector<char>> p(static_cast<std::size_t>(n),
                                       std::vector<char>(static_cast<std::size_t>(n), 0));
      for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
          p[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)] =
              check_lesssim(self, x, y).holds;
      for (int x = 0; x < n && row.transitive; ++x)
        for (int y = 0; y < n && row.transitive; ++y)
          for (int z = 0; z < n && row.transitive; ++z)
            if (p[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)] &&
                p[static_cast<std::size_t>(y)][static_cast<std::size_t>(z)] &&
                !p[static_cast<std::size_t>(x)][static_cast<std::size_t>(z)])
              row.transitive = false;

      for (const Structure& b : companions) {
        TypeSystem ts = build_typesystem({row.structure, b, true}, bounds, opt);
        for (int x = 0; x < n && row.pair_reflexive; ++x)
          if (!compare_elements(ts, x, x).approx) row.pair_reflexive = false;
        if (!row.pair_reflexive) break;
      }
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

// ── Preorder helpers ──────────────────────────────────────────────────────

std::vector<std::vector<char>> inclusion_preorder(const TypeSystem& ts) {
  const int na = ts.pair.left.size(), nb = ts.pair.right.size();
  std::vector<std::vector<char>> p(static_cast<std::size_t>(na),
                                   std::vector<char>(static_cast<std::size_t>(nb), 0));
  for (int a = 0; a < na; ++a) {
    const Bitset ta = ts.type_left(a);
    for (int b = 0; b < nb; ++b)
      p[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] =
          ta.subset_of(ts.type_right(b));
  }
  return p;
}

std::vector<std::vector<char>> stabilized_enum_preorder(const StructurePair& pair,
                                                        const Bounds& start,
                                                        const EngineOptions& opt) {
  EngineOptions o = opt;
  o.engine = Engine::Enum;
  Bounds b = start;
  auto p = inclusion_preorder(build_typesystem(pair, b, o));
  for (;;) {
    Bounds next = b;
    ++next.q;
    ++next.c;
    auto q = inclusion_preorder(build_typesystem(pair, next, o));
    if (p == q) return p;
    b = next;
    p = std::move(q);
  }
}

}  // namespace typesim
