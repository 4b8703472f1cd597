#include "typesim/structure.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

namespace typesim {

int Structure::element(const std::string& label) const {
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (labels[i] == label) return static_cast<int>(i);
  return -1;
}

std::size_t Structure::tuple_count(int arity) const {
  std::size_t n = 1;
  for (int i = 0; i < arity; ++i) n *= static_cast<std::size_t>(size());
  return n;
}

std::size_t Structure::encode(const std::vector<int>& tuple) const {
  std::size_t idx = 0, stride = 1;
  for (int x : tuple) {
    idx += static_cast<std::size_t>(x) * stride;
    stride *= static_cast<std::size_t>(size());
  }
  return idx;
}

void Structure::validate() const {
  if (labels.empty()) throw validation_error("structure " + name + ": empty domain");
  std::set<std::string> seen;
  for (const auto& l : labels)
    if (!seen.insert(l).second)
      throw validation_error("structure " + name + ": duplicate element label " + l);
  const auto& funcs = sig->functions();
  if (func_tables.size() != funcs.size() || rel_tables.size() != sig->relations().size())
    throw validation_error("structure " + name + ": table count does not match signature");
  for (std::size_t f = 0; f < funcs.size(); ++f) {
    if (func_tables[f].size() != tuple_count(funcs[f].arity))
      throw validation_error("structure " + name + ": function " + funcs[f].name +
                             " table is not total");
    for (int v : func_tables[f])
      if (v < 0 || v >= size())
        throw validation_error("structure " + name + ": function " + funcs[f].name +
                               " maps outside the domain");
  }
  for (std::size_t r = 0; r < sig->relations().size(); ++r)
    if (rel_tables[r].size() != tuple_count(sig->relations()[r].arity))
      throw validation_error("structure " + name + ": relation table size mismatch");
}

namespace {

std::vector<int> decode_tuple(std::size_t idx, int arity, int n) {
  std::vector<int> t(static_cast<std::size_t>(arity));
  for (int i = 0; i < arity; ++i) {
    t[static_cast<std::size_t>(i)] = static_cast<int>(idx % static_cast<std::size_t>(n));
    idx /= static_cast<std::size_t>(n);
  }
  return t;
}

}  // namespace

std::string Structure::to_text() const {
  std::ostringstream out;
  out << "structure " << name << " {\n  domain ";
  for (std::size_t i = 0; i < labels.size(); ++i) out << (i ? ", " : "") << labels[i];
  out << ";\n";
  const auto& funcs = sig->functions();
  for (std::size_t f = 0; f < funcs.size(); ++f) {
    out << "  fun " << funcs[f].name << " {";
    for (std::size_t idx = 0; idx < func_tables[f].size(); ++idx) {
      auto tup = decode_tuple(idx, funcs[f].arity, size());
      out << " ";
      if (funcs[f].arity == 1) {
        out << labels[static_cast<std::size_t>(tup[0])];
      } else {
        out << "(";
        for (std::size_t i = 0; i < tup.size(); ++i)
          out << (i ? ", " : "") << labels[static_cast<std::size_t>(tup[i])];
        out << ")";
      }
      out << " -> " << labels[static_cast<std::size_t>(func_tables[f][idx])] << ";";
    }
    out << " }\n";
  }
  const auto& rels = sig->relations();
  for (std::size_t r = 0; r < rels.size(); ++r) {
    out << "  rel " << rels[r].name << " {";
    for (std::size_t idx = 0; idx < rel_tables[r].size(); ++idx) {
      if (!rel_tables[r][idx]) continue;
      auto tup = decode_tuple(idx, rels[r].arity, size());
      out << " (";
      for (std::size_t i = 0; i < tup.size(); ++i)
        out << (i ? ", " : "") << labels[static_cast<std::size_t>(tup[i])];
      out << ");";
    }
    out << " }\n";
  }
  out << "}\n";
  return out.str();
}

int StructurePair::right_twin(int a) const {
  if (!identity) return -1;
  return right.element(left.labels[static_cast<std::size_t>(a)]);
}

int StructurePair::left_twin(int b) const {
  if (!identity) return -1;
  return left.element(right.labels[static_cast<std::size_t>(b)]);
}

MapReport check_mapping(const Structure& from, const Structure& to, const Mapping& m,
                        MapKind kind) {
  if (!(*from.sig == *to.sig)) return {false, "signatures differ"};
  if (m.to.size() != static_cast<std::size_t>(from.size()))
    return {false, "map does not cover the source domain"};
  for (int v : m.to)
    if (v < 0 || v >= to.size()) return {false, "map leaves the target domain"};

  if (kind == MapKind::Isomorphism) {
    if (from.size() != to.size()) return {false, "domains have different sizes"};
    std::vector<char> hit(static_cast<std::size_t>(to.size()), 0);
    for (int v : m.to) {
      if (hit[static_cast<std::size_t>(v)])
        return {false, "not injective: " + to.labels[static_cast<std::size_t>(v)] +
                           " hit twice"};
      hit[static_cast<std::size_t>(v)] = 1;
    }
  }

  const auto& funcs = from.sig->functions();
  for (std::size_t f = 0; f < funcs.size(); ++f) {
    int ar = funcs[f].arity;
    for (std::size_t idx = 0; idx < from.func_tables[f].size(); ++idx) {
      auto tup = decode_tuple(idx, ar, from.size());
      std::vector<int> img(tup.size());
      for (std::size_t i = 0; i < tup.size(); ++i)
        img[i] = m.to[static_cast<std::size_t>(tup[i])];
      int lhs = m.to[static_cast<std::size_t>(from.func_tables[f][idx])];
      int rhs = to.func_tables[f][to.encode(img)];
      if (lhs != rhs) {
        std::ostringstream msg;
        msg << "function " << funcs[f].name << " not preserved at (";
        for (std::size_t i = 0; i < tup.size(); ++i)
          msg << (i ? ", " : "") << from.labels[static_cast<std::size_t>(tup[i])];
        msg << ")";
        return {false, msg.str()};
      }
    }
  }
  const auto& rels = from.sig->relations();
  for (std::size_t r = 0; r < rels.size(); ++r) {
    int ar = rels[r].arity;
    for (std::size_t idx = 0; idx < from.rel_tables[r].size(); ++idx) {
      auto tup = decode_tuple(idx, ar, from.size());
      std::vector<int> img(tup.size());
      for (std::size_t i = 0; i < tup.size(); ++i)
        img[i] = m.to[static_cast<std::size_t>(tup[i])];
      bool src = from.rel_tables[r][idx];
      bool dst = to.rel_tables[r][to.encode(img)];
      bool bad = kind == MapKind::Homomorphism ? (src && !dst) : (src != dst);
      if (bad) {
        std::ostringstream msg;
        msg << "relation " << rels[r].name << " not preserved at (";
        for (std::size_t i = 0; i < tup.size(); ++i)
          msg << (i ? ", " : "") << from.labels[static_cast<std::size_t>(tup[i])];
        msg << ")";
        return {false, msg.str()};
      }
    }
  }
  return {true, ""};
}

Structure relabel(const Structure& a, const std::vector<std::string>& new_labels,
                  const std::string& new_name) {
  if (new_labels.size() != a.labels.size())
    throw validation_error("relabel: wrong number of labels");
  Structure b = a;
  b.name = new_name;
  b.labels = new_labels;
  b.validate();
  return b;
}

StructurePair with_element_params(const StructurePair& pair) {
  auto sig = std::make_shared<Signature>(*pair.left.sig);
  StructurePair out = pair;
  for (const std::string& label : pair.left.labels) {
    int b = pair.right.element(label);
    if (b < 0) continue;
    if (sig->has_symbol(label))
      throw validation_error("element parameter collides with symbol " + label);
    sig->add_function(label, 0);
    out.left.func_tables.push_back({pair.left.element(label)});
    out.right.func_tables.push_back({b});
  }
  out.left.sig = sig;
  out.right.sig = sig;
  return out;
}

// ── Structure file parsing ────────────────────────────────────────────────

namespace {

struct SToken {
  enum Kind { Ident, LBrace, RBrace, LParen, RParen, Comma, Semi, Colon, Arrow, End } kind;
  std::string text;
  int line, col;
  std::size_t pos;
};

std::vector<SToken> slex(const std::string& s) {
  std::vector<SToken> out;
  std::size_t i = 0;
  int line = 1, col = 1;
  auto adv = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (s[i + k] == '\n') { ++line; col = 1; } else { ++col; }
    }
    i += n;
  };
  auto push = [&](SToken::Kind k, std::string text, std::size_t n) {
    out.push_back({k, std::move(text), line, col, i});
    adv(n);
  };
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) { adv(1); continue; }
    if (c == '#') {
      while (i < s.size() && s[i] != '\n') adv(1);
      continue;
    }
    if (c == '-' && i + 1 < s.size() && s[i + 1] == '>') { push(SToken::Arrow, "->", 2); continue; }
    switch (c) {
      case '{': push(SToken::LBrace, "{", 1); continue;
      case '}': push(SToken::RBrace, "}", 1); continue;
      case '(': push(SToken::LParen, "(", 1); continue;
      case ')': push(SToken::RParen, ")", 1); continue;
      case ',': push(SToken::Comma, ",", 1); continue;
      case ';': push(SToken::Semi, ";", 1); continue;
      case ':': push(SToken::Colon, ":", 1); continue;
      default: break;
    }
    if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < s.size() &&
             (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_' || s[j] == '\''))
        ++j;
      push(SToken::Ident, s.substr(i, j - i), j - i);
      continue;
    }
    // Symbolic identifier run (function names like * or a UTF-8 operator).
    std::size_t j = i;
    while (j < s.size()) {
      char d = s[j];
      if (std::isspace(static_cast<unsigned char>(d)) ||
          std::isalnum(static_cast<unsigned char>(d)) || d == '_' || d == '\'' || d == '{' ||
          d == '}' || d == '(' || d == ')' || d == ',' || d == ';' || d == ':' || d == '#')
        break;
      if (d == '-' && j + 1 < s.size() && s[j + 1] == '>') break;
      ++j;
    }
    if (j == i) throw parse_error(std::string("unexpected character '") + c + "'", i, line, col);
    push(SToken::Ident, s.substr(i, j - i), j - i);
  }
  out.push_back({SToken::End, "", line, col, s.size()});
  return out;
}

class SParser {
 public:
  explicit SParser(const std::string& text) : toks_(slex(text)) {}

  StructureFile parse() {
    StructureFile file;
    expect_kw("signature");
    auto sig = std::make_shared<Signature>();
    expect(SToken::LBrace, "'{'");
    while (cur().kind != SToken::RBrace) {
      std::string kw = ident("'fun' or 'rel'");
      if (kw != "fun" && kw != "rel") fail("expected 'fun' or 'rel'", prev());
      std::string name = ident("symbol name");
      expect(SToken::Colon, "':'");
      int arity = number();
      expect(SToken::Semi, "';'");
      try {
        if (kw == "fun") sig->add_function(name, arity);
        else sig->add_relation(name, arity);
      } catch (const validation_error& e) {
        fail(e.what(), prev());
      }
    }
    take();  // '}'
    file.sig = sig;

    while (cur().kind != SToken::End) {
      expect_kw("structure");
      file.structures.push_back(structure(sig));
    }
    std::set<std::string> names;
    for (const auto& s : file.structures)
      if (!names.insert(s.name).second)
        throw validation_error("duplicate structure name: " + s.name);
    return file;
  }

 private:
  std::vector<SToken> toks_;
  std::size_t at_ = 0;

  const SToken& cur() const { return toks_[at_]; }
  const SToken& prev() const { return toks_[at_ ? at_ - 1 : 0]; }
  SToken take() { return toks_[at_++]; }
  [[noreturn]] void fail(const std::string& msg, const SToken& t) {
    throw parse_error(msg, t.pos, t.line, t.col);
  }
  void expect(SToken::Kind k, const char* what) {
    if (cur().kind != k) fail(std::string("expected ") + what, cur());
    ++at_;
  }
  void expect_kw(const char* kw) {
    if (cur().kind != SToken::Ident || cur().text != kw)
      fail(std::string("expected '") + kw + "'", cur());
    ++at_;
  }
  std::string ident(const char* what) {
    if (cur().kind != SToken::Ident) fail(std::string("expected ") + what, cur());
    return take().text;
  }
  int number() {
    const SToken& t = cur();
    if (t.kind != SToken::Ident) fail("expected a number", t);
    for (char c : t.text)
      if (!std::isdigit(static_cast<unsigned char>(c))) fail("expected a number", t);
    take();
    return std::stoi(t.text);
  }

  Structure structure(const std::shared_ptr<Signature>& sig) {
    Structure s;
    s.sig = sig;
    s.name = ident("structure name");
    expect(SToken::LBrace, "'{'");
    expect_kw("domain");
    s.labels.push_back(ident("element label"));
    while (cur().kind == SToken::Comma) { take(); s.labels.push_back(ident("element label")); }
    expect(SToken::Semi, "';'");

    s.func_tables.assign(sig->functions().size(), {});
    s.rel_tables.resize(sig->relations().size());
    for (std::size_t r = 0; r < sig->relations().size(); ++r)
      s.rel_tables[r].assign(s.tuple_count(sig->relations()[r].arity), 0);
    std::vector<std::vector<char>> fun_set(sig->functions().size());
    for (std::size_t f = 0; f < sig->functions().size(); ++f) {
      s.func_tables[f].assign(s.tuple_count(sig->functions()[f].arity), -1);
      fun_set[f].assign(s.func_tables[f].size(), 0);
    }

    while (cur().kind != SToken::RBrace) {
      std::string kw = ident("'fun' or 'rel'");
      if (kw == "fun") parse_fun_block(s, sig, fun_set);
      else if (kw == "rel") parse_rel_block(s, sig);
      else fail("expected 'fun' or 'rel'", prev());
    }
    take();  // '}'

    for (std::size_t f = 0; f < sig->functions().size(); ++f)
      for (std::size_t idx = 0; idx < fun_set[f].size(); ++idx)
        if (!fun_set[f][idx]) {
          auto tup = decode_tuple(idx, sig->functions()[f].arity, s.size());
          std::string at;
          for (std::size_t i = 0; i < tup.size(); ++i)
            at += (i ? ", " : "") + s.labels[static_cast<std::size_t>(tup[i])];
          throw validation_error("structure " + s.name + ": function " +
                                 sig->functions()[f].name + " missing entry for (" + at + ")");
        }
    s.validate();
    return s;
  }

  int element(const Structure& s, const SToken& t) {
    int e = s.element(t.text);
    if (e < 0) fail("unknown element '" + t.text + "' in structure " + s.name, t);
    return e;
  }

  std::vector<int> tuple(const Structure& s, int arity) {
    std::vector<int> tup;
    if (cur().kind == SToken::LParen) {
      take();
      if (cur().kind != SToken::RParen) {
        tup.push_back(element(s, cur())); take();
        while (cur().kind == SToken::Comma) { take(); tup.push_back(element(s, cur())); take(); }
      }
      expect(SToken::RParen, "')'");
    } else if (arity > 0) {
      tup.push_back(element(s, cur()));
      take();
    }
    if (static_cast<int>(tup.size()) != arity)
      fail("expected " + std::to_string(arity) + " arguments", prev());
    return tup;
  }

  void parse_fun_block(Structure& s, const std::shared_ptr<Signature>& sig,
                       std::vector<std::vector<char>>& fun_set) {
    const SToken& nameTok = cur();
    std::string name = ident("function name");
    auto fid = sig->function_id(name);
    if (!fid) fail("undeclared function: " + name, nameTok);
    int f = *fid, arity = sig->functions()[static_cast<std::size_t>(f)].arity;
    expect(SToken::LBrace, "'{'");
    while (cur().kind != SToken::RBrace) {
      std::vector<int> tup;
      if (cur().kind != SToken::Arrow) tup = tuple(s, arity);
      else if (arity != 0) fail("expected arguments", cur());
      expect(SToken::Arrow, "'->'");
      int value = element(s, cur());
      take();
      expect(SToken::Semi, "';'");
      std::size_t idx = s.encode(tup);
      if (fun_set[static_cast<std::size_t>(f)][idx])
        fail("duplicate entry for function " + name, prev());
      fun_set[static_cast<std::size_t>(f)][idx] = 1;
      s.func_tables[static_cast<std::size_t>(f)][idx] = value;
    }
    take();  // '}'
  }

  void parse_rel_block(Structure& s, const std::shared_ptr<Signature>& sig) {
    const SToken& nameTok = cur();
    std::string name = ident("relation name");
    auto rid = sig->relation_id(name);
    if (!rid) fail("undeclared relation: " + name, nameTok);
    int r = *rid, arity = sig->relations()[static_cast<std::size_t>(r)].arity;
    expect(SToken::LBrace, "'{'");
    while (cur().kind != SToken::RBrace) {
      std::vector<int> tup = tuple(s, arity);
      expect(SToken::Semi, "';'");
      std::size_t idx = s.encode(tup);
      if (s.rel_tables[static_cast<std::size_t>(r)][idx])
        fail("duplicate tuple for relation " + name, prev());
      s.rel_tables[static_cast<std::size_t>(r)][idx] = 1;
    }
    take();  // '}'
  }
};

}  // namespace

const Structure& StructureFile::get(const std::string& name) const {
  for (const auto& s : structures)
    if (s.name == name) return s;
  throw validation_error("no structure named " + name + " in file");
}

StructureFile parse_structures(const std::string& text) { return SParser(text).parse(); }

StructureFile load_structures(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw validation_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_structures(buf.str());
}

std::string format_structure_file(const StructureFile& file) {
  std::ostringstream out;
  out << "signature {";
  for (const auto& f : file.sig->functions()) out << " fun " << f.name << ":" << f.arity << ";";
  for (const auto& r : file.sig->relations()) out << " rel " << r.name << ":" << r.arity << ";";
  out << " }\n\n";
  for (const auto& s : file.structures) out << s.to_text() << "\n";
  return out.str();
}

}  // namespace typesim
