#include "typesim/parse.hpp"

#include <cctype>
#include <vector>

namespace typesim {

namespace {

enum class Tok { Ident, SymIdent, LParen, RParen, Comma, Amp, Bar, Tilde, Eq, Neq, Forall, Exists, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
  int line, col;
};

bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

// Lexes the whole input up front. Unknown non-ASCII codepoints and ASCII
// symbol characters (other than the reserved punctuation) form symbolic
// identifiers, so function names like * or a UTF-8 circle operator work.
std::vector<Token> lex(const std::string& s) {
  std::vector<Token> out;
  std::size_t i = 0;
  int line = 1, col = 1;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (s[i + k] == '\n') { ++line; col = 1; } else { ++col; }
    }
    i += n;
  };
  auto push = [&](Tok k, std::string text, std::size_t n) {
    out.push_back({k, std::move(text), i, line, col});
    advance(n);
  };
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) { advance(1); continue; }
    if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < s.size() && is_ident_char(s[j])) ++j;
      std::string word = s.substr(i, j - i);
      if (word == "forall") push(Tok::Forall, word, j - i);
      else if (word == "exists") push(Tok::Exists, word, j - i);
      else push(Tok::Ident, word, j - i);
      continue;
    }
    switch (c) {
      case '(': push(Tok::LParen, "(", 1); continue;
      case ')': push(Tok::RParen, ")", 1); continue;
      case ',': push(Tok::Comma, ",", 1); continue;
      case '&': push(Tok::Amp, "&", 1); continue;
      case '|': push(Tok::Bar, "|", 1); continue;
      case '~': push(Tok::Tilde, "~", 1); continue;
      case '=': push(Tok::Eq, "=", 1); continue;
      case '!':
        if (i + 1 < s.size() && s[i + 1] == '=') { push(Tok::Neq, "!=", 2); continue; }
        throw parse_error("stray '!'", i, line, col);
      default: break;
    }
    if (static_cast<unsigned char>(c) >= 0x80) {
      // UTF-8 sequence: translate the known aliases, otherwise treat the
      // codepoint as a symbolic identifier character.
      auto starts = [&](const char* u) {
        return s.compare(i, std::string(u).size(), u) == 0;
      };
      if (starts("∀")) { push(Tok::Forall, "forall", 3); continue; }
      if (starts("∃")) { push(Tok::Exists, "exists", 3); continue; }
      if (starts("∧")) { push(Tok::Amp, "&", 3); continue; }
      if (starts("∨")) { push(Tok::Bar, "|", 3); continue; }
      if (starts("≠")) { push(Tok::Neq, "!=", 3); continue; }
      if (starts("¬")) { push(Tok::Tilde, "~", 2); continue; }
    }
    // Symbolic identifier: a run of symbol characters / unknown codepoints.
    std::size_t j = i;
    while (j < s.size()) {
      char d = s[j];
      if (std::isspace(static_cast<unsigned char>(d)) || is_ident_char(d)) break;
      if (d == '(' || d == ')' || d == ',' || d == '&' || d == '|' || d == '~' || d == '=' ||
          d == '!')
        break;
      if (static_cast<unsigned char>(d) >= 0x80) {
        bool alias = false;
        for (const char* u : {"∀", "∃", "∧", "∨", "≠", "¬"})
          if (s.compare(j, std::string(u).size(), u) == 0) { alias = true; break; }
        if (alias) break;
      }
      ++j;
    }
    if (j == i) throw parse_error(std::string("unexpected character '") + c + "'", i, line, col);
    push(Tok::SymIdent, s.substr(i, j - i), j - i);
  }
  out.push_back({Tok::End, "", s.size(), line, col});
  return out;
}

class Parser {
 public:
  Parser(const std::string& text, const Signature& sig) : sig_(sig), toks_(lex(text)) {}

  FormulaPtr parse() {
    FormulaPtr f = expr();
    expect(Tok::End, "end of input");
    return f;
  }

 private:
  const Signature& sig_;
  std::vector<Token> toks_;
  std::size_t at_ = 0;
  // Scope stack of (source name, pool index); quantifier nesting depth
  // decides the pool index, so canonical names are positional.
  std::vector<std::pair<std::string, int>> scope_;

  const Token& cur() const { return toks_[at_]; }
  const Token& peek(std::size_t n = 1) const {
    return toks_[std::min(at_ + n, toks_.size() - 1)];
  }
  Token take() { return toks_[at_++]; }

  [[noreturn]] void fail(const std::string& msg, const Token& t) {
    throw parse_error(msg, t.pos, t.line, t.col);
  }
  void expect(Tok k, const char* what) {
    if (cur().kind != k) fail(std::string("expected ") + what, cur());
    ++at_;
  }

  FormulaPtr expr() {
    std::vector<FormulaPtr> parts{conjunction()};
    std::size_t pos = toks_[at_].pos;
    while (cur().kind == Tok::Bar) {
      take();
      parts.push_back(conjunction());
    }
    if (parts.size() == 1) return parts[0];
    auto f = make_or(std::move(parts));
    const_cast<Formula*>(f.get())->pos = pos;
    return f;
  }

  FormulaPtr conjunction() {
    std::vector<FormulaPtr> parts{unit()};
    while (cur().kind == Tok::Amp) {
      take();
      parts.push_back(unit());
    }
    return parts.size() == 1 ? parts[0] : conj_keep_order(std::move(parts));
  }

  FormulaPtr unit() {
    const Token& t = cur();
    if (t.kind == Tok::Tilde) {
      take();
      FormulaPtr inner = unit();
      return negate(inner, t);
    }
    if (t.kind == Tok::LParen) {
      // Quantifier head?
      if (peek().kind == Tok::Forall || peek().kind == Tok::Exists) {
        take();
        bool is_forall = take().kind == Tok::Forall;
        if (cur().kind != Tok::Ident) fail("expected a variable name", cur());
        std::string name = take().text;
        expect(Tok::RParen, "')'");
        int pool = static_cast<int>(scope_.size()) + 1;
        scope_.emplace_back(name, pool);
        FormulaPtr body = unit();
        scope_.pop_back();
        auto f = is_forall ? make_forall(pool, std::move(body))
                           : make_exists(pool, std::move(body));
        const_cast<Formula*>(f.get())->pos = t.pos;
        return f;
      }
      // Either a parenthesized formula or a parenthesized term; try the
      // formula reading first and fall back when the text continues like
      // a term (infix operator or equality follows the closing paren).
      std::size_t mark = at_;
      auto saved_scope = scope_;
      try {
        take();  // '('
        FormulaPtr inner = expr();
        expect(Tok::RParen, "')'");
        if (!term_continues()) return inner;
      } catch (const parse_error&) {
      }
      at_ = mark;
      scope_ = saved_scope;
      return atom();
    }
    return atom();
  }

  bool term_continues() const {
    const Token& t = cur();
    if (t.kind == Tok::Eq || t.kind == Tok::Neq) return true;
    if (t.kind == Tok::SymIdent || t.kind == Tok::Ident) {
      auto fid = sig_.function_id(t.text);
      return fid && sig_.functions()[*fid].arity == 2 && symbolic_name(t.text);
    }
    return false;
  }

  FormulaPtr negate(const FormulaPtr& f, const Token& t) {
    switch (f->kind) {
      case FKind::Eq: return make_neq(f->lhs, f->rhs);
      case FKind::Neq: return make_eq(f->lhs, f->rhs);
      case FKind::Atom: return make_neg_atom(f->rel, f->args);
      case FKind::NegAtom: return make_atom(f->rel, f->args);
      default: {
        auto g = make_not(f);
        const_cast<Formula*>(g.get())->pos = t.pos;
        return g;
      }
    }
  }

  FormulaPtr atom() {
    const Token& t = cur();
    // Relation atom?
    if (t.kind == Tok::Ident || t.kind == Tok::SymIdent) {
      if (auto rid = sig_.relation_id(t.text)) {
        take();
        expect(Tok::LParen, "'(' after relation symbol");
        std::vector<TermPtr> args;
        if (cur().kind != Tok::RParen) {
          args.push_back(term());
          while (cur().kind == Tok::Comma) { take(); args.push_back(term()); }
        }
        expect(Tok::RParen, "')'");
        int arity = sig_.relations()[static_cast<std::size_t>(*rid)].arity;
        if (static_cast<int>(args.size()) != arity)
          fail("relation " + t.text + " expects " + std::to_string(arity) + " arguments", t);
        auto f = make_atom(*rid, std::move(args));
        const_cast<Formula*>(f.get())->pos = t.pos;
        return f;
      }
    }
    TermPtr lhs = term();
    if (cur().kind == Tok::Eq) { take(); return make_eq(std::move(lhs), term()); }
    if (cur().kind == Tok::Neq) { take(); return make_neq(std::move(lhs), term()); }
    fail("expected '=' or '!=' after term", cur());
  }

  TermPtr term() {
    TermPtr lhs = primary_term();
    // Left-associative infix chain for symbolic binary functions.
    while (cur().kind == Tok::SymIdent || cur().kind == Tok::Ident) {
      const Token& t = cur();
      if (!symbolic_name(t.text)) break;
      auto fid = sig_.function_id(t.text);
      if (!fid) fail("unknown symbol: " + t.text, t);
      if (sig_.functions()[*fid].arity != 2)
        fail("infix use of non-binary symbol: " + t.text, t);
      take();
      TermPtr rhs = primary_term();
      lhs = Term::apply(*fid, {std::move(lhs), std::move(rhs)});
    }
    return lhs;
  }

  TermPtr primary_term() {
    const Token& t = cur();
    if (t.kind == Tok::LParen) {
      take();
      TermPtr inner = term();
      expect(Tok::RParen, "')'");
      return inner;
    }
    if (t.kind != Tok::Ident && t.kind != Tok::SymIdent) fail("expected a term", t);
    take();
    // Bound variable (innermost binding wins), then pool-named free
    // variable, then declared function symbol.
    for (auto it = scope_.rbegin(); it != scope_.rend(); ++it)
      if (it->first == t.text) return Term::variable(it->second);
    if (cur().kind == Tok::LParen) {
      auto fid = sig_.function_id(t.text);
      if (!fid) fail("unknown symbol: " + t.text, t);
      take();
      std::vector<TermPtr> args;
      if (cur().kind != Tok::RParen) {
        args.push_back(term());
        while (cur().kind == Tok::Comma) { take(); args.push_back(term()); }
      }
      expect(Tok::RParen, "')'");
      int arity = sig_.functions()[static_cast<std::size_t>(*fid)].arity;
      if (static_cast<int>(args.size()) != arity)
        fail("function " + t.text + " expects " + std::to_string(arity) + " arguments", t);
      return Term::apply(*fid, std::move(args));
    }
    if (int vi = var_index(t.text); vi >= 0) return Term::variable(vi);
    if (auto fid = sig_.function_id(t.text)) {
      if (sig_.functions()[static_cast<std::size_t>(*fid)].arity != 0)
        fail("function " + t.text + " expects arguments", t);
      return Term::apply(*fid, {});
    }
    fail("unknown identifier: " + t.text, t);
  }
};

}  // namespace

FormulaPtr parse_general(const std::string& text, const Signature& sig) {
  return Parser(text, sig).parse();
}

FormulaPtr parse_formula(const std::string& text, const Signature& sig) {
  FormulaPtr f = parse_general(text, sig);
  auto violations = validate_conjunctive(f);
  if (!violations.empty()) {
    std::string msg = "not a conjunctive formula:";
    for (const auto& v : violations)
      msg += " [offset " + std::to_string(v.pos) + "] " + v.message + ";";
    msg.pop_back();
    throw validation_error(msg);
  }
  return f;
}

}  // namespace typesim
