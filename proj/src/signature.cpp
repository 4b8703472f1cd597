#include "typesim/signature.hpp"

#include <cctype>

namespace typesim {

bool symbolic_name(const std::string& name) {
  return !name.empty() &&
         !(std::isalnum(static_cast<unsigned char>(name[0])) || name[0] == '_');
}

int Signature::add_function(std::string name, int arity) {
  if (arity < 0) throw validation_error("function arity must be >= 0: " + name);
  if (has_symbol(name)) throw validation_error("duplicate symbol: " + name);
  funcs_.push_back({std::move(name), arity});
  return static_cast<int>(funcs_.size()) - 1;
}

int Signature::add_relation(std::string name, int arity) {
  if (arity < 1) throw validation_error("relation arity must be >= 1: " + name);
  if (has_symbol(name)) throw validation_error("duplicate symbol: " + name);
  rels_.push_back({std::move(name), arity});
  return static_cast<int>(rels_.size()) - 1;
}

std::optional<int> Signature::function_id(const std::string& name) const {
  for (std::size_t i = 0; i < funcs_.size(); ++i)
    if (funcs_[i].name == name) return static_cast<int>(i);
  return std::nullopt;
}

std::optional<int> Signature::relation_id(const std::string& name) const {
  for (std::size_t i = 0; i < rels_.size(); ++i)
    if (rels_[i].name == name) return static_cast<int>(i);
  return std::nullopt;
}

bool Signature::operator==(const Signature& o) const {
  auto same = [](const std::vector<Symbol>& a, const std::vector<Symbol>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
      if (a[i].name != b[i].name || a[i].arity != b[i].arity) return false;
    return true;
  };
  return same(funcs_, o.funcs_) && same(rels_, o.rels_);
}

std::string Signature::describe() const {
  // Prefix a symbol whose casing alone would misclassify it, so that
  // parse_spec(describe()) reproduces the signature.
  std::string out;
  auto upper = [](const Symbol& s) {
    return std::isupper(static_cast<unsigned char>(s.name[0])) != 0;
  };
  for (const auto& s : funcs_) {
    if (!out.empty()) out += ",";
    if (upper(s)) out += "fun ";
    out += s.name + ":" + std::to_string(s.arity);
  }
  for (const auto& s : rels_) {
    if (!out.empty()) out += ",";
    if (!upper(s)) out += "rel ";
    out += s.name + ":" + std::to_string(s.arity);
  }
  return out;
}

Signature Signature::parse_spec(const std::string& spec) {
  Signature sig;
  std::size_t i = 0;
  auto skip_ws = [&] { while (i < spec.size() && std::isspace(static_cast<unsigned char>(spec[i]))) ++i; };
  while (true) {
    skip_ws();
    if (i >= spec.size()) break;
    std::size_t start = i;
    while (i < spec.size() && spec[i] != ',') ++i;
    std::string item = spec.substr(start, i - start);
    if (i < spec.size()) ++i;  // consume comma
    while (!item.empty() && std::isspace(static_cast<unsigned char>(item.back()))) item.pop_back();
    if (item.empty()) continue;
    bool force_rel = false, force_fun = false;
    if (item.rfind("rel ", 0) == 0) { force_rel = true; item = item.substr(4); }
    else if (item.rfind("fun ", 0) == 0) { force_fun = true; item = item.substr(4); }
    auto colon = item.find(':');
    if (colon == std::string::npos || colon == 0)
      throw validation_error("bad signature item (want name:arity): " + item);
    std::string name = item.substr(0, colon);
    int arity;
    try {
      arity = std::stoi(item.substr(colon + 1));
    } catch (const std::exception&) {
      throw validation_error("bad arity in signature item: " + item);
    }
    bool rel = force_rel || (!force_fun && std::isupper(static_cast<unsigned char>(name[0])));
    if (rel)
      sig.add_relation(name, arity);
    else
      sig.add_function(name, arity);
  }
  return sig;
}

}  // namespace typesim
