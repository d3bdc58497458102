#include "pfprint/fingerprint.hpp"

#include <algorithm>

namespace pfprint {

VarAllocation::VarAllocation(const std::map<std::string, std::size_t>& symbols) {
  add(std::string(kImplies), 2);
  add(std::string(kNot), 1);
  for (const auto& [name, arity] : symbols) {  // std::map iterates in lexicographic order
    if (name == kImplies || name == kNot) continue;
    add(name, arity);
  }
}

void VarAllocation::add(const std::string& symbol, std::size_t arity) {
  first_.emplace(symbol, static_cast<VarId>(names_.size()));
  arity_.emplace(symbol, arity);
  std::string base = symbol == kImplies ? "I" : symbol == kNot ? "N" : symbol;
  bool builtin = symbol == kImplies || symbol == kNot;
  for (std::size_t i = 0; i <= arity; ++i) {
    if (i == 0) {
      names_.push_back(base);
    } else {
      names_.push_back(base + (builtin ? "" : ".") + std::to_string(i));
    }
  }
}

VarAllocation VarAllocation::covering(std::span<const Formula> formulas, const Signature& sig) {
  std::map<std::string, std::size_t> symbols;
  for (const auto& s : sig.symbols()) symbols.emplace(s.name, s.arity);
  for (const auto& f : formulas) collect_symbols(f, symbols);
  return VarAllocation(symbols);
}

VarId VarAllocation::slot(std::string_view symbol, std::size_t index) const {
  auto it = first_.find(symbol);
  if (it == first_.end())
    throw Error(ErrorCode::UnallocatedSymbol, "no variables allocated for '" + std::string(symbol) + "'");
  if (index > arity_.find(symbol)->second)
    throw Error(ErrorCode::UnallocatedSymbol, "'" + std::string(symbol) + "' has no slot " + std::to_string(index));
  return it->second + static_cast<VarId>(index);
}

std::optional<VarId> VarAllocation::find_name(std::string_view name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) return std::nullopt;
  return static_cast<VarId>(it - names_.begin());
}

VarNamer VarAllocation::namer() const {
  return [this](VarId v) { return v < names_.size() ? names_[v] : default_var_name(v); };
}

std::size_t degree_bound(const Formula& f) {
  std::size_t deepest = 0;
  for (const auto& c : f.children) deepest = std::max(deepest, degree_bound(c));
  return deepest + 1;
}

Fingerprint<FieldElem> evaluate(const Fingerprint<MPoly>& fp, std::span<const std::optional<FieldElem>> point,
                                const PrimeField& field) {
  Fingerprint<FieldElem> out{evaluate(fp.main, point, field), {}};
  for (const auto& [x, h] : fp.helpers) out.helpers.emplace(x, evaluate(h, point, field));
  return out;
}

namespace {

void words_rec(const VarAllocation& alloc, const Formula& f, Word& path, std::vector<Word>& out) {
  Word w = path;
  w.push_back(alloc.vertex(f.symbol));
  out.push_back(std::move(w));
  for (std::size_t i = 0; i < f.children.size(); ++i) {
    path.push_back(alloc.slot(f.symbol, i + 1));
    words_rec(alloc, f.children[i], path, out);
    path.pop_back();
  }
}

void helper_words_rec(const VarAllocation& alloc, const Formula& f, std::string_view x, Word& path,
                      std::vector<Word>& out) {
  if (f.is_leaf()) {
    if (f.symbol == x) out.push_back(path);
    return;
  }
  for (std::size_t i = 0; i < f.children.size(); ++i) {
    path.push_back(alloc.slot(f.symbol, i + 1));
    helper_words_rec(alloc, f.children[i], x, path, out);
    path.pop_back();
  }
}

}  // namespace

std::vector<Word> expand_words(const VarAllocation& alloc, const Formula& f) {
  std::vector<Word> out;
  Word path;
  words_rec(alloc, f, path, out);
  return out;
}

std::vector<Word> expand_helper_words(const VarAllocation& alloc, const Formula& f, std::string_view x) {
  std::vector<Word> out;
  Word path;
  helper_words_rec(alloc, f, x, path, out);
  return out;
}

std::string render_words(const std::vector<Word>& words, const VarAllocation& alloc) {
  if (words.empty()) return "0";
  std::string out;
  for (std::size_t k = 0; k < words.size(); ++k) {
    if (k) out += " + ";
    const Word& w = words[k];
    if (w.empty()) {
      out += "1";
      continue;
    }
    for (std::size_t i = 0; i < w.size();) {
      std::size_t j = i;
      while (j < w.size() && w[j] == w[i]) ++j;
      if (i) out += " ";
      out += "A(" + alloc.name(w[i]) + ")";
      if (j - i > 1) out += "^" + std::to_string(j - i);
      i = j;
    }
  }
  return out;
}

}  // namespace pfprint
