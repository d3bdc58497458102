#include "pfprint/logic.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>

#include "pfprint/error.hpp"

namespace pfprint {

// ---------------------------------------------------------------------------------------------
// Signature and trees

bool is_reserved_symbol(std::string_view name) {
  static constexpr std::array<std::string_view, 5> reserved{"I", "I1", "I2", "N", "N1"};
  return std::find(reserved.begin(), reserved.end(), name) != reserved.end();
}

Signature::Signature() {
  symbols_.push_back({std::string(kImplies), 2, SymbolKind::Connective});
  symbols_.push_back({std::string(kNot), 1, SymbolKind::Connective});
}

void Signature::declare(const std::string& name, std::size_t arity) {
  if (is_reserved_symbol(name))
    throw Error(ErrorCode::ReservedSymbol, "'" + name + "' names a builtin polynomial variable");
  if (auto existing = find(name)) {
    if (existing->arity != arity)
      throw Error(ErrorCode::ArityMismatch, "'" + name + "' already has arity " + std::to_string(existing->arity));
    return;
  }
  symbols_.push_back({name, arity, arity == 0 ? SymbolKind::Variable : SymbolKind::Function});
}

std::optional<Symbol> Signature::find(std::string_view name) const {
  for (const auto& s : symbols_)
    if (s.name == name) return s;
  return std::nullopt;
}

Formula atom(std::string name) { return Formula{std::move(name), {}}; }
Formula negation(Formula f) { return Formula{std::string(kNot), {std::move(f)}}; }
Formula implies(Formula lhs, Formula rhs) {
  std::vector<Formula> kids;
  kids.reserve(2);
  kids.push_back(std::move(lhs));
  kids.push_back(std::move(rhs));
  return Formula{std::string(kImplies), std::move(kids)};
}
Formula apply(std::string name, std::vector<Formula> children) {
  return Formula{std::move(name), std::move(children)};
}

std::size_t node_count(const Formula& f) {
  std::size_t n = 1;
  for (const auto& c : f.children) n += node_count(c);
  return n;
}

std::size_t occurrences(const Formula& f, std::string_view variable) {
  if (f.is_leaf()) return f.symbol == variable ? 1 : 0;
  std::size_t n = 0;
  for (const auto& c : f.children) n += occurrences(c, variable);
  return n;
}

std::set<std::string> leaf_names(const Formula& f) {
  std::set<std::string> out;
  auto walk = [&](auto& self, const Formula& g) -> void {
    if (g.is_leaf()) out.insert(g.symbol);
    for (const auto& c : g.children) self(self, c);
  };
  walk(walk, f);
  return out;
}

void collect_symbols(const Formula& f, std::map<std::string, std::size_t>& out) {
  out.emplace(f.symbol, f.children.size());
  for (const auto& c : f.children) collect_symbols(c, out);
}

std::string to_string(const Formula& f) {
  if (f.is_implication()) return "(" + to_string(f.children[0]) + " -> " + to_string(f.children[1]) + ")";
  if (f.symbol == kNot && f.children.size() == 1) return "!" + to_string(f.children[0]);
  if (f.is_leaf()) return f.symbol;
  std::string out = f.symbol + "(";
  for (std::size_t i = 0; i < f.children.size(); ++i) {
    if (i) out += ", ";
    out += to_string(f.children[i]);
  }
  return out + ")";
}

// ---------------------------------------------------------------------------------------------
// Formula parser

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

class FormulaParser {
 public:
  FormulaParser(std::string_view text, std::size_t pos, const Signature& sig, std::size_t base)
      : text_(text), pos_(pos), sig_(sig), base_(base) {}

  Formula formula() {
    skip();
    char c = peek();
    if (c == '!') {
      ++pos_;
      return negation(formula());
    }
    if (c == '(') {
      ++pos_;
      Formula lhs = formula();
      skip();
      if (text_.substr(pos_, 2) != kImplies) fail("expected '->'");
      pos_ += 2;
      Formula rhs = formula();
      skip();
      expect(')');
      return implies(std::move(lhs), std::move(rhs));
    }
    if (!ident_start(c)) fail(c == '\0' ? "unexpected end of input" : std::string("unexpected '") + c + "'");

    std::size_t start = pos_;
    while (ident_char(peek())) ++pos_;
    std::string name(text_.substr(start, pos_ - start));
    if (is_reserved_symbol(name))
      throw Error(ErrorCode::ReservedSymbol, "'" + name + "' names a builtin polynomial variable");
    auto sym = sig_.find(name);

    std::size_t after = pos_;
    skip();
    if (peek() != '(') {
      pos_ = after;
      if (sym && sym->arity != 0)
        throw Error(ErrorCode::ArityMismatch, "'" + name + "' expects " + std::to_string(sym->arity) + " arguments");
      return atom(std::move(name));
    }
    if (!sym) throw Error(ErrorCode::UnknownSymbol, "undeclared function symbol '" + name + "'");
    ++pos_;
    std::vector<Formula> args;
    args.push_back(formula());
    skip();
    while (peek() == ',') {
      ++pos_;
      args.push_back(formula());
      skip();
    }
    expect(')');
    if (args.size() != sym->arity)
      throw Error(ErrorCode::ArityMismatch, "'" + name + "' expects " + std::to_string(sym->arity) +
                                                " arguments, got " + std::to_string(args.size()));
    return apply(std::move(name), std::move(args));
  }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  std::size_t pos() const { return pos_; }

 private:
  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }
  [[noreturn]] void fail(const std::string& msg) const { throw SyntaxError(base_ + pos_, msg); }

  std::string_view text_;
  std::size_t pos_;
  const Signature& sig_;
  std::size_t base_;
};

}  // namespace

Formula parse_formula_prefix(std::string_view text, std::size_t& pos, const Signature& sig) {
  FormulaParser p(text, pos, sig, 0);
  Formula f = p.formula();
  p.skip();
  pos = p.pos();
  return f;
}

Formula parse_formula(std::string_view text, const Signature& sig) {
  std::size_t pos = 0;
  Formula f = parse_formula_prefix(text, pos, sig);
  if (pos != text.size()) throw SyntaxError(pos, "trailing input");
  return f;
}

// ---------------------------------------------------------------------------------------------
// Substitution and axioms

namespace {

Formula substitute_leaves(const Formula& f, const std::map<std::string, const Formula*>& repl) {
  if (f.is_leaf()) {
    auto it = repl.find(f.symbol);
    return it == repl.end() ? f : *it->second;
  }
  Formula out{f.symbol, {}};
  out.children.reserve(f.children.size());
  for (const auto& c : f.children) out.children.push_back(substitute_leaves(c, repl));
  return out;
}

}  // namespace

Formula subst_syntactic(const Formula& f, std::string_view variable, const Formula& replacement,
                        const Signature& sig) {
  if (auto sym = sig.find(variable); sym && sym->arity != 0)
    throw Error(ErrorCode::NotAVariable, "'" + std::string(variable) + "' has arity " + std::to_string(sym->arity));
  return substitute_leaves(f, {{std::string(variable), &replacement}});
}

std::string metavar_symbol(std::string_view metavar) { return "$" + std::string(metavar); }

const AxiomScheme& axiom_scheme(Scheme s) {
  static const auto schemes = [] {
    Formula a = atom(metavar_symbol("alpha"));
    Formula b = atom(metavar_symbol("beta"));
    Formula g = atom(metavar_symbol("gamma"));
    std::array<AxiomScheme, 3> out{
        AxiomScheme{Scheme::K, {"alpha", "beta"}, implies(a, implies(b, a))},
        AxiomScheme{Scheme::S,
                    {"alpha", "beta", "gamma"},
                    implies(implies(a, implies(b, g)), implies(implies(a, b), implies(a, g)))},
        AxiomScheme{Scheme::N, {"alpha", "beta"}, implies(implies(negation(a), negation(b)), implies(b, a))},
    };
    return out;
  }();
  return schemes[static_cast<std::size_t>(s)];
}

std::string_view to_string(Scheme s) {
  switch (s) {
    case Scheme::K: return "K";
    case Scheme::S: return "S";
    case Scheme::N: return "N";
  }
  return "?";
}

std::optional<Scheme> scheme_from_string(std::string_view name) {
  if (name == "K") return Scheme::K;
  if (name == "S") return Scheme::S;
  if (name == "N") return Scheme::N;
  return std::nullopt;
}

Formula instantiate_axiom(Scheme s, const Binding& binding) {
  const AxiomScheme& scheme = axiom_scheme(s);
  std::map<std::string, const Formula*> repl;
  for (const auto& mv : scheme.metavars) {
    auto it = binding.find(mv);
    if (it == binding.end())
      throw Error(ErrorCode::MissingBinding, std::string(to_string(s)) + " needs a binding for " + mv);
    repl.emplace(metavar_symbol(mv), &it->second);
  }
  return substitute_leaves(scheme.templ, repl);
}

std::string_view step_kind(const Step& s) {
  struct {
    std::string_view operator()(const AxiomStep&) const { return "axiom"; }
    std::string_view operator()(const MPStep&) const { return "mp"; }
    std::string_view operator()(const SubstStep&) const { return "subst"; }
  } visitor;
  return std::visit(visitor, s);
}

// ---------------------------------------------------------------------------------------------
// Proof scripts

namespace {

class ProofParser {
 public:
  explicit ProofParser(std::string_view text) : text_(text) {}

  ProofScript parse() {
    ProofScript script;
    bool have_goal = false;
    std::optional<std::size_t> qed;
    std::size_t line_start = 0;
    while (line_start <= text_.size()) {
      std::size_t nl = text_.find('\n', line_start);
      if (nl == std::string_view::npos) nl = text_.size();
      std::string_view line = text_.substr(line_start, nl - line_start);
      if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
      line_ = line;
      base_ = line_start;
      pos_ = 0;
      skip();
      if (pos_ < line_.size()) {
        if (qed) fail("content after qed");
        std::string_view head = word();
        if (head == "proof") {
          script.id = proof_id();
        } else if (head == "symbol") {
          if (have_goal) fail("symbol declarations must precede the goal");
          std::string name(ident());
          if (word() != "arity") fail("expected 'arity'");
          script.signature.declare(name, number());
        } else if (head == "goal") {
          if (have_goal) fail("duplicate goal");
          script.goal = formula(script.signature);
          have_goal = true;
        } else if (head == "qed") {
          std::size_t n = number();
          if (n == 0 || n > script.steps.size())
            throw Error(ErrorCode::BadQed, "qed " + std::to_string(n) + " but the proof has " +
                                               std::to_string(script.steps.size()) + " steps");
          qed = n - 1;
        } else if (!head.empty() && std::isdigit(static_cast<unsigned char>(head[0]))) {
          if (!have_goal) fail("steps must follow the goal");
          std::size_t n = to_number(head);
          if (n != script.steps.size() + 1)
            fail("expected step " + std::to_string(script.steps.size() + 1));
          script.steps.push_back(step(n, script.signature));
        } else {
          fail("unknown directive '" + std::string(head) + "'");
        }
        skip();
        if (pos_ != line_.size()) fail("trailing input");
      }
      line_start = nl + 1;
    }
    if (!have_goal) throw SyntaxError(text_.size(), "missing goal");
    if (!qed) throw Error(ErrorCode::BadQed, "missing qed line");
    script.qed = *qed;
    return script;
  }

 private:
  Step step(std::size_t n, const Signature& sig) {
    std::string_view kind = word();
    if (kind == "axiom") {
      std::string_view name = word();
      auto scheme = scheme_from_string(name);
      if (!scheme) fail("unknown axiom scheme '" + std::string(name) + "'");
      const auto& metavars = axiom_scheme(*scheme).metavars;
      AxiomStep out{*scheme, {}};
      expect('{');
      skip();
      if (peek() != '}') {
        for (;;) {
          std::string key(ident());
          if (std::find(metavars.begin(), metavars.end(), key) == metavars.end())
            fail("scheme " + std::string(name) + " has no metavariable '" + key + "'");
          expect('=');
          if (!out.binding.emplace(key, formula(sig)).second) fail("duplicate binding for " + key);
          skip();
          if (peek() == ',') {
            ++pos_;
            continue;
          }
          break;
        }
      }
      expect('}');
      return out;
    }
    if (kind == "mp") {
      std::size_t h = reference(n);
      std::size_t i = reference(n);
      return MPStep{h, i};
    }
    if (kind == "subst") {
      std::size_t src = reference(n);
      std::string var(ident());
      std::string_view how = word();
      if (how == "with") return SubstStep{src, var, formula(sig)};
      if (how == "step") return SubstStep{src, var, reference(n)};
      fail("expected 'with' or 'step'");
    }
    fail("unknown step kind '" + std::string(kind) + "'");
  }

  std::size_t reference(std::size_t current) {
    std::size_t at = pos_;
    std::size_t r = number();
    if (r == 0) throw SyntaxError(base_ + at, "step references start at 1");
    if (r >= current)
      throw Error(ErrorCode::ForwardReference,
                  "step " + std::to_string(current) + " references step " + std::to_string(r));
    return r - 1;
  }

  Formula formula(const Signature& sig) {
    skip();
    FormulaParser p(line_, pos_, sig, base_);
    Formula f = p.formula();
    pos_ = p.pos();
    return f;
  }

  std::string proof_id() {
    skip();
    if (peek() != '"') return std::string(word());
    std::size_t close = line_.find('"', pos_ + 1);
    if (close == std::string_view::npos) fail("unterminated proof id");
    std::string id(line_.substr(pos_ + 1, close - pos_ - 1));
    pos_ = close + 1;
    return id;
  }

  std::string_view word() {
    skip();
    std::size_t start = pos_;
    while (pos_ < line_.size() && !std::isspace(static_cast<unsigned char>(line_[pos_])) && line_[pos_] != '{')
      ++pos_;
    return line_.substr(start, pos_ - start);
  }

  std::string_view ident() {
    skip();
    std::size_t start = pos_;
    if (!ident_start(peek())) fail("expected an identifier");
    while (ident_char(peek())) ++pos_;
    return line_.substr(start, pos_ - start);
  }

  std::size_t number() {
    skip();
    std::size_t start = pos_;
    while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (start == pos_) fail("expected a number");
    return to_number(line_.substr(start, pos_ - start));
  }

  std::size_t to_number(std::string_view digits) {
    std::size_t n = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), n);
    if (ec != std::errc() || ptr != digits.data() + digits.size()) fail("bad number '" + std::string(digits) + "'");
    return n;
  }

  void expect(char c) {
    skip();
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }
  char peek() const { return pos_ < line_.size() ? line_[pos_] : '\0'; }
  void skip() {
    while (pos_ < line_.size() && std::isspace(static_cast<unsigned char>(line_[pos_]))) ++pos_;
  }
  [[noreturn]] void fail(const std::string& msg) const { throw SyntaxError(base_ + pos_, msg); }

  std::string_view text_;
  std::string_view line_;
  std::size_t base_ = 0;
  std::size_t pos_ = 0;
};

}  // namespace

ProofScript parse_proof(std::string_view text) { return ProofParser(text).parse(); }

std::string to_string(const ProofScript& script) {
  std::string out = "proof \"" + script.id + "\"\n";
  for (const auto& s : script.signature.symbols())
    if (s.kind != SymbolKind::Connective)
      out += "symbol " + s.name + " arity " + std::to_string(s.arity) + "\n";
  out += "goal " + to_string(script.goal) + "\n";
  for (std::size_t i = 0; i < script.steps.size(); ++i) {
    out += std::to_string(i + 1) + " ";
    const Step& st = script.steps[i];
    if (const auto* ax = std::get_if<AxiomStep>(&st)) {
      out += "axiom " + std::string(to_string(ax->scheme)) + " {";
      bool first = true;
      for (const auto& mv : axiom_scheme(ax->scheme).metavars) {
        auto it = ax->binding.find(mv);
        if (it == ax->binding.end()) continue;
        out += first ? " " : ", ";
        out += mv + " = " + to_string(it->second);
        first = false;
      }
      out += " }";
    } else if (const auto* mp = std::get_if<MPStep>(&st)) {
      out += "mp " + std::to_string(mp->hyp + 1) + " " + std::to_string(mp->imp + 1);
    } else {
      const auto& sb = std::get<SubstStep>(st);
      out += "subst " + std::to_string(sb.source + 1) + " " + sb.variable;
      if (const auto* f = std::get_if<Formula>(&sb.replacement)) {
        out += " with " + to_string(*f);
      } else {
        out += " step " + std::to_string(std::get<std::size_t>(sb.replacement) + 1);
      }
    }
    out += "\n";
  }
  out += "qed " + std::to_string(script.qed + 1) + "\n";
  return out;
}

// ---------------------------------------------------------------------------------------------
// Classical replay

std::vector<Formula> step_formulas(const ProofScript& script) {
  std::vector<Formula> out;
  out.reserve(script.steps.size());
  for (std::size_t n = 0; n < script.steps.size(); ++n) {
    const Step& st = script.steps[n];
    if (const auto* ax = std::get_if<AxiomStep>(&st)) {
      out.push_back(instantiate_axiom(ax->scheme, ax->binding));
    } else if (const auto* mp = std::get_if<MPStep>(&st)) {
      const Formula& hyp = out.at(mp->hyp);
      const Formula& imp = out.at(mp->imp);
      if (!imp.is_implication() || !(imp.children[0] == hyp))
        throw Error(ErrorCode::MPShapeMismatch, "step " + std::to_string(n + 1) + ": step " +
                                                    std::to_string(mp->imp + 1) + " is not an implication from step " +
                                                    std::to_string(mp->hyp + 1));
      out.push_back(imp.children[1]);
    } else {
      const auto& sb = std::get<SubstStep>(st);
      const Formula& repl = std::holds_alternative<Formula>(sb.replacement)
                                ? std::get<Formula>(sb.replacement)
                                : out.at(std::get<std::size_t>(sb.replacement));
      out.push_back(subst_syntactic(out.at(sb.source), sb.variable, repl, script.signature));
    }
  }
  return out;
}

Formula run_classical(const ProofScript& script) {
  auto formulas = step_formulas(script);
  Formula concl = formulas.at(script.qed);
  if (!(concl == script.goal))
    throw Error(ErrorCode::GoalMismatch, "proved " + to_string(concl) + ", goal is " + to_string(script.goal));
  return concl;
}

std::set<std::string> script_variables(const ProofScript& script) {
  std::set<std::string> out = leaf_names(script.goal);
  auto merge = [&](const Formula& f) {
    auto names = leaf_names(f);
    out.insert(names.begin(), names.end());
  };
  for (const auto& st : script.steps) {
    if (const auto* ax = std::get_if<AxiomStep>(&st)) {
      for (const auto& [k, f] : ax->binding) merge(f);
    } else if (const auto* sb = std::get_if<SubstStep>(&st)) {
      out.insert(sb->variable);
      if (const auto* f = std::get_if<Formula>(&sb->replacement)) merge(*f);
    }
  }
  return out;
}

}  // namespace pfprint
