#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace pfprint {

inline constexpr std::string_view kImplies = "->";
inline constexpr std::string_view kNot = "!";

enum class SymbolKind { Connective, Function, Variable };

struct Symbol {
  std::string name;
  std::size_t arity = 0;
  SymbolKind kind = SymbolKind::Variable;

  friend bool operator==(const Symbol&, const Symbol&) = default;
};

/// Declared symbols. `->` and `!` are always present; identifiers that are not declared are
/// read as variables by the parser, function symbols must be declared.
class Signature {
 public:
  Signature();

  /// Adds a function (arity > 0) or variable (arity 0). Redeclaring with the same arity is a
  /// no-op; anything else throws ArityMismatch. The names I, I1, I2, N, N1 are reserved.
  void declare(const std::string& name, std::size_t arity);

  std::optional<Symbol> find(std::string_view name) const;
  const std::vector<Symbol>& symbols() const noexcept { return symbols_; }

 private:
  std::vector<Symbol> symbols_;
};

bool is_reserved_symbol(std::string_view name);

/// Formula or term tree. The root symbol's arity is children.size().
struct Formula {
  std::string symbol;
  std::vector<Formula> children;

  bool is_leaf() const noexcept { return children.empty(); }
  bool is_implication() const noexcept { return symbol == kImplies && children.size() == 2; }

  friend bool operator==(const Formula&, const Formula&) = default;
};

Formula atom(std::string name);
Formula negation(Formula f);
Formula implies(Formula lhs, Formula rhs);
Formula apply(std::string name, std::vector<Formula> children);

std::size_t node_count(const Formula& f);
std::size_t occurrences(const Formula& f, std::string_view variable);
/// Names of all leaves.
std::set<std::string> leaf_names(const Formula& f);
/// Every (symbol, arity) used in f, builtins included.
void collect_symbols(const Formula& f, std::map<std::string, std::size_t>& out);

/// Canonical concrete syntax: `(a -> b)`, `!a`, `f(a, b)`, `x`.
std::string to_string(const Formula& f);

/// formula := atom | '!' formula | '(' formula '->' formula ')' | name '(' formula {',' formula} ')'
Formula parse_formula(std::string_view text, const Signature& sig);
/// Parses one formula starting at `pos` and advances `pos` past it (and trailing blanks).
Formula parse_formula_prefix(std::string_view text, std::size_t& pos, const Signature& sig);

/// Replaces every leaf `variable` of f by `replacement`. Throws NotAVariable if `variable` is
/// declared with positive arity.
Formula subst_syntactic(const Formula& f, std::string_view variable, const Formula& replacement,
                        const Signature& sig = Signature());

enum class Scheme { K, S, N };

struct AxiomScheme {
  Scheme scheme;
  std::vector<std::string> metavars;  ///< binding keys, e.g. "alpha"
  Formula templ;                      ///< leaves are the metavariable symbols, see metavar_symbol
};

/// Internal leaf symbol of a metavariable ("$alpha"); unparseable, so it never clashes.
std::string metavar_symbol(std::string_view metavar);
const AxiomScheme& axiom_scheme(Scheme s);
std::string_view to_string(Scheme s);
std::optional<Scheme> scheme_from_string(std::string_view name);

using Binding = std::map<std::string, Formula>;

/// Simultaneous substitution of the scheme's metavariables. Throws MissingBinding.
Formula instantiate_axiom(Scheme s, const Binding& binding);

struct AxiomStep {
  Scheme scheme;
  Binding binding;
};
/// From `hyp` : phi and `imp` : phi -> psi conclude psi (0-based step indices).
struct MPStep {
  std::size_t hyp;
  std::size_t imp;
};
struct SubstStep {
  std::size_t source;
  std::string variable;
  std::variant<Formula, std::size_t> replacement;  ///< literal formula or step index
};
using Step = std::variant<AxiomStep, MPStep, SubstStep>;

std::string_view step_kind(const Step& s);

struct ProofScript {
  std::string id;
  Signature signature;
  Formula goal;
  std::vector<Step> steps;
  std::size_t qed = 0;  ///< 0-based
};

/// Line-oriented proof file: `proof "<id>"`, optional `symbol <name> arity <k>`, `goal <formula>`,
/// numbered steps (`n axiom K { alpha = .., beta = .. }`, `n mp h i`,
/// `n subst i var with <formula>`, `n subst i var step j`) and `qed n`. `#` starts a comment.
ProofScript parse_proof(std::string_view text);
std::string to_string(const ProofScript& script);

/// Syntactic replay: the formula of every step, in order.
/// Throws MPShapeMismatch, NotAVariable, MissingBinding.
std::vector<Formula> step_formulas(const ProofScript& script);

/// Replays the script and returns the qed formula; GoalMismatch if it differs from the goal.
Formula run_classical(const ProofScript& script);

/// Every arity-0 symbol mentioned anywhere in the script (goal, bindings, literal
/// replacements and substituted variables).
std::set<std::string> script_variables(const ProofScript& script);

}  // namespace pfprint
