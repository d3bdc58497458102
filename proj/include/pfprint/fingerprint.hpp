#pragma once

#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pfprint/encmat.hpp"
#include "pfprint/logic.hpp"

namespace pfprint {

/// Assigns polynomial variables to symbol slots: slot 0 is the vertex variable C of a symbol,
/// slots 1..d its edge variables C_1..C_d.
///
/// `->` owns I=0, I1=1, I2=2 and `!` owns N=3, N1=4. Every other symbol is allocated in
/// lexicographic name order, slots in order, densely from 5. Display names are I, I1, I2, N, N1
/// for the builtins and `s`, `s.1`, `s.2`, ... for a symbol `s`.
class VarAllocation {
 public:
  static constexpr VarId kI = 0, kI1 = 1, kI2 = 2, kN = 3, kN1 = 4;

  VarAllocation() : VarAllocation(std::map<std::string, std::size_t>{}) {}
  /// `symbols` maps name -> arity; builtin connectives in it are ignored.
  explicit VarAllocation(const std::map<std::string, std::size_t>& symbols);

  /// Allocation covering every symbol of the given formulas and of `sig`.
  static VarAllocation covering(std::span<const Formula> formulas, const Signature& sig = Signature());

  /// Throws UnallocatedSymbol.
  VarId slot(std::string_view symbol, std::size_t index) const;
  VarId vertex(std::string_view symbol) const { return slot(symbol, 0); }

  bool contains(std::string_view symbol) const { return first_.find(symbol) != first_.end(); }
  std::size_t size() const noexcept { return names_.size(); }
  const std::string& name(VarId v) const { return names_.at(v); }
  std::optional<VarId> find_name(std::string_view name) const;
  VarNamer namer() const;

 private:
  void add(const std::string& symbol, std::size_t arity);

  std::map<std::string, VarId, std::less<>> first_;
  std::map<std::string, std::size_t, std::less<>> arity_;
  std::vector<std::string> names_;
};

/// ([phi], {[phi]_x}) for a tracked set of variables. Absent variables have zero helpers.
template <class R>
struct Fingerprint {
  EncMatrix<R> main;
  std::map<std::string, EncMatrix<R>> helpers;

  friend bool operator==(const Fingerprint&, const Fingerprint&) = default;
};

/// Nodes on the longest root-to-leaf path; bounds the total degree of every entry of the
/// encoding and of all helpers.
std::size_t degree_bound(const Formula& f);

/// [c(T_1..T_d)] = A(C) + sum_i A(C_i) [T_i]. A leaf x gives A(X).
template <CoefficientRing Ring>
EncMatrix<typename Ring::value_type> encode(const Ring& ring, const VarAllocation& alloc, const Formula& f) {
  auto out = elem(ring, alloc.vertex(f.symbol));
  for (std::size_t i = 0; i < f.children.size(); ++i)
    out += elem_mul(ring, alloc.slot(f.symbol, i + 1), encode(ring, alloc, f.children[i]));
  return out;
}

namespace detail {

// Helpers are kept sparse during the recursion: only variables that occur in the subtree.
template <CoefficientRing Ring>
Fingerprint<typename Ring::value_type> encode_sparse(const Ring& ring, const VarAllocation& alloc,
                                                     const Formula& f, const std::set<std::string>& tracked) {
  Fingerprint<typename Ring::value_type> out{elem(ring, alloc.vertex(f.symbol)), {}};
  if (f.is_leaf()) {
    if (tracked.count(f.symbol)) out.helpers.emplace(f.symbol, identity(ring));
    return out;
  }
  for (std::size_t i = 0; i < f.children.size(); ++i) {
    VarId edge = alloc.slot(f.symbol, i + 1);
    auto child = encode_sparse(ring, alloc, f.children[i], tracked);
    out.main += elem_mul(ring, edge, child.main);
    for (auto& [x, h] : child.helpers) {
      auto lifted = elem_mul(ring, edge, h);
      auto [it, inserted] = out.helpers.try_emplace(x, lifted);
      if (!inserted) it->second += lifted;
    }
  }
  return out;
}

}  // namespace detail

/// Direct encoding together with [phi]_x for every x in `tracked`: [x]_x = identity,
/// [y]_x = 0 for a leaf y != x, [c(T_1..T_d)]_x = sum_i A(C_i) [T_i]_x.
template <CoefficientRing Ring>
Fingerprint<typename Ring::value_type> encode_fingerprint(const Ring& ring, const VarAllocation& alloc,
                                                          const Formula& f, const std::set<std::string>& tracked) {
  auto out = detail::encode_sparse(ring, alloc, f, tracked);
  for (const auto& x : tracked) out.helpers.try_emplace(x, zero_matrix(ring));
  return out;
}

namespace detail {

template <class R>
const EncMatrix<R>& helper_of(const Fingerprint<R>& fp, const std::string& x) {
  auto it = fp.helpers.find(x);
  if (it == fp.helpers.end()) throw Error(ErrorCode::UntrackedVariable, "'" + x + "' is not tracked");
  return it->second;
}

}  // namespace detail

/// Modus ponens on fingerprints:
///   [psi]   = A(I2)^{-1} ([phi -> psi]   - A(I) - A(I1) [phi])
///   [psi]_x = A(I2)^{-1} ([phi -> psi]_x - A(I1) [phi]_x)
/// No structural check is made; in symbolic mode a malformed step usually surfaces as
/// NotDivisible.
template <CoefficientRing Ring>
Fingerprint<typename Ring::value_type> hom_mp(const Ring& ring, const Fingerprint<typename Ring::value_type>& hyp,
                                              const Fingerprint<typename Ring::value_type>& imp) {
  using VA = VarAllocation;
  if (hyp.helpers.size() != imp.helpers.size())
    throw Error(ErrorCode::UntrackedVariable, "modus ponens operands track different variables");
  Fingerprint<typename Ring::value_type> out;
  out.main = elem_inv_mul(ring, VA::kI2, imp.main - elem(ring, VA::kI) - elem_mul(ring, VA::kI1, hyp.main));
  for (const auto& [x, h] : imp.helpers)
    out.helpers.emplace(x, elem_inv_mul(ring, VA::kI2, h - elem_mul(ring, VA::kI1, detail::helper_of(hyp, x))));
  return out;
}

/// Substitution x := psi on fingerprints:
///   [phi(x/psi)]   = [phi] - [phi]_x A(X) + [phi]_x [psi]
///   [phi(x/psi)]_y = [phi]_y + [phi]_x [psi]_y   (y != x)
///   [phi(x/psi)]_x = [phi]_x [psi]_x
template <CoefficientRing Ring>
Fingerprint<typename Ring::value_type> hom_subst(const Ring& ring, const VarAllocation& alloc,
                                                 const Fingerprint<typename Ring::value_type>& src,
                                                 const std::string& variable,
                                                 const Fingerprint<typename Ring::value_type>& repl) {
  const auto& hx = detail::helper_of(src, variable);
  detail::helper_of(repl, variable);
  Fingerprint<typename Ring::value_type> out;
  out.main = src.main - hx * elem(ring, alloc.vertex(variable)) + hx * repl.main;
  for (const auto& [y, hy] : src.helpers) {
    if (y == variable) {
      out.helpers.emplace(y, hx * detail::helper_of(repl, y));
    } else {
      out.helpers.emplace(y, hy + hx * detail::helper_of(repl, y));
    }
  }
  return out;
}

Fingerprint<FieldElem> evaluate(const Fingerprint<MPoly>& fp, std::span<const std::optional<FieldElem>> point,
                                const PrimeField& field);

/// Non-commutative expansion of an encoding: one word of elementary matrices per summand.
using Word = std::vector<VarId>;

/// One word per node in preorder: the edge variables on the root path, then the node's vertex
/// variable.
std::vector<Word> expand_words(const VarAllocation& alloc, const Formula& f);
/// One word per occurrence of leaf `x` in preorder: the edge variables on its root path.
std::vector<Word> expand_helper_words(const VarAllocation& alloc, const Formula& f, std::string_view x);
/// `A(I) + A(I1) A(I) + A(I1)^2 A(x)`; the empty word prints as `1`, the empty sum as `0`.
std::string render_words(const std::vector<Word>& words, const VarAllocation& alloc);

/// Sum of the products denoted by the words.
template <CoefficientRing Ring>
EncMatrix<typename Ring::value_type> sum_of_words(const Ring& ring, const std::vector<Word>& words) {
  auto out = zero_matrix(ring);
  for (const auto& w : words) out += elementary_product(ring, std::span<const VarId>(w));
  return out;
}

}  // namespace pfprint
