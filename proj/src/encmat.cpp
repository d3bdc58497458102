#include "pfprint/encmat.hpp"

#include <optional>

namespace pfprint {

EncMatrix<FieldElem> evaluate(const EncMatrix<MPoly>& m, std::span<const std::optional<FieldElem>> point,
                              const PrimeField& field) {
  return {eval(m.a, point, field), eval(m.b, point, field), eval(m.d, point, field)};
}

namespace {

// Backtracking search. For a genuine product the b-entry is 1 + x_1 + x_1 x_2 + ..., so only
// the true first factor survives exact division and the search never branches in practice.
std::optional<std::vector<VarId>> factor_rec(const EncMatrix<MPoly>& m) {
  static const MPoly one(1);
  if (m.a == one) {
    if (m.b.is_zero()) return std::vector<VarId>{};
    return std::nullopt;
  }
  // a is a single monomial with coefficient 1 (checked by the caller and preserved by division)
  const Monomial& mono = m.a.terms().begin()->first;
  SymbolicRing ring;
  for (const auto& [v, e] : mono.factors()) {
    EncMatrix<MPoly> rest;
    try {
      rest = elem_inv_mul(ring, v, m);
    } catch (const Error& err) {
      if (err.code() != ErrorCode::NotDivisible) throw;
      continue;
    }
    if (auto tail = factor_rec(rest)) {
      tail->insert(tail->begin(), v);
      return tail;
    }
  }
  return std::nullopt;
}

}  // namespace

std::vector<VarId> factor_elementary_product(const EncMatrix<MPoly>& m) {
  if (!(m.d == MPoly(1)))
    throw Error(ErrorCode::NotAProduct, "(2,2) entry is " + to_string(m.d) + ", expected 1");
  if (m.a.term_count() != 1 || m.a.terms().begin()->second != 1)
    throw Error(ErrorCode::NotAProduct, "(1,1) entry " + to_string(m.a) + " is not a monic monomial");
  auto seq = factor_rec(m);
  if (!seq) throw Error(ErrorCode::NotAProduct, "no factorization into elementary matrices");
  return *seq;
}

std::string to_string(const EncMatrix<FieldElem>& m, bool compact) {
  const char* sep = compact ? "," : ", ";
  return "[" + to_string(m.a) + sep + to_string(m.b) + sep + to_string(m.d) + "]";
}

std::string to_string(const EncMatrix<MPoly>& m, const VarNamer& name) {
  return "[" + to_string(m.a, name) + ", " + to_string(m.b, name) + ", " + to_string(m.d, name) + "]";
}

}  // namespace pfprint
