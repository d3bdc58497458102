#pragma once

#include <span>
#include <string>
#include <vector>

#include "pfprint/ring.hpp"

namespace pfprint {

/// Upper-triangular 2x2 matrix [[a, b], [0, d]]. The (2,1) entry is not stored, so every
/// value of this type is upper-triangular.
template <class R>
struct EncMatrix {
  R a{};
  R b{};
  R d{};

  friend bool operator==(const EncMatrix&, const EncMatrix&) = default;
};

template <class R>
EncMatrix<R> operator+(const EncMatrix<R>& x, const EncMatrix<R>& y) {
  return {x.a + y.a, x.b + y.b, x.d + y.d};
}

template <class R>
EncMatrix<R> operator-(const EncMatrix<R>& x, const EncMatrix<R>& y) {
  return {x.a - y.a, x.b - y.b, x.d - y.d};
}

template <class R>
EncMatrix<R> operator*(const EncMatrix<R>& x, const EncMatrix<R>& y) {
  return {x.a * y.a, x.a * y.b + x.b * y.d, x.d * y.d};
}

template <class R>
EncMatrix<R>& operator+=(EncMatrix<R>& x, const EncMatrix<R>& y) {
  x.a += y.a;
  x.b += y.b;
  x.d += y.d;
  return x;
}

template <CoefficientRing Ring>
EncMatrix<typename Ring::value_type> zero_matrix(const Ring& ring) {
  return {ring.zero(), ring.zero(), ring.zero()};
}

template <CoefficientRing Ring>
EncMatrix<typename Ring::value_type> identity(const Ring& ring) {
  return {ring.one(), ring.zero(), ring.one()};
}

/// A(x_v) = [[x_v, 1], [0, 1]].
template <CoefficientRing Ring>
EncMatrix<typename Ring::value_type> elem(const Ring& ring, VarId v) {
  return {ring.var(v), ring.one(), ring.one()};
}

/// A(x_v) * m, without forming the elementary matrix.
template <CoefficientRing Ring>
EncMatrix<typename Ring::value_type> elem_mul(const Ring& ring, VarId v,
                                              const EncMatrix<typename Ring::value_type>& m) {
  auto x = ring.var(v);
  return {x * m.a, x * m.b + m.d, m.d};
}

/// A(x_v)^{-1} * m = (a / x_v, (b - d) / x_v, d).
/// Symbolic rings divide exactly (NotDivisible on failure); fields multiply by the inverse
/// (ZeroInverse when x_v = 0).
template <CoefficientRing Ring>
EncMatrix<typename Ring::value_type> elem_inv_mul(const Ring& ring, VarId v,
                                                  const EncMatrix<typename Ring::value_type>& m) {
  return {ring.div_by_var(m.a, v), ring.div_by_var(m.b - m.d, v), m.d};
}

/// A(x_{s_1}) ... A(x_{s_n}); the identity for an empty sequence.
template <CoefficientRing Ring>
EncMatrix<typename Ring::value_type> elementary_product(const Ring& ring, std::span<const VarId> seq) {
  auto out = identity(ring);
  for (auto it = seq.rbegin(); it != seq.rend(); ++it) out = elem_mul(ring, *it, out);
  return out;
}

EncMatrix<FieldElem> evaluate(const EncMatrix<MPoly>& m, std::span<const std::optional<FieldElem>> point,
                              const PrimeField& field);

/// Recovers the unique (i_1, ..., i_n) with m = A(x_{i_1}) ... A(x_{i_n}).
/// Throws NotAProduct when no such sequence exists.
std::vector<VarId> factor_elementary_product(const EncMatrix<MPoly>& m);

/// `[a, b, d]`; compact drops the spaces (transcript token form).
std::string to_string(const EncMatrix<FieldElem>& m, bool compact = false);
std::string to_string(const EncMatrix<MPoly>& m, const VarNamer& name = default_var_name);

}  // namespace pfprint
