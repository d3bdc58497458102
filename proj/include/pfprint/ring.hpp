#pragma once

#include <concepts>
#include <optional>
#include <span>
#include <vector>

#include "pfprint/error.hpp"
#include "pfprint/ffield.hpp"
#include "pfprint/mpoly.hpp"

namespace pfprint {

/// A coefficient ring context: how to build 0, 1 and the image of X_v, and how to divide by X_v.
/// Encoding and the homomorphic operators are written once against this interface.
template <class Ring>
concept CoefficientRing = requires(const Ring& ring, VarId v, const typename Ring::value_type& x) {
  { ring.zero() } -> std::same_as<typename Ring::value_type>;
  { ring.one() } -> std::same_as<typename Ring::value_type>;
  { ring.var(v) } -> std::same_as<typename Ring::value_type>;
  { ring.div_by_var(x, v) } -> std::same_as<typename Ring::value_type>;
  { x + x } -> std::convertible_to<typename Ring::value_type>;
  { x - x } -> std::convertible_to<typename Ring::value_type>;
  { x * x } -> std::convertible_to<typename Ring::value_type>;
};

/// Z[X_0, X_1, ...] with exact division.
struct SymbolicRing {
  using value_type = MPoly;

  MPoly zero() const { return MPoly(); }
  MPoly one() const { return MPoly(1); }
  MPoly var(VarId v) const { return MPoly::variable(v); }
  MPoly div_by_var(const MPoly& x, VarId v) const { return div_exact_by_var(x, v); }
};

/// F_p with every X_v replaced by a point coordinate.
class FieldRing {
 public:
  using value_type = FieldElem;

  FieldRing(PrimeField field, std::vector<std::optional<FieldElem>> point)
      : field_(field), point_(std::move(point)) {}

  const PrimeField& field() const noexcept { return field_; }
  std::span<const std::optional<FieldElem>> point() const noexcept { return point_; }

  FieldElem zero() const { return field_.zero(); }
  FieldElem one() const { return field_.one(); }

  FieldElem var(VarId v) const {
    if (v >= point_.size() || !point_[v])
      throw Error(ErrorCode::MissingAssignment, "no value for " + default_var_name(v));
    return *point_[v];
  }

  FieldElem div_by_var(const FieldElem& x, VarId v) const { return x * var(v).inv(); }

 private:
  PrimeField field_;
  std::vector<std::optional<FieldElem>> point_;
};

static_assert(CoefficientRing<SymbolicRing>);
static_assert(CoefficientRing<FieldRing>);

}  // namespace pfprint
