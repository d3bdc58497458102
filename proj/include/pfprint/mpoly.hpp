#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pfprint/ffield.hpp"

namespace pfprint {

/// Index of a polynomial variable X_0, X_1, ...
using VarId = std::uint32_t;
using Integer = mpz_class;

/// Commutative monomial: (variable, exponent) pairs sorted strictly ascending by variable,
/// exponents >= 1. The empty monomial is 1.
class Monomial {
 public:
  using Factor = std::pair<VarId, std::uint32_t>;

  Monomial() = default;
  /// Sorts, merges repeated variables and drops zero exponents.
  explicit Monomial(std::vector<Factor> factors);
  static Monomial variable(VarId v, std::uint32_t exponent = 1);

  const std::vector<Factor>& factors() const noexcept { return factors_; }
  bool is_one() const noexcept { return factors_.empty(); }
  int degree() const noexcept;
  std::uint32_t exponent(VarId v) const noexcept;

  /// Divides out one power of v; v must occur.
  Monomial divided_by(VarId v) const;

  friend Monomial operator*(const Monomial& a, const Monomial& b);
  friend bool operator==(const Monomial&, const Monomial&) = default;
  friend bool operator<(const Monomial& a, const Monomial& b) { return a.factors_ < b.factors_; }

 private:
  std::vector<Factor> factors_;
};

/// Sparse polynomial in Z[X_0, X_1, ...]. Canonical: no zero coefficient is ever stored,
/// so structural equality is polynomial equality.
class MPoly {
 public:
  using TermMap = std::map<Monomial, Integer>;

  MPoly() = default;
  MPoly(long constant);  // NOLINT(google-explicit-constructor)
  explicit MPoly(const Integer& constant);
  MPoly(const Monomial& m, const Integer& coefficient);
  static MPoly variable(VarId v);

  const TermMap& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t term_count() const noexcept { return terms_.size(); }
  /// Coefficient of m (zero if absent).
  Integer coefficient(const Monomial& m) const;

  MPoly& operator+=(const MPoly& o);
  MPoly& operator-=(const MPoly& o);
  MPoly& operator*=(const MPoly& o) { return *this = *this * o; }

  friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
  friend MPoly operator-(MPoly a, const MPoly& b) { return a -= b; }
  friend MPoly operator-(const MPoly& a);
  friend MPoly operator*(const MPoly& a, const MPoly& b);
  friend bool operator==(const MPoly& a, const MPoly& b);

 private:
  void accumulate(const Monomial& m, const Integer& c);

  TermMap terms_;
};

/// q with q * X_v == a. Throws NotDivisible if some monomial of a lacks v.
MPoly div_exact_by_var(const MPoly& a, VarId v);

/// Total degree; -1 for the zero polynomial.
int degree(const MPoly& a);

/// Evaluation at a point indexed by VarId. Throws MissingAssignment for an unset variable.
FieldElem eval(const MPoly& a, std::span<const std::optional<FieldElem>> point,
               const PrimeField& field);

/// Reduces an integer into F_p.
FieldElem reduce(const Integer& c, const PrimeField& field);

using VarNamer = std::function<std::string(VarId)>;
std::string default_var_name(VarId v);

/// Terms ordered by degree descending, then monomial lexicographic; e.g. `2*X3^2*X5 + X1 - 4`.
std::string to_string(const MPoly& a, const VarNamer& name = default_var_name);

using VarResolver = std::function<VarId(std::string_view)>;

/// Inverse of to_string. Accepts `+`, `-`, `*`, `^` with non-negative integer exponents and
/// identifiers resolved through `resolve`; the default resolver accepts `X<digits>` only.
MPoly parse_mpoly(std::string_view text, const VarResolver& resolve = {});

}  // namespace pfprint
