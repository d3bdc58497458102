#pragma once

#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "pfprint/protocol.hpp"

namespace pfprint::testing {

inline const PrimeField& small_field() {
  static const PrimeField f(101);
  return f;
}

/// Point with the given (VarId, value) pairs set and everything else unset.
inline std::vector<std::optional<FieldElem>> point(const PrimeField& field,
                                                   std::initializer_list<std::pair<VarId, std::uint64_t>> values) {
  std::vector<std::optional<FieldElem>> out;
  for (auto [v, x] : values) {
    if (out.size() <= v) out.resize(v + 1);
    out[v] = field.element(x);
  }
  return out;
}

/// Uniform point in [2, p) over `n` variables.
inline std::vector<std::optional<FieldElem>> random_point(std::mt19937_64& rng, const PrimeField& field,
                                                          std::size_t n) {
  std::uniform_int_distribution<std::uint64_t> dist(2, field.modulus() - 1);
  std::vector<std::optional<FieldElem>> out(n);
  for (auto& x : out) x = field.element(dist(rng));
  return out;
}

/// Random polynomial over X_0..X_{vars-1} with small coefficients.
inline MPoly random_poly(std::mt19937_64& rng, VarId vars, int max_degree, int max_terms = 4) {
  std::uniform_int_distribution<int> terms(0, max_terms), coef(-9, 9), deg(0, max_degree);
  std::uniform_int_distribution<VarId> var(0, vars - 1);
  MPoly out;
  for (int t = terms(rng); t > 0; --t) {
    std::vector<Monomial::Factor> f;
    for (int k = deg(rng); k > 0; --k) f.emplace_back(var(rng), 1);
    out += MPoly(Monomial(f), Integer(coef(rng)));
  }
  return out;
}

/// Random formula over `->`, `!` and the given atoms whose root-to-leaf paths have at most
/// `depth` nodes.
inline Formula random_formula(std::mt19937_64& rng, int depth, const std::vector<std::string>& atoms = {"x", "y", "z"}) {
  std::uniform_int_distribution<std::size_t> pick(0, atoms.size() - 1);
  std::uniform_int_distribution<int> shape(0, 3);
  if (depth <= 1) return atom(atoms[pick(rng)]);
  switch (shape(rng)) {
    case 0:
      return atom(atoms[pick(rng)]);
    case 1:
      return negation(random_formula(rng, depth - 1, atoms));
    default:
      return implies(random_formula(rng, depth - 1, atoms), random_formula(rng, depth - 1, atoms));
  }
}

inline std::string read_fixture(const std::string& relative) {
  std::ifstream in(std::string(PFPRINT_SOURCE_DIR) + "/" + relative);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace pfprint::testing
