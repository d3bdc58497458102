// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include "cli.hpp"
#include "pfprint/error.hpp"
#include "pfprint/protocol.hpp"
#include "support.hpp"

using namespace pfprint;
using pfprint::testing::random_formula;
using pfprint::testing::read_fixture;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
  bool pass;
  std::string detail;
};

const SymbolicRing Z;
const PrimeField kBig;
const PrimeField kSmall(101);

Formula P(std::string_view text) { return parse_formula(text, Signature()); }

Seed random_seed(std::mt19937_64& rng) {
  Seed s;
  for (auto& b : s) b = static_cast<std::uint8_t>(rng());
  return s;
}

FieldRing random_field_ring(std::mt19937_64& rng, const VarAllocation& alloc, const PrimeField& field) {
  SeedStream stream(random_seed(rng));
  return FieldRing(field, sample_assignment(alloc, field, stream).values);
}

/// Binomial upper tolerance q + 3 sqrt(q (1 - q) / n).
double tolerance(double q, std::size_t n) { return q + 3 * std::sqrt(q * (1 - q) / static_cast<double>(n)); }

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", x);
  return buf;
}

// 1 -----------------------------------------------------------------------------------------------

Outcome worked_expansion() {
  auto t0 = Clock::now();
  std::ostringstream out, err;
  int code = cli::run({"encode", "((x -> y) -> (x -> z))", "--symbolic"}, out, err);
  double elapsed = seconds_since(t0);

  const std::string text = out.str();
  const std::string main_words =
      "[phi] = A(I) + A(I1) A(I) + A(I1)^2 A(x) + A(I1) A(I2) A(y) + A(I2) A(I) + A(I2) A(I1) A(x) + A(I2)^2 A(z)\n";
  bool printed = code == 0 && text.find(main_words) != std::string::npos &&
                 text.find("[phi]_x = A(I1)^2 + A(I2) A(I1)\n") != std::string::npos &&
                 text.find("[phi]_y = A(I1) A(I2)\n") != std::string::npos &&
                 text.find("[phi]_z = A(I2)^2\n") != std::string::npos;

  // Exact symbolic equality against the seven products and three helper sums built by hand.
  Formula f = P("((x -> y) -> (x -> z))");
  std::vector<Formula> fs{f};
  auto alloc = VarAllocation::covering(fs);
  auto A = [](std::string_view name, const VarAllocation& al) { return elem(Z, *al.find_name(name)); };
  auto I = A("I", alloc), I1 = A("I1", alloc), I2 = A("I2", alloc);
  auto X = A("x", alloc), Y = A("y", alloc), Zm = A("z", alloc);
  auto fp = encode_fingerprint(Z, alloc, f, {"x", "y", "z"});
  bool exact = fp.main == I + I1 * I + I1 * I1 * X + I1 * I2 * Y + I2 * I + I2 * I1 * X + I2 * I2 * Zm &&
               fp.helpers.at("x") == I1 * I1 + I2 * I1 && fp.helpers.at("y") == I1 * I2 &&
               fp.helpers.at("z") == I2 * I2;

  bool fast = elapsed < 0.1;
  return {printed && exact && fast, "printed=" + std::string(printed ? "yes" : "no") +
                                        " exact=" + (exact ? "yes" : "no") + " time=" + fmt(elapsed) + "s (< 0.1s)"};
}

// 2 -----------------------------------------------------------------------------------------------

Outcome imp_refl_fixture() {
  auto t0 = Clock::now();
  ProofScript script = parse_proof(read_fixture("proofs/imp_refl.proof"));
  bool classical = false;
  try {
    classical = run_classical(script) == script.goal;
  } catch (const Error&) {
  }
  SymbolicResult sym = verify_symbolic(script);
  Transcript field = verify(script, parse_seed_hex("01"), 1, kBig);
  double elapsed = seconds_since(t0);

  bool sym_ok = sym.verdict == Verdict::Accept;
  bool field_ok = field.verdict == Verdict::Accept;
  bool agree = classical && sym_ok && field_ok;

  // Reported epsilon must not exceed 4 / (2^61 - 3).
  mpq_class reported(field.epsilon.num, field.epsilon.den);
  mpq_class limit(Integer(4), Integer(std::to_string(PrimeField::kMersenne61 - 2)));
  bool eps_ok = reported <= limit;

  bool fast = elapsed < 1.0;
  std::string detail = std::string("classical=") + (classical ? "accept" : "reject") +
                       " symbolic=" + std::string(to_string(sym.verdict)) +
                       " field=" + std::string(to_string(field.verdict)) + " epsilon=" + field.epsilon.to_string() +
                       " (d=" + std::to_string(field.d_bound) + ") limit=4/" +
                       std::to_string(PrimeField::kMersenne61 - 2) + (eps_ok ? " ok" : " EXCEEDED") +
                       " time=" + fmt(elapsed) + "s (< 1s)";
  return {agree && eps_ok && fast, detail};
}

// 3 -----------------------------------------------------------------------------------------------

std::vector<VarId> random_sequence(std::mt19937_64& rng) {
  std::vector<VarId> s(rng() % 9);
  for (auto& v : s) v = static_cast<VarId>(rng() % 5);
  return s;
}

Outcome factorization() {
  std::mt19937_64 rng(301);
  auto product = [](const std::vector<VarId>& s) { return elementary_product(Z, std::span<const VarId>(s)); };

  std::size_t round_trip_failures = 0;
  for (int i = 0; i < 1000; ++i) {
    auto s = random_sequence(rng);
    try {
      if (factor_elementary_product(product(s)) != s) ++round_trip_failures;
    } catch (const Error&) {
      ++round_trip_failures;
    }
  }

  // Independent pairs, permutations of one multiset, and identical copies.
  std::size_t injectivity_violations = 0, equal_pairs = 0;
  for (int i = 0; i < 1000; ++i) {
    auto s = random_sequence(rng);
    std::vector<VarId> t;
    switch (i % 3) {
      case 0:
        t = random_sequence(rng);
        break;
      case 1:
        t = s;
        std::shuffle(t.begin(), t.end(), rng);
        break;
      default:
        t = s;
    }
    equal_pairs += s == t;
    if ((product(s) == product(t)) != (s == t)) ++injectivity_violations;
  }
  return {round_trip_failures == 0 && injectivity_violations == 0,
          "round-trip failures=" + std::to_string(round_trip_failures) + "/1000, injectivity violations=" +
              std::to_string(injectivity_violations) + "/1000 (" + std::to_string(equal_pairs) + " equal pairs)"};
}

// 4 -----------------------------------------------------------------------------------------------

Outcome homomorphic_equivalence() {
  std::mt19937_64 rng(401);
  const std::set<std::string> tracked{"x", "y", "z"};
  std::vector<Formula> cover{P("(!x -> (y -> z))")};
  auto alloc = VarAllocation::covering(cover);

  std::size_t subst_violations = 0, mp_violations = 0, field_violations = 0;
  for (int i = 0; i < 500; ++i) {
    Formula phi = random_formula(rng, 5), psi = random_formula(rng, 5);
    std::string x(1, "xyz"[rng() % 3]);
    Formula target = subst_syntactic(phi, x, psi);
    auto direct = encode_fingerprint(Z, alloc, target, tracked);
    auto hom = hom_subst(Z, alloc, encode_fingerprint(Z, alloc, phi, tracked), x,
                         encode_fingerprint(Z, alloc, psi, tracked));
    if (!(hom == direct)) ++subst_violations;
    for (int k = 0; k < 3; ++k) {
      FieldRing ring = random_field_ring(rng, alloc, kBig);
      auto fhom = hom_subst(ring, alloc, encode_fingerprint(ring, alloc, phi, tracked), x,
                            encode_fingerprint(ring, alloc, psi, tracked));
      if (!(fhom == encode_fingerprint(ring, alloc, target, tracked))) ++field_violations;
    }
  }
  for (int i = 0; i < 500; ++i) {
    Formula phi = random_formula(rng, 5), psi = random_formula(rng, 5);
    Formula imp = implies(phi, psi);
    auto hom = hom_mp(Z, encode_fingerprint(Z, alloc, phi, tracked), encode_fingerprint(Z, alloc, imp, tracked));
    if (!(hom == encode_fingerprint(Z, alloc, psi, tracked))) ++mp_violations;
    for (int k = 0; k < 3; ++k) {
      FieldRing ring = random_field_ring(rng, alloc, kBig);
      auto fhom =
          hom_mp(ring, encode_fingerprint(ring, alloc, phi, tracked), encode_fingerprint(ring, alloc, imp, tracked));
      if (!(fhom == encode_fingerprint(ring, alloc, psi, tracked))) ++field_violations;
    }
  }
  return {subst_violations + mp_violations + field_violations == 0,
          "subst violations=" + std::to_string(subst_violations) + "/500, mp violations=" +
              std::to_string(mp_violations) + "/500, field violations=" + std::to_string(field_violations) + "/3000"};
}

// 5 -----------------------------------------------------------------------------------------------

Outcome unique_encoding() {
  std::vector<std::vector<Formula>> by_size(8);
  by_size[1] = {atom("x"), atom("y")};
  for (std::size_t n = 2; n <= 7; ++n) {
    for (const auto& f : by_size[n - 1]) by_size[n].push_back(negation(f));
    for (std::size_t l = 1; l + 1 < n; ++l)
      for (const auto& a : by_size[l])
        for (const auto& b : by_size[n - 1 - l]) by_size[n].push_back(implies(a, b));
  }
  std::vector<Formula> cover{P("(!x -> y)")};
  auto alloc = VarAllocation::covering(cover);
  std::map<std::string, Formula> seen;
  std::size_t total = 0, collisions = 0;
  std::string example;
  for (const auto& group : by_size) {
    for (const auto& f : group) {
      ++total;
      auto [it, inserted] = seen.emplace(to_string(encode(Z, alloc, f)), f);
      if (inserted) continue;
      if (collisions++ == 0) example = ", e.g. " + to_string(it->second) + " and " + to_string(f);
    }
  }
  return {collisions == 0, std::to_string(total) + " formulas, " + std::to_string(collisions) + " collisions" + example};
}

// 6 -----------------------------------------------------------------------------------------------

Outcome schwartz_zippel() {
  std::mt19937_64 rng(601);
  std::vector<Formula> cover{P("(!x -> (y -> z))")};
  auto alloc = VarAllocation::covering(cover);
  constexpr std::size_t kPairs = 1000;
  constexpr std::size_t kDepth = 6;
  std::size_t small_collisions = 0, big_collisions = 0, same_size = 0;
  for (std::size_t i = 0; i < kPairs; ++i) {
    Formula f = random_formula(rng, kDepth), g = random_formula(rng, kDepth);
    while (g == f) g = random_formula(rng, kDepth);
    // Only pairs with equal node counts can agree in the (2,2) entry.
    same_size += node_count(f) == node_count(g);
    FieldRing small = random_field_ring(rng, alloc, kSmall);
    small_collisions += encode(small, alloc, f) == encode(small, alloc, g);
    FieldRing big = random_field_ring(rng, alloc, kBig);
    big_collisions += encode(big, alloc, f) == encode(big, alloc, g);
  }
  const double rate = static_cast<double>(small_collisions) / kPairs;
  const double limit = tolerance(static_cast<double>(kDepth) / 99, kPairs);
  return {rate <= limit && big_collisions == 0,
          "p=101 collision rate=" + fmt(rate) + " (limit 6/99+3sigma=" + fmt(limit) + "), p=2^61-1 collisions=" +
              std::to_string(big_collisions) + ", equal-size pairs=" + std::to_string(same_size)};
}

// 7 -----------------------------------------------------------------------------------------------

bool classical_accepts(const ProofScript& s) {
  try {
    run_classical(s);
    return true;
  } catch (const Error&) {
    return false;
  }
}

/// One random corruption of a single step, retried until the classical checker rejects it.
ProofScript corrupt(const ProofScript& script, std::mt19937_64& rng) {
  for (;;) {
    ProofScript out = script;
    std::size_t i = rng() % out.steps.size();
    if (auto* ax = std::get_if<AxiomStep>(&out.steps[i])) {
      const auto& mvs = axiom_scheme(ax->scheme).metavars;
      const std::string& mv = mvs[rng() % mvs.size()];
      ax->binding[mv] = random_formula(rng, 3, {"A", "B"});
    } else if (auto* mp = std::get_if<MPStep>(&out.steps[i])) {
      if (rng() % 2) {
        std::swap(mp->hyp, mp->imp);
      } else {
        (rng() % 2 ? mp->hyp : mp->imp) = rng() % i;
      }
    }
    if (!classical_accepts(out)) return out;
  }
}

Outcome tamper_soundness() {
  std::mt19937_64 rng(701);
  ProofScript script = parse_proof(read_fixture("proofs/imp_refl.proof"));
  constexpr std::size_t kTrials = 1000;
  std::size_t accepted_k1 = 0, accepted_k3 = 0;
  for (std::size_t t = 0; t < kTrials; ++t) {
    ProofScript bad = corrupt(script, rng);
    accepted_k1 += verify(bad, random_seed(rng), 1, kSmall).verdict == Verdict::Accept;
    accepted_k3 += verify(bad, random_seed(rng), 3, kSmall).verdict == Verdict::Accept;
  }
  const double rate = static_cast<double>(accepted_k1) / kTrials;
  const double limit = tolerance(4.0 / 99, kTrials);
  return {rate <= limit && accepted_k3 == 0, "k=1 false-accept rate=" + fmt(rate) + " (limit 4/99+3sigma=" +
                                                 fmt(limit) + "), k=3 false accepts=" + std::to_string(accepted_k3)};
}

// 8 -----------------------------------------------------------------------------------------------

Outcome structural_invariants() {
  std::mt19937_64 rng(801);
  const std::set<std::string> tracked{"x", "y", "z"};
  std::vector<Formula> cover{P("(!x -> (y -> z))")};
  auto alloc = VarAllocation::covering(cover);
  std::size_t node_violations = 0, degree_violations = 0;
  for (int i = 0; i < 10000; ++i) {
    Formula f = random_formula(rng, 1 + static_cast<int>(rng() % 8));
    auto fp = encode_fingerprint(Z, alloc, f, tracked);
    const int bound = static_cast<int>(degree_bound(f));
    if (!(fp.main.d == MPoly(static_cast<long>(node_count(f))))) ++node_violations;
    if (degree(fp.main.a) > bound || degree(fp.main.b) > bound) ++degree_violations;
    for (const auto& [x, h] : fp.helpers) {
      if (!(h.d == MPoly(static_cast<long>(occurrences(f, x))))) ++node_violations;
      if (degree(h.a) > bound || degree(h.b) > bound) ++degree_violations;
    }
  }
  return {node_violations + degree_violations == 0, "node-count violations=" + std::to_string(node_violations) +
                                                        ", degree violations=" + std::to_string(degree_violations) +
                                                        " over 10000 formulas"};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
  };
  const Criterion criteria[] = {
      {1, "worked expansion of ((x -> y) -> (x -> z))", worked_expansion},
      {2, "A -> A proof in all three checkers", imp_refl_fixture},
      {3, "elementary products factor uniquely", factorization},
      {4, "homomorphic and direct fingerprints agree", homomorphic_equivalence},
      {5, "distinct formulas up to 7 nodes encode distinctly", unique_encoding},
      {6, "collision rate of distinct formulas", schwartz_zippel},
      {7, "corrupted proofs are rejected", tamper_soundness},
      {8, "node-count law and degree bound", structural_invariants},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << c.id << ": " << c.name << " | " << o.detail << "\n";
  }
  std::cout << (8 - failures) << "/8 criteria passed\n";
  return failures == 0 ? 0 : 1;
}
