#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "pfprint/fingerprint.hpp"
#include "pfprint/logic.hpp"

namespace pfprint {

/// A point of F_p for every polynomial variable of an allocation, each in [2, p).
struct Assignment {
  PrimeField field;
  std::vector<std::optional<FieldElem>> values;
};

/// Draws one value per VarId, in VarId order.
Assignment sample_assignment(const VarAllocation& alloc, const PrimeField& field, SeedStream& rng);

/// `prime = <p>` followed by `<name> = <value>` lines. Names must belong to `alloc`; values must
/// lie in [2, p). With `require_complete`, every variable of `alloc` must be present.
Assignment parse_assignment_file(std::string_view text, const VarAllocation& alloc, bool require_complete = true);
std::string write_assignment_file(const Assignment& assignment, const VarAllocation& alloc);

/// Everything derived from the script alone: the allocation (script symbols plus the axiom
/// metavariables), the tracked variables and the degree bound d.
struct ProofSetup {
  VarAllocation alloc;
  std::set<std::string> tracked;
  std::size_t d_bound = 0;
};

ProofSetup setup_proof(const ProofScript& script);

struct ProveOptions {
  /// Recompute every axiom fingerprint homomorphically from its scheme and require agreement.
  bool strict = false;
};

struct StepRecord {
  std::size_t index = 0;  ///< 1-based
  std::string kind;
  Fingerprint<FieldElem> fingerprint;
};

struct RunRecord {
  std::vector<StepRecord> steps;
  EncMatrix<FieldElem> alpha1;  ///< direct encoding of the goal
  EncMatrix<FieldElem> alpha2;  ///< propagated from the axioms

  bool match() const { return alpha1 == alpha2; }
};

/// One run of the fingerprint procedure at a single point: axioms are encoded directly, MP and
/// substitution steps are applied homomorphically and blindly.
RunRecord prove(const ProofScript& script, const ProofSetup& setup, const Assignment& assignment,
                const ProveOptions& options = {});

/// (d / (p - 2))^k as an exact reduced fraction.
struct Epsilon {
  Integer num;
  Integer den;

  double approx() const;
  std::string to_string() const;
};

Epsilon soundness_epsilon(std::size_t d, std::uint64_t p, std::size_t repeats);

enum class Verdict { Accept, Reject };
std::string_view to_string(Verdict v);

struct Transcript {
  std::string proof_id;
  std::uint64_t prime = 0;
  std::string provenance_key;    ///< "seed" or "assignment-file"
  std::string provenance_value;
  std::size_t repeats = 0;
  std::size_t d_bound = 0;
  Epsilon epsilon;
  std::vector<RunRecord> runs;
  Verdict verdict = Verdict::Reject;
};

/// Runs `prove` k times; run r uses the seed's stream r. Accepts iff alpha1 = alpha2 in every run.
Transcript verify(const ProofScript& script, const Seed& seed, std::size_t repeats, const PrimeField& field,
                  const ProveOptions& options = {});

/// Single run at an explicit point.
Transcript verify_with_assignment(const ProofScript& script, const Assignment& assignment,
                                  const std::string& source, const ProveOptions& options = {});

/// SHA-256(goal || prime || proof id); a convenience, not a non-interactive security claim.
Seed fiat_shamir_seed(const ProofScript& script, const PrimeField& field);

struct SymbolicResult {
  Verdict verdict = Verdict::Reject;
  std::string reason;
  std::optional<EncMatrix<MPoly>> f1;
  std::optional<EncMatrix<MPoly>> f2;
};

/// Exact variant over Z[X]: accepts iff the propagated matrix equals the direct encoding of
/// the goal as polynomial matrices. A failed exact division rejects with the step in `reason`.
SymbolicResult verify_symbolic(const ProofScript& script, const ProveOptions& options = {});

/// Transcript text: header, one block per repeat, footer.
std::string render(const Transcript& t);

struct ParsedStep {
  std::size_t repeat = 0;
  std::size_t index = 0;
  std::string kind;
  std::string main;
  std::map<std::string, std::string> helpers;
};

struct ParsedTranscript {
  std::map<std::string, std::string> header;
  std::vector<ParsedStep> steps;
  std::string alpha1;
  std::string alpha2;
  std::string verdict;
  std::optional<std::string> symbolic_verdict;
};

/// Checks the transcript grammar; throws ParseError on the first offending line.
ParsedTranscript parse_transcript(std::string_view text);

/// Test hook: corrupts one step (0-based). Axiom: negates the binding of the scheme's last
/// metavariable. MP: swaps the operands. Substitution: negates a literal replacement, or replaces
/// a step reference by the negated variable.
ProofScript tamper_step(const ProofScript& script, std::size_t step);

}  // namespace pfprint
