#include "pfprint/protocol.hpp"

#include <openssl/sha.h>

#include <cctype>
#include <cmath>
#include <regex>
#include <sstream>

namespace pfprint {

// ---------------------------------------------------------------------------------------------
// Assignments

Assignment sample_assignment(const VarAllocation& alloc, const PrimeField& field, SeedStream& rng) {
  Assignment out{field, {}};
  out.values.reserve(alloc.size());
  for (std::size_t v = 0; v < alloc.size(); ++v) out.values.emplace_back(sample_point(rng, field));
  return out;
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::uint64_t parse_decimal(std::string_view digits, std::size_t line) {
  if (digits.empty() || digits.size() > 19 ||
      !std::all_of(digits.begin(), digits.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
    throw Error(ErrorCode::ParseError, "line " + std::to_string(line) + ": expected a decimal number");
  return std::stoull(std::string(digits));
}

}  // namespace

Assignment parse_assignment_file(std::string_view text, const VarAllocation& alloc, bool require_complete) {
  std::optional<PrimeField> field;
  std::vector<std::optional<FieldElem>> values(alloc.size());
  std::size_t line_no = 0;
  std::istringstream in{std::string(text)};
  for (std::string raw; std::getline(in, raw);) {
    ++line_no;
    std::string_view line = trim(raw);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": expected '<name> = <value>'");
    std::string_view name = trim(line.substr(0, eq));
    std::uint64_t value = parse_decimal(trim(line.substr(eq + 1)), line_no);
    if (!field) {
      if (name != "prime") throw Error(ErrorCode::ParseError, "first line must be 'prime = <decimal>'");
      field.emplace(value);
      continue;
    }
    auto v = alloc.find_name(name);
    if (!v) throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": unknown variable '" +
                                                   std::string(name) + "'");
    if (values[*v]) throw Error(ErrorCode::ParseError, "duplicate value for '" + std::string(name) + "'");
    if (value < 2 || value >= field->modulus())
      throw Error(ErrorCode::InadmissibleAssignment, "'" + std::string(name) + "' = " + std::to_string(value) +
                                                         " is outside [2, p)");
    values[*v] = field->element(value);
  }
  if (!field) throw Error(ErrorCode::ParseError, "missing 'prime = <decimal>' header");
  if (require_complete) {
    for (std::size_t v = 0; v < values.size(); ++v)
      if (!values[v])
        throw Error(ErrorCode::InadmissibleAssignment, "no value for '" + alloc.name(static_cast<VarId>(v)) + "'");
  }
  return Assignment{*field, std::move(values)};
}

std::string write_assignment_file(const Assignment& assignment, const VarAllocation& alloc) {
  std::string out = "prime = " + std::to_string(assignment.field.modulus()) + "\n";
  for (std::size_t v = 0; v < assignment.values.size() && v < alloc.size(); ++v) {
    if (!assignment.values[v]) continue;
    out += alloc.name(static_cast<VarId>(v)) + " = " + to_string(*assignment.values[v]) + "\n";
  }
  return out;
}

// ---------------------------------------------------------------------------------------------
// Setup

ProofSetup setup_proof(const ProofScript& script) {
  std::vector<Formula> formulas{script.goal};
  for (Scheme s : {Scheme::K, Scheme::S, Scheme::N})
    for (const auto& mv : axiom_scheme(s).metavars) formulas.push_back(atom(metavar_symbol(mv)));
  std::vector<std::optional<Formula>> replay;
  std::size_t d = degree_bound(script.goal);

  for (const auto& st : script.steps) {
    std::optional<Formula> f;
    if (const auto* ax = std::get_if<AxiomStep>(&st)) {
      for (const auto& [k, b] : ax->binding) formulas.push_back(b);
      try {
        f = instantiate_axiom(ax->scheme, ax->binding);
      } catch (const Error&) {
      }
    } else if (const auto* mp = std::get_if<MPStep>(&st)) {
      const auto& hyp = replay.at(mp->hyp);
      const auto& imp = replay.at(mp->imp);
      if (hyp && imp && imp->is_implication() && imp->children[0] == *hyp) f = imp->children[1];
    } else {
      const auto& sb = std::get<SubstStep>(st);
      formulas.push_back(atom(sb.variable));
      std::optional<Formula> repl;
      if (const auto* lit = std::get_if<Formula>(&sb.replacement)) {
        formulas.push_back(*lit);
        d = std::max(d, degree_bound(*lit));
        repl = *lit;
      } else {
        repl = replay.at(std::get<std::size_t>(sb.replacement));
      }
      if (repl && replay.at(sb.source)) {
        try {
          f = subst_syntactic(*replay.at(sb.source), sb.variable, *repl, script.signature);
        } catch (const Error&) {
        }
      }
    }
    if (f) d = std::max(d, degree_bound(*f));
    replay.push_back(std::move(f));
  }
  return ProofSetup{VarAllocation::covering(formulas, script.signature), script_variables(script), d};
}

// ---------------------------------------------------------------------------------------------
// Propagation, generic over the coefficient ring

namespace {

template <CoefficientRing Ring>
Fingerprint<typename Ring::value_type> axiom_by_substitution(const Ring& ring, const ProofSetup& setup,
                                                             const AxiomStep& ax) {
  const AxiomScheme& scheme = axiom_scheme(ax.scheme);
  std::set<std::string> extended = setup.tracked;
  for (const auto& mv : scheme.metavars) extended.insert(metavar_symbol(mv));

  auto cur = encode_fingerprint(ring, setup.alloc, scheme.templ, extended);
  for (const auto& mv : scheme.metavars) {
    auto it = ax.binding.find(mv);
    if (it == ax.binding.end())
      throw Error(ErrorCode::MissingBinding, std::string(to_string(ax.scheme)) + " needs a binding for " + mv);
    auto repl = encode_fingerprint(ring, setup.alloc, it->second, extended);
    cur = hom_subst(ring, setup.alloc, cur, metavar_symbol(mv), repl);
  }
  for (const auto& mv : scheme.metavars) cur.helpers.erase(metavar_symbol(mv));
  return cur;
}

template <CoefficientRing Ring>
std::vector<Fingerprint<typename Ring::value_type>> propagate(const Ring& ring, const ProofScript& script,
                                                              const ProofSetup& setup, const ProveOptions& options,
                                                              std::size_t& current) {
  std::vector<Fingerprint<typename Ring::value_type>> fps;
  fps.reserve(script.steps.size());
  for (current = 0; current < script.steps.size(); ++current) {
    const Step& st = script.steps[current];
    if (const auto* ax = std::get_if<AxiomStep>(&st)) {
      Formula instance = instantiate_axiom(ax->scheme, ax->binding);
      auto direct = encode_fingerprint(ring, setup.alloc, instance, setup.tracked);
      if (options.strict && !(axiom_by_substitution(ring, setup, *ax) == direct))
        throw Error(ErrorCode::Internal, "step " + std::to_string(current + 1) +
                                             ": direct and homomorphic axiom fingerprints differ");
      fps.push_back(std::move(direct));
    } else if (const auto* mp = std::get_if<MPStep>(&st)) {
      fps.push_back(hom_mp(ring, fps.at(mp->hyp), fps.at(mp->imp)));
    } else {
      const auto& sb = std::get<SubstStep>(st);
      if (auto sym = script.signature.find(sb.variable); sym && sym->arity != 0)
        throw Error(ErrorCode::NotAVariable, "'" + sb.variable + "' has arity " + std::to_string(sym->arity));
      if (const auto* lit = std::get_if<Formula>(&sb.replacement)) {
        auto repl = encode_fingerprint(ring, setup.alloc, *lit, setup.tracked);
        fps.push_back(hom_subst(ring, setup.alloc, fps.at(sb.source), sb.variable, repl));
      } else {
        fps.push_back(hom_subst(ring, setup.alloc, fps.at(sb.source), sb.variable,
                                fps.at(std::get<std::size_t>(sb.replacement))));
      }
    }
  }
  return fps;
}

}  // namespace

RunRecord prove(const ProofScript& script, const ProofSetup& setup, const Assignment& assignment,
                const ProveOptions& options) {
  FieldRing ring(assignment.field, assignment.values);
  std::size_t current = 0;
  auto fps = propagate(ring, script, setup, options, current);

  RunRecord run;
  run.steps.reserve(fps.size());
  for (std::size_t i = 0; i < fps.size(); ++i)
    run.steps.push_back({i + 1, std::string(step_kind(script.steps[i])), std::move(fps[i])});
  run.alpha1 = encode(ring, setup.alloc, script.goal);
  run.alpha2 = run.steps.at(script.qed).fingerprint.main;
  return run;
}

// ---------------------------------------------------------------------------------------------
// Verification

double Epsilon::approx() const { return mpq_class(num, den).get_d(); }

std::string Epsilon::to_string() const { return num.get_str() + "/" + den.get_str(); }

Epsilon soundness_epsilon(std::size_t d, std::uint64_t p, std::size_t repeats) {
  Integer base_den(std::to_string(p - 2));
  Integer num = 1, den = 1;
  for (std::size_t i = 0; i < repeats; ++i) {
    num *= static_cast<unsigned long>(d);
    den *= base_den;
  }
  mpq_class q(num, den);
  q.canonicalize();
  return Epsilon{q.get_num(), q.get_den()};
}

std::string_view to_string(Verdict v) { return v == Verdict::Accept ? "accept" : "reject"; }

Transcript verify(const ProofScript& script, const Seed& seed, std::size_t repeats, const PrimeField& field,
                  const ProveOptions& options) {
  if (repeats == 0) throw Error(ErrorCode::ParseError, "repeats must be at least 1");
  ProofSetup setup = setup_proof(script);
  Transcript t;
  t.proof_id = script.id;
  t.prime = field.modulus();
  t.provenance_key = "seed";
  t.provenance_value = to_hex(seed);
  t.repeats = repeats;
  t.d_bound = setup.d_bound;
  t.epsilon = soundness_epsilon(setup.d_bound, field.modulus(), repeats);
  bool all_match = true;
  for (std::size_t r = 0; r < repeats; ++r) {
    SeedStream rng(seed, r);
    Assignment point = sample_assignment(setup.alloc, field, rng);
    t.runs.push_back(prove(script, setup, point, options));
    all_match = all_match && t.runs.back().match();
  }
  t.verdict = all_match ? Verdict::Accept : Verdict::Reject;
  return t;
}

Transcript verify_with_assignment(const ProofScript& script, const Assignment& assignment,
                                  const std::string& source, const ProveOptions& options) {
  ProofSetup setup = setup_proof(script);
  Transcript t;
  t.proof_id = script.id;
  t.prime = assignment.field.modulus();
  t.provenance_key = "assignment-file";
  t.provenance_value = source;
  t.repeats = 1;
  t.d_bound = setup.d_bound;
  t.epsilon = soundness_epsilon(setup.d_bound, assignment.field.modulus(), 1);
  t.runs.push_back(prove(script, setup, assignment, options));
  t.verdict = t.runs.back().match() ? Verdict::Accept : Verdict::Reject;
  return t;
}

Seed fiat_shamir_seed(const ProofScript& script, const PrimeField& field) {
  std::string msg = to_string(script.goal) + "\n" + std::to_string(field.modulus()) + "\n" + script.id;
  Seed out{};
  SHA256(reinterpret_cast<const unsigned char*>(msg.data()), msg.size(), out.data());
  return out;
}

SymbolicResult verify_symbolic(const ProofScript& script, const ProveOptions& options) {
  ProofSetup setup = setup_proof(script);
  SymbolicRing ring;
  SymbolicResult out;
  std::size_t current = 0;
  std::vector<Fingerprint<MPoly>> fps;
  try {
    fps = propagate(ring, script, setup, options, current);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NotDivisible) throw;
    out.reason = "step " + std::to_string(current + 1) + ": " + e.what();
    return out;
  }
  out.f1 = encode(ring, setup.alloc, script.goal);
  out.f2 = fps.at(script.qed).main;
  if (*out.f1 == *out.f2) {
    out.verdict = Verdict::Accept;
  } else {
    out.reason = "propagated matrix differs from the encoding of the goal";
  }
  return out;
}

// ---------------------------------------------------------------------------------------------
// Transcripts

std::string render(const Transcript& t) {
  std::ostringstream out;
  out << "proof " << t.proof_id << "\n";
  out << "prime " << t.prime << "\n";
  out << t.provenance_key << " " << t.provenance_value << "\n";
  out << "repeats " << t.repeats << "\n";
  out << "d-bound " << t.d_bound << "\n";
  char approx[32];
  std::snprintf(approx, sizeof approx, "%.6e", t.epsilon.approx());
  out << "epsilon " << t.epsilon.to_string() << " (" << approx << ")\n";
  const RunRecord* shown = nullptr;
  for (std::size_t r = 0; r < t.runs.size(); ++r) {
    const RunRecord& run = t.runs[r];
    out << "repeat " << r + 1 << "\n";
    for (const auto& s : run.steps) {
      out << "step " << s.index << " " << s.kind << " main=" << to_string(s.fingerprint.main, true) << " helpers={";
      bool first = true;
      for (const auto& [x, h] : s.fingerprint.helpers) {
        out << (first ? "" : ", ") << x << ":" << to_string(h, true);
        first = false;
      }
      out << "}\n";
    }
    out << "check alpha1=" << to_string(run.alpha1, true) << " alpha2=" << to_string(run.alpha2, true)
        << " match=" << (run.match() ? "true" : "false") << "\n";
    if (!shown && !run.match()) shown = &run;
  }
  if (!shown && !t.runs.empty()) shown = &t.runs.back();
  if (shown) {
    out << "alpha1=" << to_string(shown->alpha1, true) << " alpha2=" << to_string(shown->alpha2, true)
        << " verdict=" << to_string(t.verdict) << "\n";
  }
  return out.str();
}

ParsedTranscript parse_transcript(std::string_view text) {
  static const std::regex header_re(R"(^(proof|prime|seed|assignment-file|repeats|d-bound|epsilon) (.+)$)");
  static const std::regex repeat_re(R"(^repeat (\d+)$)");
  static const std::regex step_re(R"(^step (\d+) (axiom|mp|subst) main=(\[\d+,\d+,\d+\]) helpers=\{(.*)\}$)");
  static const std::regex helper_re(R"(^([$A-Za-z_][A-Za-z0-9_]*):(\[\d+,\d+,\d+\])$)");
  static const std::regex check_re(R"(^check alpha1=(\[\d+,\d+,\d+\]) alpha2=(\[\d+,\d+,\d+\]) match=(true|false)$)");
  static const std::regex footer_re(R"(^alpha1=(\[\d+,\d+,\d+\]) alpha2=(\[\d+,\d+,\d+\]) verdict=(accept|reject)$)");
  static const std::regex symbolic_re(R"(^symbolic verdict=(accept|reject)( .*)?$)");

  ParsedTranscript out;
  std::size_t repeat = 0;
  bool footer = false;
  std::size_t line_no = 0;
  std::istringstream in{std::string(text)};
  auto fail = [&](const std::string& why) {
    throw Error(ErrorCode::ParseError, "transcript line " + std::to_string(line_no) + ": " + why);
  };
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    if (line.empty()) continue;
    std::smatch m;
    if (std::regex_match(line, m, symbolic_re)) {
      out.symbolic_verdict = m[1];
    } else if (footer) {
      fail("content after the footer");
    } else if (std::regex_match(line, m, repeat_re)) {
      repeat = std::stoul(m[1]);
    } else if (std::regex_match(line, m, step_re)) {
      if (repeat == 0) fail("step outside a repeat block");
      ParsedStep s{repeat, std::stoul(m[1]), m[2], m[3], {}};
      std::string helpers = m[4];
      std::size_t pos = 0;
      while (pos < helpers.size()) {
        std::size_t comma = helpers.find(", ", pos);
        std::string item = helpers.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        std::smatch hm;
        if (!std::regex_match(item, hm, helper_re)) fail("bad helper entry '" + item + "'");
        s.helpers.emplace(hm[1], hm[2]);
        if (comma == std::string::npos) break;
        pos = comma + 2;
      }
      out.steps.push_back(std::move(s));
    } else if (std::regex_match(line, m, check_re)) {
      if (repeat == 0) fail("check outside a repeat block");
    } else if (std::regex_match(line, m, footer_re)) {
      out.alpha1 = m[1];
      out.alpha2 = m[2];
      out.verdict = m[3];
      footer = true;
    } else if (std::regex_match(line, m, header_re)) {
      if (repeat != 0) fail("header line inside a repeat block");
      out.header[m[1]] = m[2];
    } else {
      fail("unrecognised line '" + line + "'");
    }
  }
  for (const char* key : {"proof", "prime", "repeats", "d-bound", "epsilon"})
    if (!out.header.count(key)) throw Error(ErrorCode::ParseError, std::string("transcript lacks '") + key + "'");
  if (!out.header.count("seed") && !out.header.count("assignment-file"))
    throw Error(ErrorCode::ParseError, "transcript lacks 'seed' or 'assignment-file'");
  if (!footer) throw Error(ErrorCode::ParseError, "transcript lacks the footer");
  return out;
}

// ---------------------------------------------------------------------------------------------

ProofScript tamper_step(const ProofScript& script, std::size_t step) {
  if (step >= script.steps.size())
    throw Error(ErrorCode::ParseError, "cannot tamper with step " + std::to_string(step + 1) + ": no such step");
  ProofScript out = script;
  Step& st = out.steps[step];
  if (auto* ax = std::get_if<AxiomStep>(&st)) {
    const std::string& last = axiom_scheme(ax->scheme).metavars.back();
    auto it = ax->binding.find(last);
    if (it == ax->binding.end()) throw Error(ErrorCode::MissingBinding, "no binding for " + last);
    it->second = negation(it->second);
  } else if (auto* mp = std::get_if<MPStep>(&st)) {
    std::swap(mp->hyp, mp->imp);
  } else {
    auto& sb = std::get<SubstStep>(st);
    if (auto* lit = std::get_if<Formula>(&sb.replacement)) {
      *lit = negation(*lit);
    } else {
      sb.replacement = negation(atom(sb.variable));
    }
  }
  return out;
}

}  // namespace pfprint
