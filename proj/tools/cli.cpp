#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "pfprint/error.hpp"
#include "pfprint/protocol.hpp"

namespace pfprint::cli {

namespace {

constexpr std::uintmax_t kSymbolicSizeLimit = 10 * 1024;

struct Config {
  std::uint64_t prime = PrimeField::kMersenne61;
  bool prime_given = false;
  std::string seed;
  std::string assign;
  std::size_t repeats = 1;
  std::string mode;  // field | symbolic | both; empty picks by file size
  bool strict = false;
  bool fiat_shamir = false;
  std::size_t tamper_step = 0;  // 1-based, 0 = off
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void check_prime(const Assignment& point, const Config& cfg) {
  if (cfg.prime_given && point.field.modulus() != cfg.prime)
    throw Error(ErrorCode::FieldMismatch, "--prime disagrees with the assignment file");
}

Seed seed_or_zero(const std::string& hex) { return hex.empty() ? Seed{} : parse_seed_hex(hex); }

int cmd_encode(const std::string& text, bool symbolic, const Config& cfg, std::ostream& out) {
  Formula f = parse_formula(text, Signature());
  const Formula formulas[] = {f};
  VarAllocation alloc = VarAllocation::covering(formulas);
  std::set<std::string> tracked = leaf_names(f);

  out << "formula " << to_string(f) << "\n";
  if (symbolic) {
    SymbolicRing ring;
    auto fp = encode_fingerprint(ring, alloc, f, tracked);
    auto words = expand_words(alloc, f);
    if (!(sum_of_words(ring, words) == fp.main))
      throw Error(ErrorCode::Internal, "word expansion disagrees with the encoding");
    auto namer = alloc.namer();
    out << "[phi] = " << render_words(words, alloc) << "\n";
    out << "  = " << to_string(fp.main, namer) << "\n";
    for (const auto& [x, h] : fp.helpers) {
      out << "[phi]_" << x << " = " << render_words(expand_helper_words(alloc, f, x), alloc) << "\n";
      out << "  = " << to_string(h, namer) << "\n";
    }
    return kAccept;
  }

  PrimeField field(cfg.prime);
  Assignment point;
  if (!cfg.assign.empty()) {
    point = parse_assignment_file(read_file(cfg.assign), alloc, false);
    check_prime(point, cfg);
  } else {
    SeedStream rng(seed_or_zero(cfg.seed));
    point = sample_assignment(alloc, field, rng);
  }
  FieldRing ring(point.field, point.values);
  auto fp = encode_fingerprint(ring, alloc, f, tracked);
  out << "prime " << point.field.modulus() << "\n";
  out << "main " << to_string(fp.main, true) << "\n";
  for (const auto& [x, h] : fp.helpers) out << "helper " << x << " " << to_string(h, true) << "\n";
  return kAccept;
}

int cmd_verify(const std::string& path, const Config& cfg, std::ostream& out, std::ostream& err) {
  std::string text = read_file(path);
  ProofScript script = parse_proof(text);
  if (cfg.tamper_step) script = tamper_step(script, cfg.tamper_step - 1);

  std::string mode = cfg.mode;
  if (mode.empty()) mode = std::filesystem::file_size(path) < kSymbolicSizeLimit ? "both" : "field";
  ProveOptions options{cfg.strict};

  std::optional<Verdict> field_verdict;
  if (mode != "symbolic") {
    PrimeField field(cfg.prime);
    Transcript t;
    if (!cfg.assign.empty()) {
      if (cfg.repeats != 1) throw Error(ErrorCode::ParseError, "--assign fixes a single point; use --repeats 1");
      ProofSetup setup = setup_proof(script);
      Assignment point = parse_assignment_file(read_file(cfg.assign), setup.alloc);
      check_prime(point, cfg);
      t = verify_with_assignment(script, point, cfg.assign, options);
    } else {
      Seed seed = cfg.fiat_shamir ? fiat_shamir_seed(script, field) : seed_or_zero(cfg.seed);
      t = verify(script, seed, cfg.repeats, field, options);
    }
    out << render(t);
    field_verdict = t.verdict;
  } else {
    out << "proof " << script.id << "\n";
  }

  std::optional<Verdict> symbolic_verdict;
  if (mode != "field") {
    SymbolicResult s = verify_symbolic(script, options);
    out << "symbolic verdict=" << to_string(s.verdict);
    if (!s.reason.empty()) out << " reason=" << s.reason;
    out << "\n";
    symbolic_verdict = s.verdict;
  }

  if (field_verdict && symbolic_verdict && *field_verdict != *symbolic_verdict) {
    err << "error: field verdict " << to_string(*field_verdict) << " disagrees with symbolic verdict "
        << to_string(*symbolic_verdict) << "\n";
    return kMalformed;
  }
  Verdict v = field_verdict ? *field_verdict : *symbolic_verdict;
  return v == Verdict::Accept ? kAccept : kReject;
}

int cmd_factor(const std::string& input, std::ostream& out, std::ostream& err) {
  std::string text = !input.empty() && input.front() == '{' ? input : read_file(input);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("matrix JSON: ") + e.what());
  }
  std::vector<std::string> names;
  VarResolver resolve = [&names](std::string_view name) {
    auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end()) {
      names.emplace_back(name);
      return static_cast<VarId>(names.size() - 1);
    }
    return static_cast<VarId>(it - names.begin());
  };
  auto entry = [&](const char* key) {
    if (!j.is_object() || !j.contains(key) || !j[key].is_string())
      throw Error(ErrorCode::ParseError, std::string("matrix JSON needs string entry '") + key + "'");
    return parse_mpoly(j[key].get<std::string>(), resolve);
  };
  EncMatrix<MPoly> m{entry("a"), entry("b"), entry("d")};
  std::vector<VarId> seq;
  try {
    seq = factor_elementary_product(m);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NotAProduct) throw;
    out << "NotAProduct\n";
    err << e.what() << "\n";
    return kReject;
  }
  for (std::size_t i = 0; i < seq.size(); ++i) out << (i ? " " : "") << names.at(seq[i]);
  out << "\n";
  return kAccept;
}

int cmd_keygen(const std::string& proof_path, const std::string& formula, const Config& cfg, std::size_t stream,
               std::ostream& out) {
  VarAllocation alloc;
  if (!proof_path.empty()) {
    alloc = setup_proof(parse_proof(read_file(proof_path))).alloc;
  } else {
    Formula f = parse_formula(formula, Signature());
    const Formula formulas[] = {f};
    alloc = VarAllocation::covering(formulas);
  }
  PrimeField field(cfg.prime);
  SeedStream rng(seed_or_zero(cfg.seed), stream);
  out << write_assignment_file(sample_assignment(alloc, field, rng), alloc);
  return kAccept;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Proof fingerprinting: encode formulas as polynomial matrices and verify Hilbert-style proofs"};
  app.name("pfprint");
  app.require_subcommand(1);

  Config cfg;
  auto add_field_flags = [&cfg](CLI::App* sub) {
    sub->add_option("--prime", cfg.prime, "prime modulus (default 2^61-1)");
    sub->add_option("--seed", cfg.seed, "32-byte seed as hex (left-padded with zeros)");
  };

  std::string formula_text;
  bool symbolic = false;
  auto* encode = app.add_subcommand("encode", "print the fingerprint of a formula");
  encode->add_option("formula", formula_text, "formula text")->required();
  encode->add_flag("--symbolic", symbolic, "print polynomial matrices instead of field values");
  encode->add_option("--assign", cfg.assign, "assignment file");
  add_field_flags(encode);

  std::string proof_path;
  auto* verify_cmd = app.add_subcommand("verify", "verify a proof script");
  verify_cmd->add_option("proof", proof_path, "proof script path")->required();
  add_field_flags(verify_cmd);
  verify_cmd->add_option("--assign", cfg.assign, "assignment file (single repeat)");
  verify_cmd->add_option("--repeats", cfg.repeats, "independent runs")->check(CLI::PositiveNumber);
  verify_cmd->add_option("--mode", cfg.mode, "field | symbolic | both")
      ->check(CLI::IsMember({"field", "symbolic", "both"}));
  verify_cmd->add_flag("--strict", cfg.strict, "cross-check axiom fingerprints homomorphically");
  verify_cmd->add_flag("--fiat-shamir", cfg.fiat_shamir, "derive the seed from goal, prime and proof id");
  verify_cmd->add_option("--tamper-step", cfg.tamper_step, "test hook: corrupt step n before verifying")
      ->check(CLI::PositiveNumber);

  std::string matrix;
  auto* factor = app.add_subcommand("factor", "factor a symbolic matrix into elementary matrices");
  factor->add_option("matrix", matrix, "JSON file, or inline JSON object {\"a\":..,\"b\":..,\"d\":..}")->required();

  std::string keygen_proof, keygen_formula;
  std::size_t stream = 0;
  auto* keygen = app.add_subcommand("keygen", "emit an assignment file drawn from a seed");
  auto* kp = keygen->add_option("proof", keygen_proof, "proof script whose variables to cover");
  auto* kf = keygen->add_option("--formula", keygen_formula, "cover the variables of a formula instead");
  kp->excludes(kf);
  add_field_flags(keygen);
  keygen->add_option("--stream", stream, "seed stream (verify uses stream r for repeat r+1)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kAccept;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kMalformed;
  }
  if (!cfg.assign.empty() && !cfg.seed.empty()) {
    err << "error: --seed and --assign are mutually exclusive\n";
    return kMalformed;
  }

  for (auto* sub : {encode, verify_cmd, keygen})
    if (*sub) cfg.prime_given = sub->count("--prime") > 0;

  try {
    if (*encode) return cmd_encode(formula_text, symbolic, cfg, out);
    if (*verify_cmd) return cmd_verify(proof_path, cfg, out, err);
    if (*factor) return cmd_factor(matrix, out, err);
    if (*keygen) {
      if (keygen_proof.empty() && keygen_formula.empty()) {
        err << "error: keygen needs a proof path or --formula\n";
        return kMalformed;
      }
      return cmd_keygen(keygen_proof, keygen_formula, cfg, stream, out);
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kMalformed;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kMalformed;
  }
  return kMalformed;
}

}  // namespace pfprint::cli
