#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "pfprint/protocol.hpp"

using namespace pfprint;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string fixture_path(const std::string& name) { return std::string(PFPRINT_SOURCE_DIR) + "/proofs/" + name; }

std::string temp_file(const std::string& name, const std::string& content) {
  auto path = std::filesystem::temp_directory_path() / ("pfprint_test_" + name);
  std::ofstream(path) << content;
  return path.string();
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

}  // namespace

TEST_CASE("encode --symbolic prints the word expansion and helpers") {
  Result r = run({"encode", "((x -> y) -> (x -> z))", "--symbolic"});
  CHECK(r.code == cli::kAccept);
  auto ls = lines(r.out);
  REQUIRE(ls.size() == 9);
  CHECK(ls[0] == "formula ((x -> y) -> (x -> z))");
  CHECK(ls[1] ==
        "[phi] = A(I) + A(I1) A(I) + A(I1)^2 A(x) + A(I1) A(I2) A(y) + A(I2) A(I) + A(I2) A(I1) A(x) + A(I2)^2 A(z)");
  CHECK(ls[3] == "[phi]_x = A(I1)^2 + A(I2) A(I1)");
  CHECK(ls[5] == "[phi]_y = A(I1) A(I2)");
  CHECK(ls[7] == "[phi]_z = A(I2)^2");
  CHECK(ls[4].ends_with(", 2]"));
  CHECK(ls[8].ends_with(", 1]"));
}

TEST_CASE("encode in a field") {
  std::string assign = temp_file("x.assign", "prime = 101\nx = 2\n");
  Result r = run({"encode", "x", "--prime", "101", "--assign", assign});
  CHECK(r.code == cli::kAccept);
  CHECK(r.out == "formula x\nprime 101\nmain [2,1,1]\nhelper x [1,0,1]\n");

  std::string full = temp_file("xy.assign", "prime = 101\nI = 5\nI1 = 7\nI2 = 11\nx = 2\ny = 3\n");
  Result r2 = run({"encode", "(x -> y)", "--assign", full});
  CHECK(r2.code == cli::kAccept);
  CHECK(r2.out.find("main [52,21,3]") != std::string::npos);

  CHECK(run({"encode", "(x -> y)", "--assign", assign}).code == cli::kMalformed);
  CHECK(run({"encode", "x", "--prime", "103", "--assign", assign}).code == cli::kMalformed);
  CHECK(run({"encode", "x", "--seed", "01", "--assign", assign}).code == cli::kMalformed);
  CHECK(run({"encode", "x", "--prime", "100"}).code == cli::kMalformed);
  Result seeded = run({"encode", "(x -> !y)", "--seed", "ab"});
  CHECK(seeded.code == cli::kAccept);
  CHECK(seeded.out == run({"encode", "(x -> !y)", "--seed", "ab"}).out);
}

TEST_CASE("encode rejects malformed formulas") {
  Result r = run({"encode", "(x ->"});
  CHECK(r.code == cli::kMalformed);
  CHECK(r.err.find("SyntaxError") != std::string::npos);
  CHECK(r.err.find("position 5") != std::string::npos);
}

TEST_CASE("verify") {
  std::string seed(63, '0');
  seed += "1";
  Result ok = run({"verify", fixture_path("imp_refl.proof"), "--seed", seed});
  CHECK(ok.code == cli::kAccept);
  ParsedTranscript p = parse_transcript(ok.out);
  CHECK(p.verdict == "accept");
  CHECK(p.symbolic_verdict == "accept");
  CHECK(p.header.at("d-bound") == "5");

  Result bad = run({"verify", fixture_path("imp_refl.proof"), "--seed", seed, "--tamper-step", "4"});
  CHECK(bad.code == cli::kReject);
  CHECK(parse_transcript(bad.out).verdict == "reject");

  CHECK(run({"verify", fixture_path("missing.proof")}).code == cli::kMalformed);
  CHECK(run({"verify", fixture_path("imp_refl.proof"), "--repeats", "0"}).code == cli::kMalformed);
  CHECK(run({"verify", fixture_path("imp_refl.proof"), "--mode", "fast"}).code == cli::kMalformed);
  CHECK(run({"verify", fixture_path("imp_refl.proof"), "--tamper-step", "9"}).code == cli::kMalformed);

  std::string broken = temp_file("broken.proof", "proof \"b\"\ngoal (A -> A)\n1 mp 2 1\nqed 1\n");
  CHECK(run({"verify", broken}).code == cli::kMalformed);
}

TEST_CASE("verify modes and options") {
  for (const char* name : {"subst_neg.proof", "subst_step.proof", "function_terms.proof"}) {
    CHECK(run({"verify", fixture_path(name), "--mode", "field", "--repeats", "3", "--strict"}).code == cli::kAccept);
    Result sym = run({"verify", fixture_path(name), "--mode", "symbolic"});
    CHECK(sym.code == cli::kAccept);
    CHECK(sym.out.find("symbolic verdict=accept") != std::string::npos);
    CHECK(run({"verify", fixture_path(name), "--fiat-shamir"}).code == cli::kAccept);
    CHECK(run({"verify", fixture_path(name), "--prime", "101", "--repeats", "4"}).code == cli::kAccept);
  }
  Result field_only = run({"verify", fixture_path("imp_refl.proof"), "--mode", "field"});
  CHECK(field_only.out.find("symbolic") == std::string::npos);
  Result rejected = run({"verify", fixture_path("imp_refl.proof"), "--mode", "symbolic", "--tamper-step", "3"});
  CHECK(rejected.code == cli::kReject);
  CHECK(rejected.out.find("reason=") != std::string::npos);
}

TEST_CASE("keygen produces the point verify uses") {
  std::string proof = fixture_path("imp_refl.proof");
  Result key = run({"keygen", proof, "--seed", "01", "--prime", "101", "--stream", "1"});
  REQUIRE(key.code == cli::kAccept);
  CHECK(key.out.rfind("prime = 101\n", 0) == 0);
  std::string assign = temp_file("imp_refl.assign", key.out);

  Result by_file = run({"verify", proof, "--assign", assign, "--mode", "field"});
  CHECK(by_file.code == cli::kAccept);
  ParsedTranscript a = parse_transcript(by_file.out);
  CHECK(a.header.at("assignment-file") == assign);

  Result by_seed = run({"verify", proof, "--seed", "01", "--prime", "101", "--repeats", "2", "--mode", "field"});
  ParsedTranscript b = parse_transcript(by_seed.out);
  CHECK(a.alpha1 == b.alpha1);
  std::vector<std::string> mains_a, mains_b;
  for (const auto& s : a.steps) mains_a.push_back(s.main);
  for (const auto& s : b.steps)
    if (s.repeat == 2) mains_b.push_back(s.main);
  CHECK(mains_a == mains_b);

  CHECK(run({"verify", proof, "--assign", assign, "--repeats", "2"}).code == cli::kMalformed);
  CHECK(run({"verify", proof, "--assign", assign, "--prime", "103"}).code == cli::kMalformed);

  Result f = run({"keygen", "--formula", "(x -> y)", "--seed", "01"});
  CHECK(f.code == cli::kAccept);
  CHECK(lines(f.out).size() == 8);
  CHECK(run({"keygen"}).code == cli::kMalformed);
}

TEST_CASE("factor") {
  Result xy = run({"factor", R"({"a": "X*Y", "b": "X + 1", "d": "1"})"});
  CHECK(xy.code == cli::kAccept);
  CHECK(xy.out == "X Y\n");

  Result xyx = run({"factor", R"({"a": "X^2*Y", "b": "X*Y + X + 1", "d": "1"})"});
  CHECK(xyx.out == "X Y X\n");

  Result id = run({"factor", R"({"a": "1", "b": "0", "d": "1"})"});
  CHECK(id.code == cli::kAccept);
  CHECK(id.out == "\n");

  Result sum = run({"factor", R"({"a": "X + Y", "b": "2", "d": "2"})"});
  CHECK(sum.code == cli::kReject);
  CHECK(sum.out == "NotAProduct\n");

  std::string file = temp_file("m.json", R"({"a": "p*q", "b": "q + 1", "d": "1"})");
  CHECK(run({"factor", file}).out == "q p\n");

  CHECK(run({"factor", R"({"a": "X"})"}).code == cli::kMalformed);
  CHECK(run({"factor", "{not json"}).code == cli::kMalformed);
}

TEST_CASE("usage errors") {
  CHECK(run({}).code == cli::kMalformed);
  CHECK(run({"frobnicate"}).code == cli::kMalformed);
  CHECK(run({"--help"}).code == cli::kAccept);
}
