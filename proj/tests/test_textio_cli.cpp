#include "helpers.hpp"
#include "nanocob/cli.hpp"
#include "nanocob/textio.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace nanocob;

namespace {

ParseError parse_error(const std::string& text, bool strict = false) {
  try {
    parse_input(text, strict);
  } catch (const ParseError& e) {
    return e;
  }
  FAIL("no parse error for:\n" << text);
  return ParseError(0, 0, "");
}

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run cli(std::vector<std::string> args) {
  args.insert(args.begin(), "nanocob");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  Run r;
  r.code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string temp_file(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / ("nanocob_test_" + name);
  std::ofstream(path) << text;
  return path.string();
}

const char* kAbc = "alphabet: a a~ b b~ c c~\ntau: a<->a~ b<->b~ c<->c~\n";

}  // namespace

TEST_SUITE("textio") {
  TEST_CASE("words, compact words, phrases") {
    const ParsedInput p = parse_input(std::string(kAbc) +
                                      "word: ABAB   # compact\nproj: A=a B=b\n"
                                      "word: X1 X2 X1 X2\nproj: X1=c X2=c~\n"
                                      "word: ()\n"
                                      "phrase: A B | B A\nproj: A=a B=a~\n");
    REQUIRE(p.words.size() == 3);
    CHECK(p.words[0].to_string() == "A B A B");
    CHECK(p.words[1].name(0) == "X1");
    CHECK(p.words[2].empty());
    REQUIRE(p.phrases.size() == 1);
    CHECK(p.phrases[0].to_string() == "A B | B A");
  }

  TEST_CASE("error positions") {
    ParseError e = parse_error("alphabet: a b a\n");
    CHECK(e.line() == 1);
    CHECK(e.column() == 15);
    CHECK(e.message() == "duplicate symbol 'a'");

    e = parse_error("alphabet: a b c\ntau: a<->b b<->c\n");
    CHECK(e.line() == 2);
    CHECK(e.message().find("tau is not an involution") == 0);

    e = parse_error("alphabet: a b\ntau: a<->b\nword: A B A\nproj: A=a B=b\n");
    CHECK(e.line() == 3);
    CHECK(e.message() == "letter A occurs 2 times, B occurs 1");

    e = parse_error("word: A A\n");
    CHECK(e.message() == "word before alphabet");

    e = parse_error("alphabet: a b\ntau: a<->b\nword: A A\nproj: A=q\n");
    CHECK(e.line() == 4);
    CHECK(e.column() == 9);
    CHECK(e.message() == "unknown symbol 'q'");

    e = parse_error("alphabet: a b\ntau: a<->b\nword: A B B A\nproj: A=a\n");
    CHECK(e.message() == "projection missing for letter B");

    e = parse_error("alphabet: a b\ntau: a<->b c<->c\n");
    CHECK(e.message() == "unknown symbol 'c' in tau");

    e = parse_error("alphabet: a b c\ntau: a<->b\n");
    CHECK(e.message() == "symbol 'c' missing from tau");
  }

  TEST_CASE("repeated tau pairs are tolerated unless strict") {
    const std::string text = "alphabet: a b\ntau: a<->b b<->a\n";
    CHECK(parse_input(text).alphabet->tau(0) == 1);
    CHECK(parse_error(text, true).line() == 2);
  }

  TEST_CASE("fixed alphabet rejects redeclaration") {
    const auto f = testutil::free3();
    CHECK_THROWS_AS(parse_input("alphabet: x\n", f), ParseError);
    CHECK(parse_input("word: A A\nproj: A=a~\n", f).words.size() == 1);
  }
}

TEST_SUITE("cli") {
  TEST_CASE("caps and fingerprints") {
    const Caps c = parse_caps("k=3,letters=5,bfs=10,nodes=99,s=1");
    CHECK(c.max_k == 3);
    CHECK(c.max_letters == 5);
    CHECK(c.bfs_length == 10);
    CHECK(c.bfs_nodes == 99);
    CHECK(c.s_bound == 1);
    CHECK_THROWS(parse_caps("k=0"));
    CHECK_THROWS(parse_caps("depth=3"));
    CHECK_THROWS(parse_caps("k=x"));
    CHECK(fingerprint("") == "cbf29ce484222325");
    CHECK(fingerprint("a") == "af63dc4c8601ec8c");
  }

  TEST_CASE("pairing subcommand prints the matrix") {
    const std::string alpha = temp_file("abc.txt", kAbc);
    const Run r = cli({"--alphabet", alpha, "--word", "A B C B A C / A=a B=b C=c", "pairing"});
    CHECK(r.code == kExitOk);
    CHECK(r.out ==
          "         s        A        B        C\n"
          "s        0       -c       -c      a+b\n"
          "A        c        0        0   a+2b+c\n"
          "B        c        0        0      b+c\n"
          "C     -a-b  -a-2b-c     -b-c        0\n");
  }

  TEST_CASE("check-slice, invariants, csv") {
    const std::string alpha = temp_file("abc.txt", kAbc);
    Run r = cli({"--alphabet", alpha, "--word", "A B A B / A=a B=b", "check-slice", "--norm"});
    CHECK(r.code == kExitOk);
    CHECK(r.out.find("verdict: NotSlice(gamma)") != std::string::npos);
    CHECK(r.out.find("length norm: 2 <= ||w|| <= 2") != std::string::npos);

    r = cli({"--alphabet", alpha, "--word", "A B C B A C / A=a B=b C=c", "invariants"});
    CHECK(r.out.find("u: u(a)=d[c]; u(b)=d[c]; u(c)=-d[a+b]") != std::string::npos);
    CHECK(r.out.find("sigma[a=1,b=1,c=1]: 2") != std::string::npos);
    CHECK(r.out.find("hyperbolic: no") != std::string::npos);

    r = cli({"--alphabet", alpha, "--word", "A A / A=a", "--format", "csv", "invariants"});
    CHECK(r.out.rfind("word,length,gamma,u_hash,u,sigma,verdict\n", 0) == 0);
    CHECK(r.out.find(",Slice\n") != std::string::npos);
  }

  TEST_CASE("moves replay and search") {
    const std::string alpha = temp_file("abc.txt", kAbc);
    const std::string log = temp_file("log.txt", "SURG segs=3-7\nSURG segs=0-4\n");
    Run r = cli({"--alphabet", alpha, "--word", "A B A C D C D B / A=a B=a C=c D=c", "moves", "--replay", log, "--to", "()"});
    CHECK(r.code == kExitOk);
    CHECK(r.out.find("target: reached") != std::string::npos);
    r = cli({"--alphabet", alpha, "--word", "A B A C D C D B / A=a B=a C=c D=c", "moves", "--replay", log, "--to", "A A / A=a"});
    CHECK(r.code == kExitFailed);
    r = cli({"--alphabet", alpha, "--word", "A B B A / A=a B=b", "moves", "--to", "()"});
    CHECK(r.code == kExitOk);
    CHECK_FALSE(r.out.empty());
    r = cli({"--alphabet", alpha, "--word", "A A B B / A=a B=b", "moves"});
    CHECK(r.out.find("H1@0") != std::string::npos);
  }

  TEST_CASE("surface and fillings") {
    const std::string signs = temp_file("signs.txt", "alphabet: + -\ntau: +<->-\nword: A B A B\nproj: A=+ B=+\n");
    Run r = cli({"--alphabet", signs, "surface"});
    CHECK(r.code == kExitOk);
    CHECK(r.out.find("genus=1 rank=2") != std::string::npos);
    const std::string alpha = temp_file("abc.txt", kAbc);
    r = cli({"--alphabet", alpha, "--word", "A B C A D C B D / A=a B=a~ C=c D=c", "fillings"});
    CHECK(r.out.find("{s, A-B, C+D}  annihilating") != std::string::npos);
    CHECK(r.out.find("fillings: 4, annihilating: 1") != std::string::npos);
  }

  TEST_CASE("input errors exit 2 with a located message") {
    const std::string alpha = temp_file("abc.txt", kAbc);
    const std::string bad = temp_file("bad.txt", "alphabet: a b a\n");
    Run r = cli({"--alphabet", bad, "pairing"});
    CHECK(r.code == kExitInput);
    CHECK(r.err == bad + ":1:15: error: duplicate symbol 'a'\n");
    r = cli({"--alphabet", alpha, "--word", "A B A / A=a B=b", "pairing"});
    CHECK(r.code == kExitInput);
    r = cli({"--alphabet", alpha, "--caps", "k=-1", "--word", "A A / A=a", "check-slice"});
    CHECK(r.code == kExitInput);
    r = cli({"pairing"});
    CHECK(r.code == kExitInput);
    r = cli({});
    CHECK(r.code == kExitInput);
    r = cli({"--help"});
    CHECK(r.code == kExitOk);
    const std::string two = temp_file("ab.txt", "alphabet: a a~ b b~\ntau: a<->a~ b<->b~\n");
    r = cli({"--alphabet", two, "classify"});
    CHECK(r.code == kExitInput);
  }

  TEST_CASE("classify and verify") {
    const std::string two = temp_file("ab.txt", "alphabet: a a~ b b~\ntau: a<->a~ b<->b~\n");
    Run r = cli({"--alphabet", two, "--override", "--jobs", "2", "classify", "--n", "2"});
    CHECK(r.code == kExitOk);
    CHECK(r.out.find("0 Unknown") != std::string::npos);
    r = cli({"verify", "--suite", "nonsense"});
    CHECK(r.code != kExitOk);
  }
}
