#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "palintiple/cli.hpp"

using nlohmann::ordered_json;

namespace {

struct CliRun {
  int code = 0;
  std::string out;
  std::string err;

  bool operator==(const CliRun&) const = default;
};

doctest::String toString(const CliRun& r) {
  return doctest::String(("{code=" + std::to_string(r.code) + " out=" + r.out + " err=" + r.err +
                          "}")
                             .c_str());
}

CliRun run(const std::vector<std::string>& args) {
  std::vector<const char*> argv;
  argv.push_back("palintiple");
  for (const std::string& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = pal::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return CliRun{code, out.str(), err.str()};
}

struct TempFile {
  std::filesystem::path path;

  explicit TempFile(const std::string& stem, const std::string& ext) {
    std::random_device rd;
    path = std::filesystem::temp_directory_path() / (stem + "-" + std::to_string(rd()) + ext);
    std::filesystem::remove(path);
  }
  ~TempFile() {
    std::error_code ec;
    std::filesystem::remove(path, ec);
  }
  std::string str() const { return path.string(); }
};

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

TEST_CASE("verify") {
  SUBCASE("worked examples come back with their class") {
    CHECK(run({"verify", "9", "10", "9.8.0.1"}) == CliRun{0, "symmetric\n", ""});
    CHECK(run({"verify", "4", "10", "8.7.9.1.2"}) == CliRun{0, "symmetric\n", ""});
    CHECK(run({"verify", "2", "5", "3.1"}) == CliRun{0, "shifted-symmetric\n", ""});
    CHECK(run({"verify", "2", "5", "3.1.0.0.3.1"}) == CliRun{0, "shifted-symmetric\n", ""});
  }
  SUBCASE("a non-palintiple is a verification failure, not a usage error") {
    const CliRun r = run({"verify", "9", "10", "9.8.1.1"});
    CHECK(r.code == 2);
    CHECK(r.out.empty());
    CHECK(r.err.find("not-a-multiple") != std::string::npos);
  }
  SUBCASE("malformed digits are usage errors") {
    CHECK(run({"verify", "9", "10", "9.8.x.1"}).code == 1);
    CHECK(run({"verify", "9", "10", ""}).code == 1);
    CHECK(run({"verify", "9", "10"}).code == 1);  // missing argument
  }
  SUBCASE("--value form") {
    CHECK(run({"verify", "9", "10", "9801", "--value"}) == CliRun{0, "symmetric\n", ""});
    CHECK(run({"verify", "9", "11", "9801", "--value"}).code == 1);
    CHECK(run({"verify", "9", "10", "98x1", "--value"}).code == 1);
  }
  SUBCASE("--json emits the record") {
    const CliRun r = run({"verify", "9", "10", "9.8.0.1", "--json"});
    REQUIRE(r.code == 0);
    const ordered_json j = ordered_json::parse(r.out);
    CHECK(j["n"] == 9);
    CHECK(j["b"] == 10);
    CHECK(j["digits"] == "9.8.0.1");
    CHECK(j["value"] == 9801);
    CHECK(j["carries"] == ordered_json::array({0, 8, 8, 0, 0}));
    CHECK(j["class"] == "symmetric");
  }
}

TEST_CASE("classify prints carries before the class") {
  CHECK(run({"classify", "9", "10", "9.8.0.1"}) ==
        CliRun{0, "carries: 0 8 8 0 0\nclass: symmetric\n", ""});
  CHECK(run({"classify", "2", "5", "3.1.3.1"}) ==
        CliRun{0, "carries: 0 1 0 1 0\nclass: shifted-symmetric\n", ""});
}

TEST_CASE("pair-class") {
  CHECK(run({"pair-class", "9", "10"}) == CliRun{0, "symmetric-class\n", ""});
  CHECK(run({"pair-class", "5", "8"}) == CliRun{0, "asymmetric-candidate\n", ""});
  const CliRun r = run({"pair-class", "2", "5", "--json"});
  REQUIRE(r.code == 0);
  const ordered_json j = ordered_json::parse(r.out);
  CHECK(j["pair_class"] == "shifted-symmetric-class");
  CHECK(j["congruence_solutions"] == ordered_json::array({1}));
  CHECK(run({"pair-class", "1", "10"}).code == 1);
}

TEST_CASE("construct shifted") {
  CHECK(run({"construct", "shifted", "2", "5"}) == CliRun{0, "3.1\n", ""});
  CHECK(run({"construct", "shifted", "2", "5", "--count", "5"}) == CliRun{0, "3.4.4.4.1\n", ""});
  SUBCASE("an explicit solution is honored and validated") {
    const CliRun def = run({"construct", "shifted", "3", "11", "--count", "3", "--json"});
    REQUIRE(def.code == 0);
    const ordered_json j = ordered_json::parse(def.out);
    CHECK(j["class"] == "shifted-symmetric");
    CHECK(j["carries"][1] == 1);
    const CliRun alt =
        run({"construct", "shifted", "3", "11", "--count", "3", "--solution", "2", "--json"});
    REQUIRE(alt.code == 0);
    CHECK(ordered_json::parse(alt.out)["carries"][1] == 2);
    CHECK(run({"construct", "shifted", "2", "5", "--solution", "2"}).code == 1);
  }
  SUBCASE("pairs outside the shifted class are rejected as data, not usage") {
    const CliRun r = run({"construct", "shifted", "9", "10"});
    CHECK(r.code == 2);
    CHECK(r.err.find("not-divisible") != std::string::npos);
  }
  CHECK(run({"construct", "shifted", "2", "5", "--count", "1"}).code == 1);
}

TEST_CASE("construct symmetric") {
  CHECK(run({"construct", "symmetric", "9", "10", "--len", "4"}) == CliRun{0, "9.8.0.1\n", ""});
  CHECK(run({"construct", "symmetric", "9", "10", "--len", "5"}) == CliRun{0, "9.8.9.0.1\n", ""});
  CHECK(run({"construct", "symmetric", "4", "10", "--len", "4"}) == CliRun{0, "8.7.1.2\n", ""});
  SUBCASE("needs a divisor pair") {
    const CliRun r = run({"construct", "symmetric", "2", "5", "--len", "4"});
    CHECK(r.code == 2);
    CHECK(r.err.find("not-divisible") != std::string::npos);
  }
  SUBCASE("digit counts below 4 have no bit sequence") {
    const CliRun r = run({"construct", "symmetric", "9", "10", "--len", "3"});
    CHECK(r.code == 2);
    CHECK(r.err.find("invalid-r-sequence") != std::string::npos);
  }
  CHECK(run({"construct", "symmetric", "9", "10", "--len", "1"}).code == 1);
}

TEST_CASE("min-digits and exists") {
  CHECK(run({"min-digits", "106", "420"}) == CliRun{0, "105\n", ""});
  CHECK(run({"min-digits", "3", "10"}) == CliRun{0, "none\n", ""});
  CHECK(run({"exists", "9", "10"}) == CliRun{0, "true\n", ""});
  CHECK(run({"exists", "3", "10"}) == CliRun{0, "false\n", ""});
  const CliRun r = run({"min-digits", "3", "10", "--json"});
  REQUIRE(r.code == 0);
  CHECK(ordered_json::parse(r.out)["min_digits"].is_null());
  CHECK(run({"min-digits", "1", "10"}).code == 1);
  CHECK(run({"exists", "10", "10"}).code == 1);
}

TEST_CASE("enumerate") {
  CHECK(run({"enumerate", "9", "10", "--len", "4"}) == CliRun{0, "9.8.0.1\n", ""});
  CHECK(run({"enumerate", "2", "5", "--len", "6"}) ==
        CliRun{0, "3.1.0.0.3.1\n3.1.3.1.3.1\n3.4.1.3.4.1\n3.4.4.4.4.1\n", ""});
  CHECK(run({"enumerate", "9", "10", "--len", "3"}) == CliRun{0, "", ""});
  const CliRun r = run({"enumerate", "9", "10", "--len", "4", "--json"});
  REQUIRE(r.code == 0);
  const ordered_json j = ordered_json::parse(r.out);
  REQUIRE(j.is_array());
  REQUIRE(j.size() == 1);
  CHECK(j[0]["value"] == 9801);
  CHECK(run({"enumerate", "9", "10", "--len", "0"}).code == 1);
}

TEST_CASE("graph") {
  CHECK(run({"graph", "9", "10"}) == CliRun{0, "nodes: 4\nedges: 6\n", ""});
  SUBCASE("DOT output") {
    const CliRun r = run({"graph", "9", "10", "--dot"});
    REQUIRE(r.code == 0);
    CHECK(r.out.rfind("digraph carry_pairs {", 0) == 0);
    CHECK(r.out.find("doublecircle") != std::string::npos);
    CHECK(r.out.find("\"0,0\" -> \"8,0\" [label=\"1|9\"];") != std::string::npos);
  }
  SUBCASE("JSON output, trimmed and full") {
    const CliRun trimmed = run({"graph", "9", "10", "--json"});
    REQUIRE(trimmed.code == 0);
    const ordered_json t = ordered_json::parse(trimmed.out);
    CHECK(t["node_count"] == 4);
    CHECK(t["edge_count"] == 6);
    CHECK(t["full"] == false);
    const CliRun full = run({"graph", "9", "10", "--full", "--json"});
    REQUIRE(full.code == 0);
    const ordered_json f = ordered_json::parse(full.out);
    CHECK(f["node_count"] == 81);
    CHECK(f["full"] == true);
  }
  CHECK(run({"graph", "9", "9"}).code == 1);
}

TEST_CASE("iso and is-1089") {
  CHECK(run({"iso", "9", "10", "4", "10"}) == CliRun{0, "isomorphic\n", ""});
  CHECK(run({"iso", "9", "10", "2", "5"}) == CliRun{0, "not-isomorphic\n", ""});
  const CliRun r = run({"iso", "9", "10", "4", "15", "--json"});
  REQUIRE(r.code == 0);
  CHECK(ordered_json::parse(r.out)["isomorphic"] == true);
  CHECK(run({"is-1089", "9", "10"}) == CliRun{0, "true\n", ""});
  CHECK(run({"is-1089", "2", "5"}) == CliRun{0, "false\n", ""});
  CHECK(run({"iso", "9", "10", "1", "5"}).code == 1);
}

TEST_CASE("figure1") {
  const std::string golden =
      "base,n,digit_count,d0,dk,digits\n"
      "5,2,2,1,3,3.1\n"
      "5,4,4,1,4,4.3.0.1\n";
  CHECK(run({"figure1", "--from", "5", "--to", "5"}) == CliRun{0, golden, ""});
  SUBCASE("JSON rows") {
    const CliRun r = run({"figure1", "--from", "5", "--to", "5", "--json"});
    REQUIRE(r.code == 0);
    const ordered_json j = ordered_json::parse(r.out);
    REQUIRE(j.size() == 2);
    CHECK(j[0]["digits"] == "3.1");
    CHECK(j[1]["dk"] == 4);
  }
  SUBCASE("--out writes the same bytes to a file") {
    TempFile out("pal-figure1", ".csv");
    const CliRun r = run({"figure1", "--from", "5", "--to", "5", "--out", out.str()});
    CHECK(r == CliRun{0, "", ""});
    CHECK(slurp(out.path) == golden);
  }
  SUBCASE("an unwritable output path is an I/O failure") {
    const CliRun r = run({"figure1", "--from", "5", "--to", "5", "--out",
                          "/nonexistent-dir/figure1.csv"});
    CHECK(r.code == 3);
    CHECK(r.err.find("io-error") != std::string::npos);
  }
  CHECK(run({"figure1", "--from", "2", "--to", "5"}).code == 1);
}

TEST_CASE("scan") {
  const std::string golden =
      "base,is_symmetric,is_strongly_symmetric,witness_n,witness_min_digits\n"
      "3,true,true,,\n"
      "4,true,true,,\n"
      "5,true,false,,\n"
      "6,true,true,,\n"
      "7,true,false,,\n"
      "8,false,false,5,4\n";
  CHECK(run({"scan", "--from", "3", "--to", "8"}) == CliRun{0, golden, ""});
  SUBCASE("JSON summary") {
    const CliRun r = run({"scan", "--from", "3", "--to", "8", "--json"});
    REQUIRE(r.code == 0);
    const ordered_json j = ordered_json::parse(r.out);
    CHECK(j["symmetric_bases"] == ordered_json::array({3, 4, 5, 6, 7}));
    CHECK(j["strongly_symmetric_bases"] == ordered_json::array({3, 4, 6}));
    CHECK(j["prime_law_violations"] == ordered_json::array());
    CHECK(j["reports"].size() == 6);
    CHECK(j["reports"][5]["witness_n"] == 5);
  }
  SUBCASE("parallel scan matches the serial bytes") {
    CHECK(run({"scan", "--from", "3", "--to", "20", "--jobs", "4"}) ==
          run({"scan", "--from", "3", "--to", "20"}));
  }
  SUBCASE("a corrupt checkpoint stops the scan with an I/O exit") {
    TempFile ck("pal-scan-corrupt", ".jsonl");
    std::ofstream(ck.path) << "definitely not a base report\n";
    const CliRun r = run({"scan", "--from", "3", "--to", "8", "--checkpoint", ck.str()});
    CHECK(r.code == 3);
    CHECK(r.err.find("checkpoint-corrupt") != std::string::npos);
  }
  SUBCASE("checkpointed scan writes one line per base and resumes cleanly") {
    TempFile ck("pal-scan-ck", ".jsonl");
    CHECK(run({"scan", "--from", "3", "--to", "8", "--checkpoint", ck.str()}).code == 0);
    const std::string first = slurp(ck.path);
    CHECK(std::count(first.begin(), first.end(), '\n') == 6);
    const CliRun wider = run({"scan", "--from", "3", "--to", "10", "--checkpoint", ck.str()});
    CHECK(wider.code == 0);
    CHECK(wider.out == run({"scan", "--from", "3", "--to", "10"}).out);
    const std::string second = slurp(ck.path);
    CHECK(second.rfind(first, 0) == 0);  // resumed file extends the original
    CHECK(std::count(second.begin(), second.end(), '\n') == 8);
  }
  CHECK(run({"scan", "--from", "2", "--to", "8"}).code == 1);
  CHECK(run({"scan", "--from", "3", "--to", "8", "--mode", "bogus"}).code == 1);
}

TEST_CASE("conjecture") {
  SUBCASE("every suite reports no counterexample on a small range") {
    for (const std::string id :
         {"conjecture1", "corollary2", "pal-type", "shifted-carries", "reg1", "equivalences"}) {
      const CliRun r = run({"conjecture", id, "--bases", "12", "--depth", "5"});
      CAPTURE(id);
      CHECK(r.code == 0);
      CHECK(r.out.find("verdict: no-counterexample") != std::string::npos);
    }
  }
  SUBCASE("non-constant shifted carries surface as observations") {
    const CliRun r = run({"conjecture", "shifted-carries", "--bases", "10", "--depth", "6",
                          "--json"});
    REQUIRE(r.code == 0);
    const ordered_json j = ordered_json::parse(r.out);
    CHECK(j["verdict"] == "no-counterexample");
    REQUIRE(j.contains("observations"));
    CHECK(!j["observations"].empty());
    CHECK(!j["note"].get<std::string>().empty());
  }
  CHECK(run({"conjecture", "bogus"}).code == 1);
  CHECK(run({"conjecture", "conjecture1", "--bases", "2"}).code == 1);
  CHECK(run({"conjecture", "conjecture1", "--depth", "1"}).code == 1);
}

TEST_CASE("top-level usage") {
  CHECK(run({}).code == 1);
  const CliRun help = run({"--help"});
  CHECK(help.code == 0);
  CHECK(help.out.find("verify") != std::string::npos);
  CHECK(help.out.find("scan") != std::string::npos);
  CHECK(run({"frobnicate"}).code == 1);
}

TEST_CASE("repeated runs are byte-identical") {
  CHECK(run({"scan", "--from", "3", "--to", "12", "--json"}) ==
        run({"scan", "--from", "3", "--to", "12", "--json"}));
  CHECK(run({"figure1", "--from", "3", "--to", "12"}) ==
        run({"figure1", "--from", "3", "--to", "12"}));
  CHECK(run({"conjecture", "equivalences", "--bases", "10", "--depth", "5", "--json"}) ==
        run({"conjecture", "equivalences", "--bases", "10", "--depth", "5", "--json"}));
}
