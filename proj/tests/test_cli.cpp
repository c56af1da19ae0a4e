#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "norlund_cli/cli.hpp"

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = norlund::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

// RFC 4180 reader, enough for round-tripping the CSV writer
std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool quoted = false;
  bool any = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"' && i + 1 < text.size() && text[i + 1] == '"') {
        field += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        field += c;
      }
      continue;
    }
    if (c == '"') {
      quoted = true;
      any = true;
    } else if (c == ',') {
      row.push_back(field);
      field.clear();
    } else if (c == '\n') {
      row.push_back(field);
      rows.push_back(row);
      row.clear();
      field.clear();
      any = false;
    } else if (c != '\r') {
      field += c;
      any = true;
    }
  }
  if (any || !field.empty() || !row.empty()) {
    row.push_back(field);
    rows.push_back(row);
  }
  return rows;
}

std::size_t count_lines(const std::string& s, const std::string& prefix) {
  std::istringstream in(s);
  std::size_t n = 0;
  for (std::string line; std::getline(in, line);) n += line.rfind(prefix, 0) == 0;
  return n;
}

}  // namespace

TEST_CASE("list") {
  const Outcome all = cli({"list"});
  CHECK(all.code == 0);
  CHECK(all.out.find("CB-INV") != std::string::npos);
  CHECK(all.out.find("h ∉ ℤ") != std::string::npos);
  const Outcome one = cli({"list", "--id", "CB-INV", "--format", "json"});
  REQUIRE(one.code == 0);
  const auto j = nlohmann::json::parse(one.out);
  REQUIRE(j.is_array());
  REQUIRE(j.size() == 1);
  CHECK(j[0]["id"] == "CB-INV");
  CHECK(j[0]["params"][0]["name"] == "h");
  CHECK(j[0]["convergence"].get<std::string>().find("h > -1/2") != std::string::npos);
  const Outcome csv = cli({"list", "--format", "csv"});
  const auto rows = parse_csv(csv.out);
  CHECK(rows.size() >= 19);
  CHECK(rows[0][0] == "id");
  for (const auto& r : rows) CHECK(r.size() == rows[0].size());
  CHECK(cli({"list", "--id", "NOPE"}).code == 2);
}

TEST_CASE("verify examples") {
  const Outcome cb = cli({"verify", "--id", "CB-INV", "--param", "h=1/2"});
  CHECK(cb.code == 0);
  CHECK(cb.out.find("PASS CB-INV") != std::string::npos);
  CHECK(cb.out.find("1.3862943611") != std::string::npos);
  const Outcome tan = cli({"verify", "--id", "PI-TAN", "--param", "z=1/5", "--format", "json"});
  CHECK(tan.code == 0);
  const auto j = nlohmann::json::parse(tan.out);
  REQUIRE(j.size() == 1);
  CHECK(j[0]["passed"] == true);
  CHECK(j[0]["params"]["z"] == "1/5");
  CHECK(cli({"verify", "--id", "CAT-H"}).code == 0);
  const Outcome dec = cli({"verify", "--id", "NORLUND", "--param", "z=0.5", "--param", "h=0.25"});
  CHECK(dec.code == 0);
}

TEST_CASE("exit codes") {
  CHECK(cli({"--help"}).code == 0);
  CHECK(cli({}).code == 2);
  CHECK(cli({"frobnicate"}).code == 2);
  CHECK(cli({"verify", "--id", "NOPE"}).code == 2);
  CHECK(cli({"verify", "--id", "CB-INV", "--param", "h"}).code == 2);
  CHECK(cli({"verify", "--id", "CB-INV", "--param", "h=abc"}).code == 2);
  CHECK(cli({"verify", "--id", "CB-INV", "--param", "k=1/2"}).code == 2);
  CHECK(cli({"verify", "--all", "--id", "CB-INV"}).code == 2);
  CHECK(cli({"verify"}).code == 2);
  CHECK(cli({"verify", "--id", "CB-INV", "--id", "CAT-H", "--param", "h=1/2"}).code == 2);
  CHECK(cli({"verify", "--id", "CB-INV", "--precision", "10"}).code == 2);
  CHECK(cli({"verify", "--id", "CB-INV", "--precision", "4096"}).code == 2);
  CHECK(cli({"verify", "--id", "CB-INV", "--method", "magic"}).code == 2);
  CHECK(cli({"verify", "--id", "CB-INV", "--tolerance", "-1"}).code == 2);
  CHECK(cli({"verify", "--id", "CB-INV", "--format", "xml"}).code == 2);
  CHECK(cli({"dump", "--id", "CB-INV", "--param", "h=1/2", "--terms", "50", "--max-terms", "10"}).code == 2);

  const Outcome dom = cli({"verify", "--id", "CB-INV", "--param", "h=-1"});
  CHECK(dom.code == 3);
  CHECK(dom.err.find("h ∉ ℤ") != std::string::npos);
  CHECK(cli({"verify", "--id", "CAT-H", "--param", "z=-2"}).code == 3);
  CHECK(cli({"verify", "--id", "CB-INV", "--param", "h=1.0000000000000000000000000000000000000000000000001"}).code == 3);

  // a failing verification
  CHECK(cli({"verify", "--id", "CB-INV", "--param", "h=1/2", "--method", "direct", "--max-terms", "50"}).code == 1);
  CHECK(cli({"verify", "--id", "CB-INV", "--param", "h=1/2", "--tolerance", "0"}).code == 1);
}

TEST_CASE("precision from the environment") {
  ::setenv("NORLUND_PRECISION", "512", 1);
  const Outcome o = cli({"verify", "--id", "CB-INV", "--param", "h=1/3", "--format", "json"});
  ::unsetenv("NORLUND_PRECISION");
  REQUIRE(o.code == 0);
  const auto j = nlohmann::json::parse(o.out);
  const std::string lhs = j[0]["lhs"];
  CHECK(lhs.size() - lhs.find('.') - 1 == 155);
  const Outcome flag = cli({"verify", "--id", "CB-INV", "--param", "h=1/3", "--format", "json"});
  const std::string lhs256 = nlohmann::json::parse(flag.out)[0]["lhs"];
  CHECK(lhs256.size() - lhs256.find('.') - 1 == 78);
}

TEST_CASE("json report shape") {
  const Outcome o = cli({"verify", "--id", "OH-SHIFT", "--format", "json"});
  REQUIRE(o.code == 0);
  const auto j = nlohmann::json::parse(o.out);
  REQUIRE(j.size() >= 4);
  for (const auto& r : j) {
    for (const char* key : {"id", "sample", "params", "method", "terms_used", "lhs", "rhs", "abs_error", "tolerance",
                            "passed", "elapsed_ms", "error_estimate", "tail_bound", "notes"}) {
      CHECK_MESSAGE(r.contains(key), key);
    }
    CHECK(r["terms_used"].is_number_integer());
    CHECK(r["passed"].is_boolean());
    CHECK(r["notes"].is_array());
  }
}

TEST_CASE("csv report round trip") {
  const Outcome o = cli({"verify", "--id", "CB-INV", "--format", "csv"});
  REQUIRE(o.code == 0);
  const auto rows = parse_csv(o.out);
  REQUIRE(rows.size() >= 2);
  CHECK(rows[0] == std::vector<std::string>{"id", "sample", "params", "method", "terms_used", "lhs", "rhs", "abs_error",
                                            "tolerance", "passed", "elapsed_ms", "error_estimate", "tail_bound",
                                            "notes"});
  const auto j = nlohmann::json::parse(cli({"verify", "--id", "CB-INV", "--format", "json"}).out);
  REQUIRE(rows.size() == j.size() + 1);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    REQUIRE(rows[i].size() == rows[0].size());
    CHECK(rows[i][0] == "CB-INV");
    CHECK(rows[i][1] == j[i - 1]["sample"].get<std::string>());
    CHECK(rows[i][5] == j[i - 1]["lhs"].get<std::string>());
  }
}

TEST_CASE("dump") {
  const Outcome o = cli({"dump", "--id", "CB-INV", "--param", "h=1/2", "--terms", "100", "--format", "csv"});
  REQUIRE(o.code == 0);
  const auto rows = parse_csv(o.out);
  REQUIRE(rows.size() == 101);
  CHECK(rows[0] == std::vector<std::string>{"n", "t_n", "S_n", "abs_error"});
  CHECK(rows[1][0] == "0");
  CHECK(rows[1][1].rfind("1.000000", 0) == 0);
  // the tail of sum 1/((2n+1)(n+1)) after 100 terms is about 1/200
  const double last = std::stod(rows[100][3]);
  CHECK(last > 4e-3);
  CHECK(last < 6e-3);
  double prev = 1.0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double e = std::stod(rows[i][3]);
    CHECK(e < prev);
    prev = e;
  }

  const Outcome fin = cli({"dump", "--id", "NORLUND", "--param", "z=2", "--param", "h=2", "--terms", "5", "--format", "json"});
  REQUIRE(fin.code == 0);
  const auto j = nlohmann::json::parse(fin.out);
  REQUIRE(j.size() == 5);
  CHECK(j[1]["t_n"].get<std::string>().rfind("-0.1666666", 0) == 0);
  CHECK(j[4]["t_n"].get<std::string>().find_first_not_of("0.") == std::string::npos);

  const Outcome shifted = cli({"dump", "--id", "CB-SHIFT", "--param", "h=2", "--terms", "3"});
  CHECK(shifted.code == 0);
  CHECK(shifted.out.find("2") != std::string::npos);
  CHECK(cli({"dump", "--id", "CB-INV", "--param", "h=-1"}).code == 3);
}

TEST_CASE("parallel and serial runs agree") {
  const Outcome a = cli({"verify", "--id", "CAT-H", "--id", "NORLUND", "--format", "csv", "--parallel", "on"});
  const Outcome b = cli({"verify", "--id", "CAT-H", "--id", "NORLUND", "--format", "csv", "--parallel", "off"});
  REQUIRE(a.code == 0);
  REQUIRE(b.code == 0);
  auto ra = parse_csv(a.out);
  auto rb = parse_csv(b.out);
  REQUIRE(ra.size() == rb.size());
  for (std::size_t i = 0; i < ra.size(); ++i) {
    ra[i][10].clear();  // elapsed_ms
    rb[i][10].clear();
    CHECK(ra[i] == rb[i]);
  }
}

TEST_CASE("seed corpus and full matrix") {
  const auto path = std::filesystem::temp_directory_path() / "norlund_seed_corpus_test.json";
  const Outcome o = cli({"verify", "--seed-corpus", path.string()});
  CHECK(o.code == 0);
  CHECK(count_lines(o.out, "FAIL") == 0);
  std::ifstream in(path);
  const auto j = nlohmann::json::parse(in);
  CHECK(j.size() == count_lines(o.out, "PASS"));
  CHECK(j.size() >= 100);
  for (const auto& r : j) {
    CHECK(!r.contains("elapsed_ms"));
    CHECK(r["passed"] == true);
  }
  std::filesystem::remove(path);
}

TEST_CASE("cross-check") {
  const Outcome o = cli({"cross-check"});
  CHECK(o.code == 0);
  CHECK(count_lines(o.out, "PASS") >= 10);
  CHECK(count_lines(o.out, "FAIL") == 0);
}
