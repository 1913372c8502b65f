#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "dgforge/cli.hpp"
#include "dgforge/io.hpp"
#include "dgforge/report.hpp"

using namespace dgforge;

namespace {

const std::string data = DGFORGE_DATA_DIR;

struct Run {
  int code;
  std::string out, err;
  Json json() const { return Json::parse(out); }
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("shipped algebra files are the builtins") {
  for (const char* name : {"dual_numbers", "dual_numbers_deg1", "a2_path", "local_square_zero_2", "acyclic"}) {
    auto text = read_file(data + "/" + name + ".dga");
    CHECK(parse_algebra<Rational>(text, name) == builtin_example<Rational>(name));
  }
}

TEST_CASE("perfection of k over the dual numbers is refuted by periodicity") {
  auto r = run({"perfect", "--algebra", data + "/dual_numbers.dga", "--module", data + "/k.dgm", "--stages", "8", "--json"});
  REQUIRE(r.code == 1);
  auto j = r.json();
  CHECK(j["status"] == "Certified-No");
  CHECK(j["exit_code"] == 1);
  CHECK_THAT(j["result"]["reason"].get<std::string>(), Catch::Matchers::ContainsSubstring("isomorphic to syzygy 0"));
  CHECK(j["options"]["stages"] == 8);
  CHECK(j["options"]["window"] == Json::array({-8, 8}));
  CHECK(j["inputs"]["algebra"]["digest"] == fnv1a64(read_file(data + "/dual_numbers.dga")));
  CHECK(j["inputs"]["module"]["digest"] == fnv1a64(read_file(data + "/k.dgm")));

  // the module file names its algebra
  CHECK(run({"perfect", "--module", data + "/k.dgm"}).code == 1);
  CHECK(run({"perfect", "--module", data + "/d_free.dgm"}).code == 0);
}

TEST_CASE("koszul report") {
  auto r = run({"koszul", "--algebra", data + "/dual_numbers_deg1.dga", "--stages", "6", "--json"});
  REQUIRE(r.code == 0);
  auto j = r.json()["result"];
  CHECK(j["certified"] == Json{{"0", 6}});
  CHECK(j["certified_per_stage"] == Json::array({1, 1, 1, 1, 1, 1}));
  CHECK(j["power_law"] == true);
  CHECK(j["powers"].size() == 6);
}

TEST_CASE("exit codes follow the verdict") {
  CHECK(run({"gorenstein", "--algebra", "builtin:dual_numbers"}).code == 0);
  CHECK(run({"gorenstein", "--algebra", "builtin:local_square_zero_2", "--stages", "4"}).code == 2);
  CHECK(run({"smooth", "--algebra", "builtin:dual_numbers", "--stages", "4"}).code == 1);
  CHECK(run({"nakayama", "--algebra", "builtin:acyclic", "--module", "builtin:regular"}).code == 0);
  CHECK(run({"nakayama", "--algebra", "builtin:a2_path", "--module", "builtin:simple:1"}).code == 1);
  CHECK(run({"sep-idem", "--algebra", "builtin:dual_numbers"}).code == 1);
  CHECK(run({"sep-idem", "--algebra", "builtin:point"}).code == 0);
  CHECK(run({"perfect", "--algebra", data + "/dual_numbers_f5.dga", "--module", "builtin:top"}).code == 1);
  CHECK(run({"exttor-check", "--algebra", "builtin:a2_path", "--module", "builtin:random", "--module2", "builtin:random",
             "--seed", "3", "--window", "-6:6"})
            .code == 0);
}

TEST_CASE("every command runs on a small input") {
  const std::string a = "builtin:a2_path";
  for (std::vector<std::string> args : std::vector<std::vector<std::string>>{
           {"validate", "--algebra", a},
           {"radical", "--algebra", a},
           {"quotient", "--algebra", a},
           {"filtration", "--algebra", a},
           {"filtration", "--algebra", a, "--module", "builtin:regular"},
           {"resolve", "--algebra", a, "--module", "builtin:simple:0"},
           {"betti", "--algebra", a, "--module", "builtin:simple:1"},
           {"tensor", "--algebra", a, "--module", "builtin:top", "--module2", "builtin:top"},
           {"rhom", "--algebra", a, "--module", "builtin:top", "--module2", "builtin:regular"},
           {"perfect-contradual", "--algebra", a, "--module", "builtin:top"},
           {"serre-check", "--algebra", a, "--module", "builtin:simple:0", "--module2", "builtin:simple:1"},
           {"koszul", "--algebra", a, "--stages", "3"},
           {"hochschild", "--algebra", a, "--stages", "4", "--window", "-4:0"},
           {"auslander", "--algebra", a},
           {"keylemma", "--algebra", a},
       }) {
    auto r = run(args);
    INFO(args[0] << ": " << r.err);
    CHECK(r.code == 0);
    CHECK_THAT(r.out, Catch::Matchers::ContainsSubstring("wall time"));
    args.push_back("--json");
    auto j = run(args);
    CHECK(j.code == r.code);
    CHECK(j.json()["command"] == args[0]);
  }
}

TEST_CASE("hochschild of the dual numbers") {
  auto r = run({"hochschild", "--algebra", "builtin:dual_numbers", "--stages", "6", "--window", "-5:0", "--json"});
  REQUIRE(r.code == 0);
  std::vector<int> dims;
  auto j = r.json();
  for (auto& row : j["result"]["hh"]) dims.push_back(row["dim"]);
  CHECK(dims == std::vector<int>{2, 1, 1, 1, 1, 1});
}

TEST_CASE("input errors exit with 3") {
  auto unknown = run({"frobnicate"});
  CHECK(unknown.code == 3);
  CHECK_THAT(unknown.err, Catch::Matchers::ContainsSubstring("unknown command 'frobnicate'"));
  CHECK_THAT(unknown.err, Catch::Matchers::ContainsSubstring("Usage"));
  auto flag = run({"gorenstein", "--algebra", "builtin:point", "--bogus"});
  CHECK(flag.code == 3);
  CHECK_THAT(flag.err, Catch::Matchers::ContainsSubstring("Usage"));
  // --module is not a gorenstein flag
  CHECK(run({"gorenstein", "--algebra", "builtin:point", "--module", "builtin:top"}).code == 3);
  CHECK(run({}).code == 3);
  CHECK(run({"perfect", "--algebra", data + "/missing.dga"}).code == 3);
  CHECK(run({"perfect"}).code == 3);
  CHECK(run({"koszul", "--algebra", "builtin:nope"}).code == 3);
  CHECK(run({"koszul", "--algebra", "builtin:point", "--window", "3"}).code == 3);
  CHECK(run({"koszul", "--algebra", "builtin:point", "--window", "3:1"}).code == 3);
  CHECK(run({"resolve", "--algebra", "builtin:point", "--module", "builtin:simple:4"}).code == 3);

  auto bad = run({"gorenstein", "--algebra", data + "/bad_degree.dga"});
  CHECK(bad.code == 3);
  CHECK_THAT(bad.err, Catch::Matchers::ContainsSubstring("x * y"));
  auto json = run({"gorenstein", "--algebra", data + "/bad_degree.dga", "--json"});
  CHECK(json.code == 3);
  CHECK(json.json()["exit_code"] == 3);

  auto v = run({"validate", "--algebra", data + "/bad_degree.dga", "--json"});
  CHECK(v.code == 1);
  CHECK_THAT(v.out, Catch::Matchers::ContainsSubstring("x * y"));
  CHECK(run({"validate", "--algebra", data + "/dual_numbers.dga", "--module", data + "/k.dgm"}).code == 0);
}

TEST_CASE("json reports are byte-identical across runs") {
  std::vector<std::string> args{"tensor", "--algebra", data + "/dual_numbers.dga", "--module", data + "/k.dgm",
                                "--module2", data + "/k.dgm", "--window", "-4:4", "--json"};
  auto a = run(args), b = run(args);
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.find("wall") == std::string::npos);
  auto t = a.json()["result"]["table"];
  REQUIRE(t.size() > 0);
  // Tor^D(k, k) is one dimensional in each degree <= 0
  for (auto& row : t) CHECK(row["dim"] == (row["degree"].get<int>() <= 0 ? 1 : 0));
}

TEST_CASE("selftest runs the acceptance corpus") {
  auto r = run({"selftest", "--json"});
  INFO(r.out);
  CHECK(r.code == 0);
  auto rows = r.json()["result"]["criteria"];
  REQUIRE(rows.size() == 10);
  for (auto& row : rows) CHECK(row["result"] == "PASS");
}
