#include <doctest.h>

#include <json.hpp>

#include "common.hpp"
#include "runner.hpp"

using namespace eqym;
using json = nlohmann::json;

namespace {
json summary(const RunResult& r) { return json::parse(r.summary); }

const Artifact* find(const RunResult& r, const std::string& name) {
  for (const auto& a : r.artifacts)
    if (a.name == name) return &a;
  return nullptr;
}
}  // namespace

TEST_CASE("config resolution") {
  auto c = json::parse(resolve_config(R"({"command":"classify","group":"so","n":5})"));
  CHECK(c["seed"] == 1);
  CHECK(c["n"] == 5);
  CHECK_THROWS_AS(resolve_config(R"({"command":"classify","group":"so","n":5,"bogus":1})"), ValidationError);
  CHECK_THROWS_AS(resolve_config(R"({"command":"classify","group":"so","n":"five"})"), ValidationError);
  CHECK_THROWS_AS(resolve_config(R"({"command":"launch"})"), ValidationError);
  CHECK_THROWS_AS(resolve_config("[1,2]"), ValidationError);
}

TEST_CASE("classify examples") {
  auto r = execute(R"({"command":"classify","group":"so","n":5})");
  CHECK(r.exit_code == 0);
  CHECK(summary(r)["details"]["dimension"] == 1);
  REQUIRE(find(r, "classify.json"));
  REQUIRE(find(r, "dimensions.txt"));

  r = execute(R"({"command":"classify","group":"sopq","p":2,"q":2})");
  CHECK(r.exit_code == 0);
  CHECK(summary(r)["details"]["dimension"] == 2);

  r = execute(R"({"command":"classify","group":"so","n":2})");
  CHECK(r.exit_code == 2);
  CHECK(summary(r)["status"] == "ERROR");
}

TEST_CASE("verify examples") {
  auto r = execute(R"({"command":"verify","suite":"projection","case":"son","n":5,"samples":50})");
  CHECK(r.exit_code == 0);
  const json checks = summary(r)["checks"];
  for (const auto& c : checks) CHECK(c["value"].get<double>() < 1e-8);

  r = execute(R"({"command":"verify","suite":"commutators","p":2,"q":2})");
  CHECK(r.exit_code == 0);

  r = execute(R"({"command":"verify","suite":"equivariance","case":"son","n":5,"corrupt":0.1})");
  CHECK(r.exit_code == 3);
  auto s = summary(r);
  REQUIRE(!s["failing"].empty());
  CHECK(s["failing"][0].get<std::string>().find("equivariance") != std::string::npos);
}

TEST_CASE("solve, evolve and energy examples") {
  auto r = execute(R"({"command":"solve","case":"son","n":5,"b":1.0,"rmax":5})");
  CHECK(r.exit_code == 0);
  REQUIRE(find(r, "profile.csv"));
  CHECK(find(r, "profile.csv")->data.rfind("r,g,dg,ddg\n", 0) == 0);

  r = execute(R"({"command":"evolve","mode":"scalar","n":5,"metric":"flat","T":1})");
  CHECK(r.exit_code == 0);
  bool seen = false;
  const json checks = summary(r)["checks"];
  for (const auto& c : checks)
    if (c["name"] == "energy drift") {
      seen = true;
      CHECK(c["value"].get<double>() < 1e-5);
    }
  CHECK(seen);

  r = execute(R"({"command":"energy","scale":2,"n":4})");
  CHECK(r.exit_code == 0);
  REQUIRE(find(r, "energy_scaling.csv"));

  r = execute(R"({"command":"evolve","mode":"scalar","n":5,"cfl":2.0})");
  CHECK(r.exit_code == 2);
}

TEST_CASE("identical configs give identical outputs") {
  const char* cfg = R"({"command":"verify","suite":"equivariance","case":"sun","n":5,"samples":5,"seed":7})";
  auto a = execute(cfg), b = execute(cfg);
  CHECK(a.summary == b.summary);
  CHECK(a.config == b.config);
  REQUIRE(a.artifacts.size() == b.artifacts.size());
  for (size_t i = 0; i < a.artifacts.size(); ++i) CHECK(a.artifacts[i].data == b.artifacts[i].data);
  CHECK(fmt_double(0.1) == "0.10000000000000001");
}
