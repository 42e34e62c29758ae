#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "ncm/scenario.hpp"

using namespace ncm;
using nlohmann::json;

namespace {

json minimal_z2() {
  return json{{"schema_version", 1},
              {"instance",
               {{"kind", "commutative"}, {"group", {{"cyclic", 2}}}, {"length", {{"word", {1}}}}}},
              {"states", json::array({{{"kind", "pure"}, {"index", 0}},
                                      {{"kind", "pure"}, {"index", 1}}})},
              {"tolerance", 1e-8}};
}

}  // namespace

TEST_CASE("minimal scenario produces the oracle distance") {
  Scenario s = parse_scenario(minimal_z2());
  CHECK(s.instance.kind == "commutative");
  CHECK(s.states.size() == 2);
  Report r = run_scenario(s);
  json doc = json::parse(r.json);
  CHECK(doc.at("schema_version") == 1);
  REQUIRE(doc.at("distances").size() == 1);
  CHECK(doc.at("distances")[0].at("estimate").get<double>() == doctest::Approx(1.0));
  CHECK(doc.at("distances")[0].at("certified").get<bool>());
}

TEST_CASE("unknown keys are rejected at every level") {
  json top = minimal_z2();
  top["surprise"] = 1;
  CHECK_THROWS_AS(parse_scenario(top), ScenarioError);

  json inst = minimal_z2();
  inst["instance"]["extra"] = true;
  CHECK_THROWS_AS(parse_scenario(inst), ScenarioError);

  json state = minimal_z2();
  state["states"][0]["label"] = "x";
  CHECK_THROWS_AS(parse_scenario(state), ScenarioError);

  json group = minimal_z2();
  group["instance"]["group"]["order"] = 2;
  CHECK_THROWS_AS(parse_scenario(group), ScenarioError);
}

TEST_CASE("malformed scenarios are rejected with diagnostics") {
  json noVersion = minimal_z2();
  noVersion.erase("schema_version");
  CHECK_THROWS_WITH_AS(parse_scenario(noVersion), doctest::Contains("schema_version"),
                       ScenarioError);

  json badVersion = minimal_z2();
  badVersion["schema_version"] = 99;
  CHECK_THROWS_AS(parse_scenario(badVersion), ScenarioError);

  json noStates = minimal_z2();
  noStates.erase("states");
  CHECK_THROWS_WITH_AS(parse_scenario(noStates), doctest::Contains("states"), ScenarioError);

  json badTol = minimal_z2();
  badTol["tolerance"] = -1.0;
  CHECK_THROWS_AS(parse_scenario(badTol), ScenarioError);

  json badKind = minimal_z2();
  badKind["instance"]["kind"] = "donut";
  CHECK_THROWS_WITH_AS(parse_scenario(badKind), doctest::Contains("donut"), ScenarioError);

  json badIndex = minimal_z2();
  badIndex["states"][0]["index"] = 7;
  CHECK_THROWS_AS(parse_scenario(badIndex), std::invalid_argument);
}

TEST_CASE("degenerate lengths and group tables are rejected") {
  json zeroLength = minimal_z2();
  zeroLength["instance"]["length"] = {{"values", {0.0, 0.0}}};
  CHECK_THROWS_AS(parse_scenario(zeroLength), ScenarioError);

  json badTable = minimal_z2();
  badTable["instance"]["group"] = {{"table", {{0, 1}, {1, 1}}}};
  CHECK_THROWS_AS(parse_scenario(badTable), std::invalid_argument);

  json badState = minimal_z2();
  badState["states"] = json::array();
  CHECK_THROWS_AS(parse_scenario(badState), ScenarioError);
}

TEST_CASE("seminorm overrides") {
  json holder = minimal_z2();
  holder["seminorm"] = {{"kind", "holder"}, {"holder_exponent", 0.5}};
  Scenario s = parse_scenario(holder);
  CHECK(s.instance.seminorm->kind() == "holder");

  json scaled = minimal_z2();
  scaled["seminorm"] = {{"scale", 2.0}};
  Report r = run_scenario(parse_scenario(scaled));
  CHECK(json::parse(r.json).at("distances")[0].at("estimate").get<double>() ==
        doctest::Approx(0.5));

  json diracOnCommutative = minimal_z2();
  diracOnCommutative["seminorm"] = {{"kind", "dirac"}};
  CHECK_THROWS_AS(parse_scenario(diracOnCommutative), ScenarioError);
}

TEST_CASE("reruns are byte identical") {
  json doc = minimal_z2();
  doc["states"].push_back({{"kind", "random"}, {"seed", 7}, {"count", 2}});
  doc["verify"] = true;
  Report a = run_scenario(parse_scenario(doc));
  Report b = run_scenario(parse_scenario(doc));
  CHECK(a.json == b.json);
  CHECK(report_csv(a) == report_csv(b));
  CHECK(a.verdicts_pass);
}

TEST_CASE("report json round-trips through the parser") {
  Report r = run_scenario(parse_scenario(minimal_z2()));
  json doc = json::parse(r.json);
  CHECK(doc.dump(2) + "\n" == r.json);
}

TEST_CASE("csv output is symmetric and parses back") {
  json doc = minimal_z2();
  doc["states"].push_back({{"kind", "mixed"}});
  Report r = run_scenario(parse_scenario(doc));
  std::istringstream csv(report_csv(r));
  std::string header;
  std::getline(csv, header);
  CHECK(header == "state,pure0,pure1,mixed");
  std::vector<std::vector<double>> body;
  std::string line;
  while (std::getline(csv, line)) {
    std::istringstream row(line);
    std::string cell;
    std::getline(row, cell, ',');  // label
    std::vector<double> values;
    while (std::getline(row, cell, ',')) values.push_back(std::stod(cell));
    body.push_back(values);
  }
  REQUIRE(body.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(body[i][i] == 0.0);
    for (std::size_t j = 0; j < 3; ++j) CHECK(body[i][j] == body[j][i]);
  }
}

TEST_CASE("single-state report yields a one-cell matrix") {
  json doc = minimal_z2();
  doc["states"] = json::array({{{"kind", "mixed"}}});
  Report r = run_scenario(parse_scenario(doc));
  CHECK(report_csv(r) == "state,mixed\nmixed,0\n");
}

TEST_CASE("fuzzy torus scenario passes the verification suite") {
  json doc{{"schema_version", 1},
           {"instance", {{"kind", "fuzzy_torus"}, {"q", 2}}},
           {"states", json::array({{{"kind", "pure"}, {"index", 0}}, {{"kind", "mixed"}}})},
           {"tolerance", 1e-4},
           {"verify", true}};
  Report r = run_scenario(parse_scenario(doc));
  CHECK(r.verdicts_pass);
  json parsed = json::parse(r.json);
  REQUIRE(parsed.contains("verdicts"));
  bool sawDiameter = false;
  for (const auto& v : parsed.at("verdicts")) {
    CHECK(v.at("pass").get<bool>());
    if (v.at("name") == "diameter") sawDiameter = true;
  }
  CHECK(sawDiameter);
}

TEST_CASE("custom instances parse matrices") {
  // the Weyl pair on M_2, spelled out entry by entry
  json id = {{{1.0, 0.0}, {0.0, 0.0}}, {{0.0, 0.0}, {1.0, 0.0}}};
  json sz = {{{1.0, 0.0}, {0.0, 0.0}}, {{0.0, 0.0}, {-1.0, 0.0}}};
  json sx = {{{0.0, 0.0}, {1.0, 0.0}}, {{1.0, 0.0}, {0.0, 0.0}}};
  json sxsz = {{{0.0, 0.0}, {-1.0, 0.0}}, {{1.0, 0.0}, {0.0, 0.0}}};
  json doc{{"schema_version", 1},
           {"instance",
            {{"kind", "custom"},
             {"group", {{"product_cyclic", {2, 2}}}},
             {"matrices", {id, sz, sx, sxsz}},
             {"length", {{"word", {2, 1}}}},
             {"cocycle_tolerant", true}}},
           {"states", json::array({{{"kind", "pure"}, {"index", 0}}, {{"kind", "mixed"}}})},
           {"tolerance", 1e-6}};
  Scenario s = parse_scenario(doc);
  CHECK(s.instance.kind == "custom");
  Report r = run_scenario(s);
  CHECK(json::parse(r.json).at("distances")[0].at("estimate").get<double>() > 0.0);
}

TEST_CASE("export rejects unknown formats") {
  Report r = run_scenario(parse_scenario(minimal_z2()));
  CHECK_THROWS_AS(export_report(r, "/tmp/ncm_report_test.xml", "xml"), ScenarioError);
}
