#include <doctest.h>

#include <sstream>

#include <json.hpp>

#include "helpers.hpp"
#include "sofic/cli.hpp"

using namespace sofic;
using Json = nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

} // namespace

TEST_CASE("degree ranges") {
  CHECK(cli::parse_degrees("2..5") == std::vector<std::size_t>{2, 3, 4, 5});
  CHECK(cli::parse_degrees("4,8,16") == std::vector<std::size_t>{4, 8, 16});
  CHECK(cli::parse_degrees("7") == std::vector<std::size_t>{7});
  CHECK_THROWS(cli::parse_degrees("5..2"));
  CHECK_THROWS(cli::parse_degrees("a"));
}

TEST_CASE("count writes the exact CSV") {
  const Run r = run({"count", "--family", "zmod(1)", "--d", "2", "--delta", "3/5", "--space", "partial"});
  CHECK(r.code == 0);
  CHECK(r.out ==
        "# sofic count seed=1 source=zmod(1) radius 1 method=exact space=partial\n"
        "d,delta,n,count,restricted_count,statistic\n"
        "2,3/5,1,3,3,0.792481250\n");
  const Run triv = run({"count", "--family", "zmod(1)", "--d", "2..6", "--delta", "0.05"});
  CHECK(triv.code == 0);
  std::istringstream lines(triv.out);
  std::string line;
  std::getline(lines, line);
  std::getline(lines, line);
  int rows = 0;
  while (std::getline(lines, line)) {
    CHECK(line.substr(line.rfind(',') + 1) == "0.000000000");
    ++rows;
  }
  CHECK(rows == 5);
}

TEST_CASE("count methods agree on a vacuous instance") {
  const Run mc = run({"count", "--family", "zmod(2)", "--d", "3", "--delta", "2", "--space", "partial", "--method", "montecarlo",
                      "--trials", "200"});
  CHECK(mc.code == 0);
  CHECK(mc.out.find("d,delta,n,estimate,stderr,statistic\n") != std::string::npos);
  CHECK(mc.out.find("3,2,1,1156") != std::string::npos);
  const Run ref = run({"count", "--family", "zmod(2)", "--d", "3", "--delta", "2", "--space", "partial", "--method", "reference"});
  CHECK(ref.out.find("3,2,1,1156,34,") != std::string::npos);
}

TEST_CASE("curve counts") {
  const Run r = run({"curve", "--m", "2", "--d", "4,50", "--delta", "1/10"});
  CHECK(r.code == 0);
  CHECK(r.out.find("4,3,0.198120313\n") != std::string::npos);
  CHECK(r.out.find("50,7362916022189356278735389773218750,") != std::string::npos);
}

TEST_CASE("calc") {
  const Run ok = run({"calc", "amalgam(cyclic(2), cyclic(3), trivial)"});
  CHECK(ok.code == 0);
  const Json j = Json::parse(ok.out);
  CHECK(j["schema"] == "sofic-report/1");
  CHECK(j["value"] == "7/6");
  CHECK(j["value_num"] == "7");
  CHECK(j["value_den"] == "6");
  CHECK(j["assumptions"].size() > 0);

  const Run bad = run({"calc", "corner(z, 0)"});
  CHECK(bad.code == 2);
  CHECK(bad.out.empty());
  const Json e = Json::parse(bad.err);
  CHECK(e["error"]["kind"] == "parse");
  CHECK(e["error"]["position"] == 10);

  const Run file = run({"calc", "finite_groupoid(z2.gpd)", "--base-dir", SOFIC_DATA_DIR});
  CHECK(file.code == 0);
  CHECK(Json::parse(file.out)["value"] == "1/2");
}

TEST_CASE("errors and exit codes") {
  CHECK(run({}).code == 2);
  CHECK(run({"count", "--bogus"}).code == 2);
  CHECK(run({"count", "--family", "nonsense(3)", "--d", "2"}).code == 2);
  const Run inf = run({"count", "--family", "zmod(1)", "--d", "12", "--delta", "3/5", "--space", "partial"});
  CHECK(inf.code == 4);
  CHECK(Json::parse(inf.err)["error"]["kind"] == "infeasible");
  const Run eval = run({"calc", "amalgam(z, z, amalgam(z, z, z))"});
  CHECK(eval.code == 3);
}

TEST_CASE("verify and construct") {
  const Run v = run({"verify", "--suite", "c1", "--d", "2..4"});
  CHECK(v.code == 0);
  const Json j = Json::parse(v.out);
  CHECK(j["pass"] == true);
  CHECK(j["members_per_degree"] == Json::array({1, 0, 3}));

  const Run file = run({"verify", "--suite", "c2", "--source", testing_helpers::data_file("r2.gpd"), "--d", "2", "--partitions", "5"});
  CHECK(file.code == 0);

  for (const char *what : {"expand", "restrict", "phi"}) {
    const Run c = run({"construct", "--what", what});
    CHECK(c.code == 0);
    CHECK(Json::parse(c.out)["pass"] == true);
  }
  CHECK(run({"construct", "--what", "nothing"}).code == 2);
}

TEST_CASE("output does not depend on the thread count") {
  const std::vector<std::vector<std::string>> commands{
      {"count", "--family", "freeprod(zmod(2),zmod(2))", "--d", "2..4", "--delta", "1/2"},
      {"count", "--family", "zmod(3)", "--d", "3", "--delta", "1/2", "--method", "montecarlo", "--trials", "5000"},
      {"verify", "--suite", "all", "--d", "2..4", "--partitions", "10", "--instances", "5"},
  };
  for (auto args : commands) {
    auto one = args, four = args;
    one.insert(one.end(), {"--threads", "1"});
    four.insert(four.end(), {"--threads", "4"});
    const Run a = run(one), b = run(four);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
  }
}
