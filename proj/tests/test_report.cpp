#include "salem/errors.hpp"
#include "salem/report.hpp"

#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

using namespace salem;
using report::Json;

namespace {

std::filesystem::path scratch_dir() {
  const char* env = std::getenv("SALEM_TEST_TMP");
  auto dir = env ? std::filesystem::path(env) : std::filesystem::temp_directory_path() / "salem_report_test";
  std::filesystem::create_directories(dir);
  return dir;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream s;
  s << f.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("canonical json layout") {
  Json v = {{"zeta", 1}, {"alpha", {1, 2, 3}}, {"mid", {{"b", 0.1}, {"a", nullptr}}}, {"empty", Json::array()}};
  CHECK(report::canonical_json(v) ==
        "{\n"
        "  \"alpha\": [1, 2, 3],\n"
        "  \"empty\": [],\n"
        "  \"mid\": {\n"
        "    \"a\": null,\n"
        "    \"b\": 0.1\n"
        "  },\n"
        "  \"zeta\": 1\n"
        "}\n");
  Json rows = Json::array({{{"k", 1}}, {{"k", 2}}});
  CHECK(report::canonical_json(rows) == "[\n  {\n    \"k\": 1\n  },\n  {\n    \"k\": 2\n  }\n]\n");
}

TEST_CASE("reals use twelve significant digits and non-finite values become null") {
  CHECK(report::format_real(1.0 / 3.0) == "0.333333333333");
  CHECK(report::format_real(2.0) == "2");
  CHECK(report::format_real(1e-20) == "1e-20");
  CHECK(report::format_real(-0.0) == "0");
  const double nan = std::numeric_limits<double>::quiet_NaN();
  const double inf = std::numeric_limits<double>::infinity();
  CHECK(report::canonical_json(Json{{"x", nan}, {"y", inf}, {"z", 2.0 / 3.0}}) ==
        "{\n  \"x\": null,\n  \"y\": null,\n  \"z\": 0.666666666667\n}\n");
  const auto c = report::complex_json({3.0, -4.0});
  CHECK(c["abs"].get<double>() == 5.0);
  CHECK(c["im"].get<double>() == -4.0);
}

TEST_CASE("canonical json parses back to the same document") {
  Json v = {{"a", {{"x", 1}, {"y", {0.5, -2.25}}}}, {"b", "text"}, {"c", true}};
  CHECK(Json::parse(report::canonical_json(v)) == v);
  CHECK(report::canonical_json(Json::parse(report::canonical_json(v))) == report::canonical_json(v));
}

TEST_CASE("result documents carry the documented keys") {
  const auto set = IntegerSet::from_unsorted({4, 1, 9}, 10);
  const auto j = report::to_json(set);
  CHECK(j["horizon"] == 10);
  CHECK(j["elements"] == Json({1, 4, 9}));

  const auto w = report::to_json(IntegerAP{1, 24, 3});
  CHECK(w == Json({{"start", 1}, {"difference", 24}, {"length", 3}}));
  const auto r = report::to_json(RationalAP{Rational(1, 3), Rational(1, 6), 3});
  CHECK(r["start"] == "1/3");
  CHECK(r["difference"] == "1/6");

  DescentResult none{DescentStatus::never_separated, std::nullopt, 4};
  const auto d = report::to_json(none);
  CHECK(d["status"] == "never_separated");
  CHECK(d["ap"].is_null());

  LemmaCheckReport lemma;
  lemma.n1 = 256;
  lemma.trials = 3;
  const auto l = report::to_json(lemma);
  CHECK(l["u_grid"] == Json({{"min", 2}, {"max", 64}, {"step", 1}}));
  CHECK(l.contains("satisfied_fraction"));

  DimensionStats stats;
  stats.mean_dim = std::numeric_limits<double>::quiet_NaN();
  CHECK(report::to_json(stats)["mean_dim"].is_null());
}

TEST_CASE("csv writers") {
  std::ostringstream s;
  report::write_spectrum_csv(s, "m", {{1.0, {0.5, -0.25}}, {2.0, {0.0, 0.0}}});
  CHECK(s.str() == "m,re,im,abs\n1,0.5,-0.25,0.559016994375\n2,0,0,0\n");

  std::ostringstream w;
  report::write_witness_csv(w, std::vector<IntegerAP>{{1, 24, 3}, {7, 10, 3}});
  CHECK(w.str() == "start,difference,length\n1,24,3\n7,10,3\n");

  std::ostringstream q;
  report::write_witness_csv(q, std::vector<RationalAP>{{Rational(0), Rational(1, 4), 4}});
  CHECK(q.str() == "start,difference,length\n0/1,1/4,4\n");
}

TEST_CASE("atomic_write") {
  const auto dir = scratch_dir();
  const auto target = dir / "atomic.json";
  report::atomic_write(target.string(), "first\n");
  CHECK(slurp(target) == "first\n");
  report::atomic_write(target.string(), "second\n");
  CHECK(slurp(target) == "second\n");
  for (const auto& e : std::filesystem::directory_iterator(dir)) {
    CHECK(e.path().filename().string().find(".tmp.") == std::string::npos);
  }
  CHECK_THROWS_AS(report::atomic_write((dir / "missing" / "x.json").string(), "x"), IoError);
}
