#include <catch_amalgamated.hpp>
#include <cstdlib>
#include <filesystem>

#include "rrfilt/analyze.hpp"

using namespace rrfilt;

namespace {

const char* kCprInput =
    "# dim-3 example\n"
    "ring: QQ[x,y,z]\n"
    "ideal: x^2-y^2, y^2-z^2, x*y, x*z, y*z\n";

AnalysisRequest cpr_request(std::vector<std::string> checks) {
  AnalysisRequest req = parse_input(kCprInput);
  req.checks = std::move(checks);
  return req;
}

}  // namespace

TEST_CASE("input files parse with comments and blank lines") {
  AnalysisRequest req = parse_input(
      "\n# leading comment\nring: QQ[x,y]\n\nideal: x^2, y^3\n");
  CHECK(req.ring->name() == "QQ[x,y]");
  REQUIRE(req.gens.size() == 2);
  CHECK(req.gens[1].str() == "y^3");
}

TEST_CASE("input diagnostics carry line numbers") {
  CHECK_THROWS_WITH(parse_input("ideal: x^2, y^2\n"),
                    Catch::Matchers::ContainsSubstring("missing ring"));
  CHECK_THROWS_WITH(
      parse_input("ring: QQ[x,y]\nring: QQ[x,y]\nideal: x^2, y^2\n"),
      Catch::Matchers::ContainsSubstring("duplicate ring"));
  CHECK_THROWS_WITH(parse_input("ring: QQ[x,y]\nideal: x^2, x*y\n"),
                    Catch::Matchers::ContainsSubstring(
                        "no power of variable 'y'"));
  CHECK_THROWS_AS(parse_input("ring: QQ[x,y]\nwhat: ever\nideal: x^2, y^2\n"),
                  ParseError);
  try {
    parse_input("ring: QQ[x,y]\nideal: x^2 +, y^2\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line == 2);
  }
}

TEST_CASE("unknown checks are rejected before any work starts") {
  AnalysisRequest req = cpr_request({"hilbert", "frobenius"});
  CHECK_THROWS_WITH(run_report(req),
                    Catch::Matchers::ContainsSubstring("frobenius"));
}

TEST_CASE("full report on the dim-3 example") {
  AnalysisRequest req = cpr_request({"hilbert", "reduction", "narita", "red2"});
  AnalysisResult res = run_report(req);
  const json& doc = res.document;
  CHECK(doc["schema_version"] == 1);
  CHECK(doc["reports"]["hilbert"]["h"] == json({5, 0, 6, -4, 1}));
  CHECK(doc["reports"]["hilbert"]["e"] == json({8, 4, 0, 0, 1}));
  CHECK(doc["reports"]["reduction"]["reduction_number"] == 2);
  REQUIRE(doc["theorems"].size() == 2);
  CHECK(doc["theorems"][0]["name"] == "narita");
  CHECK(doc["theorems"][0]["conclusion"] == "PASS");
  CHECK(doc["theorems"][1]["conclusion"] == "PASS");
  CHECK(doc["exit_code"] == 0);
  CHECK(res.exit_code == 0);
  CHECK(doc["provenance"]["seed"] == 1);
  CHECK(!doc["provenance"]["cached_power_exponents"].empty());
}

TEST_CASE("exit code 2 on unstabilized xi") {
  AnalysisRequest req = parse_input(
      "ring: QQ[x,y]\nideal: x^7, x^6*y, x*y^6, y^7\n");
  req.checks = {"xi"};
  req.max_power = 2;  // the depth jump sits at the reduction number, 5
  AnalysisResult res = run_report(req);
  CHECK(res.exit_code == 2);
  CHECK(res.document["reports"]["xi"]["stabilized"] == false);
}

TEST_CASE("reports are byte-for-byte deterministic") {
  AnalysisRequest req = cpr_request({"hilbert", "rr", "reduction", "depth"});
  std::string a = run_report(req).document.dump(2);
  std::string b = run_report(req).document.dump(2);
  CHECK(a == b);
}

TEST_CASE("cache keys separate parameters, ideals stay canonical") {
  AnalysisRequest req = cpr_request({"hilbert"});
  std::uint64_t k1 = cache_key(req);
  CHECK(cache_key(req) == k1);

  AnalysisRequest reordered = req;
  std::reverse(reordered.gens.begin(), reordered.gens.end());
  CHECK(cache_key(reordered) == k1);  // keyed on the reduced basis

  AnalysisRequest other = req;
  other.seed = 2;
  CHECK(cache_key(other) != k1);
  other = req;
  other.checks = {"rr"};
  CHECK(cache_key(other) != k1);
}

TEST_CASE("on-disk cache replays the document verbatim") {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "rrfilt-cache-test";
  fs::remove_all(dir);
  setenv("RRFILT_CACHE_DIR", dir.c_str(), 1);

  AnalysisRequest req = cpr_request({"hilbert", "reduction"});
  std::string cold = run_report_cached(req).document.dump(2);
  CHECK(fs::exists(dir));
  CHECK(!fs::is_empty(dir));
  // no leftover temp files from the atomic write
  for (auto& e : fs::directory_iterator(dir))
    CHECK(e.path().extension() == ".json");

  AnalysisResult warm = run_report_cached(req);
  CHECK(warm.document.dump(2) == cold);
  CHECK(warm.exit_code == 0);

  unsetenv("RRFILT_CACHE_DIR");
  fs::remove_all(dir);
}

TEST_CASE("human summary names every section") {
  AnalysisRequest req = cpr_request({"hilbert", "narita"});
  std::string s = human_summary(run_report(req).document);
  CHECK(s.find("ring:  QQ[x,y,z]") != std::string::npos);
  CHECK(s.find("hilbert:") != std::string::npos);
  CHECK(s.find("theorem narita: PASS") != std::string::npos);
  CHECK(s.find("exit code 0") != std::string::npos);
}
