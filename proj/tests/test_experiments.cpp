#include <cmath>
#include <filesystem>
#include <fstream>
#include <iterator>

#include "doctest.h"
#include "hjlab/errors.hpp"
#include "hjlab/experiments.hpp"

using namespace hjlab;

namespace {

std::string slurp(const std::filesystem::path& f) {
  std::ifstream in(f, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

}  // namespace

TEST_CASE("default configs validate and round-trip through JSON") {
  for (const char* kind : {"scaling", "periodic-control", "glued-demo", "lemma-suite", "conjecture-probe"}) {
    for (const char* profile : {"ci", "large"}) {
      const ExperimentConfig c = default_config(kind, profile);
      CHECK_NOTHROW(c.validate());
      const ExperimentConfig r = ExperimentConfig::from_json(c.to_json(), ExperimentConfig{});
      CHECK(r.to_json() == c.to_json());
    }
  }
  CHECK(default_config("scaling", "large").horizons.back() == 1e4);
}

TEST_CASE("config errors are reported") {
  const ExperimentConfig base = default_config("scaling");
  CHECK_THROWS_AS(ExperimentConfig::from_json(nlohmann::json{{"bogus", 1}}, base), ConfigError);
  CHECK_THROWS_AS(ExperimentConfig::from_json(nlohmann::json{{"beta", 1.0}}, base).validate(), ConfigError);
  CHECK_THROWS_AS(ExperimentConfig::from_json(nlohmann::json{{"horizons", {100, 50}}}, base).validate(), ConfigError);
  CHECK_THROWS_AS(ExperimentConfig::from_json(nlohmann::json{{"kind", "nope"}}, base).validate(), ConfigError);
  CHECK_THROWS_AS(ExperimentConfig::from_json(nlohmann::json{{"resolution_levels", 1}}, base).validate(), ConfigError);
  CHECK_THROWS_AS(default_config("nope"), ConfigError);
}

TEST_CASE("power-law fit recovers a synthetic exponent") {
  const std::vector<double> T = {50.0, 200.0, 1e3, 1e4};
  std::vector<double> v;
  for (double t : T) v.push_back(1.7 * std::pow(std::log(t), 0.9));
  const PowerFit f = fit_power_law(T, v);
  REQUIRE(f.valid);
  CHECK(f.exponent == doctest::Approx(0.9));
  CHECK(f.amplitude == doctest::Approx(1.7));
  CHECK_FALSE(fit_power_law({50.0, 200.0}, {1.0, 2.0}).valid);
  CHECK_FALSE(fit_power_law({50.0, 100.0, 200.0}, {1.0, 2.0, 3.0}).valid);
}

TEST_CASE("onset is the start of the final run of satisfied horizons") {
  std::vector<HorizonRecord> r(4);
  const double speed[] = {2.0, 0.5, 2.0, 3.0};
  for (int i = 0; i < 4; ++i) {
    r[i].T = 10.0 * (i + 1);
    r[i].speed = speed[i];
    r[i].lower_bound = 1.0;
  }
  CHECK(discover_onset(r) == 30.0);
  r[3].speed = 0.1;
  CHECK_FALSE(discover_onset(r).has_value());
}

TEST_CASE("reports round-trip through JSON and render SVG") {
  ExperimentConfig c = default_config("glued-demo");
  const Report rep = run_glued_demo(c);
  const Report back = report_from_json(report_to_json(rep));
  CHECK(report_to_json(back) == report_to_json(rep));
  CHECK(report_csv(back) == report_csv(rep));
  const std::string svg = report_svg(rep);
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(svg.find("</svg>") != std::string::npos);
}

TEST_CASE("emit writes deterministic outputs and handles empty reports") {
  const auto dir = std::filesystem::temp_directory_path() / "hjlab_test_emit";
  std::filesystem::remove_all(dir);
  Report empty;
  empty.kind = "scaling";
  empty.series.push_back(Series{"accelerating", {}, {}, std::nullopt});
  const auto files = emit(empty, dir, "empty");
  CHECK(files.size() == 4);
  for (const auto& f : files) CHECK(std::filesystem::exists(f));

  ExperimentConfig c = default_config("scaling");
  c.horizons = {20.0, 50.0};
  emit(run_experiment(c), dir / "a", "scaling");
  emit(run_experiment(c), dir / "b", "scaling");
  CHECK(slurp(dir / "a" / "scaling.json") == slurp(dir / "b" / "scaling.json"));
  CHECK(slurp(dir / "a" / "scaling.csv") == slurp(dir / "b" / "scaling.csv"));
  std::filesystem::remove_all(dir);
}

TEST_CASE("scaling targets are spread over half the lower-bound radius") {
  const ModelParams p(2.0, 1.0);
  const auto t = scaling_targets(1e3, p, 3);
  const double R = velocity_bound_lower(1e3, p).radius;
  REQUIRE(t.size() == 3);
  CHECK(t.front() == doctest::Approx(-R / 2));
  CHECK(t[1] == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(t.back() == doctest::Approx(R / 2));
}
