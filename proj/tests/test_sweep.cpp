#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "helpers.hpp"
#include "resdd/resdd.hpp"

using namespace resdd;

namespace {

constexpr double mu = 1.024e-3;

SweepConfig fig2_point_config() {
  SweepConfig c;
  c.configuration = ConfigKind::Perpendicular;
  c.omega0 = 4.17;
  c.dipole_a = {mu, 0, 0};
  c.dipole_b = {mu, 0, 0};
  c.separation_l = 1e-2;
  c.height_z = 2e-2;
  return c;
}

std::string slurp(const std::filesystem::path &p) {
  std::ifstream is(p, std::ios::binary);
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() /
           ("resdd_test_" + std::to_string(::getpid()));
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
};

} // namespace

TEST_CASE("log-scale grids hit decade points") {
  const std::vector<double> g = sweep_grid({SweepVariable::L, 1e-3, 1.0, 4, SweepScale::Log});
  REQUIRE(g.size() == 4);
  CHECK(g[0] == 1e-3);
  CHECK(g[1] == doctest::Approx(1e-2).epsilon(1e-12));
  CHECK(g[2] == doctest::Approx(1e-1).epsilon(1e-12));
  CHECK(g[3] == 1.0);
}

TEST_CASE("linear sweeps yield monotone swept columns") {
  SweepConfig c = fig2_point_config();
  c.separation_l.reset();
  c.sweep = SweepSpec{SweepVariable::L, 5e-3, 5e-2, 3, SweepScale::Linear};
  const auto rows = run_sweep(c);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].swept < rows[1].swept);
  CHECK(rows[1].swept < rows[2].swept);
  for (const auto &r : rows)
    CHECK(r.de_total == r.de_free + r.de_boundary);
}

TEST_CASE("run_point with the near-mirror parameters shows suppression and enhancement") {
  SweepConfig cx = fig2_point_config();
  const SweepRow rx = run_point(cx);
  REQUIRE(rx.ratio.has_value());
  CHECK(*rx.ratio > 0.0);
  CHECK(*rx.ratio < 1.0);

  SweepConfig cz = fig2_point_config();
  cz.dipole_a = {0, 0, mu};
  cz.dipole_b = {0, 0, mu};
  const SweepRow rz = run_point(cz);
  REQUIRE(rz.ratio.has_value());
  CHECK(*rz.ratio > 1.0);
  CHECK(*rz.ratio < 2.0);
}

TEST_CASE("image evaluator agrees with the closed forms") {
  SweepConfig c = fig2_point_config();
  const SweepRow closed = run_point(c);
  c.evaluator = Evaluator::Image;
  const SweepRow image = run_point(c);
  CHECK(helpers::rel_diff(closed.de_boundary, image.de_boundary) < 1e-12);
  CHECK(closed.de_free == image.de_free);
}

TEST_CASE("CSV round-trips bit-exactly") {
  std::vector<SweepRow> rows;
  SweepRow r;
  r.swept = 1e-2;
  r.separation = 1e-2;
  r.height = 2e-2;
  r.image_dist = 5e-2;
  r.de_free = -1.2345678901234567e-6;
  r.de_boundary = 9.876543210987654e-8;
  r.de_total = r.de_free + r.de_boundary;
  r.ratio = r.de_total / r.de_free;
  rows.push_back(r);
  r.ratio.reset(); // exercise the empty-ratio field
  r.de_free = 0.0;
  rows.push_back(r);

  std::ostringstream os;
  write_csv(os, rows);
  std::istringstream is(os.str());
  const auto parsed = parse_csv(is);
  REQUIRE(parsed.size() == rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(parsed[i].swept == rows[i].swept);
    CHECK(parsed[i].separation == rows[i].separation);
    CHECK(parsed[i].height == rows[i].height);
    CHECK(parsed[i].image_dist == rows[i].image_dist);
    CHECK(parsed[i].de_free == rows[i].de_free);
    CHECK(parsed[i].de_boundary == rows[i].de_boundary);
    CHECK(parsed[i].de_total == rows[i].de_total);
    CHECK(parsed[i].ratio == rows[i].ratio);
  }
}

TEST_CASE("sweep output files are byte-identical across runs") {
  TempDir tmp;
  SweepConfig c = fig2_point_config();
  c.separation_l.reset();
  c.sweep = SweepSpec{SweepVariable::L, 5e-3, 5e-2, 50, SweepScale::Linear};
  c.output = (tmp.path / "a.csv").string();
  run_sweep(c);
  const std::string first = slurp(c.output);
  c.output = (tmp.path / "b.csv").string();
  run_sweep(c);
  CHECK(first == slurp(c.output));
  CHECK(!first.empty());
  // sidecar exists and parses
  const auto meta = nlohmann::json::parse(slurp(c.output + ".meta.json"));
  CHECK(meta.at("library_version").get<std::string>() == version_string);
  CHECK(meta.at("config").at("configuration").get<std::string>() == "perpendicular");
}

TEST_CASE("config JSON round-trip") {
  SweepConfig c = fig2_point_config();
  c.separation_l.reset();
  c.sweep = SweepSpec{SweepVariable::L, 5e-3, 5e-2, 11, SweepScale::Log};
  c.evaluator = Evaluator::Image;
  c.parity = BellParity::Antisymmetric;
  c.output = "x.csv";
  c.label = "roundtrip";
  const SweepConfig back = config_from_json(config_to_json(c));
  CHECK(back.configuration == c.configuration);
  CHECK(back.omega0 == c.omega0);
  CHECK(back.dipole_a == c.dipole_a);
  CHECK(back.parity == c.parity);
  CHECK(back.evaluator == c.evaluator);
  CHECK(back.height_z == c.height_z);
  REQUIRE(back.sweep.has_value());
  CHECK(back.sweep->variable == c.sweep->variable);
  CHECK(back.sweep->points == c.sweep->points);
  CHECK(back.sweep->scale == c.sweep->scale);
  CHECK(back.output == c.output);
  CHECK(back.label == c.label);
}

TEST_CASE("config validation rejects malformed requests") {
  SweepConfig c = fig2_point_config();
  c.omega0 = -1.0;
  CHECK_THROWS_AS(validate_config(c), ConfigError);

  c = fig2_point_config();
  c.sweep = SweepSpec{SweepVariable::L, 2.0, 1.0, 10, SweepScale::Linear};
  c.separation_l.reset();
  CHECK_THROWS_AS(validate_config(c), ConfigError);

  c = fig2_point_config();
  c.separation_l.reset();
  c.sweep = SweepSpec{SweepVariable::L, 1e-3, 1.0, 1, SweepScale::Linear};
  CHECK_THROWS_AS(validate_config(c), ConfigError);

  // sweeping a variable that is also fixed
  c = fig2_point_config();
  c.sweep = SweepSpec{SweepVariable::L, 1e-3, 1.0, 10, SweepScale::Linear};
  CHECK_THROWS_AS(validate_config(c), ConfigError);

  // D in a perpendicular configuration
  c = fig2_point_config();
  c.separation_d = 0.1;
  CHECK_THROWS_AS(validate_config(c), ConfigError);

  // spectral evaluator with a general configuration
  c = SweepConfig{};
  c.configuration = ConfigKind::General;
  c.omega0 = 4.17;
  c.dipole_a = {mu, 0, 0};
  c.dipole_b = {mu, 0, 0};
  c.pos_a = Vec3{0, 0, 1};
  c.pos_b = Vec3{0, 1, 2};
  c.evaluator = Evaluator::Spectral;
  CHECK_THROWS_AS(validate_config(c), ConfigError);
  c.evaluator = Evaluator::ClosedForm;
  CHECK_NOTHROW(validate_config(c));
  // general configurations only sweep omega0
  c.sweep = SweepSpec{SweepVariable::Z, 0.1, 1.0, 5, SweepScale::Linear};
  CHECK_THROWS_AS(validate_config(c), ConfigError);
  c.sweep = SweepSpec{SweepVariable::Omega0, 0.1, 1.0, 5, SweepScale::Linear};
  CHECK_NOTHROW(validate_config(c));
}

TEST_CASE("run_point refuses configs that carry a sweep block") {
  SweepConfig c = fig2_point_config();
  c.sweep = SweepSpec{SweepVariable::Z, 1e-3, 1.0, 10, SweepScale::Linear};
  c.height_z.reset();
  CHECK_THROWS_AS(run_point(c), ConfigError);
}

TEST_CASE("figure presets populate the documented parameter sets") {
  const auto fig2 = figure_preset("fig2");
  REQUIRE(fig2.size() == 2);
  CHECK(fig2[0].configuration == ConfigKind::Perpendicular);
  CHECK(fig2[0].omega0 == 4.17);
  CHECK(fig2[0].height_z == 2.0e-2);
  CHECK(fig2[0].dipole_a == DipoleVector{mu, 0, 0});
  CHECK(fig2[1].dipole_a == DipoleVector{0, 0, mu});

  const auto fig8 = figure_preset("fig8");
  REQUIRE(fig8.size() == 3);
  for (const auto &c : fig8) {
    CHECK(c.configuration == ConfigKind::Parallel);
    CHECK(c.dipole_a == DipoleVector{0, mu, 0});
    CHECK(c.dipole_b == DipoleVector{0, 0, mu});
  }
  CHECK(fig8[0].height_z == 2.0e-2);
  CHECK(fig8[1].height_z == 2.5e-2);
  CHECK(fig8[2].height_z == 3.5e-2);

  const auto fig10 = figure_preset("fig10");
  REQUIRE(fig10.size() == 2);
  CHECK(fig10[0].height_z == 2.5e-2);
  CHECK(fig10[0].dipole_a == DipoleVector{mu, 0, 0});
  CHECK(fig10[1].dipole_a == DipoleVector{0, mu, 0});
  CHECK(fig10[1].dipole_b == DipoleVector{0, 0, mu});

  CHECK_THROWS_AS(figure_preset("fig11"), UnknownPreset);
}

TEST_CASE("fig6 preset: the mirror suppression weakens with distance from the plate") {
  const auto configs = figure_preset("fig6");
  REQUIRE(configs.size() == 3);
  std::vector<std::vector<SweepRow>> runs;
  for (SweepConfig c : configs) {
    c.output.clear();
    runs.push_back(run_sweep(c));
  }
  // at fixed D, larger z brings |total| closer to |free|
  for (std::size_t i = 0; i < runs[0].size(); i += 20) {
    const double gap_small_z = std::abs(runs[0][i].de_total - runs[0][i].de_free);
    const double gap_mid_z = std::abs(runs[1][i].de_total - runs[1][i].de_free);
    const double gap_large_z = std::abs(runs[2][i].de_total - runs[2][i].de_free);
    CHECK(gap_large_z < gap_mid_z);
    CHECK(gap_mid_z < gap_small_z);
  }
}

TEST_CASE("spectral evaluator fills rows consistently with the closed forms") {
  SweepConfig c = fig2_point_config();
  c.separation_l = 0.5;
  c.height_z = 0.25;
  c.evaluator = Evaluator::Spectral;
  const SweepRow spect = run_point(c);
  c.evaluator = Evaluator::ClosedForm;
  const SweepRow closed = run_point(c);
  CHECK(helpers::rel_diff(spect.de_free, closed.de_free) < 1e-2);
  CHECK(helpers::rel_diff(spect.de_boundary, closed.de_boundary) < 1e-2);
  CHECK(spect.de_total == spect.de_free + spect.de_boundary);
}
