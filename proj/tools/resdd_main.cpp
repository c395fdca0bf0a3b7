// Command-line front end: single-point evaluation, parameter sweeps,
// figure-reproduction presets, and a quick oracle-equivalence selftest.
//
// Exit codes: 0 success, 2 config error, 3 numerical failure, 4 IO error.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "resdd/resdd.hpp"

namespace {

using nlohmann::json;

json row_to_json(const resdd::SweepRow &r) {
  json j;
  j["swept"] = r.swept;
  j["sep"] = r.separation;
  j["z"] = r.height;
  j["image_dist"] = r.image_dist;
  j["dE_free"] = r.de_free;
  j["dE_boundary"] = r.de_boundary;
  j["dE_total"] = r.de_total;
  if (r.ratio)
    j["ratio"] = *r.ratio;
  else
    j["ratio"] = nullptr;
  return j;
}

void print_row(const resdd::SweepRow &r) {
  std::printf("sep        = %.10g eV^-1\n", r.separation);
  std::printf("z          = %.10g eV^-1\n", r.height);
  std::printf("image_dist = %.10g eV^-1\n", r.image_dist);
  std::printf("dE_free     = %+.10e eV\n", r.de_free);
  std::printf("dE_boundary = %+.10e eV\n", r.de_boundary);
  std::printf("dE_total    = %+.10e eV\n", r.de_total);
  if (r.ratio)
    std::printf("ratio       = %.10g\n", *r.ratio);
  else
    std::printf("ratio       = (undefined: free-space part is zero)\n");
}

resdd::Vec3 parse_vec3(const std::string &s, const std::string &flag) {
  resdd::Vec3 v;
  if (std::sscanf(s.c_str(), "%lf,%lf,%lf", &v.x, &v.y, &v.z) != 3)
    throw resdd::ConfigError(flag + ": expected 'x,y,z'");
  return v;
}

struct CliOverrides {
  std::string config_path;
  std::string configuration, parity, evaluator, scale, variable;
  std::string dipole_a, dipole_b, pos_a, pos_b;
  double omega0 = 0, l = 0, d = 0, z = 0, start = 0, stop = 0;
  int points = 0;
  std::string output;
};

void add_common_options(CLI::App *cmd, CliOverrides &o) {
  cmd->add_option("--config", o.config_path, "JSON config file (flags override its fields)");
  cmd->add_option("--configuration", o.configuration, "perpendicular | parallel | general");
  cmd->add_option("--omega0", o.omega0, "transition frequency, eV");
  cmd->add_option("--dipole-a", o.dipole_a, "dipole A components 'x,y,z', eV^-1");
  cmd->add_option("--dipole-b", o.dipole_b, "dipole B components 'x,y,z', eV^-1");
  cmd->add_option("--parity", o.parity, "symmetric | antisymmetric");
  cmd->add_option("--L", o.l, "perpendicular separation, eV^-1");
  cmd->add_option("--D", o.d, "parallel separation, eV^-1");
  cmd->add_option("--z", o.z, "atom-plate distance, eV^-1");
  cmd->add_option("--pos-a", o.pos_a, "atom A position 'x,y,z' (general configuration)");
  cmd->add_option("--pos-b", o.pos_b, "atom B position 'x,y,z' (general configuration)");
}

resdd::SweepConfig build_config(const CLI::App *cmd, const CliOverrides &o) {
  resdd::SweepConfig c;
  if (!o.config_path.empty()) {
    std::ifstream is(o.config_path);
    if (!is)
      throw resdd::IoError("cannot read config file '" + o.config_path + "'");
    json j;
    try {
      is >> j;
    } catch (const json::exception &e) {
      throw resdd::ConfigError(std::string("config JSON parse error: ") + e.what());
    }
    c = resdd::config_from_json(j);
  }
  auto given = [&](const std::string &flag) { return cmd->count(flag) > 0; };
  if (given("--configuration"))
    c.configuration = resdd::config_kind_from_string(o.configuration);
  if (given("--omega0"))
    c.omega0 = o.omega0;
  if (given("--dipole-a")) {
    const auto v = parse_vec3(o.dipole_a, "--dipole-a");
    c.dipole_a = {v.x, v.y, v.z};
  }
  if (given("--dipole-b")) {
    const auto v = parse_vec3(o.dipole_b, "--dipole-b");
    c.dipole_b = {v.x, v.y, v.z};
  }
  if (given("--parity"))
    c.parity = resdd::parity_from_string(o.parity);
  if (given("--L"))
    c.separation_l = o.l;
  if (given("--D"))
    c.separation_d = o.d;
  if (given("--z"))
    c.height_z = o.z;
  if (given("--pos-a"))
    c.pos_a = parse_vec3(o.pos_a, "--pos-a");
  if (given("--pos-b"))
    c.pos_b = parse_vec3(o.pos_b, "--pos-b");
  return c;
}

// --- selftest ----------------------------------------------------------------

struct Check {
  std::string name;
  bool ok;
  std::string detail;
};

double rel_to_scale(double a, double b, double scale) {
  return std::abs(a - b) / std::max({std::abs(a), std::abs(b), scale});
}

// Magnitude of the largest constituent of the closed-form brackets; the
// denominator for route-equivalence comparisons (the routes group the same
// trigonometric terms differently, so agreement is meaningful relative to
// the term size, not to a possibly cancelled value).
double bracket_scale(const resdd::DipoleVector &a, const resdd::DipoleVector &b, double k0,
                     double dist) {
  const double y = k0 * dist;
  return a.norm() * b.norm() * (1.0 + y + y * y) /
         (4.0 * std::numbers::pi * dist * dist * dist);
}

std::vector<Check> run_selftest() {
  using namespace resdd;
  std::vector<Check> checks;
  std::mt19937_64 rng(20240817u);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  auto log_draw = [&](double lo, double hi) {
    return lo * std::exp(uni(rng) * std::log(hi / lo));
  };
  auto unit_dipole = [&]() {
    std::normal_distribution<double> normal;
    DipoleVector m{normal(rng), normal(rng), normal(rng)};
    const double n = m.norm();
    return DipoleVector{m.mx / n, m.my / n, m.mz / n};
  };

  auto oracle_check = [&](ConfigKind kind) {
    double worst = 0.0;
    for (int it = 0; it < 250; ++it) {
      const double k0 = log_draw(0.1, 10.0);
      const double sep = log_draw(1e-3, 10.0);
      const double z = log_draw(1e-3, 10.0);
      const DipoleVector ma = unit_dipole(), mb = unit_dipole();
      const BellParity par = it % 2 ? BellParity::Symmetric : BellParity::Antisymmetric;
      double closed, image, dist;
      if (kind == ConfigKind::Perpendicular) {
        closed = boundary_term_perpendicular(ma, mb, k0, sep, z, par);
        image = boundary_term_via_image(ma, mb, k0, {{0, 0, z}, {0, 0, z + sep}}, par);
        dist = sep + 2 * z;
      } else {
        closed = boundary_term_parallel(ma, mb, k0, sep, z, par);
        image = boundary_term_via_image(ma, mb, k0, {{0, 0, z}, {0, sep, z}}, par);
        dist = std::hypot(sep, 2 * z);
      }
      worst = std::max(worst, rel_to_scale(closed, image, bracket_scale(ma, mb, k0, dist)));
    }
    return worst;
  };

  double worst = oracle_check(ConfigKind::Perpendicular);
  checks.push_back({"boundary term: explicit perpendicular form vs image oracle", worst <= 1e-12,
                    "worst rel " + std::to_string(worst)});
  worst = oracle_check(ConfigKind::Parallel);
  checks.push_back({"boundary term: explicit parallel form vs image oracle", worst <= 1e-12,
                    "worst rel " + std::to_string(worst)});

  worst = 0.0;
  for (int it = 0; it < 250; ++it) {
    const double k0 = log_draw(0.1, 10.0);
    const double sep = log_draw(1e-3, 10.0);
    const DipoleVector ma = unit_dipole(), mb = unit_dipole();
    const double scale = bracket_scale(ma, mb, k0, sep);
    const double e_perp = perpendicular_free_space(ma, mb, k0, sep, BellParity::Symmetric);
    const double t_perp =
        free_space_energy(ma, mb, k0, {0, 0, sep}, BellParity::Symmetric);
    const double e_par = parallel_free_space(ma, mb, k0, sep, BellParity::Symmetric);
    const double t_par = free_space_energy(ma, mb, k0, {0, sep, 0}, BellParity::Symmetric);
    worst = std::max({worst, rel_to_scale(e_perp, t_perp, scale), rel_to_scale(e_par, t_par, scale)});
  }
  checks.push_back({"free space: axis-aligned closed forms vs tensor contraction", worst <= 1e-14,
                    "worst rel " + std::to_string(worst)});

  bool parity_ok = true;
  double exch_worst = 0.0;
  for (int it = 0; it < 100; ++it) {
    const double k0 = log_draw(0.1, 10.0);
    const DipoleVector ma = unit_dipole(), mb = unit_dipole();
    const PairGeometry g{{uni(rng), uni(rng), log_draw(1e-2, 5.0)},
                         {uni(rng), uni(rng), log_draw(1e-2, 5.0)}};
    const EnergyBreakdown sym = total_energy(ma, mb, k0, g, BellParity::Symmetric);
    const EnergyBreakdown anti = total_energy(ma, mb, k0, g, BellParity::Antisymmetric);
    parity_ok = parity_ok && sym.total == -anti.total && sym.free_space == -anti.free_space;
    const EnergyBreakdown swapped =
        total_energy(mb, ma, k0, {g.pos_b, g.pos_a}, BellParity::Symmetric);
    const double scale = bracket_scale(ma, mb, k0, (g.pos_b - g.pos_a).norm());
    exch_worst = std::max(exch_worst, rel_to_scale(sym.total, swapped.total, scale));
  }
  checks.push_back({"parity oddness is exact", parity_ok, ""});
  checks.push_back({"A<->B exchange invariance", exch_worst <= 1e-14,
                    "worst rel " + std::to_string(exch_worst)});

  // paper-parameter sanity: suppression for in-plane dipoles, enhancement for
  // axial ones
  {
    constexpr double mu = 1.024e-3;
    const PairGeometry g{{0, 0, 2e-2}, {0, 0, 3e-2}};
    const double rx =
        enhancement_ratio({mu, 0, 0}, {mu, 0, 0}, 4.17, g, BellParity::Symmetric);
    const double rz =
        enhancement_ratio({0, 0, mu}, {0, 0, mu}, 4.17, g, BellParity::Symmetric);
    checks.push_back({"near-mirror suppression/enhancement ordering",
                      rx > 0.0 && rx < 1.0 && rz > 1.0 && rz < 2.0,
                      "ratio_x " + std::to_string(rx) + ", ratio_z " + std::to_string(rz)});
  }
  return checks;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"resonance dipole-dipole interaction near a perfect mirror"};
  app.require_subcommand(1);

  bool as_json = false;
  std::string global_evaluator, global_output;
  app.add_flag("--json", as_json, "machine-readable JSON envelope on stdout");
  app.add_option("--evaluator", global_evaluator, "closed_form | image | spectral");
  app.add_option("--output", global_output, "output CSV path (sweep)");

  CliOverrides point_opts, sweep_opts;
  CLI::App *point_cmd = app.add_subcommand("point", "evaluate a single configuration");
  add_common_options(point_cmd, point_opts);
  CLI::App *sweep_cmd = app.add_subcommand("sweep", "run a parameter sweep and write CSV");
  add_common_options(sweep_cmd, sweep_opts);
  sweep_cmd->add_option("--variable", sweep_opts.variable, "L | D | z | omega0");
  sweep_cmd->add_option("--start", sweep_opts.start, "sweep start");
  sweep_cmd->add_option("--stop", sweep_opts.stop, "sweep stop");
  sweep_cmd->add_option("--points", sweep_opts.points, "sweep point count (>= 2)");
  sweep_cmd->add_option("--scale", sweep_opts.scale, "linear | log");

  std::string figure_name, output_dir = ".";
  CLI::App *figure_cmd = app.add_subcommand("figure", "emit a figure-reproduction data set");
  figure_cmd->add_option("name", figure_name, "fig2 | fig3a | fig3bc | fig6 | fig7c | fig8 | fig9 | fig10")
      ->required();
  figure_cmd->add_option("--output-dir", output_dir, "directory for CSV + sidecar files");

  CLI::App *selftest_cmd = app.add_subcommand("selftest", "run the oracle-equivalence suite");

  CLI11_PARSE(app, argc, argv);

  try {
    if (point_cmd->parsed()) {
      resdd::SweepConfig cfg = build_config(point_cmd, point_opts);
      if (!global_evaluator.empty())
        cfg.evaluator = resdd::evaluator_from_string(global_evaluator);
      cfg.sweep.reset();
      const resdd::SweepRow row = resdd::run_point(cfg);
      if (as_json) {
        json j{{"command", "point"}, {"status", "ok"}, {"row", row_to_json(row)}};
        std::cout << j.dump(2) << '\n';
      } else {
        print_row(row);
      }
    } else if (sweep_cmd->parsed()) {
      resdd::SweepConfig cfg = build_config(sweep_cmd, sweep_opts);
      if (!global_evaluator.empty())
        cfg.evaluator = resdd::evaluator_from_string(global_evaluator);
      if (!cfg.sweep)
        cfg.sweep = resdd::SweepSpec{};
      auto given = [&](const std::string &f) { return sweep_cmd->count(f) > 0; };
      if (given("--variable"))
        cfg.sweep->variable = resdd::sweep_variable_from_string(sweep_opts.variable);
      if (given("--start"))
        cfg.sweep->start = sweep_opts.start;
      if (given("--stop"))
        cfg.sweep->stop = sweep_opts.stop;
      if (given("--points"))
        cfg.sweep->points = sweep_opts.points;
      if (given("--scale"))
        cfg.sweep->scale = resdd::sweep_scale_from_string(sweep_opts.scale);
      if (!global_output.empty())
        cfg.output = global_output;
      const auto rows = resdd::run_sweep(cfg);
      if (as_json) {
        json j{{"command", "sweep"},
               {"status", "ok"},
               {"rows", rows.size()},
               {"output", cfg.output}};
        std::cout << j.dump(2) << '\n';
      } else {
        std::printf("%zu rows", rows.size());
        if (!cfg.output.empty())
          std::printf(" -> %s (+ .meta.json)", cfg.output.c_str());
        std::printf("\n");
      }
    } else if (figure_cmd->parsed()) {
      auto configs = resdd::figure_preset(figure_name);
      std::filesystem::create_directories(output_dir);
      json outputs = json::array();
      for (resdd::SweepConfig &cfg : configs) {
        if (!global_evaluator.empty())
          cfg.evaluator = resdd::evaluator_from_string(global_evaluator);
        cfg.output = (std::filesystem::path(output_dir) / cfg.output).string();
        const auto rows = resdd::run_sweep(cfg);
        outputs.push_back({{"label", cfg.label}, {"output", cfg.output}, {"rows", rows.size()}});
        if (!as_json)
          std::printf("%-18s %4zu rows -> %s\n", cfg.label.c_str(), rows.size(),
                      cfg.output.c_str());
      }
      if (as_json) {
        json j{{"command", "figure"}, {"status", "ok"}, {"preset", figure_name},
               {"outputs", outputs}};
        std::cout << j.dump(2) << '\n';
      }
    } else if (selftest_cmd->parsed()) {
      const auto checks = run_selftest();
      int failed = 0;
      json jchecks = json::array();
      for (const Check &c : checks) {
        failed += c.ok ? 0 : 1;
        if (as_json)
          jchecks.push_back({{"name", c.name}, {"ok", c.ok}, {"detail", c.detail}});
        else
          std::printf("[%s] %s%s%s\n", c.ok ? "PASS" : "FAIL", c.name.c_str(),
                      c.detail.empty() ? "" : " -- ", c.detail.c_str());
      }
      if (as_json) {
        json j{{"command", "selftest"},
               {"status", failed == 0 ? "ok" : "failed"},
               {"passed", checks.size() - static_cast<std::size_t>(failed)},
               {"failed", failed},
               {"checks", jchecks}};
        std::cout << j.dump(2) << '\n';
      }
      if (failed != 0)
        return 3;
    }
  } catch (const resdd::ConfigError &e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const resdd::UnknownPreset &e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const resdd::InvalidParameter &e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const resdd::IoError &e) {
    std::cerr << "io error: " << e.what() << '\n';
    return 4;
  } catch (const resdd::Error &e) {
    std::cerr << "numerical error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
  return 0;
}
