#pragma once

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "resdd/asymptotics.hpp"
#include "resdd/core.hpp"
#include "resdd/errors.hpp"
#include "resdd/mirror.hpp"
#include "resdd/spectral.hpp"
#include "resdd/version.hpp"

namespace resdd {

enum class Evaluator { ClosedForm, Image, Spectral };
enum class SweepVariable { L, D, Z, Omega0 };
enum class SweepScale { Linear, Log };

struct SweepSpec {
  SweepVariable variable = SweepVariable::L;
  double start = 0.0;
  double stop = 0.0;
  int points = 0;
  SweepScale scale = SweepScale::Linear;
};

// Declarative single-point / sweep request. Fixed parameters are optional so
// that validation can reject a config that both fixes and sweeps the same
// quantity.
struct SweepConfig {
  ConfigKind configuration = ConfigKind::Perpendicular;
  double omega0 = 0.0;
  DipoleVector dipole_a{}, dipole_b{};
  BellParity parity = BellParity::Symmetric;
  Evaluator evaluator = Evaluator::ClosedForm;
  std::optional<double> separation_l; // perpendicular
  std::optional<double> separation_d; // parallel
  std::optional<double> height_z;     // both axis-aligned configurations
  std::optional<Vec3> pos_a, pos_b;   // general
  std::optional<SweepSpec> sweep;
  std::string output; // CSV path; empty = do not write
  std::string label;  // preset tag, carried into the sidecar
};

// One evaluated record. "swept" repeats the swept variable's value (the
// separation for single-point runs); "ratio" is empty when the free-space
// part vanishes.
struct SweepRow {
  double swept = 0.0;
  double separation = 0.0;   // L or D (|s| for general geometries)
  double height = 0.0;       // z (min height for general geometries)
  double image_dist = 0.0;   // Rcal, R, or |image(B) - A|
  double de_free = 0.0;
  double de_boundary = 0.0;
  double de_total = 0.0;
  std::optional<double> ratio;
};

// --- enum <-> string helpers (JSON/CLI) ------------------------------------

inline std::string to_string(ConfigKind k) {
  switch (k) {
  case ConfigKind::Perpendicular: return "perpendicular";
  case ConfigKind::Parallel: return "parallel";
  default: return "general";
  }
}
inline std::string to_string(BellParity p) {
  return p == BellParity::Symmetric ? "symmetric" : "antisymmetric";
}
inline std::string to_string(Evaluator e) {
  switch (e) {
  case Evaluator::ClosedForm: return "closed_form";
  case Evaluator::Image: return "image";
  default: return "spectral";
  }
}
inline std::string to_string(SweepVariable v) {
  switch (v) {
  case SweepVariable::L: return "L";
  case SweepVariable::D: return "D";
  case SweepVariable::Z: return "z";
  default: return "omega0";
  }
}
inline std::string to_string(SweepScale s) {
  return s == SweepScale::Linear ? "linear" : "log";
}

inline ConfigKind config_kind_from_string(const std::string &s) {
  if (s == "perpendicular") return ConfigKind::Perpendicular;
  if (s == "parallel") return ConfigKind::Parallel;
  if (s == "general") return ConfigKind::General;
  throw ConfigError("unknown configuration '" + s + "'");
}
inline BellParity parity_from_string(const std::string &s) {
  if (s == "symmetric") return BellParity::Symmetric;
  if (s == "antisymmetric") return BellParity::Antisymmetric;
  throw ConfigError("unknown parity '" + s + "'");
}
inline Evaluator evaluator_from_string(const std::string &s) {
  if (s == "closed_form") return Evaluator::ClosedForm;
  if (s == "image") return Evaluator::Image;
  if (s == "spectral") return Evaluator::Spectral;
  throw ConfigError("unknown evaluator '" + s + "'");
}
inline SweepVariable sweep_variable_from_string(const std::string &s) {
  if (s == "L") return SweepVariable::L;
  if (s == "D") return SweepVariable::D;
  if (s == "z") return SweepVariable::Z;
  if (s == "omega0") return SweepVariable::Omega0;
  throw ConfigError("unknown sweep variable '" + s + "'");
}
inline SweepScale sweep_scale_from_string(const std::string &s) {
  if (s == "linear") return SweepScale::Linear;
  if (s == "log") return SweepScale::Log;
  throw ConfigError("unknown sweep scale '" + s + "'");
}

// --- validation -------------------------------------------------------------

namespace detail {

inline bool sweeps(const SweepConfig &c, SweepVariable v) {
  return c.sweep && c.sweep->variable == v;
}

} // namespace detail

inline void validate_config(const SweepConfig &c) {
  if (!(c.omega0 > 0.0) || !std::isfinite(c.omega0))
    throw ConfigError("omega0 must be finite and > 0");
  if (!c.dipole_a.finite() || !c.dipole_b.finite())
    throw ConfigError("dipole components must be finite");

  const bool axis_aligned = c.configuration != ConfigKind::General;
  if (axis_aligned) {
    if (c.configuration == ConfigKind::Perpendicular) {
      if (c.separation_d)
        throw ConfigError("perpendicular configuration takes L, not D");
      if (!c.separation_l && !detail::sweeps(c, SweepVariable::L))
        throw ConfigError("perpendicular configuration requires L");
    } else {
      if (c.separation_l)
        throw ConfigError("parallel configuration takes D, not L");
      if (!c.separation_d && !detail::sweeps(c, SweepVariable::D))
        throw ConfigError("parallel configuration requires D");
    }
    if (!c.height_z && !detail::sweeps(c, SweepVariable::Z))
      throw ConfigError("axis-aligned configurations require z");
    for (auto [v, present] : {std::pair{SweepVariable::L, c.separation_l.has_value()},
                              {SweepVariable::D, c.separation_d.has_value()},
                              {SweepVariable::Z, c.height_z.has_value()}}) {
      if (detail::sweeps(c, v) && present)
        throw ConfigError("sweep variable " + to_string(v) + " is also fixed");
    }
    if (c.separation_l && !(*c.separation_l > 0.0))
      throw ConfigError("L must be > 0");
    if (c.separation_d && !(*c.separation_d > 0.0))
      throw ConfigError("D must be > 0");
    if (c.height_z && !(*c.height_z > 0.0))
      throw ConfigError("z must be > 0");
  } else {
    if (!c.pos_a || !c.pos_b)
      throw ConfigError("general configuration requires pos_a and pos_b");
    if (c.sweep && c.sweep->variable != SweepVariable::Omega0)
      throw ConfigError("general configuration supports only omega0 sweeps");
    try {
      validate_geometry({*c.pos_a, *c.pos_b});
    } catch (const Error &e) {
      throw ConfigError(std::string("invalid geometry: ") + e.what());
    }
    if (c.evaluator == Evaluator::Spectral)
      throw ConfigError("spectral evaluator requires a perpendicular or parallel configuration");
  }

  if (c.sweep) {
    const SweepSpec &s = *c.sweep;
    if (!(s.start < s.stop))
      throw ConfigError("sweep requires start < stop");
    if (s.points < 2)
      throw ConfigError("sweep requires points >= 2");
    if (s.scale == SweepScale::Log && !(s.start > 0.0))
      throw ConfigError("log sweeps require start > 0");
    if (detail::sweeps(c, SweepVariable::Omega0)) {
      if (!(s.start > 0.0))
        throw ConfigError("omega0 sweeps require start > 0");
    }
    if (c.configuration == ConfigKind::Perpendicular && s.variable == SweepVariable::D)
      throw ConfigError("cannot sweep D in a perpendicular configuration");
    if (c.configuration == ConfigKind::Parallel && s.variable == SweepVariable::L)
      throw ConfigError("cannot sweep L in a parallel configuration");
  }
}

// --- evaluation --------------------------------------------------------------

namespace detail {

inline PairGeometry geometry_of(const SweepConfig &c) {
  switch (c.configuration) {
  case ConfigKind::Perpendicular:
    return {{0.0, 0.0, *c.height_z}, {0.0, 0.0, *c.height_z + *c.separation_l}};
  case ConfigKind::Parallel:
    return {{0.0, 0.0, *c.height_z}, {0.0, *c.separation_d, *c.height_z}};
  default:
    return {*c.pos_a, *c.pos_b};
  }
}

inline SweepRow evaluate_point(const SweepConfig &c) {
  const PairGeometry g = geometry_of(c);
  const Configuration cls = classify_configuration(validate_geometry(g));

  SweepRow row;
  row.separation = cls.separation;
  row.height = cls.height;
  row.image_dist = image_distance(g);
  row.swept = row.separation;

  switch (c.evaluator) {
  case Evaluator::ClosedForm: {
    const EnergyBreakdown e = total_energy(c.dipole_a, c.dipole_b, c.omega0, g, c.parity);
    row.de_free = e.free_space;
    row.de_boundary = e.boundary;
    break;
  }
  case Evaluator::Image: {
    row.de_free = free_space_energy(c.dipole_a, c.dipole_b, c.omega0, g.pos_b - g.pos_a, c.parity);
    row.de_boundary = boundary_term_via_image(c.dipole_a, c.dipole_b, c.omega0, g, c.parity);
    break;
  }
  case Evaluator::Spectral: {
    const SpectralConfig sc = SpectralConfig::from_geometry(g);
    const SpectralBreakdown b =
        spectral_energy_breakdown(c.dipole_a, c.dipole_b, TransitionFrequency(c.omega0), sc,
                                  c.parity, SpectralOptions::defaults(c.omega0));
    row.de_free = b.free_space.value;
    row.de_boundary = b.boundary.value;
    break;
  }
  }
  row.de_total = row.de_free + row.de_boundary;
  if (row.de_free != 0.0)
    row.ratio = row.de_total / row.de_free;
  return row;
}

inline void apply_swept_value(SweepConfig &c, SweepVariable v, double value) {
  switch (v) {
  case SweepVariable::L: c.separation_l = value; break;
  case SweepVariable::D: c.separation_d = value; break;
  case SweepVariable::Z: c.height_z = value; break;
  case SweepVariable::Omega0: c.omega0 = value; break;
  }
}

} // namespace detail

inline SweepRow run_point(const SweepConfig &c) {
  if (c.sweep)
    throw ConfigError("run_point: config carries a sweep block");
  validate_config(c);
  return detail::evaluate_point(c);
}

inline std::vector<double> sweep_grid(const SweepSpec &s) {
  std::vector<double> x(static_cast<std::size_t>(s.points));
  const auto np = static_cast<double>(s.points - 1);
  if (s.scale == SweepScale::Linear) {
    const double step = (s.stop - s.start) / np;
    for (std::size_t i = 0; i < x.size(); ++i)
      x[i] = s.start + static_cast<double>(i) * step;
  } else {
    const double la = std::log(s.start), lb = std::log(s.stop);
    for (std::size_t i = 0; i < x.size(); ++i)
      x[i] = std::exp(la + (lb - la) * static_cast<double>(i) / np);
  }
  x.front() = s.start;
  x.back() = s.stop;
  return x;
}

// --- CSV ----------------------------------------------------------------------

inline constexpr const char *csv_header = "swept,sep,z,image_dist,dE_free,dE_boundary,dE_total,ratio";

namespace detail {

inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline double parse_double(const std::string &field) {
  double v = 0.0;
  const auto *first = field.data();
  const auto *last = field.data() + field.size();
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last)
    throw IoError("CSV: cannot parse number '" + field + "'");
  return v;
}

} // namespace detail

inline void write_csv(std::ostream &os, const std::vector<SweepRow> &rows) {
  os << csv_header << '\n';
  for (const SweepRow &r : rows) {
    os << detail::format_double(r.swept) << ',' << detail::format_double(r.separation) << ','
       << detail::format_double(r.height) << ',' << detail::format_double(r.image_dist) << ','
       << detail::format_double(r.de_free) << ',' << detail::format_double(r.de_boundary) << ','
       << detail::format_double(r.de_total) << ',' << (r.ratio ? detail::format_double(*r.ratio) : "")
       << '\n';
  }
}

inline std::vector<SweepRow> parse_csv(std::istream &is) {
  std::string line;
  if (!std::getline(is, line) || line != csv_header)
    throw IoError("CSV: missing or unexpected header");
  std::vector<SweepRow> rows;
  while (std::getline(is, line)) {
    if (line.empty())
      continue;
    std::vector<std::string> fields;
    std::size_t pos = 0;
    while (true) {
      const std::size_t comma = line.find(',', pos);
      fields.push_back(line.substr(pos, comma == std::string::npos ? comma : comma - pos));
      if (comma == std::string::npos)
        break;
      pos = comma + 1;
    }
    if (fields.size() != 8)
      throw IoError("CSV: expected 8 fields, got " + std::to_string(fields.size()));
    SweepRow r;
    r.swept = detail::parse_double(fields[0]);
    r.separation = detail::parse_double(fields[1]);
    r.height = detail::parse_double(fields[2]);
    r.image_dist = detail::parse_double(fields[3]);
    r.de_free = detail::parse_double(fields[4]);
    r.de_boundary = detail::parse_double(fields[5]);
    r.de_total = detail::parse_double(fields[6]);
    if (!fields[7].empty())
      r.ratio = detail::parse_double(fields[7]);
    rows.push_back(r);
  }
  return rows;
}

// --- JSON config and sidecar ---------------------------------------------------

inline nlohmann::json config_to_json(const SweepConfig &c) {
  nlohmann::json j;
  j["configuration"] = to_string(c.configuration);
  j["omega0"] = c.omega0;
  j["dipole_a"] = {c.dipole_a.mx, c.dipole_a.my, c.dipole_a.mz};
  j["dipole_b"] = {c.dipole_b.mx, c.dipole_b.my, c.dipole_b.mz};
  j["parity"] = to_string(c.parity);
  j["evaluator"] = to_string(c.evaluator);
  if (c.separation_l)
    j["L"] = *c.separation_l;
  if (c.separation_d)
    j["D"] = *c.separation_d;
  if (c.height_z)
    j["z"] = *c.height_z;
  if (c.pos_a)
    j["pos_a"] = {c.pos_a->x, c.pos_a->y, c.pos_a->z};
  if (c.pos_b)
    j["pos_b"] = {c.pos_b->x, c.pos_b->y, c.pos_b->z};
  if (c.sweep) {
    j["sweep"] = {{"variable", to_string(c.sweep->variable)},
                  {"start", c.sweep->start},
                  {"stop", c.sweep->stop},
                  {"points", c.sweep->points},
                  {"scale", to_string(c.sweep->scale)}};
  }
  if (!c.output.empty())
    j["output"] = c.output;
  if (!c.label.empty())
    j["label"] = c.label;
  return j;
}

inline SweepConfig config_from_json(const nlohmann::json &j) {
  SweepConfig c;
  try {
    c.configuration = config_kind_from_string(j.at("configuration").get<std::string>());
    c.omega0 = j.at("omega0").get<double>();
    const auto da = j.at("dipole_a");
    const auto db = j.at("dipole_b");
    c.dipole_a = {da.at(0).get<double>(), da.at(1).get<double>(), da.at(2).get<double>()};
    c.dipole_b = {db.at(0).get<double>(), db.at(1).get<double>(), db.at(2).get<double>()};
    if (j.contains("parity"))
      c.parity = parity_from_string(j.at("parity").get<std::string>());
    if (j.contains("evaluator"))
      c.evaluator = evaluator_from_string(j.at("evaluator").get<std::string>());
    if (j.contains("L"))
      c.separation_l = j.at("L").get<double>();
    if (j.contains("D"))
      c.separation_d = j.at("D").get<double>();
    if (j.contains("z"))
      c.height_z = j.at("z").get<double>();
    if (j.contains("pos_a")) {
      const auto p = j.at("pos_a");
      c.pos_a = Vec3{p.at(0).get<double>(), p.at(1).get<double>(), p.at(2).get<double>()};
    }
    if (j.contains("pos_b")) {
      const auto p = j.at("pos_b");
      c.pos_b = Vec3{p.at(0).get<double>(), p.at(1).get<double>(), p.at(2).get<double>()};
    }
    if (j.contains("sweep")) {
      const auto s = j.at("sweep");
      SweepSpec spec;
      spec.variable = sweep_variable_from_string(s.at("variable").get<std::string>());
      spec.start = s.at("start").get<double>();
      spec.stop = s.at("stop").get<double>();
      spec.points = s.at("points").get<int>();
      if (s.contains("scale"))
        spec.scale = sweep_scale_from_string(s.at("scale").get<std::string>());
      c.sweep = spec;
    }
    if (j.contains("output"))
      c.output = j.at("output").get<std::string>();
    if (j.contains("label"))
      c.label = j.at("label").get<std::string>();
  } catch (const nlohmann::json::exception &e) {
    throw ConfigError(std::string("config JSON: ") + e.what());
  }
  return c;
}

inline nlohmann::json sidecar_json(const SweepConfig &c) {
  nlohmann::json j;
  j["config"] = config_to_json(c);
  j["library_version"] = version_string;
  j["tolerances"] = {{"classification", classification_tolerance},
                     {"near_threshold", ZoneThresholds{}.near_threshold},
                     {"far_threshold", ZoneThresholds{}.far_threshold},
                     {"spectral_quad_rel_tol", SpectralOptions{}.quad_rel_tol},
                     {"spectral_target_rel_tol", SpectralOptions{}.target_rel_tol}};
  j["units"] = {{"energy", "eV"}, {"length", "eV^-1"}, {"ev_inverse_in_meters", ev_inverse_in_meters}};
  if (c.label.starts_with("fig7") || c.label.starts_with("fig9") || c.label.starts_with("fig3b") ||
      c.label.starts_with("fig3c"))
    j["notes"] = "far-zone sweep range interpreted as distances in eV^-1";
  return j;
}

// Evaluates the sweep in grid order. When config.output is set, writes the
// CSV plus a '<output>.meta.json' sidecar; the CSV itself carries no
// timestamps or environment data so repeated runs are byte-identical.
inline std::vector<SweepRow> run_sweep(const SweepConfig &config) {
  if (!config.sweep)
    throw ConfigError("run_sweep: config has no sweep block");
  validate_config(config);

  const std::vector<double> grid = sweep_grid(*config.sweep);
  std::vector<SweepRow> rows;
  rows.reserve(grid.size());
  for (double v : grid) {
    SweepConfig point = config;
    point.sweep.reset();
    detail::apply_swept_value(point, config.sweep->variable, v);
    try {
      SweepRow row = detail::evaluate_point(point);
      row.swept = v;
      rows.push_back(row);
    } catch (const Error &e) {
      throw SweepPointError("sweep aborted at " + to_string(config.sweep->variable) + " = " +
                            detail::format_double(v) + ": " + e.what());
    }
  }

  if (!config.output.empty()) {
    std::ofstream os(config.output, std::ios::binary);
    if (!os)
      throw IoError("cannot open '" + config.output + "' for writing");
    write_csv(os, rows);
    if (!os)
      throw IoError("write failed for '" + config.output + "'");
    std::ofstream meta(config.output + ".meta.json", std::ios::binary);
    if (!meta)
      throw IoError("cannot open '" + config.output + ".meta.json' for writing");
    meta << sidecar_json(config).dump(2) << '\n';
  }
  return rows;
}

// --- figure-reproduction presets -----------------------------------------------

// Parameter values common to the presets: omega0 = 4.17 eV, dipole magnitude
// 1.024e-3 eV^-1, atom-plate distances around 2e-2 eV^-1. Near-zone sweeps
// span [5e-3, 5e-2] eV^-1; far-zone sweeps span [2.5e-2, 6.5] eV^-1.
inline std::vector<SweepConfig> figure_preset(const std::string &name) {
  constexpr double mu = 1.024e-3;
  constexpr double omega0 = 4.17;
  const DipoleVector mu_x{mu, 0.0, 0.0};
  const DipoleVector mu_y{0.0, mu, 0.0};
  const DipoleVector mu_z{0.0, 0.0, mu};
  const std::vector<double> z_list{2.0e-2, 2.5e-2, 3.5e-2};

  auto base = [&](ConfigKind kind, DipoleVector a, DipoleVector b, double z, SweepVariable var,
                  double start, double stop, int points, const std::string &label) {
    SweepConfig c;
    c.configuration = kind;
    c.omega0 = omega0;
    c.dipole_a = a;
    c.dipole_b = b;
    c.height_z = z;
    c.sweep = SweepSpec{var, start, stop, points, SweepScale::Linear};
    c.label = label;
    c.output = label + ".csv";
    return c;
  };
  auto near_perp = [&](DipoleVector a, DipoleVector b, double z, const std::string &label) {
    return base(ConfigKind::Perpendicular, a, b, z, SweepVariable::L, 5e-3, 5e-2, 200, label);
  };
  auto near_par = [&](DipoleVector a, DipoleVector b, double z, const std::string &label) {
    return base(ConfigKind::Parallel, a, b, z, SweepVariable::D, 5e-3, 5e-2, 200, label);
  };
  auto far_perp = [&](DipoleVector a, DipoleVector b, double z, const std::string &label) {
    return base(ConfigKind::Perpendicular, a, b, z, SweepVariable::L, 2.5e-2, 6.5, 2000, label);
  };
  auto far_par = [&](DipoleVector a, DipoleVector b, double z, const std::string &label) {
    return base(ConfigKind::Parallel, a, b, z, SweepVariable::D, 2.5e-2, 6.5, 2000, label);
  };
  auto z_tag = [](double z) {
    char buf[24];
    std::snprintf(buf, sizeof buf, "z%.3f", z);
    return std::string(buf);
  };

  std::vector<SweepConfig> out;
  if (name == "fig2") {
    out.push_back(near_perp(mu_x, mu_x, 2.0e-2, "fig2_x_dipoles"));
    out.push_back(near_perp(mu_z, mu_z, 2.0e-2, "fig2_z_dipoles"));
  } else if (name == "fig3a") {
    for (double z : z_list)
      out.push_back(near_perp(mu_x, mu_x, z, "fig3a_" + z_tag(z)));
  } else if (name == "fig3bc") {
    out.push_back(far_perp(mu_x, mu_x, 2.5e-2, "fig3b_" + z_tag(2.5e-2)));
    out.push_back(far_perp(mu_x, mu_x, 5.5, "fig3c_" + z_tag(5.5)));
  } else if (name == "fig6") {
    for (double z : z_list)
      out.push_back(near_par(mu_x, mu_x, z, "fig6_" + z_tag(z)));
  } else if (name == "fig7c") {
    for (double z : z_list)
      out.push_back(far_par(mu_x, mu_x, z, "fig7c_" + z_tag(z)));
  } else if (name == "fig8") {
    for (double z : z_list)
      out.push_back(near_par(mu_y, mu_z, z, "fig8_" + z_tag(z)));
  } else if (name == "fig9") {
    for (double z : z_list)
      out.push_back(far_par(mu_y, mu_z, z, "fig9_" + z_tag(z)));
  } else if (name == "fig10") {
    out.push_back(near_par(mu_x, mu_x, 2.5e-2, "fig10_xx"));
    out.push_back(near_par(mu_y, mu_z, 2.5e-2, "fig10_yz"));
  } else {
    throw UnknownPreset("unknown figure preset '" + name + "'");
  }
  return out;
}

inline const std::vector<std::string> &figure_preset_names() {
  static const std::vector<std::string> names{"fig2", "fig3a", "fig3bc", "fig6",
                                              "fig7c", "fig8",  "fig9",  "fig10"};
  return names;
}

} // namespace resdd
