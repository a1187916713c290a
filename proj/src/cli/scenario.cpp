#include "ncplane/cli.hpp"

#include "ncplane/dissipative.hpp"
#include "ncplane/error.hpp"
#include "ncplane/landau.hpp"
#include "ncplane/operator_core.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <list>
#include <optional>
#include <ostream>
#include <sstream>

namespace ncplane::cli {

using nlohmann::json;

namespace {

constexpr std::array<const char*, 5> kCommands{"spectrum", "evolve", "phase", "algebra", "vortex"};

struct OutputSpec {
  std::string format;
  std::optional<std::string> path;
};

const json& command_block(const json& config, const std::string& name) {
  if (!config.is_object()) throw InvalidArgument("scenario config must be a JSON object");
  if (!config.contains("schema_version")) throw InvalidArgument("config is missing schema_version");
  if (!config.at("schema_version").is_number_integer() || config.at("schema_version").get<int>() != kSchemaVersion) {
    throw InvalidArgument("unsupported schema_version (expected 1)");
  }
  std::vector<std::string> present;
  for (const char* c : kCommands) {
    if (config.contains(c)) present.emplace_back(c);
  }
  if (present.size() != 1) {
    throw InvalidArgument("config must contain exactly one command block, found " + std::to_string(present.size()));
  }
  if (present.front() != name) {
    throw InvalidArgument("config holds a '" + present.front() + "' block but the command is '" + name + "'");
  }
  const json& block = config.at(name);
  if (!block.is_object()) throw InvalidArgument("'" + name + "' block must be an object");
  return block;
}

OutputSpec output_spec(const json& config, const std::string& default_format) {
  OutputSpec spec{default_format, std::nullopt};
  if (!config.contains("output")) return spec;
  const json& o = config.at("output");
  if (!o.is_object()) throw InvalidArgument("output block must be an object");
  if (o.contains("format")) spec.format = o.at("format").get<std::string>();
  if (o.contains("path")) spec.path = o.at("path").get<std::string>();
  if (spec.format != "csv" && spec.format != "json") throw InvalidArgument("output format must be csv or json");
  return spec;
}

void emit(const OutputSpec& spec, const std::string& content, std::ostream& out) {
  if (spec.path) {
    write_text_file(*spec.path, content);
  } else {
    out << content;
  }
}

double number(const json& block, const char* key, std::optional<double> fallback = std::nullopt) {
  if (!block.contains(key)) {
    if (fallback) return *fallback;
    throw InvalidArgument(std::string("missing required field '") + key + "'");
  }
  const json& v = block.at(key);
  if (!v.is_number()) throw InvalidArgument(std::string("field '") + key + "' must be a number");
  return v.get<double>();
}

std::size_t count(const json& block, const char* key, std::optional<std::size_t> fallback = std::nullopt) {
  if (!block.contains(key)) {
    if (fallback) return *fallback;
    throw InvalidArgument(std::string("missing required field '") + key + "'");
  }
  const json& v = block.at(key);
  if (!v.is_number_integer()) throw InvalidArgument(std::string("field '") + key + "' must be an integer");
  const auto n = v.get<long long>();
  if (n < 0) throw InvalidArgument(std::string("field '") + key + "' must be non-negative");
  return static_cast<std::size_t>(n);
}

std::string text(const json& block, const char* key, std::optional<std::string> fallback = std::nullopt) {
  if (!block.contains(key)) {
    if (fallback) return *fallback;
    throw InvalidArgument(std::string("missing required field '") + key + "'");
  }
  const json& v = block.at(key);
  if (!v.is_string()) throw InvalidArgument(std::string("field '") + key + "' must be a string");
  return v.get<std::string>();
}

landau::MagneticParams magnetic_params(const json& block) {
  landau::MagneticParams p{number(block, "B", 1.0), number(block, "e", 1.0), number(block, "c", 1.0),
                           number(block, "M", 1.0), number(block, "hbar", 1.0)};
  p.validate();
  return p;
}

dissipation::PotentialSpec potential_from(const json& block) {
  if (!block.contains("potential")) return dissipation::PotentialSpec::free();
  const json& p = block.at("potential");
  if (p.is_string()) {
    if (p.get<std::string>() == "free") return dissipation::PotentialSpec::free();
    throw InvalidArgument("potential given as a string must be \"free\"");
  }
  const std::string kind = text(p, "kind");
  if (kind == "free") return dissipation::PotentialSpec::free();
  if (kind == "harmonic") return dissipation::PotentialSpec::harmonic(number(p, "k"));
  if (kind == "polynomial") {
    if (!p.contains("coefficients") || !p.at("coefficients").is_array()) {
      throw InvalidArgument("polynomial potential needs a coefficients array");
    }
    return dissipation::PotentialSpec::polynomial(p.at("coefficients").get<std::vector<double>>());
  }
  throw InvalidArgument("unknown potential kind '" + kind + "'");
}

dissipation::DissipativeParams dissipative_params(const json& block) {
  dissipation::DissipativeParams p{number(block, "M", 1.0), number(block, "R", 0.0), number(block, "hbar", 1.0),
                                   potential_from(block)};
  p.validate();
  return p;
}

geometry::PlanarPath planar_from(const json& v, const char* what) {
  if (v.is_string()) return read_planar_csv(v.get<std::string>());
  if (!v.is_array()) throw InvalidArgument(std::string(what) + " must be a CSV path or an array of [x, y] pairs");
  std::vector<geometry::Point2> pts;
  for (const auto& item : v) {
    if (!item.is_array() || item.size() != 2) throw InvalidArgument(std::string(what) + " entries must be pairs");
    pts.push_back({item[0].get<double>(), item[1].get<double>()});
  }
  return geometry::PlanarPath(std::move(pts));
}

geometry::PhaseSpacePath phase_from(const json& v, const char* what) {
  if (v.is_string()) return read_phase_csv(v.get<std::string>());
  const auto planar = planar_from(v, what);
  std::vector<geometry::PhasePoint> pts;
  for (const auto& p : planar.vertices()) pts.push_back({p.x, p.y});
  return geometry::PhaseSpacePath(std::move(pts));
}

std::string csv_table(const std::vector<std::string>& header, const std::vector<std::vector<double>>& rows) {
  std::ostringstream os;
  for (std::size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << header[i];
  os << '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << format_number(row[i]);
    os << '\n';
  }
  return os.str();
}

std::string key_value_csv(const json& report) {
  std::ostringstream os;
  os << "quantity,value\n";
  for (const auto& [k, v] : report.items()) {
    if (v.is_number()) {
      os << k << ',' << format_number(v.get<double>()) << '\n';
    } else {
      os << k << ',' << v.dump() << '\n';
    }
  }
  return os.str();
}

template <class F>
int guarded(std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const DivergenceError& e) {
    err << "error: " << e.what() << " [step " << e.step() << "]\n";
    return kExitDivergence;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const json::exception& e) {
    err << "error: invalid config: " << e.what() << '\n';
    return kExitConfig;
  }
}

json complex_json(std::complex<double> z) { return json::array({z.real(), z.imag()}); }

}  // namespace

// --- spectrum ---------------------------------------------------------------

int run_spectrum(const json& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const json& block = command_block(config, "spectrum");
    const OutputSpec spec = output_spec(config, "csv");
    const std::string kind = text(block, "kind", "distance");

    std::vector<double> values;
    if (kind == "distance") {
      const ops::NcParams params{number(block, "L", 1.0), number(block, "hbar", 1.0)};
      values = ops::distance_spectrum(params, count(block, "dim"));
    } else if (kind == "landau") {
      const std::size_t n_max = count(block, "n_max");
      if (block.contains("omega_c")) {
        values = landau::landau_spectrum(number(block, "hbar", 1.0), number(block, "omega_c"), n_max);
      } else {
        values = landau::landau_spectrum(magnetic_params(block), n_max);
      }
    } else {
      throw InvalidArgument("spectrum kind must be 'distance' or 'landau'");
    }

    if (spec.format == "csv") {
      std::vector<std::vector<double>> rows;
      for (std::size_t n = 0; n < values.size(); ++n) rows.push_back({static_cast<double>(n), values[n]});
      emit(spec, csv_table({"n", "value"}, rows), out);
    } else {
      emit(spec, json{{"kind", kind}, {"values", values}}.dump(2) + "\n", out);
    }
    return kExitOk;
  });
}

// --- evolve -----------------------------------------------------------------

int run_evolve(const json& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const json& block = command_block(config, "evolve");
    const OutputSpec spec = output_spec(config, "csv");
    if (!spec.path) throw InvalidArgument("evolve requires output.path for the trajectory");
    const auto params = dissipative_params(block);

    const bool canonical = block.contains("canonical") ? block.at("canonical").get<bool>() : params.friction > 0.0;
    if (canonical && !(params.friction > 0.0)) throw InvalidArgument("canonical coordinates require R > 0");

    const json init = block.value("initial", json::object());
    const dissipation::TwoCoordState initial{number(init, "x_plus", 0.0), number(init, "x_minus", 0.0),
                                             number(init, "v_plus", 0.0), number(init, "v_minus", 0.0),
                                             number(init, "t", 0.0)};
    const double dt = number(block, "dt");
    const std::size_t steps = count(block, "steps");

    dissipation::IntegrationOptions options;
    options.on_warning = [&err](std::string_view msg) { err << msg << '\n'; };
    const auto traj = dissipation::integrate_trajectory(initial, params, dt, steps, options);

    const double nan = std::numeric_limits<double>::quiet_NaN();
    const double h0 = dissipation::hamiltonian_value(traj.front(), params);
    const auto xi0 = canonical ? dissipation::canonical_coords(traj.front(), params)
                               : dissipation::CanonicalCoords{nan, nan, nan, nan};
    const double inv0 = dissipation::orbit_invariant({xi0.xi_plus, xi0.xi_minus});

    double h_drift = 0.0;
    double inv_drift = 0.0;
    double hyper_dev = 0.0;
    const bool hyper_benchmark = canonical && params.potential.is_free();
    std::vector<std::vector<double>> rows;
    rows.reserve(traj.size());
    for (const auto& s : traj) {
      const double h = dissipation::hamiltonian_value(s, params);
      h_drift = std::max(h_drift, std::abs(h - h0) / std::max(std::abs(h0), 1.0));
      auto cc = dissipation::CanonicalCoords{nan, nan, nan, nan};
      double inv = nan;
      if (canonical) {
        cc = dissipation::canonical_coords(s, params);
        inv = dissipation::orbit_invariant({cc.xi_plus, cc.xi_minus});
        inv_drift = std::max(inv_drift, std::abs(inv - inv0) / std::max(std::abs(inv0), 1.0));
        if (hyper_benchmark) {
          const auto exact =
              dissipation::hyperbolic_evolve({xi0.xi_plus, xi0.xi_minus}, params.gamma(), -(s.t - initial.t));
          hyper_dev = std::max({hyper_dev, std::abs(cc.xi_plus - exact.plus), std::abs(cc.xi_minus - exact.minus)});
        }
      }
      rows.push_back({s.t, s.x_plus, s.x_minus, s.v_plus, s.v_minus, cc.xi_plus, cc.xi_minus, cc.X_plus,
                      cc.X_minus, h, inv});
    }

    const std::vector<std::string> header{"t",        "x_plus",   "x_minus", "v_plus",      "v_minus",
                                          "xi_plus",  "xi_minus", "X_plus",  "X_minus",     "hamiltonian",
                                          "orbit_invariant"};
    if (spec.format == "csv") {
      emit(spec, csv_table(header, rows), out);
    } else {
      json doc{{"columns", header}, {"rows", json::array()}};
      for (const auto& r : rows) {
        json row = json::array();
        for (double v : r) row.push_back(std::isfinite(v) ? json(v) : json(nullptr));
        doc["rows"].push_back(std::move(row));
      }
      emit(spec, doc.dump() + "\n", out);
    }

    const double span = traj.back().t - initial.t;
    json summary{{"steps", steps},
                 {"dt", dt},
                 {"final_time", traj.back().t},
                 {"gamma", params.gamma()},
                 {"max_hamiltonian_drift", h_drift}};
    if (params.gamma() > 0.0) {
      summary["hamiltonian_drift_per_unit_gamma_t"] = h_drift / (params.gamma() * span);
    }
    if (canonical) summary["max_orbit_invariant_drift"] = inv_drift;
    if (hyper_benchmark) summary["hyperbolic_max_deviation"] = hyper_dev;

    if (initial.x_plus == initial.x_minus && initial.v_plus == initial.v_minus) {
      // Classical limit: the common coordinate must satisfy
      // M x'' + R x' + U'(x) = 0, checked with central differences.
      double separation = 0.0;
      double residual = 0.0;
      for (std::size_t k = 0; k < traj.size(); ++k) {
        separation = std::max(separation, std::abs(traj[k].x_plus - traj[k].x_minus));
        if (k == 0 || k + 1 == traj.size()) continue;
        const double xm = traj[k - 1].x_plus, x0 = traj[k].x_plus, xp = traj[k + 1].x_plus;
        const double acc = (xp - 2.0 * x0 + xm) / (dt * dt);
        const double vel = (xp - xm) / (2.0 * dt);
        residual = std::max(residual,
                            std::abs(params.mass * acc + params.friction * vel + params.potential.derivative(x0)));
      }
      summary["classical_limit"] = {{"max_separation", separation}, {"max_residual", residual}};
    }

    const std::string summary_text = summary.dump(2) + "\n";
    if (config.contains("output") && config.at("output").contains("summary_path")) {
      write_text_file(config.at("output").at("summary_path").get<std::string>(), summary_text);
    } else {
      out << summary_text;
    }
    return kExitOk;
  });
}

// --- phase ------------------------------------------------------------------

int run_phase(const json& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const json& block = command_block(config, "phase");
    const OutputSpec spec = output_spec(config, "json");

    const bool has_loop = block.contains("loop");
    const bool has_paths = block.contains("path1") || block.contains("path2");
    const bool has_vortex = block.contains("vortex");
    if (static_cast<int>(has_loop) + static_cast<int>(has_paths) + static_cast<int>(has_vortex) != 1) {
      throw InvalidArgument("phase block needs exactly one of: loop, path1/path2, vortex");
    }
    const bool has_l = block.contains("L");
    const double hbar = number(block, "hbar", 1.0);

    json report = json::object();
    if (has_loop) {
      const auto loop = planar_from(block.at("loop"), "loop");
      const bool has_magnetic = block.contains("magnetic");
      if (!has_l && !has_magnetic) throw InvalidArgument("loop phase needs L or a magnetic block");
      report["signed_area"] = geometry::signed_area(loop);
      if (has_l) {
        const ops::NcParams params{number(block, "L"), hbar};
        const double area_phase = geometry::interference_phase_area(loop, params);
        const auto pair = geometry::theorem_path_pair(loop, loop.size() / 2, params);
        const double action_phase = geometry::interference_phase_action(pair.first, pair.second, hbar);
        report["phase_area"] = area_phase;
        report["phase_action"] = action_phase;
        report["difference"] = action_phase - area_phase;
      }
      if (has_magnetic) {
        const auto mp = magnetic_params(block.at("magnetic"));
        const double l = landau::magnetic_length(mp);
        const double ab = landau::aharonov_bohm_phase(mp, loop);
        const double area_phase = geometry::interference_phase_area(loop, {l, mp.hbar});
        report["magnetic_length"] = l;
        report["phase_aharonov_bohm"] = ab;
        report["phase_area_magnetic"] = area_phase;
        report["difference_magnetic"] = ab - area_phase;
      }
    } else if (has_paths) {
      if (!block.contains("path1") || !block.contains("path2")) {
        throw InvalidArgument("path mode needs both path1 and path2");
      }
      const auto p1 = phase_from(block.at("path1"), "path1");
      const auto p2 = phase_from(block.at("path2"), "path2");
      const double action_phase = geometry::interference_phase_action(p1, p2, hbar);
      report["phase_action"] = action_phase;
      if (has_l) {
        // Back to the configuration plane: X = q, Y = p L^2 / hbar. The loop
        // runs path2 forward and path1 backward.
        const double l = number(block, "L");
        const double scale = l * l / hbar;
        std::vector<geometry::Point2> pts;
        for (const auto& v : p2.vertices()) pts.push_back({v.q, scale * v.p});
        const auto back = p1.reversed();
        for (std::size_t k = 1; k + 1 < back.size(); ++k) {
          pts.push_back({back.vertices()[k].q, scale * back.vertices()[k].p});
        }
        const double area_phase = geometry::interference_phase_area(geometry::PlanarPath(std::move(pts)), {l, hbar});
        report["phase_area"] = area_phase;
        report["difference"] = action_phase - area_phase;
      }
    } else {
      const json& v = block.at("vortex");
      const auto scene = v.is_string() ? read_scene_json(v.get<std::string>()) : scene_from_json(v);
      report["enclosed_atoms"] = vortex::enclosed_count(scene);
      report["phase_winding"] = vortex::winding_phase(scene);
    }

    emit(spec, spec.format == "json" ? report.dump(2) + "\n" : key_value_csv(report), out);
    return kExitOk;
  });
}

// --- algebra ----------------------------------------------------------------

int run_algebra(const json& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const json& block = command_block(config, "algebra");
    const OutputSpec spec = output_spec(config, "json");
    const std::string system = text(block, "system", "plane");
    const std::size_t dim = count(block, "dim");

    std::optional<ops::CommutatorReport> report;
    double l2 = 0.0;
    if (system == "plane") {
      const ops::NcParams params{number(block, "L", 1.0), number(block, "hbar", 1.0)};
      const auto [x, y] = ops::build_xy(params, dim);
      const std::vector<ops::NamedOperator> named{{"X", x}, {"Y", y}};
      report = ops::make_commutator_report(named, ops::leading_mask_single(dim));
      l2 = params.length_scale * params.length_scale;
    } else if (system == "magnetic") {
      const auto mp = magnetic_params(block);
      report = landau::cyclotron_algebra(mp, dim);
      l2 = mp.length_squared();
    } else if (system == "dissipative") {
      const auto dp = dissipative_params(block);
      report = dissipation::kappa_commutator_check(dp, dim);
      l2 = dp.length_squared();
    } else {
      throw InvalidArgument("algebra system must be plane, magnetic or dissipative");
    }

    if (spec.format == "csv") {
      std::ostringstream os;
      os << "left,right,leading_re,leading_im,leading_residual,truncation_re,truncation_im\n";
      for (std::size_t i = 0; i < report->size(); ++i) {
        for (std::size_t j = 0; j < report->size(); ++j) {
          const auto& e = report->at(i, j);
          os << e.left << ',' << e.right << ',' << format_number(e.leading_value.real()) << ','
             << format_number(e.leading_value.imag()) << ',' << format_number(e.leading_residual) << ','
             << format_number(e.truncation_value.real()) << ',' << format_number(e.truncation_value.imag()) << '\n';
        }
      }
      emit(spec, os.str(), out);
    } else {
      json doc{{"system", system}, {"dim", dim}, {"length_squared", l2}, {"operators", report->names()},
               {"entries", json::array()}};
      for (std::size_t i = 0; i < report->size(); ++i) {
        for (std::size_t j = 0; j < report->size(); ++j) {
          const auto& e = report->at(i, j);
          doc["entries"].push_back({{"left", e.left},
                                    {"right", e.right},
                                    {"leading", complex_json(e.leading_value)},
                                    {"leading_residual", e.leading_residual},
                                    {"truncation", complex_json(e.truncation_value)}});
        }
      }
      emit(spec, doc.dump(2) + "\n", out);
    }
    return kExitOk;
  });
}

// --- vortex -----------------------------------------------------------------

int run_vortex(const json& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const json& block = command_block(config, "vortex");
    const OutputSpec spec = output_spec(config, "json");

    json scene_doc = block.contains("scene") ? (block.at("scene").is_string()
                                                    ? read_json_file(block.at("scene").get<std::string>())
                                                    : block.at("scene"))
                                             : block;
    if (block.contains("sigma")) scene_doc["sigma"] = block.at("sigma");

    vortex::VortexScene scene = scene_from_json(scene_doc);
    if (block.contains("random")) {
      const json& r = block.at("random");
      if (!r.contains("seed")) throw InvalidArgument("random atom scatter requires a seed field");
      const double density = number(r, "density");
      if (!r.contains("region") || !r.at("region").is_array() || r.at("region").size() != 4) {
        throw InvalidArgument("random.region must be [x_min, y_min, x_max, y_max]");
      }
      const auto reg = r.at("region").get<std::vector<double>>();
      auto atoms = vortex::scatter_atoms(density, {reg[0], reg[1], reg[2], reg[3]}, r.at("seed").get<std::uint64_t>());
      scene.atoms.insert(scene.atoms.end(), atoms.begin(), atoms.end());
      if (!scene.density) scene.density = density;
    }

    const double area = geometry::signed_area(scene.core_loop);
    const std::size_t inside = vortex::enclosed_count(scene);
    json report{{"sigma", scene.sigma},
                {"atoms", scene.atoms.size()},
                {"enclosed_atoms", inside},
                {"winding_phase", vortex::winding_phase(scene)},
                {"loop_area", area}};
    if (scene.density) {
      const double l = vortex::film_length_scale(*scene.density);
      report["density"] = *scene.density;
      report["length_scale"] = l;
      report["expected_enclosed"] = *scene.density * std::abs(area);
      report["theorem_phase"] = scene.sigma * std::abs(area) / (l * l);
    }
    if (block.contains("core")) {
      const auto c = block.at("core").get<std::vector<double>>();
      if (c.size() != 2) throw InvalidArgument("core must be [x, y]");
      const double circ = vortex::circulation_integral({c[0], c[1]}, scene.core_loop, scene.sigma);
      report["circulation"] = circ;
      report["core_winding_number"] = vortex::winding_number({c[0], c[1]}, scene.core_loop);
    }

    emit(spec, spec.format == "json" ? report.dump(2) + "\n" : key_value_csv(report), out);
    return kExitOk;
  });
}

// --- command line -----------------------------------------------------------

namespace {

// Collects command-line flags and overlays the ones actually given onto a
// JSON command block (addressed by JSON pointer).
class FlagOverlay {
 public:
  explicit FlagOverlay(CLI::App* app) : app_(app) {}

  void real(const std::string& flag, const std::string& pointer, const std::string& help) {
    auto& slot = reals_.emplace_back();
    bind(app_->add_option(flag, slot, help), pointer, [&slot] { return json(slot); });
  }
  void integer(const std::string& flag, const std::string& pointer, const std::string& help) {
    auto& slot = ints_.emplace_back();
    bind(app_->add_option(flag, slot, help), pointer, [&slot] { return json(slot); });
  }
  void string(const std::string& flag, const std::string& pointer, const std::string& help) {
    auto& slot = strings_.emplace_back();
    bind(app_->add_option(flag, slot, help), pointer, [&slot] { return json(slot); });
  }
  void flag(const std::string& flag, const std::string& pointer, const std::string& help) {
    auto& slot = bools_.emplace_back(false);
    bind(app_->add_flag(flag, slot, help), pointer, [&slot] { return json(slot); });
  }

  void apply(json& target) const {
    for (const auto& b : bindings_) {
      if (b.option->count() > 0) target[json::json_pointer(b.pointer)] = b.value();
    }
  }

 private:
  struct Binding {
    CLI::Option* option;
    std::string pointer;
    std::function<json()> value;
  };

  void bind(CLI::Option* opt, const std::string& pointer, std::function<json()> value) {
    bindings_.push_back({opt, pointer, std::move(value)});
  }

  CLI::App* app_;
  std::list<double> reals_;
  std::list<long long> ints_;
  std::list<bool> bools_;
  std::list<std::string> strings_;
  std::vector<Binding> bindings_;
};

struct Subcommand {
  std::string name;
  CLI::App* app;
  std::unique_ptr<FlagOverlay> flags;
  std::string config_path;
  std::string output_path;
  std::string format;
  int (*runner)(const json&, std::ostream&, std::ostream&);
};

void add_magnetic_flags(FlagOverlay& f, const std::string& prefix) {
  f.real("--B", prefix + "/B", "magnetic field");
  f.real("--e", prefix + "/e", "charge");
  f.real("--c", prefix + "/c", "speed of light");
  f.real("--M", prefix + "/M", "mass");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Noncommutative-plane toolkit: spectra, phases, dissipative dynamics, vortex films"};
  app.name(args.empty() ? "ncplane" : args.front());
  app.require_subcommand(1);

  std::vector<Subcommand> subs;
  auto make = [&](const std::string& name, const std::string& help,
                  int (*runner)(const json&, std::ostream&, std::ostream&)) -> Subcommand& {
    Subcommand s{name, app.add_subcommand(name, help), nullptr, {}, {}, {}, runner};
    s.flags = std::make_unique<FlagOverlay>(s.app);
    subs.push_back(std::move(s));
    Subcommand& ref = subs.back();
    ref.app->add_option("--config", ref.config_path, "JSON scenario file");
    ref.app->add_option("--output,-o", ref.output_path, "output file (default: standard output)");
    ref.app->add_option("--format", ref.format, "csv or json");
    return ref;
  };
  subs.reserve(5);

  {
    auto& s = make("spectrum", "distance or Landau spectrum", &run_spectrum);
    s.flags->string("--kind", "/kind", "distance | landau");
    s.flags->real("--L", "/L", "noncommutative length scale");
    s.flags->real("--hbar", "/hbar", "action scale");
    s.flags->integer("--dim", "/dim", "truncation dimension");
    s.flags->real("--omega-c", "/omega_c", "cyclotron frequency");
    s.flags->integer("--n-max", "/n_max", "highest Landau level");
    add_magnetic_flags(*s.flags, "");
  }
  {
    auto& s = make("evolve", "integrate the doubled-coordinate equations of motion", &run_evolve);
    s.flags->real("--M", "/M", "mass");
    s.flags->real("--R", "/R", "friction coefficient");
    s.flags->real("--hbar", "/hbar", "action scale");
    s.flags->real("--k", "/potential/k", "harmonic stiffness (sets potential kind to harmonic)");
    s.flags->real("--dt", "/dt", "time step");
    s.flags->integer("--steps", "/steps", "number of steps");
    s.flags->real("--x-plus", "/initial/x_plus", "initial x+");
    s.flags->real("--x-minus", "/initial/x_minus", "initial x-");
    s.flags->real("--v-plus", "/initial/v_plus", "initial v+");
    s.flags->real("--v-minus", "/initial/v_minus", "initial v-");
    s.flags->flag("--canonical", "/canonical", "emit canonical (xi, X) coordinates; requires R > 0");
  }
  {
    auto& s = make("phase", "interference phase of a loop, a path pair or a vortex scene", &run_phase);
    s.flags->string("--loop", "/loop", "loop CSV (index, x, y)");
    s.flags->string("--path1", "/path1", "first path CSV (index, q, p)");
    s.flags->string("--path2", "/path2", "second path CSV (index, q, p)");
    s.flags->string("--scene", "/vortex", "vortex scene JSON");
    s.flags->real("--L", "/L", "noncommutative length scale");
    s.flags->real("--hbar", "/hbar", "action scale");
    add_magnetic_flags(*s.flags, "/magnetic");
  }
  {
    auto& s = make("algebra", "commutator tables of truncated representations", &run_algebra);
    s.flags->string("--system", "/system", "plane | magnetic | dissipative");
    s.flags->integer("--dim", "/dim", "truncation dimension per factor");
    s.flags->real("--L", "/L", "length scale (plane)");
    s.flags->real("--hbar", "/hbar", "action scale");
    s.flags->real("--R", "/R", "friction coefficient (dissipative)");
    add_magnetic_flags(*s.flags, "");
  }
  {
    auto& s = make("vortex", "winding phase and circulation for a vortex scene", &run_vortex);
    s.flags->string("--scene", "/scene", "vortex scene JSON");
    s.flags->integer("--sigma", "/sigma", "vortex orientation (+1 or -1)");
  }

  try {
    std::vector<std::string> rest(args.rbegin(), args.rend());
    if (!rest.empty()) rest.pop_back();
    app.parse(rest);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return kExitOk;
    }
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  }

  for (auto& s : subs) {
    if (!s.app->parsed()) continue;
    return guarded(err, [&] {
      json config = s.config_path.empty() ? json{{"schema_version", kSchemaVersion}} : read_json_file(s.config_path);
      if (!config.is_object()) throw InvalidArgument("scenario config must be a JSON object");
      if (!config.contains(s.name)) {
        bool other = std::any_of(kCommands.begin(), kCommands.end(), [&](const char* c) { return config.contains(c); });
        if (!other) config[s.name] = json::object();
      }
      if (config.contains(s.name)) {
        json& block = config[s.name];
        s.flags->apply(block);
        if (s.name == "evolve" && block.contains("potential") && block["potential"].is_object() &&
            block["potential"].contains("k") && !block["potential"].contains("kind")) {
          block["potential"]["kind"] = "harmonic";
        }
      }
      if (!s.output_path.empty()) config["output"]["path"] = s.output_path;
      if (!s.format.empty()) config["output"]["format"] = s.format;
      return s.runner(config, out, err);
    });
  }
  err << "error: no subcommand given\n";
  return kExitConfig;
}

}  // namespace ncplane::cli
