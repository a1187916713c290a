#pragma once

// Scenario runner behind the `ncplane` executable.
//
// Exit codes: 0 success, 2 configuration error, 3 I/O error, 4 numerical
// divergence. Diagnostics go to the error stream only.

#include "ncplane/phase_geometry.hpp"
#include "ncplane/vortex_film.hpp"

#include <json.hpp>

#include <iosfwd>
#include <string>
#include <vector>

namespace ncplane::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitIo = 3;
inline constexpr int kExitDivergence = 4;

inline constexpr int kSchemaVersion = 1;

// Full command line, argv[0] included.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Subcommand drivers. `config` is the full scenario document: a
// "schema_version" field, exactly one command block, and an optional
// "output" block {format: csv|json, path}. Without an output path the
// result is written to `out`.
int run_spectrum(const nlohmann::json& config, std::ostream& out, std::ostream& err);
int run_evolve(const nlohmann::json& config, std::ostream& out, std::ostream& err);
int run_phase(const nlohmann::json& config, std::ostream& out, std::ostream& err);
int run_algebra(const nlohmann::json& config, std::ostream& out, std::ostream& err);
int run_vortex(const nlohmann::json& config, std::ostream& out, std::ostream& err);

// --- file formats ---------------------------------------------------------

// Path CSV: optional header, then rows "index, a, b" or "a, b".
geometry::PlanarPath read_planar_csv(const std::string& path);
geometry::PhaseSpacePath read_phase_csv(const std::string& path);
std::vector<std::pair<double, double>> parse_path_csv(const std::string& text);

// {core_loop: [[x, y], ...], atoms: [[x, y], ...], sigma: +-1, density: n}
vortex::VortexScene scene_from_json(const nlohmann::json& doc);
vortex::VortexScene read_scene_json(const std::string& path);

nlohmann::json read_json_file(const std::string& path);
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

// 17 significant digits, round-trip exact for doubles.
std::string format_number(double value);

}  // namespace ncplane::cli
