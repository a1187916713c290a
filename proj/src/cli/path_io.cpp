#include "ncplane/cli.hpp"

#include "ncplane/error.hpp"

#include <charconv>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace ncplane::cli {

namespace {

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char c : line) {
    if (c == ',' || c == ';' || c == '\t') {
      fields.push_back(cur);
      cur.clear();
    } else if (c != '\r' && c != ' ') {
      cur.push_back(c);
    }
  }
  fields.push_back(cur);
  return fields;
}

bool parse_double(const std::string& s, double& out) {
  if (s.empty()) return false;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (*first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last;
}

std::vector<geometry::Point2> to_points(const nlohmann::json& arr, const char* what) {
  if (!arr.is_array()) throw InvalidArgument(std::string(what) + " must be an array of [x, y] pairs");
  std::vector<geometry::Point2> out;
  for (const auto& item : arr) {
    if (!item.is_array() || item.size() != 2 || !item[0].is_number() || !item[1].is_number()) {
      throw InvalidArgument(std::string(what) + " entries must be [x, y] number pairs");
    }
    out.push_back({item[0].get<double>(), item[1].get<double>()});
  }
  return out;
}

}  // namespace

std::vector<std::pair<double, double>> parse_path_csv(const std::string& text) {
  std::vector<std::pair<double, double>> rows;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  bool first_content = true;
  while (std::getline(in, line)) {
    ++lineno;
    const auto fields = split_fields(line);
    if (fields.size() == 1 && fields[0].empty()) continue;
    if (!fields[0].empty() && fields[0][0] == '#') continue;

    std::vector<double> values;
    bool numeric = true;
    for (const auto& f : fields) {
      double v = 0.0;
      if (!parse_double(f, v)) {
        numeric = false;
        break;
      }
      values.push_back(v);
    }
    if (!numeric) {
      if (first_content) {
        first_content = false;  // header row
        continue;
      }
      throw InvalidArgument("path CSV line " + std::to_string(lineno) + " is not numeric");
    }
    first_content = false;
    if (values.size() == 3) {
      rows.emplace_back(values[1], values[2]);
    } else if (values.size() == 2) {
      rows.emplace_back(values[0], values[1]);
    } else {
      throw InvalidArgument("path CSV line " + std::to_string(lineno) + " must have 2 or 3 columns");
    }
  }
  return rows;
}

geometry::PlanarPath read_planar_csv(const std::string& path) {
  std::vector<geometry::Point2> pts;
  for (auto [a, b] : parse_path_csv(read_text_file(path))) pts.push_back({a, b});
  return geometry::PlanarPath(std::move(pts));
}

geometry::PhaseSpacePath read_phase_csv(const std::string& path) {
  std::vector<geometry::PhasePoint> pts;
  for (auto [q, p] : parse_path_csv(read_text_file(path))) pts.push_back({q, p});
  return geometry::PhaseSpacePath(std::move(pts));
}

vortex::VortexScene scene_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw InvalidArgument("vortex scene must be a JSON object");
  if (!doc.contains("core_loop")) throw InvalidArgument("vortex scene needs a core_loop");
  vortex::VortexScene scene{geometry::PlanarPath(to_points(doc.at("core_loop"), "core_loop")),
                            doc.contains("atoms") ? to_points(doc.at("atoms"), "atoms")
                                                  : std::vector<geometry::Point2>{},
                            doc.value("sigma", 1), std::nullopt};
  if (doc.contains("density")) scene.density = doc.at("density").get<double>();
  scene.validate();
  return scene;
}

vortex::VortexScene read_scene_json(const std::string& path) { return scene_from_json(read_json_file(path)); }

nlohmann::json read_json_file(const std::string& path) {
  const std::string text = read_text_file(path);
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidArgument("cannot parse JSON in " + path + ": " + e.what());
  }
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path + " for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("error while reading " + path);
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << content;
  out.flush();
  if (!out) throw IoError("error while writing " + path);
}

std::string format_number(double value) {
  std::ostringstream os;
  os << std::setprecision(17) << value;
  return os.str();
}

}  // namespace ncplane::cli
