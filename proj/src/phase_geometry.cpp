#include "ncplane/phase_geometry.hpp"

#include "ncplane/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace ncplane::geometry {

namespace {

constexpr double kEndpointTol = 1e-9;

bool finite(const Point2& v) { return std::isfinite(v.x) && std::isfinite(v.y); }
bool finite(const PhasePoint& v) { return std::isfinite(v.q) && std::isfinite(v.p); }

bool same_point(const PhasePoint& a, const PhasePoint& b) {
  return std::abs(a.q - b.q) <= kEndpointTol && std::abs(a.p - b.p) <= kEndpointTol;
}

std::string describe(const PhasePoint& v) {
  std::ostringstream os;
  os.precision(17);
  os << "(" << v.q << ", " << v.p << ")";
  return os.str();
}

}  // namespace

PlanarPath::PlanarPath(std::vector<Point2> vertices) : vertices_(std::move(vertices)) {
  if (vertices_.size() < 2) throw InvalidArgument("planar path needs at least 2 vertices");
  if (!std::all_of(vertices_.begin(), vertices_.end(), [](const Point2& v) { return finite(v); })) {
    throw InvalidArgument("planar path has non-finite coordinates");
  }
}

PlanarPath PlanarPath::reversed() const {
  return PlanarPath(std::vector<Point2>(vertices_.rbegin(), vertices_.rend()));
}

PhaseSpacePath::PhaseSpacePath(std::vector<PhasePoint> vertices) : vertices_(std::move(vertices)) {
  if (vertices_.size() < 2) throw InvalidArgument("phase-space path needs at least 2 vertices");
  if (!std::all_of(vertices_.begin(), vertices_.end(), [](const PhasePoint& v) { return finite(v); })) {
    throw InvalidArgument("phase-space path has non-finite coordinates");
  }
}

PhaseSpacePath PhaseSpacePath::reversed() const {
  return PhaseSpacePath(std::vector<PhasePoint>(vertices_.rbegin(), vertices_.rend()));
}

double signed_area(const PlanarPath& loop) {
  const auto v = loop.vertices();
  if (v.size() < 3) throw InvalidArgument("degenerate loop: at least 3 vertices required");
  // Coordinates relative to the first vertex keep the cross products small
  // for loops far from the origin.
  const Point2 o = v[0];
  double twice = 0.0;
  for (std::size_t k = 1; k + 1 < v.size(); ++k) {
    const double ax = v[k].x - o.x, ay = v[k].y - o.y;
    const double bx = v[k + 1].x - o.x, by = v[k + 1].y - o.y;
    twice += ax * by - bx * ay;
  }
  return 0.5 * twice;
}

double action_integral(const PhaseSpacePath& path) {
  const auto v = path.vertices();
  double s = 0.0;
  for (std::size_t k = 0; k + 1 < v.size(); ++k) {
    s += 0.5 * (v[k].p + v[k + 1].p) * (v[k + 1].q - v[k].q);
  }
  return s;
}

double interference_phase_area(const PlanarPath& loop, const ops::NcParams& params) {
  params.validate();
  return signed_area(loop) / (params.length_scale * params.length_scale);
}

double interference_phase_action(const PhaseSpacePath& path1, const PhaseSpacePath& path2, double hbar) {
  if (!(hbar > 0.0)) throw InvalidArgument("hbar must be > 0");
  if (!same_point(path1.front(), path2.front())) {
    throw InvalidArgument("paths do not share a start point: " + describe(path1.front()) + " vs " +
                          describe(path2.front()));
  }
  if (!same_point(path1.back(), path2.back())) {
    throw InvalidArgument("paths do not share an end point: " + describe(path1.back()) + " vs " +
                          describe(path2.back()));
  }
  return (action_integral(path1) - action_integral(path2)) / hbar;
}

double closed_loop_phase(const PhaseSpacePath& path1, const PhaseSpacePath& path2, double hbar) {
  if (!(hbar > 0.0)) throw InvalidArgument("hbar must be > 0");
  std::vector<PhasePoint> loop(path1.vertices().begin(), path1.vertices().end());
  const auto back = path2.reversed();
  loop.insert(loop.end(), back.vertices().begin(), back.vertices().end());
  return action_integral(PhaseSpacePath(std::move(loop))) / hbar;
}

PhaseSpacePath to_phase_space(const PlanarPath& path, const ops::NcParams& params) {
  params.validate();
  const double factor = params.hbar / (params.length_scale * params.length_scale);
  std::vector<PhasePoint> out;
  out.reserve(path.size());
  for (const auto& v : path.vertices()) out.push_back({v.x, factor * v.y});
  return PhaseSpacePath(std::move(out));
}

PathPair theorem_path_pair(const PlanarPath& loop, std::size_t split, const ops::NcParams& params) {
  const auto v = loop.vertices();
  if (v.size() < 3) throw InvalidArgument("degenerate loop: at least 3 vertices required");
  if (split == 0 || split >= v.size()) throw InvalidArgument("split vertex must lie in 1..n-1");

  std::vector<Point2> along(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(split) + 1);
  std::vector<Point2> against{v[0]};
  for (std::size_t k = v.size() - 1; k >= split; --k) against.push_back(v[k]);

  return {to_phase_space(PlanarPath(std::move(against)), params),
          to_phase_space(PlanarPath(std::move(along)), params)};
}

PlanarPath subdivide_loop(const PlanarPath& loop, std::size_t per_edge) {
  if (per_edge == 0) throw InvalidArgument("per_edge must be positive");
  const auto v = loop.vertices();
  std::vector<Point2> out;
  out.reserve(v.size() * per_edge);
  for (std::size_t k = 0; k < v.size(); ++k) {
    const Point2 a = v[k];
    const Point2 b = v[(k + 1) % v.size()];
    for (std::size_t s = 0; s < per_edge; ++s) {
      const double f = static_cast<double>(s) / static_cast<double>(per_edge);
      out.push_back({a.x + f * (b.x - a.x), a.y + f * (b.y - a.y)});
    }
  }
  return PlanarPath(std::move(out));
}

PlanarPath circle_loop(Point2 center, double radius, std::size_t segments) {
  if (segments < 3) throw InvalidArgument("circle needs at least 3 segments");
  if (!(radius > 0.0)) throw InvalidArgument("circle radius must be > 0");
  std::vector<Point2> out;
  out.reserve(segments);
  for (std::size_t k = 0; k < segments; ++k) {
    const double t = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(segments);
    out.push_back({center.x + radius * std::cos(t), center.y + radius * std::sin(t)});
  }
  return PlanarPath(std::move(out));
}

}  // namespace ncplane::geometry
