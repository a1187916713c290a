#include "ncplane/vortex_film.hpp"

#include "ncplane/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

namespace ncplane::vortex {

namespace {

constexpr double kEdgeTol = 1e-12;
constexpr double kCoreClearance = 1e-9;

double cross(Point2 o, Point2 a, Point2 b) { return (a.x - o.x) * (b.y - o.y) - (b.x - o.x) * (a.y - o.y); }

double segment_distance(Point2 p, Point2 a, Point2 b) {
  const double dx = b.x - a.x, dy = b.y - a.y;
  const double len2 = dx * dx + dy * dy;
  double f = len2 > 0.0 ? ((p.x - a.x) * dx + (p.y - a.y) * dy) / len2 : 0.0;
  f = std::clamp(f, 0.0, 1.0);
  return std::hypot(p.x - (a.x + f * dx), p.y - (a.y + f * dy));
}

void require_polygon(const PlanarPath& polygon) {
  if (polygon.size() < 3) throw InvalidArgument("degenerate polygon: at least 3 vertices required");
}

}  // namespace

void VortexScene::validate() const {
  if (sigma != 1 && sigma != -1) throw InvalidArgument("sigma must be +1 or -1");
  require_polygon(core_loop);
  for (const auto& a : atoms) {
    if (!std::isfinite(a.x) || !std::isfinite(a.y)) throw InvalidArgument("atom position is not finite");
  }
  if (density && !(*density > 0.0)) throw InvalidArgument("areal density must be > 0");
}

int winding_number(Point2 point, const PlanarPath& polygon) {
  require_polygon(polygon);
  const auto v = polygon.vertices();
  int wn = 0;
  for (std::size_t k = 0; k < v.size(); ++k) {
    const Point2 a = v[k];
    const Point2 b = v[(k + 1) % v.size()];
    if (a.y <= point.y) {
      if (b.y > point.y && cross(a, b, point) > 0.0) ++wn;
    } else if (b.y <= point.y && cross(a, b, point) < 0.0) {
      --wn;
    }
  }
  return wn;
}

bool point_in_polygon(Point2 point, const PlanarPath& polygon) {
  require_polygon(polygon);
  const auto v = polygon.vertices();
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (segment_distance(point, v[k], v[(k + 1) % v.size()]) <= kEdgeTol) return true;
  }
  return winding_number(point, polygon) != 0;
}

std::size_t enclosed_count(const VortexScene& scene) {
  scene.validate();
  return static_cast<std::size_t>(std::count_if(scene.atoms.begin(), scene.atoms.end(), [&](const Point2& a) {
    return point_in_polygon(a, scene.core_loop);
  }));
}

double winding_phase(const VortexScene& scene) {
  return 2.0 * std::numbers::pi * static_cast<double>(scene.sigma) * static_cast<double>(enclosed_count(scene));
}

double film_length_scale(double density) {
  if (!(density > 0.0) || !std::isfinite(density)) throw InvalidArgument("areal density n must be > 0");
  return std::sqrt(1.0 / (2.0 * std::numbers::pi * density));
}

double circulation_integral(Point2 core, const PlanarPath& loop, int sigma) {
  if (sigma != 1 && sigma != -1) throw InvalidArgument("sigma must be +1 or -1");
  require_polygon(loop);
  const auto v = loop.vertices();
  double total = 0.0;
  for (std::size_t k = 0; k < v.size(); ++k) {
    const Point2 a = v[k];
    const Point2 b = v[(k + 1) % v.size()];
    if (segment_distance(core, a, b) <= kCoreClearance) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "loop passes through the vortex core at (" << core.x << ", " << core.y << ") on segment " << k;
      throw InvalidArgument(msg.str());
    }
    const double ax = a.x - core.x, ay = a.y - core.y;
    const double bx = b.x - core.x, by = b.y - core.y;
    // Angle swept from a to b, wrapped into (-pi, pi].
    total += std::atan2(ax * by - ay * bx, ax * bx + ay * by);
  }
  return static_cast<double>(sigma) * total;
}

std::vector<Point2> scatter_atoms(double density, const Region& region, std::uint64_t seed) {
  if (!(density > 0.0)) throw InvalidArgument("areal density n must be > 0");
  if (!(region.x_max > region.x_min) || !(region.y_max > region.y_min)) {
    throw InvalidArgument("scatter region must have positive extent");
  }
  const auto count = static_cast<std::size_t>(std::llround(density * region.area()));
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ux(region.x_min, region.x_max);
  std::uniform_real_distribution<double> uy(region.y_min, region.y_max);
  std::vector<Point2> atoms;
  atoms.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    const double x = ux(rng);
    atoms.push_back({x, uy(rng)});
  }
  return atoms;
}

}  // namespace ncplane::vortex
