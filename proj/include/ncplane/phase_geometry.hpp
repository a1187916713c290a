#pragma once

// Interference phase between two planar paths, computed two ways: as a
// phase-space action difference and as an enclosed area over L^2.
//
// Orientation: signed_area is positive for counterclockwise loops in the
// (u, w) chart. For a plane with [X, Y] = i L^2 the conjugate momentum is
// P_X = hbar Y / L^2, and the closed action integral of P_X dX over a
// counterclockwise loop is -hbar A / L^2. The closed path whose action
// reproduces +A / L^2 therefore runs the loop clockwise; see
// theorem_path_pair.

#include "ncplane/operator_core.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace ncplane::geometry {

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

struct PhasePoint {
  double q = 0.0;
  double p = 0.0;
};

// Ordered vertices in the configuration plane. At least two, all finite.
class PlanarPath {
 public:
  explicit PlanarPath(std::vector<Point2> vertices);

  std::span<const Point2> vertices() const noexcept { return vertices_; }
  std::size_t size() const noexcept { return vertices_.size(); }
  const Point2& operator[](std::size_t i) const { return vertices_[i]; }

  PlanarPath reversed() const;

 private:
  std::vector<Point2> vertices_;
};

// Ordered (q, p) vertices. At least two, all finite.
class PhaseSpacePath {
 public:
  explicit PhaseSpacePath(std::vector<PhasePoint> vertices);

  std::span<const PhasePoint> vertices() const noexcept { return vertices_; }
  std::size_t size() const noexcept { return vertices_.size(); }
  const PhasePoint& front() const { return vertices_.front(); }
  const PhasePoint& back() const { return vertices_.back(); }

  PhaseSpacePath reversed() const;

 private:
  std::vector<PhasePoint> vertices_;
};

// Shoelace area of the closed loop (last vertex joined to the first).
// Throws InvalidArgument for fewer than three vertices.
double signed_area(const PlanarPath& loop);

// Trapezoidal sum of p dq along the open path.
double action_integral(const PhaseSpacePath& path);

// signed_area(loop) / L^2.
double interference_phase_area(const PlanarPath& loop, const ops::NcParams& params);

// (S(path1) - S(path2)) / hbar. Both paths must share their first and last
// q coordinates within 1e-9; otherwise InvalidArgument names the endpoints.
double interference_phase_action(const PhaseSpacePath& path1, const PhaseSpacePath& path2, double hbar);

// Closed-loop action of path1 followed by reversed path2, over hbar.
double closed_loop_phase(const PhaseSpacePath& path1, const PhaseSpacePath& path2, double hbar);

// Image of a configuration-plane path under q = X, p = hbar Y / L^2.
PhaseSpacePath to_phase_space(const PlanarPath& path, const ops::NcParams& params);

struct PathPair {
  PhaseSpacePath first;
  PhaseSpacePath second;
};

// Splits a loop at vertex `split` into two paths from vertex 0 to vertex
// `split`: `second` follows the loop order, `first` runs the other way
// round. interference_phase_action(first, second, hbar) then equals
// interference_phase_area(loop, params).
PathPair theorem_path_pair(const PlanarPath& loop, std::size_t split, const ops::NcParams& params);

// Inserts points so that every edge of the closed loop is cut into
// `per_edge` equal pieces. Used to meet a minimum segment count.
PlanarPath subdivide_loop(const PlanarPath& loop, std::size_t per_edge);

// Regular polygon approximating a circle, counterclockwise.
PlanarPath circle_loop(Point2 center, double radius, std::size_t segments);

}  // namespace ncplane::geometry
