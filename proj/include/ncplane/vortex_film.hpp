#pragma once

// Vortex cores in a thin superfluid film. Carrying a core of orientation
// sigma around a closed loop adds 2 pi sigma to the phase of every adsorbed
// atom inside the loop, so a film of areal density n behaves as a
// noncommutative plane with L^2 = 1 / (2 pi n).

#include "ncplane/phase_geometry.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace ncplane::vortex {

using geometry::PlanarPath;
using geometry::Point2;

struct VortexScene {
  PlanarPath core_loop;
  std::vector<Point2> atoms;
  int sigma = 1;
  std::optional<double> density;

  // sigma in {+1, -1}, loop with >= 3 vertices, finite atoms, density > 0.
  void validate() const;
};

// Winding number of a closed polygon around a point.
int winding_number(Point2 point, const PlanarPath& polygon);

// Membership by nonzero winding; points within 1e-12 of an edge count as
// inside. Throws InvalidArgument for fewer than three vertices.
bool point_in_polygon(Point2 point, const PlanarPath& polygon);

// Number of atoms inside the core loop.
std::size_t enclosed_count(const VortexScene& scene);

// 2 pi sigma * enclosed_count(scene).
double winding_phase(const VortexScene& scene);

// sqrt(1 / (2 pi n)). Throws InvalidArgument for n <= 0.
double film_length_scale(double density);

// (m / hbar) * closed integral of v_s . dr for the phase field of a single
// vortex at `core`, summed as wrapped angle increments. Equals
// 2 pi sigma * winding number. Throws InvalidArgument if the loop passes
// within 1e-9 of the core.
double circulation_integral(Point2 core, const PlanarPath& loop, int sigma);

struct Region {
  double x_min;
  double y_min;
  double x_max;
  double y_max;

  double area() const { return (x_max - x_min) * (y_max - y_min); }
};

// round(density * area) atoms placed uniformly in the region with a
// mt19937_64 stream seeded by `seed`.
std::vector<Point2> scatter_atoms(double density, const Region& region, std::uint64_t seed);

}  // namespace ncplane::vortex
