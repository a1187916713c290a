#pragma once

// Charged particle in a uniform magnetic field, Gaussian units.
//
// The symmetric gauge A = (-B y / 2, B x / 2) underlies the algebra but never
// enters a computation: everything here is expressed through the
// gauge-invariant cyclotron radius rho and orbit centre R = (X, Y).

#include "ncplane/operator_core.hpp"
#include "ncplane/phase_geometry.hpp"

#include <cstddef>
#include <vector>

namespace ncplane::landau {

struct MagneticParams {
  double field = 1.0;   // B
  double charge = 1.0;  // e
  double light_speed = 1.0;
  double mass = 1.0;
  double hbar = 1.0;

  void validate() const;

  double length_squared() const;     // hbar c / (e B)
  double cyclotron_frequency() const;  // e B / (M c)
  double flux_quantum() const;       // 2 pi hbar c / e
};

double magnetic_length(const MagneticParams& params);

// E_n = hbar omega_c (n + 1/2), n = 0..n_max.
std::vector<double> landau_spectrum(const MagneticParams& params, std::size_t n_max);
std::vector<double> landau_spectrum(double hbar, double omega_c, std::size_t n_max);

// Two independent truncated oscillators, rho on the first tensor factor and
// R on the second:
//   [rho_x, rho_y] = i L^2,   [X, Y] = -i L^2,   [R_i, rho_j] = 0.
struct CyclotronRepresentation {
  std::size_t factor_dim;
  double length_squared;
  ops::OperatorMatrix rho_x;
  ops::OperatorMatrix rho_y;
  ops::OperatorMatrix center_x;
  ops::OperatorMatrix center_y;

  // Particle position r = R + rho.
  ops::OperatorMatrix position_x() const { return center_x + rho_x; }
  ops::OperatorMatrix position_y() const { return center_y + rho_y; }
};

CyclotronRepresentation build_cyclotron_representation(const MagneticParams& params, std::size_t dim);

// 4x4 table over (rho_x, rho_y, X, Y). Throws InvalidArgument for dim < 3.
ops::CommutatorReport cyclotron_algebra(const MagneticParams& params, std::size_t dim);

// H = M omega_c^2 (rho_x^2 + rho_y^2) / 2 on the rho factor alone (dim x dim).
ops::OperatorMatrix cyclotron_hamiltonian(const MagneticParams& params, std::size_t dim);

// Ascending eigenvalues of the Hamiltonian compressed onto its leading
// dim-1 levels; these coincide with landau_spectrum(params, dim - 2).
std::vector<double> representation_levels(const MagneticParams& params, std::size_t dim);

struct FluxStep {
  double area;       // A_n = pi L^2 (2n + 1)
  double flux_step;  // B (A_{n+1} - A_n)
};

// Entries for n = 0..n_max. Throws InvalidArgument for n_max < 1.
std::vector<FluxStep> flux_quantization(const MagneticParams& params, std::size_t n_max);

// e Phi / (hbar c) with Phi = B * signed_area(loop).
double aharonov_bohm_phase(const MagneticParams& params, const geometry::PlanarPath& loop);

}  // namespace ncplane::landau
