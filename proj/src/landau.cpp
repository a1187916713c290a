#include "ncplane/landau.hpp"

#include "ncplane/error.hpp"

#include <cmath>
#include <numbers>

namespace ncplane::landau {

namespace {

constexpr ops::Complex kI{0.0, 1.0};

void require_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) throw InvalidArgument(std::string(name) + " must be > 0");
}

}  // namespace

void MagneticParams::validate() const {
  require_positive(field, "B");
  require_positive(charge, "e");
  require_positive(light_speed, "c");
  require_positive(mass, "M");
  require_positive(hbar, "hbar");
}

double MagneticParams::length_squared() const { return hbar * light_speed / (charge * field); }

double MagneticParams::cyclotron_frequency() const { return charge * field / (mass * light_speed); }

double MagneticParams::flux_quantum() const { return 2.0 * std::numbers::pi * hbar * light_speed / charge; }

double magnetic_length(const MagneticParams& params) {
  params.validate();
  return std::sqrt(params.length_squared());
}

std::vector<double> landau_spectrum(double hbar, double omega_c, std::size_t n_max) {
  require_positive(hbar, "hbar");
  require_positive(omega_c, "omega_c");
  std::vector<double> out;
  out.reserve(n_max + 1);
  for (std::size_t n = 0; n <= n_max; ++n) out.push_back(hbar * omega_c * (static_cast<double>(n) + 0.5));
  return out;
}

std::vector<double> landau_spectrum(const MagneticParams& params, std::size_t n_max) {
  params.validate();
  return landau_spectrum(params.hbar, params.cyclotron_frequency(), n_max);
}

CyclotronRepresentation build_cyclotron_representation(const MagneticParams& params, std::size_t dim) {
  params.validate();
  if (dim < 3) throw InvalidArgument("dim must be ≥ 3 for the cyclotron algebra");

  const auto [a, ad] = ops::build_ladder(dim);
  const auto one = ops::OperatorMatrix::identity(dim);
  const double l = std::sqrt(params.length_squared());
  const double s = l / std::sqrt(2.0);

  // rho pair: same construction as build_xy, so [rho_x, rho_y] = i L^2.
  const ops::OperatorMatrix rx = ops::Complex{s, 0.0} * (a + ad);
  const ops::OperatorMatrix ry = (s / kI) * (a - ad);
  // Centre pair: sign of Y flipped, so [X, Y] = -i L^2.
  const ops::OperatorMatrix cx = ops::Complex{s, 0.0} * (a + ad);
  const ops::OperatorMatrix cy = (-s / kI) * (a - ad);

  return {dim, params.length_squared(), ops::tensor(rx, one), ops::tensor(ry, one),
          ops::tensor(one, cx), ops::tensor(one, cy)};
}

ops::CommutatorReport cyclotron_algebra(const MagneticParams& params, std::size_t dim) {
  const auto rep = build_cyclotron_representation(params, dim);
  const std::vector<ops::NamedOperator> named{
      {"rho_x", rep.rho_x}, {"rho_y", rep.rho_y}, {"X", rep.center_x}, {"Y", rep.center_y}};
  return ops::make_commutator_report(named, ops::leading_mask_tensor(dim));
}

ops::OperatorMatrix cyclotron_hamiltonian(const MagneticParams& params, std::size_t dim) {
  params.validate();
  const auto [rx, ry] = ops::build_xy({std::sqrt(params.length_squared()), params.hbar}, dim);
  const double w = params.cyclotron_frequency();
  return ops::Complex{0.5 * params.mass * w * w, 0.0} * (rx * rx + ry * ry);
}

std::vector<double> representation_levels(const MagneticParams& params, std::size_t dim) {
  const auto h = cyclotron_hamiltonian(params, dim);
  return ops::hermitian_eigenvalues(ops::leading_block(h, ops::leading_mask_single(dim)), 1e-9);
}

std::vector<FluxStep> flux_quantization(const MagneticParams& params, std::size_t n_max) {
  params.validate();
  if (n_max < 1) throw InvalidArgument("n_max must be ≥ 1");
  const double l2 = params.length_squared();
  auto area = [&](std::size_t n) { return std::numbers::pi * l2 * (2.0 * static_cast<double>(n) + 1.0); };
  std::vector<FluxStep> out;
  out.reserve(n_max + 1);
  for (std::size_t n = 0; n <= n_max; ++n) {
    out.push_back({area(n), params.field * (area(n + 1) - area(n))});
  }
  return out;
}

double aharonov_bohm_phase(const MagneticParams& params, const geometry::PlanarPath& loop) {
  params.validate();
  const double flux = params.field * geometry::signed_area(loop);
  return params.charge * flux / (params.hbar * params.light_speed);
}

}  // namespace ncplane::landau
