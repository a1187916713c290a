#pragma once

// Doubled-coordinate description of a particle with linear friction.
//
// The forward and backward copies (x+, x-) obey
//
//   M dv+/dt + R v- + U'(x+) = 0,
//   M dv-/dt + R v+ + U'(x-) = 0,
//
// generated by the Hamiltonian
//
//   H = [(p+ - R x-/2)^2 - (p- + R x+/2)^2] / 2M + U(x+) - U(x-),
//
// with v+ = (p+ - R x-/2)/M and v- = -(p- + R x+/2)/M. For R > 0 the
// length L^2 = hbar / R splits x = X + xi into two noncommuting pairs.
//
// Time direction of the xi flow: substituting xi+ = -M v-/R, xi- = M v+/R
// into the equations above gives d(xi+-)/dt = +Gamma xi-+, i.e. the ODE
// carries xi along hyperbolic_evolve(xi, Gamma, -t). hyperbolic_evolve
// itself applies the boost with -sinh in the off-diagonal entries.

#include "ncplane/operator_core.hpp"

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include <Eigen/Dense>

namespace ncplane::dissipation {

struct FreePotential {};

struct HarmonicPotential {
  double stiffness = 0.0;  // U = k x^2 / 2
};

struct PolynomialPotential {
  std::vector<double> coefficients;  // U = sum c_i x^i, degree <= 6
};

class PotentialSpec {
 public:
  using Kind = std::variant<FreePotential, HarmonicPotential, PolynomialPotential>;

  PotentialSpec() = default;
  PotentialSpec(Kind kind);

  static PotentialSpec free() { return PotentialSpec(FreePotential{}); }
  static PotentialSpec harmonic(double k) { return PotentialSpec(HarmonicPotential{k}); }
  static PotentialSpec polynomial(std::vector<double> c) { return PotentialSpec(PolynomialPotential{std::move(c)}); }

  const Kind& kind() const noexcept { return kind_; }
  bool is_free() const;

  double value(double x) const;       // U(x)
  double derivative(double x) const;  // U'(x)

 private:
  Kind kind_ = FreePotential{};
};

struct DissipativeParams {
  double mass = 1.0;
  double friction = 0.0;  // R
  double hbar = 1.0;
  PotentialSpec potential;

  void validate() const;

  double gamma() const { return friction / mass; }
  // hbar / R; throws InvalidArgument when R = 0.
  double length_squared() const;
};

struct TwoCoordState {
  double x_plus = 0.0;
  double x_minus = 0.0;
  double v_plus = 0.0;
  double v_minus = 0.0;
  double t = 0.0;

  bool finite() const;
};

struct StateRate {
  double dx_plus;
  double dx_minus;
  double dv_plus;
  double dv_minus;
};

struct CanonicalCoords {
  double xi_plus;
  double xi_minus;
  double X_plus;
  double X_minus;
};

struct XiPair {
  double plus;
  double minus;
};

struct Momenta {
  double plus;
  double minus;
};

StateRate eom_rhs(const TwoCoordState& state, const DissipativeParams& params);

struct IntegrationOptions {
  // Called once when dt * Gamma >= 1. Defaults to a line on std::cerr.
  std::function<void(std::string_view)> on_warning;
};

// Fixed-step classical RK4; returns steps + 1 states including the initial
// one. Throws DivergenceError at the first non-finite step.
std::vector<TwoCoordState> integrate_trajectory(const TwoCoordState& initial, const DissipativeParams& params,
                                                double dt, std::size_t steps,
                                                const IntegrationOptions& options = {});

// Canonical momenta recovered from the velocities:
//   p+ = M v+ + R x-/2,   p- = -M v- - R x+/2.
Momenta canonical_momenta(const TwoCoordState& state, const DissipativeParams& params);

// The doubled-coordinate Hamiltonian, evaluated from the canonical momenta.
double hamiltonian_value(const TwoCoordState& state, const DissipativeParams& params);

// xi+ = -M v-/R, xi- = M v+/R, X = x - xi. Throws InvalidArgument for R = 0.
CanonicalCoords canonical_coords(const TwoCoordState& state, const DissipativeParams& params);

// [[cosh Gt, -sinh Gt], [-sinh Gt, cosh Gt]] applied to xi.
XiPair hyperbolic_evolve(XiPair xi, double gamma, double t);

struct BoostMatrix {
  double diag;      // cosh(Gamma t)
  double offdiag;   // -sinh(Gamma t)
  double determinant() const { return diag * diag - offdiag * offdiag; }
};

BoostMatrix boost_matrix(double gamma, double t);

// xi-^2 - xi+^2.
double orbit_invariant(XiPair xi);

// (hbar^2 / 2 M L^4)(xi-^2 - xi+^2). Throws InvalidArgument for R = 0.
double friction_hamiltonian(XiPair xi, const DissipativeParams& params);

// 1 / (1 + exp(-2 pi omega / Gamma)). Throws InvalidArgument for Gamma <= 0.
double transmission_coefficient(double omega, double gamma);

// Truncated representation of the dissipative plane: xi pair on the first
// tensor factor, X pair on the second, K derived from xi.
struct DissipativeRepresentation {
  std::size_t factor_dim;
  double length_squared;
  ops::OperatorMatrix k_plus;
  ops::OperatorMatrix k_minus;
  ops::OperatorMatrix xi_plus;
  ops::OperatorMatrix xi_minus;
  ops::OperatorMatrix X_plus;
  ops::OperatorMatrix X_minus;
};

DissipativeRepresentation build_dissipative_representation(const DissipativeParams& params, std::size_t dim);

// Table over (K+, K-, xi+, xi-, X+, X-). Requires R > 0 and dim >= 3.
ops::CommutatorReport kappa_commutator_check(const DissipativeParams& params, std::size_t dim);

// Hermitian, unit-trace density matrix.
class DensityMatrix {
 public:
  explicit DensityMatrix(Eigen::MatrixXcd entries, double tol = 1e-12);

  std::size_t dim() const noexcept { return static_cast<std::size_t>(m_.rows()); }
  std::complex<double> operator()(std::size_t f, std::size_t i) const;
  const Eigen::MatrixXcd& matrix() const noexcept { return m_; }
  std::complex<double> trace() const { return m_.trace(); }

 private:
  Eigen::MatrixXcd m_;
};

// rho_fi(t) = exp(-i (E_f - E_i) t / hbar) rho_fi(0).
DensityMatrix evolve_density(std::span<const double> energies, const DensityMatrix& rho0, double t, double hbar);

// count samples of evolve_density at t = 0, dt, 2 dt, ...
std::vector<DensityMatrix> sample_density_evolution(std::span<const double> energies, const DensityMatrix& rho0,
                                                    double hbar, double dt, std::size_t count);

struct FrequencyEstimate {
  std::vector<double> frequencies;  // angular, ascending, non-negative
  double bin_width;                 // 2 pi / (N dt)
};

// Periodogram peak picking on every off-diagonal entry time series. Peaks
// below 0.1 of the series maximum and the zero-frequency bin are dropped;
// estimates within half a bin of each other are merged. Needs at least 64
// samples.
FrequencyEstimate bohr_frequencies(std::span<const DensityMatrix> samples, double dt);

}  // namespace ncplane::dissipation
