#include "ncplane/dissipative.hpp"

#include "ncplane/error.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <numbers>
#include <sstream>

namespace ncplane::dissipation {

namespace {

constexpr std::size_t kMaxPolynomialDegree = 6;
constexpr std::size_t kMinFrequencySamples = 64;
constexpr double kPeakThreshold = 0.1;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require_canonical(const DissipativeParams& params) {
  if (!(params.friction > 0.0)) {
    throw InvalidArgument("canonical coordinates require R > 0");
  }
}

}  // namespace

PotentialSpec::PotentialSpec(Kind kind) : kind_(std::move(kind)) {
  std::visit(overloaded{
                 [](const FreePotential&) {},
                 [](const HarmonicPotential& h) {
                   if (!(h.stiffness >= 0.0) || !std::isfinite(h.stiffness)) {
                     throw InvalidArgument("harmonic stiffness must be ≥ 0");
                   }
                 },
                 [](const PolynomialPotential& p) {
                   if (p.coefficients.size() > kMaxPolynomialDegree + 1) {
                     throw InvalidArgument("polynomial potential degree must be ≤ 6");
                   }
                   for (double c : p.coefficients) {
                     if (!std::isfinite(c)) throw InvalidArgument("polynomial coefficient is not finite");
                   }
                 },
             },
             kind_);
}

bool PotentialSpec::is_free() const {
  if (std::holds_alternative<FreePotential>(kind_)) return true;
  if (const auto* h = std::get_if<HarmonicPotential>(&kind_)) return h->stiffness == 0.0;
  const auto& c = std::get<PolynomialPotential>(kind_).coefficients;
  // A constant term does not produce a force.
  return std::all_of(c.begin() + std::min<std::ptrdiff_t>(1, static_cast<std::ptrdiff_t>(c.size())), c.end(),
                     [](double v) { return v == 0.0; });
}

double PotentialSpec::value(double x) const {
  return std::visit(overloaded{
                        [](const FreePotential&) { return 0.0; },
                        [x](const HarmonicPotential& h) { return 0.5 * h.stiffness * x * x; },
                        [x](const PolynomialPotential& p) {
                          double acc = 0.0;
                          for (auto it = p.coefficients.rbegin(); it != p.coefficients.rend(); ++it) {
                            acc = acc * x + *it;
                          }
                          return acc;
                        },
                    },
                    kind_);
}

double PotentialSpec::derivative(double x) const {
  return std::visit(overloaded{
                        [](const FreePotential&) { return 0.0; },
                        [x](const HarmonicPotential& h) { return h.stiffness * x; },
                        [x](const PolynomialPotential& p) {
                          double acc = 0.0;
                          for (std::size_t i = p.coefficients.size(); i-- > 1;) {
                            acc = acc * x + static_cast<double>(i) * p.coefficients[i];
                          }
                          return acc;
                        },
                    },
                    kind_);
}

void DissipativeParams::validate() const {
  if (!(mass > 0.0) || !std::isfinite(mass)) throw InvalidArgument("M must be > 0");
  if (!(friction >= 0.0) || !std::isfinite(friction)) throw InvalidArgument("R must be ≥ 0");
  if (!(hbar > 0.0) || !std::isfinite(hbar)) throw InvalidArgument("hbar must be > 0");
}

double DissipativeParams::length_squared() const {
  require_canonical(*this);
  return hbar / friction;
}

bool TwoCoordState::finite() const {
  return std::isfinite(x_plus) && std::isfinite(x_minus) && std::isfinite(v_plus) && std::isfinite(v_minus) &&
         std::isfinite(t);
}

StateRate eom_rhs(const TwoCoordState& s, const DissipativeParams& params) {
  const double m = params.mass;
  const double r = params.friction;
  return {s.v_plus, s.v_minus, -(r * s.v_minus + params.potential.derivative(s.x_plus)) / m,
          -(r * s.v_plus + params.potential.derivative(s.x_minus)) / m};
}

std::vector<TwoCoordState> integrate_trajectory(const TwoCoordState& initial, const DissipativeParams& params,
                                                double dt, std::size_t steps, const IntegrationOptions& options) {
  params.validate();
  if (!(dt > 0.0) || !std::isfinite(dt)) throw InvalidArgument("dt must be > 0");
  if (steps == 0) throw InvalidArgument("steps must be positive");
  if (!initial.finite()) throw InvalidArgument("initial state is not finite");

  if (dt * params.gamma() >= 1.0) {
    std::ostringstream msg;
    msg << "warning: dt*Gamma = " << dt * params.gamma() << " ≥ 1; RK4 accuracy will be poor (use < 0.1)";
    if (options.on_warning) {
      options.on_warning(msg.str());
    } else {
      std::cerr << msg.str() << '\n';
    }
  }

  auto advance = [&](const TwoCoordState& s, const StateRate& k, double h) {
    return TwoCoordState{s.x_plus + h * k.dx_plus, s.x_minus + h * k.dx_minus, s.v_plus + h * k.dv_plus,
                         s.v_minus + h * k.dv_minus, s.t + h};
  };

  std::vector<TwoCoordState> out;
  out.reserve(steps + 1);
  out.push_back(initial);
  TwoCoordState s = initial;
  for (std::size_t n = 1; n <= steps; ++n) {
    const StateRate k1 = eom_rhs(s, params);
    const StateRate k2 = eom_rhs(advance(s, k1, 0.5 * dt), params);
    const StateRate k3 = eom_rhs(advance(s, k2, 0.5 * dt), params);
    const StateRate k4 = eom_rhs(advance(s, k3, dt), params);
    const double w = dt / 6.0;
    s.x_plus += w * (k1.dx_plus + 2.0 * k2.dx_plus + 2.0 * k3.dx_plus + k4.dx_plus);
    s.x_minus += w * (k1.dx_minus + 2.0 * k2.dx_minus + 2.0 * k3.dx_minus + k4.dx_minus);
    s.v_plus += w * (k1.dv_plus + 2.0 * k2.dv_plus + 2.0 * k3.dv_plus + k4.dv_plus);
    s.v_minus += w * (k1.dv_minus + 2.0 * k2.dv_minus + 2.0 * k3.dv_minus + k4.dv_minus);
    s.t = initial.t + static_cast<double>(n) * dt;
    if (!s.finite()) {
      std::ostringstream msg;
      msg << "trajectory diverged at step " << n << " (t = " << s.t << ")";
      throw DivergenceError(n, msg.str());
    }
    out.push_back(s);
  }
  return out;
}

Momenta canonical_momenta(const TwoCoordState& s, const DissipativeParams& params) {
  const double m = params.mass;
  const double r = params.friction;
  return {m * s.v_plus + 0.5 * r * s.x_minus, -m * s.v_minus - 0.5 * r * s.x_plus};
}

double hamiltonian_value(const TwoCoordState& s, const DissipativeParams& params) {
  params.validate();
  const Momenta p = canonical_momenta(s, params);
  const double r = params.friction;
  const double a = p.plus - 0.5 * r * s.x_minus;
  const double b = p.minus + 0.5 * r * s.x_plus;
  const auto& u = params.potential;
  return (a * a - b * b) / (2.0 * params.mass) + u.value(s.x_plus) - u.value(s.x_minus);
}

CanonicalCoords canonical_coords(const TwoCoordState& s, const DissipativeParams& params) {
  params.validate();
  require_canonical(params);
  const double xi_plus = -params.mass * s.v_minus / params.friction;
  const double xi_minus = params.mass * s.v_plus / params.friction;
  return {xi_plus, xi_minus, s.x_plus - xi_plus, s.x_minus - xi_minus};
}

BoostMatrix boost_matrix(double gamma, double t) {
  const double rapidity = gamma * t;
  return {std::cosh(rapidity), -std::sinh(rapidity)};
}

XiPair hyperbolic_evolve(XiPair xi, double gamma, double t) {
  // Light-cone components u = xi+ + xi-, w = xi+ - xi- are the eigenvectors
  // of the boost (eigenvalues e^{-Gt}, e^{+Gt}); scaling them separately
  // avoids the cosh/sinh cancellation at large |Gt|.
  const double rapidity = gamma * t;
  if (rapidity == 0.0) return xi;
  const double u = (xi.plus + xi.minus) * std::exp(-rapidity);
  const double w = (xi.plus - xi.minus) * std::exp(rapidity);
  return {0.5 * (u + w), 0.5 * (u - w)};
}

double orbit_invariant(XiPair xi) {
  // Factored form of xi-^2 - xi+^2; rounding stays relative to |xi|^2.
  return (xi.minus - xi.plus) * (xi.minus + xi.plus);
}

double friction_hamiltonian(XiPair xi, const DissipativeParams& params) {
  params.validate();
  const double l2 = params.length_squared();
  return params.hbar * params.hbar / (2.0 * params.mass * l2 * l2) * orbit_invariant(xi);
}

double transmission_coefficient(double omega, double gamma) {
  if (!(gamma > 0.0)) throw InvalidArgument("Gamma must be > 0");
  const double x = 2.0 * std::numbers::pi * omega / gamma;
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

DissipativeRepresentation build_dissipative_representation(const DissipativeParams& params, std::size_t dim) {
  params.validate();
  require_canonical(params);
  if (dim < 3) throw InvalidArgument("dim must be ≥ 3 for the dissipative algebra");

  const double l2 = params.length_squared();
  const double l = std::sqrt(l2);
  const auto one = ops::OperatorMatrix::identity(dim);
  const auto [a, b] = ops::build_xy({l, params.hbar}, dim);

  // xi pair with [xi+, xi-] = i L^2; centre pair with the sign of X- flipped.
  auto xi_plus = ops::tensor(a, one);
  auto xi_minus = ops::tensor(b, one);
  auto X_plus = ops::tensor(one, a);
  auto X_minus = ops::tensor(one, ops::Complex{-1.0, 0.0} * b);
  // xi+ = -L^2 K-, xi- = L^2 K+.
  auto k_plus = ops::Complex{1.0 / l2, 0.0} * xi_minus;
  auto k_minus = ops::Complex{-1.0 / l2, 0.0} * xi_plus;
  return {dim, l2, std::move(k_plus), std::move(k_minus), std::move(xi_plus), std::move(xi_minus),
          std::move(X_plus), std::move(X_minus)};
}

ops::CommutatorReport kappa_commutator_check(const DissipativeParams& params, std::size_t dim) {
  const auto rep = build_dissipative_representation(params, dim);
  const std::vector<ops::NamedOperator> named{{"K+", rep.k_plus},   {"K-", rep.k_minus},
                                              {"xi+", rep.xi_plus}, {"xi-", rep.xi_minus},
                                              {"X+", rep.X_plus},   {"X-", rep.X_minus}};
  return ops::make_commutator_report(named, ops::leading_mask_tensor(dim));
}

DensityMatrix::DensityMatrix(Eigen::MatrixXcd entries, double tol) : m_(std::move(entries)) {
  if (m_.rows() == 0 || m_.rows() != m_.cols()) throw InvalidArgument("density matrix must be square");
  if ((m_ - m_.adjoint()).cwiseAbs().maxCoeff() > tol) throw InvalidArgument("density matrix is not Hermitian");
  if (std::abs(m_.trace() - std::complex<double>(1.0, 0.0)) > tol) {
    throw InvalidArgument("density matrix trace must be 1");
  }
}

std::complex<double> DensityMatrix::operator()(std::size_t f, std::size_t i) const {
  if (f >= dim() || i >= dim()) throw InvalidArgument("density matrix index out of range");
  return m_(static_cast<Eigen::Index>(f), static_cast<Eigen::Index>(i));
}

DensityMatrix evolve_density(std::span<const double> energies, const DensityMatrix& rho0, double t, double hbar) {
  if (energies.size() != rho0.dim()) {
    std::ostringstream msg;
    msg << "energy list has " << energies.size() << " entries but density matrix dim is " << rho0.dim();
    throw InvalidArgument(msg.str());
  }
  if (!(hbar > 0.0)) throw InvalidArgument("hbar must be > 0");

  const auto n = static_cast<Eigen::Index>(rho0.dim());
  Eigen::MatrixXcd out = rho0.matrix();
  for (Eigen::Index f = 0; f < n; ++f) {
    for (Eigen::Index i = f + 1; i < n; ++i) {
      const double phase = -(energies[static_cast<std::size_t>(f)] - energies[static_cast<std::size_t>(i)]) * t / hbar;
      out(f, i) *= std::polar(1.0, phase);
      out(i, f) = std::conj(out(f, i));
    }
  }
  return DensityMatrix(std::move(out));
}

std::vector<DensityMatrix> sample_density_evolution(std::span<const double> energies, const DensityMatrix& rho0,
                                                    double hbar, double dt, std::size_t count) {
  std::vector<DensityMatrix> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    out.push_back(evolve_density(energies, rho0, static_cast<double>(k) * dt, hbar));
  }
  return out;
}

FrequencyEstimate bohr_frequencies(std::span<const DensityMatrix> samples, double dt) {
  if (samples.size() < kMinFrequencySamples) {
    std::ostringstream msg;
    msg << "need at least " << kMinFrequencySamples << " samples, got " << samples.size();
    throw InvalidArgument(msg.str());
  }
  if (!(dt > 0.0)) throw InvalidArgument("sample spacing dt must be > 0");
  const std::size_t dim = samples.front().dim();
  for (const auto& s : samples) {
    if (s.dim() != dim) throw InvalidArgument("density samples have inconsistent dimensions");
  }

  const std::size_t count = samples.size();
  const double bin = 2.0 * std::numbers::pi / (static_cast<double>(count) * dt);

  // DFT twiddles e^{-2 pi i k n / N}, indexed by (k n) mod N.
  std::vector<std::complex<double>> twiddle(count);
  for (std::size_t j = 0; j < count; ++j) {
    twiddle[j] = std::polar(1.0, -2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(count));
  }

  std::vector<double> found;
  std::vector<std::complex<double>> series(count);
  std::vector<double> power(count);
  for (std::size_t f = 0; f < dim; ++f) {
    for (std::size_t i = f + 1; i < dim; ++i) {
      double energy = 0.0;
      for (std::size_t n = 0; n < count; ++n) {
        series[n] = samples[n](f, i);
        energy += std::norm(series[n]);
      }
      double ac_power = 0.0;
      for (std::size_t k = 0; k < count; ++k) {
        std::complex<double> acc{0.0, 0.0};
        for (std::size_t n = 0; n < count; ++n) acc += series[n] * twiddle[(k * n) % count];
        power[k] = std::norm(acc);
        if (k != 0) ac_power += power[k];
      }
      // Parseval: total power is N * energy. No oscillating content -> skip.
      if (!(ac_power > 1e-12 * static_cast<double>(count) * energy)) continue;

      const double peak = *std::max_element(power.begin() + 1, power.end());
      for (std::size_t k = 1; k < count; ++k) {
        const double left = power[k - 1];
        const double right = power[(k + 1) % count];
        if (power[k] >= kPeakThreshold * peak && power[k] > left && power[k] >= right) {
          const double signed_bin = k <= count / 2 ? static_cast<double>(k)
                                                   : static_cast<double>(k) - static_cast<double>(count);
          found.push_back(std::abs(signed_bin) * bin);
        }
      }
    }
  }

  std::sort(found.begin(), found.end());
  std::vector<double> merged;
  for (double w : found) {
    if (merged.empty() || w - merged.back() > 0.5 * bin) merged.push_back(w);
  }
  return {std::move(merged), bin};
}

}  // namespace ncplane::dissipation
