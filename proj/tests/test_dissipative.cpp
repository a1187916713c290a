#include <catch2/catch.hpp>

#include "ncplane/dissipative.hpp"
#include "ncplane/error.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace ncplane;
using namespace ncplane::dissipation;
using Catch::Matchers::Contains;

namespace {

constexpr double kPi = std::numbers::pi;
const std::complex<double> I{0.0, 1.0};

DissipativeParams params(double m, double r, PotentialSpec u = PotentialSpec::free(), double hbar = 1.0) {
  return {m, r, hbar, std::move(u)};
}

IntegrationOptions quiet() {
  IntegrationOptions o;
  o.on_warning = [](std::string_view) {};
  return o;
}

DensityMatrix uniform_pure_state(std::size_t dim) {
  Eigen::VectorXcd psi = Eigen::VectorXcd::Constant(static_cast<Eigen::Index>(dim), 1.0 / std::sqrt(double(dim)));
  return DensityMatrix(psi * psi.adjoint());
}

bool contains_within(const std::vector<double>& found, double target, double tol) {
  return std::any_of(found.begin(), found.end(), [&](double f) { return std::abs(f - target) <= tol; });
}

}  // namespace

TEST_CASE("potential spec", "[dissipative]") {
  CHECK(PotentialSpec::free().derivative(3.0) == 0.0);
  CHECK(PotentialSpec::harmonic(2.0).value(3.0) == Approx(9.0));
  CHECK(PotentialSpec::harmonic(2.0).derivative(3.0) == Approx(6.0));
  // U = 1 + 2x + 3x^2
  const auto poly = PotentialSpec::polynomial({1.0, 2.0, 3.0});
  CHECK(poly.value(2.0) == Approx(17.0));
  CHECK(poly.derivative(2.0) == Approx(14.0));
  CHECK_THROWS_AS(PotentialSpec::harmonic(-1.0), InvalidArgument);
  CHECK_THROWS_AS(PotentialSpec::polynomial(std::vector<double>(8, 1.0)), InvalidArgument);
  CHECK_NOTHROW(PotentialSpec::polynomial(std::vector<double>(7, 1.0)));
}

TEST_CASE("params validation", "[dissipative]") {
  CHECK_THROWS_AS(params(0.0, 1.0).validate(), InvalidArgument);
  CHECK_THROWS_AS(params(1.0, -1.0).validate(), InvalidArgument);
  CHECK_THROWS_AS(params(1.0, 1.0, PotentialSpec::free(), 0.0).validate(), InvalidArgument);
  CHECK(params(2.0, 1.0).gamma() == 0.5);
  CHECK(params(1.0, 4.0, PotentialSpec::free(), 2.0).length_squared() == 0.5);
  CHECK_THROWS_WITH(params(1.0, 0.0).length_squared(), Contains("R > 0"));
}

TEST_CASE("equation of motion examples", "[dissipative]") {
  auto r0 = eom_rhs({0.3, -0.2, 1.0, 2.0, 0.0}, params(1.0, 0.0));
  CHECK(r0.dv_plus == 0.0);
  CHECK(r0.dv_minus == 0.0);
  CHECK(r0.dx_plus == 1.0);
  CHECK(r0.dx_minus == 2.0);

  auto r1 = eom_rhs({0.0, 0.0, 1.0, 1.0, 0.0}, params(1.0, 1.0));
  CHECK(r1.dv_plus == -1.0);
  CHECK(r1.dv_minus == -1.0);

  auto r2 = eom_rhs({1.0, 0.0, 0.0, 0.0, 0.0}, params(1.0, 0.0, PotentialSpec::harmonic(1.0)));
  CHECK(r2.dv_plus == -1.0);
  CHECK(r2.dv_minus == 0.0);

  // Friction couples each equation to the other velocity.
  auto r3 = eom_rhs({0.0, 0.0, 1.0, 0.0, 0.0}, params(2.0, 4.0));
  CHECK(r3.dv_plus == 0.0);
  CHECK(r3.dv_minus == -2.0);
}

TEST_CASE("trajectory bookkeeping", "[dissipative]") {
  const auto traj = integrate_trajectory({0, 0, 1, 1, 2.0}, params(1.0, 0.5), 0.01, 10, quiet());
  REQUIRE(traj.size() == 11);
  CHECK(traj.front().t == 2.0);
  CHECK(traj.back().t == Approx(2.1));
  CHECK_THROWS_AS(integrate_trajectory({}, params(1.0, 0.5), 0.0, 10), InvalidArgument);
  CHECK_THROWS_AS(integrate_trajectory({}, params(1.0, 0.5), 0.1, 0), InvalidArgument);
}

TEST_CASE("large dt Gamma triggers a warning", "[dissipative]") {
  int warnings = 0;
  IntegrationOptions o;
  o.on_warning = [&](std::string_view) { ++warnings; };
  integrate_trajectory({0, 0, 1, 1, 0}, params(1.0, 2.0), 0.6, 3, o);
  CHECK(warnings == 1);
  warnings = 0;
  integrate_trajectory({0, 0, 1, 1, 0}, params(1.0, 2.0), 0.01, 3, o);
  CHECK(warnings == 0);
}

TEST_CASE("runaway integration reports the step", "[dissipative]") {
  // U = -x^6 blows up in finite time.
  const auto p = params(1.0, 0.0, PotentialSpec::polynomial({0, 0, 0, 0, 0, 0, -1.0}));
  try {
    integrate_trajectory({2.0, 0.0, 0.0, 0.0, 0.0}, p, 0.05, 10000, quiet());
    FAIL("expected divergence");
  } catch (const DivergenceError& e) {
    CHECK(e.step() > 0);
    CHECK(e.step() <= 10000);
  }
}

TEST_CASE("diagonal data stays diagonal and decays", "[dissipative][property]") {
  const auto p = params(1.0, 0.5);
  const auto traj = integrate_trajectory({0.2, 0.2, 1.0, 1.0, 0.0}, p, 1e-3, 10000, quiet());
  for (const auto& s : traj) {
    CHECK(std::abs(s.x_plus - s.x_minus) < 1e-9);
    CHECK(std::abs(s.v_plus - std::exp(-p.gamma() * s.t)) < 1e-6);
  }
}

TEST_CASE("damped harmonic oscillator", "[dissipative][property]") {
  const double m = 1.3, r = 0.4, k = 2.0;
  const auto p = params(m, r, PotentialSpec::harmonic(k));
  const double g = r / m;
  const double wd = std::sqrt(k / m - g * g / 4.0);
  const auto traj = integrate_trajectory({1.0, 1.0, 0.0, 0.0, 0.0}, p, 1e-3, 8000, quiet());
  for (const auto& s : traj) {
    const double want = std::exp(-g * s.t / 2.0) * (std::cos(wd * s.t) + g / (2.0 * wd) * std::sin(wd * s.t));
    CHECK(std::abs(s.x_plus - want) < 1e-4);
  }
}

TEST_CASE("Hamiltonian examples", "[dissipative]") {
  CHECK(hamiltonian_value({0.7, 0.7, -0.4, -0.4, 0.0}, params(1.0, 0.8, PotentialSpec::harmonic(1.0))) ==
        Approx(0.0).margin(1e-15));
  CHECK(hamiltonian_value({0.0, 0.0, 2.0, 1.0, 0.0}, params(1.0, 0.0)) == Approx(1.5));

  // Momentum form agrees with the velocity form for any state.
  std::mt19937 rng(31);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  const auto pp = params(1.7, 0.9, PotentialSpec::polynomial({0.1, 0.0, 0.5, 0.0, 0.05}));
  for (int trial = 0; trial < 50; ++trial) {
    const TwoCoordState s{u(rng), u(rng), u(rng), u(rng), 0.0};
    const double want = 0.5 * pp.mass * (s.v_plus * s.v_plus - s.v_minus * s.v_minus) +
                        pp.potential.value(s.x_plus) - pp.potential.value(s.x_minus);
    CHECK(hamiltonian_value(s, pp) == Approx(want).margin(1e-12));
  }
}

TEST_CASE("Hamiltonian is conserved along trajectories", "[dissipative][property]") {
  const auto p = params(1.0, 1.0, PotentialSpec::harmonic(3.0));
  const TwoCoordState s0{0.5, -0.3, 0.2, 0.9, 0.0};
  const auto traj = integrate_trajectory(s0, p, 1e-3, 3000, quiet());
  const double h0 = hamiltonian_value(s0, p);
  for (const auto& s : traj) CHECK(std::abs(hamiltonian_value(s, p) - h0) / std::max(std::abs(h0), 1.0) < 1e-7);
}

TEST_CASE("canonical coordinates", "[dissipative]") {
  const auto p = params(1.0, 1.0);
  const auto rest = canonical_coords({0.4, -0.1, 0.0, 0.0, 0.0}, p);
  CHECK(rest.xi_plus == 0.0);
  CHECK(rest.xi_minus == 0.0);
  CHECK(rest.X_plus == 0.4);
  CHECK(rest.X_minus == -0.1);

  CHECK(canonical_coords({0, 0, 0.0, 1.0, 0.0}, p).xi_plus == -1.0);

  std::mt19937 rng(2);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int trial = 0; trial < 50; ++trial) {
    const TwoCoordState s{u(rng), u(rng), u(rng), u(rng), 0.0};
    const auto pr = params(1.0 + std::abs(u(rng)), 0.5 + std::abs(u(rng)));
    const auto c = canonical_coords(s, pr);
    CHECK(std::abs(c.X_plus + c.xi_plus - s.x_plus) < 1e-12);
    CHECK(std::abs(c.X_minus + c.xi_minus - s.x_minus) < 1e-12);

    // Two expressions of the friction energy.
    const double kinetic = 0.5 * pr.mass * (s.v_plus * s.v_plus - s.v_minus * s.v_minus);
    CHECK(std::abs(friction_hamiltonian({c.xi_plus, c.xi_minus}, pr) - kinetic) <=
          1e-12 * std::max(1.0, std::abs(kinetic)));
  }
  CHECK_THROWS_WITH(canonical_coords({}, params(1.0, 0.0)), Contains("R > 0"));
}

TEST_CASE("hyperbolic evolution examples", "[dissipative]") {
  const XiPair xi{0.3, -1.7};
  const auto same = hyperbolic_evolve(xi, 2.0, 0.0);
  CHECK(same.plus == xi.plus);
  CHECK(same.minus == xi.minus);

  const double g = 0.7, t = 1.9;
  const auto a = hyperbolic_evolve({1.0, 1.0}, g, t);
  CHECK(a.plus == Approx(std::exp(-g * t)).epsilon(1e-14));
  CHECK(a.minus == Approx(std::exp(-g * t)).epsilon(1e-14));
  const auto b = hyperbolic_evolve({1.0, -1.0}, g, t);
  CHECK(b.plus == Approx(std::exp(g * t)).epsilon(1e-14));
  CHECK(b.minus == Approx(-std::exp(g * t)).epsilon(1e-14));

  // Agrees with the explicit cosh/sinh matrix.
  const auto m = boost_matrix(g, t);
  const auto c = hyperbolic_evolve(xi, g, t);
  CHECK(c.plus == Approx(m.diag * xi.plus + m.offdiag * xi.minus).epsilon(1e-13));
  CHECK(c.minus == Approx(m.offdiag * xi.plus + m.diag * xi.minus).epsilon(1e-13));
  CHECK(std::abs(boost_matrix(g, 0.5).determinant() - 1.0) < 1e-14);
}

TEST_CASE("orbit invariant", "[dissipative]") {
  CHECK(orbit_invariant({0.0, 2.0}) == 4.0);
  CHECK(orbit_invariant({1.0, 1.0}) == 0.0);

  std::mt19937 rng(41);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int trial = 0; trial < 1000; ++trial) {
    const XiPair xi{u(rng), u(rng)};
    const double g = std::abs(u(rng)), t = u(rng);
    const double before = orbit_invariant(xi);
    const auto moved = hyperbolic_evolve(xi, g, t);
    const double scale = std::max(xi.plus * xi.plus + xi.minus * xi.minus,
                                  moved.plus * moved.plus + moved.minus * moved.minus);
    CHECK(std::abs(orbit_invariant(moved) - before) <= 1e-14 * scale);
  }
}

TEST_CASE("friction Hamiltonian", "[dissipative]") {
  const auto p = params(1.0, 1.0);
  CHECK(friction_hamiltonian({0.4, 0.4}, p) == 0.0);
  CHECK(friction_hamiltonian({0.0, 1.0}, p) == Approx(0.5));
  CHECK_THROWS_AS(friction_hamiltonian({0.0, 1.0}, params(1.0, 0.0)), InvalidArgument);

  // Closure: invariant = 2 L^2 H / (hbar Gamma) along evolved states.
  const auto q = params(1.4, 0.6, PotentialSpec::free(), 0.8);
  const double l2 = q.length_squared();
  for (double t : {0.0, 0.5, 2.0}) {
    const auto xi = hyperbolic_evolve({0.3, 1.1}, q.gamma(), t);
    CHECK(orbit_invariant(xi) == Approx(2.0 * l2 * friction_hamiltonian(xi, q) / (q.hbar * q.gamma())).epsilon(1e-13));
  }
}

TEST_CASE("U = 0 trajectories follow the hyperbola", "[dissipative][property]") {
  const auto p = params(1.0, 1.0);
  const TwoCoordState s0{0.1, 0.2, 0.7, -0.4, 0.0};
  const auto traj = integrate_trajectory(s0, p, 1e-3, 3000, quiet());
  const auto c0 = canonical_coords(s0, p);
  for (const auto& s : traj) {
    const auto c = canonical_coords(s, p);
    const auto exact = hyperbolic_evolve({c0.xi_plus, c0.xi_minus}, p.gamma(), -s.t);
    CHECK(std::abs(c.xi_plus - exact.plus) < 1e-6);
    CHECK(std::abs(c.xi_minus - exact.minus) < 1e-6);
    CHECK(std::abs(c.X_plus - c0.X_plus) < 1e-9);
  }
}

TEST_CASE("transmission coefficient", "[dissipative]") {
  CHECK(transmission_coefficient(0.0, 1.0) == 0.5);
  // 1 / (1 + e^{-2 pi}) = 0.99813604...
  CHECK(transmission_coefficient(1.0, 1.0) == Approx(1.0 / (1.0 + std::exp(-2.0 * kPi))).epsilon(1e-15));
  CHECK(std::abs(transmission_coefficient(1.0, 1.0) - 0.998133) < 5e-6);
  CHECK(transmission_coefficient(1e4, 1.0) == 1.0);
  CHECK(transmission_coefficient(-1e4, 1.0) >= 0.0);
  std::mt19937 rng(8);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  for (int k = 0; k < 100; ++k) {
    const double w = u(rng);
    CHECK(std::abs(transmission_coefficient(w, 1.3) + transmission_coefficient(-w, 1.3) - 1.0) <= 1e-15);
  }
  CHECK_THROWS_AS(transmission_coefficient(1.0, 0.0), InvalidArgument);
}

TEST_CASE("dissipative commutator table", "[dissipative]") {
  const auto p = params(1.0, 2.0, PotentialSpec::free(), 1.0);
  const double l2 = 0.5;
  const auto r = kappa_commutator_check(p, 5);
  CHECK(std::abs(r.at("xi+", "xi-").leading_value - I * l2) < 1e-12);
  CHECK(std::abs(r.at("X+", "X-").leading_value + I * l2) < 1e-12);
  CHECK(std::abs(r.at("K+", "K-").leading_value - I / l2) < 1e-12);
  CHECK(r.at("K+", "K-").leading_residual < 1e-12);
  for (const char* a : {"X+", "X-"}) {
    for (const char* b : {"xi+", "xi-"}) CHECK(r.at(a, b).leading_residual == 0.0);
  }
  CHECK_THROWS_AS(kappa_commutator_check(params(1.0, 0.0), 5), InvalidArgument);
  CHECK_THROWS_AS(kappa_commutator_check(p, 2), InvalidArgument);
}

TEST_CASE("density matrix validation", "[dissipative]") {
  Eigen::MatrixXcd bad(2, 2);
  bad << 0.5, 0.1, 0.2, 0.5;
  CHECK_THROWS_AS(DensityMatrix(bad), InvalidArgument);
  Eigen::MatrixXcd trace2 = Eigen::MatrixXcd::Identity(2, 2);
  CHECK_THROWS_AS(DensityMatrix(trace2), InvalidArgument);
}

TEST_CASE("density evolution", "[dissipative]") {
  Eigen::MatrixXcd diag = Eigen::MatrixXcd::Zero(3, 3);
  diag(0, 0) = 0.2;
  diag(1, 1) = 0.3;
  diag(2, 2) = 0.5;
  const std::vector<double> e3{0.0, 1.0, 3.0};
  const auto still = evolve_density(e3, DensityMatrix(diag), 4.2, 1.0);
  CHECK((still.matrix() - diag).cwiseAbs().maxCoeff() == 0.0);

  const std::vector<double> e2{0.5, 1.5};
  const auto rho = uniform_pure_state(2);
  const auto later = evolve_density(e2, rho, 2.0 * kPi, 1.0);
  CHECK(std::abs(later(1, 0) - rho(1, 0)) < 1e-12);
  const auto quarter = evolve_density(e2, rho, kPi / 2.0, 1.0);
  CHECK(std::abs(quarter(1, 0) - std::exp(-I * kPi / 2.0) * rho(1, 0)) < 1e-12);

  const auto r5 = uniform_pure_state(5);
  const std::vector<double> e5{0.1, 0.7, 1.9, 2.2, 4.0};
  for (double t : {0.3, 17.0, 1e3}) CHECK(std::abs(evolve_density(e5, r5, t, 0.7).trace() - 1.0) < 1e-12);

  CHECK_THROWS_AS(evolve_density(e3, rho, 1.0, 1.0), InvalidArgument);
}

TEST_CASE("Bohr frequency examples", "[dissipative]") {
  {
    const std::vector<double> e{0.5, 1.5};
    const auto s = sample_density_evolution(e, uniform_pure_state(2), 1.0, 0.1, 256);
    const auto est = bohr_frequencies(s, 0.1);
    REQUIRE(est.frequencies.size() == 1);
    CHECK(std::abs(est.frequencies[0] - 1.0) <= est.bin_width);
  }
  {
    const std::vector<double> e{0.0, 1.0, 3.0};
    const auto s = sample_density_evolution(e, uniform_pure_state(3), 1.0, 0.1, 512);
    const auto est = bohr_frequencies(s, 0.1);
    CHECK(est.frequencies.size() == 3);
    for (double w : {1.0, 2.0, 3.0}) CHECK(contains_within(est.frequencies, w, est.bin_width));
  }
  {
    Eigen::MatrixXcd diag = Eigen::MatrixXcd::Identity(3, 3) / 3.0;
    const std::vector<double> e{0.0, 1.0, 3.0};
    const auto s = sample_density_evolution(e, DensityMatrix(diag), 1.0, 0.1, 128);
    CHECK(bohr_frequencies(s, 0.1).frequencies.empty());
  }
  const std::vector<double> e{0.5, 1.5};
  const auto few = sample_density_evolution(e, uniform_pure_state(2), 1.0, 0.1, 63);
  CHECK_THROWS_AS(bohr_frequencies(few, 0.1), InvalidArgument);
}
