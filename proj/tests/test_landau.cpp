#include <catch2/catch.hpp>

#include "ncplane/error.hpp"
#include "ncplane/landau.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace ncplane;
using namespace ncplane::landau;
using geometry::PlanarPath;

namespace {

constexpr double kPi = std::numbers::pi;
const ops::Complex I{0.0, 1.0};

MagneticParams random_params(std::mt19937& rng) {
  std::uniform_real_distribution<double> u(0.3, 3.0);
  return {u(rng), u(rng), u(rng), u(rng), u(rng)};
}

}  // namespace

TEST_CASE("magnetic length examples", "[landau]") {
  CHECK(magnetic_length({}) == Approx(1.0));
  CHECK(magnetic_length({4.0, 1.0, 1.0, 1.0, 1.0}) == Approx(0.5));
  CHECK_THROWS_AS(magnetic_length({0.0, 1.0, 1.0, 1.0, 1.0}), InvalidArgument);
  CHECK_THROWS_AS(magnetic_length({1.0, -1.0, 1.0, 1.0, 1.0}), InvalidArgument);
}

TEST_CASE("flux quantum matches 2 pi B L^2", "[landau][property]") {
  std::mt19937 rng(3);
  for (int k = 0; k < 50; ++k) {
    const auto p = random_params(rng);
    CHECK(2.0 * kPi * p.field * p.length_squared() == Approx(p.flux_quantum()).epsilon(1e-14));
  }
}

TEST_CASE("landau spectrum examples", "[landau]") {
  const auto e = landau_spectrum(1.0, 1.0, 2);
  REQUIRE(e.size() == 3);
  CHECK(e[0] == 0.5);
  CHECK(e[1] == 1.5);
  CHECK(e[2] == 2.5);
  CHECK(landau_spectrum({}, 0).front() > 0.0);
}

TEST_CASE("landau levels equal the orbit energies", "[landau][property]") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const auto p = random_params(rng);
    const auto e = landau_spectrum(p, 10);
    const double wc = p.charge * p.field / (p.mass * p.light_speed);
    const double l2 = p.hbar * p.light_speed / (p.charge * p.field);
    for (std::size_t n = 0; n <= 10; ++n) {
      CHECK(e[n] == Approx(0.5 * p.mass * wc * wc * l2 * (2.0 * n + 1.0)).epsilon(1e-13));
      if (n > 0) CHECK(e[n] - e[n - 1] == Approx(p.hbar * wc).epsilon(1e-12));
    }
  }
}

TEST_CASE("cyclotron algebra signs", "[landau]") {
  const MagneticParams p{2.0, 1.0, 1.0, 1.0, 1.0};
  const double l2 = 0.5;
  const auto report = cyclotron_algebra(p, 5);
  CHECK(std::abs(report.at("rho_x", "rho_y").leading_value - I * l2) < 1e-12);
  CHECK(report.at("rho_x", "rho_y").leading_residual < 1e-12);
  CHECK(std::abs(report.at("X", "Y").leading_value + I * l2) < 1e-12);
  CHECK(report.at("X", "Y").leading_residual < 1e-12);
  CHECK(std::abs(report.at("X", "Y").truncation_value - 4.0 * I * l2) < 1e-12);
  for (const char* a : {"rho_x", "rho_y"}) {
    for (const char* b : {"X", "Y"}) {
      CHECK(std::abs(report.at(a, b).leading_value) == 0.0);
      CHECK(report.at(a, b).leading_residual == 0.0);
    }
  }
  CHECK_THROWS_AS(cyclotron_algebra(p, 2), InvalidArgument);
}

TEST_CASE("centre and relative coordinates commute exactly", "[landau]") {
  const auto rep = build_cyclotron_representation({}, 4);
  CHECK(ops::commutator(rep.center_x, rep.rho_x).matrix().cwiseAbs().maxCoeff() == 0.0);
  CHECK(ops::commutator(rep.center_y, rep.rho_y).matrix().cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("representation Hamiltonian reproduces the levels", "[landau][property]") {
  std::mt19937 rng(17);
  for (int trial = 0; trial < 5; ++trial) {
    const auto p = random_params(rng);
    const std::size_t dim = 16;
    const auto levels = representation_levels(p, dim);
    const auto exact = landau_spectrum(p, dim - 2);
    REQUIRE(levels.size() == dim - 1);
    for (std::size_t n = 0; n + 1 < dim; ++n) CHECK(std::abs(levels[n] - exact[n]) < 1e-9);
  }
}

TEST_CASE("flux quantization examples", "[landau]") {
  const auto steps = flux_quantization({}, 5);
  REQUIRE(steps.size() == 6);
  CHECK(steps[0].area == Approx(kPi));
  for (const auto& s : steps) CHECK(s.flux_step == Approx(2.0 * kPi).epsilon(1e-14));
  CHECK_THROWS_AS(flux_quantization({}, 0), InvalidArgument);
}

TEST_CASE("Aharonov-Bohm phase examples", "[landau]") {
  const PlanarPath square({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
  CHECK(aharonov_bohm_phase({}, square) == Approx(1.0));

  const MagneticParams p{2.5, 1.3, 0.7, 1.0, 0.9};
  const double side = std::sqrt(p.flux_quantum() / p.field);
  const PlanarPath quantum({{0, 0}, {side, 0}, {side, side}, {0, side}});
  CHECK(std::abs(aharonov_bohm_phase(p, quantum) - 2.0 * kPi) < 1e-12);

  const PlanarPath back_and_forth({{0, 0}, {1, 1}, {2, 2}, {1, 1}});
  CHECK(aharonov_bohm_phase({}, back_and_forth) == 0.0);
}

TEST_CASE("Aharonov-Bohm phase equals the area phase", "[landau][property]") {
  std::mt19937 rng(23);
  std::uniform_real_distribution<double> uc(-3.0, 3.0);
  for (int trial = 0; trial < 50; ++trial) {
    const auto p = random_params(rng);
    std::vector<geometry::Point2> v;
    for (int k = 0; k < 7; ++k) v.push_back({uc(rng), uc(rng)});
    const PlanarPath loop(v);
    const double a = aharonov_bohm_phase(p, loop);
    const double b = geometry::interference_phase_area(loop, {magnetic_length(p), p.hbar});
    CHECK(std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(a)));
  }
}
