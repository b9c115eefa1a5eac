#include <doctest.h>

#include <cmath>
#include <limits>

#include "condkin/errors.hpp"
#include "condkin/kinetics.hpp"
#include "oracles.hpp"

using namespace condkin;

namespace {

PhysicalParams unit_params() {
  PhysicalParams p;
  p.mass = 1.0;
  p.beta = 1.0;
  return p;
}

// Direct per-node sum of pi * |f|^2 (N(p-k)+1)(1+n+) delta_sigma(D), the
// delta part of the emission susceptibility, written independently.
double direct_delta_rate(const MomentumGrid& grid, std::size_t node,
                         const DensityField& occupation, double beta,
                         const DispersionModel& dispersion, const PhysicalParams& params,
                         double sigma) {
  const int span = grid.points_per_axis() - 1;
  const auto qi = grid.unflatten(node);
  const Vec3 q = grid.node(node);
  double sum = 0.0;
  for (int m = -span; m <= span; ++m) {
    if (m == 0) continue;
    const std::array<int, 3> back{qi[0] - m, 0, 0};
    if (!grid.in_range(back)) continue;
    const Vec3 k(m * grid.dq(), 0.0, 0.0);
    const double ek = dispersion(k);
    const double emit = 1.0 / (-std::expm1(-beta * ek));
    const double arg =
        ek + epsilon(grid.node(back), params.mass) - epsilon(q, params.mass);
    sum += params.f.squared_modulus(k, q) * (occupation.values[grid.flatten(back)] + 1.0) *
           emit * mollified_delta(arg, sigma);
  }
  return M_PI * sum * grid.cell_volume();
}

}  // namespace

TEST_CASE("imaginary part equals pi times the delta-rate integral") {
  oracles::Rng rng(21);
  PhysicalParams params = unit_params();
  params.f = FormFactor::gaussian(2.0);
  const DispersionModel model{RadiativeDispersion{1.0}};
  const MomentumGrid grid = make_grid(1, 1.0, 32);
  ReservoirSpec res{1.3, DensityField(grid), model};
  for (auto& v : res.occupation.values) v = rng.uniform();

  const double sigma = 0.05;
  const Susceptibility s = susceptibility(grid, res, params, sigma, 0.05);
  for (std::size_t i = 0; i < grid.node_count(); ++i) {
    const double expected =
        direct_delta_rate(grid, i, res.occupation, res.beta, model, params, sigma);
    CHECK(s.minus[i].imag() == doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("twice the total imaginary part is the linear loss rate of a cell") {
  const PhysicalParams params = unit_params();
  const DispersionModel model{RadiativeDispersion{1.0}};
  const MomentumGrid grid = make_grid(1, 2.0, 48);
  const double sigma = 0.04;

  ReservoirSpec res{1.0, DensityField(grid), model};
  const Susceptibility s = susceptibility(grid, res, params, sigma, sigma);

  CollisionKernel kernel(grid, model, params, sigma);
  for (std::size_t cell : {std::size_t{10}, std::size_t{24}, std::size_t{40}}) {
    DensityField n(grid);
    n[cell] = 1.0;
    const DensityField rhs = linear_rhs(n, res.occupation, res.beta, kernel);
    const double loss_rate = -rhs[cell] / n[cell];
    const double expected = 2.0 * (s.minus[cell].imag() + s.plus[cell].imag());
    CHECK(loss_rate == doctest::Approx(expected).epsilon(1e-3));
    CHECK(loss_rate == doctest::Approx(expected).epsilon(1e-10));
  }
}

TEST_CASE("zero-temperature limit removes the absorption susceptibility") {
  const PhysicalParams params = unit_params();
  const DispersionModel model{RadiativeDispersion{1.0}};
  const MomentumGrid grid = make_grid(1, 1.0, 16);
  ReservoirSpec res{std::numeric_limits<double>::infinity(), DensityField(grid), model};
  const Susceptibility s = susceptibility(grid, res, params, 0.05, 0.05);
  for (const auto& v : s.plus) {
    CHECK(v.real() == 0.0);
    CHECK(v.imag() == 0.0);
  }
}

TEST_CASE("off-shell support suppresses the imaginary part") {
  // gapped reservoir law far above every particle energy difference on the
  // grid: denominators stay near omega0, delta contributions are negligible
  const PhysicalParams params = unit_params();
  const DispersionModel gapped{PolaronDispersion{50.0}};
  const MomentumGrid grid = make_grid(1, 1.0, 16);
  ReservoirSpec res{1.0, DensityField(grid, 1.0), gapped};
  const double sigma = 0.05;
  const Susceptibility s = susceptibility(grid, res, params, sigma, sigma);
  for (std::size_t i = 0; i < grid.node_count(); ++i) {
    CHECK(std::abs(s.minus[i].imag()) < 1e-200);
    CHECK(std::abs(s.minus[i].real()) > 0.0);  // principal value survives
  }
}

TEST_CASE("regularization must be positive") {
  const PhysicalParams params = unit_params();
  const DispersionModel model{RadiativeDispersion{1.0}};
  const MomentumGrid grid = make_grid(1, 1.0, 16);
  ReservoirSpec res{1.0, DensityField(grid), model};
  CHECK_THROWS_AS(susceptibility(grid, res, params, 0.05, 0.0), InvalidConfiguration);
}
