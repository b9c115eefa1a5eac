#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>

#include "condkin/dispersion.hpp"
#include "condkin/errors.hpp"
#include "oracles.hpp"

using namespace condkin;

TEST_CASE("particle kinetic energy") {
  CHECK(epsilon(Vec3(0, 0, 0), 1.0) == 0.0);
  CHECK(epsilon(Vec3(2, 0, 0), 1.0) == doctest::Approx(2.0));
  const Vec3 p(0.3, -1.2, 0.7);
  CHECK(epsilon(p, 2.5) == doctest::Approx(epsilon(-p, 2.5)));
  CHECK_THROWS_AS(epsilon(p, 0.0), InvalidConfiguration);
}

TEST_CASE("excitation law of the interacting gas") {
  PhysicalParams params;
  params.mass = 1.0;
  params.gamma = 1.0;
  params.g = InteractionKernel::constant(1.0);

  CHECK(bogoliubov_dispersion(Vec3(0, 0, 0), params) == 0.0);
  // omega = 0.5 at |p| = 1: sqrt(0.25 + 1.0)
  CHECK(bogoliubov_dispersion(Vec3(1, 0, 0), params) == doctest::Approx(std::sqrt(1.25)));

  // small-p slope tends to sqrt(gamma g(0) / m) = 1
  for (double p : {1e-3, 1e-4}) {
    const double slope = bogoliubov_dispersion(Vec3(p, 0, 0), params) / p;
    CHECK(slope == doctest::Approx(1.0).epsilon(1e-5));
  }
}

TEST_CASE("excitation law exceeds the particle energy for repulsive coupling") {
  PhysicalParams params;
  params.gamma = 0.8;
  params.g = InteractionKernel::gaussian(2.0, 1.5);
  oracles::Rng rng(7);
  for (int i = 0; i < 200; ++i) {
    const Vec3 p(rng.uniform(-3, 3), rng.uniform(-3, 3), rng.uniform(-3, 3));
    const double e = bogoliubov_dispersion(p, params);
    CHECK(e >= 0.0);
    CHECK(e >= epsilon(p, params.mass) - 1e-12);
  }
}

TEST_CASE("energy difference of a transition") {
  const DispersionModel radiative{RadiativeDispersion{1.0}};
  CHECK(energy_difference(Vec3(0.5, 0, 0), Vec3(0.2, 0, 0), radiative, 1.0) ==
        doctest::Approx(0.12));

  const DispersionModel polaron{PolaronDispersion{2.0}};
  CHECK(energy_difference(Vec3(1, 0, 0), Vec3(1, 0, 0), polaron, 1.0) == doctest::Approx(1.5));

  // k = 0 is the identity transition for any law with E(0) = 0
  for (const DispersionModel& m : {radiative, DispersionModel{FreeDispersion{1.0}}})
    CHECK(energy_difference(Vec3(0.7, -0.2, 0.1), Vec3(0, 0, 0), m, 1.0) == doctest::Approx(0.0));
}

TEST_CASE("free-model energy difference is an algebraic identity") {
  const double mass = 1.7;
  const DispersionModel free_model{FreeDispersion{mass}};
  oracles::Rng rng(11);
  for (int i = 0; i < 100; ++i) {
    const Vec3 p(rng.uniform(-2, 2), rng.uniform(-2, 2), 0.0);
    const Vec3 k(rng.uniform(-2, 2), rng.uniform(-2, 2), 0.0);
    const double expected = epsilon(k, mass) + (k.norm2() - 2.0 * p.dot(k)) / (2.0 * mass);
    CHECK(energy_difference(p, k, free_model, mass) == doctest::Approx(expected).epsilon(1e-14));
  }
}

TEST_CASE("sound speed") {
  CHECK(sound_speed(DispersionModel{RadiativeDispersion{2.0}}) == doctest::Approx(2.0));

  PhysicalParams params;
  params.gamma = 1.0;
  params.g = InteractionKernel::constant(1.0);
  const DispersionModel bulk{BogoliubovBulkDispersion{1.0, 1.0, InteractionKernel::constant(1.0)}};
  CHECK(sound_speed(bulk) == doctest::Approx(1.0).epsilon(1e-6));

  CHECK_THROWS_AS(sound_speed(DispersionModel{PolaronDispersion{2.0}}), NoSoundSpeed);
  CHECK_THROWS_AS(sound_speed(DispersionModel{FreeDispersion{1.0}}), NoSoundSpeed);
}

TEST_CASE("interaction kernel families are even with positive g(0)") {
  const InteractionKernel c = InteractionKernel::constant(0.7);
  CHECK(c(1.3) == doctest::Approx(0.7));
  CHECK(c.at_zero() == doctest::Approx(0.7));
  const InteractionKernel g = InteractionKernel::gaussian(2.0, 1.5);
  CHECK(g(0.0) == doctest::Approx(2.0));
  CHECK(g(Vec3(1, 0, 0)) == g(Vec3(-1, 0, 0)));
  CHECK(g(1.0) == doctest::Approx(2.0 * std::exp(-1.0 / 2.25)));
}

TEST_CASE("form factor families") {
  const FormFactor c = FormFactor::constant(2.0);
  CHECK(c.squared_modulus(Vec3(1, 0, 0), Vec3(0, 1, 0)) == doctest::Approx(4.0));
  const FormFactor g = FormFactor::gaussian(2.0);
  const Vec3 k(1, 0, 0), p(0, 1, 0);
  CHECK(g.squared_modulus(k, p) == doctest::Approx(std::exp(-(1.0 + 1.0) / 4.0)));
  CHECK(std::abs(g(k, p)) == doctest::Approx(std::sqrt(g.squared_modulus(k, p))));
  CHECK(g.max_squared_modulus() == doctest::Approx(1.0));
}

TEST_CASE("physical parameter invariants") {
  PhysicalParams ok;
  CHECK_NOTHROW(validate_params(ok));
  PhysicalParams bad_mass = ok;
  bad_mass.mass = 0.0;
  CHECK_THROWS_AS(validate_params(bad_mass), InvalidConfiguration);
  PhysicalParams bad_g = ok;
  bad_g.gamma = 1.0;
  bad_g.g = InteractionKernel::constant(0.0);
  CHECK_THROWS_AS(validate_params(bad_g), InvalidConfiguration);
}

TEST_CASE("tabulated model: CSV loading and interpolation") {
  const char* path = "test_dispersion_table.csv";
  {
    std::ofstream out(path);
    out << "# |k|, E\n0.0,0.0\n1.0,2.0\n2.0,3.0\n";
  }
  const TabulatedDispersion table = load_tabulated_csv(path);
  const DispersionModel model{table};
  CHECK(model(0.5) == doctest::Approx(1.0));
  CHECK(model(1.5) == doctest::Approx(2.5));
  CHECK(model(3.0) == doctest::Approx(4.0));  // boundary-segment extrapolation
  CHECK(sound_speed(model) == doctest::Approx(2.0));
  std::remove(path);

  {
    std::ofstream out(path);
    out << "0.0,0.0\n0.0,1.0\n";  // not strictly increasing
  }
  CHECK_THROWS_AS(load_tabulated_csv(path), InvalidConfiguration);
  {
    std::ofstream out(path);
    out << "0.0,0.0\n1.0,-2.0\n";  // negative energy
  }
  CHECK_THROWS_AS(load_tabulated_csv(path), InvalidConfiguration);
  std::remove(path);
  CHECK_THROWS_AS(load_tabulated_csv("missing_table.csv"), InvalidConfiguration);
}
