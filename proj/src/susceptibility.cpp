#include <cmath>

#include "condkin/errors.hpp"
#include "condkin/kinetics.hpp"
#include "condkin/parallel.hpp"

namespace condkin {

namespace {
// -i0 prescription: 1/(x - i0) ~ x/(x^2 + eps^2) + i pi delta_sigma(x)
inline std::complex<double> regularized_inverse(double x, double eps, double sigma) {
  return {x / (x * x + eps * eps), M_PI * mollified_delta(x, sigma)};
}
}  // namespace

Susceptibility susceptibility(const MomentumGrid& grid, const ReservoirSpec& reservoir,
                              const PhysicalParams& params, double sigma_e, double epsilon_reg) {
  if (!(epsilon_reg > 0.0))
    throw InvalidConfiguration("kinetics", "principal-value regularization must be positive");
  if (!reservoir.occupation.grid.same_as(grid))
    throw InvalidConfiguration("kinetics", "reservoir occupation grid does not match");

  CollisionKernel kernel(grid, reservoir.dispersion, params, sigma_e,
                         CollisionKernel::Storage::on_the_fly);
  const OffsetTable& offsets = kernel.offsets();
  const auto absorb = kernel.absorption_weights(reservoir.beta);
  const auto emit = kernel.emission_weights(reservoir.beta);
  const double cell = grid.cell_volume();
  const DensityField& occupation = reservoir.occupation;

  Susceptibility out;
  out.minus.resize(grid.node_count());
  out.plus.resize(grid.node_count());

  detail::parallel_for(grid.node_count(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const auto multi = grid.unflatten(i);
      const Vec3 q = grid.node(i);
      std::complex<double> minus{0.0, 0.0};
      std::complex<double> plus{0.0, 0.0};
      for (std::size_t o = 0; o < offsets.size(); ++o) {
        const auto& m = offsets.offset(o);
        const std::ptrdiff_t shift = kernel.flat_shift(o);

        // emission channel p -> p-k: weight (N(p-k)+1)(1 + n+(k))
        const std::array<int, 3> back{multi[0] - m[0], multi[1] - m[1], multi[2] - m[2]};
        if (grid.in_range(back)) {
          const std::size_t j = i - static_cast<std::size_t>(shift);
          const double arg =
              kernel.offset_energy(o) + kernel.node_epsilon(j) - kernel.node_epsilon(i);
          const double f2 = params.f.squared_modulus(offsets.momentum(o), q);
          minus += f2 * (occupation[j] + 1.0) * emit[o] *
                   regularized_inverse(arg, epsilon_reg, sigma_e);
        }

        // absorption channel p -> p+k: weight (N(p+k)+1) n+(k)
        const std::array<int, 3> fwd{multi[0] + m[0], multi[1] + m[1], multi[2] + m[2]};
        if (grid.in_range(fwd)) {
          const std::size_t j = i + static_cast<std::size_t>(shift);
          const double arg =
              kernel.offset_energy(o) + kernel.node_epsilon(i) - kernel.node_epsilon(j);
          const double f2 = params.f.squared_modulus(offsets.momentum(o), grid.node(j));
          plus += f2 * (occupation[j] + 1.0) * absorb[o] *
                  regularized_inverse(arg, epsilon_reg, sigma_e);
        }
      }
      out.minus[i] = minus * cell;
      out.plus[i] = plus * cell;
    }
  });
  return out;
}

}  // namespace condkin
