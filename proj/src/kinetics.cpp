#include <cmath>

#include "condkin/errors.hpp"
#include "condkin/kinetics.hpp"
#include "condkin/parallel.hpp"

namespace condkin {

namespace {

enum class Bracket { reservoir, identified, quadratic };

// Shared assembly of both master-equation forms. For node q and transfer k:
//   branch 1:  w(q, k) * [ n(q-k)(N(q)+s) A(k) - n(q)(N(q-k)+s) Em(k) ]
//   branch 2: -w(q+k, k) * [ n(q)(N(q+k)+s) A(k) - n(q+k)(N(q)+s) Em(k) ]
// with s = 1 (reservoir) or s = 0 and N := n (identified). The quadratic
// bracket replaces both by -n(q) n(q-+k). Out-of-box transfers are dropped.
DensityField assemble_rhs(const DensityField& n, const DensityField* occupation,
                          const std::vector<double>* absorb, const std::vector<double>* emit,
                          const CollisionKernel& kernel, Bracket bracket) {
  const MomentumGrid& grid = kernel.grid();
  if (!n.grid.same_as(grid))
    throw InvalidConfiguration("kinetics", "density grid does not match the kernel grid");
  if (occupation && !occupation->grid.same_as(grid))
    throw InvalidConfiguration("kinetics", "reservoir occupation grid does not match");

  const OffsetTable& offsets = kernel.offsets();
  const std::size_t n_off = offsets.size();
  const double cell = grid.cell_volume();
  const double plus = bracket == Bracket::reservoir ? 1.0 : 0.0;
  const double* nv = n.values.data();
  const double* Nv = bracket == Bracket::reservoir ? occupation->values.data()
                     : bracket == Bracket::identified ? nv
                                                      : nullptr;

  DensityField rhs(grid);
  double* out = rhs.values.data();

  detail::parallel_for(grid.node_count(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const auto multi = grid.unflatten(i);
      double acc = 0.0;
      for (std::size_t o = 0; o < n_off; ++o) {
        const auto& m = offsets.offset(o);
        const std::ptrdiff_t shift = kernel.flat_shift(o);

        const std::array<int, 3> back{multi[0] - m[0], multi[1] - m[1], multi[2] - m[2]};
        if (grid.in_range(back)) {
          const std::size_t j = i - static_cast<std::size_t>(shift);
          const double w = kernel.weight(i, o);
          if (w != 0.0) {
            if (bracket == Bracket::quadratic) {
              acc -= w * nv[i] * nv[j];
            } else {
              acc += w * (nv[j] * (Nv[i] + plus) * (*absorb)[o] -
                          nv[i] * (Nv[j] + plus) * (*emit)[o]);
            }
          }
        }

        const std::array<int, 3> fwd{multi[0] + m[0], multi[1] + m[1], multi[2] + m[2]};
        if (grid.in_range(fwd)) {
          const std::size_t j = i + static_cast<std::size_t>(shift);
          const double w = kernel.weight(j, o);
          if (w != 0.0) {
            if (bracket == Bracket::quadratic) {
              acc += w * nv[i] * nv[j];
            } else {
              acc -= w * (nv[i] * (Nv[j] + plus) * (*absorb)[o] -
                          nv[j] * (Nv[i] + plus) * (*emit)[o]);
            }
          }
        }
      }
      out[i] = acc * cell;
    }
  });
  return rhs;
}

}  // namespace

DensityField linear_rhs(const DensityField& n, const DensityField& occupation, double beta,
                        const CollisionKernel& kernel) {
  const auto absorb = kernel.absorption_weights(beta);
  const auto emit = kernel.emission_weights(beta);
  return assemble_rhs(n, &occupation, &absorb, &emit, kernel, Bracket::reservoir);
}

DensityField linear_rhs(const DensityField& n, const ReservoirSpec& reservoir,
                        const PhysicalParams& params, double sigma_e) {
  CollisionKernel kernel(n.grid, reservoir.dispersion, params, sigma_e);
  return linear_rhs(n, reservoir.occupation, reservoir.beta, kernel);
}

DensityField nonlinear_rhs(const DensityField& n, const CollisionKernel& kernel) {
  return assemble_rhs(n, nullptr, nullptr, nullptr, kernel, Bracket::quadratic);
}

DensityField nonlinear_rhs(const DensityField& n, const DispersionModel& dispersion,
                           const PhysicalParams& params, double sigma_e) {
  CollisionKernel kernel(n.grid, dispersion, params, sigma_e);
  return nonlinear_rhs(n, kernel);
}

DensityField identified_linear_rhs(const DensityField& n, double beta,
                                   const CollisionKernel& kernel) {
  const auto absorb = kernel.absorption_weights(beta);
  const auto emit = kernel.emission_weights(beta);
  return assemble_rhs(n, nullptr, &absorb, &emit, kernel, Bracket::identified);
}

std::function<DensityField(const DensityField&)> apply_identification(
    const ReservoirSpec& reservoir, const PhysicalParams& params, double sigma_e) {
  auto kernel = std::make_shared<CollisionKernel>(reservoir.occupation.grid, reservoir.dispersion,
                                                  params, sigma_e);
  const double beta = reservoir.beta;
  return [kernel, beta](const DensityField& n) {
    return identified_linear_rhs(n, beta, *kernel);
  };
}

}  // namespace condkin
