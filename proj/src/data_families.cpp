#include "skdv/data_families.hpp"

#include <cmath>

#include "skdv/rng.hpp"

namespace skdv {

namespace {

Arrayd grid_points(const SpectralGrid& g) {
  Arrayd x(g.n);
  for (int i = 0; i < g.n; ++i) x[i] = i * g.dx;
  return x;
}

// power-law noise inside the dealiased band; Hermitian when real is requested
Arraycd rough_noise(const SpectralGrid& g, double s, double amplitude, NormalSampler& normal,
                    bool real) {
  Arraycd coeffs = Arraycd::Zero(g.n);
  const Arrayd mask = dealias_mask(g);
  for (int i = 0; i < g.n; ++i) {
    if (mask[i] == 0.0) continue;
    const double xi = g.wavenumbers[i];
    const double w = std::pow(1.0 + xi * xi, -0.5 * (s + 0.51));
    coeffs[i] = amplitude * w * cdouble(normal(), normal());
  }
  if (real) coeffs = symmetrize_spectrum(coeffs);
  return coeffs;
}

} // namespace

State make_initial_state(const GridPtr& grid, const DataFamily& f) {
  const SpectralGrid& g = *grid;
  const double x0 = f.x0 >= 0.0 ? f.x0 : 0.5 * g.box_length;
  const Arrayd x = grid_points(g);

  Arraycd u = Arraycd::Zero(g.n);
  Arrayd v = Arrayd::Zero(g.n);

  if (f.id == "zero") {
    // all zero
  } else if (f.id == "gaussian") {
    for (int i = 0; i < g.n; ++i) {
      const double env = f.amplitude * std::exp(-std::pow((x[i] - x0) / f.width, 2));
      u[i] = env * std::exp(cdouble(0.0, f.k0 * x[i]));
      v[i] = env;
    }
  } else if (f.id == "plane_wave") {
    for (int i = 0; i < g.n; ++i) u[i] = f.amplitude * std::exp(cdouble(0.0, f.k0 * x[i]));
  } else if (f.id == "kdv_soliton") {
    for (int i = 0; i < g.n; ++i) v[i] = kdv_soliton_value(x[i], 0.0, f.c, x0, g.box_length);
  } else if (f.id == "rough_bump") {
    NormalSampler normal(f.seed);
    for (int i = 0; i < g.n; ++i) {
      // the carrier rides on u only: a v carrier at k0 would oscillate at
      // k0^3 in time, far too stiff for the coupling terms to sample
      const double env = f.amplitude / std::cosh((x[i] - x0) / f.width);
      u[i] = env * std::exp(cdouble(0.0, f.k0 * x[i]));
      v[i] = env;
    }
    const double na = f.noise * f.amplitude / std::sqrt(g.box_length);
    u += inverse_dft(rough_noise(g, f.s, na, normal, false));
    v += inverse_dft(rough_noise(g, f.s, na, normal, true)).real();
  } else {
    throw ConfigError("unknown data family: " + f.id);
  }

  return State{0.0, ComplexField(grid, std::move(u)), RealField(grid, std::move(v))};
}

} // namespace skdv
