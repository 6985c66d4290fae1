#ifndef SKDV_DATA_FAMILIES_HPP
#define SKDV_DATA_FAMILIES_HPP

#include <cstdint>
#include <string>

#include "skdv/dynamics.hpp"

namespace skdv {

/// Parameters for the built-in initial-data families.
struct DataFamily {
  std::string id = "gaussian";  // zero | gaussian | plane_wave | kdv_soliton | rough_bump
  double amplitude = 0.5;
  double k0 = 1.0;     // carrier wavenumber (gaussian, plane_wave, rough_bump)
  double width = 4.0;  // envelope width (gaussian, rough_bump)
  double x0 = -1.0;    // center; negative -> mid-box
  double c = 1.0;      // soliton speed
  double noise = 0.1;  // rough_bump: relative noise amplitude
  double s = 0.7;      // rough_bump: noise spectrum decays like <xi>^{-s-0.51}
  std::uint64_t seed = 1;
};

/// Build (u0, v0) at t = 0 on the given grid. The rough_bump family is a
/// sech profile (complex carrier for u, plain for v) plus seeded noise with
/// spectrum ~ <xi>^{-s-1/2-0.01}, confined to the dealiased band so every
/// mode participates in the dynamics.
State make_initial_state(const GridPtr& grid, const DataFamily& f);

} // namespace skdv

#endif
