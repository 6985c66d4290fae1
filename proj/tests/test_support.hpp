#ifndef SKDV_TEST_SUPPORT_HPP
#define SKDV_TEST_SUPPORT_HPP

#include <complex>

#include "skdv/rng.hpp"
#include "skdv/spectral.hpp"

namespace skdv::test {

/// Random physical samples (white), unpaired Nyquist mode cleared so the
/// field plays well with odd-symbol multipliers and the free groups.
inline ComplexField random_complex_field(const GridPtr& grid, std::uint64_t seed) {
  NormalSampler normal(seed);
  Arraycd values(grid->n);
  for (int i = 0; i < grid->n; ++i) values[i] = cdouble(normal(), normal());
  Arraycd coeffs = forward_dft(values);
  coeffs[grid->n / 2] = 0.0;
  return ComplexField::from_coeffs(grid, std::move(coeffs));
}

inline RealField random_real_field(const GridPtr& grid, std::uint64_t seed) {
  NormalSampler normal(seed);
  Arrayd values(grid->n);
  for (int i = 0; i < grid->n; ++i) values[i] = normal();
  Arraycd coeffs = forward_dft(values.cast<cdouble>());
  coeffs[grid->n / 2] = 0.0;
  return RealField::from_coeffs(grid, coeffs);
}

/// Single spectral mode e^{i xi_k x} with unit coefficient.
inline ComplexField mode_field(const GridPtr& grid, int k) {
  Arraycd coeffs = Arraycd::Zero(grid->n);
  coeffs[grid->index_of(k)] = 1.0;
  return ComplexField::from_coeffs(grid, std::move(coeffs));
}

/// Random field band-limited to |k| <= kmax (integer modes), decaying tail.
inline ComplexField band_limited_complex(const GridPtr& grid, int kmax, std::uint64_t seed) {
  NormalSampler normal(seed);
  Arraycd coeffs = Arraycd::Zero(grid->n);
  for (int k = -kmax; k <= kmax; ++k)
    coeffs[grid->index_of(k)] = cdouble(normal(), normal()) / (1.0 + std::abs(k));
  return ComplexField::from_coeffs(grid, std::move(coeffs));
}

inline RealField band_limited_real(const GridPtr& grid, int kmax, std::uint64_t seed) {
  NormalSampler normal(seed);
  Arraycd coeffs = Arraycd::Zero(grid->n);
  for (int k = -kmax; k <= kmax; ++k)
    coeffs[grid->index_of(k)] = cdouble(normal(), normal()) / (1.0 + std::abs(k));
  return RealField::from_coeffs(grid, coeffs);
}

/// Smooth random bump numerically supported in the central half of the box:
/// gaussian envelope of width L/12 times a low-order trig polynomial.
inline ComplexField random_bump_complex(const GridPtr& grid, std::uint64_t seed) {
  NormalSampler normal(seed);
  const double L = grid->box_length;
  Arraycd values(grid->n);
  const int modes = 6;
  std::vector<cdouble> amp(2 * modes + 1);
  for (auto& a : amp) a = cdouble(normal(), normal());
  for (int i = 0; i < grid->n; ++i) {
    const double x = i * grid->dx;
    cdouble osc(0.0, 0.0);
    for (int m = -modes; m <= modes; ++m)
      osc += amp[m + modes] * std::exp(cdouble(0.0, 2.0 * M_PI * m * x / L));
    const double env = std::exp(-std::pow((x - 0.5 * L) / (L / 12.0), 2));
    values[i] = env * osc;
  }
  return ComplexField(grid, std::move(values));
}

inline RealField random_bump_real(const GridPtr& grid, std::uint64_t seed) {
  const ComplexField c = random_bump_complex(grid, seed);
  return RealField(grid, c.values().real());
}

} // namespace skdv::test

#endif
