#ifndef SKDV_SPACETIME_HPP
#define SKDV_SPACETIME_HPP

#include <cstdint>
#include <memory>
#include <mutex>
#include <vector>

#include "skdv/spectral.hpp"

namespace skdv {

using Matrixcd = Eigen::MatrixXcd;

/// Space-time torus: the spatial grid crossed with a periodic time direction
/// of length T, modulation frequencies tau_j = 2 pi j / T in transform order.
struct SpaceTimeGrid {
  SpectralGrid space;
  int n_t = 0;
  double t_length = 0.0;
  double dt = 0.0;
  Arrayd taus;

  int mode_t(int j) const { return j < n_t / 2 ? j : j - n_t; }
  int index_of_t(int m) const { return m >= 0 ? m : m + n_t; }
  bool same_as(const SpaceTimeGrid& o) const {
    return space.same_as(o.space) && n_t == o.n_t && t_length == o.t_length;
  }
};

using StGridPtr = std::shared_ptr<const SpaceTimeGrid>;

StGridPtr make_spacetime_grid(int n, double box_length, int n_t, double t_length);

/// Which free dispersion the field is associated with; selects the weight of
/// its space-time norm and the surface its ensembles concentrate on.
enum class Dispersion { schrodinger, airy, none };

/// Complex samples on the space-time torus (rows = space, cols = time), with
/// the 2D spectrum cached lazily. Convention:
///   f(x_j, t_m) = sum_{k,l} fhat_{k,l} e^{i (xi_k x_j + tau_l t_m)}.
class SpaceTimeField {
public:
  SpaceTimeField(StGridPtr grid, Matrixcd values, Dispersion tag);
  static SpaceTimeField from_coeffs(StGridPtr grid, Matrixcd coeffs, Dispersion tag);

  SpaceTimeField(const SpaceTimeField& other);
  SpaceTimeField& operator=(const SpaceTimeField& other);

  const SpaceTimeGrid& grid() const { return *grid_; }
  const StGridPtr& grid_ptr() const { return grid_; }
  Dispersion tag() const { return tag_; }
  SpaceTimeField with_tag(Dispersion t) const;
  const Matrixcd& values() const;
  const Matrixcd& coeffs() const;

private:
  SpaceTimeField() = default;
  StGridPtr grid_;
  Dispersion tag_ = Dispersion::none;
  mutable Matrixcd values_, coeffs_;
  mutable bool has_values_ = false, has_coeffs_ = false;
  mutable std::mutex lock_;
};

struct XsbParams {
  double s = 0.0;
  double b = 0.0;
  double epsilon = 0.01; // resolution of the +/- in exponents
  void validate() const;
};

/// || <xi>^s <tau + xi^2>^b fhat ||_{l^2} under the L*T Parseval convention.
/// Requires the schrodinger dispersion tag.
double xsb_norm(const SpaceTimeField& f, const XsbParams& p);

/// Same with weight <tau + xi^3>^b; requires the airy tag.
double ysb_norm(const SpaceTimeField& f, const XsbParams& p);

/// Plain space-time L^2 norm (any tag).
double l2_norm(const SpaceTimeField& f);

/// Pointwise product; the result carries the requested tag.
SpaceTimeField product(const SpaceTimeField& a, const SpaceTimeField& b, Dispersion tag);
SpaceTimeField conjugate(const SpaceTimeField& f);

/// Spatial operators acting mode-wise across all modulations.
SpaceTimeField st_derivative(const SpaceTimeField& f);
SpaceTimeField st_d_op(const SpaceTimeField& f, double a);

/// Band specification for random ensembles: spatial modes with
/// xi_min <= |xi| <= xi_max and modulations |tau| <= tau_max.
struct EnsembleSpec {
  double xi_min = 0.0;
  double xi_max = 0.0;
  double tau_max = 0.0;
  double concentration = 0.0; // damping <tau - surface>^{-concentration}
  Dispersion tag = Dispersion::none;
};

/// Fields with independent unit-normal coefficients inside the band, damped
/// around the dispersion surface (tau = -xi^2 for schrodinger, tau = xi^3 for
/// airy). Deterministic for a fixed seed.
std::vector<SpaceTimeField> random_ensemble(const StGridPtr& grid, const EnsembleSpec& spec,
                                            int count, std::uint64_t seed);

/// Difference-frequency bilinear operator:
///   hhat(xi, tau) = sum_{xi1+xi2=xi, tau1+tau2=tau} |xi1 - xi2|^a
///                   fhat(xi1, tau1) ghat(xi2, tau2),
/// computed by a direct double sum in xi (pairs leaving the resolved spatial
/// band are dropped) and pointwise in physical time after transforming the
/// time axis first, which realizes the tau convolution.
SpaceTimeField bilinear_diff_spacetime(const SpaceTimeField& f, const SpaceTimeField& g,
                                       double a, Dispersion tag);

} // namespace skdv

#endif
