#ifndef SKDV_SPECTRAL_HPP
#define SKDV_SPECTRAL_HPP

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <memory>
#include <mutex>

#include "skdv/errors.hpp"

namespace skdv {

using Arrayd = Eigen::ArrayXd;
using Arraycd = Eigen::ArrayXcd;
using cdouble = std::complex<double>;

/// Periodic box discretization. Wavenumbers are stored in transform order
/// (k = 0, 1, ..., n/2-1, -n/2, ..., -1) with xi_k = 2*pi*k / box_length.
struct SpectralGrid {
  int n = 0;
  double box_length = 0.0;
  double dx = 0.0;
  Arrayd wavenumbers;

  /// Integer mode number at storage index i.
  int mode(int i) const { return i < n / 2 ? i : i - n; }
  /// Storage index of integer mode k in [-n/2, n/2-1].
  int index_of(int k) const { return k >= 0 ? k : k + n; }
  bool same_as(const SpectralGrid& o) const {
    return n == o.n && box_length == o.box_length;
  }
};

using GridPtr = std::shared_ptr<const SpectralGrid>;

GridPtr make_grid(int n, double box_length);

/// Forward transform under the convention f(x_j) = sum_k fhat_k e^{i xi_k x_j};
/// returns coefficients fhat (DFT of values scaled by 1/n).
Arraycd forward_dft(const Arraycd& values);
/// Inverse of forward_dft.
Arraycd inverse_dft(const Arraycd& coeffs);

/// Enforce conjugate symmetry fhat_{-k} = conj(fhat_k) exactly, by averaging
/// the two halves; DC and the unpaired Nyquist mode keep only real parts.
Arraycd symmetrize_spectrum(const Arraycd& coeffs);

/// Complex field on a periodic grid. Physical samples and spectral
/// coefficients are two views of the same value; whichever is missing is
/// computed lazily and cached. Immutable after construction.
class ComplexField {
public:
  ComplexField(GridPtr grid, Arraycd values);
  static ComplexField from_coeffs(GridPtr grid, Arraycd coeffs);

  ComplexField(const ComplexField& other);
  ComplexField& operator=(const ComplexField& other);

  const SpectralGrid& grid() const { return *grid_; }
  const GridPtr& grid_ptr() const { return grid_; }
  const Arraycd& values() const;
  const Arraycd& coeffs() const;

private:
  ComplexField() = default;
  GridPtr grid_;
  mutable Arraycd values_, coeffs_;
  mutable bool has_values_ = false, has_coeffs_ = false;
  mutable std::mutex lock_;
};

/// Real field: same dual representation, with the spectrum kept exactly
/// conjugate-symmetric and physical samples stored as doubles.
class RealField {
public:
  RealField(GridPtr grid, Arrayd values);
  /// Projects the given spectrum onto its conjugate-symmetric part.
  static RealField from_coeffs(GridPtr grid, const Arraycd& coeffs);

  RealField(const RealField& other);
  RealField& operator=(const RealField& other);

  const SpectralGrid& grid() const { return *grid_; }
  const GridPtr& grid_ptr() const { return grid_; }
  const Arrayd& values() const;
  const Arraycd& coeffs() const;

  /// View of the samples as a complex array (imaginary part zero).
  ComplexField as_complex() const;

private:
  RealField() = default;
  GridPtr grid_;
  mutable Arrayd values_;
  mutable Arraycd coeffs_;
  mutable bool has_values_ = false, has_coeffs_ = false;
  mutable std::mutex lock_;
};

using RealSymbol = std::function<double(double)>;
using ComplexSymbol = std::function<cdouble(double)>;

/// Evaluate a symbol on the grid wavenumbers. The unpaired Nyquist mode gets
/// the even part (sigma(xi) + sigma(-xi))/2, which zeroes odd symbols there.
/// Throws NumericalDomainError if the symbol is non-finite at some mode.
Arraycd symbol_table(const SpectralGrid& grid, const ComplexSymbol& sigma);

ComplexField apply_table(const ComplexField& f, const Arraycd& table);
RealField apply_table(const RealField& f, const Arraycd& table);

ComplexField apply_multiplier(const ComplexField& f, const RealSymbol& sigma);
RealField apply_multiplier(const RealField& f, const RealSymbol& sigma);

ComplexField derivative(const ComplexField& f); // sigma = i xi
RealField derivative(const RealField& f);
ComplexField d_op(const ComplexField& f, double a); // sigma = |xi|^a, 0 at xi=0
RealField d_op(const RealField& f, double a);
ComplexField bessel(const ComplexField& f, double s); // sigma = <xi>^s
RealField bessel(const RealField& f, double s);

/// Parameters of the smoothing multiplier m_N: frequency cutoff N >= 1 and
/// target regularity s in (0, 1].
struct IParams {
  double N = 1.0;
  double s = 1.0;
  void validate() const;
};

/// The smoothing symbol: 1 on |xi| <= N, (N/|xi|)^{1-s} on |xi| >= 2N, and a
/// C^1 monotone log-log cubic Hermite blend on (N, 2N). Even, continuous,
/// nonincreasing in |xi|, with values in (0, 1].
double i_multiplier(double xi, const IParams& p);

ComplexField apply_I(const ComplexField& f, const IParams& p);
RealField apply_I(const RealField& f, const IParams& p);

/// hhat(xi) = sum_{xi1+xi2=xi} |xi1-xi2|^a fhat(xi1) ghat(xi2), by direct
/// double summation over modes. Pairs whose true sum leaves the resolved
/// band are dropped (no aliasing across the Nyquist boundary).
ComplexField bilinear_diff_multiplier(const ComplexField& f, const ComplexField& g, double a);
ComplexField bilinear_diff_multiplier(const RealField& f, const RealField& g, double a);

/// Two-thirds-rule mask: 1 on modes with 3|k| < n, 0 elsewhere (the unpaired
/// Nyquist mode is always zeroed).
Arrayd dealias_mask(const SpectralGrid& grid);

ComplexField dealias(const ComplexField& f);
RealField dealias(const RealField& f);

/// Pointwise products with the 2/3-rule mask applied to the product spectrum.
ComplexField dealiased_product(const ComplexField& a, const ComplexField& b);
RealField dealiased_product(const RealField& a, const RealField& b);

void require_same_grid(const SpectralGrid& a, const SpectralGrid& b, const char* where);

} // namespace skdv

#endif
