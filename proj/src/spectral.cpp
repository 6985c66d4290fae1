#include "skdv/spectral.hpp"

#include <unsupported/Eigen/FFT>

#include <cmath>
#include <sstream>

namespace skdv {

namespace {

Eigen::FFT<double>& fft_engine() {
  thread_local Eigen::FFT<double> fft;
  return fft;
}

} // namespace

GridPtr make_grid(int n, double box_length) {
  if (n % 2 != 0) throw ConfigError("n must be even");
  if (n < 8) throw ConfigError("n must be >= 8");
  if (!(box_length > 0.0) || !std::isfinite(box_length))
    throw ConfigError("box_length must be positive");
  auto g = std::make_shared<SpectralGrid>();
  g->n = n;
  g->box_length = box_length;
  g->dx = box_length / n;
  g->wavenumbers.resize(n);
  const double dxi = 2.0 * M_PI / box_length;
  for (int i = 0; i < n; ++i) g->wavenumbers[i] = dxi * g->mode(i);
  return g;
}

Arraycd forward_dft(const Arraycd& values) {
  const int n = static_cast<int>(values.size());
  Eigen::VectorXcd out(n);
  fft_engine().fwd(out, values.matrix().eval());
  return out.array() / double(n);
}

Arraycd inverse_dft(const Arraycd& coeffs) {
  const int n = static_cast<int>(coeffs.size());
  Eigen::VectorXcd out(n);
  fft_engine().inv(out, coeffs.matrix().eval());
  return out.array() * double(n);
}

Arraycd symmetrize_spectrum(const Arraycd& coeffs) {
  const int n = static_cast<int>(coeffs.size());
  Arraycd out = coeffs;
  out[0] = cdouble(coeffs[0].real(), 0.0);
  out[n / 2] = cdouble(coeffs[n / 2].real(), 0.0);
  for (int k = 1; k < n / 2; ++k) {
    const cdouble a = 0.5 * (coeffs[k] + std::conj(coeffs[n - k]));
    out[k] = a;
    out[n - k] = std::conj(a);
  }
  return out;
}

void require_same_grid(const SpectralGrid& a, const SpectralGrid& b, const char* where) {
  if (!a.same_as(b)) {
    std::ostringstream os;
    os << where << ": grid mismatch (n=" << a.n << ", L=" << a.box_length << " vs n=" << b.n
       << ", L=" << b.box_length << ")";
    throw ConfigError(os.str());
  }
}

// ---------------------------------------------------------------- fields

ComplexField::ComplexField(GridPtr grid, Arraycd values) : grid_(std::move(grid)) {
  if (values.size() != grid_->n) throw ConfigError("field size does not match grid");
  values_ = std::move(values);
  has_values_ = true;
}

ComplexField ComplexField::from_coeffs(GridPtr grid, Arraycd coeffs) {
  if (coeffs.size() != grid->n) throw ConfigError("field size does not match grid");
  ComplexField f;
  f.grid_ = std::move(grid);
  f.coeffs_ = std::move(coeffs);
  f.has_coeffs_ = true;
  return f;
}

ComplexField::ComplexField(const ComplexField& other) {
  std::lock_guard<std::mutex> g(other.lock_);
  grid_ = other.grid_;
  values_ = other.values_;
  coeffs_ = other.coeffs_;
  has_values_ = other.has_values_;
  has_coeffs_ = other.has_coeffs_;
}

ComplexField& ComplexField::operator=(const ComplexField& other) {
  if (this == &other) return *this;
  ComplexField tmp(other);
  grid_ = std::move(tmp.grid_);
  values_ = std::move(tmp.values_);
  coeffs_ = std::move(tmp.coeffs_);
  has_values_ = tmp.has_values_;
  has_coeffs_ = tmp.has_coeffs_;
  return *this;
}

const Arraycd& ComplexField::values() const {
  std::lock_guard<std::mutex> g(lock_);
  if (!has_values_) {
    values_ = inverse_dft(coeffs_);
    has_values_ = true;
  }
  return values_;
}

const Arraycd& ComplexField::coeffs() const {
  std::lock_guard<std::mutex> g(lock_);
  if (!has_coeffs_) {
    coeffs_ = forward_dft(values_);
    has_coeffs_ = true;
  }
  return coeffs_;
}

RealField::RealField(GridPtr grid, Arrayd values) : grid_(std::move(grid)) {
  if (values.size() != grid_->n) throw ConfigError("field size does not match grid");
  values_ = std::move(values);
  has_values_ = true;
}

RealField RealField::from_coeffs(GridPtr grid, const Arraycd& coeffs) {
  if (coeffs.size() != grid->n) throw ConfigError("field size does not match grid");
  RealField f;
  f.grid_ = std::move(grid);
  f.coeffs_ = symmetrize_spectrum(coeffs);
  f.has_coeffs_ = true;
  return f;
}

RealField::RealField(const RealField& other) {
  std::lock_guard<std::mutex> g(other.lock_);
  grid_ = other.grid_;
  values_ = other.values_;
  coeffs_ = other.coeffs_;
  has_values_ = other.has_values_;
  has_coeffs_ = other.has_coeffs_;
}

RealField& RealField::operator=(const RealField& other) {
  if (this == &other) return *this;
  RealField tmp(other);
  grid_ = std::move(tmp.grid_);
  values_ = std::move(tmp.values_);
  coeffs_ = std::move(tmp.coeffs_);
  has_values_ = tmp.has_values_;
  has_coeffs_ = tmp.has_coeffs_;
  return *this;
}

const Arrayd& RealField::values() const {
  std::lock_guard<std::mutex> g(lock_);
  if (!has_values_) {
    values_ = inverse_dft(coeffs_).real();
    has_values_ = true;
  }
  return values_;
}

const Arraycd& RealField::coeffs() const {
  std::lock_guard<std::mutex> g(lock_);
  if (!has_coeffs_) {
    coeffs_ = symmetrize_spectrum(forward_dft(values_.cast<cdouble>()));
    has_coeffs_ = true;
  }
  return coeffs_;
}

ComplexField RealField::as_complex() const {
  return ComplexField(grid_, values().cast<cdouble>());
}

// ------------------------------------------------------------ multipliers

Arraycd symbol_table(const SpectralGrid& grid, const ComplexSymbol& sigma) {
  const int n = grid.n;
  Arraycd table(n);
  for (int i = 0; i < n; ++i) {
    const double xi = grid.wavenumbers[i];
    cdouble v;
    if (i == n / 2) {
      v = 0.5 * (sigma(xi) + sigma(-xi)); // even part at the unpaired mode
    } else {
      v = sigma(xi);
    }
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      std::ostringstream os;
      os << "symbol is non-finite at xi = " << xi;
      throw NumericalDomainError(os.str());
    }
    table[i] = v;
  }
  return table;
}

ComplexField apply_table(const ComplexField& f, const Arraycd& table) {
  return ComplexField::from_coeffs(f.grid_ptr(), f.coeffs() * table);
}

RealField apply_table(const RealField& f, const Arraycd& table) {
  const int n = f.grid().n;
  const Arraycd& g = f.coeffs();
  Arraycd out(n);
  out[0] = cdouble((table[0] * g[0]).real(), 0.0);
  out[n / 2] = cdouble((table[n / 2] * g[n / 2]).real(), 0.0);
  for (int k = 1; k < n / 2; ++k) {
    out[k] = table[k] * g[k];
    out[n - k] = std::conj(out[k]);
  }
  return RealField::from_coeffs(f.grid_ptr(), out);
}

namespace {

template <class Field>
Field apply_real_symbol(const Field& f, const RealSymbol& sigma) {
  auto table = symbol_table(f.grid(), [&](double xi) { return cdouble(sigma(xi), 0.0); });
  return apply_table(f, table);
}

ComplexSymbol derivative_symbol() {
  return [](double xi) { return cdouble(0.0, xi); };
}

RealSymbol d_op_symbol(double a) {
  return [a](double xi) { return xi == 0.0 ? 0.0 : std::pow(std::abs(xi), a); };
}

RealSymbol bessel_symbol(double s) {
  return [s](double xi) { return std::pow(1.0 + xi * xi, 0.5 * s); };
}

} // namespace

ComplexField apply_multiplier(const ComplexField& f, const RealSymbol& sigma) {
  return apply_real_symbol(f, sigma);
}
RealField apply_multiplier(const RealField& f, const RealSymbol& sigma) {
  return apply_real_symbol(f, sigma);
}

ComplexField derivative(const ComplexField& f) {
  return apply_table(f, symbol_table(f.grid(), derivative_symbol()));
}
RealField derivative(const RealField& f) {
  return apply_table(f, symbol_table(f.grid(), derivative_symbol()));
}
ComplexField d_op(const ComplexField& f, double a) { return apply_multiplier(f, d_op_symbol(a)); }
RealField d_op(const RealField& f, double a) { return apply_multiplier(f, d_op_symbol(a)); }
ComplexField bessel(const ComplexField& f, double s) {
  return apply_multiplier(f, bessel_symbol(s));
}
RealField bessel(const RealField& f, double s) { return apply_multiplier(f, bessel_symbol(s)); }

// ------------------------------------------------------------- I operator

void IParams::validate() const {
  if (!(N >= 1.0) || !std::isfinite(N)) throw ConfigError("IParams.N must be >= 1");
  if (!(s > 0.0) || !(s <= 1.0)) throw ConfigError("IParams.s must lie in (0, 1]");
}

double i_multiplier(double xi, const IParams& p) {
  const double a = std::abs(xi);
  if (a <= p.N || p.s == 1.0) return 1.0;
  const double c = 1.0 - p.s;
  if (a >= 2.0 * p.N) return std::pow(p.N / a, c);
  // log-log cubic Hermite: y(t) = -c log2 * t^2 (2 - t), t = log2(|xi|/N),
  // matching value and slope of both outer branches.
  const double t = std::log2(a / p.N);
  const double y = -c * M_LN2 * t * t * (2.0 - t);
  return std::exp(y);
}

ComplexField apply_I(const ComplexField& f, const IParams& p) {
  p.validate();
  if (p.s == 1.0) return f; // multiplier is identically one
  return apply_multiplier(f, [&p](double xi) { return i_multiplier(xi, p); });
}

RealField apply_I(const RealField& f, const IParams& p) {
  p.validate();
  if (p.s == 1.0) return f;
  return apply_multiplier(f, [&p](double xi) { return i_multiplier(xi, p); });
}

// ------------------------------------------------------- bilinear operator

namespace {

Arraycd bilinear_diff_core(const SpectralGrid& grid, const Arraycd& F, const Arraycd& G,
                           double a) {
  const int n = grid.n;
  Arraycd out = Arraycd::Zero(n);
  const double dxi = 2.0 * M_PI / grid.box_length;
  for (int i1 = 0; i1 < n; ++i1) {
    const int k1 = grid.mode(i1);
    const cdouble f1 = F[i1];
    if (f1 == cdouble(0.0, 0.0)) continue;
    for (int i2 = 0; i2 < n; ++i2) {
      const int k2 = grid.mode(i2);
      const int k = k1 + k2;
      if (k < -n / 2 || k > n / 2 - 1) continue; // true sum leaves resolved band
      const double w = std::pow(std::abs(double(k1 - k2)) * dxi, a);
      out[grid.index_of(k)] += w * f1 * G[i2];
    }
  }
  return out;
}

} // namespace

ComplexField bilinear_diff_multiplier(const ComplexField& f, const ComplexField& g, double a) {
  require_same_grid(f.grid(), g.grid(), "bilinear_diff_multiplier");
  return ComplexField::from_coeffs(f.grid_ptr(),
                                   bilinear_diff_core(f.grid(), f.coeffs(), g.coeffs(), a));
}

ComplexField bilinear_diff_multiplier(const RealField& f, const RealField& g, double a) {
  require_same_grid(f.grid(), g.grid(), "bilinear_diff_multiplier");
  return ComplexField::from_coeffs(f.grid_ptr(),
                                   bilinear_diff_core(f.grid(), f.coeffs(), g.coeffs(), a));
}

// -------------------------------------------------------------- dealiasing

Arrayd dealias_mask(const SpectralGrid& grid) {
  Arrayd mask(grid.n);
  for (int i = 0; i < grid.n; ++i) {
    const int k = grid.mode(i);
    mask[i] = (3 * std::abs(k) < grid.n && k != -grid.n / 2) ? 1.0 : 0.0;
  }
  return mask;
}

ComplexField dealias(const ComplexField& f) {
  return ComplexField::from_coeffs(f.grid_ptr(), f.coeffs() * dealias_mask(f.grid()));
}

RealField dealias(const RealField& f) {
  return RealField::from_coeffs(f.grid_ptr(), f.coeffs() * dealias_mask(f.grid()));
}

ComplexField dealiased_product(const ComplexField& a, const ComplexField& b) {
  require_same_grid(a.grid(), b.grid(), "dealiased_product");
  return dealias(ComplexField(a.grid_ptr(), a.values() * b.values()));
}

RealField dealiased_product(const RealField& a, const RealField& b) {
  require_same_grid(a.grid(), b.grid(), "dealiased_product");
  return dealias(RealField(a.grid_ptr(), a.values() * b.values()));
}

} // namespace skdv
