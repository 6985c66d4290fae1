#include "skdv/spacetime.hpp"

#include <unsupported/Eigen/FFT>

#include <cmath>

#include "skdv/rng.hpp"

namespace skdv {

namespace {

Eigen::FFT<double>& fft_engine() {
  thread_local Eigen::FFT<double> fft;
  return fft;
}

// forward along every column (axis 0), coefficients scaled by 1/rows
void fwd_columns(Matrixcd& m) {
  const int rows = static_cast<int>(m.rows());
  Eigen::VectorXcd out(rows);
  for (int c = 0; c < m.cols(); ++c) {
    fft_engine().fwd(out, m.col(c).eval());
    m.col(c) = out / double(rows);
  }
}

void inv_columns(Matrixcd& m) {
  const int rows = static_cast<int>(m.rows());
  Eigen::VectorXcd out(rows);
  for (int c = 0; c < m.cols(); ++c) {
    fft_engine().inv(out, m.col(c).eval());
    m.col(c) = out * double(rows);
  }
}

void fwd_rows(Matrixcd& m) {
  const int cols = static_cast<int>(m.cols());
  Eigen::VectorXcd out(cols);
  for (int r = 0; r < m.rows(); ++r) {
    fft_engine().fwd(out, Eigen::VectorXcd(m.row(r).transpose()));
    m.row(r) = out.transpose() / double(cols);
  }
}

void inv_rows(Matrixcd& m) {
  const int cols = static_cast<int>(m.cols());
  Eigen::VectorXcd out(cols);
  for (int r = 0; r < m.rows(); ++r) {
    fft_engine().inv(out, Eigen::VectorXcd(m.row(r).transpose()));
    m.row(r) = out.transpose() * double(cols);
  }
}

} // namespace

StGridPtr make_spacetime_grid(int n, double box_length, int n_t, double t_length) {
  if (n_t % 2 != 0) throw ConfigError("n_t must be even");
  if (n_t < 8) throw ConfigError("n_t must be >= 8");
  if (!(t_length > 0.0) || !std::isfinite(t_length))
    throw ConfigError("t_length must be positive");
  auto space = make_grid(n, box_length);
  auto g = std::make_shared<SpaceTimeGrid>();
  g->space = *space;
  g->n_t = n_t;
  g->t_length = t_length;
  g->dt = t_length / n_t;
  g->taus.resize(n_t);
  const double dtau = 2.0 * M_PI / t_length;
  for (int j = 0; j < n_t; ++j) g->taus[j] = dtau * g->mode_t(j);
  return g;
}

SpaceTimeField::SpaceTimeField(StGridPtr grid, Matrixcd values, Dispersion tag)
    : grid_(std::move(grid)), tag_(tag) {
  if (values.rows() != grid_->space.n || values.cols() != grid_->n_t)
    throw ConfigError("space-time field shape does not match grid");
  values_ = std::move(values);
  has_values_ = true;
}

SpaceTimeField SpaceTimeField::from_coeffs(StGridPtr grid, Matrixcd coeffs, Dispersion tag) {
  if (coeffs.rows() != grid->space.n || coeffs.cols() != grid->n_t)
    throw ConfigError("space-time field shape does not match grid");
  SpaceTimeField f;
  f.grid_ = std::move(grid);
  f.tag_ = tag;
  f.coeffs_ = std::move(coeffs);
  f.has_coeffs_ = true;
  return f;
}

SpaceTimeField::SpaceTimeField(const SpaceTimeField& other) {
  std::lock_guard<std::mutex> g(other.lock_);
  grid_ = other.grid_;
  tag_ = other.tag_;
  values_ = other.values_;
  coeffs_ = other.coeffs_;
  has_values_ = other.has_values_;
  has_coeffs_ = other.has_coeffs_;
}

SpaceTimeField& SpaceTimeField::operator=(const SpaceTimeField& other) {
  if (this == &other) return *this;
  SpaceTimeField tmp(other);
  grid_ = std::move(tmp.grid_);
  tag_ = tmp.tag_;
  values_ = std::move(tmp.values_);
  coeffs_ = std::move(tmp.coeffs_);
  has_values_ = tmp.has_values_;
  has_coeffs_ = tmp.has_coeffs_;
  return *this;
}

SpaceTimeField SpaceTimeField::with_tag(Dispersion t) const {
  SpaceTimeField f(*this);
  f.tag_ = t;
  return f;
}

const Matrixcd& SpaceTimeField::values() const {
  std::lock_guard<std::mutex> g(lock_);
  if (!has_values_) {
    values_ = coeffs_;
    inv_columns(values_);
    inv_rows(values_);
    has_values_ = true;
  }
  return values_;
}

const Matrixcd& SpaceTimeField::coeffs() const {
  std::lock_guard<std::mutex> g(lock_);
  if (!has_coeffs_) {
    coeffs_ = values_;
    fwd_columns(coeffs_);
    fwd_rows(coeffs_);
    has_coeffs_ = true;
  }
  return coeffs_;
}

void XsbParams::validate() const {
  if (!(epsilon > 0.0) || !(epsilon <= 0.1))
    throw ConfigError("XsbParams.epsilon must lie in (0, 0.1]");
  if (!std::isfinite(s) || !std::isfinite(b)) throw ConfigError("XsbParams must be finite");
}

namespace {

double weighted_norm(const SpaceTimeField& f, double s, double b, bool airy_weight) {
  const auto& g = f.grid();
  const auto& c = f.coeffs();
  double acc = 0.0;
  for (int i = 0; i < g.space.n; ++i) {
    const double xi = g.space.wavenumbers[i];
    const double sw = std::pow(1.0 + xi * xi, s); // <xi>^{2s}
    const double surf = airy_weight ? xi * xi * xi : xi * xi;
    for (int j = 0; j < g.n_t; ++j) {
      const double m = g.taus[j] + surf;
      acc += sw * std::pow(1.0 + m * m, b) * std::norm(c(i, j));
    }
  }
  return std::sqrt(g.space.box_length * g.t_length * acc);
}

} // namespace

double xsb_norm(const SpaceTimeField& f, const XsbParams& p) {
  p.validate();
  if (f.tag() != Dispersion::schrodinger)
    throw ConfigError("xsb_norm requires a schrodinger-tagged field");
  return weighted_norm(f, p.s, p.b, false);
}

double ysb_norm(const SpaceTimeField& f, const XsbParams& p) {
  p.validate();
  if (f.tag() != Dispersion::airy) throw ConfigError("ysb_norm requires an airy-tagged field");
  return weighted_norm(f, p.s, p.b, true);
}

double l2_norm(const SpaceTimeField& f) {
  const auto& g = f.grid();
  return std::sqrt(g.space.box_length * g.t_length * f.coeffs().squaredNorm());
}

SpaceTimeField product(const SpaceTimeField& a, const SpaceTimeField& b, Dispersion tag) {
  if (!a.grid().same_as(b.grid())) throw ConfigError("product: grid mismatch");
  return SpaceTimeField(a.grid_ptr(), a.values().cwiseProduct(b.values()), tag);
}

SpaceTimeField conjugate(const SpaceTimeField& f) {
  return SpaceTimeField(f.grid_ptr(), f.values().conjugate(), f.tag());
}

SpaceTimeField st_derivative(const SpaceTimeField& f) {
  const auto& g = f.grid();
  Matrixcd c = f.coeffs();
  auto table = symbol_table(g.space, [](double xi) { return cdouble(0.0, xi); });
  for (int i = 0; i < g.space.n; ++i) c.row(i) *= table[i];
  return SpaceTimeField::from_coeffs(f.grid_ptr(), std::move(c), f.tag());
}

SpaceTimeField st_d_op(const SpaceTimeField& f, double a) {
  const auto& g = f.grid();
  Matrixcd c = f.coeffs();
  auto table = symbol_table(g.space, [a](double xi) {
    return cdouble(xi == 0.0 ? 0.0 : std::pow(std::abs(xi), a), 0.0);
  });
  for (int i = 0; i < g.space.n; ++i) c.row(i) *= table[i];
  return SpaceTimeField::from_coeffs(f.grid_ptr(), std::move(c), f.tag());
}

std::vector<SpaceTimeField> random_ensemble(const StGridPtr& grid, const EnsembleSpec& spec,
                                            int count, std::uint64_t seed) {
  if (count < 0) throw ConfigError("ensemble count must be >= 0");
  const auto& g = *grid;
  if (spec.xi_max > g.space.wavenumbers.abs().maxCoeff() ||
      spec.tau_max > g.taus.abs().maxCoeff())
    throw ConfigError("ensemble band exceeds the resolved range");

  std::vector<std::pair<int, int>> band;
  for (int i = 0; i < g.space.n; ++i) {
    const double xi = std::abs(g.space.wavenumbers[i]);
    if (xi < spec.xi_min || xi > spec.xi_max) continue;
    for (int j = 0; j < g.n_t; ++j) {
      if (std::abs(g.taus[j]) > spec.tau_max) continue;
      band.emplace_back(i, j);
    }
  }
  if (band.empty()) throw ConfigError("ensemble band is empty");

  std::vector<SpaceTimeField> out;
  out.reserve(count);
  for (int sample = 0; sample < count; ++sample) {
    const std::uint64_t sample_seed = mix_seed(seed, sample);
    Matrixcd coeffs = Matrixcd::Zero(g.space.n, g.n_t);
    for (const auto& [i, j] : band) {
      const double xi = g.space.wavenumbers[i];
      const double surface = spec.tag == Dispersion::airy           ? xi * xi * xi
                             : spec.tag == Dispersion::schrodinger  ? -xi * xi
                                                                    : 0.0;
      const double d = g.taus[j] - surface;
      const double damp = std::pow(1.0 + d * d, -0.5 * spec.concentration);
      // draws are keyed by mode identity, so refining the grid extends the
      // ensemble instead of reshuffling it
      const std::uint64_t key =
          mix_seed(sample_seed, static_cast<std::uint64_t>(g.space.mode(i) + (1 << 20)) * 0x10001ULL +
                                    static_cast<std::uint64_t>(g.mode_t(j) + (1 << 20)));
      NormalSampler normal(key);
      const double re = normal();
      const double im = normal();
      coeffs(i, j) = damp * cdouble(re, im);
    }
    out.push_back(SpaceTimeField::from_coeffs(grid, std::move(coeffs), spec.tag));
  }
  return out;
}

SpaceTimeField bilinear_diff_spacetime(const SpaceTimeField& f, const SpaceTimeField& g,
                                       double a, Dispersion tag) {
  if (!f.grid().same_as(g.grid())) throw ConfigError("bilinear_diff_spacetime: grid mismatch");
  const auto& gr = f.grid();
  const int n = gr.space.n;
  const int nt = gr.n_t;
  const double dxi = 2.0 * M_PI / gr.space.box_length;

  // mixed representation: spatial modes x physical time
  Matrixcd fm = f.coeffs();
  inv_rows(fm);
  Matrixcd gm = g.coeffs();
  inv_rows(gm);

  Matrixcd out = Matrixcd::Zero(n, nt);
  for (int i1 = 0; i1 < n; ++i1) {
    const int k1 = gr.space.mode(i1);
    for (int i2 = 0; i2 < n; ++i2) {
      const int k2 = gr.space.mode(i2);
      const int k = k1 + k2;
      if (k < -n / 2 || k > n / 2 - 1) continue;
      const double w = std::pow(std::abs(double(k1 - k2)) * dxi, a);
      if (w == 0.0) continue;
      out.row(gr.space.index_of(k)) += w * fm.row(i1).cwiseProduct(gm.row(i2));
    }
  }
  fwd_rows(out);
  return SpaceTimeField::from_coeffs(f.grid_ptr(), std::move(out), tag);
}

} // namespace skdv
