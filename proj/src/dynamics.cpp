#include "skdv/dynamics.hpp"

#include <cmath>

namespace skdv {

void PhysParams::validate() const {
  if (!std::isfinite(alpha) || !std::isfinite(beta) || !std::isfinite(gamma))
    throw ConfigError("physics parameters must be finite");
}

void StepperConfig::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw ConfigError("stepper.dt must be positive");
  if (!(blowup_threshold > 0.0)) throw ConfigError("stepper.blowup_threshold must be positive");
}

std::pair<ComplexField, RealField> nonlinear_rhs(const State& state, const PhysParams& p,
                                                 bool dealias_on) {
  require_same_grid(state.u.grid(), state.v.grid(), "nonlinear_rhs");
  const auto& g = state.u.grid_ptr();
  const Arraycd& u = state.u.values();
  const Arrayd& v = state.v.values();
  const Arrayd vx = derivative(state.v).values();

  auto maybe_dealias_c = [&](ComplexField f) { return dealias_on ? dealias(f) : f; };
  auto maybe_dealias_r = [&](RealField f) { return dealias_on ? dealias(f) : f; };

  const Arrayd usq = (u * u.conjugate()).real();
  ComplexField vu = maybe_dealias_c(ComplexField(g, v.cast<cdouble>() * u));
  ComplexField cubic = maybe_dealias_c(ComplexField(g, usq.cast<cdouble>() * u));
  RealField vvx = maybe_dealias_r(RealField(g, v * vx));
  RealField usq_field = maybe_dealias_r(RealField(g, usq));

  const cdouble mi(0.0, -1.0);
  ComplexField du = ComplexField::from_coeffs(
      g, mi * (p.alpha * vu.coeffs() + p.beta * cubic.coeffs()));
  RealField dv = RealField::from_coeffs(
      g, -vvx.coeffs() + p.gamma * derivative(usq_field).coeffs());
  return {std::move(du), std::move(dv)};
}

ComplexField free_schrodinger(const ComplexField& u, double t) {
  auto table = symbol_table(u.grid(), [t](double xi) {
    return std::exp(cdouble(0.0, -xi * xi * t));
  });
  return apply_table(u, table);
}

RealField free_airy(const RealField& v, double t) {
  auto table = symbol_table(v.grid(), [t](double xi) {
    return std::exp(cdouble(0.0, xi * xi * xi * t));
  });
  return apply_table(v, table);
}

namespace {

// Mean of g over the circle |w - z| = 1; g entire, so this equals g(z).
template <class G>
cdouble contour_mean(cdouble z, const G& g) {
  constexpr int m = 32;
  cdouble acc(0.0, 0.0);
  for (int j = 0; j < m; ++j) {
    const double th = 2.0 * M_PI * (j + 0.5) / m;
    acc += g(z + std::exp(cdouble(0.0, th)));
  }
  return acc / double(m);
}

struct PhiTables {
  Arraycd e1, e2, q, f1, f2, f3;
};

PhiTables build_tables(const Arraycd& lambda, double dt) {
  const int n = static_cast<int>(lambda.size());
  PhiTables t;
  t.e1.resize(n);
  t.e2.resize(n);
  t.q.resize(n);
  t.f1.resize(n);
  t.f2.resize(n);
  t.f3.resize(n);
  for (int i = 0; i < n; ++i) {
    const cdouble z = lambda[i] * dt;
    t.e1[i] = std::exp(z);
    t.e2[i] = std::exp(0.5 * z);
    t.q[i] = dt * contour_mean(z, [](cdouble w) { return (std::exp(0.5 * w) - 1.0) / w; });
    t.f1[i] = dt * contour_mean(z, [](cdouble w) {
      return (-4.0 - w + std::exp(w) * (4.0 - 3.0 * w + w * w)) / (w * w * w);
    });
    t.f2[i] = dt * contour_mean(z, [](cdouble w) {
      return (2.0 + w + std::exp(w) * (-2.0 + w)) / (w * w * w);
    });
    t.f3[i] = dt * contour_mean(z, [](cdouble w) {
      return (-4.0 - 3.0 * w - w * w + std::exp(w) * (4.0 - w)) / (w * w * w);
    });
  }
  return t;
}

} // namespace

Etdrk4Stepper::Etdrk4Stepper(GridPtr grid, const PhysParams& p, const StepperConfig& cfg,
                             double dt_override)
    : grid_(std::move(grid)), p_(p), cfg_(cfg), dt_(dt_override) {
  p_.validate();
  if (dt_ == 0.0 || !std::isfinite(dt_)) throw ConfigError("step size must be nonzero");
  deriv_ = symbol_table(*grid_, [](double xi) { return cdouble(0.0, xi); });
  if (cfg_.dealias) {
    mask_ = dealias_mask(*grid_).cast<cdouble>();
  } else {
    // keep the unpaired mode out of the nonlinear terms even without dealiasing
    mask_ = Arraycd::Constant(grid_->n, cdouble(1.0, 0.0));
    mask_[grid_->n / 2] = 0.0;
  }

  const Arraycd lam_u =
      symbol_table(*grid_, [](double xi) { return cdouble(0.0, -xi * xi); });
  const Arraycd lam_v =
      symbol_table(*grid_, [](double xi) { return cdouble(0.0, xi * xi * xi); });
  PhiTables tu = build_tables(lam_u, dt_);
  e1_u_ = tu.e1; e2_u_ = tu.e2; q_u_ = tu.q; f1_u_ = tu.f1; f2_u_ = tu.f2; f3_u_ = tu.f3;
  PhiTables tv = build_tables(lam_v, dt_);
  e1_v_ = tv.e1; e2_v_ = tv.e2; q_v_ = tv.q; f1_v_ = tv.f1; f2_v_ = tv.f2; f3_v_ = tv.f3;

  h1_weight_ = 1.0 + grid_->wavenumbers.square();
}

void Etdrk4Stepper::rhs(const Arraycd& uh, const Arraycd& vh, Arraycd& nu, Arraycd& nv) const {
  const Arraycd u = inverse_dft(uh);
  const Arraycd v = inverse_dft(vh);
  const Arraycd vx = inverse_dft(vh * deriv_);
  const Arraycd usq = u * u.conjugate();

  const Arraycd vu_hat = forward_dft(v * u) * mask_;
  const Arraycd cubic_hat = forward_dft(usq * u) * mask_;
  const Arraycd vvx_hat = forward_dft(v * vx) * mask_;
  const Arraycd usq_hat = forward_dft(usq) * mask_;

  const cdouble mi(0.0, -1.0);
  nu = mi * (p_.alpha * vu_hat + p_.beta * cubic_hat);
  nv = -vvx_hat + p_.gamma * (deriv_ * usq_hat);
}

void Etdrk4Stepper::check_finite_and_bounded(double t, const Arraycd& uh,
                                             const Arraycd& vh) const {
  const double L = grid_->box_length;
  const double l2_u = std::sqrt(L * uh.abs2().sum());
  const double l2_v = std::sqrt(L * vh.abs2().sum());
  const double h1_u = std::sqrt(L * (h1_weight_ * uh.abs2()).sum());
  const double h1_v = std::sqrt(L * (h1_weight_ * vh.abs2()).sum());
  const double worst = std::max(std::max(l2_u, l2_v), std::max(h1_u, h1_v));
  if (!std::isfinite(worst)) throw BlowupError(t, worst, "norm");
  if (worst > cfg_.blowup_threshold)
    throw BlowupError(t, worst, l2_u > cfg_.blowup_threshold || h1_u > cfg_.blowup_threshold
                                     ? "u norm"
                                     : "v norm");
}

State Etdrk4Stepper::advance(const State& s) const {
  require_same_grid(s.u.grid(), *grid_, "Etdrk4Stepper::advance");
  require_same_grid(s.v.grid(), *grid_, "Etdrk4Stepper::advance");
  const Arraycd uh = s.u.coeffs();
  const Arraycd vh = s.v.coeffs();

  Arraycd nu0(grid_->n), nv0(grid_->n), nua(grid_->n), nva(grid_->n);
  Arraycd nub(grid_->n), nvb(grid_->n), nuc(grid_->n), nvc(grid_->n);

  rhs(uh, vh, nu0, nv0);
  const Arraycd au = e2_u_ * uh + q_u_ * nu0;
  const Arraycd av = e2_v_ * vh + q_v_ * nv0;
  rhs(au, av, nua, nva);
  const Arraycd bu = e2_u_ * uh + q_u_ * nua;
  const Arraycd bv = e2_v_ * vh + q_v_ * nva;
  rhs(bu, bv, nub, nvb);
  const Arraycd cu = e2_u_ * au + q_u_ * (2.0 * nub - nu0);
  const Arraycd cv = e2_v_ * av + q_v_ * (2.0 * nvb - nv0);
  rhs(cu, cv, nuc, nvc);

  Arraycd uh1 = e1_u_ * uh + f1_u_ * nu0 + 2.0 * f2_u_ * (nua + nub) + f3_u_ * nuc;
  Arraycd vh1 = e1_v_ * vh + f1_v_ * nv0 + 2.0 * f2_v_ * (nva + nvb) + f3_v_ * nvc;

  const double t1 = s.t + dt_;
  check_finite_and_bounded(t1, uh1, vh1);
  return State{t1, ComplexField::from_coeffs(grid_, std::move(uh1)),
               RealField::from_coeffs(grid_, vh1)};
}

State step(const State& state, const PhysParams& p, const StepperConfig& cfg) {
  cfg.validate();
  Etdrk4Stepper st(state.u.grid_ptr(), p, cfg);
  return st.advance(state);
}

Trajectory simulate(const State& initial, const PhysParams& p, const StepperConfig& cfg,
                    double t_end, const std::vector<Observer>& observers, int observer_stride) {
  cfg.validate();
  if (!std::isfinite(t_end)) throw ConfigError("t_end must be finite");
  if (t_end < initial.t) throw ConfigError("t_end must not precede the initial time");
  if (observer_stride < 1) throw ConfigError("observer stride must be >= 1");

  Trajectory traj{{}, initial, 0};
  if (t_end == initial.t) return traj;

  auto sample = [&](const State& s) {
    traj.samples.push_back(s);
    for (const auto& obs : observers) obs(s);
  };

  const double span = t_end - initial.t;
  long n_full = static_cast<long>(std::floor(span / cfg.dt * (1.0 + 1e-12)));
  double remainder = span - n_full * cfg.dt;
  const double tiny = 1e-12 * std::max(1.0, std::abs(t_end));
  if (remainder <= tiny) remainder = 0.0;

  Etdrk4Stepper stepper(initial.u.grid_ptr(), p, cfg);
  State current = initial;
  sample(current);
  for (long k = 0; k < n_full; ++k) {
    current = stepper.advance(current);
    ++traj.steps;
    if (traj.steps % observer_stride == 0 && !(remainder == 0.0 && k == n_full - 1))
      sample(current);
  }
  if (remainder > 0.0) {
    Etdrk4Stepper last(initial.u.grid_ptr(), p, cfg, remainder);
    current = last.advance(current);
    ++traj.steps;
  }
  current.t = t_end; // land exactly
  sample(current);
  traj.final_state = current;
  return traj;
}

double kdv_soliton_value(double x, double t, double c, double x0, double box_length) {
  double arg = x - c * t - x0;
  arg -= box_length * std::round(arg / box_length);
  const double sech = 1.0 / std::cosh(0.5 * std::sqrt(c) * arg);
  return 3.0 * c * sech * sech;
}

} // namespace skdv
