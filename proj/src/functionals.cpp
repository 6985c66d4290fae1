#include "skdv/functionals.hpp"

#include <cmath>

namespace skdv {

double integral(const Arrayd& values, const SpectralGrid& grid) {
  return grid.dx * values.sum();
}

cdouble integral(const Arraycd& values, const SpectralGrid& grid) {
  return grid.dx * values.sum();
}

double l2_norm(const ComplexField& f) {
  return std::sqrt(f.grid().dx * f.values().abs2().sum());
}

double l2_norm(const RealField& f) {
  return std::sqrt(f.grid().dx * f.values().square().sum());
}

double mass(const ComplexField& u) { return l2_norm(u); }

double l_functional(const ComplexField& u, const RealField& v, const PhysParams& p) {
  require_same_grid(u.grid(), v.grid(), "l_functional");
  const auto& g = u.grid();
  const Arraycd ux = derivative(u).values();
  const double momentum = (u.values() * ux.conjugate()).imag().sum() * g.dx;
  return p.alpha * g.dx * v.values().square().sum() + 2.0 * p.gamma * momentum;
}

double energy(const ComplexField& u, const RealField& v, const PhysParams& p) {
  require_same_grid(u.grid(), v.grid(), "energy");
  const auto& g = u.grid();
  const Arrayd usq = u.values().abs2();
  const Arrayd vv = v.values();
  const double coupling = g.dx * (vv * usq).sum();
  const double grad_u = g.dx * derivative(u).values().abs2().sum();
  const double grad_v = g.dx * derivative(v).values().square().sum();
  const double cubic = g.dx * vv.cube().sum();
  const double quartic = g.dx * usq.square().sum();
  return p.alpha * p.gamma * coupling + p.gamma * grad_u + 0.5 * p.alpha * grad_v -
         p.alpha / 6.0 * cubic + 0.5 * p.beta * p.gamma * quartic;
}

namespace {

double weighted_spectral_norm(const Arraycd& coeffs, const SpectralGrid& g, double s) {
  double acc = 0.0;
  for (int i = 0; i < g.n; ++i) {
    const double xi = g.wavenumbers[i];
    acc += std::pow(1.0 + xi * xi, s) * std::norm(coeffs[i]);
  }
  return std::sqrt(g.box_length * acc);
}

} // namespace

double sobolev_norm(const ComplexField& f, double s) {
  return weighted_spectral_norm(f.coeffs(), f.grid(), s);
}

double sobolev_norm(const RealField& f, double s) {
  return weighted_spectral_norm(f.coeffs(), f.grid(), s);
}

double modified_l(const ComplexField& u, const RealField& v, const PhysParams& p,
                  const IParams& ip) {
  return l_functional(apply_I(u, ip), apply_I(v, ip), p);
}

double modified_e(const ComplexField& u, const RealField& v, const PhysParams& p,
                  const IParams& ip) {
  return energy(apply_I(u, ip), apply_I(v, ip), p);
}

FunctionalReport functional_report(const State& state, const PhysParams& p, double s) {
  FunctionalReport r;
  r.t = state.t;
  r.M = mass(state.u);
  r.L = l_functional(state.u, state.v, p);
  r.E = energy(state.u, state.v, p);
  r.Hs_u = sobolev_norm(state.u, s);
  r.Hs_v = sobolev_norm(state.v, s);
  r.H1_u = sobolev_norm(state.u, 1.0);
  r.H1_v = sobolev_norm(state.v, 1.0);
  return r;
}

// -------------------------------------------------------------- rate terms

namespace {

ComplexField conj_field(const ComplexField& f) {
  return ComplexField(f.grid_ptr(), f.values().conjugate());
}

} // namespace

RateReport rate_report(const State& state, const PhysParams& p, const IParams& ip) {
  require_same_grid(state.u.grid(), state.v.grid(), "rate_report");
  ip.validate();
  const auto& gp = state.u.grid_ptr();
  const SpectralGrid& g = *gp;

  const ComplexField& u = state.u;
  const RealField& v = state.v;
  const ComplexField U = apply_I(u, ip);
  const RealField V = apply_I(v, ip);

  const Arraycd& uval = u.values();
  const Arraycd& Uval = U.values();
  const Arrayd& vval = v.values();
  const Arrayd& Vval = V.values();

  const RealField vx = derivative(v);
  const RealField Vx = derivative(V);
  const RealField Vxx = derivative(Vx);
  const ComplexField Ux = derivative(U);

  // commutators I(fg) - (If)(Ig); every product carries the 2/3 mask so that
  // both sides go through identical code paths
  const RealField p_vv = RealField::from_coeffs(
      gp, apply_I(dealiased_product(v, vx), ip).coeffs() -
              dealiased_product(V, Vx).coeffs());

  const RealField usq(gp, uval.abs2());
  const RealField Usq(gp, Uval.abs2());
  const RealField q_u = RealField::from_coeffs(
      gp, apply_I(dealias(usq), ip).coeffs() - dealias(Usq).coeffs());

  const ComplexField ubar_v(gp, uval.conjugate() * vval.cast<cdouble>());
  const ComplexField Ubar_V(gp, Uval.conjugate() * Vval.cast<cdouble>());
  const ComplexField c_uv = ComplexField::from_coeffs(
      gp, apply_I(dealias(ubar_v), ip).coeffs() - dealias(Ubar_V).coeffs());

  const ComplexField u_v(gp, uval * vval.cast<cdouble>());
  const ComplexField U_V(gp, Uval * Vval.cast<cdouble>());
  const ComplexField c_uvp = ComplexField::from_coeffs(
      gp, apply_I(dealias(u_v), ip).coeffs() - dealias(U_V).coeffs());

  const ComplexField cubic(gp, uval * uval * uval.conjugate());
  const ComplexField Cubic(gp, Uval * Uval * Uval.conjugate());
  const ComplexField c_u3 = ComplexField::from_coeffs(
      gp, apply_I(dealias(cubic), ip).coeffs() - dealias(Cubic).coeffs());
  const ComplexField c_u2cu = conj_field(c_u3); // I(u ubar^2) - Iu (I ubar)^2

  const double a = p.alpha, b = p.beta, c = p.gamma;
  const Arraycd Uxc = Ux.values().conjugate();

  RateReport r;
  r.t = state.t;
  r.e_terms[0] = a * integral(Arrayd(p_vv.values() * Vxx.values()), g);
  r.e_terms[1] = 0.5 * a * integral(Arrayd(Vval.square() * p_vv.values()), g);
  r.e_terms[2] =
      2.0 * b * c * integral(Arraycd(derivative(c_u3).values() * Uxc), g).imag();
  r.e_terms[3] = -a * c * integral(Arrayd(Usq.values() * p_vv.values()), g);
  r.e_terms[4] = -a * c * integral(Arrayd(q_u.values() * Vval * Vx.values()), g);
  r.e_terms[5] = -a * c * integral(Arrayd(Vxx.values() * derivative(q_u).values()), g);
  r.e_terms[6] =
      -2.0 * a * c * integral(Arraycd(Ux.values() * derivative(c_uv).values()), g).imag();
  r.e_terms[7] = a * c * c * integral(Arrayd(derivative(q_u).values() * Usq.values()), g);
  r.e_terms[8] = 2.0 * a * a * c *
                 integral(Arraycd(c_uv.values() * Vval.cast<cdouble>() * Uval), g).imag();
  r.e_terms[9] = 2.0 * b * b * c *
                 integral(Arraycd(Uval * Uval.conjugate().square() * c_u3.values()), g).imag();
  r.e_terms[10] = -2.0 * a * b * c *
                  integral(Arraycd(Vval.cast<cdouble>() * Uval * c_u2cu.values()), g).imag();
  r.e_terms[11] = -2.0 * a * b * c *
                  integral(Arraycd(Uval.square() * Uval.conjugate() * c_uv.values()), g).imag();

  r.l_terms[0] = -2.0 * a * integral(Arrayd(Vval * p_vv.values()), g);
  r.l_terms[1] = 2.0 * a * c * integral(Arrayd(Vval * derivative(q_u).values()), g);
  r.l_terms[2] = -4.0 * a * c * integral(Arraycd(Uxc * c_uvp.values()), g).real();
  r.l_terms[3] = -2.0 * b * c * integral(Arraycd(c_u3.values() * Uxc), g).real();

  for (double x : r.e_terms) r.e_sum += x;
  for (double x : r.l_terms) r.l_sum += x;
  return r;
}

RateReport energy_rate_terms(const State& state, const PhysParams& p, const IParams& ip) {
  RateReport r = rate_report(state, p, ip);
  r.l_terms = {};
  r.l_sum = 0;
  return r;
}

RateReport l_rate_terms(const State& state, const PhysParams& p, const IParams& ip) {
  RateReport r = rate_report(state, p, ip);
  r.e_terms = {};
  r.e_sum = 0;
  return r;
}

// ----------------------------------------------------------- a-priori report

AprioriReport apriori_report(const ComplexField& u, const RealField& v, const PhysParams& p) {
  require_same_grid(u.grid(), v.grid(), "apriori_report");
  const SpectralGrid& g = u.grid();

  AprioriReport rep;
  {
    double edge = 0.0;
    const int margin = g.n / 20; // outer 10% of the box: 5% at each end
    for (int i = 0; i < g.n; ++i) {
      if (i >= margin && i < g.n - margin) continue;
      edge = std::max(edge, std::abs(u.values()[i]));
      edge = std::max(edge, std::abs(v.values()[i]));
    }
    rep.decaying = edge < 1e-10;
  }

  const std::string decay_flag =
      rep.decaying ? "" : "input not boundary-decaying; line inequality reported for reference";

  auto push = [&rep](std::string tag, double lhs, double rhs, std::string flag) {
    IneqRecord r;
    r.tag = std::move(tag);
    r.lhs = lhs;
    r.rhs = rhs;
    if (rhs > 0.0) {
      r.ratio = lhs / rhs;
      r.flag = std::move(flag);
    } else {
      r.ratio = 0.0;
      r.flag = "rhs degenerate - inequality only claimed for decaying fields";
    }
    rep.entries.push_back(std::move(r));
  };

  const double M = mass(u);
  const double ux = l2_norm(derivative(u));
  const double vnorm = l2_norm(v);
  const double vx = l2_norm(derivative(v));
  const Arrayd uabs2 = u.values().abs2();

  push("gn_quartic", integral(Arrayd(uabs2.square()), g), M * M * M * ux, decay_flag);
  push("gn_cubic", integral(Arrayd(v.values().abs().cube()), g),
       std::pow(vnorm, 2.5) * std::sqrt(vx), decay_flag);
  push("gn_sup", uabs2.maxCoeff(), M * ux, decay_flag);

  if (p.alpha * p.gamma > 0.0) {
    const double E = std::abs(energy(u, v, p));
    const double L = std::abs(l_functional(u, v, p));
    const double el_mix = E + std::pow(L, 5.0 / 3.0) + std::pow(M, 8) + 1.0;
    push("momentum_bound", L, vnorm * vnorm + M * ux, decay_flag);
    push("v_l2_bound", vnorm * vnorm, L + M * ux, decay_flag);
    push("gradient_bound", ux * ux + vx * vx, el_mix, decay_flag);
    push("energy_upper", E, ux * ux + vx * vx + std::pow(L, 5.0 / 3.0) + std::pow(M, 8) + 1.0,
         decay_flag);
    push("energy_upper_v", E,
         ux * ux + vx * vx + std::pow(vnorm, 10.0 / 3.0) + std::pow(M, 10) + 1.0, decay_flag);
    push("v_l2_refined", vnorm * vnorm, L + M * std::sqrt(E) + std::pow(M, 6) + 1.0, decay_flag);
    push("h1_bound",
         sobolev_norm(u, 1.0) * sobolev_norm(u, 1.0) + sobolev_norm(v, 1.0) * sobolev_norm(v, 1.0),
         el_mix, decay_flag);
  } else {
    IneqRecord r;
    r.tag = "energy_chain";
    r.flag = "omitted: requires alpha*gamma > 0";
    rep.entries.push_back(std::move(r));
  }
  return rep;
}

} // namespace skdv
