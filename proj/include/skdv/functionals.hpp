#ifndef SKDV_FUNCTIONALS_HPP
#define SKDV_FUNCTIONALS_HPP

#include <array>
#include <string>
#include <vector>

#include "skdv/dynamics.hpp"
#include "skdv/spectral.hpp"

namespace skdv {

/// Rectangle-rule integral dx * sum (spectrally accurate for smooth periodic
/// integrands, and consistent with the Parseval convention).
double integral(const Arrayd& values, const SpectralGrid& grid);
cdouble integral(const Arraycd& values, const SpectralGrid& grid);

double l2_norm(const ComplexField& f);
double l2_norm(const RealField& f);

/// M = ||u|| (L^2).
double mass(const ComplexField& u);

/// L(u, v) = alpha ||v||^2 + 2 gamma Int Im(u conj(u_x)) dx.
double l_functional(const ComplexField& u, const RealField& v, const PhysParams& p);

/// E(u, v) = alpha gamma Int v|u|^2 + gamma ||u_x||^2 + alpha/2 ||v_x||^2
///           - alpha/6 Int v^3 + beta gamma / 2 Int |u|^4.
double energy(const ComplexField& u, const RealField& v, const PhysParams& p);

/// ( L sum <xi>^{2s} |fhat|^2 )^{1/2}.
double sobolev_norm(const ComplexField& f, double s);
double sobolev_norm(const RealField& f, double s);

double modified_l(const ComplexField& u, const RealField& v, const PhysParams& p,
                  const IParams& ip);
double modified_e(const ComplexField& u, const RealField& v, const PhysParams& p,
                  const IParams& ip);

struct FunctionalReport {
  double t = 0;
  double M = 0, L = 0, E = 0;
  double Hs_u = 0, Hs_v = 0, H1_u = 0, H1_v = 0;
};

FunctionalReport functional_report(const State& state, const PhysParams& p, double s);

/// Term-by-term rates of the modified functionals. The twelve e-terms follow
/// the displayed grouping of d/dt E(Iu,Iv) (2 + 1 + 4 + 1 + 1 + 1 + 2 by
/// coupling prefactor); the four l-terms that of d/dt L(Iu,Iv). Each term is
/// an integral of a commutator I(fg) - (If)(Ig) against fields, so all terms
/// vanish identically at s = 1.
struct RateReport {
  double t = 0;
  std::array<double, 12> e_terms{};
  double e_sum = 0;
  std::array<double, 4> l_terms{};
  double l_sum = 0;
};

RateReport rate_report(const State& state, const PhysParams& p, const IParams& ip);
RateReport energy_rate_terms(const State& state, const PhysParams& p, const IParams& ip);
RateReport l_rate_terms(const State& state, const PhysParams& p, const IParams& ip);

struct IneqRecord {
  std::string tag;
  double lhs = 0;
  double rhs = 0;
  double ratio = 0; // lhs/rhs where rhs > 0, else 0 with a flag
  std::string flag; // empty when the record is clean
};

struct AprioriReport {
  bool decaying = false; // |fields| < 1e-10 on the outer 10% of the box
  std::vector<IneqRecord> entries;
};

/// Constant-1 Gagliardo-Nirenberg checks (Int|u|^4 <= ||u||^3 ||u_x||,
/// Int|v|^3 <= ||v||^{5/2} ||v_x||^{1/2}, ||u||_inf^2 <= ||u|| ||u_x||) plus
/// raw ratios for the a-priori chain bounding gradients and energy by
/// |E|, |L|, M. The chain entries require alpha*gamma > 0 and are omitted
/// with a flagged record otherwise.
AprioriReport apriori_report(const ComplexField& u, const RealField& v, const PhysParams& p);

} // namespace skdv

#endif
