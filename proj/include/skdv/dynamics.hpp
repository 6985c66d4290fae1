#ifndef SKDV_DYNAMICS_HPP
#define SKDV_DYNAMICS_HPP

#include <functional>
#include <utility>
#include <vector>

#include "skdv/spectral.hpp"

namespace skdv {

/// Coupling constants of the system
///   i u_t + u_xx = alpha v u + beta |u|^2 u
///   v_t + v v_x + v_xxx = gamma (|u|^2)_x
struct PhysParams {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  void validate() const;
};

/// One complex field u and one real field v on a shared grid at time t.
struct State {
  double t = 0.0;
  ComplexField u;
  RealField v;
};

struct StepperConfig {
  double dt = 1e-3;
  bool dealias = true;
  double blowup_threshold = 1e8;
  void validate() const;
};

/// du = -i (alpha v u + beta |u|^2 u), dv = -v v_x + gamma (|u|^2)_x.
/// Products are formed in physical space; with dealias on, each product
/// spectrum gets the 2/3-rule mask.
std::pair<ComplexField, RealField> nonlinear_rhs(const State& state, const PhysParams& p,
                                                 bool dealias_on = true);

/// Exact free Schroedinger group: coefficient k multiplied by e^{-i xi_k^2 t}
/// (solves i u_t + u_xx = 0). Unitary on L^2.
ComplexField free_schrodinger(const ComplexField& u, double t);

/// Exact free Airy group: coefficient k multiplied by e^{+i xi_k^3 t}
/// (solves v_t + v_xxx = 0). Unitary and reality-preserving.
RealField free_airy(const RealField& v, double t);

/// Fourth-order exponential time differencing (ETDRK4) with the stiff
/// diagonal parts -i xi^2 and +i xi^3 integrated exactly. The phi-function
/// coefficients are evaluated as means over 32 points on a unit-radius
/// complex contour around each z = lambda*dt, which avoids cancellation for
/// small |z|. Tables are precomputed per (grid, dt).
class Etdrk4Stepper {
public:
  Etdrk4Stepper(GridPtr grid, const PhysParams& p, const StepperConfig& cfg, double dt_override);
  Etdrk4Stepper(GridPtr grid, const PhysParams& p, const StepperConfig& cfg)
      : Etdrk4Stepper(std::move(grid), p, cfg, cfg.dt) {}

  /// Advance one step of the configured dt; checks blow-up afterwards.
  State advance(const State& s) const;
  double dt() const { return dt_; }

private:
  void rhs(const Arraycd& uh, const Arraycd& vh, Arraycd& nu, Arraycd& nv) const;
  void check_finite_and_bounded(double t, const Arraycd& uh, const Arraycd& vh) const;

  GridPtr grid_;
  PhysParams p_;
  StepperConfig cfg_;
  double dt_;
  Arraycd deriv_, mask_;
  // per-equation ETDRK4 tables
  Arraycd e1_u_, e2_u_, q_u_, f1_u_, f2_u_, f3_u_;
  Arraycd e1_v_, e2_v_, q_v_, f1_v_, f2_v_, f3_v_;
  Arrayd h1_weight_;
};

/// One ETDRK4 step of cfg.dt.
State step(const State& state, const PhysParams& p, const StepperConfig& cfg);

using Observer = std::function<void(const State&)>;

struct Trajectory {
  std::vector<State> samples; // time-stamped states at the observer stride
  State final_state;
  long steps = 0;
};

/// Repeated stepping with a final partial step landing exactly on t_end.
/// Observers (and the sample record) fire on the initial state, every
/// observer_stride-th step, and the final state.
Trajectory simulate(const State& initial, const PhysParams& p, const StepperConfig& cfg,
                    double t_end, const std::vector<Observer>& observers = {},
                    int observer_stride = 1);

/// Closed-form soliton of v_t + v v_x + v_xxx = 0 with speed c:
/// v(x, t) = 3 c sech^2(sqrt(c)/2 (x - c t - x0)), argument wrapped to the box.
double kdv_soliton_value(double x, double t, double c, double x0, double box_length);

} // namespace skdv

#endif
