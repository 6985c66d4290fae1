#include <doctest.h>

#include "skdv/data_families.hpp"
#include "skdv/dynamics.hpp"
#include "skdv/functionals.hpp"
#include "test_support.hpp"

using namespace skdv;
using test::mode_field;
using test::random_complex_field;
using test::random_real_field;

namespace {

State soliton_state(const GridPtr& g, double c) {
  DataFamily f;
  f.id = "kdv_soliton";
  f.c = c;
  return make_initial_state(g, f);
}

} // namespace

TEST_CASE("free propagators") {
  auto g = make_grid(128, 2.0 * M_PI);

  SUBCASE("t = 0 is the identity") {
    auto u = random_complex_field(g, 1);
    CHECK((free_schrodinger(u, 0.0).coeffs() - u.coeffs()).abs().maxCoeff() < 1e-15);
    auto v = random_real_field(g, 2);
    CHECK((free_airy(v, 0.0).coeffs() - v.coeffs()).abs().maxCoeff() < 1e-15);
  }

  SUBCASE("single mode picks up the dispersive phase") {
    const int k = 5;
    const double t = 0.37;
    auto out = free_schrodinger(mode_field(g, k), t);
    const cdouble expect = std::exp(cdouble(0.0, -double(k) * k * t));
    CHECK(std::abs(out.coeffs()[g->index_of(k)] - expect) < 1e-14);
  }

  SUBCASE("cos(kx) under the airy group becomes cos(kx + k^3 t)") {
    const int k = 3;
    const double t = 0.21;
    Arrayd v(g->n);
    for (int i = 0; i < g->n; ++i) v[i] = std::cos(k * i * g->dx);
    auto out = free_airy(RealField(g, v), t);
    for (int i = 0; i < g->n; ++i)
      CHECK(out.values()[i] ==
            doctest::Approx(std::cos(k * i * g->dx + double(k) * k * k * t)).epsilon(1e-10));
  }

  SUBCASE("unitary on L^2") {
    auto u = random_complex_field(g, 3);
    CHECK(l2_norm(free_schrodinger(u, 1.7)) == doctest::Approx(l2_norm(u)).epsilon(1e-13));
    auto v = random_real_field(g, 4);
    CHECK(l2_norm(free_airy(v, 1.7)) == doctest::Approx(l2_norm(v)).epsilon(1e-13));
  }

  SUBCASE("time reversible") {
    auto v = random_real_field(g, 5);
    auto back = free_airy(free_airy(v, 0.9), -0.9);
    CHECK((back.values() - v.values()).abs().maxCoeff() /
              v.values().abs().maxCoeff() <
          1e-12);
  }
}

TEST_CASE("nonlinear_rhs") {
  auto g = make_grid(128, 2.0 * M_PI);
  PhysParams p{1.5, 0.7, -0.9};

  SUBCASE("u = 0 kills the coupling and leaves dv = -v v_x") {
    RealField v = random_real_field(g, 6);
    State s{0.0, ComplexField(g, Arraycd::Zero(g->n)), v};
    auto [du, dv] = nonlinear_rhs(s, p);
    CHECK(du.values().abs().maxCoeff() == 0.0);
    const RealField expect = dealiased_product(v, derivative(v));
    CHECK((dv.values() + expect.values()).abs().maxCoeff() < 1e-12);
  }

  SUBCASE("v = 0 and beta = 0 freeze u") {
    PhysParams p2{1.5, 0.0, 0.3};
    State s{0.0, random_complex_field(g, 7), RealField(g, Arrayd::Zero(g->n))};
    auto [du, dv] = nonlinear_rhs(s, p2);
    CHECK(du.values().abs().maxCoeff() == 0.0);
    (void)dv;
  }

  SUBCASE("plane wave: cubic term rotates, coupling term vanishes") {
    const double A = 1.3;
    Arraycd uv(g->n);
    for (int i = 0; i < g->n; ++i) uv[i] = A * std::exp(cdouble(0.0, 2.0 * i * g->dx));
    State s{0.0, ComplexField(g, uv), RealField(g, Arrayd::Zero(g->n))};
    auto [du, dv] = nonlinear_rhs(s, p);
    // du = -i beta A^2 u pointwise
    const Arraycd expect = cdouble(0.0, -p.beta * A * A) * s.u.values();
    CHECK((du.values() - expect).abs().maxCoeff() < 1e-10);
    CHECK(dv.values().abs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("step") {
  SUBCASE("zero state stays zero") {
    auto g = make_grid(64, 2.0 * M_PI);
    State z{0.0, ComplexField(g, Arraycd::Zero(g->n)), RealField(g, Arrayd::Zero(g->n))};
    State out = step(z, PhysParams{1, 1, 1}, StepperConfig{1e-3});
    CHECK(out.t == doctest::Approx(1e-3));
    CHECK(out.u.values().abs().maxCoeff() == 0.0);
    CHECK(out.v.values().abs().maxCoeff() == 0.0);
  }

  SUBCASE("free system matches the exact groups") {
    // v0 = 0: the advection v v_x carries no coupling constant, so only then
    // is the whole flow linear
    auto g = make_grid(128, 2.0 * M_PI);
    State s{0.0, test::band_limited_complex(g, 20, 8), RealField(g, Arrayd::Zero(g->n))};
    const double dt = 1e-3;
    State out = step(s, PhysParams{0, 0, 0}, StepperConfig{dt});
    const ComplexField ue = free_schrodinger(s.u, dt);
    CHECK((out.u.coeffs() - ue.coeffs()).abs().maxCoeff() < 1e-10);
    CHECK(out.v.values().abs().maxCoeff() == 0.0);
  }

  SUBCASE("soliton one-step residual shrinks like dt^5") {
    auto g = make_grid(1024, 64.0 * M_PI); // dealiased band must cover the soliton spectrum
    const State s0 = soliton_state(g, 1.0);
    auto one_step_error = [&](double dt) {
      State out = step(s0, PhysParams{1, 1, 1}, StepperConfig{dt});
      double err = 0.0;
      for (int i = 0; i < g->n; ++i)
        err = std::max(err, std::abs(out.v.values()[i] -
                                     kdv_soliton_value(i * g->dx, dt, 1.0,
                                                       0.5 * g->box_length, g->box_length)));
      return err;
    };
    const double e1 = one_step_error(2e-2);
    const double e2 = one_step_error(1e-2);
    CHECK(e1 > 1e-13); // above rounding, so the ratio is meaningful
    CHECK(e1 / e2 > 20.0);
  }

  SUBCASE("blow-up raises an error carrying time and norm") {
    auto g = make_grid(64, 2.0 * M_PI);
    State s{0.0, random_complex_field(g, 10), random_real_field(g, 11)};
    StepperConfig cfg{1e-3, true, 1e-6}; // absurdly low threshold trips immediately
    CHECK_THROWS_AS(step(s, PhysParams{1, 1, 1}, cfg), BlowupError);
    try {
      step(s, PhysParams{1, 1, 1}, cfg);
    } catch (const BlowupError& e) {
      CHECK(e.t == doctest::Approx(1e-3));
      CHECK(e.norm_value > 1e-6);
    }
  }
}

TEST_CASE("simulate") {
  SUBCASE("t_end equal to the initial time returns an empty trajectory") {
    auto g = make_grid(64, 2.0 * M_PI);
    State s{0.5, random_complex_field(g, 12), random_real_field(g, 13)};
    Trajectory tr = simulate(s, PhysParams{1, 1, 1}, StepperConfig{1e-3}, 0.5);
    CHECK(tr.samples.empty());
    CHECK(tr.steps == 0);
    CHECK((tr.final_state.u.values() - s.u.values()).abs().maxCoeff() == 0.0);
  }

  SUBCASE("final partial step lands exactly on t_end") {
    auto g = make_grid(64, 2.0 * M_PI);
    State s{0.0, test::band_limited_complex(g, 10, 14), test::band_limited_real(g, 10, 15)};
    Trajectory tr = simulate(s, PhysParams{1, 0, 1}, StepperConfig{1e-2}, 0.0105);
    CHECK(tr.final_state.t == 0.0105);
    CHECK(tr.steps == 2);
  }

  SUBCASE("u = 0 is invariant and v follows pure KdV") {
    auto g = make_grid(512, 64.0 * M_PI);
    const State s0 = soliton_state(g, 1.0);
    Trajectory tr = simulate(s0, PhysParams{1, 1, 1}, StepperConfig{1e-3}, 0.25);
    CHECK(l2_norm(tr.final_state.u) == 0.0);
    double err = 0.0;
    for (int i = 0; i < g->n; ++i)
      err = std::max(err, std::abs(tr.final_state.v.values()[i] -
                                   kdv_soliton_value(i * g->dx, 0.25, 1.0, 0.5 * g->box_length,
                                                     g->box_length)));
    CHECK(err < 2e-5);
  }

  SUBCASE("plane-wave phase law omega = k^2 + beta A^2") {
    auto g = make_grid(64, 2.0 * M_PI);
    DataFamily f;
    f.id = "plane_wave";
    f.amplitude = 1.0;
    f.k0 = 2.0;
    const State s0 = make_initial_state(g, f);
    PhysParams p{0.0, 1.0, 1.0};
    Trajectory tr = simulate(s0, p, StepperConfig{1e-4}, 1.0);
    const double omega = 4.0 + 1.0;
    double err = 0.0;
    for (int i = 0; i < g->n; ++i) {
      const cdouble exact = std::exp(cdouble(0.0, 2.0 * i * g->dx - omega));
      err = std::max(err, std::abs(tr.final_state.u.values()[i] - exact));
    }
    CHECK(err < 1e-8);
  }

  SUBCASE("convergence: halving dt cuts the plane-wave error by at least 12") {
    auto g = make_grid(64, 2.0 * M_PI);
    DataFamily f;
    f.id = "plane_wave";
    f.amplitude = 2.0;
    f.k0 = 2.0;
    const State s0 = make_initial_state(g, f);
    PhysParams p{0.0, 1.0, 0.0};
    const double omega = 4.0 + 1.0 * 4.0;
    auto terminal_error = [&](double dt) {
      Trajectory tr = simulate(s0, p, StepperConfig{dt}, 1.0);
      double err = 0.0;
      for (int i = 0; i < g->n; ++i) {
        const cdouble exact = 2.0 * std::exp(cdouble(0.0, 2.0 * i * g->dx - omega));
        err = std::max(err, std::abs(tr.final_state.u.values()[i] - exact));
      }
      return err;
    };
    const double e4 = terminal_error(4e-3);
    const double e2 = terminal_error(2e-3);
    const double e1 = terminal_error(1e-3);
    CHECK(e4 / e2 >= 12.0);
    CHECK(e2 / e1 >= 12.0);
  }

  SUBCASE("rejects bad horizons") {
    auto g = make_grid(64, 2.0 * M_PI);
    State s{0.0, random_complex_field(g, 16), random_real_field(g, 17)};
    CHECK_THROWS_AS(simulate(s, PhysParams{}, StepperConfig{1e-3}, -1.0), ConfigError);
    CHECK_THROWS_AS(
        simulate(s, PhysParams{}, StepperConfig{1e-3}, std::numeric_limits<double>::infinity()),
        ConfigError);
  }
}

TEST_CASE("kdv soliton closed form satisfies the equation (symbolic spot check)") {
  // residual of v_t + v v_x + v_xxx at scattered points, via high-order
  // finite differences of the closed form
  const double c = 1.3, x0 = 0.0, L = 1e9; // effectively un-wrapped
  auto v = [&](double x, double t) { return kdv_soliton_value(x, t, c, x0, L); };
  const double h = 1e-3;
  for (double x : {-3.0, -1.0, 0.2, 1.7}) {
    for (double t : {0.0, 0.4}) {
      auto d1 = [&](auto f, double z) {
        return (f(z - 2 * h) - 8 * f(z - h) + 8 * f(z + h) - f(z + 2 * h)) / (12 * h);
      };
      const double vt = d1([&](double tt) { return v(x, tt); }, t);
      const double vx = d1([&](double xx) { return v(xx, t); }, x);
      auto vxx_at = [&](double xx) {
        return (-v(xx - 2 * h, t) + 16 * v(xx - h, t) - 30 * v(xx, t) + 16 * v(xx + h, t) -
                v(xx + 2 * h, t)) /
               (12 * h * h);
      };
      const double vxxx = d1(vxx_at, x);
      CHECK(std::abs(vt + v(x, t) * vx + vxxx) < 1e-5);
    }
  }
}
