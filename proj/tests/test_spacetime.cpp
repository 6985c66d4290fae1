#include <doctest.h>

#include "skdv/estimates.hpp"
#include "skdv/spacetime.hpp"

using namespace skdv;

namespace {

StGridPtr small_grid(int n = 32) { return make_spacetime_grid(n, 2.0 * M_PI, n, 2.0 * M_PI); }

SpaceTimeField st_mode(const StGridPtr& g, int k, int m, Dispersion tag) {
  Matrixcd c = Matrixcd::Zero(g->space.n, g->n_t);
  c(g->space.index_of(k), g->index_of_t(m)) = 1.0;
  return SpaceTimeField::from_coeffs(g, std::move(c), tag);
}

SpaceTimeField st_random(const StGridPtr& g, Dispersion tag, std::uint64_t seed) {
  EnsembleSpec spec{0.0, g->space.n / 4.0, g->n_t / 4.0, 1.0, tag};
  return random_ensemble(g, spec, 1, seed)[0];
}

} // namespace

TEST_CASE("space-time transforms round trip") {
  auto g = small_grid();
  auto f = st_random(g, Dispersion::schrodinger, 1);
  const Matrixcd v = f.values();
  SpaceTimeField again(g, v, Dispersion::schrodinger);
  CHECK((again.coeffs() - f.coeffs()).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("xsb_norm") {
  auto g = small_grid();

  SUBCASE("s = b = 0 is the space-time L^2 norm") {
    auto f = st_random(g, Dispersion::schrodinger, 2);
    const double quad = std::sqrt(g->space.dx * g->dt * f.values().cwiseAbs2().sum());
    CHECK(xsb_norm(f, {0.0, 0.0}) == doctest::Approx(quad).epsilon(1e-12));
    CHECK(l2_norm(f) == doctest::Approx(quad).epsilon(1e-12));
  }

  SUBCASE("single mode weights") {
    const int k = 3, m = -5;
    auto f = st_mode(g, k, m, Dispersion::schrodinger);
    for (double s : {0.0, 0.5}) {
      for (double b : {0.0, 0.5, -0.25}) {
        const double w = std::pow(1.0 + k * k, 0.5 * s) *
                         std::pow(1.0 + std::pow(m + k * k, 2), 0.5 * b);
        CHECK(xsb_norm(f, {s, b}) ==
              doctest::Approx(w * 2.0 * M_PI).epsilon(1e-12)); // sqrt(LT) = 2 pi
      }
    }
  }

  SUBCASE("b = 0 equals the time-integrated spatial Sobolev norm") {
    auto f = st_random(g, Dispersion::schrodinger, 3);
    const double s = 0.65;
    // quadrature oracle: sum over time slices of the spatial H^s norm squared
    double acc = 0.0;
    auto table = Arrayd(g->space.n);
    for (int i = 0; i < g->space.n; ++i)
      table[i] = std::pow(1.0 + g->space.wavenumbers[i] * g->space.wavenumbers[i], s);
    for (int m = 0; m < g->n_t; ++m) {
      const Arraycd slice = f.values().col(m).array();
      const Arraycd sc = forward_dft(slice);
      acc += g->dt * g->space.box_length * (table * sc.abs2()).sum();
    }
    CHECK(xsb_norm(f, {s, 0.0}) == doctest::Approx(std::sqrt(acc)).epsilon(1e-10));
  }

  SUBCASE("wrong dispersion tag is rejected") {
    auto f = st_random(g, Dispersion::airy, 4);
    CHECK_THROWS_AS(xsb_norm(f, {0.0, 0.0}), ConfigError);
    CHECK_THROWS_AS(ysb_norm(st_random(g, Dispersion::schrodinger, 5), {0.0, 0.0}), ConfigError);
  }
}

TEST_CASE("ysb_norm single mode carries the airy weight") {
  auto g = small_grid();
  const int k = 2, m = 7;
  auto f = st_mode(g, k, m, Dispersion::airy);
  const double w = std::pow(1.0 + std::pow(m + k * k * k, 2), 0.25);
  CHECK(ysb_norm(f, {0.0, 0.5}) == doctest::Approx(w * 2.0 * M_PI).epsilon(1e-12));
}

TEST_CASE("ysb_norm with trivial weights is the space-time L^2 norm") {
  auto g = small_grid();
  auto f = st_random(g, Dispersion::airy, 17);
  const double quad = std::sqrt(g->space.dx * g->dt * f.values().cwiseAbs2().sum());
  CHECK(ysb_norm(f, {0.0, 0.0}) == doctest::Approx(quad).epsilon(1e-12));
}

TEST_CASE("norm homogeneity and weight monotonicity") {
  auto g = small_grid();
  auto f = st_random(g, Dispersion::schrodinger, 6);

  SUBCASE("homogeneous of degree one") {
    SpaceTimeField f2(g, Matrixcd(2.0 * f.values()), Dispersion::schrodinger);
    CHECK(xsb_norm(f2, {0.4, 0.3}) == doctest::Approx(2.0 * xsb_norm(f, {0.4, 0.3})).epsilon(1e-14));
  }

  SUBCASE("nondecreasing in s and b") {
    double prev = 0.0;
    for (double s : {0.0, 0.3, 0.8}) {
      const double cur = xsb_norm(f, {s, 0.2});
      CHECK(cur >= prev);
      prev = cur;
    }
    prev = 0.0;
    for (double b : {0.0, 0.25, 0.6}) {
      const double cur = xsb_norm(f, {0.3, b});
      CHECK(cur >= prev);
      prev = cur;
    }
  }
}

TEST_CASE("random_ensemble") {
  auto g = small_grid();
  EnsembleSpec spec{0.0, 4.0, 4.0, 1.5, Dispersion::airy};

  SUBCASE("count zero gives an empty list") {
    CHECK(random_ensemble(g, spec, 0, 1).empty());
  }

  SUBCASE("fixed seed reproduces bit-identical fields") {
    auto a = random_ensemble(g, spec, 3, 42);
    auto b = random_ensemble(g, spec, 3, 42);
    for (int i = 0; i < 3; ++i)
      CHECK(a[i].coeffs() == b[i].coeffs());
  }

  SUBCASE("different seeds differ") {
    auto a = random_ensemble(g, spec, 1, 42);
    auto b = random_ensemble(g, spec, 1, 43);
    CHECK((a[0].coeffs() - b[0].coeffs()).cwiseAbs().maxCoeff() > 0.0);
  }

  SUBCASE("concentration rescales by the documented damping") {
    EnsembleSpec flat = spec;
    flat.concentration = 0.0;
    auto a = random_ensemble(g, flat, 1, 7)[0];
    auto b = random_ensemble(g, spec, 1, 7)[0];
    const int i = g->space.index_of(2), j = g->index_of_t(3);
    const double d = g->taus[j] - std::pow(g->space.wavenumbers[i], 3);
    const double damp = std::pow(1.0 + d * d, -0.5 * spec.concentration);
    CHECK(std::abs(b.coeffs()(i, j) - damp * a.coeffs()(i, j)) < 1e-15);
  }

  SUBCASE("support restricted to the band") {
    auto f = random_ensemble(g, spec, 1, 9)[0];
    for (int i = 0; i < g->space.n; ++i)
      for (int j = 0; j < g->n_t; ++j)
        if (std::abs(g->space.wavenumbers[i]) > 4.0 || std::abs(g->taus[j]) > 4.0)
          CHECK(f.coeffs()(i, j) == cdouble(0.0, 0.0));
  }

  SUBCASE("empty band is a configuration error") {
    EnsembleSpec bad{5.0, 4.0, 4.0, 0.0, Dispersion::airy};
    CHECK_THROWS_AS(random_ensemble(g, bad, 1, 1), ConfigError);
  }

  SUBCASE("band beyond the resolved range is rejected") {
    EnsembleSpec bad{0.0, 1000.0, 4.0, 0.0, Dispersion::airy};
    CHECK_THROWS_AS(random_ensemble(g, bad, 1, 1), ConfigError);
  }
}

TEST_CASE("bilinear difference-frequency operator on single modes") {
  auto g = small_grid();

  SUBCASE("equal spatial frequencies are annihilated for a > 0") {
    auto u = st_mode(g, 3, 2, Dispersion::schrodinger);
    auto out = bilinear_diff_spacetime(u, u, 0.5, Dispersion::none);
    CHECK(out.coeffs().cwiseAbs().maxCoeff() < 1e-14);
  }

  SUBCASE("distinct modes combine at the sum frequency with |xi1 - xi2|^a") {
    auto u1 = st_mode(g, 4, 1, Dispersion::schrodinger);
    auto u2 = st_mode(g, -1, 2, Dispersion::schrodinger);
    auto out = bilinear_diff_spacetime(u1, u2, 0.5, Dispersion::none);
    const cdouble got = out.coeffs()(g->space.index_of(3), g->index_of_t(3));
    CHECK(std::abs(got - cdouble(std::sqrt(5.0), 0.0)) < 1e-12);
    CHECK(l2_norm(out) == doctest::Approx(std::sqrt(5.0) * 2.0 * M_PI).epsilon(1e-12));
  }
}

TEST_CASE("estimate gates quote the violated hypothesis") {
  EstimateParams p;

  SUBCASE("L11 lower bound on b'") {
    p.s = 0.3;
    p.bprime = 0.0; // below 1/4 - 0.1 = 0.15
    CHECK_THROWS_WITH_AS(check_gates(CatalogId::L11, p),
                         "estimate gate violated: b' >= max(1/4 - s/3, 0)", ConfigError);
  }

  SUBCASE("L12 strict bound") {
    p.s = 0.5;
    p.bprime = 1.0 / 6.0;
    CHECK_THROWS_WITH_AS(check_gates(CatalogId::L12, p),
                         "estimate gate violated: b' > max(1/6, 1/2 - s)", ConfigError);
  }

  SUBCASE("L12b needs b' > 1/2") {
    p.bprime = 0.4;
    CHECK_THROWS_WITH_AS(check_gates(CatalogId::L12b, p),
                         "estimate gate violated: b, b' > 1/2", ConfigError);
  }

  SUBCASE("EC separation factor") {
    p.beta_sep = 1.0;
    CHECK_THROWS_AS(check_gates(CatalogId::EC, p), ConfigError);
  }

  SUBCASE("EF regularity sum") {
    p.gamma1 = -0.4;
    p.gamma2 = -0.4;
    CHECK_THROWS_WITH_AS(check_gates(CatalogId::EF, p),
                         "estimate gate violated: gamma_1 + gamma_2 > -3/4", ConfigError);
  }

  SUBCASE("b > 1/2 across entries") {
    p.b = 0.5;
    for (CatalogId id : {CatalogId::L11, CatalogId::L13, CatalogId::EA, CatalogId::EB,
                         CatalogId::ED, CatalogId::EG, CatalogId::EH})
      CHECK_THROWS_AS(check_gates(id, p), ConfigError);
  }
}

TEST_CASE("evaluate_estimate") {
  auto g = make_spacetime_grid(64, 2.0 * M_PI, 64, 2.0 * M_PI);
  EstimateParams p;

  SUBCASE("zero input gives lhs = 0") {
    SpaceTimeField z(g, Matrixcd::Zero(g->space.n, g->n_t), Dispersion::schrodinger);
    auto specs2 = entry_ensembles(CatalogId::EA, p, 64);
    auto v = random_ensemble(g, specs2[1], 1, 5)[0];
    const SamplePair sp = evaluate_estimate(CatalogId::EA, p, {z, v});
    CHECK(sp.lhs == 0.0);
  }

  SUBCASE("EH on a single shared mode vanishes") {
    auto u = st_mode(g, 3, 1, Dispersion::schrodinger);
    const SamplePair sp = evaluate_estimate(CatalogId::EH, p, {u, u});
    CHECK(sp.lhs < 1e-14);
    CHECK(sp.rhs > 0.0);
  }

  SUBCASE("ratio is scale invariant across the whole catalog") {
    for (CatalogId id : {CatalogId::L11, CatalogId::L12, CatalogId::L12b, CatalogId::L13,
                         CatalogId::EA, CatalogId::EB, CatalogId::EC, CatalogId::ED,
                         CatalogId::EE, CatalogId::EF, CatalogId::EG, CatalogId::EH}) {
      auto specs = entry_ensembles(id, p, 64);
      std::vector<SpaceTimeField> inputs, scaled;
      for (size_t k = 0; k < specs.size(); ++k) {
        auto f = random_ensemble(g, specs[k], 1, 11 + k)[0];
        scaled.emplace_back(g, Matrixcd((k ? 0.5 : 3.0) * f.values()), f.tag());
        inputs.push_back(std::move(f));
      }
      const SamplePair a = evaluate_estimate(id, p, inputs);
      const SamplePair b = evaluate_estimate(id, p, scaled);
      REQUIRE(a.rhs > 0.0);
      CHECK(a.lhs / a.rhs == doctest::Approx(b.lhs / b.rhs).epsilon(1e-10));
    }
  }

  SUBCASE("conjugate sub-entries are measurable") {
    for (auto [id, c1, c2] : {std::tuple{CatalogId::EH, true, false},
                              std::tuple{CatalogId::EC, false, true},
                              std::tuple{CatalogId::L12, false, true},
                              std::tuple{CatalogId::ED, true, true},
                              std::tuple{CatalogId::L13, true, false}}) {
      EstimateParams pc;
      pc.conj1 = c1;
      pc.conj2 = c2;
      auto specs = entry_ensembles(id, pc, 64);
      std::vector<SpaceTimeField> inputs;
      for (size_t k = 0; k < specs.size(); ++k)
        inputs.push_back(random_ensemble(g, specs[k], 1, 31 + k)[0]);
      const SamplePair sp = evaluate_estimate(id, pc, inputs);
      CHECK(std::isfinite(sp.lhs));
      CHECK(sp.rhs > 0.0);
    }
  }
}

TEST_CASE("measure_estimate produces finite deterministic reports") {
  EstimateParams p;
  const EstimateReport a = measure_estimate(CatalogId::L13, p, 5, {64, 128}, 99);
  const EstimateReport b = measure_estimate(CatalogId::L13, p, 5, {64, 128}, 99);
  REQUIRE(a.resolutions.size() == 2);
  for (size_t i = 0; i < 2; ++i) {
    CHECK(a.resolutions[i].max_ratio > 0.0);
    CHECK(std::isfinite(a.resolutions[i].max_ratio));
    CHECK(a.resolutions[i].max_ratio == b.resolutions[i].max_ratio);
    for (size_t j = 0; j < a.resolutions[i].ratios.size(); ++j)
      CHECK(a.resolutions[i].ratios[j] == b.resolutions[i].ratios[j]);
  }
}
