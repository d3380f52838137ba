#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "doctest.h"
#include "specband/grid.hpp"

using namespace specband;

namespace {

const KernelSpec kCos = make_kernel(KernelFamily::FourierCosine);

Signal constant(int N, double value) {
  Signal f;
  f.values = CVector::Constant(N, value);
  return f;
}

}  // namespace

TEST_CASE("build_grid examples") {
  const GridPair g = build_grid(kCos, 1.0, 2);
  CHECK(g.time_nodes == std::vector<double>{0.25, 0.75});
  CHECK(g.time_weights == std::vector<double>{0.5, 0.5});
  const GridPair p = build_grid(kCos, std::numbers::pi, 4);
  for (int j = 0; j < 4; ++j) CHECK(p.freq_nodes[j] == doctest::Approx(j + 0.5).epsilon(1e-15));
  CHECK(p.Xi == doctest::Approx(4.0).epsilon(1e-15));
  const GridPair h = build_grid(make_kernel(KernelFamily::Hankel, 0.0), 1.0, 128, GridRule::Midpoint);
  double total = 0.0;
  for (double w : h.time_weights) total += w;
  CHECK(std::abs(total - 0.5) < 1e-15);
  CHECK_THROWS_AS(build_grid(kCos, 0.0, 8), std::invalid_argument);
  CHECK_THROWS_AS(build_grid(kCos, -1.0, 8), std::invalid_argument);
  CHECK_THROWS_AS(build_grid(kCos, 1.0, 1), std::invalid_argument);
  CHECK_THROWS_AS(build_grid(kCos, 1.0, 8, GridRule::BesselZeros), std::invalid_argument);
}

TEST_CASE("grid invariants across families and rules") {
  struct Case {
    KernelSpec spec;
    GridRule rule;
  };
  std::vector<Case> cases = {{kCos, GridRule::Midpoint},
                             {make_kernel(KernelFamily::FourierSine), GridRule::Midpoint}};
  for (double alpha : {-0.5, 0.0, 1.0, 2.5, 10.0})
    cases.push_back({make_kernel(KernelFamily::Hankel, alpha), GridRule::BesselZeros});
  // The midpoint error on x^(2a-1) is about a(2a-1)/(12 N^2), above 1e-3 at N = 128 once a > 7.
  for (double alpha : {-0.5, 0.0, 1.0, 2.5})
    cases.push_back({make_kernel(KernelFamily::Hankel, alpha), GridRule::Midpoint});
  for (const Case& c : cases) {
    for (int N : {128, 512}) {
      for (double X : {1.0, 8.0, 20.0}) {
        const GridPair g = build_grid(c.spec, X, N, c.rule);
        for (int i = 0; i < N; ++i) {
          CHECK(g.time_nodes[i] > 0.0);
          CHECK(g.freq_nodes[i] > 0.0);
          CHECK(g.time_weights[i] > 0.0);
          CHECK(g.freq_weights[i] > 0.0);
          if (i > 0) {
            CHECK(g.time_nodes[i] > g.time_nodes[i - 1]);
            CHECK(g.freq_nodes[i] > g.freq_nodes[i - 1]);
          }
        }
        CHECK(g.time_nodes.back() < X);
        CHECK(g.freq_nodes.back() < g.Xi);
        double wt = 0.0, wf = 0.0;
        for (int i = 0; i < N; ++i) {
          wt += g.time_weights[i];
          wf += g.freq_weights[i];
        }
        const double mt = region_measure(Region::interval(0.0, X), c.spec);
        const double mf = region_measure(Region::interval(0.0, g.Xi), c.spec);
        CHECK_MESSAGE(std::abs(wt / mt - 1.0) <= 1e-3, "alpha=" << c.spec.alpha << " N=" << N);
        CHECK_MESSAGE(std::abs(wf / mf - 1.0) <= 1e-3, "alpha=" << c.spec.alpha << " N=" << N);
      }
    }
  }
}

TEST_CASE("weighted_inner") {
  const GridPair g = build_grid(kCos, 1.0, 64);
  CHECK(weighted_inner(constant(64, 1.0), constant(64, 1.0), g).real() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK_THROWS_AS(weighted_inner(constant(64, 1.0), constant(63, 1.0), g), std::invalid_argument);
  std::mt19937_64 rng(11);
  std::normal_distribution<double> nd;
  for (int t = 0; t < 100; ++t) {
    Signal f, h;
    f.values.resize(64);
    h.values.resize(64);
    for (int i = 0; i < 64; ++i) {
      f.values[i] = {nd(rng), nd(rng)};
      h.values[i] = {nd(rng), nd(rng)};
    }
    const auto fh = weighted_inner(f, h, g);
    const auto hf = weighted_inner(h, f, g);
    CHECK(std::abs(fh - std::conj(hf)) < 1e-13);
    CHECK(std::abs(fh) <= norm(f, g) * norm(h, g) * (1 + 1e-14));
    CHECK(weighted_inner(f, f, g).real() > 0.0);
  }
}

TEST_CASE("regions and measures") {
  CHECK(region_measure(Region::interval(0, 2), kCos) == 2.0);
  CHECK(region_measure(Region::interval(1, 2), make_kernel(KernelFamily::Hankel, 0.0)) ==
        doctest::Approx(1.5).epsilon(1e-15));
  CHECK(region_measure(Region({{0, 1}, {3, 4}}), kCos) == 2.0);
  CHECK(region_measure(Region(), kCos) == 0.0);
  CHECK_THROWS_AS(Region({{0, 2}, {1, 3}}), std::invalid_argument);
  CHECK_THROWS_AS(Region({{2, 1}}), std::invalid_argument);
  CHECK_THROWS_AS(Region({{-1, 1}}), std::invalid_argument);
  CHECK(Region({{3, 4}, {0, 1}}).intervals().front().lo == 0.0);

  const KernelSpec h = make_kernel(KernelFamily::Hankel, 1.5);
  const Region a({{0.5, 1.0}, {2.0, 3.0}});
  const Region b({{0.5, 1.0}});
  const Region c({{2.0, 3.0}});
  CHECK(region_measure(a, h) == doctest::Approx(region_measure(b, h) + region_measure(c, h)).epsilon(1e-15));
  CHECK(region_measure(Region::interval(0.4, 3.0), h) > region_measure(a, h));

  const GridPair g = build_grid(kCos, 4.0, 8);
  const Eigen::VectorXd m = region_mask(Region::interval(0.25, 1.0), g, Domain::Time);
  CHECK(m.sum() == 2.0);  // nodes 0.25 and 0.75
  CHECK(region_mask(Region(), g, Domain::Time).sum() == 0.0);
  CHECK(discrete_measure(Region::interval(0.0, 4.0), g, Domain::Time) == doctest::Approx(4.0));
  CHECK_THROWS_AS(region_mask(Region::interval(0.0, 5.0), g, Domain::Time), std::invalid_argument);
}

TEST_CASE("sample_signal examples") {
  const GridPair g = build_grid(kCos, 4.0, 2);  // nodes 1, 3
  const Generator gauss = Generator::gaussian(0.0, 1.0);
  CHECK(sample_signal(gauss, 1.0, g, kCos).values[0].real() == doctest::Approx(0.60653).epsilon(1e-5));
  CHECK(sample_signal(gauss, 2.0, g, kCos).values[0].real() == doctest::Approx(0.62400).epsilon(1e-4));
  CHECK(sample_signal(gauss, 2.0, g, kCos).values[0].real() ==
        doctest::Approx(std::exp(-0.125) / std::sqrt(2.0)).epsilon(1e-15));

  const GridPair fine = build_grid(kCos, 4.0, 16);
  const Signal ind = sample_signal(Generator::indicator(Region::interval(0, 1)), 2.0, fine, kCos);
  for (int i = 0; i < 16; ++i) {
    const double expect = fine.time_nodes[i] < 2.0 ? 1.0 / std::sqrt(2.0) : 0.0;
    CHECK(ind.values[i].real() == doctest::Approx(expect).epsilon(1e-15));
  }
  CHECK_THROWS_AS(sample_signal(gauss, 0.0, g, kCos), std::invalid_argument);
  CHECK_THROWS_AS(Generator::gaussian(0.0, -1.0), std::invalid_argument);
  CHECK_THROWS_AS(Generator::bump(2.0, 1.0), std::invalid_argument);
}

TEST_CASE("dispersion examples") {
  const GridPair g = build_grid(kCos, 2.0, 4096);
  const Signal f = sample_signal(Generator::indicator(Region::interval(0, 1)), 1.0, g, kCos);
  CHECK(dispersion(f, {1.0, 2.0}, g, Domain::Time) == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-6));
  CHECK(dispersion(f, {1.0, 1.0}, g, Domain::Time) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(dispersion(f, {0.0, 2.0}, g, Domain::Time) == doctest::Approx(norm(f, g)).epsilon(1e-15));
  CHECK(dispersion(f, {1e-9, 2.0}, g, Domain::Time) == doctest::Approx(norm(f, g)).epsilon(1e-8));
  CHECK(dispersion(f, {1e-9, 1.0}, g, Domain::Time) == doctest::Approx(norm(f, g, 1.0)).epsilon(1e-8));
}

TEST_CASE("dilation invariants on analytic generators") {
  const GridPair g = build_grid(kCos, 16.0, 512);
  const Generator bump = Generator::bump(1.0, 2.0);
  const double n0 = norm(sample_signal(bump, 1.0, g, kCos), g);
  for (int n = 1; n <= 3; ++n) {
    const Signal fn = sample_signal(bump, std::pow(2.0, n), g, kCos);
    CHECK(std::abs(norm(fn, g) / n0 - 1.0) <= 1e-3);
  }
  for (const Generator& gen : {bump, Generator::gaussian(2.0, 0.5)}) {
    const Signal f = sample_signal(gen, 1.0, g, kCos);
    for (double s : {0.5, 1.0, 2.0}) {
      for (double lam : {2.0, 4.0}) {
        const Signal d = sample_signal(gen, lam, g, kCos);
        const double lhs = dispersion(d, {s, 2.0}, g, Domain::Time);
        const double rhs = std::pow(lam, s) * dispersion(f, {s, 2.0}, g, Domain::Time);
        CHECK(std::abs(lhs / rhs - 1.0) <= 1e-3);
      }
    }
  }
  const KernelSpec h = make_kernel(KernelFamily::Hankel, 1.0);
  const GridPair gh = build_grid(h, 16.0, 512);
  const double h0 = norm(sample_signal(bump, 1.0, gh, h), gh);
  for (int n = 1; n <= 3; ++n) CHECK(std::abs(norm(sample_signal(bump, std::pow(2.0, n), gh, h), gh) / h0 - 1.0) <= 1e-3);
}

TEST_CASE("symmetrize round trip") {
  const GridPair g = build_grid(make_kernel(KernelFamily::Hankel, 0.0), 5.0, 32);
  const Signal f = sample_signal(Generator::gaussian(1.0, 1.0), 1.0, g, make_kernel(KernelFamily::Hankel, 0.0));
  const Signal back = desymmetrize(symmetrize(f, g), g, Domain::Time);
  CHECK((back.values - f.values).norm() < 1e-14);
  CHECK(symmetrize(f, g).norm() == doctest::Approx(norm(f, g)).epsilon(1e-14));
}
