#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "doctest.h"
#include "specband/spectral.hpp"
#include "specband/transform.hpp"

using namespace specband;

namespace {

const KernelSpec kCos = make_kernel(KernelFamily::FourierCosine);
const KernelSpec kSin = make_kernel(KernelFamily::FourierSine);

Signal random_signal(std::mt19937_64& rng, int N, Domain d = Domain::Time) {
  std::normal_distribution<double> nd;
  Signal f;
  f.domain = d;
  f.values.resize(N);
  for (int i = 0; i < N; ++i) f.values[i] = {nd(rng), nd(rng)};
  return f;
}

Signal frequency_symbol(const GridPair& g, double (*fn)(double)) {
  Signal s;
  s.domain = Domain::Frequency;
  s.values.resize(g.N);
  for (int j = 0; j < g.N; ++j) s.values[j] = fn(g.freq_nodes[j]);
  return s;
}

Signal unit(const Signal& f, const GridPair& g) {
  Signal out = f;
  out.values /= norm(f, g);
  return out;
}

}  // namespace

TEST_CASE("trigonometric matrices against direct summation at N=8") {
  const int N = 8;
  // Oracle: sum_i cos((i+1/2)(j+1/2)pi/N) cos((i+1/2)(k+1/2)pi/N) = (N/2) delta_jk, same for sin.
  for (int j = 0; j < N; ++j)
    for (int k = 0; k < N; ++k) {
      long double c = 0, s = 0;
      for (int i = 0; i < N; ++i) {
        const long double a = (i + 0.5L) * (j + 0.5L) * std::numbers::pi_v<long double> / N;
        const long double b = (i + 0.5L) * (k + 0.5L) * std::numbers::pi_v<long double> / N;
        c += std::cos(a) * std::cos(b);
        s += std::sin(a) * std::sin(b);
      }
      CHECK(std::abs(static_cast<double>(c) - (j == k ? N / 2.0 : 0.0)) < 1e-14);
      CHECK(std::abs(static_cast<double>(s) - (j == k ? N / 2.0 : 0.0)) < 1e-14);
    }
  for (const KernelSpec& spec : {kCos, kSin}) {
    const GridPair g = build_grid(spec, 3.0, N);
    const TransformBundle b = build_transform(spec, g);
    for (int j = 0; j < N; ++j)
      for (int i = 0; i < N; ++i) {
        const long double a = (i + 0.5L) * (j + 0.5L) * std::numbers::pi_v<long double> / N;
        const long double ref = std::sqrt(2.0L / N) * (spec.family == KernelFamily::FourierSine ? std::sin(a) : std::cos(a));
        CHECK(std::abs(b.A.entries(j, i) - std::complex<double>(static_cast<double>(ref))) < 1e-15);
      }
    CHECK(b.defect <= 1e-12);
  }
}

TEST_CASE("trigonometric defects") {
  for (const KernelSpec& spec : {kCos, kSin}) {
    CHECK(build_transform(spec, build_grid(spec, 8.0, 256)).defect <= 1e-12);
    CHECK(build_transform(spec, build_grid(spec, 1.0, 100), DefectNorm::Frobenius).defect <= 1e-12);
  }
}

TEST_CASE("hankel assembly matches independent entries") {
  for (double alpha : {0.0, 1.0}) {
    const KernelSpec h = make_kernel(KernelFamily::Hankel, alpha);
    const GridPair g = build_grid(h, 20.0, 64);
    const TransformBundle b = build_transform(h, g);
    const double norm_const = std::pow(2.0, alpha) * std::tgamma(alpha + 1.0);
    for (int j = 0; j < 64; ++j)
      for (int i = 0; i < 64; ++i) {
        const double z = g.time_nodes[i] * g.freq_nodes[j];
        const double ref = std::sqrt(g.freq_weights[j] * g.time_weights[i]) * norm_const *
                           std::pow(z, -alpha) * std::cyl_bessel_j(alpha, z);
        CHECK(std::abs(b.A.entries(j, i).real() - ref) < 1e-12);
      }
    CHECK(b.defect <= 1e-2);
  }
}

TEST_CASE("hankel defect at X=20, N=512") {
  for (double alpha : {0.0, 1.0}) {
    const KernelSpec h = make_kernel(KernelFamily::Hankel, alpha);
    const TransformBundle b = build_transform(h, build_grid(h, 20.0, 512));
    MESSAGE("alpha=" << alpha << " defect=" << b.defect);
    CHECK(b.defect <= 1e-2);
    CHECK(!defect_warning(b, 1e-2));
    CHECK(defect_warning(b, 0.0));
  }
}

TEST_CASE("parseval and round trip") {
  std::mt19937_64 rng(3);
  const GridPair g = build_grid(kCos, 12.0, 256);
  const TransformBundle b = build_transform(kCos, g);
  const Signal gauss = sample_signal(Generator::gaussian(0.0, 1.0), 1.0, g, kCos);
  const Signal tg = apply_transform(b, gauss, Direction::Forward);
  CHECK(tg.domain == Domain::Frequency);
  CHECK(std::abs(weighted_inner(tg, tg, g).real() / weighted_inner(gauss, gauss, g).real() - 1.0) <= 1e-10);
  double worst = 0.0;
  for (int t = 0; t < 100; ++t) {
    const Signal f = random_signal(rng, g.N);
    const Signal back = apply_transform(b, apply_transform(b, f, Direction::Forward), Direction::Inverse);
    worst = std::max(worst, (symmetrize(back, g) - symmetrize(f, g)).norm() / symmetrize(f, g).norm());
    const CVector v = symmetrize(f, g);
    const CVector w = symmetrize(random_signal(rng, g.N), g);
    const CMatrix& A = b.A.entries;
    CHECK(std::abs((A * v).dot(A * w) - v.dot(w)) <= (b.defect + 1e-13) * v.norm() * w.norm());
  }
  CHECK(worst <= b.defect + 1e-10);
  CHECK_THROWS_AS(apply_transform(b, random_signal(rng, 10), Direction::Forward), std::invalid_argument);
  CHECK_THROWS_AS(apply_transform(b, tg, Direction::Forward), std::invalid_argument);
}

TEST_CASE("gaussian is self-reciprocal under the cosine transform") {
  const GridPair g = build_grid(kCos, 12.0, 512);
  const TransformBundle b = build_transform(kCos, g);
  const Signal tf = apply_transform(b, sample_signal(Generator::gaussian(0.0, 1.0), 1.0, g, kCos), Direction::Forward);
  double worst = 0.0;
  for (int j = 0; j < g.N; ++j)
    worst = std::max(worst, std::abs(tf.values[j] - std::exp(-0.5 * g.freq_nodes[j] * g.freq_nodes[j])));
  CHECK(worst <= 1e-4);
  // The quadrature generator reproduces the same continuum transform.
  const Generator tg = Generator::transformed(Generator::gaussian(0.0, 1.0), kCos);
  for (double xi : {0.0, 0.7, 2.5, 6.0}) CHECK(std::abs(tg(xi) - std::exp(-0.5 * xi * xi)) <= 1e-12);
}

TEST_CASE("limit operators") {
  const GridPair g = build_grid(kCos, 8.0, 64);
  const TransformBundle b = build_transform(kCos, g);
  const CMatrix I = CMatrix::Identity(64, 64);
  CHECK(limit_operator(b, Region(), Domain::Time).entries.isZero(0.0));
  CHECK(limit_operator(b, Region(), Domain::Frequency).entries.isZero(0.0));
  CHECK((limit_operator(b, Region::interval(0, 8), Domain::Time).entries - I).isZero(0.0));
  const Region S({{0.0, 2.0}, {5.0, 6.0}});
  const Region Sigma = Region::interval(0.0, 4.0);
  const Region SigmaC = Region::interval(4.0, g.Xi);
  const OperatorMatrix E = limit_operator(b, S, Domain::Time);
  const OperatorMatrix F = limit_operator(b, Sigma, Domain::Frequency);
  const OperatorMatrix Fc = limit_operator(b, SigmaC, Domain::Frequency);
  CHECK(E.tag == OpTag::TimeLimit);
  CHECK(F.tag == OpTag::FreqLimit);
  CHECK((E.entries * E.entries - E.entries).cwiseAbs().maxCoeff() <= 1e-12);
  CHECK((F.entries * F.entries - F.entries).cwiseAbs().maxCoeff() <= 2 * b.defect + 1e-12);
  CHECK((F.entries - F.entries.adjoint()).cwiseAbs().maxCoeff() <= 1e-12);
  CHECK((F.entries + Fc.entries - I).cwiseAbs().maxCoeff() <= 1e-12);
  CHECK(schatten(F).norm(kInfinity) <= 1.0 + b.defect + 1e-12);
  const OperatorMatrix E2 = limit_operator(b, Region::interval(1.0, 7.0), Domain::Time);
  CHECK((E.entries * E2.entries - E2.entries * E.entries).isZero(0.0));
  CHECK_THROWS_AS(limit_operator(b, Region::interval(0, 9), Domain::Time), std::invalid_argument);
  CHECK_THROWS_AS(limit_operator(b, Region::interval(0, g.Xi + 1), Domain::Frequency), std::invalid_argument);
}

TEST_CASE("multipliers") {
  const GridPair g = build_grid(kCos, 8.0, 64);
  const TransformBundle b = build_transform(kCos, g);
  const CMatrix I = CMatrix::Identity(64, 64);
  const Signal one = frequency_symbol(g, [](double) { return 1.0; });
  CHECK((multiplier(b, one).entries - I).cwiseAbs().maxCoeff() <= b.defect + 1e-12);
  const Region Sigma = Region::interval(1.0, 5.0);
  Signal chi;
  chi.domain = Domain::Frequency;
  chi.values = region_mask(Sigma, g, Domain::Frequency).cast<std::complex<double>>();
  CHECK((multiplier(b, chi).entries - limit_operator(b, Sigma, Domain::Frequency).entries).isZero(0.0));
  const Signal s1 = frequency_symbol(g, [](double x) { return std::exp(-x); });
  const Signal s2 = frequency_symbol(g, [](double x) { return std::cos(x); });
  Signal prod = s1;
  prod.values = s1.values.cwiseProduct(s2.values);
  CHECK((multiplier(b, s1).entries * multiplier(b, s2).entries - multiplier(b, prod).entries).cwiseAbs().maxCoeff() <=
        2 * b.defect + 1e-12);
  const double sup = s2.values.cwiseAbs().maxCoeff();
  CHECK(schatten(multiplier(b, s2)).norm(kInfinity) <= sup * (1 + b.defect) + 1e-12);
}

TEST_CASE("wavelet multipliers") {
  std::mt19937_64 rng(5);
  const GridPair g = build_grid(kCos, 8.0, 64);
  const TransformBundle b = build_transform(kCos, g);
  const Region S = Region::interval(0.5, 3.0);
  const Region Sigma = Region::interval(0.0, 6.0);
  const double mu = discrete_measure(S, g, Domain::Time);
  Signal window;
  window.values = region_mask(S, g, Domain::Time).cast<std::complex<double>>() / std::sqrt(mu);
  Signal chi;
  chi.domain = Domain::Frequency;
  chi.values = region_mask(Sigma, g, Domain::Frequency).cast<std::complex<double>>();
  const OperatorMatrix P = wavelet_multiplier(b, chi, window, window);
  CHECK((mu * P.entries - restriction_operator(b, S, Sigma).entries).cwiseAbs().maxCoeff() <= 1e-12);

  const Signal phi = unit(random_signal(rng, 64), g);
  const Signal psi = unit(random_signal(rng, 64), g);
  const Signal sigma = random_signal(rng, 64, Domain::Frequency);
  const Signal one = frequency_symbol(g, [](double) { return 1.0; });
  const CMatrix pointwise = psi.values.conjugate().cwiseProduct(phi.values).asDiagonal();
  CHECK((wavelet_multiplier(b, one, phi, psi).entries - pointwise).cwiseAbs().maxCoeff() <=
        b.defect + 1e-12);
  Signal conj_sigma = sigma;
  conj_sigma.values = sigma.values.conjugate();
  CHECK((wavelet_multiplier(b, sigma, phi, psi).entries.adjoint() - wavelet_multiplier(b, conj_sigma, psi, phi).entries)
            .cwiseAbs()
            .maxCoeff() <= 1e-12);
  Signal loud = phi;
  loud.values *= 2.0;
  try {
    wavelet_multiplier(b, sigma, loud, psi);
    FAIL("expected an exception");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("phi") != std::string::npos);
  }
  CHECK_THROWS_AS(wavelet_multiplier(b, sigma, phi, loud), std::invalid_argument);
}

TEST_CASE("dilation covariance") {
  const GridPair g = build_grid(kCos, 16.0, 512);
  const TransformBundle b = build_transform(kCos, g);
  for (const Generator& gen : {Generator::gaussian(0.0, 1.0), Generator::bump(1.0, 2.0)}) {
    const double nf = norm(sample_signal(gen, 1.0, g, kCos), g);
    const Generator tgen = Generator::transformed(gen, kCos);
    for (double lam : {2.0, 4.0}) {
      const Signal lhs = apply_transform(b, sample_signal(gen, lam, g, kCos), Direction::Forward);
      const Signal rhs = sample_signal(tgen, 1.0 / lam, g, kCos, Domain::Frequency);
      const double err = weighted_norm(lhs.values - rhs.values, g.freq_weights);
      MESSAGE(gen.family() << " lambda=" << lam << " relative error " << err / nf);
      CHECK(err <= 1e-3 * nf);
    }
  }
}
