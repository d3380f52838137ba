#include "specband/grid.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "specband/special.hpp"

namespace specband {

GridRule default_rule(const KernelSpec& spec) {
  return spec.family == KernelFamily::Hankel ? GridRule::BesselZeros : GridRule::Midpoint;
}

GridPair build_grid(const KernelSpec& spec, double X, int N) { return build_grid(spec, X, N, default_rule(spec)); }

namespace {

void midpoint_grid(const KernelSpec& spec, GridPair& g) {
  const double dx = g.X / g.N;
  const double dxi = std::numbers::pi / g.X;
  for (int i = 0; i < g.N; ++i) {
    g.time_nodes[i] = (i + 0.5) * dx;
    g.time_weights[i] = measure_density(spec, g.time_nodes[i]) * dx;
    g.freq_nodes[i] = (i + 0.5) * dxi;
    g.freq_weights[i] = measure_density(spec, g.freq_nodes[i]) * dxi;
  }
  g.Xi = g.N * dxi;
}

// Fourier-Bessel rule on the zeros j_1 < ... < j_{N+1} of J_alpha: x_i = R j_i / S and
// xi_j = j_j / R with S = j_{N+1}. The time weights scale like R^(2a), so R is fixed by
// requiring them to sum to mu((0, X)); Xi is the extent whose measure the frequency weights sum to.
void bessel_zero_grid(const KernelSpec& spec, GridPair& g) {
  if (spec.family != KernelFamily::Hankel) throw std::invalid_argument("bessel-zero grid requires a hankel kernel");
  const double alpha = spec.alpha;
  const double two_a = 2.0 * spec.a;
  const std::vector<double> zeros = bessel_j_zeros(alpha, g.N + 1);
  const double S = zeros.back();
  const double c = spec.density_coeff;
  std::vector<double> base(g.N);
  double total = 0.0;
  for (int i = 0; i < g.N; ++i) {
    const double jp = bessel_j(alpha + 1.0, zeros[i]);
    base[i] = 2.0 * c * std::pow(zeros[i] / S, 2.0 * alpha) / (S * S * jp * jp);
    total += base[i];
  }
  const double mu = c * std::pow(g.X, two_a) / two_a;
  const double R = std::pow(mu / total, 1.0 / two_a);
  double freq_total = 0.0;
  for (int i = 0; i < g.N; ++i) {
    const double j = zeros[i];
    g.time_nodes[i] = R * j / S;
    g.time_weights[i] = base[i] * std::pow(R, two_a);
    g.freq_nodes[i] = j / R;
    g.freq_weights[i] = base[i] * std::pow(S / R, two_a);
    freq_total += g.freq_weights[i];
  }
  g.Xi = std::pow(freq_total * two_a / c, 1.0 / two_a);
}

}  // namespace

GridPair build_grid(const KernelSpec& spec, double X, int N, GridRule rule) {
  if (!(X > 0.0) || !std::isfinite(X)) throw std::invalid_argument("build_grid: X must be positive");
  if (N < 2) throw std::invalid_argument("build_grid: N must be at least 2");
  GridPair g;
  g.X = X;
  g.N = N;
  g.rule = rule;
  g.time_nodes.resize(N);
  g.time_weights.resize(N);
  g.freq_nodes.resize(N);
  g.freq_weights.resize(N);
  if (rule == GridRule::Midpoint)
    midpoint_grid(spec, g);
  else
    bessel_zero_grid(spec, g);
  return g;
}

double weighted_norm(const CVector& values, const std::vector<double>& weights, double p) {
  if (static_cast<std::size_t>(values.size()) != weights.size())
    throw std::invalid_argument("weighted_norm: length mismatch");
  double acc = 0.0;
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    const double m = std::abs(values[i]);
    acc += (p == 2.0 ? m * m : std::pow(m, p)) * weights[i];
  }
  return p == 2.0 ? std::sqrt(acc) : std::pow(acc, 1.0 / p);
}

std::complex<double> weighted_inner(const Signal& f, const Signal& g, const GridPair& grid) {
  const auto& w = grid.weights(f.domain);
  if (f.values.size() != g.values.size() || static_cast<std::size_t>(f.values.size()) != w.size())
    throw std::invalid_argument("weighted_inner: length mismatch");
  std::complex<double> acc = 0.0;
  for (Eigen::Index i = 0; i < f.values.size(); ++i) acc += w[i] * f.values[i] * std::conj(g.values[i]);
  return acc;
}

double norm(const Signal& f, const GridPair& grid, double p) { return weighted_norm(f.values, grid.weights(f.domain), p); }

double region_measure(const Region& region, const KernelSpec& spec) {
  const double two_a = 2.0 * spec.a;
  double total = 0.0;
  for (const Interval& iv : region.intervals())
    total += spec.density_coeff * (std::pow(iv.hi, two_a) - std::pow(iv.lo, two_a)) / two_a;
  return total;
}

void require_within_extent(const Region& region, const GridPair& grid, Domain domain) {
  const double extent = grid.extent(domain);
  if (region.sup() > extent * (1.0 + 1e-12))
    throw std::invalid_argument(std::string(domain == Domain::Time ? "time" : "frequency") +
                                " region exceeds grid extent " + std::to_string(extent));
}

Eigen::VectorXd region_mask(const Region& region, const GridPair& grid, Domain domain) {
  require_within_extent(region, grid, domain);
  const auto& nodes = grid.nodes(domain);
  Eigen::VectorXd mask(grid.N);
  for (int i = 0; i < grid.N; ++i) mask[i] = region.contains(nodes[i]) ? 1.0 : 0.0;
  return mask;
}

double discrete_measure(const Region& region, const GridPair& grid, Domain domain) {
  const Eigen::VectorXd mask = region_mask(region, grid, domain);
  const auto& w = grid.weights(domain);
  double total = 0.0;
  for (int i = 0; i < grid.N; ++i)
    if (mask[i] != 0.0) total += w[i];
  return total;
}

Signal sample_signal(const Generator& gen, double lambda, const GridPair& grid, const KernelSpec& spec,
                     Domain domain) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw std::invalid_argument("sample_signal: lambda must be positive");
  const auto& nodes = grid.nodes(domain);
  const double scale = std::pow(lambda, -spec.a);
  Signal f;
  f.domain = domain;
  f.values.resize(grid.N);
  for (int i = 0; i < grid.N; ++i) f.values[i] = scale * gen(nodes[i] / lambda);
  if (lambda == 1.0) f.generator = gen;
  return f;
}

double dispersion(const Signal& f, const DispersionSpec& d, const GridPair& grid, Domain domain) {
  const auto& nodes = grid.nodes(domain);
  const auto& w = grid.weights(domain);
  if (static_cast<std::size_t>(f.values.size()) != nodes.size())
    throw std::invalid_argument("dispersion: length mismatch");
  double acc = 0.0;
  for (Eigen::Index i = 0; i < f.values.size(); ++i) {
    const double m = std::abs(f.values[i]);
    const double moment = d.s == 0.0 ? 1.0 : std::pow(nodes[i], d.s);
    acc += (d.p == 2.0 ? (moment * m) * (moment * m) : std::pow(moment * m, d.p)) * w[i];
  }
  return d.p == 2.0 ? std::sqrt(acc) : std::pow(acc, 1.0 / d.p);
}

CVector symmetrize(const Signal& f, const GridPair& grid) {
  const auto& w = grid.weights(f.domain);
  if (static_cast<std::size_t>(f.values.size()) != w.size()) throw std::invalid_argument("symmetrize: length mismatch");
  CVector v(f.values.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = std::sqrt(w[i]) * f.values[i];
  return v;
}

Signal desymmetrize(const CVector& v, const GridPair& grid, Domain domain) {
  const auto& w = grid.weights(domain);
  if (static_cast<std::size_t>(v.size()) != w.size()) throw std::invalid_argument("desymmetrize: length mismatch");
  Signal f;
  f.domain = domain;
  f.values.resize(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) f.values[i] = v[i] / std::sqrt(w[i]);
  return f;
}

}  // namespace specband
