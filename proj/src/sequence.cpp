#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "specband/audit.hpp"

namespace specband {

namespace {

constexpr double kMinSupportNodes = 8;

double gram_deviation(const std::vector<Signal>& signals, const GridPair& grid, std::size_t& worst_k,
                      std::size_t& worst_m) {
  double dev = 0.0;
  worst_k = worst_m = 0;
  for (std::size_t k = 0; k < signals.size(); ++k)
    for (std::size_t m = k; m < signals.size(); ++m) {
      const double e = std::abs(weighted_inner(signals[k], signals[m], grid) - (k == m ? 1.0 : 0.0));
      if (e > dev) {
        dev = e;
        worst_k = k;
        worst_m = m;
      }
    }
  return dev;
}

}  // namespace

DilatedSequence dilated_sequence(const TransformBundle& bundle, const Generator& bump, int n_max, double s) {
  if (bump.kind() != Generator::Kind::Bump) throw std::invalid_argument("dilated_sequence: generator must be a bump");
  const auto sup = bump.support();
  if (sup.empty() || sup.front().lo < 1.0 - 1e-12 || sup.back().hi > 2.0 + 1e-12)
    throw std::invalid_argument("dilated_sequence: bump must be supported in [1, 2]");
  if (n_max < 0) throw std::invalid_argument("dilated_sequence: n_max must be non-negative");
  const GridPair& g = bundle.grid;
  if (g.X < 2.0) throw std::invalid_argument("dilated_sequence: support [1, 2] exceeds the time grid");
  const double narrow = std::ldexp(1.0, -n_max);
  int inside = 0;
  for (double x : g.time_nodes)
    if (x >= narrow && x < 2.0 * narrow) ++inside;
  if (inside < kMinSupportNodes)
    throw std::invalid_argument("dilated_sequence: support of the narrowest dilate holds only " +
                                std::to_string(inside) + " nodes");
  if (std::ldexp(2.0, n_max) > g.Xi)
    throw std::invalid_argument("dilated_sequence: frequency spread of the narrowest dilate exceeds the grid");

  std::vector<Signal> fs;
  const Signal f0 = sample_signal(bump, 1.0, g, bundle.spec);
  const double scale = 1.0 / norm(f0, g);
  for (int n = 0; n <= n_max; ++n) {
    Signal f = sample_signal(bump, std::ldexp(1.0, -n), g, bundle.spec);
    f.values *= scale;
    fs.push_back(std::move(f));
  }

  DilatedSequence out;
  const int M = n_max + 1;
  out.gram.resize(M, M);
  for (int n = 0; n < M; ++n)
    for (int m = 0; m < M; ++m) out.gram(n, m) = std::abs(weighted_inner(fs[n], fs[m], g));
  for (int n = 0; n < M; ++n) {
    DilateRecord rec;
    rec.n = n;
    rec.norm = norm(fs[n], g);
    rec.disp_x = dispersion(fs[n], {s, 2.0}, g, Domain::Time);
    rec.disp_xi = dispersion(apply_transform(bundle, fs[n], Direction::Forward), {s, 2.0}, g, Domain::Frequency);
    rec.product = rec.disp_x * rec.disp_xi;
    for (int m = 0; m < n; ++m) rec.inner_products.push_back(out.gram(n, m));
    out.rows.push_back(std::move(rec));
  }
  for (const auto& rec : out.rows)
    out.product_variation = std::max(out.product_variation, std::abs(rec.product / out.rows[0].product - 1.0));
  out.gram_deviation = (out.gram - Eigen::MatrixXd::Identity(M, M)).cwiseAbs().maxCoeff();
  return out;
}

ShapiroResult shapiro_sum(const std::vector<Signal>& signals, const TransformBundle& bundle, double s) {
  if (signals.empty()) throw std::invalid_argument("shapiro_sum: empty family");
  std::size_t k = 0, m = 0;
  const double dev = gram_deviation(signals, bundle.grid, k, m);
  if (dev > 1e-6)
    throw std::invalid_argument("shapiro_sum: family is not orthonormal; |G - I| = " + std::to_string(dev) +
                                " at (" + std::to_string(k) + ", " + std::to_string(m) + ")");
  ShapiroResult out;
  out.N = static_cast<int>(signals.size());
  for (const Signal& f : signals) {
    const double dx = dispersion(f, {s, 2.0}, bundle.grid, Domain::Time);
    const double dxi =
        dispersion(apply_transform(bundle, f, Direction::Forward), {s, 2.0}, bundle.grid, Domain::Frequency);
    out.per_signal.push_back(dx * dx + dxi * dxi);
    out.sum += out.per_signal.back();
  }
  return out;
}

ComparisonResult comparison_chain(const TransformBundle& bundle, const Signal& f, const Region& S,
                                  const Region& Sigma, std::pair<double, double> eps_pair) {
  const OperatorMatrix L = restriction_operator(bundle, S, Sigma);
  const Defects d = defects(bundle, f, S, Sigma, &L);
  const CVector v = symmetrize(f, bundle.grid);
  const Eigen::VectorXd ms = region_mask(S, bundle.grid, Domain::Time);
  const Eigen::VectorXd mf = region_mask(Sigma, bundle.grid, Domain::Frequency);
  CVector es = v;
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (ms[i] == 0.0) es[i] = 0.0;
  CVector t = bundle.A.entries * es;
  for (Eigen::Index j = 0; j < t.size(); ++j)
    if (mf[j] == 0.0) t[j] = 0.0;
  const CVector fe = bundle.A.entries.adjoint() * t;

  ComparisonResult r;
  const double nv2 = v.squaredNorm();
  r.eps1 = d.eps1_l2;
  r.eps2 = d.eps2;
  r.loc_fe = (fe - v).norm() / std::sqrt(nv2);
  r.loc_l = *d.loc;
  r.gap = (v - L.entries * v).dot(v).real() / nv2;
  r.sqrt_gap = std::sqrt(std::max(r.gap, 0.0));
  const auto [e1, e2] = eps_pair;
  constexpr double tol = 1e-9;
  r.hypothesis = r.eps1 <= e1 && r.eps2 <= e2;
  if (r.hypothesis) {
    r.pass_i = r.loc_fe <= e1 + e2 + tol && r.loc_l <= 2.0 * e1 + e2 + tol;
    r.pass_iv = r.gap <= 2.0 * e1 + e2 + tol;
  }
  r.pass_ii = r.gap <= r.loc_l * r.loc_l + r.loc_l + tol;
  r.pass_iii = r.loc_l <= r.sqrt_gap + tol;
  return r;
}

std::vector<Signal> orthonormalize(const std::vector<Signal>& signals, const GridPair& grid) {
  std::vector<CVector> basis;
  std::vector<Signal> out;
  for (std::size_t k = 0; k < signals.size(); ++k) {
    if (signals[k].domain != Domain::Time) throw std::invalid_argument("orthonormalize: signals must be time-domain");
    CVector v = symmetrize(signals[k], grid);
    const double original = v.norm();
    for (int pass = 0; pass < 2; ++pass)
      for (const CVector& q : basis) v -= q.dot(v) * q;
    const double residual = v.norm();
    if (!(original > 0.0) || residual < 1e-8 * original)
      throw std::invalid_argument("orthonormalize: rank deficiency at index " + std::to_string(k));
    v /= residual;
    basis.push_back(v);
    out.push_back(desymmetrize(v, grid, Domain::Time));
  }
  return out;
}

}  // namespace specband
