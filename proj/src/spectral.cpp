#include "specband/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace specband {

namespace {

double max_abs(const CMatrix& M) { return M.size() == 0 ? 0.0 : M.cwiseAbs().maxCoeff(); }

double symmetry_error(const CMatrix& M) { return max_abs(M - M.adjoint()); }

Eigen::Index leading_index(const Eigen::Ref<const CVector>& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (std::abs(v[i]) > 1e-8) return i;
  return v.size();
}

double lp_norm(const Eigen::VectorXd& s, double p) {
  if (s.size() == 0) return 0.0;
  const double top = s[0];
  if (std::isinf(p)) return top;
  if (top == 0.0) return 0.0;
  double acc = 0.0;
  for (Eigen::Index k = 0; k < s.size(); ++k) acc += std::pow(s[k] / top, p);
  return top * std::pow(acc, 1.0 / p);
}

}  // namespace

OperatorMatrix restriction_operator(const TransformBundle& bundle, const Region& S, const Region& Sigma) {
  const Eigen::VectorXd ms = region_mask(S, bundle.grid, Domain::Time);
  const Eigen::VectorXd mf = region_mask(Sigma, bundle.grid, Domain::Frequency);
  CMatrix G = bundle.A.entries;
  for (Eigen::Index j = 0; j < G.rows(); ++j)
    if (mf[j] == 0.0) G.row(j).setZero();
  for (Eigen::Index i = 0; i < G.cols(); ++i)
    if (ms[i] == 0.0) G.col(i).setZero();
  CMatrix L = G.adjoint() * G;
  L = 0.5 * (L + L.adjoint()).eval();
  return {L, OpTag::Restriction};
}

SpectralDecomposition eig_sym(const OperatorMatrix& M, double tol) {
  const CMatrix& A = M.entries;
  if (A.rows() != A.cols()) throw std::invalid_argument("eig_sym: matrix is not square");
  if (!A.allFinite()) throw std::invalid_argument("eig_sym: non-finite entries");
  const double asym = symmetry_error(A);
  if (asym > tol * std::max(1.0, max_abs(A)))
    throw std::invalid_argument("eig_sym: matrix is not symmetric (max asymmetry " + std::to_string(asym) + ")");
  const CMatrix H = 0.5 * (A + A.adjoint());
  HermitianEigen raw = hermitian_eigen(H, true);
  const Eigen::Index n = H.rows();

  std::vector<Eigen::Index> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index l, Eigen::Index r) { return raw.values[l] > raw.values[r]; });
  const double scale = std::max(1.0, n ? raw.values.cwiseAbs().maxCoeff() : 0.0);
  const double tie = 1e-12 * scale;
  std::vector<Eigen::Index> lead(n);
  for (Eigen::Index k = 0; k < n; ++k) lead[k] = leading_index(raw.vectors.col(k));
  for (Eigen::Index start = 0; start < n;) {
    Eigen::Index stop = start + 1;
    while (stop < n && raw.values[order[stop - 1]] - raw.values[order[stop]] <= tie) ++stop;
    std::stable_sort(order.begin() + start, order.begin() + stop,
                     [&](Eigen::Index l, Eigen::Index r) { return lead[l] < lead[r]; });
    start = stop;
  }

  SpectralDecomposition dec;
  dec.eigenvalues.resize(n);
  dec.eigenvectors.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    dec.eigenvalues[k] = raw.values[order[k]];
    CVector v = raw.vectors.col(order[k]);
    const Eigen::Index i = lead[order[k]];
    if (i < n) {
      const std::complex<double> c = v[i];
      v *= std::conj(c) / std::abs(c);
      v[i] = std::abs(v[i]);
    }
    dec.eigenvectors.col(k) = v;
  }
  const CMatrix R = H * dec.eigenvectors - dec.eigenvectors * dec.eigenvalues.asDiagonal();
  dec.residual = n ? R.colwise().norm().maxCoeff() : 0.0;
  return dec;
}

Signal eigenfunction(const SpectralDecomposition& dec, int k, const GridPair& grid) {
  if (k < 0 || k >= dec.eigenvectors.cols()) throw std::invalid_argument("eigenfunction: index out of range");
  return desymmetrize(dec.eigenvectors.col(k), grid, Domain::Time);
}

SchattenReport schatten(const OperatorMatrix& M, const std::vector<double>& ps) {
  const CMatrix& A = M.entries;
  if (!A.allFinite()) throw std::invalid_argument("schatten: non-finite entries");
  const Eigen::Index n = A.rows();
  const Eigen::Index m = A.cols();
  Eigen::VectorXd s;
  if (n == m && symmetry_error(A) <= 1e-13 * std::max(1.0, max_abs(A))) {
    s = hermitian_eigenvalues(0.5 * (A + A.adjoint())).cwiseAbs();
    std::sort(s.data(), s.data() + s.size(), std::greater<double>());
  } else {
    CMatrix J = CMatrix::Zero(n + m, n + m);
    J.topRightCorner(n, m) = A;
    J.bottomLeftCorner(m, n) = A.adjoint();
    Eigen::VectorXd ev = hermitian_eigenvalues(J);
    std::sort(ev.data(), ev.data() + ev.size(), std::greater<double>());
    s = ev.head(std::min(n, m)).cwiseMax(0.0);
  }
  SchattenReport rep;
  rep.singular_values = s;
  std::vector<double> all = {1.0, 2.0, kInfinity};
  all.insert(all.end(), ps.begin(), ps.end());
  for (double p : all) {
    if (!(p >= 1.0)) throw std::invalid_argument("schatten: p must be >= 1");
    rep.norms[p] = lp_norm(s, p);
  }
  return rep;
}

TraceCheck trace_formula_check(const TransformBundle& bundle, const Region& S, const Region& Sigma) {
  const GridPair& g = bundle.grid;
  const OperatorMatrix L = restriction_operator(bundle, S, Sigma);
  const Eigen::VectorXd ms = region_mask(S, g, Domain::Time);
  const Eigen::VectorXd mf = region_mask(Sigma, g, Domain::Frequency);
  TraceCheck out;
  out.trace_lhs = L.entries.diagonal().real().sum();
  double rhs = 0.0;
  for (int i = 0; i < g.N; ++i) {
    if (ms[i] == 0.0) continue;
    double row = 0.0;
    for (int j = 0; j < g.N; ++j) {
      if (mf[j] == 0.0) continue;
      const double k = kernel_value(bundle.spec, g.time_nodes[i], g.freq_nodes[j]);
      row += k * k * g.freq_weights[j];
    }
    rhs += row * g.time_weights[i];
  }
  out.quadrature_rhs = rhs;
  out.abs_diff = std::abs(out.trace_lhs - rhs);
  return out;
}

int count_eigen(const SpectralDecomposition& dec, double eps) {
  if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("count_eigen: eps must lie in (0, 1)");
  int n = 0;
  for (Eigen::Index k = 0; k < dec.eigenvalues.size(); ++k)
    if (dec.eigenvalues[k] >= 1.0 - eps) ++n;
  return n;
}

Approximation approx_project(const Signal& f, const SpectralDecomposition& dec, double eps0, const GridPair& grid) {
  if (!(eps0 > 0.0 && eps0 < 1.0)) throw std::invalid_argument("approx_project: eps0 must lie in (0, 1)");
  const CVector v = symmetrize(f, grid);
  const double nf = v.norm();
  if (nf == 0.0) throw std::invalid_argument("approx_project: zero signal");
  const CVector c = dec.eigenvectors.adjoint() * v;
  const int keep = count_eigen(dec, eps0);
  const CVector proj = dec.eigenvectors.leftCols(keep) * c.head(keep);
  double q = 0.0;
  for (Eigen::Index k = 0; k < c.size(); ++k) q += dec.eigenvalues[k] * std::norm(c[k]);
  Approximation out;
  out.retained = keep;
  out.projection = desymmetrize(proj, grid, Domain::Time);
  out.error = (v - proj).norm();
  out.eps_of_f_raw = 1.0 - q / (nf * nf);
  out.eps_of_f = std::clamp(out.eps_of_f_raw, 0.0, 1.0);
  out.bound = std::sqrt(out.eps_of_f / eps0) * nf;
  return out;
}

Membership membership(const Signal& f, const SpectralDecomposition& dec, double eps, const GridPair& grid) {
  if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("membership: eps must lie in (0, 1)");
  const CVector v = symmetrize(f, grid);
  const double n2 = v.squaredNorm();
  if (n2 == 0.0) throw std::invalid_argument("membership: zero signal");
  const CVector c = dec.eigenvectors.adjoint() * v;
  const int top = count_eigen(dec, eps);
  Membership out;
  double q = 0.0, kernel = 0.0, lhs = 0.0, rhs = 0.0;
  for (Eigen::Index k = 0; k < c.size(); ++k) {
    const double lam = dec.eigenvalues[k];
    const double w = std::norm(c[k]) / n2;
    q += lam * w;
    if (k < top)
      lhs += (lam + eps - 1.0) * w;
    else if (lam <= kNumericalKernel)
      kernel += w;
    else
      rhs += (1.0 - eps - lam) * w;
  }
  out.qform = q;
  out.balance_lhs = lhs;
  out.balance_rhs = (1.0 - eps) * kernel + rhs;
  out.member = out.balance_lhs >= out.balance_rhs - 1e-10;
  return out;
}

Membership membership(const Signal& f, const OperatorMatrix& L, double eps, const GridPair& grid) {
  return membership(f, eig_sym(L), eps, grid);
}

}  // namespace specband
