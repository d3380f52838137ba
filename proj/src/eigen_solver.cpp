#include "specband/eigen_solver.hpp"

#include <cmath>
#include <complex>
#include <vector>

namespace specband {

namespace {

double abs_of(double x) { return std::abs(x); }
double abs_of(std::complex<double> x) { return std::abs(x); }

template <typename T>
using Mat = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>;
template <typename T>
using Vec = Eigen::Matrix<T, Eigen::Dynamic, 1>;

// Reduces A to Q T Q* with T real symmetric tridiagonal (diagonal d, subdiagonal e).
template <typename T>
void tridiagonalize(Mat<T>& A, std::vector<double>& d, std::vector<double>& e, Mat<T>* Q) {
  const Eigen::Index n = A.rows();
  std::vector<Vec<T>> reflectors;
  std::vector<double> taus;
  std::vector<T> sub(n > 1 ? n - 1 : 0);
  for (Eigen::Index k = 0; k + 2 < n; ++k) {
    const Eigen::Index m = n - k - 1;
    Vec<T> v = A.col(k).tail(m);
    const double tail = v.tail(m - 1).norm();
    const double alpha = v.norm();
    if (tail == 0.0 || alpha == 0.0) {
      sub[k] = v[0];
      reflectors.emplace_back();
      taus.push_back(0.0);
      continue;
    }
    const T x0 = v[0];
    const T phase = abs_of(x0) == 0.0 ? T(1.0) : T(x0 / abs_of(x0));
    const T beta = -phase * alpha;
    v[0] -= beta;
    const double tau = 2.0 / v.squaredNorm();
    auto B = A.bottomRightCorner(m, m);
    Vec<T> p = tau * (B.template selfadjointView<Eigen::Lower>() * v);
    const T K = 0.5 * tau * v.dot(p);
    p -= K * v;
    B.template selfadjointView<Eigen::Lower>().rankUpdate(v, p, T(-1.0));
    sub[k] = beta;
    reflectors.push_back(std::move(v));
    taus.push_back(tau);
  }
  if (n >= 2) sub[n - 2] = A(n - 1, n - 2);
  d.resize(n);
  e.assign(n, 0.0);
  for (Eigen::Index i = 0; i < n; ++i) d[i] = std::real(A(i, i));

  // Phase normalization D with delta_{k+1} = delta_k * sub_k / |sub_k| makes T real.
  std::vector<T> delta(n, T(1.0));
  for (Eigen::Index k = 0; k + 1 < n; ++k) {
    const double mag = abs_of(sub[k]);
    e[k] = mag;
    delta[k + 1] = mag == 0.0 ? delta[k] : T(delta[k] * sub[k] / mag);
  }
  if (!Q) return;
  Q->setIdentity(n, n);
  for (Eigen::Index k = static_cast<Eigen::Index>(reflectors.size()) - 1; k >= 0; --k) {
    if (taus[k] == 0.0) continue;
    const Eigen::Index m = n - k - 1;
    auto block = Q->bottomRightCorner(m, m);
    const Vec<T>& v = reflectors[k];
    Vec<T> w = v.adjoint() * block;
    block.noalias() -= (taus[k] * v) * w.transpose();
  }
  for (Eigen::Index k = 0; k < n; ++k) Q->col(k) *= delta[k];
}

// Implicit QL on the symmetric tridiagonal (d, e), accumulating rotations into Z.
template <typename T>
void tridiagonal_ql(std::vector<double>& d, std::vector<double>& e, Mat<T>* Z, int max_iterations) {
  const int n = static_cast<int>(d.size());
  const double eps = std::numeric_limits<double>::epsilon();
  double anorm = 0.0;
  for (int i = 0; i < n; ++i) anorm = std::max(anorm, std::abs(d[i]) + std::abs(e[i]));
  const double floor = eps * anorm;
  for (int l = 0; l < n; ++l) {
    int iter = 0;
    int m;
    do {
      for (m = l; m < n - 1; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= eps * dd || std::abs(e[m]) <= floor) break;
      }
      if (m != l) {
        if (iter++ == max_iterations) {
          throw NumericFailure("tridiagonal QL did not converge at index " + std::to_string(l) + " after " +
                               std::to_string(max_iterations) + " iterations (offdiagonal " +
                               std::to_string(e[l]) + ")");
        }
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = std::hypot(g, 1.0);
        if (iter % 10 == 0) {
          // Exceptional shift: breaks the stall on spectra symmetric about the Wilkinson shift.
          g = d[m] - d[l] - 0.75 * std::abs(e[l]);
        } else {
          g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
        }
        double s = 1.0, c = 1.0, p = 0.0;
        int i;
        for (i = m - 1; i >= l; --i) {
          double f = s * e[i];
          const double b = c * e[i];
          r = std::hypot(f, g);
          e[i + 1] = r;
          if (r == 0.0) {
            d[i + 1] -= p;
            e[m] = 0.0;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i + 1] - p;
          r = (d[i] - g) * s + 2.0 * c * b;
          p = s * r;
          d[i + 1] = g + p;
          g = c * r - b;
          if (Z) {
            for (Eigen::Index k = 0; k < Z->rows(); ++k) {
              const T zf = (*Z)(k, i + 1);
              (*Z)(k, i + 1) = s * (*Z)(k, i) + c * zf;
              (*Z)(k, i) = c * (*Z)(k, i) - s * zf;
            }
          }
        }
        if (r == 0.0 && i >= l) continue;
        d[l] -= p;
        e[l] = g;
        e[m] = 0.0;
      }
    } while (m != l);
  }
}

template <typename T>
HermitianEigen solve(Mat<T> A, bool want_vectors, int max_iterations) {
  const Eigen::Index n = A.rows();
  HermitianEigen out;
  out.values.resize(n);
  if (n == 0) return out;
  std::vector<double> d, e;
  Mat<T> Q;
  tridiagonalize<T>(A, d, e, want_vectors ? &Q : nullptr);
  tridiagonal_ql<T>(d, e, want_vectors ? &Q : nullptr, max_iterations);
  for (Eigen::Index i = 0; i < n; ++i) out.values[i] = d[i];
  if (want_vectors) out.vectors = Q.template cast<std::complex<double>>();
  return out;
}

}  // namespace

HermitianEigen hermitian_eigen(const Eigen::MatrixXcd& M, bool want_vectors, int max_iterations) {
  if (M.rows() != M.cols()) throw std::invalid_argument("hermitian_eigen: matrix is not square");
  if (!M.allFinite()) throw std::invalid_argument("hermitian_eigen: non-finite entries");
  if (M.imag().isZero(0.0)) return solve<double>(M.real(), want_vectors, max_iterations);
  return solve<std::complex<double>>(M, want_vectors, max_iterations);
}

Eigen::VectorXd hermitian_eigenvalues(const Eigen::MatrixXcd& M) { return hermitian_eigen(M, false).values; }

}  // namespace specband
