#pragma once

#include <Eigen/Dense>
#include <map>
#include <vector>

#include "specband/eigen_solver.hpp"
#include "specband/transform.hpp"

namespace specband {

struct SpectralDecomposition {
  Eigen::VectorXd eigenvalues;   // descending
  CMatrix eigenvectors;          // orthonormal columns, symmetrized coordinates
  double residual = 0.0;         // max_k ||M v_k - lambda_k v_k||
};

OperatorMatrix restriction_operator(const TransformBundle& bundle, const Region& S, const Region& Sigma);

// Throws std::invalid_argument when ||M - M*||_max exceeds tol * max(1, ||M||_max).
SpectralDecomposition eig_sym(const OperatorMatrix& M, double tol = 1e-10);

// Column k of the decomposition as a time-domain signal.
Signal eigenfunction(const SpectralDecomposition& dec, int k, const GridPair& grid);

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

struct SchattenReport {
  Eigen::VectorXd singular_values;  // descending
  std::map<double, double> norms;   // keyed by p; kInfinity for the operator norm

  double norm(double p) const { return norms.at(p); }
};

SchattenReport schatten(const OperatorMatrix& M, const std::vector<double>& ps = {});

struct TraceCheck {
  double trace_lhs = 0.0;
  double quadrature_rhs = 0.0;
  double abs_diff = 0.0;
};

TraceCheck trace_formula_check(const TransformBundle& bundle, const Region& S, const Region& Sigma);

// Number of eigenvalues >= 1 - eps.
int count_eigen(const SpectralDecomposition& dec, double eps);

struct Approximation {
  Signal projection;
  double error = 0.0;
  double bound = 0.0;
  double eps_of_f = 0.0;
  double eps_of_f_raw = 0.0;
  int retained = 0;
};

Approximation approx_project(const Signal& f, const SpectralDecomposition& dec, double eps0, const GridPair& grid);

struct Membership {
  double qform = 0.0;
  bool member = false;
  double balance_lhs = 0.0;
  double balance_rhs = 0.0;
};

inline constexpr double kNumericalKernel = 1e-10;

Membership membership(const Signal& f, const SpectralDecomposition& dec, double eps, const GridPair& grid);
Membership membership(const Signal& f, const OperatorMatrix& L, double eps, const GridPair& grid);

}  // namespace specband
